//! Stable contract systems in two-sided markets where every agent chooses
//! by a path-independent (Plott) choice function.
//!
//! A market ([`Instance`]) reduces to a single Firm and a single Worker
//! ([`TwoAgentProblem`]). Stable systems are then found three ways:
//! descending through ample systems ([`ample`]), ascending through modest
//! systems ([`modest`]), or, for marriage markets, by deferred acceptance
//! ([`classical`]). [`oracle`] enumerates the power set as ground truth.

pub mod ample;
pub mod choice;
pub mod classical;
pub mod desirability;
mod error;
pub mod fixtures;
pub mod format;
pub mod instance;
pub mod lemmas;
pub mod modest;
pub mod oracle;
mod set;
pub mod stability;

pub use choice::{validate_plott, ChoiceFunction, Family, PlottReport};
pub use error::{Error, Result};
pub use instance::{Agent, AgentId, Contract, Instance, Side, TwoAgentProblem};
pub use set::{ContractId, ContractSet, MAX_CONTRACTS};

/// Result of an iterative solver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub stable: ContractSet,
    /// Every iterate, starting with the initial set.
    pub trace: Vec<ContractSet>,
}

impl Solution {
    /// Number of update steps taken.
    pub fn steps(&self) -> usize {
        self.trace.len().saturating_sub(1)
    }
}
