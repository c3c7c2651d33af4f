//! Modest systems `Q ⊆ W(D_F(Q))` and the ascending route
//! `Q ↦ F(W(D_F(Q)))`, plus the passage between ample and modest systems.

use crate::ample::is_ample;
use crate::desirability::desirable;
use crate::error::{Error, Result};
use crate::instance::TwoAgentProblem;
use crate::set::ContractSet;
use crate::stability::is_stable;
use crate::Solution;

pub fn is_modest(p: &TwoAgentProblem, q: ContractSet) -> bool {
    q.is_subset(p.worker().choose(desirable(p.firm(), q)))
}

fn require_modest(p: &TwoAgentProblem, q: ContractSet) -> Result<()> {
    if !q.is_subset(p.ground()) {
        return Err(Error::NotSubset {
            menu: q,
            ground: p.ground(),
        });
    }
    if is_modest(p, q) {
        Ok(())
    } else {
        Err(Error::Precondition(format!("{q:?} is not modest")))
    }
}

fn fwd(p: &TwoAgentProblem, desired: ContractSet) -> ContractSet {
    p.firm().choose(p.worker().choose(desired))
}

/// `F(W(D_F(Q)))` for a modest `Q`.
pub fn yang_step(p: &TwoAgentProblem, q: ContractSet) -> Result<ContractSet> {
    require_modest(p, q)?;
    Ok(fwd(p, desirable(p.firm(), q)))
}

/// Iterates [`yang_step`] from `start` (default `∅`) until `D_F` of the
/// iterate stops shrinking; the last iterate is the stable system. The
/// trace lists every iterate, start included.
pub fn yang_solve(p: &TwoAgentProblem, start: Option<ContractSet>) -> Result<Solution> {
    let q0 = start.unwrap_or(ContractSet::EMPTY);
    require_modest(p, q0)?;
    let mut desired = desirable(p.firm(), q0);
    let mut trace = vec![q0];
    let limit = p.ground().len() + 1;
    let q = loop {
        let next = fwd(p, desired);
        trace.push(next);
        let next_desired = desirable(p.firm(), next);
        if next_desired == desired {
            break next;
        }
        if !next_desired.is_subset(desired) || trace.len() - 1 > limit {
            return Err(Error::Inconsistency(format!(
                "D_F did not descend at {next:?} (from {desired:?} to {next_desired:?})"
            )));
        }
        desired = next_desired;
    };
    if !is_stable(p, q) {
        return Err(Error::Inconsistency(format!(
            "D_F-fixpoint {q:?} is not stable"
        )));
    }
    Ok(Solution { stable: q, trace })
}

/// A stable system is modest; returns it unchanged after checking both.
pub fn modest_from_stable(p: &TwoAgentProblem, s: ContractSet) -> Result<ContractSet> {
    if !is_stable(p, s) {
        return Err(Error::Precondition(format!("{s:?} is not stable")));
    }
    if !is_modest(p, s) {
        return Err(Error::Inconsistency(format!("stable {s:?} is not modest")));
    }
    Ok(s)
}

/// `Q = F(W(B))` for an ample `B`.
pub fn ample_to_modest(p: &TwoAgentProblem, b: ContractSet) -> Result<ContractSet> {
    if !b.is_subset(p.ground()) || !is_ample(p, b) {
        return Err(Error::Precondition(format!("{b:?} is not ample")));
    }
    Ok(fwd(p, b))
}

/// `B = D_F(Q)` for a modest `Q`.
pub fn modest_to_ample(p: &TwoAgentProblem, q: ContractSet) -> Result<ContractSet> {
    require_modest(p, q)?;
    Ok(desirable(p.firm(), q))
}
