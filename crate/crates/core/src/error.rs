use thiserror::Error;

use crate::choice::PlottReport;
use crate::desirability::DesirabilityReport;
use crate::set::ContractSet;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("menu {menu:?} is not a subset of the ground set {ground:?}")]
    NotSubset {
        menu: ContractSet,
        ground: ContractSet,
    },

    #[error("unknown agent `{0}`")]
    UnknownAgent(String),

    #[error("unknown contract `{0}`")]
    UnknownContract(String),

    #[error("duplicate identifier `{0}`")]
    DuplicateId(String),

    #[error(
        "contract `{contract}` names `{agent}` as {expected} but that agent is on the other side"
    )]
    SideMismatch {
        contract: String,
        agent: String,
        expected: &'static str,
    },

    #[error("agent `{0}` has contracts but no choice function")]
    MissingChoice(String),

    #[error("unknown choice family `{0}`")]
    UnknownFamily(String),

    #[error("invalid choice payload: {0}")]
    InvalidPayload(String),

    #[error("ground set of {size} contracts exceeds the exhaustive-check cap of {cap}")]
    CapExceeded { size: usize, cap: usize },

    #[error("choice function{} violates the Plott axioms: {report}", agent_suffix(.agent))]
    NotPlott {
        agent: Option<String>,
        report: Box<PlottReport>,
    },

    #[error("desirability operator is invalid: {0}")]
    InvalidDesirability(Box<DesirabilityReport>),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("malformed instance document: {0}")]
    Malformed(String),

    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

fn agent_suffix(agent: &Option<String>) -> String {
    match agent {
        Some(a) => format!(" of agent `{a}`"),
        None => String::new(),
    }
}

impl Error {
    /// Short stable identifier for the error kind.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NotSubset { .. } => "not-subset",
            Error::UnknownAgent(_) => "dangling-agent",
            Error::UnknownContract(_) => "dangling-contract",
            Error::DuplicateId(_) => "duplicate-id",
            Error::SideMismatch { .. } => "side-mismatch",
            Error::MissingChoice(_) => "missing-choice",
            Error::UnknownFamily(_) => "unknown-family",
            Error::InvalidPayload(_) => "invalid-payload",
            Error::CapExceeded { .. } => "cap-exceeded",
            Error::NotPlott { .. } => "axiom-violation",
            Error::InvalidDesirability(_) => "invalid-desirability",
            Error::Precondition(_) => "precondition",
            Error::Malformed(_) => "malformed",
            Error::Inconsistency(_) => "internal-inconsistency",
        }
    }

    pub fn is_inconsistency(&self) -> bool {
        matches!(self, Error::Inconsistency(_))
    }
}
