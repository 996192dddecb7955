use thiserror::Error;

use crate::group::Element;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid Cayley table: {0}")]
    InvalidTable(String),

    #[error("element {element} is out of range for a group of order {order}")]
    ElementOutOfRange { element: u32, order: u32 },

    #[error("presentation family {family} does not match group {group}")]
    FamilyMismatch { family: String, group: String },

    #[error("group of order {order} exceeds the automorphism cap {cap}")]
    CapExceeded { order: u32, cap: u32 },

    #[error("not a subsequence: element {element} is missing {deficit} copies")]
    NotASubsequence { element: Element, deficit: u32 },

    #[error("sub-multiset lattice has {states} states, above the cap of {cap}")]
    StateSpaceCapExceeded { states: u128, cap: u64 },

    #[error("operation requires a nonempty sequence")]
    EmptySequence,

    #[error("sequence of length {len} is too long for the oracle (max {max})")]
    TooLong { len: usize, max: usize },

    #[error("group is not cyclic")]
    NotCyclic,

    #[error("element {0} is not a generator of the cyclic group")]
    NotAGenerator(Element),

    #[error("search budget exceeded after {nodes} nodes")]
    BudgetExceeded { nodes: u64 },

    #[error("unknown check `{0}`")]
    UnknownCheck(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("n = {0} is too small (need n >= 3)")]
    NTooSmall(u64),

    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }
}
