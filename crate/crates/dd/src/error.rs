use thiserror::Error;

use crate::{Value, VarId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DdError {
    #[error("undefined terminal operation {lhs} {op} {rhs}")]
    Domain {
        op: &'static str,
        lhs: Value,
        rhs: Value,
    },
    #[error("integer overflow combining {lhs} and {rhs}")]
    Overflow { lhs: Value, rhs: Value },
    #[error("if-then-else selector has terminal {0}, expected 0 or 1")]
    NotZeroOne(Value),
    #[error("variable {0:?} appears in more than one renaming pair")]
    OverlappingPairs(VarId),
    #[error("variable {var:?} out of range for a manager with {var_count} variables")]
    VarOutOfRange { var: VarId, var_count: u32 },
    #[error("variable order is not a permutation of 0..{0}")]
    BadOrder(u32),
    #[error("support list does not follow the variable order")]
    UnsortedSupport,
    #[error("diagram depends on {0:?}, which is missing from the support list")]
    SupportNotCovered(VarId),
}
