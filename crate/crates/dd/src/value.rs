use std::fmt;

use crate::DdError;

/// Terminal value of an algebraic decision diagram: an integer or one of
/// the two infinities.
///
/// The derived ordering is the natural one, `NegInf < Fin(_) < PosInf`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Value {
    NegInf,
    Fin(i64),
    PosInf,
}

impl Value {
    pub const ZERO: Value = Value::Fin(0);
    pub const ONE: Value = Value::Fin(1);

    pub fn is_finite(self) -> bool {
        matches!(self, Value::Fin(_))
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            Value::Fin(v) => Some(v),
            _ => None,
        }
    }

    pub fn checked_add(self, rhs: Value) -> Result<Value, DdError> {
        use Value::*;
        match (self, rhs) {
            (Fin(a), Fin(b)) => a
                .checked_add(b)
                .map(Fin)
                .ok_or(DdError::Overflow { lhs: self, rhs }),
            (PosInf, NegInf) | (NegInf, PosInf) => Err(DdError::Domain {
                op: "+",
                lhs: self,
                rhs,
            }),
            (PosInf, _) | (_, PosInf) => Ok(PosInf),
            (NegInf, _) | (_, NegInf) => Ok(NegInf),
        }
    }

    pub fn checked_sub(self, rhs: Value) -> Result<Value, DdError> {
        use Value::*;
        match (self, rhs) {
            (Fin(a), Fin(b)) => a
                .checked_sub(b)
                .map(Fin)
                .ok_or(DdError::Overflow { lhs: self, rhs }),
            (PosInf, PosInf) | (NegInf, NegInf) => Err(DdError::Domain {
                op: "-",
                lhs: self,
                rhs,
            }),
            (PosInf, _) | (_, NegInf) => Ok(PosInf),
            (NegInf, _) | (_, PosInf) => Ok(NegInf),
        }
    }
}

impl From<i64> for Value {
    fn from(v: i64) -> Self {
        Value::Fin(v)
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::NegInf => f.write_str("-inf"),
            Value::PosInf => f.write_str("+inf"),
            Value::Fin(v) => write!(f, "{v}"),
        }
    }
}
