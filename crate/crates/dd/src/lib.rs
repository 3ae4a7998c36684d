//! Reduced ordered decision diagrams with Boolean terminals (BDDs) and
//! extended-integer terminals (ADDs), sharing one hash-consed node store.
//!
//! A [`Bdd`] is represented as a 0-1 [`Add`]: its terminals are the integer
//! constants `0` and `1`. Converting between the two views therefore never
//! allocates. Diagrams are plain handles; every operation goes through the
//! owning [`Manager`], which panics when handed a diagram created by another
//! manager.
//!
//! The variable order is fixed when the manager is created. There is no
//! dynamic reordering, no complemented edges and no garbage collection: the
//! node store only grows until [`Manager::reset`] is called.

mod cache;
mod dot;
mod error;
mod manager;
mod ops;
mod sat;
mod value;

pub use error::DdError;
pub use manager::{Add, Bdd, Diagram, Manager, VarId};
pub use ops::{ArithOp, BoolOp, Extremum, Quantifier, TerminalOp, TerminalPred};
pub use sat::SatIter;
pub use value::Value;
