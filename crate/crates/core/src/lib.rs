//! Energy games on symbolic reactive game graphs: a specification front
//! end, two symbolic solvers for minimal initial energy (an antichain of
//! BDDs and a single ADD) and an explicit-state reference oracle.

pub mod crosscheck;
pub mod elevator;
pub mod encoding;
pub mod exec;
pub mod game;
pub mod oracle;
pub mod pipeline;
pub mod report;
pub mod solver_add;
pub mod solver_bdd;
pub mod spec;
pub mod synthetic;
