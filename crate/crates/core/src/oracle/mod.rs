//! Explicit-state reference: enumerates the concrete game, builds its
//! bipartite reduction and computes minimal credits by plain fixed points.
//! Slow on purpose; the explosion limit keeps it to small instances.

mod credit;
mod explicit;
mod play;
mod reduced;

pub use credit::{
    check_lemma8, cpremin_general, cpremin_opt, cpremin_reactive, Chain, Credit, Lemma8Mismatch, Lemma8Report,
    ReactiveResult,
};
pub use explicit::{explicate, EnvMove, ExplicitGame, DEFAULT_EXPLOSION_LIMIT};
pub use play::{eval_play, is_winning, map_play, random_play, ConcretePlay, PlayEval};
pub use reduced::{reduce, Player, ReducedGame, VertexKind, V_EMPTY, V_LOSS0, V_LOSS1, V_WIN0, V_WIN1};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("{states} states exceed the explosion limit of {limit}")]
    Explosion { states: u128, limit: u128 },
    #[error("no edge from vertex {from} to vertex {to}")]
    InvalidEdge { from: usize, to: usize },
}
