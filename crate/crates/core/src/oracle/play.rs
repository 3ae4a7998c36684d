use rand::Rng;

use super::explicit::ExplicitGame;
use super::reduced::{ReducedGame, V_EMPTY};
use super::OracleError;

/// A finite play prefix with an initial credit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlayEval {
    pub credit: i64,
    pub weights: Vec<i64>,
}

impl PlayEval {
    /// Reads the edge weights of a vertex sequence.
    pub fn on_reduced(rg: &ReducedGame, play: &[usize], credit: i64) -> Result<Self, OracleError> {
        let weights = play
            .windows(2)
            .map(|p| rg.weight(p[0], p[1]).ok_or(OracleError::InvalidEdge { from: p[0], to: p[1] }))
            .collect::<Result<_, _>>()?;
        Ok(PlayEval { credit, weights })
    }
}

/// Energy level after each step of the prefix.
pub fn eval_play(pe: &PlayEval) -> Vec<i64> {
    pe.weights
        .iter()
        .scan(pe.credit, |el, w| {
            *el += w;
            Some(*el)
        })
        .collect()
}

pub fn is_winning(pe: &PlayEval) -> bool {
    pe.credit >= 0 && eval_play(pe).iter().all(|&el| el >= 0)
}

/// A play on the concrete game: an initial env choice, an initial state and
/// then the chosen successors with their weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConcretePlay {
    pub init_env: u64,
    pub states: Vec<usize>,
    pub weights: Vec<i64>,
}

/// Random play of at most `len` transitions, or `None` if the initial env
/// choice has no initial state. Stops early at deadlocks.
pub fn random_play(g: &ExplicitGame, rng: &mut impl Rng, len: usize) -> Option<ConcretePlay> {
    let init_env = *g.theta_e.get(rng.gen_range(0..g.theta_e.len().max(1)))?;
    let inits: Vec<usize> = g.initial_states_for(init_env).collect();
    if inits.is_empty() {
        return None;
    }
    let mut s = inits[rng.gen_range(0..inits.len())];
    let mut play = ConcretePlay { init_env, states: vec![s], weights: Vec::new() };
    for _ in 0..len {
        let mvs = &g.moves[s];
        if mvs.is_empty() {
            break;
        }
        let mv = &mvs[rng.gen_range(0..mvs.len())];
        if mv.responses.is_empty() {
            break;
        }
        let (next, w) = mv.responses[rng.gen_range(0..mv.responses.len())];
        play.weights.push(w);
        play.states.push(next);
        s = next;
    }
    Some(play)
}

/// Image of a concrete play in the reduced game: `v_empty`, the initial env
/// vertex, then alternately state and move vertices.
pub fn map_play(rg: &ReducedGame, g: &ExplicitGame, p: &ConcretePlay) -> Vec<usize> {
    let mut out = vec![V_EMPTY, rg.init_vertex[&p.init_env], rg.state_vertex[p.states[0]]];
    for pair in p.states.windows(2) {
        let env = g.states[pair[1]] & g.env_mask;
        out.push(rg.move_vertex[&(pair[0], env)]);
        out.push(rg.state_vertex[pair[1]]);
    }
    out
}
