//! Minimal credits by explicit fixed points: the general operator on the
//! reduced game, its two-step reactive form, and the same computation
//! directly on the concrete game.

use super::explicit::ExplicitGame;
use super::reduced::{Player, ReducedGame};

/// A minimal credit; `None` is `+inf` (not winning within the bound).
pub type Credit = Option<u64>;

/// Successive elements of a fixed-point chain, starting from all zeros. The
/// last two elements are equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    pub elements: Vec<Vec<Credit>>,
}

impl Chain {
    pub fn fixed_point(&self) -> &[Credit] {
        self.elements.last().expect("chains are never empty")
    }

    /// Number of operator applications until the fixed point was detected.
    pub fn iterations(&self) -> usize {
        self.elements.len() - 1
    }

    /// Element `i`, or the fixed point for larger indices.
    pub fn at(&self, i: usize) -> &[Credit] {
        &self.elements[i.min(self.elements.len() - 1)]
    }
}

fn clip(v: i64, c: u64) -> Credit {
    let v = v.max(0) as u64;
    (v <= c).then_some(v)
}

fn iterate(init: Vec<Credit>, mut step: impl FnMut(&[Credit]) -> Vec<Credit>) -> Chain {
    let mut elements = vec![init];
    loop {
        let next = step(elements.last().unwrap());
        let done = next == *elements.last().unwrap();
        elements.push(next);
        if done {
            return Chain { elements };
        }
    }
}

/// Player-0 vertices take the cheapest edge into the current antichain;
/// player-1 vertices the most expensive edge, and `+inf` as soon as any
/// successor is outside it.
pub fn cpremin_general(rg: &ReducedGame, c: u64) -> Chain {
    iterate(vec![Some(0); rg.vertex_count()], |a| {
        (0..rg.vertex_count())
            .map(|v| {
                let need = |&(u, w): &(usize, i64)| a[u].map(|e| e as i64 - w);
                match rg.player[v] {
                    Player::P0 => rg.edges[v].iter().filter_map(need).min().and_then(|e| clip(e, c)),
                    Player::P1 => rg.edges[v]
                        .iter()
                        .map(need)
                        .try_fold(0i64, |acc, e| e.map(|e| acc.max(e)))
                        .and_then(|e| clip(e, c)),
                }
            })
            .collect()
    })
}

/// The general operator applied twice at once, on player-1 vertices only.
/// Entries of player-0 vertices stay `None` and carry no meaning.
pub fn cpremin_opt(rg: &ReducedGame, c: u64) -> Chain {
    let init = (0..rg.vertex_count()).map(|v| (rg.player[v] == Player::P1).then_some(0)).collect();
    iterate(init, |a| {
        (0..rg.vertex_count())
            .map(|v| {
                if rg.player[v] != Player::P1 {
                    return None;
                }
                let mut worst = 0u64;
                for &(v0, w1) in &rg.edges[v] {
                    debug_assert_eq!(w1, 0, "player-1 edges weigh 0");
                    let best = rg.edges[v0]
                        .iter()
                        .filter_map(|&(u, w)| a[u].map(|e| e as i64 - w))
                        .min()
                        .and_then(|e| clip(e, c))?;
                    worst = worst.max(best);
                }
                Some(worst)
            })
            .collect()
    })
}

/// Result of the fixed point on the concrete game.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReactiveResult {
    pub credits: Vec<Credit>,
    pub iterations: usize,
    /// Internal chain, with `max_eng + 1` standing for `+inf`.
    pub history: Vec<Vec<u64>>,
}

/// Max over environment moves of min over system answers; an environment
/// deadlock costs 0, a system deadlock `max_eng + 1`.
pub fn cpremin_reactive(g: &ExplicitGame, max_eng: u64) -> ReactiveResult {
    let over = max_eng + 1;
    let mut history = vec![vec![0u64; g.state_count()]];
    loop {
        let a = history.last().unwrap();
        let next: Vec<u64> = g
            .moves
            .iter()
            .map(|mvs| {
                mvs.iter()
                    .map(|mv| {
                        mv.responses
                            .iter()
                            .map(|&(j, w)| {
                                if a[j] >= over {
                                    over
                                } else {
                                    (a[j] as i64 - w).max(0).min(over as i64) as u64
                                }
                            })
                            .min()
                            .unwrap_or(over)
                    })
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let done = next == *a;
        history.push(next);
        if done {
            break;
        }
    }
    let credits = history.last().unwrap().iter().map(|&e| (e < over).then_some(e)).collect();
    ReactiveResult { credits, iterations: history.len() - 1, history }
}

/// First disagreement found by [`check_lemma8`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Lemma8Mismatch {
    /// General chain element `2i` and reactive-form element `i` differ at a
    /// player-1 vertex.
    Chain { index: usize, vertex: usize, general: Credit, opt: Credit },
    /// The fixed point on the reduced game and the concrete-game credits
    /// differ at a state.
    State { state: usize, reduced: Credit, reactive: Credit },
}

#[derive(Clone, Debug)]
pub struct Lemma8Report {
    pub general_iterations: usize,
    pub opt_iterations: usize,
    pub reactive_iterations: usize,
    pub mismatch: Option<Lemma8Mismatch>,
}

impl Lemma8Report {
    pub fn holds(&self) -> bool {
        self.mismatch.is_none()
    }
}

/// Compares the general chain at even indices with the two-step chain at
/// every index (player-1 vertices only), then the common fixed point with
/// the credits computed on the concrete game.
pub fn check_lemma8(rg: &ReducedGame, g: &ExplicitGame, max_eng: u64) -> Lemma8Report {
    let general = cpremin_general(rg, max_eng);
    let opt = cpremin_opt(rg, max_eng);
    let reactive = cpremin_reactive(g, max_eng);
    let mut mismatch = None;
    let len = opt.elements.len().max(general.elements.len().div_ceil(2));
    'outer: for i in 0..len {
        let (a, b) = (general.at(2 * i), opt.at(i));
        for v in rg.v1_vertices() {
            if a[v] != b[v] {
                mismatch = Some(Lemma8Mismatch::Chain { index: i, vertex: v, general: a[v], opt: b[v] });
                break 'outer;
            }
        }
    }
    if mismatch.is_none() {
        let fp = opt.fixed_point();
        for (i, &v) in rg.state_vertex.iter().enumerate() {
            if fp[v] != reactive.credits[i] {
                mismatch = Some(Lemma8Mismatch::State { state: i, reduced: fp[v], reactive: reactive.credits[i] });
                break;
            }
        }
    }
    Lemma8Report {
        general_iterations: general.iterations(),
        opt_iterations: opt.iterations(),
        reactive_iterations: reactive.iterations,
        mismatch,
    }
}
