//! Minimal required energy per set of states, computed over an antichain of
//! (energy, state set) pairs.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use symdd::{Add, Bdd, Manager, Value};

use crate::game::{check_realizable, SymbolicGameGraph, WeightPartition};

/// Disjoint state sets keyed by their minimal energy. Empty sets are never
/// stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EnergyAntichain {
    entries: BTreeMap<u64, Bdd>,
}

impl EnergyAntichain {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `states` at energy `e`, merging with an existing entry.
    pub fn insert(&mut self, m: &mut Manager, e: u64, states: Bdd) {
        if m.is_false(states) {
            return;
        }
        let merged = match self.entries.get(&e) {
            Some(&prev) => m.or(prev, states),
            None => states,
        };
        self.entries.insert(e, merged);
    }

    pub fn get(&self, e: u64) -> Option<Bdd> {
        self.entries.get(&e).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, Bdd)> + '_ {
        self.entries.iter().map(|(&e, &s)| (e, s))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn max_energy(&self) -> Option<u64> {
        self.entries.keys().next_back().copied()
    }

    /// Pairwise intersections are all empty.
    pub fn is_disjoint(&self, m: &mut Manager) -> bool {
        let sets: Vec<Bdd> = self.entries.values().copied().collect();
        for (i, &a) in sets.iter().enumerate() {
            for &b in &sets[i + 1..] {
                let both = m.and(a, b);
                if !m.is_false(both) {
                    return false;
                }
            }
        }
        true
    }

    /// Energy function: `e` on the states of entry `e`, `+inf` elsewhere.
    pub fn to_add(&self, m: &mut Manager) -> Add {
        let mut acc = m.add_const(Value::PosInf);
        for (e, s) in self.iter() {
            let c = m.add_const(Value::Fin(e as i64));
            acc = m.ite(s, c, acc);
        }
        acc
    }
}

pub fn antichain_union_states(m: &mut Manager, a: &EnergyAntichain) -> Bdd {
    m.or_all(a.entries.values().copied())
}

/// Ascending candidate energies: 0 plus every `e - w` within `[0, max_eng]`.
pub fn candidate_bests(a: &EnergyAntichain, p: &WeightPartition, max_eng: u64) -> Vec<u64> {
    let mut out = vec![0u64];
    for (e, _) in a.iter() {
        for &(w, _) in &p.entries {
            let d = e as i128 - w as i128;
            if d >= 0 && d <= max_eng as i128 {
                out.push(d as u64);
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// States from which the system can answer every environment move with a
/// transition in `best_t`. Environment deadlocks qualify vacuously.
pub fn force_env_to(m: &mut Manager, g: &SymbolicGameGraph, best_t: Bdd) -> Bdd {
    let ok = m.and(g.rho_s, best_t);
    let answer = m.exists(ok, &g.sys_next);
    let imp = m.imp(g.rho_e, answer);
    let all = m.forall(imp, &g.env_next);
    m.and(all, g.valid)
}

#[derive(Clone, Debug)]
pub struct BddSolveResult {
    pub min_eng_states: EnergyAntichain,
    pub iterations: usize,
    pub realizable: bool,
    pub wall_time: Duration,
    /// Executions of the innermost loop body (one per weight and candidate).
    pub steps: u64,
}

pub fn solve_bdd(m: &mut Manager, g: &SymbolicGameGraph, p: &WeightPartition, max_eng: u64) -> BddSolveResult {
    solve_bdd_observed(m, g, p, max_eng, |_, _| {})
}

/// Like [`solve_bdd`]; `observe` sees every antichain of the chain, starting
/// with the initial one.
pub fn solve_bdd_observed(
    m: &mut Manager,
    g: &SymbolicGameGraph,
    p: &WeightPartition,
    max_eng: u64,
    mut observe: impl FnMut(&mut Manager, &EnergyAntichain),
) -> BddSolveResult {
    let start = Instant::now();
    let mut pred = EnergyAntichain::new();
    pred.insert(m, 0, g.valid);
    observe(m, &pred);
    let mut iterations = 0;
    let mut steps = 0u64;
    loop {
        let current = pred;
        iterations += 1;
        pred = EnergyAntichain::new();
        let mut remaining = antichain_union_states(m, &current);
        let bests = candidate_bests(&current, p, max_eng);

        let primed: Vec<(u64, Bdd)> = current.iter().map(|(e, s)| (e, g.prime(m, s))).collect();
        // For each weight bucket, how many antichain entries (ascending) are
        // already folded into best_t. Targets only ever grow with `best`.
        let mut taken = vec![0usize; p.entries.len()];
        let mut best_t = m.bdd_false();
        for &best in &bests {
            if m.is_false(remaining) {
                break;
            }
            for (k, &(v, t)) in p.entries.iter().enumerate() {
                steps += 1;
                while taken[k] < primed.len() && primed[taken[k]].0 as i128 - v as i128 <= best as i128 {
                    let to = m.and(t, primed[taken[k]].1);
                    best_t = m.or(best_t, to);
                    taken[k] += 1;
                }
            }
            let forced = force_env_to(m, g, best_t);
            let b = m.and(forced, remaining);
            if !m.is_false(b) {
                pred.insert(m, best, b);
                remaining = m.diff(remaining, b);
            }
        }
        tracing::debug!(
            engine = "bdd",
            iteration = iterations,
            candidates = bests.len(),
            antichain = pred.len(),
            nodes = m.node_total(),
        );
        observe(m, &pred);
        if pred == current {
            break;
        }
    }
    let win = antichain_union_states(m, &pred);
    let realizable = check_realizable(m, g, win);
    BddSolveResult { min_eng_states: pred, iterations, realizable, wall_time: start.elapsed(), steps }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn candidates_include_zero_and_clip() {
        let mut m = Manager::new(2);
        let t = m.bdd_true();
        let mut a = EnergyAntichain::new();
        a.insert(&mut m, 0, t);
        let part = |vals: &[i64]| WeightPartition { entries: vals.iter().map(|&v| (v, t)).collect() };
        assert_eq!(candidate_bests(&a, &part(&[-1, 0, 1]), 10), vec![0, 1]);
        assert_eq!(candidate_bests(&a, &part(&[0]), 10), vec![0]);

        let x = m.var(symdd::VarId(0));
        let nx = m.not(x);
        let mut b = EnergyAntichain::new();
        b.insert(&mut m, 2, x);
        b.insert(&mut m, 5, nx);
        assert_eq!(candidate_bests(&b, &part(&[-1, 3]), 4), vec![0, 2, 3]);
    }

    #[test]
    fn empty_sets_are_not_stored() {
        let mut m = Manager::new(1);
        let mut a = EnergyAntichain::new();
        let f = m.bdd_false();
        a.insert(&mut m, 3, f);
        assert!(a.is_empty());
        let u = antichain_union_states(&mut m, &a);
        assert!(m.is_false(u));
    }
}
