//! The symbolic weighted game graph: initial constraints, transition
//! relations of both players and a transition weight function.

use symdd::{Add, Bdd, Manager, TerminalPred, Value, VarId};

use crate::encoding::Encoding;
use crate::spec::{Formula, Owner, SpecAst, WeightEntry};

#[derive(Clone, Debug)]
pub struct SymbolicGameGraph {
    pub encoding: Encoding,
    /// Initial environment choices (env bits only).
    pub theta_e: Bdd,
    /// Initial states (env and sys bits).
    pub theta_s: Bdd,
    /// Environment transitions: current state and next env bits.
    pub rho_e: Bdd,
    /// System transitions: current state and next state.
    pub rho_s: Bdd,
    /// Valid codes over unprimed and primed state bits.
    pub valid: Bdd,
    pub valid_next: Bdd,
    pub env_vars: Vec<VarId>,
    pub sys_vars: Vec<VarId>,
    pub state_vars: Vec<VarId>,
    pub env_next: Vec<VarId>,
    pub sys_next: Vec<VarId>,
    pub prime_pairs: Vec<(VarId, VarId)>,
}

fn conjoin(m: &mut Manager, enc: &Encoding, formulas: &[Formula], globally: bool) -> Bdd {
    let parts: Vec<Bdd> = formulas
        .iter()
        .filter(|f| f.globally == globally)
        .map(|f| enc.compile(m, &f.body))
        .collect();
    m.and_all(parts)
}

/// Compiles the constraints of a checked specification. Every relation is
/// conjoined with the validity of the bits it ranges over.
pub fn build_graph(m: &mut Manager, ast: &SpecAst, enc: Encoding) -> SymbolicGameGraph {
    let valid_env = enc.validity_of(m, Some(Owner::Env), false);
    let valid = enc.validity_of(m, None, false);
    let valid_env_next = enc.validity_of(m, Some(Owner::Env), true);
    let valid_next = enc.validity_of(m, None, true);

    let init_e = conjoin(m, &enc, &ast.assumptions, false);
    let theta_e = m.and(init_e, valid_env);
    let init_s = conjoin(m, &enc, &ast.guarantees, false);
    let theta_s = m.and(init_s, valid);

    let trans_e = conjoin(m, &enc, &ast.assumptions, true);
    let dom_e = m.and(valid, valid_env_next);
    let rho_e = m.and(trans_e, dom_e);
    let trans_s = conjoin(m, &enc, &ast.guarantees, true);
    let dom_s = m.and(valid, valid_next);
    let rho_s = m.and(trans_s, dom_s);

    SymbolicGameGraph {
        theta_e,
        theta_s,
        rho_e,
        rho_s,
        valid,
        valid_next,
        env_vars: enc.bit_vars(Some(Owner::Env), false),
        sys_vars: enc.bit_vars(Some(Owner::Sys), false),
        state_vars: enc.bit_vars(None, false),
        env_next: enc.bit_vars(Some(Owner::Env), true),
        sys_next: enc.bit_vars(Some(Owner::Sys), true),
        prime_pairs: enc.prime_pairs(),
        encoding: enc,
    }
}

impl SymbolicGameGraph {
    /// Moves a diagram over state bits to the primed copies (and back: the
    /// renaming is a swap).
    pub fn prime<D: symdd::Diagram>(&self, m: &mut Manager, d: D) -> D {
        m.rename_swap(d, &self.prime_pairs).expect("prime pairs are disjoint")
    }

    /// All transitions between valid states.
    pub fn valid_transitions(&self, m: &mut Manager) -> Bdd {
        m.and(self.valid, self.valid_next)
    }

    /// Number of valid states.
    pub fn state_count(&self, m: &Manager) -> u128 {
        m.sat_count(self.valid, &self.state_vars).expect("validity ranges over state bits")
    }
}

/// Disjoint, exhaustive partition of the valid transitions by weight,
/// sorted by value.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightPartition {
    pub entries: Vec<(i64, Bdd)>,
}

impl WeightPartition {
    pub fn values(&self) -> Vec<i64> {
        self.entries.iter().map(|e| e.0).collect()
    }
}

/// Sums overlapping weight entries: a transition matched by several entries
/// gets the sum of their values, an unmatched one gets 0.
pub fn normalize_weights(m: &mut Manager, g: &SymbolicGameGraph, entries: &[WeightEntry]) -> WeightPartition {
    let all = g.valid_transitions(m);
    let mut buckets: Vec<(i64, Bdd)> = vec![(0, all)];
    for e in entries {
        let phi = g.encoding.compile(m, &e.formula);
        let mut next = Vec::with_capacity(buckets.len() * 2);
        for (s, b) in buckets {
            let inside = m.and(b, phi);
            let outside = m.diff(b, phi);
            if !m.is_false(inside) {
                next.push((s + e.value, inside));
            }
            if !m.is_false(outside) {
                next.push((s, outside));
            }
        }
        buckets = next;
    }
    buckets.sort_by_key(|b| b.0);
    let mut merged: Vec<(i64, Bdd)> = Vec::new();
    for (s, b) in buckets {
        match merged.last_mut() {
            Some(last) if last.0 == s => last.1 = m.or(last.1, b),
            _ => merged.push((s, b)),
        }
    }
    WeightPartition { entries: merged }
}

/// Weight function as an ADD: each bucket's value on its transitions. Outside
/// the valid transitions the value is that of the last bucket (or 0 for an
/// empty partition) and carries no meaning.
pub fn partition_to_add(m: &mut Manager, p: &WeightPartition) -> Add {
    let Some(&(last, _)) = p.entries.last() else {
        return m.add_const(Value::ZERO);
    };
    let mut acc = m.add_const(Value::Fin(last));
    for &(v, t) in p.entries.iter().rev().skip(1) {
        let c = m.add_const(Value::Fin(v));
        acc = m.ite(t, c, acc);
    }
    acc
}

/// Transitions of the partition carrying value `v`, recovered from the ADD.
pub fn weight_bucket(m: &mut Manager, w: Add, v: i64, valid_transitions: Bdd) -> Bdd {
    let t = m.add_to_bdd(w, TerminalPred::Eq(Value::Fin(v)));
    m.and(t, valid_transitions)
}

/// Every initial environment choice can be completed to an initial state
/// inside `win`.
pub fn check_realizable(m: &mut Manager, g: &SymbolicGameGraph, win: Bdd) -> bool {
    let good = m.and(g.theta_s, win);
    let some_sys = m.exists(good, &g.sys_vars);
    let imp = m.imp(g.theta_e, some_sys);
    let all = m.forall(imp, &g.env_vars);
    m.is_true(all)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spec::{check_weights, expand_and_check, parse_spec, parse_weights};

    fn game(spec: &str, weights: &str) -> (Manager, SymbolicGameGraph, WeightPartition) {
        let checked = expand_and_check(&parse_spec(spec).unwrap()).unwrap();
        let (w, _) = check_weights(&checked, &parse_weights(weights).unwrap()).unwrap();
        let enc = Encoding::new(&checked.ast);
        let mut m = enc.new_manager();
        let g = build_graph(&mut m, &checked.ast, enc);
        let p = normalize_weights(&mut m, &g, &w);
        (m, g, p)
    }

    #[test]
    fn empty_sections_give_validity() {
        let (mut m, g, p) = game("VARENV a : 0..2; VAR b : boolean;", "");
        assert_eq!(g.theta_s, g.valid);
        let t = g.valid_transitions(&mut m);
        assert_eq!(g.rho_s, t);
        assert_eq!(p.entries, vec![(0, t)]);
        assert_eq!(g.state_count(&m), 6);
    }

    #[test]
    fn overlapping_entries_are_summed() {
        let (mut m, g, p) = game("VARENV a : 0..3;", "WEIGHT 2 a > 0; WEIGHT -1 a > 1; WEIGHT 5 a = 3;");
        assert_eq!(p.values(), vec![0, 1, 2, 6]);
        let w = partition_to_add(&mut m, &p);
        for a in 0..4u64 {
            let expect = [0, 2, 1, 6][a as usize];
            let asg = g.encoding.assignment(g.encoding.encode(&[crate::spec::CVal::Int(a as i64)]), 0);
            assert_eq!(m.eval_add(w, &asg), Value::Fin(expect));
        }
    }

    #[test]
    fn realizability_is_vacuous_without_initial_env_choices() {
        let (mut m, g, _) = game("VARENV a : boolean; ASSUMPTION a & !a;", "");
        let f = m.bdd_false();
        assert!(check_realizable(&mut m, &g, f));
    }

    #[test]
    fn initial_guarantee_restricts_system_choice() {
        let (mut m, g, _) = game("VARENV a : boolean; VAR b : boolean; GUARANTEE b = a;", "");
        let nb = m.nvar(g.sys_vars[0]);
        assert!(!check_realizable(&mut m, &g, nb));
        let all = g.valid;
        assert!(check_realizable(&mut m, &g, all));
    }
}
