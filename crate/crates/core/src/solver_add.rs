//! Minimal required energy per state as a single ADD.

use std::time::{Duration, Instant};

use symdd::{Add, Bdd, DdError, Extremum, Manager, TerminalOp, TerminalPred, Value};

use crate::game::{check_realizable, SymbolicGameGraph};

/// Weights on transitions valid for both players, `-inf` where the system has
/// no valid answer to a valid environment move, `+inf` on invalid environment
/// moves.
pub fn build_arena(m: &mut Manager, g: &SymbolicGameGraph, w: Add) -> Add {
    let neg = m.add_const(Value::NegInf);
    let pos = m.add_const(Value::PosInf);
    let deadlocks = m.ite(g.rho_e, neg, pos);
    let both = m.and(g.rho_e, g.rho_s);
    m.ite(both, w, deadlocks)
}

/// Backward energy update: successor energy `f1` against transition weight
/// `f2`, bounded by `max_eng`.
#[derive(Clone, Copy, Debug)]
pub struct OMinus {
    pub max_eng: u64,
}

impl OMinus {
    pub fn eval(&self, f1: Value, f2: Value) -> Value {
        match (f1, f2) {
            (_, Value::PosInf) => Value::ZERO,
            (Value::PosInf, _) | (_, Value::NegInf) => Value::PosInf,
            (Value::NegInf, Value::Fin(_)) => Value::ZERO,
            (Value::Fin(a), Value::Fin(b)) => {
                let d = a as i128 - b as i128;
                if d > self.max_eng as i128 {
                    Value::PosInf
                } else {
                    Value::Fin(d.max(0) as i64)
                }
            }
        }
    }
}

impl TerminalOp for OMinus {
    fn cache_key(&self) -> u64 {
        0x6f6d_696e_0000_0000 ^ self.max_eng
    }

    fn apply(&self, lhs: Value, rhs: Value) -> Result<Value, DdError> {
        Ok(self.eval(lhs, rhs))
    }

    fn right_constant(&self, rhs: Value) -> Option<Value> {
        match rhs {
            Value::PosInf => Some(Value::ZERO),
            Value::NegInf => Some(Value::PosInf),
            Value::Fin(_) => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct AddSolveResult {
    pub min_eng: Add,
    pub iterations: usize,
    pub realizable: bool,
    pub wall_time: Duration,
}

pub fn solve_add(m: &mut Manager, g: &SymbolicGameGraph, w: Add, max_eng: u64) -> AddSolveResult {
    solve_add_observed(m, g, w, max_eng, |_, _| {})
}

/// Like [`solve_add`]; `observe` sees every energy function of the chain,
/// starting with the initial one.
pub fn solve_add_observed(
    m: &mut Manager,
    g: &SymbolicGameGraph,
    w: Add,
    max_eng: u64,
    mut observe: impl FnMut(&mut Manager, Add),
) -> AddSolveResult {
    let start = Instant::now();
    let arena = build_arena(m, g, w);
    let op = OMinus { max_eng };
    let zero = m.add_const(Value::ZERO);
    let inf = m.add_const(Value::PosInf);
    let mut pred = m.ite(g.valid, zero, inf);
    observe(m, pred);
    let mut iterations = 0;
    loop {
        let current = pred;
        iterations += 1;
        let succ = g.prime(m, current);
        let acc = m.add_apply_custom(&op, succ, arena).expect("ominus is total");
        let best_sys = m.add_abstract(Extremum::Min, acc, &g.sys_next).expect("sys' are manager variables");
        let worst_env = m.add_abstract(Extremum::Max, best_sys, &g.env_next).expect("env' are manager variables");
        pred = m.ite(g.valid, worst_env, inf);
        tracing::debug!(
            engine = "add",
            iteration = iterations,
            terminals = m.terminal_values(pred).len(),
            nodes = m.node_count(pred),
        );
        observe(m, pred);
        if pred == current {
            break;
        }
    }
    let win = winning_states(m, pred);
    let realizable = check_realizable(m, g, win);
    AddSolveResult { min_eng: pred, iterations, realizable, wall_time: start.elapsed() }
}

/// States with a finite minimal energy.
pub fn winning_states(m: &mut Manager, min_eng: Add) -> Bdd {
    m.add_to_bdd(min_eng, TerminalPred::Lt(Value::PosInf))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ominus_cases() {
        let op = OMinus { max_eng: 8 };
        assert_eq!(op.eval(Value::Fin(5), Value::PosInf), Value::ZERO);
        assert_eq!(op.eval(Value::PosInf, Value::Fin(3)), Value::PosInf);
        assert_eq!(op.eval(Value::Fin(3), Value::NegInf), Value::PosInf);
        assert_eq!(op.eval(Value::Fin(7), Value::Fin(-2)), Value::PosInf);
        assert_eq!(op.eval(Value::Fin(1), Value::Fin(4)), Value::ZERO);
        assert_eq!(op.eval(Value::Fin(6), Value::Fin(-2)), Value::Fin(8));
        assert_eq!(op.eval(Value::PosInf, Value::PosInf), Value::ZERO);
    }

    #[test]
    fn winning_states_of_constants() {
        let mut m = Manager::new(2);
        let inf = m.add_const(Value::PosInf);
        let w = winning_states(&mut m, inf);
        assert!(m.is_false(w));
        let zero = m.add_const(Value::ZERO);
        let w = winning_states(&mut m, zero);
        assert!(m.is_true(w));
    }
}
