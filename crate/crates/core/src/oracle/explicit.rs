use std::collections::HashMap;
use std::fmt::Write;

use symdd::{Bdd, Manager, VarId};

use super::OracleError;
use crate::encoding::Encoding;
use crate::game::{SymbolicGameGraph, WeightPartition};
use crate::spec::Owner;

pub const DEFAULT_EXPLOSION_LIMIT: u128 = 1_000_000;

/// One valid environment move from a state and the system's valid answers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnvMove {
    /// Packed env bits of the next state.
    pub env: u64,
    /// Successor state index and transition weight, one per valid answer.
    pub responses: Vec<(usize, i64)>,
}

/// The concrete game behind a symbolic game graph. States are packed
/// bit vectors (see [`Encoding::encode`]).
#[derive(Clone, Debug)]
pub struct ExplicitGame {
    pub encoding: Encoding,
    pub states: Vec<u64>,
    pub index: HashMap<u64, usize>,
    pub env_mask: u64,
    /// Every valid valuation of the env variables.
    pub env_choices: Vec<u64>,
    /// Per state, the environment moves allowed by `rho_e`.
    pub moves: Vec<Vec<EnvMove>>,
    pub theta_e: Vec<u64>,
    pub theta_s: Vec<usize>,
}

fn enumerate(m: &Manager, f: Bdd, vars: &[VarId]) -> Vec<u64> {
    let mut out: Vec<u64> = m
        .sat_iter(f, vars)
        .expect("set ranges over the listed variables")
        .map(|bits| Encoding::pack(vars, &bits))
        .collect();
    out.sort_unstable();
    out
}

fn restrict(m: &mut Manager, mut f: Bdd, vars: &[VarId], packed: u64) -> Bdd {
    for &v in vars {
        f = m.cofactor(f, v, (packed >> (v.0 / 2)) & 1 == 1);
    }
    f
}

/// Enumerates the concrete game. Fails when there are more valid states
/// than `limit`.
pub fn explicate(
    m: &mut Manager,
    g: &SymbolicGameGraph,
    p: &WeightPartition,
    limit: u128,
) -> Result<ExplicitGame, OracleError> {
    let count = g.state_count(m);
    if count > limit {
        return Err(OracleError::Explosion { states: count, limit });
    }
    let enc = &g.encoding;
    let states = enumerate(m, g.valid, &g.state_vars);
    let index: HashMap<u64, usize> = states.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let valid_env = m.exists(g.valid, &g.sys_vars);
    let env_choices = enumerate(m, valid_env, &g.env_vars);
    let valid_env_next = g.prime(m, valid_env);
    let joint = m.and(g.rho_e, g.rho_s);

    let mut moves = Vec::with_capacity(states.len());
    for &s in &states {
        let re = restrict(m, g.rho_e, &g.state_vars, s);
        let re = m.and(re, valid_env_next);
        let rs = restrict(m, joint, &g.state_vars, s);
        let mut here = Vec::new();
        for e in enumerate(m, re, &g.env_next) {
            let answers = restrict(m, rs, &g.env_next, e);
            let responses = enumerate(m, answers, &g.sys_next)
                .into_iter()
                .map(|sys| {
                    let next = e | sys;
                    let asg = enc.assignment(s, next);
                    let w = p
                        .entries
                        .iter()
                        .find(|(_, t)| m.eval(*t, &asg))
                        .map(|(v, _)| *v)
                        .expect("partition covers valid transitions");
                    (index[&next], w)
                })
                .collect();
            here.push(EnvMove { env: e, responses });
        }
        moves.push(here);
    }

    let theta_e = enumerate(m, g.theta_e, &g.env_vars);
    let theta_s = enumerate(m, g.theta_s, &g.state_vars).into_iter().map(|s| index[&s]).collect();
    Ok(ExplicitGame {
        encoding: enc.clone(),
        env_mask: enc.owner_mask(Owner::Env),
        states,
        index,
        env_choices,
        moves,
        theta_e,
        theta_s,
    })
}

impl ExplicitGame {
    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn transition_count(&self) -> usize {
        self.moves.iter().flatten().map(|mv| mv.responses.len()).sum()
    }

    pub fn describe_state(&self, i: usize) -> String {
        let vals = self.encoding.decode(self.states[i]).expect("valid state");
        self.encoding
            .vars
            .iter()
            .zip(vals)
            .map(|(v, x)| format!("{}={}", v.decl.name, x))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Initial states compatible with the env choice `e`.
    pub fn initial_states_for(&self, e: u64) -> impl Iterator<Item = usize> + '_ {
        self.theta_s.iter().copied().filter(move |&i| self.states[i] & self.env_mask == e)
    }

    /// Every initial env choice has an initial state with a finite credit.
    pub fn realizable(&self, credits: &[Option<u64>]) -> bool {
        self.theta_e
            .iter()
            .all(|&e| self.initial_states_for(e).any(|i| credits[i].is_some()))
    }

    /// One line per state, then its moves and weighted answers.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, mvs) in self.moves.iter().enumerate() {
            writeln!(out, "s{i} [{}]", self.describe_state(i)).unwrap();
            for mv in mvs {
                let rs: Vec<String> = mv.responses.iter().map(|(j, w)| format!("s{j}:{w}")).collect();
                writeln!(out, "  env {:#x} -> {}", mv.env, rs.join(" ")).unwrap();
            }
        }
        out
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph game {\n");
        for i in 0..self.states.len() {
            writeln!(out, "  s{i} [label=\"{}\"];", self.describe_state(i)).unwrap();
        }
        for (i, mvs) in self.moves.iter().enumerate() {
            for mv in mvs {
                for (j, w) in &mv.responses {
                    writeln!(out, "  s{i} -> s{j} [label=\"{w}\"];").unwrap();
                }
            }
        }
        out.push_str("}\n");
        out
    }
}
