//! From source text to solved games. Every engine run gets a fresh manager
//! and its own copy of the game graph.

use std::time::Duration;

use symdd::{Add, Manager, TerminalPred, Value};

use crate::encoding::Encoding;
use crate::game::{build_graph, normalize_weights, partition_to_add, SymbolicGameGraph, WeightPartition};
use crate::oracle::{cpremin_reactive, explicate, Credit, ExplicitGame, OracleError};
use crate::solver_add::solve_add;
use crate::solver_bdd::{solve_bdd, EnergyAntichain};
use crate::spec::{
    check_weights, expand_and_check, parse_spec, parse_weights, CheckedSpec, SpecError, Warning, WeightEntry,
};

#[derive(Clone, Debug)]
pub struct GameInput {
    pub spec: CheckedSpec,
    pub weights: Vec<WeightEntry>,
    pub warnings: Vec<Warning>,
}

impl GameInput {
    pub fn parse(spec: &str, weights: &str) -> Result<Self, SpecError> {
        let checked = expand_and_check(&parse_spec(spec)?)?;
        let (weights, mut warnings) = check_weights(&checked, &parse_weights(weights)?)?;
        warnings.splice(0..0, checked.warnings.iter().cloned());
        Ok(GameInput { spec: checked, weights, warnings })
    }

    pub fn encoding(&self) -> Encoding {
        Encoding::new(&self.spec.ast)
    }

    pub fn instantiate(&self) -> Instance {
        let enc = self.encoding();
        let mut m = enc.new_manager();
        let graph = build_graph(&mut m, &self.spec.ast, enc);
        let partition = normalize_weights(&mut m, &graph, &self.weights);
        let weights = partition_to_add(&mut m, &partition);
        Instance { m, graph, partition, weights }
    }
}

/// A game compiled into one manager.
pub struct Instance {
    pub m: Manager,
    pub graph: SymbolicGameGraph,
    pub partition: WeightPartition,
    pub weights: Add,
}

impl Instance {
    /// Histogram of an energy function over the valid states, `None`
    /// standing for `+inf`; ascending with `+inf` last.
    pub fn histogram(&mut self, energy: Add) -> Vec<(Credit, u64)> {
        let mut out = Vec::new();
        for v in self.m.terminal_values(energy) {
            let at = self.m.add_to_bdd(energy, TerminalPred::Eq(v));
            let at = self.m.and(at, self.graph.valid);
            let n = self.m.sat_count(at, &self.graph.state_vars).expect("states range over state bits") as u64;
            if n > 0 {
                let credit = match v {
                    Value::Fin(e) => Some(e as u64),
                    _ => None,
                };
                out.push((credit, n));
            }
        }
        out.sort_by_key(|&(c, _)| (c.is_none(), c));
        out
    }

    /// Energy of a packed state.
    pub fn energy_at(&self, energy: Add, state: u64) -> Credit {
        let asg = self.graph.encoding.assignment(state, 0);
        match self.m.eval_add(energy, &asg) {
            Value::Fin(e) => Some(e as u64),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Bdd,
    Add,
    Oracle,
}

/// A symbolic engine's result, expressed as an energy ADD in the run's own
/// manager.
pub struct SymbolicRun {
    pub engine: Engine,
    pub instance: Instance,
    pub energy: Add,
    pub antichain: Option<EnergyAntichain>,
    pub iterations: usize,
    pub realizable: bool,
    pub wall_time: Duration,
}

impl SymbolicRun {
    pub fn histogram(&mut self) -> Vec<(Credit, u64)> {
        self.instance.histogram(self.energy)
    }

    /// The two runs compute the same energy function.
    pub fn agrees_with(&mut self, other: &SymbolicRun) -> bool {
        let theirs = self.instance.m.import(&other.instance.m, other.energy);
        theirs == self.energy
    }
}

pub fn run_bdd(input: &GameInput, max_eng: u64) -> SymbolicRun {
    let mut instance = input.instantiate();
    let r = solve_bdd(&mut instance.m, &instance.graph, &instance.partition, max_eng);
    let energy = r.min_eng_states.to_add(&mut instance.m);
    SymbolicRun {
        engine: Engine::Bdd,
        instance,
        energy,
        antichain: Some(r.min_eng_states),
        iterations: r.iterations,
        realizable: r.realizable,
        wall_time: r.wall_time,
    }
}

pub fn run_add(input: &GameInput, max_eng: u64) -> SymbolicRun {
    let mut instance = input.instantiate();
    let r = solve_add(&mut instance.m, &instance.graph, instance.weights, max_eng);
    SymbolicRun {
        engine: Engine::Add,
        instance,
        energy: r.min_eng,
        antichain: None,
        iterations: r.iterations,
        realizable: r.realizable,
        wall_time: r.wall_time,
    }
}

pub fn run_symbolic(engine: Engine, input: &GameInput, max_eng: u64) -> SymbolicRun {
    match engine {
        Engine::Bdd => run_bdd(input, max_eng),
        Engine::Add => run_add(input, max_eng),
        Engine::Oracle => panic!("the oracle is not a symbolic engine"),
    }
}

pub struct OracleRun {
    pub game: ExplicitGame,
    pub credits: Vec<Credit>,
    pub iterations: usize,
    pub realizable: bool,
    pub wall_time: Duration,
}

impl OracleRun {
    pub fn histogram(&self) -> Vec<(Credit, u64)> {
        let mut counts = std::collections::BTreeMap::new();
        for &c in &self.credits {
            *counts.entry((c.is_none(), c)).or_insert(0u64) += 1;
        }
        counts.into_iter().map(|((_, c), n)| (c, n)).collect()
    }

    /// States (by index) where a symbolic run disagrees.
    pub fn disagreements(&self, run: &SymbolicRun) -> Vec<usize> {
        (0..self.game.states.len())
            .filter(|&i| run.instance.energy_at(run.energy, self.game.states[i]) != self.credits[i])
            .collect()
    }
}

pub fn run_oracle(input: &GameInput, max_eng: u64, limit: u128) -> Result<OracleRun, OracleError> {
    let start = std::time::Instant::now();
    let mut instance = input.instantiate();
    let game = explicate(&mut instance.m, &instance.graph, &instance.partition, limit)?;
    let r = cpremin_reactive(&game, max_eng);
    let realizable = game.realizable(&r.credits);
    Ok(OracleRun { game, credits: r.credits, iterations: r.iterations, realizable, wall_time: start.elapsed() })
}
