use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;

use anyhow::{anyhow, Context};
use energy_games::elevator::ElevatorParams;
use energy_games::exec::Exec;
use energy_games::oracle::DEFAULT_EXPLOSION_LIMIT;
use energy_games::pipeline::{run_oracle, run_symbolic, Engine, GameInput};
use serde::Serialize;

use crate::gen::{scheme, scheme_tag};
use crate::solve::millis;
use crate::range::{Bounds, FloorRange};
use crate::{CliResult, EngineChoice, SchemeChoice};

pub struct SweepArgs {
    pub family: String,
    pub floors: FloorRange,
    pub bounds: Bounds,
    pub scheme: SchemeChoice,
    pub reward: Option<i64>,
    pub engine: EngineChoice,
    pub out: PathBuf,
}

#[derive(Clone, Debug, Serialize)]
pub struct Row {
    pub family: String,
    pub floors: u32,
    pub scheme: String,
    pub bound: u64,
    pub engine: String,
    pub realizable: Option<bool>,
    pub iterations: Option<usize>,
    pub max_finite_energy: Option<u64>,
    pub wall_time_ms: Option<f64>,
    pub engines_agree: Option<bool>,
    pub error: String,
}

fn engines(choice: EngineChoice) -> Vec<Engine> {
    match choice {
        EngineChoice::Bdd => vec![Engine::Bdd],
        EngineChoice::Add => vec![Engine::Add],
        EngineChoice::Both => vec![Engine::Bdd, Engine::Add],
        EngineChoice::Oracle => vec![Engine::Oracle],
    }
}

fn engine_name(e: Engine) -> String {
    format!("{e:?}").to_lowercase()
}

/// Runs every engine on one cell. A failure is recorded in the rows instead
/// of aborting the sweep.
fn cell(input: &GameInput, base: &Row, choice: EngineChoice) -> Vec<Row> {
    let bound = base.bound;
    let attempt = catch_unwind(AssertUnwindSafe(|| -> anyhow::Result<Vec<Row>> {
        let mut rows = Vec::new();
        let mut energies = Vec::new();
        for engine in engines(choice) {
            let mut row = Row { engine: engine_name(engine), ..base.clone() };
            if engine == Engine::Oracle {
                let run = run_oracle(input, bound, DEFAULT_EXPLOSION_LIMIT)?;
                row.realizable = Some(run.realizable);
                row.iterations = Some(run.iterations);
                row.max_finite_energy = run.credits.iter().flatten().max().copied();
                row.wall_time_ms = Some(millis(run.wall_time));
            } else {
                let mut run = run_symbolic(engine, input, bound);
                row.realizable = Some(run.realizable);
                row.iterations = Some(run.iterations);
                row.max_finite_energy = run.histogram().iter().filter_map(|h| h.0).max();
                row.wall_time_ms = Some(millis(run.wall_time));
                energies.push(run);
            }
            rows.push(row);
        }
        if let [bdd, add] = energies.as_mut_slice() {
            let agree = add.agrees_with(bdd);
            for r in &mut rows {
                r.engines_agree = Some(agree);
            }
        }
        Ok(rows)
    }));
    let error = match attempt {
        Ok(Ok(rows)) => return rows,
        Ok(Err(e)) => e.to_string(),
        Err(p) => p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panic".into()),
    };
    engines(choice).into_iter().map(|e| Row { engine: engine_name(e), error: error.clone(), ..base.clone() }).collect()
}

pub fn run_sweep(a: &SweepArgs, exec: Exec) -> CliResult<Vec<Row>> {
    if a.family != "elevator" {
        return Err(anyhow!("unknown family `{}` (only `elevator` is available)", a.family).into());
    }
    let mut cells = Vec::new();
    for floors in a.floors.values() {
        let p = ElevatorParams::new(floors, scheme(a.scheme, floors, a.reward));
        let input = GameInput::parse(&p.spec(), &p.weights()).context("generated elevator does not parse")?;
        let input = std::sync::Arc::new(input);
        for bound in a.bounds.values() {
            let base = Row {
                family: a.family.clone(),
                floors,
                scheme: scheme_tag(p.scheme),
                bound,
                engine: String::new(),
                realizable: None,
                iterations: None,
                max_finite_energy: None,
                wall_time_ms: None,
                engines_agree: None,
                error: String::new(),
            };
            cells.push((input.clone(), base));
        }
    }
    let engine = a.engine;
    let rows = exec.map(cells, move |(input, base)| cell(&input, &base, engine));
    Ok(rows.into_iter().flatten().collect())
}

/// First realizable bound per (floors, engine).
pub fn thresholds(rows: &[Row]) -> BTreeMap<(u32, String), Option<u64>> {
    let mut out: BTreeMap<(u32, String), Option<u64>> = BTreeMap::new();
    for r in rows {
        let e = out.entry((r.floors, r.engine.clone())).or_insert(None);
        if r.realizable == Some(true) && e.is_none_or(|b| r.bound < b) {
            *e = Some(r.bound);
        }
    }
    out
}

pub fn cmd_sweep(a: &SweepArgs, exec: Exec) -> CliResult<()> {
    let rows = run_sweep(a, exec)?;
    let mut w = csv::Writer::from_path(&a.out).with_context(|| format!("cannot write {}", a.out.display()))?;
    for r in &rows {
        w.serialize(r).context("csv")?;
    }
    w.flush().context("csv")?;
    for ((floors, engine), first) in thresholds(&rows) {
        match first {
            Some(b) => println!("{floors} floors, {engine}: realizable from bound {b}"),
            None => println!("{floors} floors, {engine}: not realizable in the swept bounds"),
        }
    }
    let failed = rows.iter().filter(|r| !r.error.is_empty()).count();
    if failed > 0 {
        eprintln!("{failed} cell runs failed; see the error column");
    }
    Ok(())
}
