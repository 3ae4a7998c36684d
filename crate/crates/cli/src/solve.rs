use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context};
use energy_games::encoding::Encoding;
use energy_games::oracle::{reduce, OracleError};
use energy_games::pipeline::{run_bdd, run_add, run_oracle, Engine, GameInput, OracleRun, SymbolicRun};
use energy_games::report::{EngineReport, RunReport};
use symdd::VarId;

use crate::{input, CliResult, EngineChoice, Failure};

pub struct SolveArgs {
    pub spec: PathBuf,
    pub weights: PathBuf,
    pub engine: EngineChoice,
    pub max_energy: u64,
    pub out: Option<PathBuf>,
    pub dump_dot: Option<PathBuf>,
    pub oracle_limit: u128,
}

pub fn millis(d: std::time::Duration) -> f64 {
    (d.as_secs_f64() * 1e6).round() / 1e3
}

pub fn engine_report(run: &SymbolicRun) -> EngineReport {
    EngineReport {
        engine: run.engine,
        iterations: run.iterations,
        realizable: run.realizable,
        wall_time_ms: millis(run.wall_time),
    }
}

/// Bit names such as `src_floor[1]'` for the Graphviz output.
fn bit_namer(enc: &Encoding) -> impl Fn(VarId) -> String + '_ {
    move |v| {
        let (bit, primed) = (v.0 / 2, v.0 % 2 == 1);
        let var = enc.vars.iter().find(|x| (x.first_bit..x.first_bit + x.nbits).contains(&bit));
        let tick = if primed { "'" } else { "" };
        match var {
            Some(x) if x.nbits == 1 => format!("{}{tick}", x.decl.name),
            Some(x) => format!("{}[{}]{tick}", x.decl.name, bit - x.first_bit),
            None => format!("b{bit}{tick}"),
        }
    }
}

fn write_file(dir: &Path, name: &str, text: &str) -> anyhow::Result<()> {
    let path = dir.join(name);
    std::fs::write(&path, text).with_context(|| format!("cannot write {}", path.display()))
}

fn dump_symbolic(dir: &Path, run: &SymbolicRun) -> anyhow::Result<()> {
    let inst = &run.instance;
    let name = bit_namer(&inst.graph.encoding);
    let tag = format!("{:?}", run.engine).to_lowercase();
    write_file(dir, &format!("{tag}_energy.dot"), &inst.m.to_dot(run.energy, &name))?;
    if let Some(a) = &run.antichain {
        for (e, states) in a.iter() {
            write_file(dir, &format!("{tag}_antichain_{e}.dot"), &inst.m.to_dot(states, &name))?;
        }
    }
    Ok(())
}

fn dump_oracle(dir: &Path, run: &OracleRun) -> anyhow::Result<()> {
    write_file(dir, "oracle_game.dot", &run.game.to_dot())?;
    write_file(dir, "oracle_reduced.dot", &reduce(&run.game).to_dot())
}

fn oracle(input: &GameInput, max_energy: u64, limit: u128) -> CliResult<OracleRun> {
    run_oracle(input, max_energy, limit).map_err(|e| match e {
        OracleError::Explosion { .. } => Failure::resource(anyhow!(e)),
        other => Failure::from(anyhow!(other)),
    })
}

pub fn cmd_solve(a: &SolveArgs) -> CliResult<()> {
    let input = input::load(&a.spec, &a.weights)?;
    if let Some(dir) = &a.dump_dot {
        std::fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
    }
    let dump = |f: &dyn Fn(&Path) -> anyhow::Result<()>| -> anyhow::Result<()> {
        match &a.dump_dot {
            Some(dir) => f(dir),
            None => Ok(()),
        }
    };

    let report = match a.engine {
        EngineChoice::Bdd | EngineChoice::Add => {
            let mut run = if a.engine == EngineChoice::Bdd {
                run_bdd(&input, a.max_energy)
            } else {
                run_add(&input, a.max_energy)
            };
            dump(&|d| dump_symbolic(d, &run))?;
            let hist = run.histogram();
            RunReport::new(a.max_energy, vec![engine_report(&run)], &hist, None)
        }
        EngineChoice::Both => {
            let bdd = run_bdd(&input, a.max_energy);
            let mut add = run_add(&input, a.max_energy);
            let agree = add.agrees_with(&bdd) && add.realizable == bdd.realizable;
            dump(&|d| {
                dump_symbolic(d, &bdd)?;
                dump_symbolic(d, &add)
            })?;
            let hist = add.histogram();
            RunReport::new(a.max_energy, vec![engine_report(&bdd), engine_report(&add)], &hist, Some(agree))
        }
        EngineChoice::Oracle => {
            let run = oracle(&input, a.max_energy, a.oracle_limit)?;
            dump(&|d| dump_oracle(d, &run))?;
            let er = EngineReport {
                engine: Engine::Oracle,
                iterations: run.iterations,
                realizable: run.realizable,
                wall_time_ms: millis(run.wall_time),
            };
            RunReport::new(a.max_energy, vec![er], &run.histogram(), None)
        }
    };

    let json = report.to_json();
    match &a.out {
        Some(path) => std::fs::write(path, format!("{json}\n")).with_context(|| format!("cannot write {}", path.display()))?,
        None => {
            use std::io::Write;
            // a closed pipe (`| head`) is not an error worth reporting
            let _ = writeln!(std::io::stdout(), "{json}");
        }
    }
    if report.engines_agree == Some(false) {
        return Err(Failure::divergence(anyhow!("the BDD and ADD engines computed different energies")));
    }
    Ok(())
}
