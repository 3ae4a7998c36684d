use std::path::Path;

use anyhow::{anyhow, Context};
use energy_games::crosscheck::{cross_check, minimize, seeded_game, CrossCheck};
use energy_games::exec::Exec;
use energy_games::oracle::{OracleError, DEFAULT_EXPLOSION_LIMIT};
use energy_games::pipeline::GameInput;
use energy_games::synthetic::GameText;
use serde_json::json;

use crate::{CliResult, Failure};

fn diverges(c: &CrossCheck) -> bool {
    !c.agree() || !c.lemma8.holds()
}

fn check(text: &GameText, max_eng: u64) -> Result<CrossCheck, OracleError> {
    let input = GameInput::parse(&text.spec, &text.weights).expect("generated games parse");
    cross_check(&input, max_eng, DEFAULT_EXPLOSION_LIMIT)
}

fn write_repro(dir: &Path, seed: u64, text: &GameText, max_eng: u64, c: &CrossCheck) -> anyhow::Result<String> {
    std::fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
    let stem = dir.join(format!("divergence-{seed}"));
    let spec = stem.with_extension("spec");
    let weights = stem.with_extension("weights");
    std::fs::write(&spec, &text.spec)?;
    std::fs::write(&weights, &text.weights)?;
    let info = json!({
        "seed": seed,
        "max_energy": max_eng,
        "bdd_add_agree": c.bdd_add_agree,
        "oracle_disagreements": c.oracle_disagreements,
        "general_disagreements": c.general_disagreements,
        "lemma8_mismatch": format!("{:?}", c.lemma8.mismatch),
        "realizable_bdd_add_oracle": c.realizable,
        "replay": format!(
            "energy solve --spec {} --weights {} --engine both --max-energy {max_eng}",
            spec.display(),
            weights.display()
        ),
    });
    std::fs::write(stem.with_extension("json"), serde_json::to_string_pretty(&info)?)?;
    Ok(stem.display().to_string())
}

pub fn cmd_random(seed: u64, count: u64, max_bits: u32, repro_dir: &Path, exec: Exec) -> CliResult<()> {
    if !(2..=16).contains(&max_bits) {
        return Err(anyhow!("--max-bits must lie in 2..=16").into());
    }
    let seeds: Vec<u64> = (0..count).map(|i| seed.wrapping_add(i)).collect();
    let results = exec.map(seeds, |s| {
        let (text, max_eng) = seeded_game(s, max_bits);
        let c = check(&text, max_eng);
        (s, text, max_eng, c)
    });

    let (mut realizable, mut same_iterations) = (0, 0);
    for (s, text, max_eng, c) in results {
        let c = c.map_err(|e| Failure::resource(anyhow!("seed {s}: {e}")))?;
        if diverges(&c) {
            let small = minimize(&text, |t| {
                GameInput::parse(&t.spec, &t.weights).is_ok() && check(t, max_eng).is_ok_and(|c| diverges(&c))
            });
            let small_check = check(&small, max_eng).map_err(|e| Failure::resource(anyhow!(e)))?;
            let stem = write_repro(repro_dir, s, &small, max_eng, &small_check)?;
            return Err(Failure::divergence(anyhow!("seed {s} diverges; reproducer written to {stem}.*")));
        }
        realizable += c.realizable[0] as u64;
        same_iterations += c.iterations_equal() as u64;
    }
    println!("{count} games agree ({realizable} realizable, {same_iterations} with equal iteration counts)");
    Ok(())
}
