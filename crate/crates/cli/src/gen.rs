use std::path::Path;

use anyhow::{anyhow, Context};
use energy_games::elevator::{adapted_reward, ElevatorParams, WeightScheme};

use crate::{CliResult, SchemeChoice};

pub fn scheme(choice: SchemeChoice, floors: u32, reward: Option<i64>) -> WeightScheme {
    match choice {
        SchemeChoice::Wpf => WeightScheme::PerFloor,
        SchemeChoice::Wtwo => WeightScheme::Two { reward: reward.unwrap_or_else(|| adapted_reward(floors)) },
    }
}

pub fn scheme_tag(s: WeightScheme) -> String {
    match s {
        WeightScheme::PerFloor => "wpf".into(),
        WeightScheme::Two { reward } => format!("wtwo{reward}"),
    }
}

pub fn cmd_gen_elevator(floors: u32, choice: SchemeChoice, reward: Option<i64>, out_dir: &Path) -> CliResult<()> {
    if floors < 2 {
        return Err(anyhow!("an elevator needs at least two floors").into());
    }
    let p = ElevatorParams::new(floors, scheme(choice, floors, reward));
    std::fs::create_dir_all(out_dir).with_context(|| format!("cannot create {}", out_dir.display()))?;
    let spec = out_dir.join(format!("elevator{floors}.spec"));
    let weights = out_dir.join(format!("elevator{floors}.{}.weights", scheme_tag(p.scheme)));
    std::fs::write(&spec, p.spec()).with_context(|| format!("cannot write {}", spec.display()))?;
    std::fs::write(&weights, p.weights()).with_context(|| format!("cannot write {}", weights.display()))?;
    println!("{}\n{}", spec.display(), weights.display());
    Ok(())
}
