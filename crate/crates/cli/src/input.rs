use std::path::Path;

use anyhow::Context;
use energy_games::pipeline::GameInput;

fn read(path: &Path) -> anyhow::Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

/// Reads and checks a specification and its weights, attributing
/// diagnostics to the file they come from.
pub fn load(spec: &Path, weights: &Path) -> anyhow::Result<GameInput> {
    let spec_src = read(spec)?;
    let weights_src = read(weights)?;
    GameInput::parse(&spec_src, "").map_err(|e| anyhow::anyhow!("{}:{e}", spec.display()))?;
    let input = GameInput::parse(&spec_src, &weights_src).map_err(|e| anyhow::anyhow!("{}:{e}", weights.display()))?;
    for w in &input.warnings {
        eprintln!("{w}");
    }
    Ok(input)
}
