//! Machine-readable run reports.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::oracle::Credit;
use crate::pipeline::Engine;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EngineReport {
    pub engine: Engine,
    pub iterations: usize,
    pub realizable: bool,
    pub wall_time_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HistogramEntry {
    /// `null` for states that are not winning within the bound.
    pub energy: Option<u64>,
    pub states: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub max_energy: u64,
    pub state_count: u64,
    pub realizable: bool,
    pub engines: Vec<EngineReport>,
    pub histogram: Vec<HistogramEntry>,
    pub max_finite_energy: Option<u64>,
    /// Set when more than one engine ran: all computed the same energies.
    pub engines_agree: Option<bool>,
    /// SHA-256 over the report with wall times zeroed and this field empty.
    pub determinism_hash: String,
}

impl RunReport {
    pub fn new(
        max_energy: u64,
        engines: Vec<EngineReport>,
        histogram: &[(Credit, u64)],
        engines_agree: Option<bool>,
    ) -> Self {
        let histogram: Vec<HistogramEntry> =
            histogram.iter().map(|&(energy, states)| HistogramEntry { energy, states }).collect();
        let mut r = RunReport {
            schema_version: SCHEMA_VERSION,
            max_energy,
            state_count: histogram.iter().map(|h| h.states).sum(),
            realizable: engines.first().is_some_and(|e| e.realizable),
            max_finite_energy: histogram.iter().filter_map(|h| h.energy).max(),
            engines,
            histogram,
            engines_agree,
            determinism_hash: String::new(),
        };
        r.determinism_hash = r.compute_hash();
        r
    }

    pub fn compute_hash(&self) -> String {
        let mut stripped = self.clone();
        stripped.determinism_hash.clear();
        for e in &mut stripped.engines {
            e.wall_time_ms = 0.0;
        }
        let bytes = serde_json::to_vec(&stripped).expect("reports serialize");
        Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hash_ignores_wall_time() {
        let mk = |ms| {
            RunReport::new(
                5,
                vec![EngineReport { engine: Engine::Add, iterations: 3, realizable: true, wall_time_ms: ms }],
                &[(Some(0), 3), (None, 1)],
                None,
            )
        };
        let (a, b) = (mk(1.0), mk(250.0));
        assert_eq!(a.determinism_hash, b.determinism_hash);
        assert_eq!(a.state_count, 4);
        assert_eq!(a.max_finite_energy, Some(0));
        let back: RunReport = serde_json::from_str(&a.to_json()).unwrap();
        assert_eq!(back, a);
    }
}
