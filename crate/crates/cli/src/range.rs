use std::str::FromStr;

use anyhow::{bail, Context};

fn parse_span(s: &str) -> anyhow::Result<(u64, u64)> {
    match s.split_once("..") {
        Some((a, b)) => {
            let a: u64 = a.trim().parse().with_context(|| format!("bad range start in `{s}`"))?;
            let b: u64 = b.trim().parse().with_context(|| format!("bad range end in `{s}`"))?;
            if a > b {
                bail!("empty range `{s}`");
            }
            Ok((a, b))
        }
        None => {
            let v: u64 = s.trim().parse().with_context(|| format!("bad number `{s}`"))?;
            Ok((v, v))
        }
    }
}

/// Inclusive range of floor counts with a step: `5..50:5`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FloorRange {
    pub start: u32,
    pub end: u32,
    pub step: u32,
}

impl FloorRange {
    pub fn values(&self) -> Vec<u32> {
        (self.start..=self.end).step_by(self.step as usize).collect()
    }
}

impl FromStr for FloorRange {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> anyhow::Result<Self> {
        let (span, step) = match s.split_once(':') {
            Some((span, step)) => (span, step.trim().parse::<u32>().with_context(|| format!("bad step in `{s}`"))?),
            None => (s, 1),
        };
        if step == 0 {
            bail!("step must be positive");
        }
        let (a, b) = parse_span(span)?;
        if a < 2 {
            bail!("an elevator needs at least two floors");
        }
        let (start, end) = (u32::try_from(a)?, u32::try_from(b)?);
        Ok(FloorRange { start, end, step })
    }
}

/// Inclusive range of energy bounds: `1..100`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub start: u64,
    pub end: u64,
}

impl Bounds {
    pub fn values(&self) -> Vec<u64> {
        (self.start..=self.end).collect()
    }
}

impl FromStr for Bounds {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> anyhow::Result<Self> {
        let (start, end) = parse_span(s)?;
        Ok(Bounds { start, end })
    }
}
