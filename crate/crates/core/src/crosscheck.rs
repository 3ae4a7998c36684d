//! Differential check of the two symbolic engines against the oracle.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::oracle::{check_lemma8, cpremin_general, reduce, Lemma8Report, OracleError};
use crate::pipeline::{run_add, run_bdd, run_oracle, GameInput};
use crate::synthetic::{random_game, GameText, RandomGameParams};

#[derive(Clone, Debug)]
pub struct CrossCheck {
    pub max_eng: u64,
    /// The antichain, read as an energy function, equals the ADD result.
    pub bdd_add_agree: bool,
    /// States where the ADD result differs from the concrete-game credits.
    pub oracle_disagreements: Vec<usize>,
    /// States where the general fixed point on the reduced game differs from
    /// the concrete-game credits.
    pub general_disagreements: Vec<usize>,
    pub lemma8: Lemma8Report,
    pub iterations_bdd: usize,
    pub iterations_add: usize,
    pub iterations_oracle: usize,
    pub realizable: [bool; 3],
}

impl CrossCheck {
    pub fn agree(&self) -> bool {
        self.bdd_add_agree
            && self.oracle_disagreements.is_empty()
            && self.general_disagreements.is_empty()
            && self.realizable.iter().all(|&r| r == self.realizable[0])
    }

    pub fn iterations_equal(&self) -> bool {
        self.iterations_bdd == self.iterations_add && self.iterations_add == self.iterations_oracle
    }
}

pub fn cross_check(input: &GameInput, max_eng: u64, limit: u128) -> Result<CrossCheck, OracleError> {
    let bdd = run_bdd(input, max_eng);
    let mut add = run_add(input, max_eng);
    let bdd_add_agree = add.agrees_with(&bdd);
    let oracle = run_oracle(input, max_eng, limit)?;
    let oracle_disagreements = oracle.disagreements(&add);
    let rg = reduce(&oracle.game);
    let general = cpremin_general(&rg, max_eng);
    let fp = general.fixed_point();
    let general_disagreements = (0..oracle.game.states.len())
        .filter(|&i| fp[rg.state_vertex[i]] != oracle.credits[i])
        .collect();
    let lemma8 = check_lemma8(&rg, &oracle.game, max_eng);
    Ok(CrossCheck {
        max_eng,
        bdd_add_agree,
        oracle_disagreements,
        general_disagreements,
        lemma8,
        iterations_bdd: bdd.iterations,
        iterations_add: add.iterations,
        iterations_oracle: oracle.iterations,
        realizable: [bdd.realizable, add.realizable, oracle.realizable],
    })
}

/// The random game for `seed`: at most `max_bits` state bits split between
/// the players, weights in `[-3, 3]`, and a bound in `1..=20`.
pub fn seeded_game(seed: u64, max_bits: u32) -> (GameText, u64) {
    let mut rng = StdRng::seed_from_u64(seed);
    let env_bits = rng.gen_range(1..max_bits.max(2));
    let sys_bits = rng.gen_range(1..=(max_bits - env_bits).max(1));
    let params = RandomGameParams { env_bits, sys_bits, ..RandomGameParams::default() };
    let text = random_game(&mut rng, &params);
    let max_eng = rng.gen_range(1..=20);
    (text, max_eng)
}

fn is_constraint(line: &str) -> bool {
    let t = line.trim_start();
    t.starts_with("WEIGHT") || (line.starts_with(' ') && t.ends_with(';') && !t.contains(" : "))
}

/// Greedily drops constraint and weight lines while `still_fails` keeps
/// holding. Declarations and section headers are kept.
pub fn minimize(text: &GameText, still_fails: impl Fn(&GameText) -> bool) -> GameText {
    let mut cur = text.clone();
    loop {
        let mut shrunk = false;
        for part in 0..2 {
            let src = if part == 0 { &cur.spec } else { &cur.weights };
            let lines: Vec<&str> = src.lines().collect();
            for i in (0..lines.len()).rev() {
                if !is_constraint(lines[i]) {
                    continue;
                }
                let mut kept: Vec<&str> = lines.clone();
                kept.remove(i);
                let joined = kept.iter().map(|l| format!("{l}\n")).collect::<String>();
                let cand = if part == 0 {
                    GameText { spec: joined, weights: cur.weights.clone() }
                } else {
                    GameText { spec: cur.spec.clone(), weights: joined }
                };
                if still_fails(&cand) {
                    cur = cand;
                    shrunk = true;
                    break;
                }
            }
            if shrunk {
                break;
            }
        }
        if !shrunk {
            return cur;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimize_keeps_only_the_needed_lines() {
        let text = GameText {
            spec: "VARENV\n  a : boolean;\nVAR\n  b : boolean;\nASSUMPTION\n  G(a | b);\nGUARANTEE\n  G(next(b));\n  G(!a);\n"
                .into(),
            weights: "WEIGHT 1 a;\nWEIGHT -2 b;\n".into(),
        };
        let small = minimize(&text, |t| t.spec.contains("G(!a)") && t.weights.contains("-2"));
        assert_eq!(small.spec, "VARENV\n  a : boolean;\nVAR\n  b : boolean;\nASSUMPTION\nGUARANTEE\n  G(!a);\n");
        assert_eq!(small.weights, "WEIGHT -2 b;\n");
        assert!(GameInput::parse(&small.spec, &small.weights).is_ok());
    }
}
