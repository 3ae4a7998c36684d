//! Synthetic games: seeded random reactive games over Boolean variables and
//! the cycle game whose solution needs the maximal number of iterations.

use std::fmt::Write;

use rand::seq::SliceRandom;
use rand::Rng;

/// Specification and weights source text of a generated game.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameText {
    pub spec: String,
    pub weights: String,
}

#[derive(Clone, Debug)]
pub struct RandomGameParams {
    pub env_bits: u32,
    pub sys_bits: u32,
    /// Upper bound on the number of transition constraints per player.
    pub max_constraints: usize,
    /// Upper bound on the number of weight entries.
    pub max_weights: usize,
    pub weight_range: (i64, i64),
    /// Probability of an initial constraint for each player.
    pub init_probability: f64,
    pub max_depth: u32,
}

impl Default for RandomGameParams {
    fn default() -> Self {
        RandomGameParams {
            env_bits: 3,
            sys_bits: 3,
            max_constraints: 2,
            max_weights: 4,
            weight_range: (-3, 3),
            init_probability: 0.3,
            max_depth: 3,
        }
    }
}

struct Atoms {
    current: Vec<String>,
    next: Vec<String>,
}

fn random_expr(rng: &mut impl Rng, atoms: &Atoms, depth: u32) -> String {
    if depth == 0 || rng.gen_bool(0.3) {
        let use_next = !atoms.next.is_empty() && rng.gen_bool(0.5);
        let pool = if use_next || atoms.current.is_empty() { &atoms.next } else { &atoms.current };
        let a = pool.choose(rng).cloned().unwrap_or_else(|| "TRUE".into());
        return if rng.gen_bool(0.3) { format!("!{a}") } else { a };
    }
    let l = random_expr(rng, atoms, depth - 1);
    let r = random_expr(rng, atoms, depth - 1);
    match rng.gen_range(0..5) {
        0 | 1 => format!("({l} | {r})"),
        2 => format!("({l} & {r})"),
        3 => format!("({l} -> {r})"),
        _ => format!("!({l} <-> {r})"),
    }
}

/// Random game with Boolean variables `e0..` (environment) and `s0..`
/// (system). Weight entries are made pairwise disjoint, so every transition
/// weight lies in `weight_range`.
pub fn random_game(rng: &mut impl Rng, p: &RandomGameParams) -> GameText {
    let env: Vec<String> = (0..p.env_bits).map(|i| format!("e{i}")).collect();
    let sys: Vec<String> = (0..p.sys_bits).map(|i| format!("s{i}")).collect();
    let all: Vec<String> = env.iter().chain(&sys).cloned().collect();
    let next = |vs: &[String]| vs.iter().map(|v| format!("next({v})")).collect::<Vec<_>>();

    let mut spec = String::new();
    if !env.is_empty() {
        writeln!(spec, "VARENV").unwrap();
        for v in &env {
            writeln!(spec, "  {v} : boolean;").unwrap();
        }
    }
    if !sys.is_empty() {
        writeln!(spec, "VAR").unwrap();
        for v in &sys {
            writeln!(spec, "  {v} : boolean;").unwrap();
        }
    }

    writeln!(spec, "ASSUMPTION").unwrap();
    if !env.is_empty() && rng.gen_bool(p.init_probability) {
        let a = Atoms { current: env.clone(), next: vec![] };
        writeln!(spec, "  {};", random_expr(rng, &a, p.max_depth)).unwrap();
    }
    let trans_e = Atoms { current: all.clone(), next: next(&env) };
    for _ in 0..rng.gen_range(0..=p.max_constraints) {
        writeln!(spec, "  G({});", random_expr(rng, &trans_e, p.max_depth)).unwrap();
    }

    writeln!(spec, "GUARANTEE").unwrap();
    if rng.gen_bool(p.init_probability) {
        let a = Atoms { current: all.clone(), next: vec![] };
        writeln!(spec, "  {};", random_expr(rng, &a, p.max_depth)).unwrap();
    }
    let trans_s = Atoms { current: all.clone(), next: next(&all) };
    for _ in 0..rng.gen_range(0..=p.max_constraints) {
        writeln!(spec, "  G({});", random_expr(rng, &trans_s, p.max_depth)).unwrap();
    }

    let mut weights = String::new();
    let mut previous: Vec<String> = Vec::new();
    for _ in 0..rng.gen_range(0..=p.max_weights) {
        let phi = random_expr(rng, &trans_s, p.max_depth);
        let value = rng.gen_range(p.weight_range.0..=p.weight_range.1);
        let mut formula = phi.clone();
        for q in &previous {
            formula = format!("{formula} & !{q}");
        }
        writeln!(weights, "WEIGHT {value} {formula};").unwrap();
        previous.push(format!("({phi})"));
    }
    GameText { spec, weights }
}

/// A single system-controlled counter `x` stepping through `0..n` in a
/// cycle. A step from an even to an odd value gains 1, every other step
/// loses 1, so the cycle is balanced for even `n` and losing for odd `n`.
pub fn cycle_game(n: u32) -> GameText {
    assert!(n >= 2);
    let last = n - 1;
    let spec = format!(
        "VAR\n  x : 0..{last};\nGUARANTEE\n  G((x < {last} -> next(x) = x + 1) & (x = {last} -> next(x) = 0));\n"
    );
    let parity = |odd: u32, var: &str| {
        (0..n).filter(|v| v % 2 == odd).map(|v| format!("{var} = {v}")).collect::<Vec<_>>().join(" | ")
    };
    let gain = format!("({}) & ({})", parity(0, "x"), parity(1, "next(x)"));
    let weights = format!("WEIGHT 1 {gain};\nWEIGHT -1 !({gain});\n");
    GameText { spec, weights }
}
