//! End-to-end acceptance run: one PASS/FAIL line per criterion. Exits with
//! status 1 when any criterion fails.

#[path = "../../dd/tests/common/mod.rs"]
mod dd;
mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use energy_games::crosscheck::{cross_check, seeded_game, CrossCheck};
use energy_games::elevator::{elevator_spec, ElevatorParams};
use energy_games::encoding::Encoding;
use energy_games::game::build_graph;
use energy_games::oracle::{DEFAULT_EXPLOSION_LIMIT};
use energy_games::pipeline::{run_add, run_bdd, run_oracle, GameInput, SymbolicRun};
use energy_games::solver_add::{solve_add_observed, OMinus};
use energy_games::solver_bdd::solve_bdd_observed;
use energy_games::spec::{expand_and_check, parse_spec};
use energy_games::synthetic::cycle_game;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use symdd::{Add, ArithOp, Manager, Value};

struct Verdict {
    pass: bool,
    detail: String,
}

type Criterion<'a> = (&'static str, Box<dyn FnOnce() -> Verdict + 'a>);

impl Verdict {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Verdict { pass, detail: detail.into() }
    }
}

fn max_finite(run: &mut SymbolicRun) -> Option<u64> {
    run.histogram().iter().filter_map(|h| h.0).max()
}

fn secs(d: Duration) -> String {
    format!("{:.2}s", d.as_secs_f64())
}

fn five_floors() -> Verdict {
    let input = common::wpf(5);
    let mut parts = Vec::new();
    let mut pass = true;
    for mut run in [run_bdd(&input, 100), run_add(&input, 100)] {
        let max = max_finite(&mut run);
        let ok = run.realizable && max == Some(7) && run.iterations == 6 && run.wall_time < Duration::from_secs(5);
        pass &= ok;
        parts.push(format!(
            "{:?}: realizable={} max={max:?} iterations={} (want 6) time={}",
            run.engine,
            run.realizable,
            run.iterations,
            secs(run.wall_time)
        ));
    }
    Verdict::new(pass, parts.join("; "))
}

fn state_counts() -> Verdict {
    let mut got = Vec::new();
    for floors in [5, 10, 50] {
        let ast = expand_and_check(&parse_spec(&elevator_spec(floors)).unwrap()).unwrap().ast;
        let enc = Encoding::new(&ast);
        let mut m = enc.new_manager();
        let g = build_graph(&mut m, &ast, enc);
        got.push(g.state_count(&m));
    }
    Verdict::new(got == [750, 6000, 750_000], format!("5/10/50 floors: {got:?}"))
}

fn threshold(input: &GameInput, at: u64) -> (bool, String) {
    let mut ok = true;
    let mut seen = Vec::new();
    for m in [at - 1, at] {
        for run in [run_bdd(input, m), run_add(input, m)] {
            ok &= run.realizable == (m == at);
            seen.push(format!("{:?}@{m}={}", run.engine, run.realizable));
        }
    }
    (ok, seen.join(" "))
}

fn thresholds_at_twenty_floors() -> Verdict {
    let (a, da) = threshold(&common::wpf(20), 36);
    let p = ElevatorParams::two_adapted(20);
    let (b, db) = threshold(&GameInput::parse(&p.spec(), &p.weights()).unwrap(), 19);
    Verdict::new(a && b, format!("per-floor: {da}; two-weight: {db}"))
}

fn two_weight_sensitivity() -> Verdict {
    let one = common::wtwo(5, 1);
    let won: Vec<u64> = (0..=200).filter(|&m| run_add(&one, m).realizable).collect();
    let bdd_won: Vec<u64> = [0, 1, 5, 20, 100, 200].into_iter().filter(|&m| run_bdd(&one, m).realizable).collect();
    let two = common::wtwo(5, 2);
    let (b, a) = (run_bdd(&two, 100), run_add(&two, 100));
    let pass = won.is_empty() && bdd_won.is_empty() && a.realizable && b.realizable;
    Verdict::new(
        pass,
        format!(
            "reward 1 realizable at bounds {won:?} (add, 0..=200), {bdd_won:?} (bdd, sampled); reward 2 realizable: bdd={} add={}",
            b.realizable, a.realizable
        ),
    )
}

/// Inputs shared by the engine-equivalence and chain checks.
fn equivalence_instances() -> Vec<(String, GameInput, u64)> {
    let mut out = Vec::new();
    for seed in 0..100 {
        let (t, m) = seeded_game(seed, 6);
        out.push((format!("seed {seed}"), common::from_text(&t), m));
    }
    for floors in 2..=5 {
        for (name, input) in [("wpf", common::wpf(floors)), ("wtwo1", common::wtwo(floors, 1)), ("wtwo2", common::wtwo(floors, 2))] {
            for m in [3, 7, 20] {
                out.push((format!("{floors} floors {name} bound {m}"), input.clone(), m));
            }
        }
    }
    out
}

fn engine_equivalence(checks: &[(String, CrossCheck)], elapsed: Duration) -> Verdict {
    let bad: Vec<&str> = checks.iter().filter(|(_, c)| !c.agree()).map(|(n, _)| n.as_str()).collect();
    Verdict::new(
        bad.is_empty() && elapsed < Duration::from_secs(60),
        format!("{} instances, disagreeing: {bad:?}, time={}", checks.len(), secs(elapsed)),
    )
}

fn lemma8(checks: &[(String, CrossCheck)]) -> Verdict {
    let bad: Vec<String> = checks
        .iter()
        .filter(|(_, c)| !c.lemma8.holds())
        .map(|(n, c)| format!("{n}: {:?}", c.lemma8.mismatch))
        .collect();
    Verdict::new(bad.is_empty(), format!("{} instances, mismatches: {bad:?}", checks.len()))
}

fn cycle_law() -> Verdict {
    let mut pass = true;
    let mut parts = Vec::new();
    for n in [3u32, 5] {
        let input = common::from_text(&cycle_game(n));
        for m in [5u64, 10] {
            let want = (n as u64 * m + 2) as usize;
            let o = run_oracle(&input, m, DEFAULT_EXPLOSION_LIMIT).unwrap();
            let (b, a) = (run_bdd(&input, m), run_add(&input, m));
            let ok = [o.iterations, b.iterations, a.iterations] == [want; 3]
                && !o.realizable
                && !b.realizable
                && !a.realizable;
            pass &= ok;
            parts.push(format!("N={n} bound {m}: {}/{}/{} (want {want})", o.iterations, b.iterations, a.iterations));
        }
    }
    let even = common::from_text(&cycle_game(4));
    let o = run_oracle(&even, 10, DEFAULT_EXPLOSION_LIMIT).unwrap();
    let (b, a) = (run_bdd(&even, 10), run_add(&even, 10));
    pass &= [o.iterations, b.iterations, a.iterations] == [2; 3];
    parts.push(format!("even: {}/{}/{}", o.iterations, b.iterations, a.iterations));
    Verdict::new(pass, parts.join("; "))
}

fn truth_tables() -> usize {
    let mut rng = StdRng::seed_from_u64(0xacce);
    let mut m = Manager::new(10);
    let mut failures = 0;
    for round in 0..10_000 {
        if round % 500 == 0 {
            m.reset();
        }
        let n = rng.gen_range(1..=10);
        let e1 = dd::random_bexpr(&mut rng, n, 5);
        let e2 = dd::random_bexpr(&mut rng, n, 5);
        let (t1, t2) = (dd::truth_table(&e1, n), dd::truth_table(&e2, n));
        let f = dd::build_bexpr(&mut m, &e1);
        let g = dd::build_bexpr(&mut m, &e2);
        if (f == g) != (t1 == t2) {
            failures += 1;
        }
        for op in dd::BOOL_OPS {
            let h = m.apply_bool(op, f, g);
            let expect: Vec<bool> = t1.iter().zip(&t2).map(|(&a, &b)| dd::bool_op(op, a, b)).collect();
            if h != dd::bdd_from_table(&mut m, &expect, n) {
                failures += 1;
            }
        }
    }
    failures
}

fn le(m: &mut Manager, a: Add, b: Add) -> bool {
    m.add_apply(ArithOp::Max, a, b).unwrap() == b
}

/// Antichain disjointness and monotone chains on one instance.
fn chain_checks(input: &GameInput, max_eng: u64) -> (usize, usize) {
    let (mut overlapping, mut decreasing) = (0, 0);
    let mut inst = input.instantiate();
    let mut prev: Option<Add> = None;
    solve_bdd_observed(&mut inst.m, &inst.graph, &inst.partition, max_eng, |m, a| {
        if !a.is_disjoint(m) {
            overlapping += 1;
        }
        let f = a.to_add(m);
        if prev.is_some_and(|p| !le(m, p, f)) {
            decreasing += 1;
        }
        prev = Some(f);
    });
    let mut inst = input.instantiate();
    let mut prev: Option<Add> = None;
    solve_add_observed(&mut inst.m, &inst.graph, inst.weights, max_eng, |m, f| {
        if prev.is_some_and(|p| !le(m, p, f)) {
            decreasing += 1;
        }
        prev = Some(f);
    });
    (overlapping, decreasing)
}

fn ominus_classes() -> usize {
    use Value::{Fin, NegInf, PosInf};
    let op = OMinus { max_eng: 5 };
    // successor class x weight class
    let table = [
        (NegInf, NegInf, PosInf),
        (Fin(2), NegInf, PosInf),
        (Fin(9), NegInf, PosInf),
        (PosInf, NegInf, PosInf),
        (NegInf, Fin(3), Fin(0)),
        (Fin(2), Fin(3), Fin(0)),
        (Fin(4), Fin(-1), Fin(5)),
        (PosInf, Fin(3), PosInf),
        (NegInf, PosInf, Fin(0)),
        (Fin(2), PosInf, Fin(0)),
        (Fin(9), PosInf, Fin(0)),
        (PosInf, PosInf, Fin(0)),
    ];
    let mut m = Manager::new(0);
    let mut failures = 0;
    for (f1, f2, want) in table {
        let (a, b) = (m.add_const(f1), m.add_const(f2));
        let r = m.add_apply_custom(&op, a, b).unwrap();
        if op.eval(f1, f2) != want || m.const_value(r) != Some(want) {
            failures += 1;
        }
    }
    // the overflow branch: finite difference above the bound
    if op.eval(Fin(5), Fin(-1)) != PosInf {
        failures += 1;
    }
    failures
}

fn property_suites(instances: &[(String, GameInput, u64)]) -> Verdict {
    let tt = truth_tables();
    let (mut overlapping, mut decreasing) = (0, 0);
    for (_, input, m) in instances {
        let (o, d) = chain_checks(input, *m);
        overlapping += o;
        decreasing += d;
    }
    let (o, d) = chain_checks(&common::wpf(5), 100);
    overlapping += o;
    decreasing += d;
    let om = ominus_classes();
    Verdict::new(
        tt + overlapping + decreasing + om == 0,
        format!(
            "truth-table failures={tt} (10000 pairs), overlapping antichains={overlapping}, \
             non-monotone steps={decreasing}, ominus table failures={om}"
        ),
    )
}

fn scaling() -> Verdict {
    let input = common::wpf(20);
    let runs = 12;
    let (mut add, mut bdd) = (Duration::ZERO, Duration::ZERO);
    for _ in 0..runs {
        add += run_add(&input, 100).wall_time;
        bdd += run_bdd(&input, 100).wall_time;
    }
    let (add, bdd) = (add / runs, bdd / runs);
    Verdict::new(add <= bdd, format!("20 floors, bound 100, mean of {runs}: add={} bdd={}", secs(add), secs(bdd)))
}

fn guarded(f: impl FnOnce() -> Verdict) -> Verdict {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(v) => v,
        Err(e) => {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Verdict::new(false, format!("panicked: {msg}"))
        }
    }
}

fn main() -> ExitCode {
    let instances = equivalence_instances();
    let start = Instant::now();
    let checks: Vec<(String, CrossCheck)> = instances
        .iter()
        .map(|(n, input, m)| (n.clone(), cross_check(input, *m, DEFAULT_EXPLOSION_LIMIT).expect("small instances")))
        .collect();
    let elapsed = start.elapsed();

    let criteria: Vec<Criterion> = vec![
        ("five-floor elevator, per-floor weights, bound 100", Box::new(five_floors)),
        ("state-space calibration", Box::new(state_counts)),
        ("realizability thresholds at 20 floors", Box::new(thresholds_at_twenty_floors)),
        ("two-weight reward sensitivity", Box::new(two_weight_sensitivity)),
        ("engine equivalence", Box::new(|| engine_equivalence(&checks, elapsed))),
        ("cycle iteration law", Box::new(cycle_law)),
        ("two-step chain matches the general chain", Box::new(|| lemma8(&checks))),
        ("property suites", Box::new(|| property_suites(&instances))),
        ("scaling order at 20 floors", Box::new(scaling)),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let v = guarded(f);
        if !v.pass {
            failed += 1;
        }
        println!(
            "criterion {} {} {name}: {} [{}]",
            i + 1,
            if v.pass { "PASS" } else { "FAIL" },
            v.detail,
            secs(start.elapsed())
        );
    }
    println!("acceptance: {} of 9 criteria passed", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
