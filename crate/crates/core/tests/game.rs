mod common;

use energy_games::elevator::elevator_spec;
use energy_games::encoding::Encoding;
use energy_games::game::{build_graph, check_realizable, normalize_weights, partition_to_add, weight_bucket};
use energy_games::pipeline::GameInput;
use energy_games::spec::{expand_and_check, parse_spec, CVal};
use energy_games::spec::Owner;
use symdd::{Value, VarId};

fn assert_partition(inst: &mut energy_games::pipeline::Instance) {
    let m = &mut inst.m;
    let all = inst.graph.valid_transitions(m);
    let sets: Vec<_> = inst.partition.entries.iter().map(|e| e.1).collect();
    for (i, &a) in sets.iter().enumerate() {
        for &b in &sets[i + 1..] {
            let both = m.and(a, b);
            assert!(m.is_false(both));
        }
    }
    assert_eq!(m.or_all(sets), all);
    let vals = inst.partition.values();
    assert!(vals.windows(2).all(|w| w[0] < w[1]), "{vals:?}");
}

#[test]
fn state_counts_match_domain_products() {
    for (floors, count) in [(2, 48), (5, 750), (10, 6000)] {
        let mut inst = common::wpf(floors).instantiate();
        assert_eq!(inst.graph.state_count(&inst.m), count);
        assert_eq!(inst.graph.encoding.state_count(&mut inst.m), count);
    }
}

#[test]
fn fifty_floors_by_model_counting() {
    let ast = expand_and_check(&parse_spec(&elevator_spec(50)).unwrap()).unwrap().ast;
    let enc = Encoding::new(&ast);
    assert_eq!(enc.state_bits, 1 + 3 * 6 + 2);
    let mut m = enc.new_manager();
    let g = build_graph(&mut m, &ast, enc);
    assert_eq!(g.state_count(&m), 750_000);
}

#[test]
fn elevator_has_no_initial_constraints() {
    let mut inst = common::wpf(5).instantiate();
    let valid_env = inst.graph.encoding.validity_of(&mut inst.m, Some(Owner::Env), false);
    assert_eq!(inst.graph.theta_e, valid_env);
    assert_eq!(inst.graph.theta_s, inst.graph.valid);
}

#[test]
fn guarantees_remove_moves_past_the_ends() {
    let inst = common::wpf(5).instantiate();
    let enc = inst.graph.encoding.clone();
    let cur = enc.encode(&[CVal::Bool(false), CVal::Int(0), CVal::Int(0), CVal::Int(4), CVal::Label("UP".into())]);
    let next = enc.encode(&[CVal::Bool(false), CVal::Int(0), CVal::Int(0), CVal::Int(4), CVal::Label("STOP".into())]);
    let asg = enc.assignment(cur, next);
    assert!(inst.m.eval(inst.graph.rho_e, &asg));
    assert!(!inst.m.eval(inst.graph.rho_s, &asg));
    let ok = enc.encode(&[CVal::Bool(false), CVal::Int(0), CVal::Int(0), CVal::Int(3), CVal::Label("UP".into())]);
    let asg = enc.assignment(ok, next);
    assert!(inst.m.eval(inst.graph.rho_s, &asg));
}

#[test]
fn support_discipline() {
    let inst = common::wpf(3).instantiate();
    let g = &inst.graph;
    for v in inst.m.support(g.theta_e) {
        assert!(g.env_vars.contains(&v));
    }
    for v in inst.m.support(g.rho_e) {
        assert!(!g.sys_next.contains(&v));
    }
}

#[test]
fn empty_spec_has_validity_only() {
    let mut inst = common::game("VARENV a : 0..2;\nVAR b : {X, Y, Z};\n", "");
    let t = inst.graph.valid_transitions(&mut inst.m);
    let m = &mut inst.m;
    let valid_env_next = {
        let v = m.exists(inst.graph.valid, &inst.graph.sys_vars);
        inst.graph.prime(m, v)
    };
    let expect_e = m.and(inst.graph.valid, valid_env_next);
    assert_eq!(inst.graph.rho_e, expect_e);
    assert_eq!(inst.graph.rho_s, t);
    assert_eq!(inst.partition.entries, vec![(0, t)]);
}

#[test]
fn per_floor_partition_at_five_floors() {
    let mut inst = common::wpf(5).instantiate();
    assert_eq!(inst.partition.values(), vec![-1, 0, 1, 2, 3, 4]);
    assert_partition(&mut inst);
    let enc = inst.graph.encoding.clone();
    // pending request 0 -> 4, cabin arriving: both the distance entry and the
    // penalty entry apply
    let cur = enc.encode(&[CVal::Bool(true), CVal::Int(0), CVal::Int(4), CVal::Int(3), CVal::Label("UP".into())]);
    let next = enc.encode(&[CVal::Bool(false), CVal::Int(0), CVal::Int(4), CVal::Int(4), CVal::Label("STOP".into())]);
    let asg = enc.assignment(cur, next);
    assert_eq!(inst.m.eval_add(inst.weights, &asg), Value::Fin(3));
}

#[test]
fn two_weight_partition() {
    let mut inst = common::wtwo(5, 1).instantiate();
    assert_eq!(inst.partition.values(), vec![-1, 0, 1]);
    assert_partition(&mut inst);
    let all = inst.graph.valid_transitions(&mut inst.m);
    let zero = inst.m.add_const(Value::ZERO);
    let restricted = inst.m.ite(all, inst.weights, zero);
    assert_eq!(
        inst.m.terminal_values(restricted).into_iter().collect::<Vec<_>>(),
        vec![Value::Fin(-1), Value::ZERO, Value::Fin(1)]
    );
}

#[test]
fn partition_survives_the_round_trip_through_the_add() {
    for input in [common::wpf(3), common::wtwo(4, 3), common::wpf(5)] {
        let mut inst = input.instantiate();
        let all = inst.graph.valid_transitions(&mut inst.m);
        for (v, t) in inst.partition.entries.clone() {
            assert_eq!(weight_bucket(&mut inst.m, inst.weights, v, all), t);
        }
    }
}

#[test]
fn add_agrees_with_partition_membership_pointwise() {
    let inst = common::wpf(2).instantiate();
    let vars: Vec<VarId> = inst.graph.encoding.transition_vars();
    let mut count = 0;
    for (v, t) in &inst.partition.entries {
        for bits in inst.m.sat_iter(*t, &vars).unwrap() {
            assert_eq!(inst.m.eval_add(inst.weights, &bits), Value::Fin(*v));
            count += 1;
        }
    }
    assert_eq!(count, 48 * 48);
}

#[test]
fn normalization_ignores_entry_order() {
    let input = common::wpf(4);
    let mut reversed = input.clone();
    reversed.weights.reverse();
    let mut a = input.instantiate();
    let b = reversed.instantiate();
    let imported: Vec<_> = b.partition.entries.iter().map(|&(v, t)| (v, a.m.import(&b.m, t))).collect();
    assert_eq!(a.partition.entries, imported);
    let w = a.m.import(&b.m, b.weights);
    assert_eq!(w, a.weights);
}

#[test]
fn empty_weight_list_gives_one_bucket() {
    let input = GameInput::parse(&elevator_spec(3), "").unwrap();
    let mut inst = input.instantiate();
    let all = inst.graph.valid_transitions(&mut inst.m);
    assert_eq!(inst.partition.entries, vec![(0, all)]);
    let w = partition_to_add(&mut inst.m, &inst.partition);
    assert_eq!(inst.m.const_value(w), Some(Value::ZERO));
    let p = normalize_weights(&mut inst.m, &inst.graph, &[]);
    assert_eq!(p, inst.partition);
}

#[test]
fn realizability_check() {
    let mut inst = common::game("VARENV a : boolean;\nVAR b : 0..2;\nASSUMPTION\n  a & !a;\n", "");
    let none = inst.m.bdd_false();
    assert!(check_realizable(&mut inst.m, &inst.graph, none));

    let mut inst = common::game("VARENV a : 0..2;\nVAR b : 0..2;\nGUARANTEE\n  b > a;\n", "");
    let all = inst.graph.valid;
    assert!(!check_realizable(&mut inst.m, &inst.graph, all), "a = 2 has no initial answer");

    let mut inst = common::game("VARENV a : 0..2;\nVAR b : 0..2;\nGUARANTEE\n  b >= a;\n", "");
    let all = inst.graph.valid;
    assert!(check_realizable(&mut inst.m, &inst.graph, all));
    let enc = inst.graph.encoding.clone();
    let two_two = enc.encode(&[CVal::Int(2), CVal::Int(2)]);
    let bits: Vec<bool> = (0..enc.state_bits).map(|b| (two_two >> b) & 1 == 1).collect();
    let vars: Vec<VarId> = (0..enc.state_bits).map(|b| Encoding::bit_var(b, false)).collect();
    let only = inst.m.minterm(&vars, &bits);
    let without = inst.m.diff(all, only);
    assert!(!check_realizable(&mut inst.m, &inst.graph, without));
}
