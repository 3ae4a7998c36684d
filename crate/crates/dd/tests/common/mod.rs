#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::Rng;
use symdd::{Add, ArithOp, Bdd, BoolOp, Manager, Value, VarId};

/// Boolean expression with an explicit truth table semantics.
#[derive(Clone, Debug)]
pub enum BExpr {
    Var(u32),
    Const(bool),
    Not(Box<BExpr>),
    Bin(BoolOp, Box<BExpr>, Box<BExpr>),
}

pub const BOOL_OPS: [BoolOp; 4] = [BoolOp::And, BoolOp::Or, BoolOp::Xor, BoolOp::Imp];
pub const ARITH_OPS: [ArithOp; 4] = [ArithOp::Plus, ArithOp::Minus, ArithOp::Max, ArithOp::Min];

pub fn random_bexpr(rng: &mut StdRng, nvars: u32, depth: u32) -> BExpr {
    if depth == 0 || rng.gen_ratio(1, 4) {
        return if nvars > 0 && rng.gen_ratio(9, 10) {
            BExpr::Var(rng.gen_range(0..nvars))
        } else {
            BExpr::Const(rng.gen())
        };
    }
    if rng.gen_ratio(1, 5) {
        return BExpr::Not(Box::new(random_bexpr(rng, nvars, depth - 1)));
    }
    let op = BOOL_OPS[rng.gen_range(0..4)];
    BExpr::Bin(
        op,
        Box::new(random_bexpr(rng, nvars, depth - 1)),
        Box::new(random_bexpr(rng, nvars, depth - 1)),
    )
}

pub fn bool_op(op: BoolOp, a: bool, b: bool) -> bool {
    match op {
        BoolOp::And => a && b,
        BoolOp::Or => a || b,
        BoolOp::Xor => a != b,
        BoolOp::Imp => !a || b,
    }
}

/// Bit `i` of assignment index `a` is the value of variable `i`.
pub fn bit(a: usize, i: u32) -> bool {
    (a >> i) & 1 == 1
}

pub fn truth_table(e: &BExpr, nvars: u32) -> Vec<bool> {
    (0..1usize << nvars).map(|a| eval_bexpr(e, a)).collect()
}

pub fn eval_bexpr(e: &BExpr, a: usize) -> bool {
    match e {
        BExpr::Var(i) => bit(a, *i),
        BExpr::Const(b) => *b,
        BExpr::Not(x) => !eval_bexpr(x, a),
        BExpr::Bin(op, x, y) => bool_op(*op, eval_bexpr(x, a), eval_bexpr(y, a)),
    }
}

pub fn build_bexpr(m: &mut Manager, e: &BExpr) -> Bdd {
    match e {
        BExpr::Var(i) => m.var(VarId(*i)),
        BExpr::Const(b) => m.bdd_const(*b),
        BExpr::Not(x) => {
            let f = build_bexpr(m, x);
            m.not(f)
        }
        BExpr::Bin(op, x, y) => {
            let f = build_bexpr(m, x);
            let g = build_bexpr(m, y);
            m.apply_bool(*op, f, g)
        }
    }
}

/// Shannon expansion of a table, top variable first.
pub fn bdd_from_table(m: &mut Manager, table: &[bool], nvars: u32) -> Bdd {
    let vals: Vec<Value> = table.iter().map(|&b| if b { Value::ONE } else { Value::ZERO }).collect();
    let a = add_from_table(m, &vals, nvars);
    m.add_to_bdd(a, symdd::TerminalPred::Eq(Value::ONE))
}

pub fn add_from_table(m: &mut Manager, table: &[Value], nvars: u32) -> Add {
    fn rec(m: &mut Manager, table: &[Value], var: u32, base: usize, nvars: u32) -> Add {
        if var == nvars {
            return m.add_const(table[base]);
        }
        let lo = rec(m, table, var + 1, base, nvars);
        let hi = rec(m, table, var + 1, base | (1 << var), nvars);
        let x = m.var(VarId(var));
        m.ite(x, hi, lo)
    }
    rec(m, table, 0, 0, nvars)
}

pub fn assignment(a: usize, nvars: u32) -> Vec<bool> {
    (0..nvars).map(|i| bit(a, i)).collect()
}

pub fn random_value(rng: &mut StdRng) -> Value {
    match rng.gen_range(0..12) {
        0 => Value::PosInf,
        1 => Value::NegInf,
        _ => Value::Fin(rng.gen_range(-4..=4)),
    }
}

pub fn random_finite_table(rng: &mut StdRng, nvars: u32) -> Vec<Value> {
    let palette: Vec<Value> = (0..rng.gen_range(1..=4)).map(|_| Value::Fin(rng.gen_range(-5..=5))).collect();
    (0..1usize << nvars).map(|_| palette[rng.gen_range(0..palette.len())]).collect()
}

pub fn random_table(rng: &mut StdRng, nvars: u32) -> Vec<Value> {
    let palette: Vec<Value> = (0..rng.gen_range(1..=4)).map(|_| random_value(rng)).collect();
    (0..1usize << nvars).map(|_| palette[rng.gen_range(0..palette.len())]).collect()
}

pub fn arith(op: ArithOp, a: Value, b: Value) -> Option<Value> {
    match op {
        ArithOp::Plus => a.checked_add(b).ok(),
        ArithOp::Minus => a.checked_sub(b).ok(),
        ArithOp::Max => Some(a.max(b)),
        ArithOp::Min => Some(a.min(b)),
    }
}
