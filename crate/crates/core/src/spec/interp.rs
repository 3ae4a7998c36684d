use std::fmt;

use super::ast::{BinOp, Domain, Expr, ExprKind, SpecAst};

/// Concrete value of a variable or expression.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CVal {
    Bool(bool),
    Int(i64),
    Label(String),
}

impl fmt::Display for CVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CVal::Bool(b) => write!(f, "{}", if *b { "TRUE" } else { "FALSE" }),
            CVal::Int(v) => write!(f, "{v}"),
            CVal::Label(l) => f.write_str(l),
        }
    }
}

impl CVal {
    pub fn as_bool(&self) -> bool {
        match self {
            CVal::Bool(b) => *b,
            other => panic!("expected a boolean, got {other}"),
        }
    }

    fn as_int(&self) -> i64 {
        match self {
            CVal::Int(v) => *v,
            other => panic!("expected an integer, got {other}"),
        }
    }
}

/// Values of every declared variable, in declaration order.
pub type Valuation = [CVal];

/// Every value of a domain, in encoding order.
pub fn domain_values(d: &Domain) -> Vec<CVal> {
    match d {
        Domain::Bool => vec![CVal::Bool(false), CVal::Bool(true)],
        Domain::Range(lo, hi) => (*lo..=*hi).map(CVal::Int).collect(),
        Domain::Enum(ls) => ls.iter().cloned().map(CVal::Label).collect(),
    }
}

/// Direct evaluator for checked (definition-free) expressions, used as a
/// reference for the symbolic compiler.
pub struct Interpreter<'a> {
    ast: &'a SpecAst,
}

impl<'a> Interpreter<'a> {
    pub fn new(ast: &'a SpecAst) -> Self {
        Interpreter { ast }
    }

    fn index(&self, name: &str) -> Option<usize> {
        self.ast.vars.iter().position(|v| v.name == name)
    }

    /// `next` is only consulted when the expression mentions `next(..)`.
    pub fn eval(&self, e: &Expr, cur: &Valuation, next: Option<&Valuation>) -> CVal {
        match &e.kind {
            ExprKind::Bool(b) => CVal::Bool(*b),
            ExprKind::Int(v) => CVal::Int(*v),
            ExprKind::Ident(n) => match self.index(n) {
                Some(i) => cur[i].clone(),
                None => CVal::Label(n.clone()),
            },
            ExprKind::Next(n) => {
                let i = self.index(n).expect("checked expression");
                next.expect("expression mentions next() but no successor was given")[i].clone()
            }
            ExprKind::Not(a) => CVal::Bool(!self.eval(a, cur, next).as_bool()),
            ExprKind::Neg(a) => CVal::Int(-self.eval(a, cur, next).as_int()),
            ExprKind::Abs(a) => CVal::Int(self.eval(a, cur, next).as_int().abs()),
            ExprKind::Bin(op, a, b) => {
                let x = self.eval(a, cur, next);
                let y = self.eval(b, cur, next);
                use BinOp::*;
                match op {
                    And => CVal::Bool(x.as_bool() && y.as_bool()),
                    Or => CVal::Bool(x.as_bool() || y.as_bool()),
                    Imp => CVal::Bool(!x.as_bool() || y.as_bool()),
                    Iff => CVal::Bool(x.as_bool() == y.as_bool()),
                    Eq => CVal::Bool(x == y),
                    Ne => CVal::Bool(x != y),
                    Lt => CVal::Bool(x.as_int() < y.as_int()),
                    Le => CVal::Bool(x.as_int() <= y.as_int()),
                    Gt => CVal::Bool(x.as_int() > y.as_int()),
                    Ge => CVal::Bool(x.as_int() >= y.as_int()),
                    Add => CVal::Int(x.as_int() + y.as_int()),
                    Sub => CVal::Int(x.as_int() - y.as_int()),
                }
            }
        }
    }

    pub fn holds(&self, e: &Expr, cur: &Valuation, next: Option<&Valuation>) -> bool {
        self.eval(e, cur, next).as_bool()
    }
}
