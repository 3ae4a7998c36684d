use std::fmt;

/// Position in the source text, 1-based.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Span {
    pub line: u32,
    pub col: u32,
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Owner {
    Env,
    Sys,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Domain {
    Bool,
    Range(i64, i64),
    Enum(Vec<String>),
}

impl Domain {
    pub fn size(&self) -> u64 {
        match self {
            Domain::Bool => 2,
            Domain::Range(lo, hi) => (hi - lo + 1) as u64,
            Domain::Enum(labels) => labels.len() as u64,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VarDecl {
    pub name: String,
    pub owner: Owner,
    pub domain: Domain,
    pub span: Span,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BinOp {
    And,
    Or,
    Imp,
    Iff,
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
    Add,
    Sub,
}

impl BinOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BinOp::And => "&",
            BinOp::Or => "|",
            BinOp::Imp => "->",
            BinOp::Iff => "<->",
            BinOp::Eq => "=",
            BinOp::Ne => "!=",
            BinOp::Lt => "<",
            BinOp::Le => "<=",
            BinOp::Gt => ">",
            BinOp::Ge => ">=",
            BinOp::Add => "+",
            BinOp::Sub => "-",
        }
    }

    /// Binding strength; larger binds tighter.
    pub fn precedence(self) -> u8 {
        match self {
            BinOp::Imp => 1,
            BinOp::Iff => 2,
            BinOp::Or => 3,
            BinOp::And => 4,
            BinOp::Eq | BinOp::Ne | BinOp::Lt | BinOp::Le | BinOp::Gt | BinOp::Ge => 5,
            BinOp::Add | BinOp::Sub => 6,
        }
    }

    pub fn is_comparison(self) -> bool {
        self.precedence() == 5
    }
}

#[derive(Clone, Debug)]
pub enum ExprKind {
    Bool(bool),
    Int(i64),
    /// Variable, definition or enumeration label; resolved by the checker.
    Ident(String),
    Next(String),
    Not(Box<Expr>),
    Neg(Box<Expr>),
    Abs(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
}

/// Expression node. Equality compares structure only and ignores spans.
#[derive(Clone, Debug)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        use ExprKind::*;
        match (&self.kind, &other.kind) {
            (Bool(a), Bool(b)) => a == b,
            (Int(a), Int(b)) => a == b,
            (Ident(a), Ident(b)) | (Next(a), Next(b)) => a == b,
            (Not(a), Not(b)) | (Neg(a), Neg(b)) | (Abs(a), Abs(b)) => a == b,
            (Bin(o1, a1, b1), Bin(o2, a2, b2)) => o1 == o2 && a1 == a2 && b1 == b2,
            _ => false,
        }
    }
}

impl Expr {
    pub fn new(kind: ExprKind, span: Span) -> Self {
        Expr { kind, span }
    }

    pub fn bin(op: BinOp, a: Expr, b: Expr) -> Self {
        let span = a.span;
        Expr::new(ExprKind::Bin(op, Box::new(a), Box::new(b)), span)
    }

    pub fn negate(e: Expr) -> Self {
        let span = e.span;
        Expr::new(ExprKind::Not(Box::new(e)), span)
    }

    pub fn ident(name: &str) -> Self {
        Expr::new(ExprKind::Ident(name.to_string()), Span::default())
    }

    pub fn mentions_next(&self) -> bool {
        let mut found = false;
        self.visit(&mut |e| found |= matches!(e.kind, ExprKind::Next(_)));
        found
    }

    /// Pre-order traversal.
    pub fn visit(&self, f: &mut impl FnMut(&Expr)) {
        f(self);
        match &self.kind {
            ExprKind::Not(a) | ExprKind::Neg(a) | ExprKind::Abs(a) => a.visit(f),
            ExprKind::Bin(_, a, b) => {
                a.visit(f);
                b.visit(f);
            }
            _ => {}
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, outer: u8) -> fmt::Result {
        match &self.kind {
            ExprKind::Bool(true) => f.write_str("TRUE"),
            ExprKind::Bool(false) => f.write_str("FALSE"),
            ExprKind::Int(v) if *v < 0 => write!(f, "({v})"),
            ExprKind::Int(v) => write!(f, "{v}"),
            ExprKind::Ident(n) => f.write_str(n),
            ExprKind::Next(n) => write!(f, "next({n})"),
            ExprKind::Not(a) => {
                f.write_str("!")?;
                a.fmt_prec(f, 7)
            }
            ExprKind::Neg(a) => {
                f.write_str("-")?;
                a.fmt_prec(f, 7)
            }
            ExprKind::Abs(a) => {
                f.write_str("abs(")?;
                a.fmt_prec(f, 0)?;
                f.write_str(")")
            }
            ExprKind::Bin(op, a, b) => {
                let p = op.precedence();
                // `->` is right associative, everything else left associative
                // except comparisons, which do not chain.
                let (lp, rp) = match op {
                    BinOp::Imp => (p + 1, p),
                    _ if op.is_comparison() => (p + 1, p + 1),
                    _ => (p, p + 1),
                };
                if p < outer {
                    f.write_str("(")?;
                }
                a.fmt_prec(f, lp)?;
                write!(f, " {} ", op.symbol())?;
                b.fmt_prec(f, rp)?;
                if p < outer {
                    f.write_str(")")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Formula {
    /// Wrapped in `G(...)`: a transition constraint rather than an initial one.
    pub globally: bool,
    pub body: Expr,
    pub span: Span,
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.globally {
            write!(f, "G({})", self.body)
        } else {
            write!(f, "{}", self.body)
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Define {
    pub name: String,
    pub body: Expr,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct SpecAst {
    /// Declaration order; also the Boolean encoding order.
    pub vars: Vec<VarDecl>,
    pub defines: Vec<Define>,
    pub assumptions: Vec<Formula>,
    pub guarantees: Vec<Formula>,
}

impl SpecAst {
    pub fn env_vars(&self) -> impl Iterator<Item = &VarDecl> {
        self.vars.iter().filter(|v| v.owner == Owner::Env)
    }

    pub fn sys_vars(&self) -> impl Iterator<Item = &VarDecl> {
        self.vars.iter().filter(|v| v.owner == Owner::Sys)
    }

    pub fn var(&self, name: &str) -> Option<&VarDecl> {
        self.vars.iter().find(|v| v.name == name)
    }
}

impl fmt::Display for SpecAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut owner = None;
        for v in &self.vars {
            if owner != Some(v.owner) {
                owner = Some(v.owner);
                writeln!(f, "{}", if v.owner == Owner::Env { "VARENV" } else { "VAR" })?;
            }
            let ty = match &v.domain {
                Domain::Bool => "boolean".to_string(),
                Domain::Range(lo, hi) => format!("{lo}..{hi}"),
                Domain::Enum(labels) => format!("{{{}}}", labels.join(", ")),
            };
            writeln!(f, "  {} : {};", v.name, ty)?;
        }
        if !self.defines.is_empty() {
            writeln!(f, "DEFINE")?;
            for d in &self.defines {
                writeln!(f, "  {} := {};", d.name, d.body)?;
            }
        }
        if !self.assumptions.is_empty() {
            writeln!(f, "ASSUMPTION")?;
            for a in &self.assumptions {
                writeln!(f, "  {a};")?;
            }
        }
        if !self.guarantees.is_empty() {
            writeln!(f, "GUARANTEE")?;
            for g in &self.guarantees {
                writeln!(f, "  {g};")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct WeightEntry {
    pub value: i64,
    pub formula: Expr,
    pub span: Span,
}

impl fmt::Display for WeightEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WEIGHT {} {};", self.value, self.formula)
    }
}

/// Renders a weight list in the weights-file syntax.
pub fn weights_to_string(entries: &[WeightEntry]) -> String {
    entries.iter().map(|e| format!("{e}\n")).collect()
}
