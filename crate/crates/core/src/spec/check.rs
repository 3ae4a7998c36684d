use std::collections::{HashMap, HashSet};

use super::ast::*;
use super::{SpecError, SpecErrorKind};

/// Static type of an expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ty {
    Bool,
    Int,
    /// Value of an enumerated variable; carries the variable's label list.
    Enum(Vec<String>),
    /// A bare enumeration label.
    Label(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Warning {
    pub span: Span,
    pub message: String,
}

impl std::fmt::Display for Warning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: warning: {}", self.span, self.message)
    }
}

/// A specification whose definitions have been substituted everywhere and
/// whose expressions are type-correct.
#[derive(Clone, Debug)]
pub struct CheckedSpec {
    pub ast: SpecAst,
    pub warnings: Vec<Warning>,
}

#[derive(Clone, Copy)]
enum Scope {
    /// Initial constraints: current variables only.
    Initial,
    /// Environment transitions: `next` of environment variables only.
    Assumption,
    /// System transitions and weights: any `next`.
    Transition,
}

struct Checker<'a> {
    vars: HashMap<&'a str, &'a VarDecl>,
    labels: HashSet<&'a str>,
    defines: HashMap<&'a str, &'a Define>,
    expanded: HashMap<String, Expr>,
    warnings: Vec<Warning>,
}

impl<'a> Checker<'a> {
    fn new(ast: &'a SpecAst) -> Result<Self, SpecError> {
        let vars: HashMap<&str, &VarDecl> = ast.vars.iter().map(|v| (v.name.as_str(), v)).collect();
        let defines: HashMap<&str, &Define> = ast.defines.iter().map(|d| (d.name.as_str(), d)).collect();
        let mut labels = HashSet::new();
        for v in &ast.vars {
            if let Domain::Enum(ls) = &v.domain {
                for l in ls {
                    if vars.contains_key(l.as_str()) || defines.contains_key(l.as_str()) {
                        return Err(SpecError::new(
                            SpecErrorKind::Duplicate,
                            v.span,
                            format!("label `{l}` clashes with a variable or definition"),
                        ));
                    }
                    labels.insert(l.as_str());
                }
            }
        }
        Ok(Checker { vars, labels, defines, expanded: HashMap::new(), warnings: Vec::new() })
    }

    fn define(&mut self, name: &str, stack: &mut Vec<String>) -> Result<Expr, SpecError> {
        if let Some(e) = self.expanded.get(name) {
            return Ok(e.clone());
        }
        let d = self.defines[name];
        if stack.iter().any(|n| n == name) {
            stack.push(name.to_string());
            return Err(SpecError::new(
                SpecErrorKind::CyclicDefine,
                d.span,
                format!("cyclic definition {}", stack.join(" -> ")),
            ));
        }
        stack.push(name.to_string());
        let body = self.expand(&d.body, stack)?;
        stack.pop();
        self.expanded.insert(name.to_string(), body.clone());
        Ok(body)
    }

    fn expand(&mut self, e: &Expr, stack: &mut Vec<String>) -> Result<Expr, SpecError> {
        let kind = match &e.kind {
            ExprKind::Ident(n) if self.defines.contains_key(n.as_str()) => {
                let mut body = self.define(n, stack)?;
                body.span = e.span;
                return Ok(body);
            }
            ExprKind::Ident(n) if !self.vars.contains_key(n.as_str()) && !self.labels.contains(n.as_str()) => {
                return Err(SpecError::new(SpecErrorKind::Unknown, e.span, format!("unknown identifier `{n}`")));
            }
            ExprKind::Next(n) if !self.vars.contains_key(n.as_str()) => {
                let msg = if self.defines.contains_key(n.as_str()) {
                    format!("next() takes a variable, `{n}` is a definition")
                } else {
                    format!("unknown variable `{n}`")
                };
                return Err(SpecError::new(SpecErrorKind::Unknown, e.span, msg));
            }
            ExprKind::Not(a) => ExprKind::Not(Box::new(self.expand(a, stack)?)),
            ExprKind::Neg(a) => ExprKind::Neg(Box::new(self.expand(a, stack)?)),
            ExprKind::Abs(a) => ExprKind::Abs(Box::new(self.expand(a, stack)?)),
            ExprKind::Bin(op, a, b) => ExprKind::Bin(*op, Box::new(self.expand(a, stack)?), Box::new(self.expand(b, stack)?)),
            k => k.clone(),
        };
        Ok(Expr::new(kind, e.span))
    }

    fn ty(&mut self, e: &Expr, scope: Scope) -> Result<Ty, SpecError> {
        let mismatch = |msg: String| SpecError::new(SpecErrorKind::Type, e.span, msg);
        Ok(match &e.kind {
            ExprKind::Bool(_) => Ty::Bool,
            ExprKind::Int(_) => Ty::Int,
            ExprKind::Ident(n) => match self.vars.get(n.as_str()) {
                Some(v) => domain_ty(&v.domain),
                None => Ty::Label(n.clone()),
            },
            ExprKind::Next(n) => {
                let v = self.vars[n.as_str()];
                match scope {
                    Scope::Initial => {
                        return Err(SpecError::new(
                            SpecErrorKind::NextNotAllowed,
                            e.span,
                            "next() is only allowed inside G(...) and in weights".into(),
                        ))
                    }
                    Scope::Assumption if v.owner == Owner::Sys => {
                        return Err(SpecError::new(
                            SpecErrorKind::NextNotAllowed,
                            e.span,
                            format!("assumptions may not constrain next({n}) of a system variable"),
                        ))
                    }
                    _ => domain_ty(&v.domain),
                }
            }
            ExprKind::Not(a) => {
                self.expect(a, scope, Ty::Bool)?;
                Ty::Bool
            }
            ExprKind::Neg(a) | ExprKind::Abs(a) => {
                self.expect(a, scope, Ty::Int)?;
                Ty::Int
            }
            ExprKind::Bin(op, a, b) => {
                use BinOp::*;
                match op {
                    And | Or | Imp | Iff => {
                        self.expect(a, scope, Ty::Bool)?;
                        self.expect(b, scope, Ty::Bool)?;
                        Ty::Bool
                    }
                    Add | Sub => {
                        self.expect(a, scope, Ty::Int)?;
                        self.expect(b, scope, Ty::Int)?;
                        Ty::Int
                    }
                    Lt | Le | Gt | Ge => {
                        self.expect(a, scope, Ty::Int)?;
                        self.expect(b, scope, Ty::Int)?;
                        self.literal_range_warning(a, b);
                        Ty::Bool
                    }
                    Eq | Ne => {
                        let (ta, tb) = (self.ty(a, scope)?, self.ty(b, scope)?);
                        let ok = match (&ta, &tb) {
                            (Ty::Bool, Ty::Bool) | (Ty::Int, Ty::Int) => true,
                            (Ty::Enum(x), Ty::Enum(y)) => x == y,
                            (Ty::Enum(d), Ty::Label(l)) | (Ty::Label(l), Ty::Enum(d)) => d.contains(l),
                            (Ty::Label(_), Ty::Label(_)) => true,
                            _ => false,
                        };
                        if !ok {
                            return Err(mismatch(format!("cannot compare {} with {}", show(&ta), show(&tb))));
                        }
                        self.literal_range_warning(a, b);
                        Ty::Bool
                    }
                }
            }
        })
    }

    fn expect(&mut self, e: &Expr, scope: Scope, want: Ty) -> Result<(), SpecError> {
        let got = self.ty(e, scope)?;
        if got != want {
            return Err(SpecError::new(
                SpecErrorKind::Type,
                e.span,
                format!("expected {}, found {}", show(&want), show(&got)),
            ));
        }
        Ok(())
    }

    fn literal_range_warning(&mut self, a: &Expr, b: &Expr) {
        for (x, y) in [(a, b), (b, a)] {
            let name = match &x.kind {
                ExprKind::Ident(n) | ExprKind::Next(n) => n,
                _ => continue,
            };
            if let (Some(v), ExprKind::Int(c)) = (self.vars.get(name.as_str()), &y.kind) {
                if let Domain::Range(lo, hi) = v.domain {
                    if *c < lo || *c > hi {
                        self.warnings.push(Warning {
                            span: y.span,
                            message: format!("{c} lies outside {name}'s range {lo}..{hi}; comparison is constant"),
                        });
                    }
                }
            }
        }
    }

    fn formula(&mut self, f: &Formula, assumption: bool) -> Result<Formula, SpecError> {
        let body = self.expand(&f.body, &mut Vec::new())?;
        let scope = match (f.globally, assumption) {
            (false, _) => Scope::Initial,
            (true, true) => Scope::Assumption,
            (true, false) => Scope::Transition,
        };
        self.expect(&body, scope, Ty::Bool)?;
        Ok(Formula { globally: f.globally, body, span: f.span })
    }
}

fn domain_ty(d: &Domain) -> Ty {
    match d {
        Domain::Bool => Ty::Bool,
        Domain::Range(..) => Ty::Int,
        Domain::Enum(labels) => Ty::Enum(labels.clone()),
    }
}

fn show(t: &Ty) -> String {
    match t {
        Ty::Bool => "boolean".into(),
        Ty::Int => "integer".into(),
        Ty::Enum(ls) => format!("{{{}}}", ls.join(", ")),
        Ty::Label(l) => format!("label {l}"),
    }
}

/// Substitute definitions and type-check every constraint.
pub fn expand_and_check(ast: &SpecAst) -> Result<CheckedSpec, SpecError> {
    let mut ck = Checker::new(ast)?;
    let mut defines = Vec::new();
    for d in &ast.defines {
        let body = ck.define(&d.name, &mut Vec::new())?;
        ck.ty(&body, Scope::Transition)?;
        defines.push(Define { name: d.name.clone(), body, span: d.span });
    }
    let assumptions = ast.assumptions.iter().map(|f| ck.formula(f, true)).collect::<Result<_, _>>()?;
    let guarantees = ast.guarantees.iter().map(|f| ck.formula(f, false)).collect::<Result<_, _>>()?;
    Ok(CheckedSpec {
        ast: SpecAst { vars: ast.vars.clone(), defines, assumptions, guarantees },
        warnings: ck.warnings,
    })
}

/// Expand and type-check weight formulas against a checked specification.
pub fn check_weights(spec: &CheckedSpec, entries: &[WeightEntry]) -> Result<(Vec<WeightEntry>, Vec<Warning>), SpecError> {
    let mut ck = Checker::new(&spec.ast)?;
    let mut out = Vec::new();
    for w in entries {
        let formula = ck.expand(&w.formula, &mut Vec::new())?;
        ck.expect(&formula, Scope::Transition, Ty::Bool)?;
        out.push(WeightEntry { value: w.value, formula, span: w.span });
    }
    Ok((out, ck.warnings))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spec::parse_spec;

    fn check(src: &str) -> Result<CheckedSpec, SpecError> {
        expand_and_check(&parse_spec(src).unwrap())
    }

    #[test]
    fn defines_are_substituted() {
        let c = check(
            "VARENV a : 0..3; b : 0..3;\nDEFINE SAME := a = b; BOTH := SAME & a = 1;\nGUARANTEE G(BOTH);",
        )
        .unwrap();
        let text = c.ast.guarantees[0].body.to_string();
        assert_eq!(text, "a = b & a = 1");
    }

    #[test]
    fn define_cycles_are_rejected() {
        let e = check("VAR x : boolean;\nDEFINE a := b; b := a;\nGUARANTEE a;").unwrap_err();
        assert_eq!(e.kind, SpecErrorKind::CyclicDefine);
    }

    #[test]
    fn assumptions_cannot_mention_next_system_values() {
        let e = check("VARENV x : boolean;\nVAR m : {UP, DOWN};\nASSUMPTION G(next(m) = UP -> x);").unwrap_err();
        assert_eq!(e.kind, SpecErrorKind::NextNotAllowed);
        assert!(check("VARENV x : boolean;\nVAR m : {UP, DOWN};\nASSUMPTION G(m = UP -> next(x));").is_ok());
    }

    #[test]
    fn next_needs_g() {
        let e = check("VARENV x : boolean;\nASSUMPTION next(x);").unwrap_err();
        assert_eq!(e.kind, SpecErrorKind::NextNotAllowed);
    }

    #[test]
    fn type_errors() {
        assert_eq!(check("VAR x : boolean; y : 0..3;\nGUARANTEE x = y;").unwrap_err().kind, SpecErrorKind::Type);
        assert_eq!(check("VAR m : {A, B};\nGUARANTEE m = C;").unwrap_err().kind, SpecErrorKind::Unknown);
        assert_eq!(check("VAR m : {A, B}; k : {B, C};\nGUARANTEE m = C;").unwrap_err().kind, SpecErrorKind::Type);
        assert_eq!(check("VAR y : 0..3;\nGUARANTEE y + 1;").unwrap_err().kind, SpecErrorKind::Type);
    }

    #[test]
    fn out_of_range_literals_warn() {
        let c = check("VAR y : 0..3;\nGUARANTEE y != 7;").unwrap();
        assert_eq!(c.warnings.len(), 1);
    }
}
