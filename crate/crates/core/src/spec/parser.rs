use std::collections::HashSet;

use super::ast::*;
use super::lexer::{tokenize, Tok};
use super::{SpecError, SpecErrorKind};

struct Parser {
    toks: Vec<(Tok, Span)>,
    pos: usize,
}

impl Parser {
    fn new(src: &str) -> Result<Self, SpecError> {
        Ok(Parser { toks: tokenize(src)?, pos: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn span(&self) -> Span {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, Span) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == t {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: Tok) -> Result<Span, SpecError> {
        if self.peek() == &t {
            Ok(self.bump().1)
        } else {
            Err(self.unexpected(&t.describe()))
        }
    }

    fn unexpected(&self, wanted: &str) -> SpecError {
        SpecError::syntax(self.span(), format!("expected {wanted}, found {}", self.peek().describe()))
    }

    fn ident(&mut self) -> Result<(String, Span), SpecError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                let sp = self.bump().1;
                Ok((s, sp))
            }
            _ => Err(self.unexpected("identifier")),
        }
    }

    fn signed_int(&mut self) -> Result<i64, SpecError> {
        let neg = self.eat(&Tok::Minus);
        match self.peek().clone() {
            Tok::Int(v) => {
                self.bump();
                Ok(if neg { -v } else { v })
            }
            _ => Err(self.unexpected("integer")),
        }
    }

    fn at_section_start(&self) -> bool {
        matches!(
            self.peek(),
            Tok::VarEnv | Tok::Var | Tok::Define | Tok::Assumption | Tok::Guarantee | Tok::Eof
        )
    }

    fn spec(&mut self) -> Result<SpecAst, SpecError> {
        let mut ast = SpecAst::default();
        let mut names = HashSet::new();
        if self.peek() == &Tok::Eof {
            return Err(self.unexpected("a section keyword"));
        }
        while self.peek() != &Tok::Eof {
            match self.bump() {
                (Tok::VarEnv, _) => self.decls(Owner::Env, &mut ast, &mut names)?,
                (Tok::Var, _) => self.decls(Owner::Sys, &mut ast, &mut names)?,
                (Tok::Define, _) => {
                    while let Tok::Ident(_) = self.peek() {
                        let (name, span) = self.ident()?;
                        if !names.insert(name.clone()) {
                            return Err(SpecError::new(SpecErrorKind::Duplicate, span, format!("`{name}` is declared twice")));
                        }
                        self.expect(Tok::Assign)?;
                        let body = self.expr()?;
                        self.expect(Tok::Semi)?;
                        ast.defines.push(Define { name, body, span });
                    }
                }
                (Tok::Assumption, _) => {
                    while !self.at_section_start() {
                        let f = self.formula()?;
                        ast.assumptions.push(f);
                    }
                }
                (Tok::Guarantee, _) => {
                    while !self.at_section_start() {
                        let f = self.formula()?;
                        ast.guarantees.push(f);
                    }
                }
                (t, span) => {
                    return Err(SpecError::syntax(span, format!("expected a section keyword, found {}", t.describe())));
                }
            }
        }
        Ok(ast)
    }

    fn decls(&mut self, owner: Owner, ast: &mut SpecAst, names: &mut HashSet<String>) -> Result<(), SpecError> {
        while let Tok::Ident(_) = self.peek() {
            let (name, span) = self.ident()?;
            if !names.insert(name.clone()) {
                return Err(SpecError::new(SpecErrorKind::Duplicate, span, format!("`{name}` is declared twice")));
            }
            self.expect(Tok::Colon)?;
            let domain = match self.peek() {
                Tok::Boolean => {
                    self.bump();
                    Domain::Bool
                }
                Tok::LBrace => {
                    self.bump();
                    let mut labels: Vec<String> = Vec::new();
                    loop {
                        let (l, sp) = self.ident()?;
                        if labels.contains(&l) {
                            return Err(SpecError::new(SpecErrorKind::Duplicate, sp, format!("label `{l}` repeated")));
                        }
                        labels.push(l);
                        if !self.eat(&Tok::Comma) {
                            break;
                        }
                    }
                    self.expect(Tok::RBrace)?;
                    Domain::Enum(labels)
                }
                _ => {
                    let sp = self.span();
                    let lo = self.signed_int()?;
                    self.expect(Tok::DotDot)?;
                    let hi = self.signed_int()?;
                    if lo > hi {
                        return Err(SpecError::syntax(sp, format!("empty range {lo}..{hi}")));
                    }
                    Domain::Range(lo, hi)
                }
            };
            self.expect(Tok::Semi)?;
            ast.vars.push(VarDecl { name, owner, domain, span });
        }
        Ok(())
    }

    fn formula(&mut self) -> Result<Formula, SpecError> {
        let span = self.span();
        let f = if self.peek() == &Tok::G {
            self.bump();
            self.expect(Tok::LParen)?;
            let body = self.expr()?;
            self.expect(Tok::RParen)?;
            Formula { globally: true, body, span }
        } else {
            Formula { globally: false, body: self.expr()?, span }
        };
        self.expect(Tok::Semi)?;
        Ok(f)
    }

    fn weights(&mut self) -> Result<Vec<WeightEntry>, SpecError> {
        let mut out = Vec::new();
        while self.peek() != &Tok::Eof {
            let span = self.expect(Tok::Weight)?;
            let value = self.signed_int().map_err(|e| SpecError::syntax(e.span, format!("weight value must be an integer: {}", e.message)))?;
            let formula = self.expr()?;
            self.expect(Tok::Semi)?;
            out.push(WeightEntry { value, formula, span });
        }
        Ok(out)
    }

    pub fn expr(&mut self) -> Result<Expr, SpecError> {
        let lhs = self.iff()?;
        if self.eat(&Tok::Imp) {
            let rhs = self.expr()?;
            return Ok(Expr::bin(BinOp::Imp, lhs, rhs));
        }
        Ok(lhs)
    }

    fn left_assoc(
        &mut self,
        ops: &[(Tok, BinOp)],
        next: fn(&mut Self) -> Result<Expr, SpecError>,
    ) -> Result<Expr, SpecError> {
        let mut lhs = next(self)?;
        'outer: loop {
            for (t, op) in ops {
                if self.eat(t) {
                    let rhs = next(self)?;
                    lhs = Expr::bin(*op, lhs, rhs);
                    continue 'outer;
                }
            }
            return Ok(lhs);
        }
    }

    fn iff(&mut self) -> Result<Expr, SpecError> {
        self.left_assoc(&[(Tok::Iff, BinOp::Iff)], Self::or)
    }

    fn or(&mut self) -> Result<Expr, SpecError> {
        self.left_assoc(&[(Tok::Or, BinOp::Or)], Self::and)
    }

    fn and(&mut self) -> Result<Expr, SpecError> {
        self.left_assoc(&[(Tok::And, BinOp::And)], Self::cmp)
    }

    fn cmp(&mut self) -> Result<Expr, SpecError> {
        let lhs = self.add()?;
        let op = match self.peek() {
            Tok::Eq => BinOp::Eq,
            Tok::Ne => BinOp::Ne,
            Tok::Lt => BinOp::Lt,
            Tok::Le => BinOp::Le,
            Tok::Gt => BinOp::Gt,
            Tok::Ge => BinOp::Ge,
            _ => return Ok(lhs),
        };
        self.bump();
        let rhs = self.add()?;
        Ok(Expr::bin(op, lhs, rhs))
    }

    fn add(&mut self) -> Result<Expr, SpecError> {
        self.left_assoc(&[(Tok::Plus, BinOp::Add), (Tok::Minus, BinOp::Sub)], Self::unary)
    }

    fn unary(&mut self) -> Result<Expr, SpecError> {
        let span = self.span();
        match self.peek() {
            Tok::Not => {
                self.bump();
                let e = self.unary()?;
                Ok(Expr::new(ExprKind::Not(Box::new(e)), span))
            }
            Tok::Minus => {
                self.bump();
                if let Tok::Int(v) = *self.peek() {
                    self.bump();
                    return Ok(Expr::new(ExprKind::Int(-v), span));
                }
                let e = self.unary()?;
                Ok(Expr::new(ExprKind::Neg(Box::new(e)), span))
            }
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> Result<Expr, SpecError> {
        let (tok, span) = self.bump();
        let kind = match tok {
            Tok::True => ExprKind::Bool(true),
            Tok::False => ExprKind::Bool(false),
            Tok::Int(v) => ExprKind::Int(v),
            Tok::Ident(s) => ExprKind::Ident(s),
            Tok::Next => {
                self.expect(Tok::LParen)?;
                let (name, _) = self.ident()?;
                self.expect(Tok::RParen)?;
                ExprKind::Next(name)
            }
            Tok::Abs => {
                self.expect(Tok::LParen)?;
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                ExprKind::Abs(Box::new(e))
            }
            Tok::LParen => {
                let mut e = self.expr()?;
                self.expect(Tok::RParen)?;
                e.span = span;
                return Ok(e);
            }
            Tok::G => {
                return Err(SpecError::syntax(span, "G may only wrap a whole assumption or guarantee".into()));
            }
            t => {
                return Err(SpecError::syntax(span, format!("expected an expression, found {}", t.describe())));
            }
        };
        Ok(Expr::new(kind, span))
    }
}

/// Parse a specification. Definitions are kept unexpanded.
pub fn parse_spec(text: &str) -> Result<SpecAst, SpecError> {
    Parser::new(text)?.spec()
}

/// Parse a weights file: a sequence of `WEIGHT <int> <formula>;` entries.
pub fn parse_weights(text: &str) -> Result<Vec<WeightEntry>, SpecError> {
    Parser::new(text)?.weights()
}

/// Parse a single expression.
pub fn parse_expr(text: &str) -> Result<Expr, SpecError> {
    let mut p = Parser::new(text)?;
    let e = p.expr()?;
    if p.peek() != &Tok::Eof {
        return Err(p.unexpected("end of input"));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enum_declaration() {
        let ast = parse_spec("VAR move : {UP, STOP, DOWN};").unwrap();
        assert_eq!(ast.vars.len(), 1);
        assert_eq!(ast.vars[0].owner, Owner::Sys);
        assert_eq!(ast.vars[0].domain, Domain::Enum(vec!["UP".into(), "STOP".into(), "DOWN".into()]));
    }

    #[test]
    fn range_declaration() {
        let ast = parse_spec("VARENV current_floor : 0..4;").unwrap();
        assert_eq!(ast.vars[0].owner, Owner::Env);
        assert_eq!(ast.vars[0].domain.size(), 5);
    }

    #[test]
    fn empty_sections_are_allowed() {
        let ast = parse_spec("VAR x : boolean;\nASSUMPTION\nGUARANTEE\n").unwrap();
        assert!(ast.assumptions.is_empty());
        assert!(ast.guarantees.is_empty());
    }

    #[test]
    fn implication_is_right_associative_and_loosest() {
        let e = parse_expr("a & b -> c -> d | e").unwrap();
        let ExprKind::Bin(BinOp::Imp, lhs, rhs) = &e.kind else { panic!() };
        assert!(matches!(lhs.kind, ExprKind::Bin(BinOp::And, _, _)));
        assert!(matches!(rhs.kind, ExprKind::Bin(BinOp::Imp, _, _)));
    }

    #[test]
    fn negative_literals_fold() {
        assert_eq!(parse_expr("-3").unwrap().kind.clone_int(), Some(-3));
        let e = parse_expr("x - 3").unwrap();
        assert!(matches!(e.kind, ExprKind::Bin(BinOp::Sub, _, _)));
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse_spec("VAR\n  x : boolean\n  y : boolean;").unwrap_err();
        assert_eq!((err.span.line, err.span.col), (3, 3));
        let err = parse_spec("VAR x : boolean;\nVARENV x : 0..1;").unwrap_err();
        assert_eq!(err.kind, SpecErrorKind::Duplicate);
        assert_eq!(err.span.line, 2);
    }

    #[test]
    fn weights_file() {
        let w = parse_weights("# two entries\nWEIGHT 1 p & q;\nWEIGHT -1 p & !q;\n").unwrap();
        assert_eq!(w.iter().map(|e| e.value).collect::<Vec<_>>(), vec![1, -1]);
        assert!(parse_weights("").unwrap().is_empty());
        assert!(parse_weights("WEIGHT x p;").is_err());
    }

    impl ExprKind {
        fn clone_int(&self) -> Option<i64> {
            match self {
                ExprKind::Int(v) => Some(*v),
                _ => None,
            }
        }
    }
}
