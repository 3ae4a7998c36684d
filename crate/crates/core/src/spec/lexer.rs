use super::ast::Span;
use super::SpecError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(i64),
    VarEnv,
    Var,
    Define,
    Assumption,
    Guarantee,
    Weight,
    Boolean,
    True,
    False,
    G,
    Next,
    Abs,
    Colon,
    Semi,
    Assign,
    DotDot,
    LBrace,
    RBrace,
    Comma,
    LParen,
    RParen,
    Not,
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
    Plus,
    Minus,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Int(v) => format!("integer {v}"),
            Tok::Eof => "end of input".into(),
            other => format!("`{}`", other.text()),
        }
    }

    fn text(&self) -> &'static str {
        match self {
            Tok::VarEnv => "VARENV",
            Tok::Var => "VAR",
            Tok::Define => "DEFINE",
            Tok::Assumption => "ASSUMPTION",
            Tok::Guarantee => "GUARANTEE",
            Tok::Weight => "WEIGHT",
            Tok::Boolean => "boolean",
            Tok::True => "TRUE",
            Tok::False => "FALSE",
            Tok::G => "G",
            Tok::Next => "next",
            Tok::Abs => "abs",
            Tok::Colon => ":",
            Tok::Semi => ";",
            Tok::Assign => ":=",
            Tok::DotDot => "..",
            Tok::LBrace => "{",
            Tok::RBrace => "}",
            Tok::Comma => ",",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::Not => "!",
            Tok::And => "&",
            Tok::Or => "|",
            Tok::Imp => "->",
            Tok::Iff => "<->",
            Tok::Eq => "=",
            Tok::Ne => "!=",
            Tok::Lt => "<",
            Tok::Le => "<=",
            Tok::Gt => ">",
            Tok::Ge => ">=",
            Tok::Plus => "+",
            Tok::Minus => "-",
            Tok::Ident(_) | Tok::Int(_) | Tok::Eof => "",
        }
    }
}

pub fn tokenize(src: &str) -> Result<Vec<(Tok, Span)>, SpecError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1u32, 1u32);
    while i < chars.len() {
        let c = chars[i];
        let span = Span { line, col };
        let advance = |n: usize, i: &mut usize, col: &mut u32| {
            *i += n;
            *col += n as u32;
        };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            advance(1, &mut i, &mut col);
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            col += (i - start) as u32;
            let tok = match word.as_str() {
                "VARENV" => Tok::VarEnv,
                "VAR" => Tok::Var,
                "DEFINE" => Tok::Define,
                "ASSUMPTION" => Tok::Assumption,
                "GUARANTEE" => Tok::Guarantee,
                "WEIGHT" => Tok::Weight,
                "boolean" => Tok::Boolean,
                "TRUE" => Tok::True,
                "FALSE" => Tok::False,
                "G" => Tok::G,
                "next" => Tok::Next,
                "abs" => Tok::Abs,
                _ => Tok::Ident(word),
            };
            out.push((tok, span));
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            col += (i - start) as u32;
            let v = digits
                .parse::<i64>()
                .map_err(|_| SpecError::syntax(span, format!("integer literal `{digits}` out of range")))?;
            out.push((Tok::Int(v), span));
            continue;
        }
        let next = chars.get(i + 1).copied();
        let next2 = chars.get(i + 2).copied();
        let (tok, len) = match (c, next, next2) {
            ('<', Some('-'), Some('>')) => (Tok::Iff, 3),
            ('-', Some('>'), _) => (Tok::Imp, 2),
            (':', Some('='), _) => (Tok::Assign, 2),
            ('.', Some('.'), _) => (Tok::DotDot, 2),
            ('!', Some('='), _) => (Tok::Ne, 2),
            ('<', Some('='), _) => (Tok::Le, 2),
            ('>', Some('='), _) => (Tok::Ge, 2),
            (':', _, _) => (Tok::Colon, 1),
            (';', _, _) => (Tok::Semi, 1),
            ('{', _, _) => (Tok::LBrace, 1),
            ('}', _, _) => (Tok::RBrace, 1),
            (',', _, _) => (Tok::Comma, 1),
            ('(', _, _) => (Tok::LParen, 1),
            (')', _, _) => (Tok::RParen, 1),
            ('!', _, _) => (Tok::Not, 1),
            ('&', _, _) => (Tok::And, 1),
            ('|', _, _) => (Tok::Or, 1),
            ('=', _, _) => (Tok::Eq, 1),
            ('<', _, _) => (Tok::Lt, 1),
            ('>', _, _) => (Tok::Gt, 1),
            ('+', _, _) => (Tok::Plus, 1),
            ('-', _, _) => (Tok::Minus, 1),
            _ => return Err(SpecError::syntax(span, format!("unexpected character `{c}`"))),
        };
        out.push((tok, span));
        advance(len, &mut i, &mut col);
    }
    out.push((Tok::Eof, Span { line, col }));
    Ok(out)
}
