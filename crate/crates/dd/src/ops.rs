use crate::cache::CacheKey;
use crate::manager::{Node, ONE, TERMINAL, ZERO};
use crate::{Add, Bdd, DdError, Diagram, Manager, Value, VarId};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BoolOp {
    And,
    Or,
    Xor,
    Imp,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ArithOp {
    Plus,
    Minus,
    Max,
    Min,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Quantifier {
    Exists,
    Forall,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Extremum {
    Min,
    Max,
}

/// Predicate on terminal values, used to cut an ADD back into a set.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TerminalPred {
    Eq(Value),
    Ne(Value),
    Lt(Value),
    Le(Value),
    Gt(Value),
    Ge(Value),
}

impl TerminalPred {
    pub fn holds(self, v: Value) -> bool {
        match self {
            TerminalPred::Eq(c) => v == c,
            TerminalPred::Ne(c) => v != c,
            TerminalPred::Lt(c) => v < c,
            TerminalPred::Le(c) => v <= c,
            TerminalPred::Gt(c) => v > c,
            TerminalPred::Ge(c) => v >= c,
        }
    }

    fn key(self) -> Vec<u32> {
        let (kind, v) = match self {
            TerminalPred::Eq(c) => (0, c),
            TerminalPred::Ne(c) => (1, c),
            TerminalPred::Lt(c) => (2, c),
            TerminalPred::Le(c) => (3, c),
            TerminalPred::Gt(c) => (4, c),
            TerminalPred::Ge(c) => (5, c),
        };
        let (class, n) = match v {
            Value::NegInf => (0, 0),
            Value::Fin(n) => (1, n),
            Value::PosInf => (2, 0),
        };
        vec![u32::MAX, kind, class, n as u32, (n >> 32) as u32]
    }
}

/// A user-defined pointwise binary operation on terminals.
///
/// `cache_key` must identify the operation together with all of its
/// parameters: two operations with the same key share computed-table
/// entries.
pub trait TerminalOp {
    fn cache_key(&self) -> u64;

    fn apply(&self, lhs: Value, rhs: Value) -> Result<Value, DdError>;

    /// Result when the left operand is the constant `lhs`, whatever the
    /// right operand is.
    fn left_constant(&self, _lhs: Value) -> Option<Value> {
        None
    }

    /// Result when the right operand is the constant `rhs`, whatever the
    /// left operand is.
    fn right_constant(&self, _rhs: Value) -> Option<Value> {
        None
    }
}

#[derive(Clone, Copy)]
enum Bin<'a> {
    Bool(BoolOp),
    Arith(ArithOp),
    Custom(&'a dyn TerminalOp),
}

const TAG_CUSTOM: u32 = 9;
const TAG_ITE: u32 = 10;
const TAG_ABSTRACT: u32 = 11;
const TAG_RENAME: u32 = 20;
const TAG_THRESHOLD: u32 = 21;
const TAG_COFACTOR: u32 = 22;

impl Bin<'_> {
    fn tag(self) -> (u32, u64) {
        match self {
            Bin::Bool(op) => (op as u32 + 1, 0),
            Bin::Arith(op) => (op as u32 + 5, 0),
            Bin::Custom(op) => (TAG_CUSTOM, op.cache_key()),
        }
    }

    fn commutative(self) -> bool {
        matches!(
            self,
            Bin::Bool(BoolOp::And | BoolOp::Or | BoolOp::Xor)
                | Bin::Arith(ArithOp::Plus | ArithOp::Max | ArithOp::Min)
        )
    }

    fn terminal(self, a: Value, b: Value) -> Result<Value, DdError> {
        let bit = |v: Value| v != Value::ZERO;
        let of = |b: bool| if b { Value::ONE } else { Value::ZERO };
        Ok(match self {
            Bin::Bool(BoolOp::And) => of(bit(a) && bit(b)),
            Bin::Bool(BoolOp::Or) => of(bit(a) || bit(b)),
            Bin::Bool(BoolOp::Xor) => of(bit(a) != bit(b)),
            Bin::Bool(BoolOp::Imp) => of(!bit(a) || bit(b)),
            Bin::Arith(ArithOp::Plus) => a.checked_add(b)?,
            Bin::Arith(ArithOp::Minus) => a.checked_sub(b)?,
            Bin::Arith(ArithOp::Max) => a.max(b),
            Bin::Arith(ArithOp::Min) => a.min(b),
            Bin::Custom(op) => op.apply(a, b)?,
        })
    }
}

enum Short {
    Node(u32),
    Const(Value),
}

impl Manager {
    fn shortcut(&self, op: Bin<'_>, f: u32, g: u32) -> Option<Short> {
        use Short::Node;
        match op {
            Bin::Bool(BoolOp::And) => {
                if f == ZERO || g == ZERO {
                    Some(Node(ZERO))
                } else if f == ONE || f == g {
                    Some(Node(g))
                } else if g == ONE {
                    Some(Node(f))
                } else {
                    None
                }
            }
            Bin::Bool(BoolOp::Or) => {
                if f == ONE || g == ONE {
                    Some(Node(ONE))
                } else if f == ZERO || f == g {
                    Some(Node(g))
                } else if g == ZERO {
                    Some(Node(f))
                } else {
                    None
                }
            }
            Bin::Bool(BoolOp::Xor) => {
                if f == g {
                    Some(Node(ZERO))
                } else if f == ZERO {
                    Some(Node(g))
                } else if g == ZERO {
                    Some(Node(f))
                } else {
                    None
                }
            }
            Bin::Bool(BoolOp::Imp) => {
                if f == ZERO || g == ONE || f == g {
                    Some(Node(ONE))
                } else if f == ONE {
                    Some(Node(g))
                } else {
                    None
                }
            }
            Bin::Arith(ArithOp::Max) => {
                if f == g || self.value(g) == Some(Value::NegInf) {
                    Some(Node(f))
                } else if self.value(f) == Some(Value::NegInf) {
                    Some(Node(g))
                } else if self.value(f) == Some(Value::PosInf) || self.value(g) == Some(Value::PosInf) {
                    Some(Short::Const(Value::PosInf))
                } else {
                    None
                }
            }
            Bin::Arith(ArithOp::Min) => {
                if f == g || self.value(g) == Some(Value::PosInf) {
                    Some(Node(f))
                } else if self.value(f) == Some(Value::PosInf) {
                    Some(Node(g))
                } else if self.value(f) == Some(Value::NegInf) || self.value(g) == Some(Value::NegInf) {
                    Some(Short::Const(Value::NegInf))
                } else {
                    None
                }
            }
            Bin::Arith(ArithOp::Plus) => {
                if f == ZERO {
                    Some(Node(g))
                } else if g == ZERO {
                    Some(Node(f))
                } else {
                    None
                }
            }
            Bin::Arith(ArithOp::Minus) => (g == ZERO).then_some(Node(f)),
            Bin::Custom(op) => {
                if let Some(c) = self.value(g).and_then(|b| op.right_constant(b)) {
                    Some(Short::Const(c))
                } else {
                    self.value(f)
                        .and_then(|a| op.left_constant(a))
                        .map(Short::Const)
                }
            }
        }
    }

    fn apply_rec(&mut self, op: Bin<'_>, f: u32, g: u32) -> Result<u32, DdError> {
        let (nf, ng) = (self.node(f), self.node(g));
        if nf.level == TERMINAL && ng.level == TERMINAL {
            let v = op.terminal(self.value(f).unwrap(), self.value(g).unwrap())?;
            return Ok(self.terminal(v));
        }
        match self.shortcut(op, f, g) {
            Some(Short::Node(n)) => return Ok(n),
            Some(Short::Const(v)) => return Ok(self.terminal(v)),
            None => {}
        }
        let (f, g) = if op.commutative() && g < f { (g, f) } else { (f, g) };
        let (tag, aux) = op.tag();
        let key = CacheKey { tag, a: f, b: g, c: 0, aux };
        if let Some(r) = self.cache.get(&key) {
            return Ok(r);
        }
        let level = self.node(f).level.min(self.node(g).level);
        let (f0, f1) = self.branches(f, level);
        let (g0, g1) = self.branches(g, level);
        let lo = self.apply_rec(op, f0, g0)?;
        let hi = self.apply_rec(op, f1, g1)?;
        let r = self.mk(level, lo, hi);
        self.cache.put(key, r);
        Ok(r)
    }

    pub(crate) fn ite_rec(&mut self, f: u32, g: u32, h: u32) -> u32 {
        if f == ONE || g == h {
            return g;
        }
        if f == ZERO {
            return h;
        }
        if g == ONE && h == ZERO {
            return f;
        }
        let key = CacheKey { tag: TAG_ITE, a: f, b: g, c: h, aux: 0 };
        if let Some(r) = self.cache.get(&key) {
            return r;
        }
        let Node { level: lf, .. } = self.node(f);
        debug_assert_ne!(lf, TERMINAL, "non 0-1 selector reached ite");
        let level = lf.min(self.node(g).level).min(self.node(h).level);
        let (f0, f1) = self.branches(f, level);
        let (g0, g1) = self.branches(g, level);
        let (h0, h1) = self.branches(h, level);
        let lo = self.ite_rec(f0, g0, h0);
        let hi = self.ite_rec(f1, g1, h1);
        let r = self.mk(level, lo, hi);
        self.cache.put(key, r);
        r
    }

    fn cube(&mut self, vars: &[VarId]) -> Result<u32, DdError> {
        let mut levels = vars
            .iter()
            .map(|&v| self.check_var(v))
            .collect::<Result<Vec<_>, _>>()?;
        levels.sort_unstable();
        levels.dedup();
        let mut n = ONE;
        for &l in levels.iter().rev() {
            n = self.mk(l, ZERO, n);
        }
        Ok(n)
    }

    fn abstract_rec(&mut self, op: Bin<'_>, f: u32, mut cube: u32) -> Result<u32, DdError> {
        let lf = self.node(f).level;
        if lf == TERMINAL {
            return Ok(f);
        }
        while cube != ONE && self.node(cube).level < lf {
            cube = self.node(cube).high;
        }
        if cube == ONE {
            return Ok(f);
        }
        let (tag, _) = op.tag();
        let key = CacheKey { tag: TAG_ABSTRACT + tag, a: f, b: cube, c: 0, aux: 0 };
        if let Some(r) = self.cache.get(&key) {
            return Ok(r);
        }
        let Node { low, high, .. } = self.node(f);
        let r = if self.node(cube).level == lf {
            let rest = self.node(cube).high;
            let a = self.abstract_rec(op, low, rest)?;
            let b = self.abstract_rec(op, high, rest)?;
            self.apply_rec(op, a, b)?
        } else {
            let a = self.abstract_rec(op, low, cube)?;
            let b = self.abstract_rec(op, high, cube)?;
            self.mk(lf, a, b)
        };
        self.cache.put(key, r);
        Ok(r)
    }

    fn rename_rec(&mut self, f: u32, map: &[u32], map_id: u32) -> u32 {
        let node = self.node(f);
        if node.level == TERMINAL {
            return f;
        }
        let key = CacheKey { tag: TAG_RENAME, a: f, b: map_id, c: 0, aux: 0 };
        if let Some(r) = self.cache.get(&key) {
            return r;
        }
        let lo = self.rename_rec(node.low, map, map_id);
        let hi = self.rename_rec(node.high, map, map_id);
        let var = self.var_at_level[node.level as usize];
        let target = self.level_of[map[var as usize] as usize];
        let sel = self.mk(target, ZERO, ONE);
        let r = self.ite_rec(sel, hi, lo);
        self.cache.put(key, r);
        r
    }

    fn threshold_rec(&mut self, f: u32, pred: TerminalPred, pred_id: u32) -> u32 {
        if let Some(v) = self.value(f) {
            return if pred.holds(v) { ONE } else { ZERO };
        }
        let key = CacheKey { tag: TAG_THRESHOLD, a: f, b: pred_id, c: 0, aux: 0 };
        if let Some(r) = self.cache.get(&key) {
            return r;
        }
        let Node { level, low, high } = self.node(f);
        let lo = self.threshold_rec(low, pred, pred_id);
        let hi = self.threshold_rec(high, pred, pred_id);
        let r = self.mk(level, lo, hi);
        self.cache.put(key, r);
        r
    }

    fn cofactor_rec(&mut self, f: u32, level: u32, val: bool) -> u32 {
        let node = self.node(f);
        if node.level == TERMINAL || node.level > level {
            return f;
        }
        if node.level == level {
            return if val { node.high } else { node.low };
        }
        let key = CacheKey {
            tag: TAG_COFACTOR,
            a: f,
            b: level,
            c: val as u32,
            aux: 0,
        };
        if let Some(r) = self.cache.get(&key) {
            return r;
        }
        let lo = self.cofactor_rec(node.low, level, val);
        let hi = self.cofactor_rec(node.high, level, val);
        let r = self.mk(node.level, lo, hi);
        self.cache.put(key, r);
        r
    }

    // ---- Boolean layer -------------------------------------------------------

    pub fn apply_bool(&mut self, op: BoolOp, f: Bdd, g: Bdd) -> Bdd {
        let (a, b) = (self.check(f), self.check(g));
        let r = self
            .apply_rec(Bin::Bool(op), a, b)
            .expect("Boolean operations cannot fail");
        self.wrap(r)
    }

    pub fn and(&mut self, f: Bdd, g: Bdd) -> Bdd {
        self.apply_bool(BoolOp::And, f, g)
    }

    pub fn or(&mut self, f: Bdd, g: Bdd) -> Bdd {
        self.apply_bool(BoolOp::Or, f, g)
    }

    pub fn xor(&mut self, f: Bdd, g: Bdd) -> Bdd {
        self.apply_bool(BoolOp::Xor, f, g)
    }

    pub fn imp(&mut self, f: Bdd, g: Bdd) -> Bdd {
        self.apply_bool(BoolOp::Imp, f, g)
    }

    pub fn iff(&mut self, f: Bdd, g: Bdd) -> Bdd {
        let x = self.xor(f, g);
        self.not(x)
    }

    pub fn not(&mut self, f: Bdd) -> Bdd {
        let t = self.bdd_true();
        self.xor(f, t)
    }

    /// `f ∧ ¬g`
    pub fn diff(&mut self, f: Bdd, g: Bdd) -> Bdd {
        let ng = self.not(g);
        self.and(f, ng)
    }

    pub fn and_all(&mut self, fs: impl IntoIterator<Item = Bdd>) -> Bdd {
        let mut acc = self.bdd_true();
        for f in fs {
            acc = self.and(acc, f);
        }
        acc
    }

    pub fn or_all(&mut self, fs: impl IntoIterator<Item = Bdd>) -> Bdd {
        let mut acc = self.bdd_false();
        for f in fs {
            acc = self.or(acc, f);
        }
        acc
    }

    pub fn bdd_ite(&mut self, f: Bdd, g: Bdd, h: Bdd) -> Bdd {
        let (a, b, c) = (self.check(f), self.check(g), self.check(h));
        let r = self.ite_rec(a, b, c);
        self.wrap(r)
    }

    pub fn abstract_bool(&mut self, q: Quantifier, f: Bdd, vars: &[VarId]) -> Result<Bdd, DdError> {
        let n = self.check(f);
        let cube = self.cube(vars)?;
        let op = match q {
            Quantifier::Exists => BoolOp::Or,
            Quantifier::Forall => BoolOp::And,
        };
        let r = self.abstract_rec(Bin::Bool(op), n, cube)?;
        Ok(self.wrap(r))
    }

    /// # Panics
    /// If a variable is out of range.
    pub fn exists(&mut self, f: Bdd, vars: &[VarId]) -> Bdd {
        self.abstract_bool(Quantifier::Exists, f, vars)
            .expect("variable out of range")
    }

    /// # Panics
    /// If a variable is out of range.
    pub fn forall(&mut self, f: Bdd, vars: &[VarId]) -> Bdd {
        self.abstract_bool(Quantifier::Forall, f, vars)
            .expect("variable out of range")
    }

    /// Simultaneously substitute each variable of a pair by the other.
    pub fn rename_swap<D: Diagram>(&mut self, d: D, pairs: &[(VarId, VarId)]) -> Result<D, DdError> {
        let n = self.check(d);
        let mut map: Vec<u32> = (0..self.var_count()).collect();
        let mut touched = vec![false; self.var_count() as usize];
        for &(a, b) in pairs {
            self.check_var(a)?;
            self.check_var(b)?;
            for v in [a, b] {
                if std::mem::replace(&mut touched[v.index()], true) {
                    return Err(DdError::OverlappingPairs(v));
                }
            }
            map[a.index()] = b.0;
            map[b.index()] = a.0;
        }
        let map_id = self.intern(map.clone());
        let r = self.rename_rec(n, &map, map_id);
        Ok(self.wrap(r))
    }

    /// Fix `var` to `val`.
    pub fn cofactor<D: Diagram>(&mut self, d: D, var: VarId, val: bool) -> D {
        let n = self.check(d);
        let level = self.check_var(var).expect("variable out of range");
        let r = self.cofactor_rec(n, level, val);
        self.wrap(r)
    }

    // ---- arithmetic layer ---------------------------------------------------------

    pub fn add_apply(&mut self, op: ArithOp, g: Add, h: Add) -> Result<Add, DdError> {
        let (a, b) = (self.check(g), self.check(h));
        let r = self.apply_rec(Bin::Arith(op), a, b)?;
        Ok(self.wrap(r))
    }

    pub fn add_apply_custom(&mut self, op: &dyn TerminalOp, g: Add, h: Add) -> Result<Add, DdError> {
        let (a, b) = (self.check(g), self.check(h));
        let r = self.apply_rec(Bin::Custom(op), a, b)?;
        Ok(self.wrap(r))
    }

    /// `f·g + ¬f·h` for a 0-1 selector `f`.
    pub fn add_ite(&mut self, f: Add, g: Add, h: Add) -> Result<Add, DdError> {
        if let Some(bad) = self
            .terminal_values(f)
            .into_iter()
            .find(|&v| v != Value::ZERO && v != Value::ONE)
        {
            return Err(DdError::NotZeroOne(bad));
        }
        let (a, b, c) = (self.check(f), self.check(g), self.check(h));
        let r = self.ite_rec(a, b, c);
        Ok(self.wrap(r))
    }

    /// Select between two ADDs with a set.
    pub fn ite(&mut self, f: Bdd, g: Add, h: Add) -> Add {
        let (a, b, c) = (self.check(f), self.check(g), self.check(h));
        let r = self.ite_rec(a, b, c);
        self.wrap(r)
    }

    pub fn add_abstract(&mut self, ext: Extremum, g: Add, vars: &[VarId]) -> Result<Add, DdError> {
        let n = self.check(g);
        let cube = self.cube(vars)?;
        let op = match ext {
            Extremum::Min => ArithOp::Min,
            Extremum::Max => ArithOp::Max,
        };
        let r = self.abstract_rec(Bin::Arith(op), n, cube)?;
        Ok(self.wrap(r))
    }

    /// Assignments whose terminal satisfies `pred`.
    pub fn add_to_bdd(&mut self, g: Add, pred: TerminalPred) -> Bdd {
        let n = self.check(g);
        let pred_id = self.intern(pred.key());
        let r = self.threshold_rec(n, pred, pred_id);
        self.wrap(r)
    }
}
