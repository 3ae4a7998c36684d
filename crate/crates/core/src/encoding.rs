//! Boolean encoding of finite-domain variables and compilation of
//! expressions to decision diagrams.
//!
//! State bit `k` lives in manager variable `2k` (current value) and `2k + 1`
//! (next value), so priming is a swap of adjacent levels. Each variable takes
//! `ceil(log2 |D|)` consecutive bits, most significant bit first; value `i` of
//! the domain is code `i`.

use std::collections::BTreeMap;

use symdd::{Bdd, Manager, VarId};

use crate::spec::{domain_values, BinOp, CVal, Domain, Expr, ExprKind, Owner, SpecAst, VarDecl};

#[derive(Clone, Debug)]
pub struct VarEncoding {
    pub decl: VarDecl,
    pub first_bit: u32,
    pub nbits: u32,
    pub values: Vec<CVal>,
}

#[derive(Clone, Debug)]
pub struct Encoding {
    pub vars: Vec<VarEncoding>,
    pub state_bits: u32,
}

fn bits_for(size: u64) -> u32 {
    if size <= 1 {
        0
    } else {
        64 - (size - 1).leading_zeros()
    }
}

impl Encoding {
    pub fn new(ast: &SpecAst) -> Self {
        let mut vars = Vec::new();
        let mut next = 0;
        for d in &ast.vars {
            let nbits = bits_for(d.domain.size());
            vars.push(VarEncoding {
                decl: d.clone(),
                first_bit: next,
                nbits,
                values: domain_values(&d.domain),
            });
            next += nbits;
        }
        Encoding { vars, state_bits: next }
    }

    /// Number of manager variables needed: current and next copy of each bit.
    pub fn manager_vars(&self) -> u32 {
        2 * self.state_bits
    }

    pub fn new_manager(&self) -> Manager {
        Manager::new(self.manager_vars())
    }

    pub fn bit_var(bit: u32, primed: bool) -> VarId {
        VarId(2 * bit + primed as u32)
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v.decl.name == name)
    }

    /// Manager variables of the selected owner (all owners for `None`), in
    /// variable order.
    pub fn bit_vars(&self, owner: Option<Owner>, primed: bool) -> Vec<VarId> {
        self.vars
            .iter()
            .filter(|v| owner.is_none_or(|o| v.decl.owner == o))
            .flat_map(|v| (v.first_bit..v.first_bit + v.nbits).map(move |b| Self::bit_var(b, primed)))
            .collect()
    }

    /// Current and next copies of every bit, interleaved.
    pub fn transition_vars(&self) -> Vec<VarId> {
        (0..self.manager_vars()).map(VarId).collect()
    }

    pub fn prime_pairs(&self) -> Vec<(VarId, VarId)> {
        (0..self.state_bits).map(|b| (Self::bit_var(b, false), Self::bit_var(b, true))).collect()
    }

    /// Set of assignments where variable `var` holds its `index`-th value.
    pub fn code(&self, m: &mut Manager, var: usize, index: usize, primed: bool) -> Bdd {
        let v = &self.vars[var];
        let vars: Vec<VarId> = (0..v.nbits).map(|j| Self::bit_var(v.first_bit + j, primed)).collect();
        let bits: Vec<bool> = (0..v.nbits).map(|j| (index >> (v.nbits - 1 - j)) & 1 == 1).collect();
        m.minterm(&vars, &bits)
    }

    /// Codes of `var` that denote a domain value.
    pub fn validity(&self, m: &mut Manager, var: usize, primed: bool) -> Bdd {
        let n = self.vars[var].values.len();
        if n == 1usize << self.vars[var].nbits {
            return m.bdd_true();
        }
        let codes: Vec<Bdd> = (0..n).map(|i| self.code(m, var, i, primed)).collect();
        m.or_all(codes)
    }

    pub fn validity_of(&self, m: &mut Manager, owner: Option<Owner>, primed: bool) -> Bdd {
        let idx: Vec<usize> = (0..self.vars.len())
            .filter(|&i| owner.is_none_or(|o| self.vars[i].decl.owner == o))
            .collect();
        let parts: Vec<Bdd> = idx.into_iter().map(|i| self.validity(m, i, primed)).collect();
        m.and_all(parts)
    }

    /// Number of valid states, by model counting.
    pub fn state_count(&self, m: &mut Manager) -> u128 {
        let valid = self.validity_of(m, None, false);
        m.sat_count(valid, &self.bit_vars(None, false)).expect("validity covers only state bits")
    }

    /// Packs a valuation into state bits (bit `k` of the result is state bit `k`).
    pub fn encode(&self, vals: &[CVal]) -> u64 {
        let mut out = 0u64;
        for (v, val) in self.vars.iter().zip(vals) {
            let i = v.values.iter().position(|x| x == val).expect("value outside the domain") as u64;
            for j in 0..v.nbits {
                if (i >> (v.nbits - 1 - j)) & 1 == 1 {
                    out |= 1 << (v.first_bit + j);
                }
            }
        }
        out
    }

    /// Inverse of [`Encoding::encode`]; `None` on an unused code.
    pub fn decode(&self, bits: u64) -> Option<Vec<CVal>> {
        self.vars
            .iter()
            .map(|v| {
                let mut i = 0usize;
                for j in 0..v.nbits {
                    i = (i << 1) | ((bits >> (v.first_bit + j)) & 1) as usize;
                }
                v.values.get(i).cloned()
            })
            .collect()
    }

    /// Packed bits of the selected owner's variables.
    pub fn owner_mask(&self, owner: Owner) -> u64 {
        self.vars
            .iter()
            .filter(|v| v.decl.owner == owner)
            .flat_map(|v| v.first_bit..v.first_bit + v.nbits)
            .fold(0, |m, b| m | (1 << b))
    }

    /// Full manager assignment for a transition between two packed states.
    pub fn assignment(&self, cur: u64, next: u64) -> Vec<bool> {
        let mut a = vec![false; self.manager_vars() as usize];
        for b in 0..self.state_bits {
            a[2 * b as usize] = (cur >> b) & 1 == 1;
            a[2 * b as usize + 1] = (next >> b) & 1 == 1;
        }
        a
    }

    /// Packed state bits of a satisfying assignment listed over `vars`.
    pub fn pack(vars: &[VarId], bits: &[bool]) -> u64 {
        vars.iter().zip(bits).filter(|(_, &b)| b).fold(0, |acc, (v, _)| acc | (1 << (v.0 / 2)))
    }

    pub fn compile(&self, m: &mut Manager, e: &Expr) -> Bdd {
        Compiler { enc: self, m }.boolean(e)
    }
}

/// Concrete value table of a term: each value paired with the set where
/// the term takes it. The sets are pairwise disjoint.
enum Term {
    Bool(Bdd),
    Table(BTreeMap<CVal, Bdd>),
}

struct Compiler<'a> {
    enc: &'a Encoding,
    m: &'a mut Manager,
}

impl Compiler<'_> {
    fn boolean(&mut self, e: &Expr) -> Bdd {
        match self.term(e) {
            Term::Bool(b) => b,
            Term::Table(_) => panic!("expression is not boolean: {e}"),
        }
    }

    fn table(&mut self, e: &Expr) -> BTreeMap<CVal, Bdd> {
        match self.term(e) {
            Term::Table(t) => t,
            Term::Bool(b) => {
                let nb = self.m.not(b);
                BTreeMap::from([(CVal::Bool(false), nb), (CVal::Bool(true), b)])
            }
        }
    }

    fn var(&mut self, name: &str, primed: bool) -> Term {
        let i = self.enc.var_index(name).expect("checked expression");
        let v = &self.enc.vars[i];
        if v.decl.domain == Domain::Bool {
            let b = self.m.var(Encoding::bit_var(v.first_bit, primed));
            return Term::Bool(b);
        }
        let values = v.values.clone();
        let mut t = BTreeMap::new();
        for (k, val) in values.into_iter().enumerate() {
            let c = self.enc.code(self.m, i, k, primed);
            t.insert(val, c);
        }
        Term::Table(t)
    }

    fn map_table(&mut self, t: BTreeMap<CVal, Bdd>, f: impl Fn(i64) -> i64) -> Term {
        let mut out: BTreeMap<CVal, Bdd> = BTreeMap::new();
        for (v, c) in t {
            let CVal::Int(x) = v else { panic!("integer operand expected") };
            let key = CVal::Int(f(x));
            let merged = match out.get(&key) {
                Some(&prev) => self.m.or(prev, c),
                None => c,
            };
            out.insert(key, merged);
        }
        Term::Table(out)
    }

    fn term(&mut self, e: &Expr) -> Term {
        match &e.kind {
            ExprKind::Bool(b) => Term::Bool(self.m.bdd_const(*b)),
            ExprKind::Int(v) => Term::Table(BTreeMap::from([(CVal::Int(*v), self.m.bdd_true())])),
            ExprKind::Ident(n) => match self.enc.var_index(n) {
                Some(_) => self.var(n, false),
                None => Term::Table(BTreeMap::from([(CVal::Label(n.clone()), self.m.bdd_true())])),
            },
            ExprKind::Next(n) => self.var(n, true),
            ExprKind::Not(a) => {
                let b = self.boolean(a);
                Term::Bool(self.m.not(b))
            }
            ExprKind::Neg(a) => {
                let t = self.table(a);
                self.map_table(t, |x| -x)
            }
            ExprKind::Abs(a) => {
                let t = self.table(a);
                self.map_table(t, |x| x.abs())
            }
            ExprKind::Bin(op, a, b) => {
                use BinOp::*;
                match op {
                    And | Or | Imp | Iff => {
                        let x = self.boolean(a);
                        let y = self.boolean(b);
                        Term::Bool(match op {
                            And => self.m.and(x, y),
                            Or => self.m.or(x, y),
                            Imp => self.m.imp(x, y),
                            _ => self.m.iff(x, y),
                        })
                    }
                    Add | Sub => {
                        let x = self.table(a);
                        let y = self.table(b);
                        let mut out: BTreeMap<CVal, Bdd> = BTreeMap::new();
                        for (va, ca) in &x {
                            for (vb, cb) in &y {
                                let (CVal::Int(p), CVal::Int(q)) = (va, vb) else { panic!("integer operands expected") };
                                let key = CVal::Int(if *op == Add { p + q } else { p - q });
                                let both = self.m.and(*ca, *cb);
                                let merged = match out.get(&key) {
                                    Some(&prev) => self.m.or(prev, both),
                                    None => both,
                                };
                                out.insert(key, merged);
                            }
                        }
                        Term::Table(out)
                    }
                    Eq | Ne | Lt | Le | Gt | Ge => {
                        if matches!(op, Eq | Ne) {
                            if let (Term::Bool(x), Term::Bool(y)) = (self.term(a), self.term(b)) {
                                let same = self.m.iff(x, y);
                                return Term::Bool(if *op == Eq { same } else { self.m.not(same) });
                            }
                        }
                        let x = self.table(a);
                        let y = self.table(b);
                        let mut acc = self.m.bdd_false();
                        for (va, ca) in &x {
                            for (vb, cb) in &y {
                                let holds = match op {
                                    Eq => va == vb,
                                    Ne => va != vb,
                                    Lt => va < vb,
                                    Le => va <= vb,
                                    Gt => va > vb,
                                    _ => va >= vb,
                                };
                                if holds {
                                    let both = self.m.and(*ca, *cb);
                                    acc = self.m.or(acc, both);
                                }
                            }
                        }
                        Term::Bool(acc)
                    }
                }
            }
        }
    }
}
