use std::collections::BTreeSet;
use std::sync::atomic::{AtomicU32, Ordering};

use rustc_hash::FxHashMap;

use crate::cache::OpCache;
use crate::{DdError, Value};

/// Position of a Boolean variable in the manager's declaration list.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct VarId(pub u32);

impl VarId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Set of assignments, stored as a 0-1 diagram.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Bdd {
    pub(crate) node: u32,
    pub(crate) mgr: u32,
}

/// Function from assignments to [`Value`]s.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Add {
    pub(crate) node: u32,
    pub(crate) mgr: u32,
}

/// Operations shared by both diagram kinds.
pub trait Diagram: Copy {
    #[doc(hidden)]
    fn from_parts(node: u32, mgr: u32) -> Self;
    #[doc(hidden)]
    fn parts(self) -> (u32, u32);

    /// Raw node index. Equal functions in one manager have equal ids.
    fn id(self) -> u32 {
        self.parts().0
    }
}

impl Diagram for Bdd {
    fn from_parts(node: u32, mgr: u32) -> Self {
        Bdd { node, mgr }
    }
    fn parts(self) -> (u32, u32) {
        (self.node, self.mgr)
    }
}

impl Diagram for Add {
    fn from_parts(node: u32, mgr: u32) -> Self {
        Add { node, mgr }
    }
    fn parts(self) -> (u32, u32) {
        (self.node, self.mgr)
    }
}

pub(crate) const TERMINAL: u32 = u32::MAX;
pub(crate) const ZERO: u32 = 0;
pub(crate) const ONE: u32 = 1;

/// Internal node. For terminals `level == TERMINAL` and `low` indexes the
/// value table.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub(crate) struct Node {
    pub level: u32,
    pub low: u32,
    pub high: u32,
}

static NEXT_MANAGER: AtomicU32 = AtomicU32::new(1);

fn fresh_id() -> u32 {
    NEXT_MANAGER.fetch_add(1, Ordering::Relaxed)
}

pub struct Manager {
    pub(crate) id: u32,
    var_count: u32,
    pub(crate) level_of: Vec<u32>,
    pub(crate) var_at_level: Vec<u32>,
    pub(crate) nodes: Vec<Node>,
    values: Vec<Value>,
    unique: FxHashMap<(u32, u32, u32), u32>,
    terminals: FxHashMap<Value, u32>,
    pub(crate) cache: OpCache,
    pub(crate) interned: FxHashMap<Vec<u32>, u32>,
}

impl Manager {
    /// Manager over `var_count` variables ordered by index.
    pub fn new(var_count: u32) -> Self {
        let order: Vec<u32> = (0..var_count).collect();
        Self::build(var_count, order)
    }

    /// Manager whose variable order is `order`, listed from the root level
    /// downwards.
    pub fn with_order(var_count: u32, order: &[VarId]) -> Result<Self, DdError> {
        let mut seen = vec![false; var_count as usize];
        if order.len() != var_count as usize {
            return Err(DdError::BadOrder(var_count));
        }
        for v in order {
            match seen.get_mut(v.index()) {
                Some(s) if !*s => *s = true,
                _ => return Err(DdError::BadOrder(var_count)),
            }
        }
        Ok(Self::build(var_count, order.iter().map(|v| v.0).collect()))
    }

    fn build(var_count: u32, var_at_level: Vec<u32>) -> Self {
        let mut level_of = vec![0; var_count as usize];
        for (level, &v) in var_at_level.iter().enumerate() {
            level_of[v as usize] = level as u32;
        }
        let mut m = Manager {
            id: fresh_id(),
            var_count,
            level_of,
            var_at_level,
            nodes: Vec::new(),
            values: Vec::new(),
            unique: FxHashMap::default(),
            terminals: FxHashMap::default(),
            cache: OpCache::new(),
            interned: FxHashMap::default(),
        };
        let z = m.terminal(Value::ZERO);
        let o = m.terminal(Value::ONE);
        debug_assert_eq!((z, o), (ZERO, ONE));
        m
    }

    /// Drop every node and invalidate all outstanding handles.
    pub fn reset(&mut self) {
        let order = std::mem::take(&mut self.var_at_level);
        *self = Self::build(self.var_count, order);
    }

    pub fn var_count(&self) -> u32 {
        self.var_count
    }

    /// Variables from the root level downwards.
    pub fn order(&self) -> Vec<VarId> {
        self.var_at_level.iter().map(|&v| VarId(v)).collect()
    }

    pub fn level(&self, v: VarId) -> u32 {
        self.level_of[v.index()]
    }

    /// Total number of nodes ever created, terminals included.
    pub fn node_total(&self) -> usize {
        self.nodes.len()
    }

    /// Turn the computed table off (or back on). Results never depend on it.
    pub fn set_cache_enabled(&mut self, on: bool) {
        self.cache.set_enabled(on);
    }

    pub fn cache_enabled(&self) -> bool {
        self.cache.enabled()
    }

    // ---- node store ------------------------------------------------------

    pub(crate) fn terminal(&mut self, v: Value) -> u32 {
        if let Some(&n) = self.terminals.get(&v) {
            return n;
        }
        let n = self.nodes.len() as u32;
        self.values.push(v);
        self.nodes.push(Node {
            level: TERMINAL,
            low: (self.values.len() - 1) as u32,
            high: 0,
        });
        self.terminals.insert(v, n);
        n
    }

    pub(crate) fn mk(&mut self, level: u32, low: u32, high: u32) -> u32 {
        if low == high {
            return low;
        }
        debug_assert!(level < self.node(low).level && level < self.node(high).level);
        if let Some(&n) = self.unique.get(&(level, low, high)) {
            return n;
        }
        let n = self.nodes.len() as u32;
        self.nodes.push(Node { level, low, high });
        self.unique.insert((level, low, high), n);
        if self.nodes.len() & 0xffff == 0 {
            self.cache.fit(self.nodes.len());
        }
        n
    }

    #[inline]
    pub(crate) fn node(&self, n: u32) -> Node {
        self.nodes[n as usize]
    }

    #[inline]
    pub(crate) fn value(&self, n: u32) -> Option<Value> {
        let node = self.node(n);
        (node.level == TERMINAL).then(|| self.values[node.low as usize])
    }

    /// Cofactors of `n` with respect to `level`.
    #[inline]
    pub(crate) fn branches(&self, n: u32, level: u32) -> (u32, u32) {
        let node = self.node(n);
        if node.level == level {
            (node.low, node.high)
        } else {
            (n, n)
        }
    }

    pub(crate) fn intern(&mut self, key: Vec<u32>) -> u32 {
        let next = self.interned.len() as u32;
        *self.interned.entry(key).or_insert(next)
    }

    pub(crate) fn check<D: Diagram>(&self, d: D) -> u32 {
        let (node, mgr) = d.parts();
        assert_eq!(
            mgr, self.id,
            "decision diagram handle used with a manager that did not create it"
        );
        node
    }

    pub(crate) fn wrap<D: Diagram>(&self, node: u32) -> D {
        D::from_parts(node, self.id)
    }

    pub(crate) fn check_var(&self, v: VarId) -> Result<u32, DdError> {
        if v.0 < self.var_count {
            Ok(self.level_of[v.index()])
        } else {
            Err(DdError::VarOutOfRange {
                var: v,
                var_count: self.var_count,
            })
        }
    }

    // ---- constants and projections ----------------------------------------

    pub fn bdd_true(&self) -> Bdd {
        self.wrap(ONE)
    }

    pub fn bdd_false(&self) -> Bdd {
        self.wrap(ZERO)
    }

    pub fn bdd_const(&self, b: bool) -> Bdd {
        self.wrap(if b { ONE } else { ZERO })
    }

    /// Projection function of `v`.
    ///
    /// # Panics
    /// If `v` is out of range.
    pub fn var(&mut self, v: VarId) -> Bdd {
        let level = self.check_var(v).expect("variable out of range");
        let n = self.mk(level, ZERO, ONE);
        self.wrap(n)
    }

    /// Negated projection function of `v`.
    pub fn nvar(&mut self, v: VarId) -> Bdd {
        let level = self.check_var(v).expect("variable out of range");
        let n = self.mk(level, ONE, ZERO);
        self.wrap(n)
    }

    /// Conjunction of literals; `bits[i]` gives the polarity of `vars[i]`.
    pub fn minterm(&mut self, vars: &[VarId], bits: &[bool]) -> Bdd {
        assert_eq!(vars.len(), bits.len());
        let mut lits: Vec<(u32, bool)> = vars
            .iter()
            .zip(bits)
            .map(|(&v, &b)| (self.check_var(v).expect("variable out of range"), b))
            .collect();
        lits.sort_unstable_by_key(|&(l, _)| std::cmp::Reverse(l));
        let mut n = ONE;
        for (level, b) in lits {
            n = if b {
                self.mk(level, ZERO, n)
            } else {
                self.mk(level, n, ZERO)
            };
        }
        self.wrap(n)
    }

    pub fn add_const(&mut self, v: Value) -> Add {
        let n = self.terminal(v);
        self.wrap(n)
    }

    /// View a set as its 0-1 characteristic function.
    pub fn bdd_to_01add(&self, f: Bdd) -> Add {
        let n = self.check(f);
        self.wrap(n)
    }

    /// Constant value of `d`, if it is a terminal.
    pub fn const_value<D: Diagram>(&self, d: D) -> Option<Value> {
        let n = self.check(d);
        self.value(n)
    }

    pub fn is_true(&self, f: Bdd) -> bool {
        self.check(f) == ONE
    }

    pub fn is_false(&self, f: Bdd) -> bool {
        self.check(f) == ZERO
    }

    // ---- inspection ---------------------------------------------------------

    /// Evaluate at a full assignment indexed by [`VarId`].
    pub fn eval_add<D: Diagram>(&self, d: D, assignment: &[bool]) -> Value {
        let mut n = self.check(d);
        loop {
            let node = self.node(n);
            if node.level == TERMINAL {
                return self.values[node.low as usize];
            }
            let v = self.var_at_level[node.level as usize] as usize;
            n = if assignment[v] { node.high } else { node.low };
        }
    }

    pub fn eval(&self, f: Bdd, assignment: &[bool]) -> bool {
        self.eval_add(f, assignment) != Value::ZERO
    }

    /// Number of distinct nodes reachable from `d`, terminals included.
    pub fn node_count<D: Diagram>(&self, d: D) -> usize {
        let mut seen = rustc_hash::FxHashSet::default();
        let mut stack = vec![self.check(d)];
        while let Some(n) = stack.pop() {
            if seen.insert(n) {
                let node = self.node(n);
                if node.level != TERMINAL {
                    stack.push(node.low);
                    stack.push(node.high);
                }
            }
        }
        seen.len()
    }

    /// Variables `d` depends on, in variable order.
    pub fn support<D: Diagram>(&self, d: D) -> Vec<VarId> {
        let mut seen = rustc_hash::FxHashSet::default();
        let mut levels = BTreeSet::new();
        let mut stack = vec![self.check(d)];
        while let Some(n) = stack.pop() {
            if seen.insert(n) {
                let node = self.node(n);
                if node.level != TERMINAL {
                    levels.insert(node.level);
                    stack.push(node.low);
                    stack.push(node.high);
                }
            }
        }
        levels
            .into_iter()
            .map(|l| VarId(self.var_at_level[l as usize]))
            .collect()
    }

    /// Distinct terminal values reachable in `d`.
    pub fn terminal_values<D: Diagram>(&self, d: D) -> BTreeSet<Value> {
        let mut seen = rustc_hash::FxHashSet::default();
        let mut out = BTreeSet::new();
        let mut stack = vec![self.check(d)];
        while let Some(n) = stack.pop() {
            if seen.insert(n) {
                let node = self.node(n);
                if node.level == TERMINAL {
                    out.insert(self.values[node.low as usize]);
                } else {
                    stack.push(node.low);
                    stack.push(node.high);
                }
            }
        }
        out
    }

    /// Walk every internal node reachable from `d` as
    /// `(id, var, low id, high id)`, children before parents.
    pub fn walk<D: Diagram>(&self, d: D, mut visit: impl FnMut(u32, VarId, u32, u32)) {
        let mut seen = rustc_hash::FxHashSet::default();
        self.walk_rec(self.check(d), &mut seen, &mut visit);
    }

    fn walk_rec(
        &self,
        n: u32,
        seen: &mut rustc_hash::FxHashSet<u32>,
        visit: &mut impl FnMut(u32, VarId, u32, u32),
    ) {
        if !seen.insert(n) {
            return;
        }
        let node = self.node(n);
        if node.level == TERMINAL {
            return;
        }
        self.walk_rec(node.low, seen, visit);
        self.walk_rec(node.high, seen, visit);
        visit(n, VarId(self.var_at_level[node.level as usize]), node.low, node.high);
    }

    /// Copy `d` from `other` into this manager. Both managers must declare
    /// the same number of variables; the copy is re-reduced under this
    /// manager's order.
    pub fn import<D: Diagram>(&mut self, other: &Manager, d: D) -> D {
        assert_eq!(self.var_count, other.var_count, "managers differ in variable count");
        let root = other.check(d);
        let mut memo: FxHashMap<u32, u32> = FxHashMap::default();
        let n = self.import_rec(other, root, &mut memo);
        self.wrap(n)
    }

    fn import_rec(&mut self, other: &Manager, n: u32, memo: &mut FxHashMap<u32, u32>) -> u32 {
        if let Some(&r) = memo.get(&n) {
            return r;
        }
        let node = other.node(n);
        let r = if node.level == TERMINAL {
            let v = other.values[node.low as usize];
            self.terminal(v)
        } else {
            let lo = self.import_rec(other, node.low, memo);
            let hi = self.import_rec(other, node.high, memo);
            let var = VarId(other.var_at_level[node.level as usize]);
            let sel = self.var(var).node;
            self.ite_rec(sel, hi, lo)
        };
        memo.insert(n, r);
        r
    }
}

impl std::fmt::Debug for Manager {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Manager")
            .field("id", &self.id)
            .field("var_count", &self.var_count)
            .field("nodes", &self.nodes.len())
            .finish()
    }
}
