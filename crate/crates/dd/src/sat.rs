use rustc_hash::FxHashMap;

use crate::manager::{ONE, TERMINAL, ZERO};
use crate::{Bdd, DdError, Manager, VarId};

/// Satisfying assignments of a set over a fixed list of variables, in
/// lexicographic order (first variable most significant, `false < true`).
pub struct SatIter<'a> {
    mgr: &'a Manager,
    levels: Vec<u32>,
    stack: Vec<(u32, usize, bool)>,
    current: Vec<bool>,
}

impl Iterator for SatIter<'_> {
    type Item = Vec<bool>;

    fn next(&mut self) -> Option<Vec<bool>> {
        while let Some((n, depth, bit)) = self.stack.pop() {
            if depth > 0 {
                self.current.truncate(depth - 1);
                self.current.push(bit);
            }
            if n == ZERO {
                continue;
            }
            if depth == self.levels.len() {
                debug_assert_eq!(n, ONE);
                return Some(self.current.clone());
            }
            let node = self.mgr.node(n);
            let (lo, hi) = if node.level == self.levels[depth] {
                (node.low, node.high)
            } else {
                (n, n)
            };
            self.stack.push((hi, depth + 1, true));
            self.stack.push((lo, depth + 1, false));
        }
        None
    }
}

impl Manager {
    fn support_levels(&self, f: Bdd, vars: &[VarId]) -> Result<Vec<u32>, DdError> {
        let levels = vars
            .iter()
            .map(|&v| self.check_var(v))
            .collect::<Result<Vec<_>, _>>()?;
        if levels.windows(2).any(|w| w[0] >= w[1]) {
            return Err(DdError::UnsortedSupport);
        }
        for v in self.support(f) {
            if levels.binary_search(&self.level(v)).is_err() {
                return Err(DdError::SupportNotCovered(v));
            }
        }
        Ok(levels)
    }

    /// Enumerate the satisfying assignments of `f` over `vars`, which must be
    /// listed in variable order and include every variable `f` depends on.
    pub fn sat_iter(&self, f: Bdd, vars: &[VarId]) -> Result<SatIter<'_>, DdError> {
        let levels = self.support_levels(f, vars)?;
        Ok(SatIter {
            mgr: self,
            levels,
            stack: vec![(self.check(f), 0, false)],
            current: Vec::new(),
        })
    }

    /// Number of satisfying assignments of `f` over `vars`.
    pub fn sat_count(&self, f: Bdd, vars: &[VarId]) -> Result<u128, DdError> {
        let levels = self.support_levels(f, vars)?;
        let pos = |level: u32| -> usize {
            if level == TERMINAL {
                levels.len()
            } else {
                levels.binary_search(&level).unwrap()
            }
        };
        let mut memo: FxHashMap<u32, u128> = FxHashMap::default();
        let root = self.check(f);
        let c = self.count_rec(root, &pos, &mut memo);
        Ok(c << pos(self.node(root).level))
    }

    fn count_rec(&self, n: u32, pos: &dyn Fn(u32) -> usize, memo: &mut FxHashMap<u32, u128>) -> u128 {
        if n == ZERO {
            return 0;
        }
        if n == ONE {
            return 1;
        }
        if let Some(&c) = memo.get(&n) {
            return c;
        }
        let node = self.node(n);
        let p = pos(node.level);
        let lo = self.count_rec(node.low, pos, memo) << (pos(self.node(node.low).level) - p - 1);
        let hi = self.count_rec(node.high, pos, memo) << (pos(self.node(node.high).level) - p - 1);
        memo.insert(n, lo + hi);
        lo + hi
    }
}
