use std::fmt::Write;

use crate::{Diagram, Manager, Value, VarId};

impl Manager {
    /// Graphviz rendering of `d`. Dashed edges are low (`false`) branches.
    pub fn to_dot<D: Diagram>(&self, d: D, name: impl Fn(VarId) -> String) -> String {
        let mut out = String::from("digraph dd {\n  node [shape=circle];\n");
        let mut terminals = std::collections::BTreeMap::<u32, Value>::new();
        let root = self.check(d);
        let mut note = |m: &Manager, n: u32| {
            if let Some(v) = m.value(n) {
                terminals.insert(n, v);
            }
        };
        note(self, root);
        let mut edges = String::new();
        self.walk(d, |id, var, lo, hi| {
            let _ = writeln!(out, "  n{id} [label=\"{}\"];", name(var));
            let _ = writeln!(edges, "  n{id} -> n{lo} [style=dashed];");
            let _ = writeln!(edges, "  n{id} -> n{hi};");
            note(self, lo);
            note(self, hi);
        });
        for (id, v) in terminals {
            let _ = writeln!(out, "  n{id} [shape=box,label=\"{v}\"];");
        }
        out.push_str(&edges);
        out.push_str("}\n");
        out
    }
}
