use std::collections::HashMap;
use std::fmt::Write;

use super::explicit::ExplicitGame;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Player {
    /// The system: keeps the energy non-negative and picks the edge at its
    /// vertices.
    P0,
    /// The environment.
    P1,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexKind {
    Empty,
    Win0,
    Win1,
    Loss0,
    Loss1,
    /// A state of the concrete game.
    State(usize),
    /// An initial env choice.
    Init(u64),
    /// A state together with an environment move, waiting for the system.
    Move { state: usize, env: u64 },
}

pub const V_EMPTY: usize = 0;
pub const V_WIN0: usize = 1;
pub const V_WIN1: usize = 2;
pub const V_LOSS0: usize = 3;
pub const V_LOSS1: usize = 4;

/// Bipartite energy game with explicit trap cycles in place of deadlocks.
#[derive(Clone, Debug)]
pub struct ReducedGame {
    pub kind: Vec<VertexKind>,
    pub player: Vec<Player>,
    pub edges: Vec<Vec<(usize, i64)>>,
    /// Vertex of each concrete state.
    pub state_vertex: Vec<usize>,
    /// Vertex of each initial env choice.
    pub init_vertex: HashMap<u64, usize>,
    /// Vertex of each (state, env move).
    pub move_vertex: HashMap<(usize, u64), usize>,
}

impl ReducedGame {
    fn push(&mut self, kind: VertexKind, player: Player) -> usize {
        self.kind.push(kind);
        self.player.push(player);
        self.edges.push(Vec::new());
        self.kind.len() - 1
    }

    pub fn vertex_count(&self) -> usize {
        self.kind.len()
    }

    pub fn v1_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.kind.len()).filter(|&v| self.player[v] == Player::P1)
    }

    pub fn weight(&self, from: usize, to: usize) -> Option<i64> {
        self.edges[from].iter().find(|e| e.0 == to).map(|e| e.1)
    }

    pub fn label(&self, v: usize) -> String {
        match self.kind[v] {
            VertexKind::Empty => "empty".into(),
            VertexKind::Win0 => "win0".into(),
            VertexKind::Win1 => "win1".into(),
            VertexKind::Loss0 => "loss0".into(),
            VertexKind::Loss1 => "loss1".into(),
            VertexKind::State(i) => format!("s{i}"),
            VertexKind::Init(e) => format!("init{e:#x}"),
            VertexKind::Move { state, env } => format!("s{state}/{env:#x}"),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for v in 0..self.kind.len() {
            let es: Vec<String> = self.edges[v].iter().map(|(u, w)| format!("{u}:{w}")).collect();
            writeln!(out, "{v} {:?} {} -> {}", self.player[v], self.label(v), es.join(" ")).unwrap();
        }
        out
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph reduced {\n");
        for v in 0..self.kind.len() {
            let shape = if self.player[v] == Player::P0 { "box" } else { "ellipse" };
            writeln!(out, "  v{v} [label=\"{}\", shape={shape}];", self.label(v)).unwrap();
        }
        for (v, es) in self.edges.iter().enumerate() {
            for (u, w) in es {
                writeln!(out, "  v{v} -> v{u} [label=\"{w}\"];").unwrap();
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Builds the bipartite reduction. Every concrete state gets a vertex, so
/// credits of states can be read off directly.
pub fn reduce(g: &ExplicitGame) -> ReducedGame {
    let mut r = ReducedGame {
        kind: Vec::new(),
        player: Vec::new(),
        edges: Vec::new(),
        state_vertex: Vec::new(),
        init_vertex: HashMap::new(),
        move_vertex: HashMap::new(),
    };
    r.push(VertexKind::Empty, Player::P1);
    r.push(VertexKind::Win0, Player::P0);
    r.push(VertexKind::Win1, Player::P1);
    r.push(VertexKind::Loss0, Player::P0);
    r.push(VertexKind::Loss1, Player::P1);
    r.edges[V_WIN0].push((V_WIN1, 1));
    r.edges[V_WIN1].push((V_WIN0, 0));
    r.edges[V_LOSS0].push((V_LOSS1, -1));
    r.edges[V_LOSS1].push((V_LOSS0, 0));

    for i in 0..g.states.len() {
        let v = r.push(VertexKind::State(i), Player::P1);
        r.state_vertex.push(v);
    }

    if g.theta_e.is_empty() {
        r.edges[V_EMPTY].push((V_WIN0, 0));
    } else {
        for &e in &g.theta_e {
            let v = r.push(VertexKind::Init(e), Player::P0);
            r.init_vertex.insert(e, v);
            r.edges[V_EMPTY].push((v, 0));
            let targets: Vec<usize> = g.initial_states_for(e).map(|i| r.state_vertex[i]).collect();
            if targets.is_empty() {
                r.edges[v].push((V_LOSS1, -1));
            }
            for t in targets {
                r.edges[v].push((t, 0));
            }
        }
    }

    for (i, mvs) in g.moves.iter().enumerate() {
        let vs = r.state_vertex[i];
        if mvs.is_empty() {
            r.edges[vs].push((V_WIN0, 0));
        }
        for mv in mvs {
            let vt = r.push(VertexKind::Move { state: i, env: mv.env }, Player::P0);
            r.move_vertex.insert((i, mv.env), vt);
            r.edges[vs].push((vt, 0));
            if mv.responses.is_empty() {
                r.edges[vt].push((V_LOSS1, -1));
            }
            for &(j, w) in &mv.responses {
                r.edges[vt].push((r.state_vertex[j], w));
            }
        }
    }
    r
}
