//! The Postnikov graph of a Le diagram and path systems in it.
//!
//! Internal vertices are the white boxes. Each row `i` of the shape has a
//! source `r_i` feeding the rightmost white box of that row; each column `j`
//! has a sink `c_j` fed by the bottom-most white box of that column. From a
//! white box there is an edge to the next white box on its left and one to
//! the next white box below it.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::{self, Write as _};

use crate::error::{Error, Result};
use crate::qtorus::{inversions, TorusElement};
use crate::shapes::{IndexSet, LeDiagram, Square};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Vertex {
    Row(usize),
    Internal(Square),
    Col(usize),
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vertex::Row(i) => write!(f, "r_{i}"),
            Vertex::Internal((i, j)) => write!(f, "b_{i}_{j}"),
            Vertex::Col(j) => write!(f, "c_{j}"),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum EdgeKind {
    /// `r_i → (i, k)`.
    Entry,
    /// `(i, j) → (i, j⁻)`.
    Horizontal,
    /// `(i, j) → (i⁺, j)`.
    Vertical,
    /// bottom-most white box of column `j` `→ c_j`.
    Exit,
}

impl EdgeKind {
    pub fn is_horizontal(self) -> bool {
        matches!(self, EdgeKind::Entry | EdgeKind::Horizontal)
    }
}

#[derive(Clone, Debug)]
pub struct Edge {
    pub from: Vertex,
    pub to: Vertex,
    pub kind: EdgeKind,
    pub weight: TorusElement,
}

impl Edge {
    /// Row of a horizontal edge.
    pub fn row(&self) -> Option<usize> {
        match (self.kind, self.to) {
            (EdgeKind::Entry | EdgeKind::Horizontal, Vertex::Internal((i, _))) => Some(i),
            _ => None,
        }
    }

    /// Column where a horizontal edge starts (`None` for entry edges).
    pub fn col1(&self) -> Option<usize> {
        match (self.kind, self.from) {
            (EdgeKind::Horizontal, Vertex::Internal((_, j))) => Some(j),
            _ => None,
        }
    }

    /// Column where a horizontal edge ends.
    pub fn col2(&self) -> Option<usize> {
        match (self.kind, self.to) {
            (EdgeKind::Entry | EdgeKind::Horizontal, Vertex::Internal((_, j))) => Some(j),
            _ => None,
        }
    }
}

/// A directed path given by its vertices.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Path {
    pub vertices: Vec<Vertex>,
}

impl Path {
    pub fn source(&self) -> Vertex {
        self.vertices[0]
    }

    pub fn sink(&self) -> Vertex {
        *self.vertices.last().expect("paths are nonempty")
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in self.vertices.iter().enumerate() {
            if k > 0 {
                write!(f, " -> ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TurnKind {
    /// Horizontal in, vertical out.
    Gamma,
    /// Vertical in, horizontal out.
    Bottom,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Turn {
    pub kind: TurnKind,
    pub at: Square,
}

/// Vertex-disjoint or not, a tuple of paths from `r_{i_1}, …, r_{i_t}` in that order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PathSystem {
    pub paths: Vec<Path>,
}

impl PathSystem {
    pub fn sources(&self) -> Vec<usize> {
        self.paths.iter().map(|p| boundary_index(p.source())).collect()
    }

    pub fn sinks(&self) -> Vec<usize> {
        self.paths.iter().map(|p| boundary_index(p.sink())).collect()
    }

    /// `σ` with path `s` ending at the `σ(s)`-th smallest sink (0-based).
    pub fn permutation(&self) -> Vec<usize> {
        let sinks = self.sinks();
        let mut sorted = sinks.clone();
        sorted.sort_unstable();
        sinks.iter().map(|x| sorted.binary_search(x).expect("sink present")).collect()
    }

    pub fn inversions(&self) -> usize {
        inversions(&self.permutation())
    }

    pub fn is_vertex_disjoint(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.paths.iter().flat_map(|p| &p.vertices).all(|v| seen.insert(*v))
    }
}

fn boundary_index(v: Vertex) -> usize {
    match v {
        Vertex::Row(i) | Vertex::Col(i) => i,
        Vertex::Internal(_) => 0,
    }
}

#[derive(Clone, Debug)]
pub struct PostnikovGraph {
    diagram: LeDiagram,
    edges: Vec<Edge>,
    /// Outgoing edge ids per vertex, horizontal edges first.
    out: BTreeMap<Vertex, Vec<usize>>,
}

impl PostnikovGraph {
    pub fn build(diagram: &LeDiagram) -> Self {
        let shape = diagram.shape();
        let mut edges = Vec::new();
        let mut out: BTreeMap<Vertex, Vec<usize>> = BTreeMap::new();
        for i in 1..=shape.rows() {
            out.insert(Vertex::Row(i), Vec::new());
        }
        for sq in diagram.white_boxes() {
            out.insert(Vertex::Internal(sq), Vec::new());
        }
        for j in 1..=shape.cols() {
            out.insert(Vertex::Col(j), Vec::new());
        }
        let mut push = |from: Vertex, to: Vertex, kind: EdgeKind, weight: TorusElement| {
            out.get_mut(&from).expect("vertex exists").push(edges.len());
            edges.push(Edge { from, to, kind, weight });
        };

        for i in 1..=shape.rows() {
            if let Some(k) = (1..=shape.row_len(i)).rev().find(|&k| diagram.is_white((i, k))) {
                let w = TorusElement::generator((i, k));
                push(Vertex::Row(i), Vertex::Internal((i, k)), EdgeKind::Entry, w);
            }
        }
        for (i, j) in diagram.white_boxes() {
            if let Some(l) = (1..j).rev().find(|&l| diagram.is_white((i, l))) {
                let w = &TorusElement::generator_pow((i, j), -1) * &TorusElement::generator((i, l));
                push(Vertex::Internal((i, j)), Vertex::Internal((i, l)), EdgeKind::Horizontal, w);
            }
            let below = (i + 1..=shape.col_len(j)).find(|&k| diagram.is_white((k, j)));
            match below {
                Some(k) => {
                    push(Vertex::Internal((i, j)), Vertex::Internal((k, j)), EdgeKind::Vertical, TorusElement::one())
                }
                None => push(Vertex::Internal((i, j)), Vertex::Col(j), EdgeKind::Exit, TorusElement::one()),
            }
        }
        PostnikovGraph { diagram: diagram.clone(), edges, out }
    }

    pub fn diagram(&self) -> &LeDiagram {
        &self.diagram
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.out.keys().copied()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn out_edges(&self, v: Vertex) -> impl Iterator<Item = &Edge> + '_ {
        self.out.get(&v).into_iter().flatten().map(move |&e| &self.edges[e])
    }

    pub fn edge(&self, from: Vertex, to: Vertex) -> Option<&Edge> {
        self.out_edges(from).find(|e| e.to == to)
    }

    /// Kahn's algorithm; `None` if a directed cycle exists.
    pub fn topological_order(&self) -> Option<Vec<Vertex>> {
        let mut indeg: BTreeMap<Vertex, usize> = self.out.keys().map(|&v| (v, 0)).collect();
        for e in &self.edges {
            *indeg.get_mut(&e.to)? += 1;
        }
        let mut queue: VecDeque<Vertex> = indeg.iter().filter(|(_, &d)| d == 0).map(|(&v, _)| v).collect();
        let mut order = Vec::with_capacity(indeg.len());
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for e in self.out_edges(v) {
                let d = indeg.get_mut(&e.to)?;
                *d -= 1;
                if *d == 0 {
                    queue.push_back(e.to);
                }
            }
        }
        (order.len() == self.out.len()).then_some(order)
    }

    /// All paths from `from` to `to`, depth first with horizontal steps tried first.
    pub fn paths_between(&self, from: Vertex, to: Vertex) -> Vec<Path> {
        let mut out = Vec::new();
        let mut stack = vec![from];
        self.dfs(&mut stack, &mut |v| v == to, &mut |p| out.push(p));
        out
    }

    /// All paths `r_i ⇒ c_j`.
    pub fn enumerate_paths(&self, i: usize, j: usize) -> Vec<Path> {
        self.paths_between(Vertex::Row(i), Vertex::Col(j))
    }

    /// Every path starting at `from` and ending at some column sink.
    pub fn paths_to_sinks(&self, from: Vertex) -> Vec<Path> {
        let mut out = Vec::new();
        let mut stack = vec![from];
        self.dfs(&mut stack, &mut |v| matches!(v, Vertex::Col(_)), &mut |p| out.push(p));
        out
    }

    fn dfs(&self, stack: &mut Vec<Vertex>, is_target: &mut dyn FnMut(Vertex) -> bool, emit: &mut dyn FnMut(Path)) {
        let v = *stack.last().expect("stack nonempty");
        if is_target(v) {
            emit(Path { vertices: stack.clone() });
            return;
        }
        for e in self.out.get(&v).into_iter().flatten() {
            stack.push(self.edges[*e].to);
            self.dfs(stack, is_target, emit);
            stack.pop();
        }
    }

    /// Ordered product of the edge weights along `p`.
    pub fn path_weight(&self, p: &Path) -> TorusElement {
        let mut w = TorusElement::one();
        for pair in p.vertices.windows(2) {
            let e = self.edge(pair[0], pair[1]).expect("consecutive vertices are joined by an edge");
            w = &w * &e.weight;
        }
        w
    }

    /// Γ- and ⊥-turns of `p` in order of traversal.
    pub fn turns(&self, p: &Path) -> Vec<Turn> {
        let mut out = Vec::new();
        for tri in p.vertices.windows(3) {
            let (Some(a), Some(b)) = (self.edge(tri[0], tri[1]), self.edge(tri[1], tri[2])) else {
                continue;
            };
            let Vertex::Internal(at) = tri[1] else { continue };
            match (a.kind.is_horizontal(), b.kind.is_horizontal()) {
                (true, false) => out.push(Turn { kind: TurnKind::Gamma, at }),
                (false, true) => out.push(Turn { kind: TurnKind::Bottom, at }),
                _ => {}
            }
        }
        out
    }

    /// `t_{v_1} t_{v_2}^{-1} t_{v_3} ⋯` over the turn sequence.
    pub fn turn_weight(turns: &[Turn]) -> TorusElement {
        let mut w = TorusElement::one();
        for (k, t) in turns.iter().enumerate() {
            let e = if k % 2 == 0 { 1 } else { -1 };
            w = &w * &TorusElement::generator_pow(t.at, e);
        }
        w
    }

    /// `w(P_1) ⋯ w(P_t)`.
    pub fn system_weight(&self, s: &PathSystem) -> TorusElement {
        let mut w = TorusElement::one();
        for p in &s.paths {
            w = &w * &self.path_weight(p);
        }
        w
    }

    fn check_sizes(&self, rows: &[usize], cols: &[usize]) -> Result<()> {
        if rows.len() != cols.len() {
            return Err(Error::SizeMismatch(rows.len(), cols.len()));
        }
        let shape = self.diagram.shape();
        let good = |v: &[usize], max: usize| v.windows(2).all(|w| w[0] < w[1]) && v.iter().all(|&x| x >= 1 && x <= max);
        if !good(rows, shape.rows()) || !good(cols, shape.cols()) {
            return Err(Error::Invalid(format!(
                "rows {rows:?} and columns {cols:?} must be increasing and inside the shape"
            )));
        }
        Ok(())
    }

    /// Decides existence of a vertex-disjoint system from `rows` to `cols`
    /// (any pairing) by unit-capacity max flow on the vertex-split graph.
    pub fn exists_disjoint_system(&self, rows: &[usize], cols: &[usize]) -> Result<bool> {
        Ok(self.find_disjoint_system(rows, cols)?.is_some())
    }

    /// A vertex-disjoint system read off a maximum flow, if one exists.
    pub fn find_disjoint_system(&self, rows: &[usize], cols: &[usize]) -> Result<Option<PathSystem>> {
        self.check_sizes(rows, cols)?;
        if rows.is_empty() {
            return Ok(Some(PathSystem { paths: Vec::new() }));
        }
        let verts: Vec<Vertex> = self.vertices().collect();
        let id: BTreeMap<Vertex, usize> = verts.iter().enumerate().map(|(k, v)| (*v, k)).collect();
        // Node v splits into 2v (in) and 2v+1 (out); source and sink come last.
        let (s, t) = (2 * verts.len(), 2 * verts.len() + 1);
        let mut net = UnitNetwork::new(2 * verts.len() + 2);
        for k in 0..verts.len() {
            net.add_edge(2 * k, 2 * k + 1);
        }
        for e in &self.edges {
            net.add_edge(2 * id[&e.from] + 1, 2 * id[&e.to]);
        }
        for &i in rows {
            net.add_edge(s, 2 * id[&Vertex::Row(i)]);
        }
        for &j in cols {
            net.add_edge(2 * id[&Vertex::Col(j)] + 1, t);
        }
        if net.max_flow(s, t) < rows.len() {
            return Ok(None);
        }
        let mut paths = Vec::new();
        for &i in rows {
            let mut node = 2 * id[&Vertex::Row(i)] + 1;
            let mut vs = vec![Vertex::Row(i)];
            while node != t {
                let next = net.take_flow_edge(node).ok_or_else(|| Error::Internal("broken flow".into()))?;
                if next == t {
                    break;
                }
                vs.push(verts[next / 2]);
                node = next + 1;
                net.take_flow_edge(next);
            }
            paths.push(Path { vertices: vs });
        }
        Ok(Some(PathSystem { paths }))
    }

    /// Every vertex-disjoint system from `rows` to `cols`, found by backtracking
    /// with an occupied-vertex set. Paths are listed by increasing source row.
    pub fn enumerate_disjoint_systems(&self, rows: &[usize], cols: &[usize]) -> Result<Vec<PathSystem>> {
        self.check_sizes(rows, cols)?;
        let targets: BTreeSet<Vertex> = cols.iter().map(|&j| Vertex::Col(j)).collect();
        let mut out = Vec::new();
        let mut occupied = BTreeSet::new();
        let mut chosen = Vec::new();
        self.backtrack(rows, &targets, &mut occupied, &mut chosen, &mut out);
        Ok(out)
    }

    fn backtrack(
        &self,
        rows: &[usize],
        targets: &BTreeSet<Vertex>,
        occupied: &mut BTreeSet<Vertex>,
        chosen: &mut Vec<Path>,
        out: &mut Vec<PathSystem>,
    ) {
        let Some((&i, rest)) = rows.split_first() else {
            out.push(PathSystem { paths: chosen.clone() });
            return;
        };
        let mut candidates = Vec::new();
        let mut stack = vec![Vertex::Row(i)];
        self.dfs_avoiding(&mut stack, occupied, targets, &mut candidates);
        for p in candidates {
            for v in &p.vertices {
                occupied.insert(*v);
            }
            chosen.push(p);
            self.backtrack(rest, targets, occupied, chosen, out);
            let p = chosen.pop().expect("just pushed");
            for v in &p.vertices {
                occupied.remove(v);
            }
        }
    }

    fn dfs_avoiding(
        &self,
        stack: &mut Vec<Vertex>,
        occupied: &BTreeSet<Vertex>,
        targets: &BTreeSet<Vertex>,
        out: &mut Vec<Path>,
    ) {
        let v = *stack.last().expect("stack nonempty");
        if occupied.contains(&v) {
            return;
        }
        if targets.contains(&v) {
            out.push(Path { vertices: stack.clone() });
            return;
        }
        for e in self.out_edges(v) {
            stack.push(e.to);
            self.dfs_avoiding(stack, occupied, targets, out);
            stack.pop();
        }
    }

    /// Graphviz rendering. Horizontal edges carry their weight as a label.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph postnikov {\n  rankdir=LR;\n");
        for v in self.vertices() {
            let _ = writeln!(s, "  \"{v}\";");
        }
        for e in &self.edges {
            if e.kind.is_horizontal() {
                let _ = writeln!(s, "  \"{}\" -> \"{}\" [label=\"{}\"];", e.from, e.to, e.weight);
            } else {
                let _ = writeln!(s, "  \"{}\" -> \"{}\";", e.from, e.to);
            }
        }
        s.push_str("}\n");
        s
    }
}

/// The same graph with boundary vertices renamed by Plücker labels: `r_i`
/// carries `γ_i` and `c_{n−m+1−j}` carries `a_j`, where `a_1 < … < a_{n−m}`
/// is the complement of γ.
#[derive(Clone, Debug)]
pub struct RelabeledGraph {
    pub graph: PostnikovGraph,
    source_labels: BTreeMap<usize, usize>,
    sink_labels: BTreeMap<usize, usize>,
}

impl RelabeledGraph {
    pub fn new(graph: PostnikovGraph, m: usize, n: usize, gamma: &IndexSet) -> Self {
        let rows = graph.diagram().shape().rows();
        let cols = graph.diagram().shape().cols();
        let a = gamma.complement(n);
        let source_labels = (1..=rows).map(|i| (gamma.as_slice()[i - 1], i)).collect();
        let sink_labels = (1..=cols).map(|c| (a[n - m - c], c)).collect();
        RelabeledGraph { graph, source_labels, sink_labels }
    }

    /// Looks up boundary vertices by label; labels without a vertex yield `None`.
    pub fn vertices_for(&self, sources: &[usize], sinks: &[usize]) -> Option<(Vec<usize>, Vec<usize>)> {
        let mut rows: Vec<usize> = sources.iter().map(|l| self.source_labels.get(l).copied()).collect::<Option<_>>()?;
        let mut cols: Vec<usize> = sinks.iter().map(|l| self.sink_labels.get(l).copied()).collect::<Option<_>>()?;
        rows.sort_unstable();
        cols.sort_unstable();
        Some((rows, cols))
    }

    pub fn exists_disjoint_system(&self, sources: &[usize], sinks: &[usize]) -> Result<bool> {
        match self.vertices_for(sources, sinks) {
            Some((rows, cols)) => self.graph.exists_disjoint_system(&rows, &cols),
            None => Ok(false),
        }
    }
}

/// Residual network with unit capacities.
struct UnitNetwork {
    adj: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<u8>,
}

impl UnitNetwork {
    fn new(n: usize) -> Self {
        UnitNetwork { adj: vec![Vec::new(); n], to: Vec::new(), cap: Vec::new() }
    }

    fn add_edge(&mut self, u: usize, v: usize) {
        self.adj[u].push(self.to.len());
        self.to.push(v);
        self.cap.push(1);
        self.adj[v].push(self.to.len());
        self.to.push(u);
        self.cap.push(0);
    }

    fn max_flow(&mut self, s: usize, t: usize) -> usize {
        let mut flow = 0;
        loop {
            let mut prev = vec![usize::MAX; self.adj.len()];
            let mut queue = VecDeque::from([s]);
            prev[s] = usize::MAX - 1;
            while let Some(u) = queue.pop_front() {
                for &e in &self.adj[u] {
                    let v = self.to[e];
                    if self.cap[e] > 0 && prev[v] == usize::MAX {
                        prev[v] = e;
                        queue.push_back(v);
                    }
                }
            }
            if prev[t] == usize::MAX {
                return flow;
            }
            let mut v = t;
            while v != s {
                let e = prev[v];
                self.cap[e] -= 1;
                self.cap[e ^ 1] += 1;
                v = self.to[e ^ 1];
            }
            flow += 1;
        }
    }

    /// Follows and consumes one saturated forward edge out of `u`.
    fn take_flow_edge(&mut self, u: usize) -> Option<usize> {
        for &e in &self.adj[u] {
            if e % 2 == 0 && self.cap[e] == 0 && self.cap[e ^ 1] > 0 {
                self.cap[e ^ 1] = 0;
                return Some(self.to[e]);
            }
        }
        None
    }
}
