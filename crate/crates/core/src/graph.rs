//! Immutable unweighted graphs, failure sets, and the edge-list format.
//!
//! Vertices are dense `0..n` indices. Adjacency lists are kept strictly
//! ascending, which is what every lexicographic tie-break downstream relies on.

use std::collections::BTreeSet;
use std::fmt;

use rand::RngCore;
use rand::SeedableRng;
use rand_xoshiro::SplitMix64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, ParseErrorKind, Result};

pub type Vertex = usize;

/// Hop distance; [`INF`] marks an unreachable vertex.
pub type Dist = u32;

/// Sentinel strictly greater than every finite distance.
pub const INF: Dist = Dist::MAX;

/// An edge in canonical form: `(min, max)` for undirected graphs, the arc
/// `(tail, head)` for directed ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge(pub Vertex, pub Vertex);

impl Edge {
    pub fn undirected(u: Vertex, v: Vertex) -> Self {
        if u <= v {
            Edge(u, v)
        } else {
            Edge(v, u)
        }
    }

    pub fn touches(&self, v: Vertex) -> bool {
        self.0 == v || self.1 == v
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.0, self.1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    directed: bool,
    out_adj: Vec<Vec<Vertex>>,
    // Only populated for directed graphs; undirected graphs answer
    // in-neighbour queries from `out_adj`.
    in_adj: Vec<Vec<Vertex>>,
    edges: Vec<Edge>,
}

impl Graph {
    /// Builds a validated graph. Rejects self-loops, parallel edges and
    /// out-of-range endpoints.
    pub fn from_edges<I>(n: usize, directed: bool, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        if n == 0 {
            return Err(Error::InvalidGraph("a graph needs at least one vertex".into()));
        }
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u},{v}) has an endpoint outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop on vertex {u}")));
            }
            let e = if directed { Edge(u, v) } else { Edge::undirected(u, v) };
            if !set.insert(e) {
                return Err(Error::InvalidGraph(format!("duplicate edge {e}")));
            }
        }
        Ok(Self::from_canonical(n, directed, set))
    }

    fn from_canonical(n: usize, directed: bool, edges: BTreeSet<Edge>) -> Self {
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = if directed { vec![Vec::new(); n] } else { Vec::new() };
        for &Edge(u, v) in &edges {
            out_adj[u].push(v);
            if directed {
                in_adj[v].push(u);
            } else {
                out_adj[v].push(u);
            }
        }
        for list in out_adj.iter_mut().chain(in_adj.iter_mut()) {
            list.sort_unstable();
        }
        Graph {
            n,
            directed,
            out_adj,
            in_adj,
            edges: edges.into_iter().collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    /// Canonical edges in ascending order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Out-neighbours (all neighbours when undirected), ascending.
    pub fn neighbors(&self, u: Vertex) -> &[Vertex] {
        &self.out_adj[u]
    }

    pub fn in_neighbors(&self, u: Vertex) -> &[Vertex] {
        if self.directed {
            &self.in_adj[u]
        } else {
            &self.out_adj[u]
        }
    }

    /// Number of incident edges (in + out for directed graphs).
    pub fn degree(&self, u: Vertex) -> usize {
        if self.directed {
            self.out_adj[u].len() + self.in_adj[u].len()
        } else {
            self.out_adj[u].len()
        }
    }

    /// Canonical form of the traversal `u -> v`.
    pub fn edge_key(&self, u: Vertex, v: Vertex) -> Edge {
        if self.directed {
            Edge(u, v)
        } else {
            Edge::undirected(u, v)
        }
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n && self.out_adj[u].binary_search(&v).is_ok()
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        self.has_edge(e.0, e.1)
    }

    /// Subgraph on the same vertex set with the given canonical edges.
    pub fn with_edges<I: IntoIterator<Item = Edge>>(&self, edges: I) -> Result<Graph> {
        let mut set = BTreeSet::new();
        for e in edges {
            if !self.contains_edge(e) {
                return Err(Error::UnknownEdge(e));
            }
            set.insert(e);
        }
        Ok(Self::from_canonical(self.n, self.directed, set))
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::UnknownVertex { vertex: v, n: self.n })
        }
    }
}

// ---------------------------------------------------------------------------
// Failures
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FailureMode {
    #[default]
    Edge,
    Vertex,
}

impl std::str::FromStr for FailureMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "edge" => Ok(FailureMode::Edge),
            "vertex" => Ok(FailureMode::Vertex),
            other => Err(Error::InvalidParameter(format!(
                "unknown failure mode {other:?} (expected edge or vertex)"
            ))),
        }
    }
}

impl fmt::Display for FailureMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FailureMode::Edge => "edge",
            FailureMode::Vertex => "vertex",
        })
    }
}

/// A single failed element. Serialised as `[u, v]` for edges and as a bare
/// index for vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Element {
    Edge(Edge),
    Vertex(Vertex),
}

impl Element {
    pub fn mode(&self) -> FailureMode {
        match self {
            Element::Edge(_) => FailureMode::Edge,
            Element::Vertex(_) => FailureMode::Vertex,
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Edge(e) => e.fmt(f),
            Element::Vertex(v) => write!(f, "{v}"),
        }
    }
}

/// Up to two failed elements of one kind. Item order is meaningful inside a
/// failure schedule (`e1` then `e2`); use [`FailureSpec::canonical`] for set
/// comparisons.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FailureSpec {
    pub mode: FailureMode,
    pub items: Vec<Element>,
}

impl FailureSpec {
    pub fn none(mode: FailureMode) -> Self {
        FailureSpec { mode, items: Vec::new() }
    }

    pub fn new(mode: FailureMode, items: Vec<Element>) -> Result<Self> {
        if items.len() > 2 {
            return Err(Error::InvalidFailure(format!(
                "{} failed elements given, at most 2 supported",
                items.len()
            )));
        }
        if items.iter().any(|e| e.mode() != mode) {
            return Err(Error::InvalidFailure(format!(
                "element kind does not match {mode} mode"
            )));
        }
        if items.len() == 2 && items[0] == items[1] {
            return Err(Error::InvalidFailure(format!("element {} listed twice", items[0])));
        }
        Ok(FailureSpec { mode, items })
    }

    pub fn edges<I: IntoIterator<Item = Edge>>(edges: I) -> Result<Self> {
        Self::new(FailureMode::Edge, edges.into_iter().map(Element::Edge).collect())
    }

    pub fn vertices<I: IntoIterator<Item = Vertex>>(vertices: I) -> Result<Self> {
        Self::new(FailureMode::Vertex, vertices.into_iter().map(Element::Vertex).collect())
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// Same failure with items sorted; equality of canonical forms is set
    /// equality.
    pub fn canonical(&self) -> Self {
        let mut items = self.items.clone();
        items.sort();
        FailureSpec { mode: self.mode, items }
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        self.items.contains(&Element::Vertex(v))
    }

    /// Checks that every item exists in `g` and, in edge mode, is given in
    /// the graph's canonical orientation.
    pub fn validate_against(&self, g: &Graph) -> Result<()> {
        for item in &self.items {
            match *item {
                Element::Edge(e) => {
                    if g.edge_key(e.0, e.1) != e || !g.contains_edge(e) {
                        return Err(Error::UnknownEdge(e));
                    }
                }
                Element::Vertex(v) => g.check_vertex(v)?,
            }
        }
        Ok(())
    }
}

impl fmt::Display for FailureSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, item) in self.items.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            item.fmt(f)?;
        }
        f.write_str("}")
    }
}

/// Logical view of a graph with some vertices and edges removed. The
/// underlying [`Graph`] is never touched.
#[derive(Clone, Debug)]
pub struct GraphView<'g> {
    graph: &'g Graph,
    blocked_vertex: Vec<bool>,
    // At most a handful of entries; a linear scan beats hashing here.
    blocked_edges: Vec<Edge>,
}

impl<'g> GraphView<'g> {
    pub fn full(graph: &'g Graph) -> Self {
        GraphView {
            graph,
            blocked_vertex: vec![false; graph.n()],
            blocked_edges: Vec::new(),
        }
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    /// Removes every element of `f`. Removal has set semantics, so applying
    /// several failure sets in any order yields the same view.
    pub fn remove(&mut self, f: &FailureSpec) -> Result<()> {
        f.validate_against(self.graph)?;
        for item in &f.items {
            match *item {
                Element::Edge(e) => self.block_edge(e),
                Element::Vertex(v) => self.block_vertex(v),
            }
        }
        Ok(())
    }

    pub fn block_vertex(&mut self, v: Vertex) {
        self.blocked_vertex[v] = true;
    }

    pub fn block_edge(&mut self, e: Edge) {
        if !self.blocked_edges.contains(&e) {
            self.blocked_edges.push(e);
        }
    }

    pub fn is_vertex_alive(&self, v: Vertex) -> bool {
        !self.blocked_vertex[v]
    }

    /// Whether the traversal `u -> v` is usable (both endpoints alive and the
    /// edge present and not removed).
    pub fn can_traverse(&self, u: Vertex, v: Vertex) -> bool {
        self.is_vertex_alive(u)
            && self.is_vertex_alive(v)
            && self.graph.has_edge(u, v)
            && !self.edge_blocked(u, v)
    }

    fn edge_blocked(&self, u: Vertex, v: Vertex) -> bool {
        !self.blocked_edges.is_empty() && self.blocked_edges.contains(&self.graph.edge_key(u, v))
    }

    /// Usable out-neighbours of `u`, ascending. Empty when `u` is removed.
    pub fn out_neighbors(&self, u: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        let alive = self.is_vertex_alive(u);
        self.graph
            .neighbors(u)
            .iter()
            .copied()
            .filter(move |&w| alive && self.is_vertex_alive(w) && !self.edge_blocked(u, w))
    }

    /// Like [`out_neighbors`](Self::out_neighbors) but ignores whether `u`
    /// itself is blocked. Used to leave a vertex that is otherwise off limits.
    pub(crate) fn exits(&self, u: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.graph
            .neighbors(u)
            .iter()
            .copied()
            .filter(move |&w| self.is_vertex_alive(w) && !self.edge_blocked(u, w))
    }

    /// Usable in-neighbours of `u`, ascending.
    pub fn in_neighbors(&self, u: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        let alive = self.is_vertex_alive(u);
        self.graph
            .in_neighbors(u)
            .iter()
            .copied()
            .filter(move |&w| alive && self.is_vertex_alive(w) && !self.edge_blocked(w, u))
    }
}

/// `G \ F` as a view over `g`.
pub fn remove_failures<'g>(g: &'g Graph, f: &FailureSpec) -> Result<GraphView<'g>> {
    let mut view = GraphView::full(g);
    view.remove(f)?;
    Ok(view)
}

// ---------------------------------------------------------------------------
// Edge-list format
// ---------------------------------------------------------------------------

/// Parses the edge-list format: a header line `<n> <m> <directed|undirected>`
/// followed by exactly `m` lines `<u> <v>`. Blank lines and lines starting
/// with `#` are ignored.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        kind: ParseErrorKind::MalformedHeader,
    })?;
    let malformed = || Error::Parse {
        line: header_line,
        kind: ParseErrorKind::MalformedHeader,
    };
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 3 {
        return Err(malformed());
    }
    let n: usize = fields[0].parse().map_err(|_| malformed())?;
    let m: usize = fields[1].parse().map_err(|_| malformed())?;
    let directed = match fields[2] {
        "directed" => true,
        "undirected" => false,
        _ => return Err(malformed()),
    };
    if n == 0 {
        return Err(malformed());
    }

    let mut edges = BTreeSet::new();
    let mut found = 0usize;
    let mut last_line = header_line;
    for (line, body) in lines {
        last_line = line;
        found += 1;
        if found > m {
            continue;
        }
        let err = |kind| Error::Parse { line, kind };
        let mut it = body.split_whitespace();
        let (Some(a), Some(b), None) = (it.next(), it.next(), it.next()) else {
            return Err(err(ParseErrorKind::MalformedEdge));
        };
        let u: u64 = a.parse().map_err(|_| err(ParseErrorKind::MalformedEdge))?;
        let v: u64 = b.parse().map_err(|_| err(ParseErrorKind::MalformedEdge))?;
        for x in [u, v] {
            if x >= n as u64 {
                return Err(err(ParseErrorKind::VertexOutOfRange { index: x, n }));
            }
        }
        let (u, v) = (u as usize, v as usize);
        if u == v {
            return Err(err(ParseErrorKind::SelfLoop(u)));
        }
        let e = if directed { Edge(u, v) } else { Edge::undirected(u, v) };
        if !edges.insert(e) {
            return Err(err(ParseErrorKind::DuplicateEdge(u, v)));
        }
    }
    if found != m {
        return Err(Error::Parse {
            line: last_line,
            kind: ParseErrorKind::EdgeCountMismatch { expected: m, found },
        });
    }
    Ok(Graph::from_canonical(n, directed, edges))
}

/// Inverse of [`parse_graph`]: header plus one line per canonical edge in
/// ascending order, no trailing newline.
pub fn serialize_graph(g: &Graph) -> String {
    let mut out = format!(
        "{} {} {}",
        g.n(),
        g.m(),
        if g.is_directed() { "directed" } else { "undirected" }
    );
    for e in g.edges() {
        out.push_str(&format!("\n{} {}", e.0, e.1));
    }
    out
}

// ---------------------------------------------------------------------------
// Generators
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphModel {
    Gnp,
    Path,
    Cycle,
    Complete,
}

impl std::str::FromStr for GraphModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gnp" => Ok(GraphModel::Gnp),
            "path" => Ok(GraphModel::Path),
            "cycle" => Ok(GraphModel::Cycle),
            "complete" => Ok(GraphModel::Complete),
            other => Err(Error::InvalidParameter(format!("unknown graph model {other:?}"))),
        }
    }
}

/// Uniform draw in `[0, 1)` from the top 53 bits of one SplitMix64 output.
pub(crate) fn unit_f64(rng: &mut SplitMix64) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Deterministic graph generator.
///
/// `gnp` walks candidate edges in canonical order (`(u, v)` with `u < v`
/// lexicographically for undirected graphs, every ordered pair `u != v` for
/// directed ones) and keeps each one when a fresh SplitMix64 draw, scaled to
/// `[0, 1)`, falls below `p`. The other models ignore the seed and reject `p`.
pub fn gen_graph(
    model: GraphModel,
    n: usize,
    p: Option<f64>,
    seed: u64,
    directed: bool,
) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    if model != GraphModel::Gnp && p.is_some() {
        return Err(Error::InvalidParameter(format!(
            "edge probability only applies to the gnp model, not {model:?}"
        )));
    }
    let mut edges = Vec::new();
    match model {
        GraphModel::Gnp => {
            let p = p.ok_or_else(|| Error::InvalidParameter("gnp needs an edge probability".into()))?;
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidParameter(format!("p = {p} is not in [0, 1]")));
            }
            let mut rng = SplitMix64::seed_from_u64(seed);
            for u in 0..n {
                let lo = if directed { 0 } else { u + 1 };
                for v in lo..n {
                    if u != v && unit_f64(&mut rng) < p {
                        edges.push((u, v));
                    }
                }
            }
        }
        GraphModel::Path => edges.extend((1..n).map(|i| (i - 1, i))),
        GraphModel::Cycle => {
            if n < 3 && !(directed && n == 2) {
                return Err(Error::InvalidParameter(format!("a simple cycle needs n >= 3, got {n}")));
            }
            edges.extend((0..n).map(|i| (i, (i + 1) % n)));
        }
        GraphModel::Complete => {
            for u in 0..n {
                for v in 0..n {
                    if u != v && (directed || u < v) {
                        edges.push((u, v));
                    }
                }
            }
        }
    }
    Graph::from_edges(n, directed, edges)
}
