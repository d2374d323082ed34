//! Replacement-path machinery: lexicographically smallest shortest paths,
//! preferred replacement paths under one or two failures, and the failure
//! schedule that orders them.
//!
//! Terminology used throughout:
//!
//! * `P0` is the lexicographically smallest shortest `s -> v` path.
//! * For a failed element `e1` on `P0`, `P1` is the preferred path avoiding
//!   `e1`; for a second element `e2` on `P1`, the preferred path avoiding
//!   both is what the builder finally consumes.
//! * A path *leaves* a base path before a failed element exactly once when,
//!   after its last vertex in common with the base prefix, it never touches
//!   any vertex of the base that precedes the failed element again.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::bfs::{descend, distances_to};
use crate::error::{Error, Result};
use crate::graph::{remove_failures, Edge, Element, FailureMode, FailureSpec, Graph, GraphView, Vertex, INF};

/// An explicit replacement path together with the failure it avoids.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathRecord {
    pub vertices: Vec<Vertex>,
    pub source: Vertex,
    pub dest: Vertex,
    pub avoided: FailureSpec,
    pub length: usize,
    /// Vertex at which the path leaves `P0` (only set when it avoids a failure).
    pub div0: Option<Vertex>,
    /// Vertex at which the path leaves `P1` (only set for two failures).
    pub div1: Option<Vertex>,
}

impl PathRecord {
    fn new(vertices: Vec<Vertex>, avoided: FailureSpec, div0: Option<Vertex>, div1: Option<Vertex>) -> Self {
        PathRecord {
            source: vertices[0],
            dest: *vertices.last().unwrap(),
            length: vertices.len() - 1,
            vertices,
            avoided,
            div0,
            div1,
        }
    }

    /// `LastE(P)` in canonical form; `None` for the trivial path.
    pub fn last_edge(&self, g: &Graph) -> Option<Edge> {
        match self.vertices.as_slice() {
            [.., u, v] => Some(g.edge_key(*u, *v)),
            _ => None,
        }
    }
}

/// One single-failure link of the chain: the element `e1` on `P0`, the
/// preferred path avoiding it, and the detour `D0(P1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainEntry {
    pub e1: Element,
    pub p1: Option<PathRecord>,
    pub d0: Option<Vec<Vertex>>,
}

/// Base paths of one `(source, target)` pair. `entries` follow schedule
/// order: farthest element from the source first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseChain {
    pub source: Vertex,
    pub target: Vertex,
    pub mode: FailureMode,
    pub p0: Option<PathRecord>,
    pub entries: Vec<ChainEntry>,
}

impl BaseChain {
    pub fn entry(&self, e1: Element) -> Option<&ChainEntry> {
        self.entries.iter().find(|c| c.e1 == e1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScheduleEntry {
    pub failure: FailureSpec,
    /// Index into [`BaseChain::entries`] of the `e1` this failure extends.
    pub chain_entry: Option<usize>,
}

/// Failures in processing order: the empty failure, single failures on `P0`
/// farthest-first, then pairs ordered by `e1` (farthest on `P0` first) and
/// within one `e1` by `e2` (farthest on `P1` first).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailureSchedule {
    pub entries: Vec<ScheduleEntry>,
}

impl FailureSchedule {
    pub fn failures(&self) -> impl Iterator<Item = &FailureSpec> {
        self.entries.iter().map(|e| &e.failure)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Lexicographically smallest among the minimum-hop `s -> v` paths of `view`,
/// or `None` if `v` is unreachable.
pub fn lex_shortest_path(view: &GraphView<'_>, s: Vertex, v: Vertex) -> Option<Vec<Vertex>> {
    if !view.is_vertex_alive(s) {
        return None;
    }
    let dist = distances_to(view, v);
    (dist[s] != INF).then(|| descend(view, &dist, s))
}

/// Number of leading vertices of `path` that come strictly before `elem`,
/// i.e. the prefix a replacement path is allowed to leave from. `None` when
/// `elem` is not on the path (vertex elements must be interior).
pub fn prefix_before(g: &Graph, path: &[Vertex], elem: Element) -> Option<usize> {
    match elem {
        Element::Edge(e) => path.windows(2).position(|w| g.edge_key(w[0], w[1]) == e).map(|i| i + 1),
        Element::Vertex(x) => path
            .iter()
            .position(|&u| u == x)
            .filter(|&i| i > 0 && i + 1 < path.len()),
    }
}

/// Failable elements of `path` in order from its source: all edges, or the
/// interior vertices in vertex mode.
pub fn path_elements(g: &Graph, path: &[Vertex], mode: FailureMode) -> Vec<Element> {
    match mode {
        FailureMode::Edge => path
            .windows(2)
            .map(|w| Element::Edge(g.edge_key(w[0], w[1])))
            .collect(),
        FailureMode::Vertex => match path.len() {
            0..=2 => Vec::new(),
            len => path[1..len - 1].iter().map(|&x| Element::Vertex(x)).collect(),
        },
    }
}

pub(crate) fn common_prefix_len(a: &[Vertex], b: &[Vertex]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

/// Last maximal subpath of `path` that runs outside the union of `bases`:
/// it starts and ends on base vertices and either has interior vertices off
/// the bases or uses a non-base edge. Endpoints are included.
pub fn last_detour(g: &Graph, path: &[Vertex], bases: &[&[Vertex]]) -> Option<Vec<Vertex>> {
    let on_base: HashSet<Vertex> = bases.iter().flat_map(|b| b.iter().copied()).collect();
    let base_edges: HashSet<Edge> = bases
        .iter()
        .flat_map(|b| b.windows(2).map(|w| g.edge_key(w[0], w[1])))
        .collect();
    let hits: Vec<usize> = (0..path.len()).filter(|&i| on_base.contains(&path[i])).collect();
    hits.windows(2).rev().find_map(|w| {
        let (i, j) = (w[0], w[1]);
        let is_detour = j > i + 1 || !base_edges.contains(&g.edge_key(path[i], path[j]));
        is_detour.then(|| path[i..=j].to_vec())
    })
}

struct Candidate {
    /// Length of the fixed prefix ending at the divergence vertex.
    prefix_len: usize,
    divergence: Vertex,
    prefix: Vec<Vertex>,
    /// (index on P0 where the path leaves P0, index on P1 where it leaves P1)
    key: (usize, usize),
}

/// Preferred path for `f` given explicit base paths. `p1` is required when
/// `f` has two items.
pub(crate) fn preferred_between(
    g: &Graph,
    s: Vertex,
    v: Vertex,
    p0: &[Vertex],
    p1: Option<&[Vertex]>,
    f: &FailureSpec,
) -> Result<Option<PathRecord>> {
    let mut view = remove_failures(g, f)?;
    if f.is_empty() {
        return Ok(lex_shortest_path(&view, s, v).map(|p| PathRecord::new(p, f.clone(), None, None)));
    }
    if !view.is_vertex_alive(s) || !view.is_vertex_alive(v) {
        return Err(Error::InconsistentChain("source or target is failed".into()));
    }
    let cut0 = prefix_before(g, p0, f.items[0])
        .ok_or_else(|| Error::InconsistentChain(format!("e1 = {} is not on P0", f.items[0])))?;

    let mut forbidden: Vec<Vertex> = p0[..cut0].to_vec();
    let mut candidates: Vec<Candidate> = Vec::new();
    if f.len() == 1 {
        for j in 0..cut0 {
            candidates.push(Candidate {
                prefix_len: j,
                divergence: p0[j],
                prefix: p0[..=j].to_vec(),
                key: (j, 0),
            });
        }
    } else {
        let p1 = p1.ok_or_else(|| Error::InconsistentChain("two failures need P1".into()))?;
        if p1.first() != Some(&s) || p1.last() != Some(&v) {
            return Err(Error::InconsistentChain("P1 does not run from source to target".into()));
        }
        if prefix_before(g, p1, f.items[0]).is_some() {
            return Err(Error::InconsistentChain(format!("P1 does not avoid e1 = {}", f.items[0])));
        }
        let cut1 = prefix_before(g, p1, f.items[1])
            .ok_or_else(|| Error::InconsistentChain(format!("e2 = {} is not on P1", f.items[1])))?;
        let shared = common_prefix_len(p0, p1);
        if cut1 < shared {
            return Err(Error::InconsistentChain(format!(
                "e2 = {} lies on the common prefix of P0 and P1",
                f.items[1]
            )));
        }
        let x1 = shared - 1;
        for j in 0..cut0 {
            candidates.push(Candidate {
                prefix_len: j,
                divergence: p0[j],
                prefix: p0[..=j].to_vec(),
                key: (j, j.min(x1)),
            });
        }
        for j in shared..cut1 {
            candidates.push(Candidate {
                prefix_len: j,
                divergence: p1[j],
                prefix: p1[..=j].to_vec(),
                key: (x1, j),
            });
        }
        forbidden.extend_from_slice(&p1[..cut1]);
    }

    // One backward sweep with every forbidden vertex blocked serves all
    // candidates: a shortest continuation never returns to its own start.
    for &u in &forbidden {
        view.block_vertex(u);
    }
    let dist = distances_to(&view, v);

    let mut best: Option<(usize, (usize, usize), &Candidate)> = None;
    for c in &candidates {
        let Some(step) = view.exits(c.divergence).map(|w| dist[w]).min() else {
            continue;
        };
        if step == INF {
            continue;
        }
        let total = c.prefix_len + 1 + step as usize;
        if best.is_none_or(|(len, key, _)| (total, c.key) < (len, key)) {
            best = Some((total, c.key, c));
        }
    }
    let Some((_, _, c)) = best else {
        return Ok(None);
    };

    // Exits are ascending, so the first one at minimum distance is the
    // lexicographically smallest continuation.
    let step = view.exits(c.divergence).map(|w| dist[w]).min().unwrap();
    let first = view.exits(c.divergence).find(|&w| dist[w] == step).unwrap();
    let mut vertices = c.prefix.clone();
    vertices.extend(descend(&view, &dist, first));

    let (div0, div1) = if f.len() == 1 {
        (Some(p0[c.key.0]), None)
    } else {
        (Some(p0[c.key.0]), Some(p1.unwrap()[c.key.1]))
    };
    Ok(Some(PathRecord::new(vertices, f.clone(), div0, div1)))
}

/// The preferred replacement path for `f` relative to `chain`.
///
/// Among minimum-length paths avoiding `f` that leave `P0` before `e1` (and
/// `P1` before `e2`) exactly once, picks the one leaving `P0` earliest, then
/// leaving `P1` earliest, then the lexicographically smallest. Returns
/// `Ok(None)` when the target is unreachable in `G \ f`.
pub fn preferred_path(
    g: &Graph,
    s: Vertex,
    v: Vertex,
    chain: &BaseChain,
    f: &FailureSpec,
) -> Result<Option<PathRecord>> {
    if chain.source != s || chain.target != v {
        return Err(Error::InconsistentChain("chain belongs to a different pair".into()));
    }
    if f.is_empty() {
        return preferred_between(g, s, v, &[], None, f);
    }
    let Some(p0) = &chain.p0 else {
        return Err(Error::InconsistentChain("target is unreachable, no P0".into()));
    };
    match f.items.as_slice() {
        [_] => preferred_between(g, s, v, &p0.vertices, None, f),
        [e1, _] => {
            let entry = chain
                .entry(*e1)
                .ok_or_else(|| Error::InconsistentChain(format!("e1 = {e1} has no chain entry")))?;
            let p1 = entry
                .p1
                .as_ref()
                .ok_or_else(|| Error::InconsistentChain(format!("no P1 exists for e1 = {e1}")))?;
            preferred_between(g, s, v, &p0.vertices, Some(&p1.vertices), f)
        }
        _ => Err(Error::InvalidFailure("more than two failures".into())),
    }
}

/// Computes `P0`, one `P1` per failable element of `P0`, and the failure
/// schedule for up to `k` failures (`k = 0` schedules only the empty failure).
pub fn build_failure_schedule(
    g: &Graph,
    s: Vertex,
    v: Vertex,
    k: usize,
    mode: FailureMode,
) -> Result<(BaseChain, FailureSchedule)> {
    build_failure_schedule_protected(g, s, v, k, mode, &[])
}

/// Like [`build_failure_schedule`], additionally never failing any vertex in
/// `protected` (used to keep every designated source alive in vertex mode).
pub fn build_failure_schedule_protected(
    g: &Graph,
    s: Vertex,
    v: Vertex,
    k: usize,
    mode: FailureMode,
    protected: &[Vertex],
) -> Result<(BaseChain, FailureSchedule)> {
    g.check_vertex(s)?;
    g.check_vertex(v)?;
    if s == v {
        return Err(Error::SourceIsTarget(s));
    }
    if k > 2 {
        return Err(Error::InvalidParameter(format!("k must be at most 2, got {k}")));
    }
    let keep = |e: &Element| match e {
        Element::Vertex(x) => !protected.contains(x),
        Element::Edge(_) => true,
    };

    let none = FailureSpec::none(mode);
    let p0 = preferred_between(g, s, v, &[], None, &none)?;
    let mut chain = BaseChain {
        source: s,
        target: v,
        mode,
        p0: p0.clone(),
        entries: Vec::new(),
    };
    let mut schedule = FailureSchedule {
        entries: vec![ScheduleEntry { failure: none, chain_entry: None }],
    };
    let Some(p0) = p0.filter(|_| k > 0) else {
        return Ok((chain, schedule));
    };

    let mut singles = path_elements(g, &p0.vertices, mode);
    singles.retain(keep);
    singles.reverse();
    for (idx, &e1) in singles.iter().enumerate() {
        let f = FailureSpec::new(mode, vec![e1])?;
        let p1 = preferred_between(g, s, v, &p0.vertices, None, &f)?;
        let d0 = p1
            .as_ref()
            .and_then(|p1| last_detour(g, &p1.vertices, &[&p0.vertices]));
        chain.entries.push(ChainEntry { e1, p1, d0 });
        schedule.entries.push(ScheduleEntry { failure: f, chain_entry: Some(idx) });
    }

    if k == 2 {
        for (idx, entry) in chain.entries.iter().enumerate() {
            let Some(p1) = &entry.p1 else { continue };
            let cut_e1 = prefix_before(g, &p0.vertices, entry.e1).unwrap();
            let mut seconds = path_elements(g, &p1.vertices, mode);
            seconds.retain(keep);
            seconds.reverse();
            for e2 in seconds {
                // An e2 shared with P0 must lie strictly below e1 there.
                if let Some(cut_e2) = prefix_before(g, &p0.vertices, e2) {
                    if cut_e2 <= cut_e1 {
                        continue;
                    }
                }
                schedule.entries.push(ScheduleEntry {
                    failure: FailureSpec::new(mode, vec![entry.e1, e2])?,
                    chain_entry: Some(idx),
                });
            }
        }
    }
    Ok((chain, schedule))
}

/// Largest graph the exhaustive oracle accepts.
pub const ORACLE_MAX_VERTICES: usize = 14;

/// Brute-force reference for [`preferred_path`]: enumerates every simple
/// minimum-length path of `G \ f` by depth-first search, keeps those that
/// leave each base path before its failed element exactly once, and applies
/// the tie order directly.
pub fn exhaustive_preferred_oracle(
    g: &Graph,
    s: Vertex,
    v: Vertex,
    chain: &BaseChain,
    f: &FailureSpec,
) -> Result<Option<PathRecord>> {
    if g.n() > ORACLE_MAX_VERTICES {
        return Err(Error::InstanceTooLarge { n: g.n(), limit: ORACLE_MAX_VERTICES });
    }
    let view = remove_failures(g, f)?;
    let p0 = chain.p0.as_ref().map(|p| p.vertices.as_slice());
    let p1 = match f.items.as_slice() {
        [e1, _] => Some(
            chain
                .entry(*e1)
                .and_then(|c| c.p1.as_ref())
                .map(|p| p.vertices.as_slice())
                .ok_or_else(|| Error::InconsistentChain(format!("no P1 for e1 = {e1}")))?,
        ),
        _ => None,
    };
    let base0 = match (f.items.first(), p0) {
        (Some(&e1), Some(p0)) => Some((
            p0,
            prefix_before(g, p0, e1).ok_or_else(|| Error::InconsistentChain("e1 not on P0".into()))?,
        )),
        (Some(_), None) => return Err(Error::InconsistentChain("no P0".into())),
        _ => None,
    };
    let base1 = match (f.items.get(1), p1) {
        (Some(&e2), Some(p1)) => Some((
            p1,
            prefix_before(g, p1, e2).ok_or_else(|| Error::InconsistentChain("e2 not on P1".into()))?,
        )),
        _ => None,
    };

    // Iterative deepening: the first depth with any simple path is the
    // distance, and every path found at that depth is a shortest path.
    let mut shortest: Vec<Vec<Vertex>> = Vec::new();
    if view.is_vertex_alive(s) {
        for depth in 0..g.n() {
            let mut stack = vec![s];
            let mut on_path = vec![false; g.n()];
            on_path[s] = true;
            enumerate_simple(&view, v, depth, &mut stack, &mut on_path, &mut shortest);
            if !shortest.is_empty() {
                break;
            }
        }
    }

    let leaves_once = |path: &[Vertex], base: Option<(&[Vertex], usize)>| -> Option<usize> {
        let Some((base, cut)) = base else { return Some(0) };
        let shared = common_prefix_len(path, base);
        if shared == 0 || shared > cut {
            return None;
        }
        let before = &base[..cut];
        path[shared..]
            .iter()
            .all(|x| !before.contains(x))
            .then_some(shared - 1)
    };

    let winner = shortest
        .into_iter()
        .filter_map(|p| {
            let d0 = leaves_once(&p, base0)?;
            let d1 = leaves_once(&p, base1)?;
            Some(((d0, d1), p))
        })
        .min();
    Ok(winner.map(|((d0, d1), p)| {
        let div0 = base0.map(|(b, _)| b[d0]);
        let div1 = base1.map(|(b, _)| b[d1]);
        PathRecord::new(p, f.clone(), div0, div1)
    }))
}

fn enumerate_simple(
    view: &GraphView<'_>,
    target: Vertex,
    remaining: usize,
    stack: &mut Vec<Vertex>,
    on_path: &mut [bool],
    out: &mut Vec<Vec<Vertex>>,
) {
    let u = *stack.last().unwrap();
    if u == target {
        if remaining == 0 {
            out.push(stack.clone());
        }
        return;
    }
    if remaining == 0 {
        return;
    }
    let next: Vec<Vertex> = view.out_neighbors(u).collect();
    for w in next {
        if on_path[w] {
            continue;
        }
        on_path[w] = true;
        stack.push(w);
        enumerate_simple(view, target, remaining - 1, stack, on_path, out);
        stack.pop();
        on_path[w] = false;
    }
}
