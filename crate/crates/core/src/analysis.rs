//! Structural analysis of contributing paths: detours, the high/low split of
//! `P0`, standard-path classes, last legs, modified detours for several
//! sources, segment decompositions, and empirical checks of the structural
//! properties the size bounds depend on.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::builder::{Exec, FtStructure};
use crate::error::{Error, Result};
use crate::graph::{Edge, Element, FailureMode, FailureSpec, Graph, GraphView, Vertex};
use crate::paths::{build_failure_schedule_protected, last_detour, lex_shortest_path, prefix_before, BaseChain, PathRecord};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum PathClass {
    FailureFree,
    SingleFailure,
    /// Pair failure with `e2` outside `D0(P1)`: both failures effectively on `P0`.
    ExcludedMultifailP0,
    NonStandard,
    LongStandard,
    ShortStandard,
}

impl PathClass {
    pub fn is_standard(self) -> bool {
        matches!(self, PathClass::LongStandard | PathClass::ShortStandard)
    }

    /// Classes whose members are compared pairwise for last-leg disjointness.
    pub fn has_last_leg(self) -> bool {
        matches!(self, PathClass::NonStandard | PathClass::LongStandard | PathClass::ShortStandard)
    }
}

/// `v_l` splits `P0` into `P_high = P0[s, v_l]` and `P_low = P0[v_l, v]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Split {
    pub v_l: Vertex,
    /// Index of `v_l` on `P0`.
    pub index: usize,
}

/// Which path a last leg leaves from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum LegBase {
    /// The `P1` of the class member at this position in the contributing list.
    P1 { member: usize },
    /// The failure-free path of the given source.
    P0 { source: Vertex },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct LastLeg {
    pub base: LegBase,
    /// Suffix of the path from its last vertex on the base family.
    pub vertices: Vec<Vertex>,
}

/// Modified base path and detour for several sources: `MP(X)` is the
/// failure-free path that `X` meets last with a failed element still ahead
/// of the meeting vertex, and `MD(X)` is the last detour of `X` from it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Modified {
    pub mp_source: Vertex,
    pub md: Option<Vec<Vertex>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ClassifiedPath {
    pub source: Vertex,
    pub target: Vertex,
    pub failure: FailureSpec,
    pub path: PathRecord,
    pub p0: Vec<Vertex>,
    pub p1: Option<Vec<Vertex>>,
    pub d0_p1: Option<Vec<Vertex>>,
    pub d1_p: Option<Vec<Vertex>>,
    pub d0_p: Option<Vec<Vertex>>,
    pub split: Split,
    pub class: PathClass,
    pub last_leg: Option<LastLeg>,
    /// `MP`/`MD` of `P1` (pair failures only).
    pub modified_p1: Option<Modified>,
}

impl ClassifiedPath {
    /// Both failed elements lie on `P0`.
    pub fn both_failures_on_p0(&self, g: &Graph) -> bool {
        self.failure.len() == 2 && self.failure.items.iter().all(|&e| prefix_before(g, &self.p0, e).is_some())
    }
}

/// Why a structural check failed. Indices refer to the list that was checked.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Counterexample {
    pub first: usize,
    pub second: Option<usize>,
    pub vertex: Option<Vertex>,
    pub reason: String,
}

pub type CheckResult = std::result::Result<(), Counterexample>;

/// Position of a failed element along `path`: the lower endpoint's index for
/// edges, the vertex index for vertices.
fn element_position(g: &Graph, path: &[Vertex], e: Element) -> Option<usize> {
    let cut = prefix_before(g, path, e)?;
    Some(match e {
        Element::Edge(_) => cut - 1,
        Element::Vertex(_) => cut,
    })
}

/// Whether `e` lies on `detour`: one of its edges, or one of its interior
/// vertices.
fn on_detour(g: &Graph, detour: &[Vertex], e: Element) -> bool {
    prefix_before(g, detour, e).is_some()
}

fn ceil_pow(x: f64, p: f64) -> usize {
    // Guard against 27^(1/3) = 3.0000000000000004 style rounding.
    let r = x.powf(p);
    let rounded = r.round();
    if (r - rounded).abs() < 1e-9 {
        rounded as usize
    } else {
        r.ceil() as usize
    }
}

/// `ceil(n_eff^(1/3))` and `ceil(n_eff^(2/3))` with `n_eff = n / sigma`.
pub fn thresholds(n: usize, sigma: usize) -> (usize, usize) {
    let n_eff = n as f64 / sigma.max(1) as f64;
    (ceil_pow(n_eff, 1.0 / 3.0), ceil_pow(n_eff, 2.0 / 3.0))
}

pub fn split_p0(p0: &[Vertex], low_len: usize) -> Split {
    let index = (p0.len() - 1).saturating_sub(low_len);
    Split { v_l: p0[index], index }
}

/// `MP(x)` over the failure-free paths `p0s` (ascending by source): the
/// path meeting `x` latest (before the target) such that one of `failed`
/// lies at or after the meeting vertex on it. Ties go to the smaller source.
pub fn modified_base<'a>(
    g: &Graph,
    x: &[Vertex],
    failed: &[Element],
    p0s: &'a [(Vertex, Vec<Vertex>)],
) -> Option<&'a (Vertex, Vec<Vertex>)> {
    (0..x.len().saturating_sub(1)).rev().find_map(|i| {
        p0s.iter().find(|(_, p)| {
            p.iter().position(|&u| u == x[i]).is_some_and(|j| {
                failed
                    .iter()
                    .any(|&e| element_position(g, p, e).is_some_and(|pos| pos >= j))
            })
        })
    })
}

fn chain_for(g: &Graph, st: &FtStructure, s: Vertex, v: Vertex) -> Result<BaseChain> {
    let protected: &[Vertex] = match st.params.mode {
        FailureMode::Vertex => &st.params.sources,
        FailureMode::Edge => &[],
    };
    build_failure_schedule_protected(g, s, v, st.params.k, st.params.mode, protected).map(|(c, _)| c)
}

/// Classifies every assignment recorded at `target`, in processing order.
pub fn extract_contributing(g: &Graph, st: &FtStructure, target: Vertex) -> Result<Vec<ClassifiedPath>> {
    let Some(rec) = st.targets.get(&target) else {
        return Ok(Vec::new());
    };
    let sigma = st.params.sources.len().max(1);
    let multi = sigma > 1;
    let (low_len, long_len) = thresholds(g.n(), sigma);

    let mut chains: BTreeMap<Vertex, BaseChain> = BTreeMap::new();
    for &s in &st.params.sources {
        if s != target {
            chains.insert(s, chain_for(g, st, s, target)?);
        }
    }
    let p0s: Vec<(Vertex, Vec<Vertex>)> = chains
        .iter()
        .filter_map(|(&s, c)| c.p0.as_ref().map(|p| (s, p.vertices.clone())))
        .collect();

    let mut out = Vec::with_capacity(rec.assignments.len());
    for a in &rec.assignments {
        let chain = &chains[&a.source];
        let p0 = chain
            .p0
            .as_ref()
            .ok_or_else(|| Error::InconsistentChain("assignment for an unreachable target".into()))?
            .vertices
            .clone();
        let split = split_p0(&p0, low_len);
        let p = &a.path.vertices;
        let p1 = match a.failure.items.first() {
            Some(&e1) => chain.entry(e1).and_then(|c| c.p1.as_ref()).map(|r| r.vertices.clone()),
            None => None,
        };
        let d0_p1 = p1.as_ref().and_then(|p1| last_detour(g, p1, &[&p0]));
        let d1_p = p1.as_ref().and_then(|p1| last_detour(g, p, &[p1]));
        let d0_p = last_detour(g, p, &[&p0]);

        let modified_p1 = match (&p1, a.failure.items.as_slice()) {
            (Some(p1), [e1, _]) => modified_base(g, p1, &[*e1], &p0s).map(|(ms, mp)| Modified {
                mp_source: *ms,
                md: last_detour(g, p1, &[mp]),
            }),
            _ => None,
        };

        let class = match a.failure.items.as_slice() {
            [] => PathClass::FailureFree,
            [_] => PathClass::SingleFailure,
            [e1, e2] => {
                let d0 = d0_p1
                    .as_ref()
                    .ok_or_else(|| Error::InconsistentChain("pair failure without a detour".into()))?;
                if !on_detour(g, d0, *e2) {
                    PathClass::ExcludedMultifailP0
                } else {
                    let high = prefix_before(g, &p0, *e1).is_some_and(|c| c <= split.index);
                    let dest = *d0.last().unwrap();
                    let low = p0.iter().position(|&u| u == dest).is_some_and(|i| i >= split.index);
                    if split.index > 0 && high && low {
                        let detour_len = if multi {
                            modified_p1.as_ref().and_then(|m| m.md.as_ref()).map_or(0, |md| md.len() - 1)
                        } else {
                            d0.len() - 1
                        };
                        if detour_len >= long_len {
                            PathClass::LongStandard
                        } else {
                            PathClass::ShortStandard
                        }
                    } else {
                        PathClass::NonStandard
                    }
                }
            }
            _ => unreachable!("failure sets hold at most two elements"),
        };

        out.push(ClassifiedPath {
            source: a.source,
            target,
            failure: a.failure.clone(),
            path: a.path.clone(),
            p0,
            p1,
            d0_p1,
            d1_p,
            d0_p,
            split,
            class,
            last_leg: None,
            modified_p1,
        });
    }
    assign_last_legs(g, &mut out, &p0s);
    Ok(out)
}

/// `LL(P)`: the suffix of `P` after its last vertex (before the target) on
/// the union of its class's `P1` paths and its base path (`P0`, or `MP(P)`
/// for several sources). The base is the first class member in processing
/// order whose `P1` contains that vertex, else the base path.
fn assign_last_legs(g: &Graph, paths: &mut [ClassifiedPath], p0s: &[(Vertex, Vec<Vertex>)]) {
    let multi = p0s.len() > 1;
    let mut legs = Vec::with_capacity(paths.len());
    for cp in paths.iter() {
        if !cp.class.has_last_leg() {
            legs.push(None);
            continue;
        }
        let members: Vec<(usize, HashSet<Vertex>)> = paths
            .iter()
            .enumerate()
            .filter(|(_, o)| o.class == cp.class)
            .filter_map(|(i, o)| o.p1.as_ref().map(|p1| (i, p1.iter().copied().collect())))
            .collect();
        let (base_source, base): (Vertex, &[Vertex]) = if multi {
            modified_base(g, &cp.path.vertices, &cp.failure.items, p0s)
                .map_or((cp.source, &cp.p0[..]), |(s, p)| (*s, &p[..]))
        } else {
            (cp.source, &cp.p0[..])
        };
        let p = &cp.path.vertices;
        let last = p.len() - 1;
        let star = (0..last)
            .rev()
            .find(|&i| base.contains(&p[i]) || members.iter().any(|(_, set)| set.contains(&p[i])));
        legs.push(star.map(|i| {
            let base = members
                .iter()
                .find(|(_, set)| set.contains(&p[i]))
                .map_or(LegBase::P0 { source: base_source }, |(m, _)| LegBase::P1 { member: *m });
            LastLeg { base, vertices: p[i..].to_vec() }
        }));
    }
    for (cp, leg) in paths.iter_mut().zip(legs) {
        cp.last_leg = leg;
    }
}

/// Within each of the non-standard, long-standard and short-standard
/// classes, last legs of distinct members meet only at the target and start
/// at distinct vertices.
pub fn check_last_leg_disjointness(paths: &[ClassifiedPath]) -> CheckResult {
    for i in 0..paths.len() {
        for j in i + 1..paths.len() {
            let (a, b) = (&paths[i], &paths[j]);
            if a.class != b.class || !a.class.has_last_leg() {
                continue;
            }
            let (Some(la), Some(lb)) = (&a.last_leg, &b.last_leg) else { continue };
            let target = *la.vertices.last().unwrap();
            let set: HashSet<Vertex> = la.vertices.iter().copied().collect();
            if let Some(&x) = lb.vertices.iter().find(|&&x| x != target && set.contains(&x)) {
                return Err(Counterexample {
                    first: i,
                    second: Some(j),
                    vertex: Some(x),
                    reason: "last legs share a vertex before the target".into(),
                });
            }
            if la.vertices[0] == lb.vertices[0] {
                return Err(Counterexample {
                    first: i,
                    second: Some(j),
                    vertex: Some(la.vertices[0]),
                    reason: "last legs start at the same vertex".into(),
                });
            }
        }
    }
    Ok(())
}

/// A family is converging when any two members, once they share a vertex,
/// continue identically until one of them ends.
pub fn check_converging(family: &[Vec<Vertex>]) -> CheckResult {
    for i in 0..family.len() {
        for j in 0..family.len() {
            if i == j {
                continue;
            }
            let (a, b) = (&family[i], &family[j]);
            let pos_b: HashMap<Vertex, usize> = b.iter().enumerate().map(|(k, &u)| (u, k)).collect();
            let Some((ia, ib)) = a.iter().enumerate().find_map(|(k, u)| pos_b.get(u).map(|&m| (k, m))) else {
                continue;
            };
            let meet = a[ia];
            for t in 1.. {
                match (a.get(ia + t), b.get(ib + t)) {
                    (Some(x), Some(y)) if x != y => {
                        return Err(Counterexample {
                            first: i,
                            second: Some(j),
                            vertex: Some(a[ia + t - 1]),
                            reason: format!("paths meet at {meet} and split at {}", a[ia + t - 1]),
                        });
                    }
                    (Some(_), Some(_)) => {}
                    _ => break,
                }
            }
        }
    }
    Ok(())
}

/// `D0(P1)` of the standard members must form a converging family.
pub fn check_detour_convergence(paths: &[ClassifiedPath]) -> CheckResult {
    check_converging(&standard_detours(paths))
}

/// Distinct `D0(P1)` detours of the standard members, in processing order.
pub fn standard_detours(paths: &[ClassifiedPath]) -> Vec<Vec<Vertex>> {
    dedup(paths.iter().filter(|p| p.class.is_standard()).filter_map(|p| p.d0_p1.clone()))
}

/// Distinct `MD(P1)` detours of the standard members, in processing order.
pub fn standard_modified_detours(paths: &[ClassifiedPath]) -> Vec<Vec<Vertex>> {
    dedup(
        paths
            .iter()
            .filter(|p| p.class.is_standard())
            .filter_map(|p| p.modified_p1.as_ref().and_then(|m| m.md.clone())),
    )
}

fn dedup(items: impl Iterator<Item = Vec<Vertex>>) -> Vec<Vec<Vertex>> {
    let mut seen = HashSet::new();
    items.filter(|d| seen.insert(d.clone())).collect()
}

/// Standard paths of one source at one target have pairwise distinct lengths.
pub fn check_distinct_lengths(paths: &[ClassifiedPath]) -> CheckResult {
    let mut seen: HashMap<(Vertex, usize), usize> = HashMap::new();
    for (i, p) in paths.iter().enumerate().filter(|(_, p)| p.class.is_standard()) {
        if let Some(&j) = seen.get(&(p.source, p.path.length)) {
            return Err(Counterexample {
                first: j,
                second: Some(i),
                vertex: None,
                reason: format!("two standard paths of length {}", p.path.length),
            });
        }
        seen.insert((p.source, p.path.length), i);
    }
    Ok(())
}

/// Short standard paths exceed `|P0|` by at most `3 * ceil(n^(2/3))`.
pub fn check_length_ceiling(paths: &[ClassifiedPath], n: usize) -> CheckResult {
    let (_, long_len) = thresholds(n, 1);
    for (i, p) in paths.iter().enumerate() {
        if p.class == PathClass::ShortStandard && p.path.length > p.p0.len() - 1 + 3 * long_len {
            return Err(Counterexample {
                first: i,
                second: None,
                vertex: None,
                reason: format!("length {} exceeds |P0| + {}", p.path.length, 3 * long_len),
            });
        }
    }
    Ok(())
}

/// Histogram of standard path lengths.
pub fn standard_length_histogram(paths: &[ClassifiedPath]) -> BTreeMap<usize, usize> {
    let mut h = BTreeMap::new();
    for p in paths.iter().filter(|p| p.class.is_standard()) {
        *h.entry(p.path.length).or_insert(0) += 1;
    }
    h
}

/// Contributing pair-failure paths whose both failures lie on `P0`.
pub fn check_multifail_p0_count(g: &Graph, paths: &[ClassifiedPath]) -> usize {
    paths.iter().filter(|p| p.both_failures_on_p0(g)).count()
}

/// `(MP, MD)` of `P1` for every pair-failure assignment at the target.
pub fn compute_modified_detours(g: &Graph, st: &FtStructure, target: Vertex) -> Result<Vec<Modified>> {
    Ok(extract_contributing(g, st, target)?
        .into_iter()
        .filter_map(|p| p.modified_p1)
        .collect())
}

/// Failure-free paths from every source to `target` (reachable ones only).
pub fn p0_family(g: &Graph, sources: &[Vertex], target: Vertex) -> Vec<Vec<Vertex>> {
    let view = GraphView::full(g);
    sources
        .iter()
        .filter(|&&s| s != target)
        .filter_map(|&s| lex_shortest_path(&view, s, target))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Segment {
    /// Index of a family member containing the segment.
    pub path: usize,
    pub start: usize,
    pub end: usize,
    pub vertices: Vec<Vertex>,
    /// Lexicographically smallest shortest path from the segment start to
    /// the target avoiding the owner's suffix from the segment end.
    pub representative: Option<Vec<Vertex>>,
    pub representative_vertex: Option<Vertex>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SegmentDecomposition {
    pub base_paths: Vec<Vec<Vertex>>,
    pub segments: Vec<Segment>,
}

/// Cuts a converging family at path ends and at vertices where paths merge
/// or split; every maximal uncut run is one segment.
pub fn compute_segments(g: &Graph, family: &[Vec<Vertex>], target: Vertex) -> Result<SegmentDecomposition> {
    let family = dedup(family.iter().cloned());
    if let Err(c) = check_converging(&family) {
        return Err(Error::NonConverging {
            first: c.first,
            second: c.second.unwrap_or(c.first),
            meet: family[c.first][0],
            split: c.vertex.unwrap_or(target),
        });
    }
    let mut arcs: BTreeSet<(Vertex, Vertex)> = BTreeSet::new();
    let mut ends: HashSet<Vertex> = HashSet::new();
    for p in &family {
        arcs.extend(p.windows(2).map(|w| (w[0], w[1])));
        ends.insert(p[0]);
        ends.insert(*p.last().unwrap());
    }
    let mut indeg: HashMap<Vertex, usize> = HashMap::new();
    let mut outdeg: HashMap<Vertex, usize> = HashMap::new();
    for &(u, w) in &arcs {
        *outdeg.entry(u).or_default() += 1;
        *indeg.entry(w).or_default() += 1;
    }
    let is_cut = |u: &Vertex| {
        ends.contains(u) || indeg.get(u).copied().unwrap_or(0) != 1 || outdeg.get(u).copied().unwrap_or(0) != 1
    };

    let mut seen: HashSet<Vec<Vertex>> = HashSet::new();
    let mut segments = Vec::new();
    for (pi, p) in family.iter().enumerate() {
        let mut start = 0;
        for k in 1..p.len() {
            if k == p.len() - 1 || is_cut(&p[k]) {
                let vertices = p[start..=k].to_vec();
                if seen.insert(vertices.clone()) {
                    let representative = representative_path(g, p, k, vertices[0], target);
                    let representative_vertex = representative
                        .as_ref()
                        .and_then(|r| r.iter().rev().find(|u| vertices.contains(u)).copied());
                    segments.push(Segment { path: pi, start, end: k, vertices, representative, representative_vertex });
                }
                start = k;
            }
        }
    }
    Ok(SegmentDecomposition { base_paths: family, segments })
}

fn representative_path(g: &Graph, owner: &[Vertex], end: usize, from: Vertex, target: Vertex) -> Option<Vec<Vertex>> {
    let mut view = GraphView::full(g);
    for &u in &owner[end..] {
        if u != target {
            view.block_vertex(u);
        }
    }
    for w in owner[end..].windows(2) {
        view.block_edge(g.edge_key(w[0], w[1]));
    }
    lex_shortest_path(&view, from, target)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CheckReport {
    pub name: String,
    pub status: CheckStatus,
    pub counterexample: Option<Counterexample>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

impl CheckReport {
    fn from_result(name: &str, r: CheckResult) -> Self {
        let (status, counterexample) = match r {
            Ok(()) => (CheckStatus::Pass, None),
            Err(c) => (CheckStatus::Fail, Some(c)),
        };
        CheckReport { name: name.into(), status, counterexample }
    }

    fn skipped(name: &str) -> Self {
        CheckReport { name: name.into(), status: CheckStatus::Skipped, counterexample: None }
    }
}

pub const LAST_LEG_DISJOINTNESS: &str = "lastLegDisjointness";
pub const DETOUR_CONVERGENCE: &str = "detourConvergence";
pub const DISTINCT_STANDARD_LENGTHS: &str = "distinctStandardLengths";
pub const LENGTH_CEILING: &str = "lengthCeiling";
pub const SEGMENT_COUNT: &str = "segmentCount";
pub const P0_CONVERGENCE: &str = "p0Convergence";
pub const MODIFIED_DETOUR_CONVERGENCE: &str = "modifiedDetourConvergence";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TargetAnalysis {
    pub target: Vertex,
    pub classes: BTreeMap<PathClass, usize>,
    pub checks: Vec<CheckReport>,
    /// Number of segments per converging family, with the family size.
    pub segment_counts: Vec<(usize, usize)>,
    pub standard_lengths: BTreeMap<usize, usize>,
    pub multifail_p0: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct AnalysisReport {
    pub all_pass: bool,
    pub single_source_scope: bool,
    pub multi_source_scope: bool,
    pub class_totals: BTreeMap<PathClass, usize>,
    pub check_totals: BTreeMap<String, (usize, usize)>,
    pub max_multifail_p0: usize,
    pub targets: Vec<TargetAnalysis>,
}

fn segment_check(g: &Graph, family: &[Vec<Vertex>], target: Vertex, counts: &mut Vec<(usize, usize)>) -> CheckResult {
    if family.is_empty() {
        return Ok(());
    }
    match compute_segments(g, family, target) {
        Ok(dec) => {
            let size = dec.base_paths.len();
            counts.push((dec.segments.len(), size));
            if dec.segments.len() > 2 * size {
                return Err(Counterexample {
                    first: 0,
                    second: None,
                    vertex: None,
                    reason: format!("{} segments for {} paths", dec.segments.len(), size),
                });
            }
            Ok(())
        }
        // Non-converging families are reported by the convergence checks.
        Err(_) => Ok(()),
    }
}

/// Runs every check whose preconditions hold for `st`: the single-source
/// checks on undirected edge-failure builds from one source, the multi-source
/// convergence checks on builds from several sources.
pub fn analyze_target(g: &Graph, st: &FtStructure, target: Vertex) -> Result<TargetAnalysis> {
    let paths = extract_contributing(g, st, target)?;
    let single = st.params.sources.len() == 1 && !g.is_directed() && st.params.mode == FailureMode::Edge;
    let multi = st.params.sources.len() > 1;
    let mut classes = BTreeMap::new();
    for p in &paths {
        *classes.entry(p.class).or_insert(0) += 1;
    }
    let mut segment_counts = Vec::new();
    let mut checks = Vec::new();
    if single {
        checks.push(CheckReport::from_result(LAST_LEG_DISJOINTNESS, check_last_leg_disjointness(&paths)));
        checks.push(CheckReport::from_result(DETOUR_CONVERGENCE, check_detour_convergence(&paths)));
        checks.push(CheckReport::from_result(DISTINCT_STANDARD_LENGTHS, check_distinct_lengths(&paths)));
        checks.push(CheckReport::from_result(LENGTH_CEILING, check_length_ceiling(&paths, g.n())));
        let seg = segment_check(g, &standard_detours(&paths), target, &mut segment_counts);
        checks.push(CheckReport::from_result(SEGMENT_COUNT, seg));
    } else {
        for name in [LAST_LEG_DISJOINTNESS, DETOUR_CONVERGENCE, DISTINCT_STANDARD_LENGTHS, LENGTH_CEILING] {
            checks.push(CheckReport::skipped(name));
        }
    }
    if multi {
        let p0s = p0_family(g, &st.params.sources, target);
        let mds = standard_modified_detours(&paths);
        checks.push(CheckReport::from_result(P0_CONVERGENCE, check_converging(&p0s)));
        checks.push(CheckReport::from_result(MODIFIED_DETOUR_CONVERGENCE, check_converging(&mds)));
        let mut seg = segment_check(g, &p0s, target, &mut segment_counts);
        if seg.is_ok() {
            seg = segment_check(g, &mds, target, &mut segment_counts);
        }
        checks.push(CheckReport::from_result(SEGMENT_COUNT, seg));
    } else {
        checks.push(CheckReport::skipped(P0_CONVERGENCE));
        checks.push(CheckReport::skipped(MODIFIED_DETOUR_CONVERGENCE));
        if !single {
            checks.push(CheckReport::skipped(SEGMENT_COUNT));
        }
    }
    Ok(TargetAnalysis {
        target,
        classes,
        checks,
        segment_counts,
        standard_lengths: standard_length_histogram(&paths),
        multifail_p0: check_multifail_p0_count(g, &paths),
    })
}

pub fn analyze_structure(g: &Graph, st: &FtStructure, exec: Exec) -> Result<AnalysisReport> {
    let targets: Vec<Vertex> = st.targets.keys().copied().collect();
    let per_target: Vec<TargetAnalysis> = match exec {
        Exec::Sequential => targets.iter().map(|&v| analyze_target(g, st, v)).collect::<Result<_>>()?,
        Exec::Parallel => targets.par_iter().map(|&v| analyze_target(g, st, v)).collect::<Result<_>>()?,
    };
    let mut class_totals = BTreeMap::new();
    let mut check_totals: BTreeMap<String, (usize, usize)> = BTreeMap::new();
    for t in &per_target {
        for (&c, &k) in &t.classes {
            *class_totals.entry(c).or_insert(0) += k;
        }
        for c in &t.checks {
            let e = check_totals.entry(c.name.clone()).or_insert((0, 0));
            match c.status {
                CheckStatus::Pass => e.0 += 1,
                CheckStatus::Fail => e.1 += 1,
                CheckStatus::Skipped => {}
            }
        }
    }
    Ok(AnalysisReport {
        all_pass: check_totals.values().all(|&(_, fail)| fail == 0),
        single_source_scope: st.params.sources.len() == 1 && !g.is_directed() && st.params.mode == FailureMode::Edge,
        multi_source_scope: st.params.sources.len() > 1,
        class_totals,
        check_totals,
        max_multifail_p0: per_target.iter().map(|t| t.multifail_p0).max().unwrap_or(0),
        targets: per_target,
    })
}

/// Edges of a vertex sequence, in canonical form.
pub fn path_edges(g: &Graph, path: &[Vertex]) -> Vec<Edge> {
    path.windows(2).map(|w| g.edge_key(w[0], w[1])).collect()
}
