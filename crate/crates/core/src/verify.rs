//! Brute-force checks of distance preservation under every failure set.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::seq::index;
use rand::SeedableRng;
use rand_xoshiro::SplitMix64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize, Serializer};

use crate::bfs::bfs_distances;
use crate::builder::{size_bound, Exec};
use crate::error::{Error, Result};
use crate::graph::{Dist, Element, FailureMode, FailureSpec, Graph, GraphView, Vertex, INF};

/// At most this many witnesses are kept in a report; `witnessCount` carries
/// the full number.
pub const MAX_WITNESSES: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sampling {
    Exhaustive,
    Sample { count: usize, seed: u64 },
}

impl FromStr for Sampling {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "exhaustive" {
            return Ok(Sampling::Exhaustive);
        }
        let bad = || Error::InvalidParameter(format!("bad sampling {s:?} (expected exhaustive or sample:<count>:seed=<s>)"));
        let rest = s.strip_prefix("sample:").ok_or_else(bad)?;
        let (count, seed) = rest.split_once(':').ok_or_else(bad)?;
        let seed = seed.strip_prefix("seed=").ok_or_else(bad)?;
        Ok(Sampling::Sample {
            count: count.parse().map_err(|_| bad())?,
            seed: seed.parse().map_err(|_| bad())?,
        })
    }
}

impl fmt::Display for Sampling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sampling::Exhaustive => f.write_str("exhaustive"),
            Sampling::Sample { count, seed } => write!(f, "sample:{count}:seed={seed}"),
        }
    }
}

impl Serialize for Sampling {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Sampling {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Distances serialise with `null` standing for unreachable.
mod dist_or_null {
    use super::{Dist, INF};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(d: &Dist, s: S) -> Result<S::Ok, S::Error> {
        if *d == INF {
            s.serialize_none()
        } else {
            s.serialize_some(d)
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Dist, D::Error> {
        Ok(Option::<Dist>::deserialize(d)?.unwrap_or(INF))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Witness {
    pub failure: FailureSpec,
    pub source: Vertex,
    pub target: Vertex,
    #[serde(with = "dist_or_null")]
    pub dist_g: Dist,
    #[serde(with = "dist_or_null")]
    pub dist_h: Dist,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SizeSummary {
    pub edges: usize,
    pub bound: f64,
    pub ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct VerificationReport {
    pub status: Status,
    pub checked: usize,
    pub witness_count: usize,
    pub witnesses: Vec<Witness>,
    pub size: SizeSummary,
    pub elapsed_ms: u64,
    pub sampling: Sampling,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Failure sets of size at most `k` over every edge (or every vertex not in
/// `excluded`): the empty set, all singletons, then pairs in canonical order.
/// Sampling keeps the empty set and all singletons and draws a seeded uniform
/// subset of the pairs; a count at least the number of pairs keeps them all.
pub fn enumerate_failure_sets(
    g: &Graph,
    k: usize,
    mode: FailureMode,
    excluded: &[Vertex],
    sampling: Sampling,
) -> Result<Vec<FailureSpec>> {
    if k > 2 {
        return Err(Error::InvalidParameter(format!("k must be at most 2, got {k}")));
    }
    let elements: Vec<Element> = match mode {
        FailureMode::Edge => g.edges().iter().map(|&e| Element::Edge(e)).collect(),
        FailureMode::Vertex => (0..g.n())
            .filter(|v| !excluded.contains(v))
            .map(Element::Vertex)
            .collect(),
    };
    let mut sets = vec![FailureSpec::none(mode)];
    if k == 0 {
        return Ok(sets);
    }
    for &e in &elements {
        sets.push(FailureSpec::new(mode, vec![e])?);
    }
    if k == 1 {
        return Ok(sets);
    }
    let m = elements.len();
    let population = m * m.saturating_sub(1) / 2;
    let pair = |i: usize, j: usize| FailureSpec::new(mode, vec![elements[i], elements[j]]);
    match sampling {
        Sampling::Sample { count, seed } if count < population => {
            let mut rng = SplitMix64::seed_from_u64(seed);
            let mut picks = index::sample(&mut rng, population, count).into_vec();
            picks.sort_unstable();
            for r in picks {
                let (i, j) = unrank_pair(r, m);
                sets.push(pair(i, j)?);
            }
        }
        _ => {
            for i in 0..m {
                for j in i + 1..m {
                    sets.push(pair(i, j)?);
                }
            }
        }
    }
    Ok(sets)
}

/// Inverse of the row-major numbering of pairs `i < j` over `m` items.
fn unrank_pair(mut r: usize, m: usize) -> (usize, usize) {
    let mut i = 0;
    while r >= m - 1 - i {
        r -= m - 1 - i;
        i += 1;
    }
    (i, i + 1 + r)
}

/// `h \ f`, tolerating elements of `f` that `h` does not contain.
fn view_without<'h>(h: &'h Graph, f: &FailureSpec) -> GraphView<'h> {
    let mut view = GraphView::full(h);
    for item in &f.items {
        match *item {
            Element::Edge(e) => view.block_edge(e),
            Element::Vertex(v) => view.block_vertex(v),
        }
    }
    view
}

fn check_subgraph(g: &Graph, h: &Graph) -> Result<()> {
    if g.n() != h.n() || g.is_directed() != h.is_directed() {
        return Err(Error::InvalidParameter(
            "subgraph must have the same vertex count and directedness".into(),
        ));
    }
    match h.edges().iter().find(|&&e| !g.contains_edge(e)) {
        Some(&e) => Err(Error::NotSubgraph(e)),
        None => Ok(()),
    }
}

fn sweep<F>(sets: &[FailureSpec], exec: Exec, check: F) -> Vec<Witness>
where
    F: Fn(&FailureSpec) -> Vec<Witness> + Sync,
{
    let per_set: Vec<Vec<Witness>> = match exec {
        Exec::Sequential => sets.iter().map(&check).collect(),
        Exec::Parallel => sets.par_iter().map(&check).collect(),
    };
    per_set.into_iter().flatten().collect()
}

fn report(
    mut witnesses: Vec<Witness>,
    checked: usize,
    size: SizeSummary,
    sampling: Sampling,
    started: Instant,
) -> VerificationReport {
    witnesses.sort();
    let witness_count = witnesses.len();
    witnesses.truncate(MAX_WITNESSES);
    VerificationReport {
        status: if witness_count == 0 { Status::Pass } else { Status::Fail },
        checked,
        witness_count,
        witnesses,
        size,
        elapsed_ms: started.elapsed().as_millis() as u64,
        sampling,
    }
}

/// Checks that for every enumerated failure set `F` and source `s`, the
/// distances from `s` in `h \ F` equal those in `g \ F`. Equal distances to
/// every vertex are exactly what makes any BFS tree of `h \ F` a valid BFS
/// tree of `g \ F`.
pub fn verify_structure(
    g: &Graph,
    h: &Graph,
    sources: &[Vertex],
    k: usize,
    mode: FailureMode,
    sampling: Sampling,
    exec: Exec,
) -> Result<VerificationReport> {
    let started = Instant::now();
    check_subgraph(g, h)?;
    for &s in sources {
        g.check_vertex(s)?;
    }
    let sets = enumerate_failure_sets(g, k, mode, sources, sampling)?;
    let witnesses = sweep(&sets, exec, |f| {
        let gv = view_without(g, f);
        let hv = view_without(h, f);
        let mut found = Vec::new();
        for &s in sources {
            let dg = bfs_distances(&gv, s);
            let dh = bfs_distances(&hv, s);
            for t in 0..g.n() {
                if dg[t] != dh[t] {
                    found.push(Witness { failure: f.clone(), source: s, target: t, dist_g: dg[t], dist_h: dh[t] });
                }
            }
        }
        found
    });
    let bound = size_bound(g.n(), sources.len().max(1), k);
    let size = SizeSummary { edges: h.m(), bound, ratio: h.m() as f64 / bound };
    Ok(report(witnesses, sets.len(), size, sampling, started))
}

/// Checks `dist_{h \ F}(u, v) <= dist_{g \ F}(u, v) + beta` for every edge
/// failure set of size at most `k` and every ordered pair. The size summary
/// compares against `n^{7/4}`.
pub fn verify_spanner_stretch(
    g: &Graph,
    h: &Graph,
    k: usize,
    beta: Dist,
    sampling: Sampling,
    exec: Exec,
) -> Result<VerificationReport> {
    let started = Instant::now();
    check_subgraph(g, h)?;
    let sets = enumerate_failure_sets(g, k, FailureMode::Edge, &[], sampling)?;
    let witnesses = sweep(&sets, exec, |f| {
        let gv = view_without(g, f);
        let hv = view_without(h, f);
        let mut found = Vec::new();
        for u in 0..g.n() {
            let dg = bfs_distances(&gv, u);
            let dh = bfs_distances(&hv, u);
            for v in 0..g.n() {
                let ok = if dg[v] == INF { dh[v] == INF } else { dh[v] != INF && dh[v] <= dg[v] + beta };
                if !ok {
                    found.push(Witness { failure: f.clone(), source: u, target: v, dist_g: dg[v], dist_h: dh[v] });
                }
            }
        }
        found
    });
    let bound = (g.n() as f64).powf(1.75);
    let size = SizeSummary { edges: h.m(), bound, ratio: h.m() as f64 / bound };
    Ok(report(witnesses, sets.len(), size, sampling, started))
}
