//! Fault-tolerant BFS structures: walks each target's failure schedule and
//! keeps the last edge of every preferred path that was new at that target.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, FailureMode, FailureSpec, Graph, Vertex};
use crate::paths::{build_failure_schedule_protected, preferred_between, BaseChain, FailureSchedule, PathRecord};

/// Whether independent work items may run on the rayon pool. Results are
/// identical either way.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuildParams {
    pub sources: Vec<Vertex>,
    pub k: usize,
    pub mode: FailureMode,
}

/// A contributing path: the preferred path for `failure` whose last edge was
/// new at its target when the failure was processed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Assignment {
    pub source: Vertex,
    pub failure: FailureSpec,
    pub path: PathRecord,
    pub last_edge: Edge,
}

/// A scheduled failure for which the target was unreachable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Unreachable {
    pub source: Vertex,
    pub failure: FailureSpec,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TargetRecord {
    /// In processing order.
    pub assignments: Vec<Assignment>,
    pub unreachable: Vec<Unreachable>,
    pub last_edges: BTreeSet<Edge>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FtStructure {
    pub params: BuildParams,
    pub n: usize,
    pub edges: BTreeSet<Edge>,
    pub targets: BTreeMap<Vertex, TargetRecord>,
}

impl FtStructure {
    /// `H` as a graph on the vertex set of `g`.
    pub fn subgraph(&self, g: &Graph) -> Result<Graph> {
        g.with_edges(self.edges.iter().copied())
    }

    pub fn assignments(&self) -> impl Iterator<Item = (Vertex, &Assignment)> {
        self.targets
            .iter()
            .flat_map(|(&v, rec)| rec.assignments.iter().map(move |a| (v, a)))
    }
}

/// Reference edge budget `sigma^(1/(k+1)) * n^(2 - 1/(k+1))`.
pub fn size_bound(n: usize, sigma: usize, k: usize) -> f64 {
    let e = 1.0 / (k as f64 + 1.0);
    (sigma as f64).powf(e) * (n as f64).powf(2.0 - e)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SizeReport {
    pub edges: usize,
    pub n: usize,
    pub sigma: usize,
    pub k: usize,
    pub bound: f64,
    pub ratio: f64,
    pub max_contributing: usize,
}

pub fn structure_stats(st: &FtStructure) -> SizeReport {
    let sigma = st.params.sources.len().max(1);
    let bound = size_bound(st.n, sigma, st.params.k);
    SizeReport {
        edges: st.edges.len(),
        n: st.n,
        sigma,
        k: st.params.k,
        bound,
        ratio: st.edges.len() as f64 / bound,
        max_contributing: st.targets.values().map(|r| r.assignments.len()).max().unwrap_or(0),
    }
}

fn validate(g: &Graph, sources: &[Vertex], k: usize) -> Result<()> {
    if sources.is_empty() {
        return Err(Error::InvalidParameter("at least one source is required".into()));
    }
    for &s in sources {
        g.check_vertex(s)?;
    }
    let distinct: BTreeSet<_> = sources.iter().collect();
    if distinct.len() != sources.len() {
        return Err(Error::InvalidParameter("sources must be distinct".into()));
    }
    if k > 2 {
        return Err(Error::InvalidParameter(format!("k must be at most 2, got {k}")));
    }
    Ok(())
}

/// Processes one target: three passes (empty failure, single failures, pairs),
/// each over the sources in ascending order, sharing one last-edge set.
fn build_target(
    g: &Graph,
    sources: &[Vertex],
    k: usize,
    mode: FailureMode,
    v: Vertex,
) -> Result<TargetRecord> {
    let protected: &[Vertex] = if mode == FailureMode::Vertex { sources } else { &[] };
    let plans: Vec<(Vertex, BaseChain, FailureSchedule)> = sources
        .iter()
        .filter(|&&s| s != v)
        .map(|&s| build_failure_schedule_protected(g, s, v, k, mode, protected).map(|(c, f)| (s, c, f)))
        .collect::<Result<_>>()?;

    let mut rec = TargetRecord::default();
    for size in 0..=k {
        for (s, chain, schedule) in &plans {
            for entry in schedule.entries.iter().filter(|e| e.failure.len() == size) {
                let f = &entry.failure;
                let path = match size {
                    0 => chain.p0.clone(),
                    1 => chain.entries[entry.chain_entry.unwrap()].p1.clone(),
                    _ => {
                        let ce = &chain.entries[entry.chain_entry.unwrap()];
                        preferred_between(
                            g,
                            *s,
                            v,
                            &chain.p0.as_ref().unwrap().vertices,
                            Some(&ce.p1.as_ref().unwrap().vertices),
                            f,
                        )?
                    }
                };
                let Some(path) = path else {
                    rec.unreachable.push(Unreachable { source: *s, failure: f.clone() });
                    continue;
                };
                let last_edge = path.last_edge(g).expect("source differs from target");
                if rec.last_edges.insert(last_edge) {
                    rec.assignments.push(Assignment {
                        source: *s,
                        failure: f.clone(),
                        path,
                        last_edge,
                    });
                }
            }
        }
    }
    Ok(rec)
}

/// Builds the structure restricted to `targets`. Targets are independent, so
/// any partition of the vertex set can be built separately and merged.
pub fn build_for_targets(
    g: &Graph,
    sources: &[Vertex],
    k: usize,
    mode: FailureMode,
    targets: &[Vertex],
    exec: Exec,
) -> Result<FtStructure> {
    validate(g, sources, k)?;
    let mut sorted = sources.to_vec();
    sorted.sort_unstable();
    for &v in targets {
        g.check_vertex(v)?;
    }
    // A vertex that is the only source has nothing to preserve.
    let targets: Vec<Vertex> = targets.iter().copied().filter(|&v| sorted != [v]).collect();
    let run = |&v: &Vertex| build_target(g, &sorted, k, mode, v).map(|r| (v, r));
    let records: Vec<(Vertex, TargetRecord)> = match exec {
        Exec::Sequential => targets.iter().map(run).collect::<Result<_>>()?,
        Exec::Parallel => targets.par_iter().map(run).collect::<Result<_>>()?,
    };
    let mut st = FtStructure {
        params: BuildParams { sources: sorted, k, mode },
        n: g.n(),
        ..FtStructure::default()
    };
    for (v, rec) in records {
        if st.targets.contains_key(&v) {
            return Err(Error::OverlappingTargets(v));
        }
        st.edges.extend(rec.last_edges.iter().copied());
        st.targets.insert(v, rec);
    }
    Ok(st)
}

/// Multi-source structure for up to `k` failures.
pub fn build_ft_mbfs_with(
    g: &Graph,
    sources: &[Vertex],
    k: usize,
    mode: FailureMode,
    exec: Exec,
) -> Result<FtStructure> {
    let targets: Vec<Vertex> = (0..g.n()).collect();
    build_for_targets(g, sources, k, mode, &targets, exec)
}

pub fn build_ft_mbfs(g: &Graph, sources: &[Vertex], k: usize, mode: FailureMode) -> Result<FtStructure> {
    build_ft_mbfs_with(g, sources, k, mode, Exec::Parallel)
}

pub fn build_ft_structure(g: &Graph, s: Vertex, k: usize, mode: FailureMode) -> Result<FtStructure> {
    build_ft_mbfs(g, &[s], k, mode)
}

/// Union of structures built over disjoint target sets with equal parameters.
pub fn merge_structures(parts: Vec<FtStructure>) -> Result<FtStructure> {
    let mut parts = parts.into_iter();
    let Some(mut merged) = parts.next() else {
        return Ok(FtStructure::default());
    };
    for part in parts {
        if part.params != merged.params || part.n != merged.n {
            return Err(Error::ParameterMismatch);
        }
        for (v, rec) in part.targets {
            if merged.targets.contains_key(&v) {
                return Err(Error::OverlappingTargets(v));
            }
            merged.edges.extend(rec.last_edges.iter().copied());
            merged.targets.insert(v, rec);
        }
    }
    Ok(merged)
}
