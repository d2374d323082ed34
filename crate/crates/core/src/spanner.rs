//! Dual fault-tolerant +2 additive spanner: every edge at a low-degree
//! vertex, plus a multi-source structure rooted at a set of sources that
//! dominates every high-degree vertex three times over.

use rand::SeedableRng;
use rand_xoshiro::SplitMix64;
use serde::{Deserialize, Serialize};

use crate::builder::{build_ft_mbfs_with, Exec};
use crate::error::{Error, Result};
use crate::graph::{unit_f64, Edge, FailureMode, Graph, Vertex};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SpannerPlan {
    pub sigma: usize,
    /// Degree threshold: vertices of degree above it are heavy.
    pub delta: usize,
    pub sources: Vec<Vertex>,
    pub sampled: usize,
    pub light_edges: Vec<Edge>,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SpannerReport {
    pub sigma: usize,
    pub delta: usize,
    pub sources: Vec<Vertex>,
    pub light_edge_count: usize,
    pub ft_edge_count: usize,
    pub total_edges: usize,
    pub bound: f64,
    pub ratio: f64,
}

/// `ceil(n^(1/4))`, at least 1.
pub fn default_sigma(n: usize) -> usize {
    let r = (n as f64).powf(0.25);
    let rounded = r.round();
    let s = if (r - rounded).abs() < 1e-9 { rounded } else { r.ceil() };
    (s as usize).max(1)
}

/// Picks sources so that every vertex of degree above `ceil(n / sigma)` has
/// at least `min(k + 1, degree)` source neighbours. Vertices are first
/// sampled independently at rate `min(1, sigma * ln n / n)`; each heavy
/// vertex, in ascending order, then adds its highest-degree non-source
/// neighbours (smaller index on ties) until covered.
pub fn select_sources(g: &Graph, sigma: usize, k: usize, seed: u64) -> Result<SpannerPlan> {
    if g.is_directed() {
        return Err(Error::InvalidParameter("spanners are built on undirected graphs".into()));
    }
    if sigma == 0 {
        return Err(Error::InvalidParameter("sigma must be at least 1".into()));
    }
    let n = g.n();
    let delta = n.div_ceil(sigma);
    let rate = (sigma as f64 * (n as f64).ln() / n as f64).min(1.0);
    let heavy: Vec<Vertex> = (0..n).filter(|&v| g.degree(v) > delta).collect();

    let mut is_source = vec![false; n];
    let mut sampled = 0;
    if !heavy.is_empty() {
        let mut rng = SplitMix64::seed_from_u64(seed);
        for flag in is_source.iter_mut() {
            if unit_f64(&mut rng) < rate {
                *flag = true;
                sampled += 1;
            }
        }
    }
    for &x in &heavy {
        let need = (k + 1).min(g.degree(x));
        let mut have = g.neighbors(x).iter().filter(|&&w| is_source[w]).count();
        while have < need {
            let pick = g
                .neighbors(x)
                .iter()
                .copied()
                .filter(|&w| !is_source[w])
                .max_by_key(|&w| (g.degree(w), std::cmp::Reverse(w)))
                .expect("degree bounds the number of neighbours");
            is_source[pick] = true;
            have += 1;
        }
    }
    let sources: Vec<Vertex> = (0..n).filter(|&v| is_source[v]).collect();
    let light_edges = g
        .edges()
        .iter()
        .copied()
        .filter(|e| g.degree(e.0) <= delta || g.degree(e.1) <= delta)
        .collect();
    Ok(SpannerPlan { sigma, delta, sources, sampled, light_edges, seed })
}

/// Light edges united with the dual fault-tolerant multi-source structure
/// from the plan's sources. The report compares the size against `n^{7/4}`.
pub fn build_additive_spanner(
    g: &Graph,
    sigma: Option<usize>,
    seed: u64,
    exec: Exec,
) -> Result<(Graph, SpannerPlan, SpannerReport)> {
    let sigma = sigma.unwrap_or_else(|| default_sigma(g.n()));
    let plan = select_sources(g, sigma, 2, seed)?;
    let ft_edges = if plan.sources.is_empty() {
        Default::default()
    } else {
        build_ft_mbfs_with(g, &plan.sources, 2, FailureMode::Edge, exec)?.edges
    };
    let h = g.with_edges(plan.light_edges.iter().copied().chain(ft_edges.iter().copied()))?;
    let bound = (g.n() as f64).powf(1.75);
    let report = SpannerReport {
        sigma,
        delta: plan.delta,
        sources: plan.sources.clone(),
        light_edge_count: plan.light_edges.len(),
        ft_edge_count: ft_edges.len(),
        total_edges: h.m(),
        bound,
        ratio: h.m() as f64 / bound,
    };
    Ok((h, plan, report))
}
