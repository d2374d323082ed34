use std::collections::VecDeque;

use crate::graph::{Dist, GraphView, Vertex, INF};

/// Hop distances from `s` in `view`; unreachable vertices get [`INF`].
pub fn bfs_distances(view: &GraphView<'_>, s: Vertex) -> Vec<Dist> {
    sweep(view, s, |view, u, out| out.extend(view.out_neighbors(u)))
}

/// Hop distances *to* `t`, following edges backwards.
pub fn distances_to(view: &GraphView<'_>, t: Vertex) -> Vec<Dist> {
    sweep(view, t, |view, u, out| out.extend(view.in_neighbors(u)))
}

fn sweep<F>(view: &GraphView<'_>, root: Vertex, expand: F) -> Vec<Dist>
where
    F: Fn(&GraphView<'_>, Vertex, &mut Vec<Vertex>),
{
    let mut dist = vec![INF; view.n()];
    if !view.is_vertex_alive(root) {
        return dist;
    }
    dist[root] = 0;
    let mut queue = VecDeque::from([root]);
    let mut next = Vec::new();
    while let Some(u) = queue.pop_front() {
        next.clear();
        expand(view, u, &mut next);
        for &w in &next {
            if dist[w] == INF {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Greedy descent along `dist_to_target`: from `start`, repeatedly step to
/// the smallest-index neighbour one hop closer to the target. Yields the
/// lexicographically smallest shortest path. `start` must have a finite
/// distance.
pub(crate) fn descend(view: &GraphView<'_>, dist_to_target: &[Dist], start: Vertex) -> Vec<Vertex> {
    let mut path = vec![start];
    let mut cur = start;
    while dist_to_target[cur] > 0 {
        let want = dist_to_target[cur] - 1;
        cur = view
            .out_neighbors(cur)
            .find(|&w| dist_to_target[w] == want)
            .expect("finite distance implies a closer neighbour");
        path.push(cur);
    }
    path
}
