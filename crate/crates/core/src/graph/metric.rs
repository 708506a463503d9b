//! Exact shortest-path metric on unweighted graphs.
//!
//! Public functions report unreachable pairs as `None`. The packed
//! [`DistanceMatrix`] stores them with a private marker that never escapes.

use std::collections::{HashMap, VecDeque};

use rayon::prelude::*;

use super::Graph;
use crate::error::{Error, Result};

const UNREACHABLE: u32 = u32::MAX;

/// Fills `dist` with BFS distances from `sources`; `UNREACHABLE` elsewhere.
pub(crate) fn bfs_into(g: &Graph, sources: &[usize], dist: &mut [u32], queue: &mut VecDeque<usize>) {
    dist.fill(UNREACHABLE);
    queue.clear();
    for &s in sources {
        if dist[s] != 0 {
            dist[s] = 0;
            queue.push_back(s);
        }
    }
    while let Some(v) = queue.pop_front() {
        let dv = dist[v] + 1;
        for &w in g.neighbors(v) {
            if dist[w] == UNREACHABLE {
                dist[w] = dv;
                queue.push_back(w);
            }
        }
    }
}

#[inline]
pub(crate) fn finite(d: u32) -> Option<u32> {
    (d != UNREACHABLE).then_some(d)
}

/// Distances from `source` to every vertex.
pub fn bfs_distances(g: &Graph, source: usize) -> Result<Vec<Option<u32>>> {
    g.check_vertex(source)?;
    Ok(multi_source_bfs(g, &[source]))
}

/// Distances from `t` up to `limit`.
pub(crate) fn distances_within(h: &Graph, t: usize, limit: u32) -> HashMap<usize, u32> {
    let mut dist = HashMap::from([(t, 0u32)]);
    let mut queue = VecDeque::from([t]);
    while let Some(v) = queue.pop_front() {
        let d = dist[&v];
        if d == limit {
            continue;
        }
        for &w in h.neighbors(v) {
            dist.entry(w).or_insert_with(|| {
                queue.push_back(w);
                d + 1
            });
        }
    }
    dist
}

/// Distance from every vertex to the nearest vertex of `sources`.
pub fn multi_source_bfs(g: &Graph, sources: &[usize]) -> Vec<Option<u32>> {
    let mut dist = vec![UNREACHABLE; g.n()];
    bfs_into(g, sources, &mut dist, &mut VecDeque::new());
    dist.into_iter().map(finite).collect()
}

/// `d_G(A, B) = min` over pairs; `None` if no pair is connected or a set is empty.
pub fn set_distance(g: &Graph, a: &[usize], b: &[usize]) -> Option<u32> {
    if a.is_empty() || b.is_empty() {
        return None;
    }
    let dist = multi_source_bfs(g, a);
    b.iter().filter_map(|&v| dist[v]).min()
}

/// Diameter of `set` measured in `g` (not in the induced subgraph).
pub fn subset_diameter(g: &Graph, set: &[usize]) -> Result<u32> {
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    for &v in set {
        g.check_vertex(v)?;
    }
    let mut dist = vec![UNREACHABLE; g.n()];
    let mut queue = VecDeque::new();
    let mut best = 0;
    for &s in set {
        bfs_into(g, &[s], &mut dist, &mut queue);
        for &t in set {
            match finite(dist[t]) {
                Some(d) => best = best.max(d),
                None => return Err(Error::Unreachable(s, t)),
            }
        }
    }
    Ok(best)
}

/// Lexicographically smallest shortest path from `s` to `t`: at every step
/// the smallest-id neighbour one step closer to `t` is taken.
pub fn canonical_shortest_path(g: &Graph, s: usize, t: usize) -> Option<Vec<usize>> {
    let to_t = multi_source_bfs(g, &[t]);
    canonical_path_with(g, s, &to_t)
}

pub(crate) fn canonical_path_with(g: &Graph, s: usize, to_t: &[Option<u32>]) -> Option<Vec<usize>> {
    let mut d = to_t[s]?;
    let mut path = vec![s];
    let mut cur = s;
    while d > 0 {
        cur = *g
            .neighbors(cur)
            .iter()
            .find(|&&w| to_t[w] == Some(d - 1))
            .expect("BFS layers are consistent");
        path.push(cur);
        d -= 1;
    }
    Some(path)
}

/// Dense all-pairs distance table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    data: Vec<u32>,
}

impl DistanceMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> Option<u32> {
        finite(self.data[u * self.n + v])
    }

    pub fn row(&self, u: usize) -> impl Iterator<Item = Option<u32>> + '_ {
        self.data[u * self.n..(u + 1) * self.n].iter().map(|&d| finite(d))
    }

    /// Largest finite distance; `None` if some pair is disconnected.
    pub fn diameter(&self) -> Option<u32> {
        let mut best = 0;
        for &d in &self.data {
            if d == UNREACHABLE {
                return None;
            }
            best = best.max(d);
        }
        Some(best)
    }

    pub fn max_over(&self, set: &[usize]) -> Option<u32> {
        let mut best = 0;
        for &u in set {
            for &v in set {
                best = best.max(self.get(u, v)?);
            }
        }
        Some(best)
    }
}

/// One BFS per source, run in parallel. The table does not depend on the
/// thread count.
pub fn all_pairs_distances(g: &Graph) -> DistanceMatrix {
    let n = g.n();
    let mut data = vec![UNREACHABLE; n * n];
    if n > 0 {
        data.par_chunks_mut(n).enumerate().for_each_init(VecDeque::new, |queue, (s, row)| {
            bfs_into(g, &[s], row, queue);
        });
    }
    DistanceMatrix { n, data }
}
