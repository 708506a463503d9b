//! Graph products and transformations: powers, blow-ups, strong products,
//! subdivisions, pendant attachment and disjoint unions.

use std::collections::VecDeque;

use super::Graph;
use crate::error::{Error, Result};

/// `G^k`: same vertices, `uv` adjacent iff `1 <= d_G(u, v) <= k`.
pub fn power(g: &Graph, k: usize) -> Result<Graph> {
    if k == 0 {
        return Err(Error::NonPositive("k"));
    }
    let n = g.n();
    let mut out = Graph::new(n);
    let mut stamp = vec![usize::MAX; n];
    let mut depth = vec![0usize; n];
    let mut queue = VecDeque::new();
    for s in 0..n {
        stamp[s] = s;
        depth[s] = 0;
        queue.clear();
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            if depth[v] == k {
                continue;
            }
            for &w in g.neighbors(v) {
                if stamp[w] != s {
                    stamp[w] = s;
                    depth[w] = depth[v] + 1;
                    queue.push_back(w);
                    if w > s {
                        out.add_edge(s, w)?;
                    }
                }
            }
        }
    }
    out.labels = g.labels.clone();
    Ok(out)
}

/// `G ⊠ K_k`: vertex `u` becomes the clique `{u*k, .., u*k + k - 1}` and
/// every edge becomes a complete bipartite `K_{k,k}`.
pub fn blowup(g: &Graph, k: usize) -> Result<Graph> {
    if k == 0 {
        return Err(Error::NonPositive("k"));
    }
    let mut out = Graph::new(g.n() * k);
    for u in 0..g.n() {
        for i in 0..k {
            out.set_label(u * k + i, format!("{}#{i}", g.display_name(u)));
            for j in i + 1..k {
                out.add_edge(u * k + i, u * k + j)?;
            }
        }
    }
    for (u, v) in g.edges() {
        for i in 0..k {
            for j in 0..k {
                out.add_edge(u * k + i, v * k + j)?;
            }
        }
    }
    Ok(out)
}

/// `G ⊠ H` with `(u, x)` numbered `u * |H| + x`.
pub fn strong_product(g: &Graph, h: &Graph) -> Graph {
    let hn = h.n();
    let mut out = Graph::new(g.n() * hn);
    let closed = |graph: &Graph, v: usize| {
        std::iter::once(v).chain(graph.neighbors(v).iter().copied()).collect::<Vec<_>>()
    };
    for u in 0..g.n() {
        let gu = closed(g, u);
        for x in 0..hn {
            let a = u * hn + x;
            out.set_label(a, format!("({},{})", g.display_name(u), h.display_name(x)));
            let hx = closed(h, x);
            for &v in &gu {
                for &y in &hx {
                    let b = v * hn + y;
                    if b > a {
                        out.add_edge(a, b).expect("in range");
                    }
                }
            }
        }
    }
    out
}

/// Replaces every edge by a path with `m` internal vertices. Edge number `j`
/// (in [`Graph::edge_list`] order) gets internal vertices `n + j*m .. n + (j+1)*m`.
pub fn subdivide(g: &Graph, m: usize) -> Graph {
    if m == 0 {
        return g.clone();
    }
    let n = g.n();
    let mut out = Graph::new(n + m * g.m());
    out.labels = g.labels.clone();
    for (j, (u, v)) in g.edges().enumerate() {
        let base = n + j * m;
        let mut prev = u;
        for p in 0..m {
            out.add_edge(prev, base + p).expect("in range");
            out.set_label(base + p, format!("e{u}-{v}/{}", p + 1));
            prev = base + p;
        }
        out.add_edge(prev, v).expect("in range");
    }
    out
}

/// Gives every vertex `v` the pendant leaves `n + v*k .. n + (v+1)*k`.
pub fn attach_pendants(g: &Graph, k: usize) -> Result<Graph> {
    if k == 0 {
        return Err(Error::NonPositive("k"));
    }
    let n = g.n();
    let mut out = Graph::new(n * (1 + k));
    out.labels = g.labels.clone();
    for (u, v) in g.edges() {
        out.add_edge(u, v)?;
    }
    for v in 0..n {
        for i in 0..k {
            let p = n + v * k + i;
            out.add_edge(v, p)?;
            out.set_label(p, format!("{}+{i}", g.display_name(v)));
        }
    }
    Ok(out)
}

/// Disjoint union; component `c` keeps its vertex order and gets labels `c:<name>`.
pub fn disjoint_union(graphs: &[Graph]) -> Graph {
    let total = graphs.iter().map(Graph::n).sum();
    let mut out = Graph::new(total);
    let mut offset = 0;
    for (c, g) in graphs.iter().enumerate() {
        for v in 0..g.n() {
            out.set_label(offset + v, format!("{c}:{}", g.display_name(v)));
        }
        for (u, v) in g.edges() {
            out.add_edge(offset + u, offset + v).expect("in range");
        }
        offset += g.n();
    }
    out
}

/// Result of [`pendant_power_embedding`].
#[derive(Clone, Debug)]
pub struct PendantEmbedding {
    /// `attach_pendants(H, k)`.
    pub host: Graph,
    /// `blowup(power(H, k), k)`.
    pub source: Graph,
    /// Injective homomorphism `source -> power(host, k + 2)`.
    pub map: Vec<usize>,
}

/// Sends the clique of `v` in `blowup(power(H, k), k)` onto the `k` pendant
/// leaves of `v` in `attach_pendants(H, k)`, and checks that the result is an
/// injective homomorphism into `power(attach_pendants(H, k), k + 2)`.
pub fn pendant_power_embedding(h: &Graph, k: usize) -> Result<PendantEmbedding> {
    let host = attach_pendants(h, k)?;
    let source = blowup(&power(h, k)?, k)?;
    let n = h.n();
    // copy i of v sits at v*k + i in the blow-up and at n + v*k + i in the host
    let map: Vec<usize> = (0..source.n()).map(|x| n + x).collect();
    let target = power(&host, k + 2)?;
    verify_injective_homomorphism(&source, &target, &map)?;
    Ok(PendantEmbedding { host, source, map })
}

pub(crate) fn verify_injective_homomorphism(src: &Graph, dst: &Graph, map: &[usize]) -> Result<()> {
    if map.len() != src.n() {
        return Err(Error::Verification(format!(
            "map has {} entries for {} vertices",
            map.len(),
            src.n()
        )));
    }
    let mut seen = vec![usize::MAX; dst.n()];
    for (x, &y) in map.iter().enumerate() {
        if y >= dst.n() {
            return Err(Error::Verification(format!("image {y} of {x} out of range")));
        }
        if seen[y] != usize::MAX {
            return Err(Error::Verification(format!(
                "vertices {} and {x} share the image {y}",
                seen[y]
            )));
        }
        seen[y] = x;
    }
    for (a, b) in src.edges() {
        if !dst.has_edge(map[a], map[b]) {
            return Err(Error::Verification(format!(
                "edge {a}-{b} maps to the non-edge {}-{}",
                map[a], map[b]
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::{complete, complete_bipartite, cycle, grid2, path};
    use crate::graph::{all_pairs_distances, is_planar};

    fn same_edges(a: &Graph, b: &Graph) -> bool {
        a.n() == b.n() && a.edge_list() == b.edge_list()
    }

    #[test]
    fn power_cases() {
        let g = grid2(4);
        assert!(same_edges(&power(&g, 1).unwrap(), &g));
        assert!(same_edges(&power(&path(3), 2).unwrap(), &complete(3)));
        // 3x3 grid: every vertex is within L1 distance 2 of the centre
        assert_eq!(power(&grid2(3), 2).unwrap().degree(4), 8);
        assert!(matches!(power(&g, 0), Err(Error::NonPositive("k"))));
    }

    #[test]
    fn blowup_cases() {
        let g = cycle(5);
        assert!(same_edges(&blowup(&g, 1).unwrap(), &g));
        assert!(same_edges(&blowup(&path(1), 3).unwrap(), &complete(3)));
        assert!(same_edges(&blowup(&path(2), 2).unwrap(), &complete(4)));
        assert_eq!(blowup(&path(2), 2).unwrap().label(3), Some("1#1"));
        assert!(blowup(&g, 0).is_err());
    }

    #[test]
    fn blowup_distances() {
        let g = grid2(3);
        let k = 3;
        let b = blowup(&g, k).unwrap();
        let dg = all_pairs_distances(&g);
        let db = all_pairs_distances(&b);
        for x in 0..b.n() {
            for y in 0..b.n() {
                let expect = if x == y {
                    0
                } else if x / k == y / k {
                    1
                } else {
                    dg.get(x / k, y / k).unwrap()
                };
                assert_eq!(db.get(x, y), Some(expect));
            }
        }
    }

    #[test]
    fn strong_product_cases() {
        let g = cycle(4);
        assert!(same_edges(&strong_product(&g, &path(1)), &g));
        assert!(same_edges(&strong_product(&path(2), &path(2)), &complete(4)));
        let king = strong_product(&path(3), &path(3));
        assert_eq!(king.degree(4), 8);
        assert_eq!(king.m(), 20);
        assert_eq!(king.label(5), Some("(1,2)"));
    }

    #[test]
    fn subdivide_cases() {
        let g = complete(3);
        assert!(same_edges(&subdivide(&g, 0), &g));
        let s = subdivide(&g, 1);
        assert_eq!((s.n(), s.m()), (6, 6));
        assert!(s.is_connected() && (0..6).all(|v| s.degree(v) == 2));
        let g = grid2(3);
        for m in 0..4 {
            let s = subdivide(&g, m);
            assert_eq!(s.n(), g.n() + m * g.m());
            let dg = all_pairs_distances(&g);
            let ds = all_pairs_distances(&s);
            for u in 0..g.n() {
                for v in 0..g.n() {
                    assert_eq!(ds.get(u, v), dg.get(u, v).map(|d| d * (m as u32 + 1)));
                }
            }
        }
    }

    #[test]
    fn pendants() {
        let g = grid2(3);
        let p = attach_pendants(&g, 2).unwrap();
        assert_eq!(p.n(), 9 * 3);
        assert!((9..27).all(|v| p.degree(v) == 1));
        assert!(same_edges(&attach_pendants(&path(1), 2).unwrap(), &crate::graph::families::star(2)));
        assert!(is_planar(&p));
    }

    #[test]
    fn pendant_embedding_cases() {
        let e = pendant_power_embedding(&path(1), 1).unwrap();
        assert_eq!((e.source.n(), e.host.n()), (1, 2));
        pendant_power_embedding(&path(3), 2).unwrap();
        pendant_power_embedding(&grid2(4), 2).unwrap();
    }

    #[test]
    fn homomorphism_check_rejects() {
        let src = complete(3);
        let dst = path(3);
        assert!(verify_injective_homomorphism(&src, &dst, &[0, 1, 2]).is_err());
        assert!(verify_injective_homomorphism(&path(2), &dst, &[1, 1]).is_err());
    }

    #[test]
    fn union_counts() {
        assert_eq!(disjoint_union(&[]).n(), 0);
        let u = disjoint_union(&[path(1), path(1)]);
        assert_eq!((u.n(), u.m()), (2, 0));
        let u = disjoint_union(&[complete(4), complete_bipartite(2, 3)]);
        assert_eq!(u.m(), 6 + 6);
        assert_eq!(u.label(4), Some("1:0"));
    }
}
