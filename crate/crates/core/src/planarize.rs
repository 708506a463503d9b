//! Planar model of a graph with a planar-or-small tree-decomposition.
//!
//! Every bag `t` gets its own copy `V'_t` of its vertices. Planar-type bags
//! keep a copy of their torso, small-type bags a breadth-first spanning tree
//! of it, and each tree edge `st` adds one link edge between the two copies
//! of a chosen vertex of `V_s ∩ V_t`. The result `G'` has a decomposition
//! with adhesion 1, so it is planar, and `u -> u^(t_u)` is a
//! quasi-isometry with explicitly computable constants.

use std::collections::VecDeque;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{all_pairs_distances, multi_source_bfs, planarity_check, subset_diameter, DistanceMatrix, Graph};
use crate::treedec::{intersect, BagType, TreeDecomposition};

/// How small-type bags are rebuilt in `G'`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SmallBags {
    /// Breadth-first spanning tree of the torso (the construction proper).
    SpanningTree,
    /// Full torso copy; only used to compare distances.
    FullTorso,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ConstantPack {
    /// Largest `G`-diameter of a small-type bag.
    pub a1: u64,
    /// `max(1, largest small-type bag)`.
    pub a2: u64,
    /// Largest tree-diameter of a subtree `T_u`.
    pub b: u64,
    /// Largest `G`-distance between two vertices of one adhesion set.
    pub c: u64,
    /// `max(A1, C)`, floored at 1.
    pub alpha: u64,
    /// `(4 A2 + 2) B + A2`.
    pub beta: u64,
    /// `(2 A2 + 1) B`.
    pub surj_radius: u64,
}

impl Serialize for ConstantPack {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("ConstantPack", 7)?;
        st.serialize_field("A1", &self.a1)?;
        st.serialize_field("A2", &self.a2)?;
        st.serialize_field("B", &self.b)?;
        st.serialize_field("C", &self.c)?;
        st.serialize_field("alpha", &self.alpha)?;
        st.serialize_field("beta", &self.beta)?;
        st.serialize_field("surj_radius", &self.surj_radius)?;
        st.end()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PlanarizationResult {
    pub gprime: Graph,
    pub tprime: TreeDecomposition,
    /// `f[u]` is the copy of `u` in the smallest node holding `u`.
    pub f: Vec<usize>,
    /// `copies[t][i]` is the copy of `bags[t][i]`.
    pub copies: Vec<Vec<usize>>,
    /// Tree edge `(s, t)` and the vertex `u_st` joined across it.
    pub links: Vec<((usize, usize), usize)>,
    pub constants: ConstantPack,
}

impl PlanarizationResult {
    /// Copy of `u` in node `t`, if `u` is in `V_t`.
    pub fn copy(&self, td: &TreeDecomposition, u: usize, t: usize) -> Option<usize> {
        td.bags.get(t)?.binary_search(&u).ok().map(|i| self.copies[t][i])
    }
}

pub fn build_gprime(g: &Graph, td: &TreeDecomposition) -> Result<PlanarizationResult> {
    build_gprime_with(g, td, SmallBags::SpanningTree)
}

pub fn build_gprime_with(g: &Graph, td: &TreeDecomposition, small: SmallBags) -> Result<PlanarizationResult> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    td.check(g)?;
    let mut gprime = Graph::new(0);
    let mut copies = Vec::with_capacity(td.len());
    for (t, bag) in td.bags.iter().enumerate() {
        let local: Vec<usize> = bag
            .iter()
            .map(|&u| {
                let c = gprime.add_vertex();
                gprime.set_label(c, format!("{}@{t}", g.display_name(u)));
                c
            })
            .collect();
        let (torso, _) = td.torso(g, t)?;
        let edges = match (td.bag_type[t], small) {
            (BagType::Planar, _) | (BagType::Small, SmallBags::FullTorso) => torso.edge_list(),
            (BagType::Small, SmallBags::SpanningTree) => bfs_tree(&torso)?,
        };
        for (a, b) in edges {
            gprime.add_edge(local[a], local[b])?;
        }
        copies.push(local);
    }
    let copy = |u: usize, t: usize| copies[t][td.bags[t].binary_search(&u).expect("u in bag")];
    let mut links = Vec::new();
    for (s, t) in td.tree.edges() {
        let adh = intersect(&td.bags[s], &td.bags[t]);
        let u = *adh.first().ok_or(Error::EmptyAdhesion(s, t))?;
        gprime.add_edge(copy(u, s), copy(u, t))?;
        links.push(((s, t), u));
    }
    let occ = td.occurrences(g.n());
    let f: Vec<usize> = (0..g.n()).map(|u| copy(u, occ[u][0])).collect();

    // T' is the 1-subdivision of T: edge number e becomes node N + e
    let n_nodes = td.len();
    let mut bags: Vec<Vec<usize>> = copies.clone();
    let mut kinds = td.bag_type.clone();
    let mut tree_edges = Vec::new();
    for (e, &((s, t), u)) in links.iter().enumerate() {
        bags.push(vec![copy(u, s), copy(u, t)]);
        kinds.push(BagType::Small);
        tree_edges.push((s, n_nodes + e));
        tree_edges.push((n_nodes + e, t));
    }
    let tprime = TreeDecomposition::new(Graph::from_edges(n_nodes + links.len(), tree_edges)?, bags, kinds)?;
    let constants = constants(g, td, &occ)?;
    Ok(PlanarizationResult {
        gprime,
        tprime,
        f,
        copies,
        links,
        constants,
    })
}

/// Breadth-first spanning tree rooted at vertex 0, scanning neighbours in order.
fn bfs_tree(g: &Graph) -> Result<Vec<(usize, usize)>> {
    let mut edges = Vec::new();
    if g.n() == 0 {
        return Ok(edges);
    }
    let mut seen = vec![false; g.n()];
    seen[0] = true;
    let mut queue = VecDeque::from([0]);
    while let Some(v) = queue.pop_front() {
        for &w in g.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                edges.push((v.min(w), v.max(w)));
                queue.push_back(w);
            }
        }
    }
    if edges.len() + 1 != g.n() {
        return Err(Error::Verification("torso of a small-type bag is disconnected".into()));
    }
    Ok(edges)
}

fn constants(g: &Graph, td: &TreeDecomposition, occ: &[Vec<usize>]) -> Result<ConstantPack> {
    let mut a1 = 0u64;
    let mut largest_small = 0u64;
    for (t, bag) in td.bags.iter().enumerate() {
        if td.bag_type[t] == BagType::Small && !bag.is_empty() {
            a1 = a1.max(u64::from(subset_diameter(g, bag)?));
            largest_small = largest_small.max(bag.len() as u64);
        }
    }
    let a2 = largest_small.max(1);
    let mut in_subtree = vec![false; td.len()];
    let mut b = 0u64;
    for nodes in occ {
        for &t in nodes {
            in_subtree[t] = true;
        }
        let (far, _) = farthest_in(&td.tree, nodes[0], &in_subtree);
        let (_, diam) = farthest_in(&td.tree, far, &in_subtree);
        b = b.max(diam as u64);
        for &t in nodes {
            in_subtree[t] = false;
        }
    }
    let mut c = 0u64;
    for adh in td.adhesion_sets().values() {
        for (i, &u) in adh.iter().enumerate() {
            if i + 1 < adh.len() {
                let d = multi_source_bfs(g, &[u]);
                for &v in &adh[i + 1..] {
                    c = c.max(u64::from(d[v].ok_or(Error::Disconnected)?));
                }
            }
        }
    }
    Ok(ConstantPack {
        a1,
        a2,
        b,
        c,
        alpha: a1.max(c).max(1),
        beta: (4 * a2 + 2) * b + a2,
        surj_radius: (2 * a2 + 1) * b,
    })
}

/// BFS inside the marked part of a tree; returns the last vertex reached and its depth.
fn farthest_in(tree: &Graph, start: usize, marked: &[bool]) -> (usize, usize) {
    let mut depth = vec![usize::MAX; tree.n()];
    depth[start] = 0;
    let mut queue = VecDeque::from([start]);
    let mut last = (start, 0);
    while let Some(v) = queue.pop_front() {
        last = (v, depth[v]);
        for &w in tree.neighbors(v) {
            if marked[w] && depth[w] == usize::MAX {
                depth[w] = depth[v] + 1;
                queue.push_back(w);
            }
        }
    }
    last
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    /// `d_G(u,v) <= max(C,1) * d_torso(u,v)` inside every bag.
    TorsoDistance,
    /// `d_G(u,v) <= alpha` for every edge `u^(t) v^(s)` of `G'`.
    EdgeContraction,
    /// `d_G'(u^(t), v^(s)) <= beta` for every edge `uv` and hosting bags.
    EdgeExpansion,
    /// `d_G'(u^(s), u^(t)) <= (2 A2 + 1) B`.
    CopySpread,
    /// `d_G <= alpha d_G'` and `d_G' <= beta d_G` between images under `f`.
    Sandwich,
    /// Every vertex of `G'` within the surjectivity radius of `f(V(G))`.
    Surjectivity,
    /// `T'` is a tree-decomposition of `G'` with all adhesion sets of size 1.
    Subdivision,
    /// `G'` is planar.
    Planarity,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub check: Check,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClaimsReport {
    pub constants: ConstantPack,
    pub checks: Vec<(Check, u64)>,
    pub violations: Vec<Violation>,
    /// Largest `d_G(u,v) / d_torso(u,v)` over bags and pairs.
    pub measured_torso_ratio: f64,
    /// Largest `d_G(u,v) / d_G'(f u, f v)`.
    pub measured_contraction: f64,
    /// Largest `d_G'(f u, f v) / d_G(u,v)`.
    pub measured_expansion: f64,
    /// Largest distance from a vertex of `G'` to `f(V(G))`.
    pub measured_surj_radius: u64,
    pub gprime_planar: bool,
}

impl ClaimsReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violations_of(&self, check: Check) -> usize {
        self.violations.iter().filter(|v| v.check == check).count()
    }
}

/// Exhaustive check of every inequality of the construction, with exact
/// all-pairs distances in `G` and `G'`.
pub fn verify_claims(g: &Graph, td: &TreeDecomposition, res: &PlanarizationResult) -> Result<ClaimsReport> {
    if res.f.len() != g.n()
        || res.copies.len() != td.len()
        || res.copies.iter().zip(&td.bags).any(|(c, b)| c.len() != b.len())
    {
        return Err(Error::Verification("result does not belong to this graph and decomposition".into()));
    }
    let k = res.constants;
    let dg = all_pairs_distances(g);
    let dp = all_pairs_distances(&res.gprime);
    let mut out = Recorder::default();

    // torso distances
    let c_mult = k.c.max(1);
    let mut torso_ratio = 0f64;
    let mut checked = 0;
    for (t, bag) in td.bags.iter().enumerate() {
        let (torso, back) = td.torso(g, t)?;
        let dt = all_pairs_distances(&torso);
        for i in 0..back.len() {
            for j in i + 1..back.len() {
                checked += 1;
                let (dgv, dtv) = (dist(&dg, back[i], back[j]), dist(&dt, i, j));
                torso_ratio = torso_ratio.max(dgv as f64 / dtv as f64);
                if dgv > c_mult * dtv {
                    out.fail(Check::TorsoDistance, format!(
                        "bag {t}: d_G({},{}) = {dgv} > {c_mult} * {dtv}",
                        bag[i], bag[j]
                    ));
                }
            }
        }
    }
    out.count(Check::TorsoDistance, checked);

    // owner[x] = original vertex of the copy x
    let mut owner = vec![usize::MAX; res.gprime.n()];
    for (t, bag) in td.bags.iter().enumerate() {
        for (i, &u) in bag.iter().enumerate() {
            owner[res.copies[t][i]] = u;
        }
    }
    let mut checked = 0;
    for (x, y) in res.gprime.edges() {
        checked += 1;
        let d = dist(&dg, owner[x], owner[y]);
        if d > k.alpha {
            out.fail(Check::EdgeContraction, format!("G' edge {x}-{y}: d_G = {d} > alpha = {}", k.alpha));
        }
    }
    out.count(Check::EdgeContraction, checked);

    let occ = td.occurrences(g.n());
    let mut checked = 0;
    for (u, v) in g.edges() {
        for &t in &occ[u] {
            for &s in &occ[v] {
                checked += 1;
                let (cu, cv) = (res.copy(td, u, t).unwrap(), res.copy(td, v, s).unwrap());
                let d = dist(&dp, cu, cv);
                if d > k.beta {
                    out.fail(Check::EdgeExpansion, format!(
                        "edge {u}-{v}, bags {t},{s}: d_G' = {d} > beta = {}",
                        k.beta
                    ));
                }
            }
        }
    }
    out.count(Check::EdgeExpansion, checked);

    let mut checked = 0;
    for (u, nodes) in occ.iter().enumerate() {
        for &s in nodes {
            for &t in nodes {
                checked += 1;
                let d = dist(&dp, res.copy(td, u, s).unwrap(), res.copy(td, u, t).unwrap());
                if d > k.surj_radius {
                    out.fail(Check::CopySpread, format!(
                        "vertex {u}, bags {s},{t}: d_G' = {d} > {}",
                        k.surj_radius
                    ));
                }
            }
        }
    }
    out.count(Check::CopySpread, checked);

    let mut contraction = 0f64;
    let mut expansion = 0f64;
    let mut checked = 0;
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            checked += 1;
            let a = dist(&dg, u, v);
            let b = dist(&dp, res.f[u], res.f[v]);
            contraction = contraction.max(a as f64 / b.max(1) as f64);
            expansion = expansion.max(b as f64 / a as f64);
            if b == 0 || a > k.alpha * b || b > k.beta * a {
                out.fail(Check::Sandwich, format!("pair {u},{v}: d_G = {a}, d_G'(f u, f v) = {b}"));
            }
        }
    }
    out.count(Check::Sandwich, checked);

    let near = multi_source_bfs(&res.gprime, &res.f);
    let mut surj = 0u64;
    for (x, d) in near.iter().enumerate() {
        let d = u64::from(d.ok_or(Error::Verification("G' is disconnected".into()))?);
        surj = surj.max(d);
        if d > k.surj_radius {
            out.fail(Check::Surjectivity, format!("G' vertex {x} at distance {d} > {}", k.surj_radius));
        }
    }
    out.count(Check::Surjectivity, near.len());

    let report = res.tprime.validate(&res.gprime);
    for issue in &report.issues {
        out.fail(Check::Subdivision, issue.to_string());
    }
    for (edge, adh) in res.tprime.adhesion_sets() {
        if adh.len() != 1 {
            out.fail(Check::Subdivision, format!("T' edge {edge:?} has adhesion {}", adh.len()));
        }
    }
    out.count(Check::Subdivision, res.tprime.len());

    let gprime_planar = planarity_check(&res.gprime).is_planar();
    if !gprime_planar {
        out.fail(Check::Planarity, "G' is not planar".into());
    }
    out.count(Check::Planarity, 1);

    Ok(ClaimsReport {
        constants: k,
        checks: out.checks,
        violations: out.violations,
        measured_torso_ratio: torso_ratio,
        measured_contraction: contraction,
        measured_expansion: expansion,
        measured_surj_radius: surj,
        gprime_planar,
    })
}

fn dist(d: &DistanceMatrix, u: usize, v: usize) -> u64 {
    u64::from(d.get(u, v).expect("connected"))
}

#[derive(Default)]
struct Recorder {
    checks: Vec<(Check, u64)>,
    violations: Vec<Violation>,
}

impl Recorder {
    fn fail(&mut self, check: Check, detail: String) {
        self.violations.push(Violation { check, detail });
    }

    fn count(&mut self, check: Check, n: usize) {
        self.checks.push((check, n as u64));
    }
}
