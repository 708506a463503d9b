//! `k`-fat minor certificates: a verifier for the defining conditions, a
//! seeded search for small patterns and the claw construction of fat
//! `K_{m,m}` in the binary tree times the two-way path.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::families::complete_bipartite;
use crate::graph::metric::{bfs_into, finite};
use crate::graph::Graph;
use crate::sources::{tree_times_path, GraphSource, Window};

/// Branch sets `M_v`, one path `P_e` per pattern edge, and the fatness `k`.
/// Paths include their endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FatMinorCertificate {
    pub pattern: Graph,
    pub branch_sets: Vec<Vec<usize>>,
    /// Keyed by the pattern edge `(u, v)` with `u < v`; runs from `M_u` to `M_v`.
    pub paths: BTreeMap<(usize, usize), Vec<usize>>,
    pub k: u32,
}

#[derive(Serialize, Deserialize)]
struct RawCertificate {
    pattern: Graph,
    branch_sets: BTreeMap<String, Vec<usize>>,
    paths: BTreeMap<String, Vec<usize>>,
    k: u32,
}

impl FatMinorCertificate {
    pub fn to_json(&self) -> String {
        let raw = RawCertificate {
            pattern: self.pattern.clone(),
            branch_sets: self.branch_sets.iter().enumerate().map(|(v, s)| (v.to_string(), s.clone())).collect(),
            paths: self.paths.iter().map(|(&(u, v), p)| (format!("{u}-{v}"), p.clone())).collect(),
            k: self.k,
        };
        serde_json::to_string(&raw).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let raw: RawCertificate = serde_json::from_str(s)?;
        let h = raw.pattern.n();
        let mut branch_sets = vec![Vec::new(); h];
        for (key, set) in raw.branch_sets {
            let v: usize = key
                .parse()
                .ok()
                .filter(|&v| v < h)
                .ok_or_else(|| Error::Verification(format!("branch set key `{key}` is not a pattern vertex")))?;
            branch_sets[v] = set;
        }
        let mut paths = BTreeMap::new();
        for (key, path) in raw.paths {
            let parsed = key
                .split_once('-')
                .and_then(|(a, b)| Some((a.parse::<usize>().ok()?, b.parse::<usize>().ok()?)));
            let Some((a, b)) = parsed else {
                return Err(Error::Verification(format!("path key `{key}` is not of the form u-v")));
            };
            // store oriented from the smaller end
            let (key, path) = if a <= b { ((a, b), path) } else { ((b, a), path.into_iter().rev().collect()) };
            paths.insert(key, path);
        }
        Ok(FatMinorCertificate {
            pattern: raw.pattern,
            branch_sets,
            paths,
            k: raw.k,
        })
    }
}

/// The condition a violation belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Clause {
    /// Missing, extra, empty or out-of-range data.
    Malformed,
    /// A branch set does not induce a connected subgraph.
    Connectivity,
    /// Two branch sets overlap or are closer than `k`.
    Separation,
    /// A path is not a path of `G` from `M_u` to `M_v` with internal vertices
    /// outside every branch set.
    Routing,
    /// Two paths are closer than `k`.
    PathSeparation,
    /// A path is closer than `k` to a branch set of a non-incident vertex.
    PathBranchSeparation,
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Clause::Malformed => "malformed",
            Clause::Connectivity => "connectivity",
            Clause::Separation => "separation",
            Clause::Routing => "routing",
            Clause::PathSeparation => "path_separation",
            Clause::PathBranchSeparation => "path_branch_separation",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub clause: Clause,
    pub detail: String,
    /// Vertices of `G` exhibiting the failure.
    pub witness: Vec<usize>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct FatMinorReport {
    pub k: u32,
    pub violations: Vec<Violation>,
    /// Smallest distance between two branch sets.
    pub min_branch_distance: Option<u32>,
    pub min_path_distance: Option<u32>,
    pub min_path_branch_distance: Option<u32>,
}

impl FatMinorReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, clause: Clause) -> bool {
        self.violations.iter().any(|v| v.clause == clause)
    }

    /// Largest `k` the measured distances would allow.
    pub fn max_fatness(&self) -> Option<u32> {
        [self.min_branch_distance, self.min_path_distance, self.min_path_branch_distance]
            .into_iter()
            .flatten()
            .min()
    }
}

fn violation(clause: Clause, detail: String, witness: Vec<usize>) -> Violation {
    Violation { clause, detail, witness }
}

/// Distance from `set` to every vertex.
fn set_bfs(g: &Graph, set: &[usize]) -> Vec<u32> {
    let mut dist = vec![0; g.n()];
    bfs_into(g, set, &mut dist, &mut VecDeque::new());
    dist
}

/// Closest vertex of `to` in a BFS table, with its distance.
fn closest(dist: &[u32], to: &[usize]) -> Option<(u32, usize)> {
    to.iter().filter_map(|&v| finite(dist[v]).map(|d| (d, v))).min()
}

fn is_connected_set(g: &Graph, set: &[usize]) -> bool {
    let (sub, _) = g.induced_subgraph(set);
    sub.is_connected()
}

/// Checks every clause of the definition and lists each failure.
pub fn verify_certificate(g: &Graph, cert: &FatMinorCertificate) -> FatMinorReport {
    let h = &cert.pattern;
    let k = cert.k;
    let mut report = FatMinorReport { k, ..Default::default() };
    let mut out = Vec::new();

    if cert.branch_sets.len() != h.n() {
        out.push(violation(
            Clause::Malformed,
            format!("{} branch sets for a pattern on {} vertices", cert.branch_sets.len(), h.n()),
            vec![],
        ));
        report.violations = out;
        return report;
    }
    let in_range = |s: &[usize]| s.iter().copied().filter(|&v| v >= g.n()).collect::<Vec<_>>();
    let mut structural = false;
    for (v, set) in cert.branch_sets.iter().enumerate() {
        let bad = in_range(set);
        if set.is_empty() || !bad.is_empty() {
            structural = true;
            out.push(violation(Clause::Malformed, format!("branch set {v} is empty or leaves G"), bad));
        }
    }
    for (&(u, v), path) in &cert.paths {
        if !h.has_edge(u, v) {
            structural = true;
            out.push(violation(Clause::Malformed, format!("path {u}-{v} is not a pattern edge"), vec![]));
        }
        let bad = in_range(path);
        if path.is_empty() || !bad.is_empty() {
            structural = true;
            out.push(violation(Clause::Malformed, format!("path {u}-{v} is empty or leaves G"), bad));
        }
    }
    for (u, v) in h.edges() {
        if !cert.paths.contains_key(&(u, v)) {
            structural = true;
            out.push(violation(Clause::Malformed, format!("pattern edge {u}-{v} has no path"), vec![]));
        }
    }
    if structural {
        report.violations = out;
        return report;
    }

    let mut owner: HashMap<usize, usize> = HashMap::new();
    for (v, set) in cert.branch_sets.iter().enumerate() {
        for &x in set {
            if let Some(&u) = owner.get(&x) {
                if u != v {
                    out.push(violation(Clause::Separation, format!("branch sets {u} and {v} share a vertex"), vec![x]));
                }
            } else {
                owner.insert(x, v);
            }
        }
        if !is_connected_set(g, set) {
            out.push(violation(Clause::Connectivity, format!("branch set {v} is not connected"), set.clone()));
        }
    }

    for (&(u, v), path) in &cert.paths {
        if let Some(w) = path.windows(2).find(|w| !g.has_edge(w[0], w[1])) {
            out.push(violation(Clause::Routing, format!("path {u}-{v} uses a non-edge"), w.to_vec()));
        }
        let mut sorted = path.clone();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            out.push(violation(Clause::Routing, format!("path {u}-{v} repeats a vertex"), vec![w[0]]));
        }
        let (first, last) = (path[0], path[path.len() - 1]);
        let ends_ok = (cert.branch_sets[u].contains(&first) && cert.branch_sets[v].contains(&last))
            || (cert.branch_sets[v].contains(&first) && cert.branch_sets[u].contains(&last));
        if !ends_ok {
            out.push(violation(
                Clause::Routing,
                format!("path {u}-{v} does not run from branch set {u} to branch set {v}"),
                vec![first, last],
            ));
        }
        if path.len() > 2 {
            let inner: Vec<usize> = path[1..path.len() - 1].iter().copied().filter(|x| owner.contains_key(x)).collect();
            if !inner.is_empty() {
                out.push(violation(Clause::Routing, format!("path {u}-{v} passes through a branch set"), inner));
            }
        }
    }

    let branch_dist: Vec<Vec<u32>> = cert.branch_sets.par_iter().map(|s| set_bfs(g, s)).collect();
    let edges: Vec<(usize, usize)> = cert.paths.keys().copied().collect();
    let path_dist: Vec<Vec<u32>> = edges.par_iter().map(|e| set_bfs(g, &cert.paths[e])).collect();
    let note = |slot: &mut Option<u32>, d: u32| *slot = Some(slot.map_or(d, |s: u32| s.min(d)));

    for u in 0..h.n() {
        for v in u + 1..h.n() {
            if let Some((d, x)) = closest(&branch_dist[u], &cert.branch_sets[v]) {
                note(&mut report.min_branch_distance, d);
                if d < k && d > 0 {
                    out.push(violation(Clause::Separation, format!("branch sets {u} and {v} are at distance {d} < {k}"), vec![x]));
                }
            }
        }
    }
    for (i, &(a, b)) in edges.iter().enumerate() {
        for &(c, d2) in &edges[i + 1..] {
            if let Some((d, x)) = closest(&path_dist[i], &cert.paths[&(c, d2)]) {
                note(&mut report.min_path_distance, d);
                if d < k {
                    out.push(violation(
                        Clause::PathSeparation,
                        format!("paths {a}-{b} and {c}-{d2} are at distance {d} < {k}"),
                        vec![x],
                    ));
                }
            }
        }
        for w in (0..h.n()).filter(|&w| w != a && w != b) {
            if let Some((d, x)) = closest(&path_dist[i], &cert.branch_sets[w]) {
                note(&mut report.min_path_branch_distance, d);
                if d < k {
                    out.push(violation(
                        Clause::PathBranchSeparation,
                        format!("path {a}-{b} is at distance {d} < {k} from branch set {w}"),
                        vec![x],
                    ));
                }
            }
        }
    }
    report.violations = out;
    report
}

/// Outcome of [`search_fat_minor`] when nothing was found.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchExhausted {
    pub restarts: u64,
    pub nodes: u64,
}

/// Seeded greedy search with restarts: pick far-apart centres, grow balls
/// around them as branch sets, then route each pattern edge by BFS outside
/// the `k`-neighbourhoods of everything placed so far. `budget` caps the
/// number of vertices expanded over all restarts. Only certificates that pass
/// [`verify_certificate`] are returned.
pub fn search_fat_minor(
    g: &Graph,
    pattern: &Graph,
    k: u32,
    budget: u64,
    seed: u64,
) -> std::result::Result<FatMinorCertificate, SearchExhausted> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut nodes = 0u64;
    let mut restarts = 0u64;
    if pattern.n() == 0 || g.n() == 0 {
        return Err(SearchExhausted { restarts, nodes });
    }
    while nodes < budget {
        restarts += 1;
        let rho = match restarts % 3 {
            1 => k.div_ceil(2),
            2 => k,
            _ => k + k.div_ceil(2),
        };
        let Some(cert) = attempt(g, pattern, k, rho, &mut rng, &mut nodes, budget) else {
            if g.n() as u64 * 2 > budget && restarts > 64 {
                break;
            }
            continue;
        };
        if verify_certificate(g, &cert).is_valid() {
            return Ok(cert);
        }
    }
    Err(SearchExhausted { restarts, nodes })
}

fn attempt(
    g: &Graph,
    pattern: &Graph,
    k: u32,
    rho: u32,
    rng: &mut ChaCha8Rng,
    nodes: &mut u64,
    budget: u64,
) -> Option<FatMinorCertificate> {
    let n = g.n();
    let spread = 2 * rho + k + 1;
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    // distance to the nearest chosen centre
    let mut near = vec![u32::MAX; n];
    let mut queue = VecDeque::new();
    let mut branch_sets = Vec::with_capacity(pattern.n());
    let mut owner = vec![usize::MAX; n];
    for v in 0..pattern.n() {
        let &center = order.iter().find(|&&x| near[x] >= spread && g.degree(x) >= pattern.degree(v).min(1))?;
        let mut dist = vec![0; n];
        bfs_into(g, &[center], &mut dist, &mut queue);
        *nodes += n as u64;
        let set: Vec<usize> = (0..n).filter(|&x| dist[x] <= rho).collect();
        for x in 0..n {
            near[x] = near[x].min(dist[x]);
        }
        for &x in &set {
            owner[x] = v;
        }
        branch_sets.push(set);
    }
    // blocked[x]: x may not appear on a new path routed between u and v
    let mut path_zone = vec![u32::MAX; n];
    let branch_zone: Vec<Vec<u32>> = branch_sets.iter().map(|s| set_bfs(g, s)).collect();
    *nodes += (n * branch_sets.len()) as u64;
    let mut edges = pattern.edge_list();
    edges.shuffle(rng);
    let mut paths = BTreeMap::new();
    for (u, v) in edges {
        if *nodes >= budget {
            return None;
        }
        let allowed = |x: usize| {
            path_zone[x] >= k
                && (0..branch_sets.len()).all(|w| w == u || w == v || branch_zone[w][x] >= k)
        };
        let mut prev = vec![usize::MAX; n];
        let mut seen = vec![false; n];
        queue.clear();
        for &s in &branch_sets[u] {
            if allowed(s) {
                seen[s] = true;
                queue.push_back(s);
            }
        }
        let mut end = None;
        'bfs: while let Some(x) = queue.pop_front() {
            *nodes += 1;
            for &y in g.neighbors(x) {
                if seen[y] || !allowed(y) {
                    continue;
                }
                if owner[y] == v {
                    prev[y] = x;
                    end = Some(y);
                    break 'bfs;
                }
                if owner[y] != usize::MAX {
                    continue;
                }
                seen[y] = true;
                prev[y] = x;
                queue.push_back(y);
            }
        }
        let end = end?;
        let mut path = vec![end];
        let mut cur = end;
        while owner[cur] != u {
            cur = prev[cur];
            path.push(cur);
        }
        path.reverse();
        let zone = set_bfs(g, &path);
        *nodes += n as u64;
        for x in 0..n {
            path_zone[x] = path_zone[x].min(zone[x]);
        }
        let key = if u < v { (u, v) } else { (v, u) };
        if u > v {
            path.reverse();
        }
        paths.insert(key, path);
    }
    Some(FatMinorCertificate {
        pattern: pattern.clone(),
        branch_sets,
        paths,
        k,
    })
}

/// Output of [`claw_construction`].
#[derive(Clone, Debug, Serialize)]
pub struct ClawConstruction {
    /// The claw subtree times a path segment: an isometric subgraph of the
    /// binary tree times the two-way path, centred at the root at height 0.
    pub window: Window,
    #[serde(skip)]
    pub certificate: FatMinorCertificate,
    pub m: usize,
    pub k: u32,
    /// Height gap between consecutive branch sets on the shared path.
    pub spacing: u32,
    /// Ray depth at which the deep branch sets start.
    pub depth: u32,
}

/// Fat `K_{m,m}` in the binary tree times the two-way path. A subtree with
/// `m` leaves is extended by `m` left-going rays; its product with the path
/// is `m` half-grids glued along a common strip. The branch sets on the
/// strip are blocks of height `2k + 1`, `3k` apart; the deep ones sit on
/// each ray from depth `3k`; the paths run along the rays at fixed height.
pub fn claw_construction(m: usize, k: u32) -> Result<ClawConstruction> {
    if m == 0 {
        return Err(Error::NonPositive("m"));
    }
    let a = k as usize;
    let spacing = (3 * k).max(1) as usize;
    let depth = (3 * k).max(1) as usize;

    // hub: grow the shallowest leaf until there are m leaves
    let mut hub: Vec<Vec<u32>> = vec![Vec::new()];
    let mut leaves: VecDeque<Vec<u32>> = VecDeque::from([Vec::new()]);
    while leaves.len() < m {
        let leaf = leaves.pop_front().expect("non-empty");
        for c in 0..2 {
            let mut child = leaf.clone();
            child.push(c);
            hub.push(child.clone());
            leaves.push_back(child);
        }
    }
    let leaves: Vec<Vec<u32>> = leaves.into_iter().collect();
    // rays[j][d]: the leaf's left descendant at depth d below it
    let rays: Vec<Vec<Vec<u32>>> = leaves
        .iter()
        .map(|leaf| {
            (0..=depth + a)
                .map(|d| {
                    let mut node = leaf.clone();
                    node.extend(std::iter::repeat_n(0, d));
                    node
                })
                .collect()
        })
        .collect();
    let mut tree_nodes: Vec<Vec<u32>> = hub.clone();
    for ray in &rays {
        tree_nodes.extend(ray[1..].iter().cloned());
    }

    let offset = ((m - 1) * spacing / 2) as i64;
    let heights: Vec<i64> = (0..m).map(|i| (i * spacing) as i64 - offset).collect();
    let (lo, hi) = (heights[0] - a as i64, heights[m - 1] + a as i64);

    let source = tree_times_path();
    let keys: Vec<(Vec<u32>, i64)> = tree_nodes
        .iter()
        .flat_map(|t| (lo..=hi).map(move |y| (t.clone(), y)))
        .collect();
    let index: HashMap<(Vec<u32>, i64), usize> = keys.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
    let mut edges = Vec::new();
    for (i, key) in keys.iter().enumerate() {
        for nb in source.neighbors(key) {
            if let Some(&j) = index.get(&nb) {
                if i < j {
                    edges.push((i, j));
                }
            }
        }
    }
    let mut graph = Graph::from_edges(keys.len(), edges)?;
    for (i, key) in keys.iter().enumerate() {
        graph.set_label(i, source.label(key));
    }
    let id = |t: &Vec<u32>, y: i64| index[&(t.clone(), y)];

    let mut branch_sets = Vec::with_capacity(2 * m);
    for &y in &heights {
        let mut set = Vec::new();
        for yy in y - a as i64..=y + a as i64 {
            set.extend(hub.iter().map(|t| id(t, yy)));
            for ray in &rays {
                set.extend(ray[1..=a].iter().map(|t| id(t, yy)));
            }
        }
        set.sort_unstable();
        branch_sets.push(set);
    }
    for ray in &rays {
        let mut set: Vec<usize> = ray[depth..=depth + a]
            .iter()
            .flat_map(|t| (lo..=hi).map(move |y| (t, y)))
            .map(|(t, y)| id(t, y))
            .collect();
        set.sort_unstable();
        branch_sets.push(set);
    }
    let mut paths = BTreeMap::new();
    for (i, &y) in heights.iter().enumerate() {
        for (j, ray) in rays.iter().enumerate() {
            let path: Vec<usize> = ray[a..=depth].iter().map(|t| id(t, y)).collect();
            paths.insert((i, m + j), path);
        }
    }
    let center = id(&Vec::new(), 0);
    let dist = set_bfs(&graph, &[center]);
    let radius = dist.iter().copied().max().unwrap_or(0) as usize;
    let boundary = (0..graph.n()).filter(|&v| dist[v] as usize == radius).collect();
    let certificate = FatMinorCertificate {
        pattern: complete_bipartite(m, m),
        branch_sets,
        paths,
        k,
    };
    Ok(ClawConstruction {
        window: Window {
            source: source.name(),
            graph,
            center,
            radius,
            boundary,
        },
        certificate,
        m,
        k,
        spacing: spacing as u32,
        depth: depth as u32,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::{complete, path};

    fn edge_cert(k: u32) -> FatMinorCertificate {
        FatMinorCertificate {
            pattern: complete(2),
            branch_sets: vec![vec![0], vec![1]],
            paths: BTreeMap::from([((0, 1), vec![0, 1])]),
            k,
        }
    }

    #[test]
    fn single_edge() {
        let g = path(2);
        assert!(verify_certificate(&g, &edge_cert(1)).is_valid());
        let rep = verify_certificate(&g, &edge_cert(2));
        assert_eq!(rep.violations.len(), 1);
        assert!(rep.has(Clause::Separation));
    }

    #[test]
    fn claw_certificates_pass() {
        let c = claw_construction(1, 0).unwrap();
        assert_eq!(c.certificate.paths.values().next().unwrap().len(), 2);
        assert!(verify_certificate(&c.window.graph, &c.certificate).is_valid());
        let mut radii = Vec::new();
        for k in [1, 2, 4, 8] {
            let c = claw_construction(3, k).unwrap();
            let rep = verify_certificate(&c.window.graph, &c.certificate);
            assert!(rep.is_valid(), "k = {k}: {:?}", rep.violations);
            assert!(rep.max_fatness().unwrap() >= k);
            radii.push(c.window.radius);
        }
        // linear growth: radius / k stays bounded
        assert!(radii.iter().zip([1, 2, 4, 8]).all(|(&r, k)| r <= 8 * k + 4));
    }

    #[test]
    fn claw_window_is_isometric() {
        let c = claw_construction(2, 1).unwrap();
        let ball = tree_times_path().ball(c.window.radius, 1 << 20).unwrap();
        let by_label: HashMap<String, usize> =
            (0..ball.graph.n()).map(|v| (ball.graph.display_name(v), v)).collect();
        let big = crate::graph::all_pairs_distances(&ball.graph);
        let small = crate::graph::all_pairs_distances(&c.window.graph);
        let g = &c.window.graph;
        for u in 0..g.n() {
            for v in 0..g.n() {
                let (bu, bv) = (by_label[&g.display_name(u)], by_label[&g.display_name(v)]);
                assert_eq!(small.get(u, v), big.get(bu, bv));
            }
        }
    }

    #[test]
    fn monotone_in_k() {
        let c = claw_construction(3, 4).unwrap();
        for k in 0..=4 {
            let cert = FatMinorCertificate { k, ..c.certificate.clone() };
            assert!(verify_certificate(&c.window.graph, &cert).is_valid());
        }
    }

    #[test]
    fn each_clause_detects() {
        let c = claw_construction(2, 2).unwrap();
        let g = &c.window.graph;
        let base = &c.certificate;

        let mut cert = base.clone();
        cert.branch_sets[0].push(9_999_999);
        assert!(verify_certificate(g, &cert).has(Clause::Malformed));

        let mut cert = base.clone();
        cert.paths.remove(&(0, 2));
        assert!(verify_certificate(g, &cert).has(Clause::Malformed));

        let mut cert = base.clone();
        let p = cert.paths[&(0, 2)].clone();
        cert.branch_sets[1].push(p[p.len() / 2]);
        assert!(verify_certificate(g, &cert).has(Clause::Connectivity));

        let mut cert = base.clone();
        let x = cert.branch_sets[0][0];
        cert.branch_sets[1].push(x);
        assert!(verify_certificate(g, &cert).has(Clause::Separation));

        let mut cert = base.clone();
        let p = cert.paths.get_mut(&(0, 2)).unwrap();
        p.remove(p.len() / 2);
        assert!(verify_certificate(g, &cert).has(Clause::Routing));

        let rep = verify_certificate(g, base);
        let cert = FatMinorCertificate { k: rep.min_path_distance.unwrap() + 1, ..base.clone() };
        assert!(verify_certificate(g, &cert).has(Clause::PathSeparation));
        let cert = FatMinorCertificate { k: rep.min_path_branch_distance.unwrap() + 1, ..base.clone() };
        assert!(verify_certificate(g, &cert).has(Clause::PathBranchSeparation));
    }

    #[test]
    fn json_round_trip() {
        let c = claw_construction(2, 1).unwrap();
        let back = FatMinorCertificate::from_json(&c.certificate.to_json()).unwrap();
        assert_eq!(back, c.certificate);
        assert!(c.certificate.to_json().contains("\"0-2\""));
    }

    #[test]
    fn search_small_patterns() {
        let g = crate::graph::families::grid2(6);
        let cert = search_fat_minor(&g, &complete(2), 1, 100_000, 0).unwrap();
        assert!(verify_certificate(&g, &cert).is_valid());
        for n in [3, 10, 30] {
            assert!(search_fat_minor(&path(n), &complete(3), 2, 200_000, 1).is_err());
        }
    }

    #[test]
    fn search_k33_in_tree_times_path() {
        let ball = tree_times_path().ball(7, 1 << 20).unwrap();
        let h = complete_bipartite(3, 3);
        let cert = search_fat_minor(&ball.graph, &h, 2, 50_000_000, 3).expect("found");
        assert!(verify_certificate(&ball.graph, &cert).is_valid());
    }
}
