//! Covers by families of `r`-disjoint, `D`-bounded clusters: the checker,
//! layerings, and explicit constructions for trees, grids and layered graphs.

use std::collections::VecDeque;
use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::metric::{bfs_into, finite};
use crate::graph::Graph;

/// Families of vertex clusters at scale `r` with claimed diameter bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cover {
    pub r: u64,
    #[serde(rename = "claimed_D")]
    pub claimed_d: u64,
    pub families: Vec<Vec<Vec<usize>>>,
}

impl Cover {
    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    pub fn cluster_count(&self) -> usize {
        self.families.iter().map(Vec::len).sum()
    }

    /// Families with at least one cluster.
    pub fn family_count(&self) -> usize {
        self.families.iter().filter(|f| !f.is_empty()).count()
    }

    fn drop_empty(mut self) -> Self {
        for f in &mut self.families {
            f.retain(|c| !c.is_empty());
        }
        self.families.retain(|f| !f.is_empty());
        self
    }
}

/// Two clusters of one family that are too close.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DisjointnessWitness {
    pub family: usize,
    pub clusters: (usize, usize),
    pub vertices: (usize, usize),
    pub distance: u32,
}

/// The diametral pair of the widest cluster.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiameterWitness {
    pub family: usize,
    pub cluster: usize,
    pub vertices: (usize, usize),
    /// `None` when the pair is disconnected.
    pub distance: Option<u32>,
}

/// Clause-by-clause outcome of [`check_cover`].
#[derive(Clone, Debug, Serialize)]
pub struct CoverReport {
    pub r: u64,
    pub claimed_d: u64,
    pub families: usize,
    pub clusters: usize,
    pub out_of_range: Vec<usize>,
    pub empty_clusters: Vec<(usize, usize)>,
    pub uncovered: Vec<usize>,
    pub covering: bool,
    pub disjoint: bool,
    pub disjointness_witness: Option<DisjointnessWitness>,
    /// Smallest distance between distinct clusters of one family.
    pub min_separation: Option<u32>,
    /// `None` when some cluster is not connected in `G`.
    pub measured_d: Option<u32>,
    pub diameter_witness: Option<DiameterWitness>,
    pub bounded: bool,
}

impl CoverReport {
    pub fn passed(&self) -> bool {
        self.out_of_range.is_empty() && self.empty_clusters.is_empty() && self.covering && self.disjoint && self.bounded
    }

    /// `measured D / r`.
    pub fn dilation(&self) -> Option<f64> {
        Some(f64::from(self.measured_d?) / self.r.max(1) as f64)
    }
}

/// Exact distances in a forest through lowest common ancestors.
struct ForestMetric {
    comp: Vec<usize>,
    depth: Vec<u32>,
    up: Vec<Vec<usize>>,
}

impl ForestMetric {
    fn new(g: &Graph) -> Self {
        let n = g.n();
        let (comp, _) = g.components();
        let mut depth = vec![u32::MAX; n];
        let mut parent = vec![0; n];
        let mut queue = VecDeque::new();
        for s in 0..n {
            if depth[s] != u32::MAX {
                continue;
            }
            depth[s] = 0;
            parent[s] = s;
            queue.push_back(s);
            while let Some(v) = queue.pop_front() {
                for &w in g.neighbors(v) {
                    if depth[w] == u32::MAX {
                        depth[w] = depth[v] + 1;
                        parent[w] = v;
                        queue.push_back(w);
                    }
                }
            }
        }
        let mut up = vec![parent];
        let levels = usize::BITS - n.max(1).leading_zeros();
        for k in 1..levels as usize {
            let prev = &up[k - 1];
            let next = (0..n).map(|v| prev[prev[v]]).collect();
            up.push(next);
        }
        ForestMetric { comp, depth, up }
    }

    fn dist(&self, u: usize, v: usize) -> Option<u32> {
        if self.comp[u] != self.comp[v] {
            return None;
        }
        let (mut a, mut b) = if self.depth[u] >= self.depth[v] { (u, v) } else { (v, u) };
        let total = self.depth[a] + self.depth[b];
        let mut diff = self.depth[a] - self.depth[b];
        let mut k = 0;
        while diff > 0 {
            if diff & 1 == 1 {
                a = self.up[k][a];
            }
            diff >>= 1;
            k += 1;
        }
        if a != b {
            for k in (0..self.up.len()).rev() {
                if self.up[k][a] != self.up[k][b] {
                    a = self.up[k][a];
                    b = self.up[k][b];
                }
            }
            a = self.up[0][a];
        }
        Some(total - 2 * self.depth[a])
    }

    /// Double sweep, exact in tree metrics.
    fn diameter(&self, cluster: &[usize]) -> (Option<u32>, (usize, usize)) {
        let far = |from: usize| {
            let mut best = (Some(0), from);
            for &v in cluster {
                match (self.dist(from, v), best.0) {
                    (None, _) => return (None, v),
                    (Some(d), Some(b)) if d > b => best = (Some(d), v),
                    _ => {}
                }
            }
            best
        };
        let a = cluster[0];
        let (d, b) = far(a);
        if d.is_none() {
            return (None, (a, b));
        }
        let (d, c) = far(b);
        (d, (b.min(c), b.max(c)))
    }
}

/// Eccentricity of `u` within `cluster` (sorted), measured in `G`.
fn cluster_eccentricity(
    g: &Graph,
    cluster: &[usize],
    u: usize,
    dist: &mut [u32],
    touched: &mut Vec<usize>,
) -> (Option<u32>, usize) {
    for &v in touched.iter() {
        dist[v] = u32::MAX;
    }
    touched.clear();
    dist[u] = 0;
    touched.push(u);
    let mut head = 0;
    let mut found = 0;
    let mut last = (0, u);
    while head < touched.len() {
        let v = touched[head];
        head += 1;
        if cluster.binary_search(&v).is_ok() {
            found += 1;
            last = (dist[v], v);
            if found == cluster.len() {
                return (Some(last.0), last.1);
            }
        }
        for &w in g.neighbors(v) {
            if dist[w] == u32::MAX {
                dist[w] = dist[v] + 1;
                touched.push(w);
            }
        }
    }
    let missing = cluster.iter().copied().find(|&v| dist[v] == u32::MAX).unwrap_or(last.1);
    (None, missing)
}

fn family_separation(g: &Graph, family: &[Vec<usize>], index: usize) -> Option<DisjointnessWitness> {
    let n = g.n();
    let mut owner = vec![usize::MAX; n];
    let mut root = vec![usize::MAX; n];
    let mut dist = vec![u32::MAX; n];
    let mut queue = VecDeque::new();
    let mut best: Option<DisjointnessWitness> = None;
    let mut offer = |w: DisjointnessWitness| {
        let key = |x: &DisjointnessWitness| (x.distance, x.clusters, x.vertices);
        if best.as_ref().is_none_or(|b| key(&w) < key(b)) {
            best = Some(w);
        }
    };
    for (c, cluster) in family.iter().enumerate() {
        for &v in cluster {
            if v >= n {
                continue;
            }
            if owner[v] == usize::MAX {
                owner[v] = c;
                root[v] = v;
                dist[v] = 0;
                queue.push_back(v);
            } else if owner[v] != c {
                offer(DisjointnessWitness {
                    family: index,
                    clusters: (owner[v], c),
                    vertices: (v, v),
                    distance: 0,
                });
            }
        }
    }
    while let Some(v) = queue.pop_front() {
        for &w in g.neighbors(v) {
            if dist[w] == u32::MAX {
                dist[w] = dist[v] + 1;
                owner[w] = owner[v];
                root[w] = root[v];
                queue.push_back(w);
            }
        }
    }
    for (u, v) in g.edges() {
        if owner[u] != usize::MAX && owner[v] != usize::MAX && owner[u] != owner[v] {
            let (a, b) = if owner[u] < owner[v] { (u, v) } else { (v, u) };
            offer(DisjointnessWitness {
                family: index,
                clusters: (owner[a], owner[b]),
                vertices: (root[a], root[b]),
                distance: dist[u] + dist[v] + 1,
            });
        }
    }
    best
}

/// Verifies covering, strict `r`-disjointness within each family and the
/// claimed diameter bound, with exact distances in `G`.
pub fn check_cover(g: &Graph, cover: &Cover) -> CoverReport {
    let n = g.n();
    let mut out_of_range = Vec::new();
    let mut empty_clusters = Vec::new();
    let mut seen = vec![false; n];
    let mut normalized: Vec<Vec<Vec<usize>>> = Vec::with_capacity(cover.families.len());
    for (f, family) in cover.families.iter().enumerate() {
        let mut fam = Vec::with_capacity(family.len());
        for (c, cluster) in family.iter().enumerate() {
            if cluster.is_empty() {
                empty_clusters.push((f, c));
            }
            let mut cl: Vec<usize> = cluster
                .iter()
                .copied()
                .filter(|&v| {
                    let ok = v < n;
                    if !ok {
                        out_of_range.push(v);
                    }
                    ok
                })
                .collect();
            cl.sort_unstable();
            cl.dedup();
            for &v in &cl {
                seen[v] = true;
            }
            fam.push(cl);
        }
        normalized.push(fam);
    }
    out_of_range.sort_unstable();
    out_of_range.dedup();
    let uncovered: Vec<usize> = (0..n).filter(|&v| !seen[v]).collect();

    let witnesses: Vec<Option<DisjointnessWitness>> = normalized
        .par_iter()
        .enumerate()
        .map(|(f, fam)| family_separation(g, fam, f))
        .collect();
    let min_separation = witnesses.iter().flatten().map(|w| w.distance).min();
    let disjointness_witness = witnesses
        .into_iter()
        .flatten()
        .min_by_key(|w| (w.distance, w.family, w.clusters))
        .filter(|w| u64::from(w.distance) <= cover.r);

    let jobs: Vec<(usize, usize)> = normalized
        .iter()
        .enumerate()
        .flat_map(|(f, fam)| (0..fam.len()).map(move |c| (f, c)))
        .filter(|&(f, c)| !normalized[f][c].is_empty())
        .collect();
    // (distance or MAX for disconnected, family, cluster, u, v)
    let widest: Option<(u32, usize, usize, usize, usize)> = if g.is_forest() {
        let metric = ForestMetric::new(g);
        jobs.par_iter()
            .map(|&(f, c)| {
                let (d, (u, v)) = metric.diameter(&normalized[f][c]);
                (d.unwrap_or(u32::MAX), f, c, u, v)
            })
            .max_by_key(|w| (w.0, std::cmp::Reverse((w.1, w.2, w.3, w.4))))
    } else {
        let member_jobs: Vec<(usize, usize, usize)> = jobs
            .iter()
            .flat_map(|&(f, c)| normalized[f][c].iter().map(move |&u| (f, c, u)))
            .collect();
        member_jobs
            .par_iter()
            .map_init(
                || (vec![u32::MAX; n], Vec::new()),
                |(dist, touched), &(f, c, u)| {
                    let (d, v) = cluster_eccentricity(g, &normalized[f][c], u, dist, touched);
                    (d.unwrap_or(u32::MAX), f, c, u.min(v), u.max(v))
                },
            )
            .max_by_key(|w| (w.0, std::cmp::Reverse((w.1, w.2, w.3, w.4))))
    };
    let (measured_d, diameter_witness) = match widest {
        Some((d, f, c, u, v)) => {
            let d = (d != u32::MAX).then_some(d);
            (d, Some(DiameterWitness { family: f, cluster: c, vertices: (u, v), distance: d }))
        }
        None => (Some(0), None),
    };
    CoverReport {
        r: cover.r,
        claimed_d: cover.claimed_d,
        families: cover.family_count(),
        clusters: cover.cluster_count(),
        out_of_range,
        empty_clusters,
        covering: uncovered.is_empty(),
        uncovered,
        disjoint: disjointness_witness.is_none(),
        disjointness_witness,
        min_separation,
        bounded: measured_d.is_some_and(|d| u64::from(d) <= cover.claimed_d),
        measured_d,
        diameter_witness,
    }
}

/// Layer index per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Layering {
    pub layer: Vec<u32>,
    pub roots: Vec<usize>,
}

impl Layering {
    pub fn layers(&self) -> usize {
        self.layer.iter().max().map_or(0, |&l| l as usize + 1)
    }

    /// Adjacent vertices lie in the same or consecutive layers.
    pub fn verify(&self, g: &Graph) -> Result<()> {
        if self.layer.len() != g.n() {
            return Err(Error::Verification(format!("{} layer indices for {} vertices", self.layer.len(), g.n())));
        }
        match g.edges().find(|&(u, v)| self.layer[u].abs_diff(self.layer[v]) > 1) {
            Some((u, v)) => Err(Error::Verification(format!(
                "edge {u}-{v} joins layers {} and {}",
                self.layer[u], self.layer[v]
            ))),
            None => Ok(()),
        }
    }
}

/// Layers by distance to the root set. Without roots, uses the smallest
/// vertex of each component.
pub fn bfs_layering(g: &Graph, roots: Option<&[usize]>) -> Result<Layering> {
    let roots: Vec<usize> = match roots {
        Some(r) => {
            for &v in r {
                g.check_vertex(v)?;
            }
            r.to_vec()
        }
        None => {
            let (comp, count) = g.components();
            let mut first = vec![usize::MAX; count];
            for (v, &c) in comp.iter().enumerate() {
                first[c] = first[c].min(v);
            }
            first
        }
    };
    let mut dist = vec![0; g.n()];
    bfs_into(g, &roots, &mut dist, &mut VecDeque::new());
    if let Some(v) = dist.iter().position(|&d| finite(d).is_none()) {
        return Err(Error::UncoveredComponent(v));
    }
    let layering = Layering { layer: dist, roots };
    layering.verify(g)?;
    Ok(layering)
}

/// Depth bands of width `2r`; in band `j >= 1` a cluster is the set of band
/// vertices below one vertex at depth `2rj - r`. Band parity picks the family.
pub fn tree_band_cover(t: &Graph, root: usize, r: u64) -> Result<Cover> {
    if r == 0 {
        return Err(Error::NonPositive("r"));
    }
    t.check_vertex(root)?;
    if !t.is_tree() {
        return Err(Error::NotATree(format!("{} vertices, {} edges, connected: {}", t.n(), t.m(), t.is_connected())));
    }
    let n = t.n();
    let mut depth = vec![u64::MAX; n];
    let mut parent = vec![root; n];
    let mut order = Vec::with_capacity(n);
    depth[root] = 0;
    order.push(root);
    let mut head = 0;
    while head < order.len() {
        let v = order[head];
        head += 1;
        for &w in t.neighbors(v) {
            if depth[w] == u64::MAX {
                depth[w] = depth[v] + 1;
                parent[w] = v;
                order.push(w);
            }
        }
    }
    let width = 2 * r;
    let mut anchor = vec![root; n];
    for v in 0..n {
        let j = depth[v] / width;
        if j > 0 {
            anchor[v] = climb(&parent, &depth, v, width * j - r);
        }
    }
    let mut clusters: std::collections::BTreeMap<(u64, usize), Vec<usize>> = Default::default();
    for v in 0..n {
        let j = depth[v] / width;
        clusters.entry((j, anchor[v])).or_default().push(v);
    }
    let mut families = vec![Vec::new(), Vec::new()];
    for ((j, _), cluster) in clusters {
        families[(j % 2) as usize].push(cluster);
    }
    Ok(Cover {
        r,
        claimed_d: 6 * r - 2,
        families,
    }
    .drop_empty())
}

fn climb(parent: &[usize], depth: &[u64], mut v: usize, target: u64) -> usize {
    while depth[v] > target {
        v = parent[v];
    }
    v
}

/// Checks the two structural facts behind [`tree_band_cover`] directly:
/// clusters of one band hang below distinct anchors, and same-family bands
/// are at least `2r` apart in depth.
pub fn tree_band_structure_holds(t: &Graph, root: usize, cover: &Cover) -> bool {
    let Ok(depths) = crate::graph::bfs_distances(t, root) else {
        return false;
    };
    let r = cover.r;
    let band = |v: usize| depths[v].map(|d| u64::from(d) / (2 * r));
    for family in &cover.families {
        let mut bands: Vec<u64> = Vec::new();
        for cluster in family {
            let Some(b) = band(cluster[0]) else { return false };
            if cluster.iter().any(|&v| band(v) != Some(b)) {
                return false;
            }
            bands.push(b);
        }
        bands.sort_unstable();
        bands.dedup();
        if bands.windows(2).any(|w| w[1] - w[0] < 2) {
            return false;
        }
    }
    true
}

/// Three shifted families of `2r x 2r` blocks on the `3r` lattice, for the
/// grid window of side `n` (vertex `y*n + x`).
pub fn grid_shift_cover(n: usize, r: u64) -> Result<Cover> {
    if r == 0 {
        return Err(Error::NonPositive("r"));
    }
    if n == 0 {
        return Err(Error::NonPositive("n"));
    }
    let (n_i, r_i) = (n as i64, r as i64);
    let step = 3 * r_i;
    let mut families = Vec::with_capacity(3);
    for i in 0..3 {
        let shift = i * r_i;
        let starts: Vec<i64> = ((-1)..=(n_i / step + 1))
            .map(|a| shift + step * a)
            .filter(|&s| s + 2 * r_i > 0 && s < n_i)
            .collect();
        let mut family = Vec::new();
        for &sy in &starts {
            for &sx in &starts {
                let xs = sx.max(0)..(sx + 2 * r_i).min(n_i);
                let ys = sy.max(0)..(sy + 2 * r_i).min(n_i);
                let cluster: Vec<usize> = ys
                    .flat_map(|y| xs.clone().map(move |x| (y * n_i + x) as usize))
                    .collect();
                if !cluster.is_empty() {
                    family.push(cluster);
                }
            }
        }
        families.push(family);
    }
    Ok(Cover {
        r,
        claimed_d: 4 * r - 2,
        families,
    })
}

/// Two families of coordinate intervals: `[3ra, 3ra + 2r)` and
/// `[3ra + 2r, 3ra + 3r)`. The coordinate must change by at most 1 along
/// every edge. The claimed bound is the measured one.
pub fn interval_slice_cover(g: &Graph, coord: &[i64], r: u64) -> Result<Cover> {
    if r == 0 {
        return Err(Error::NonPositive("r"));
    }
    if coord.len() != g.n() {
        return Err(Error::InvalidMap(format!("{} coordinates for {} vertices", coord.len(), g.n())));
    }
    if let Some((u, v)) = g.edges().find(|&(u, v)| coord[u].abs_diff(coord[v]) > 1) {
        return Err(Error::NonLipschitz(u, v));
    }
    let period = 3 * r as i64;
    let mut groups: std::collections::BTreeMap<(usize, i64), Vec<usize>> = Default::default();
    for (v, &c) in coord.iter().enumerate() {
        let a = c.div_euclid(period);
        let family = usize::from(c.rem_euclid(period) >= 2 * r as i64);
        groups.entry((family, a)).or_default().push(v);
    }
    let mut families = vec![Vec::new(), Vec::new()];
    for ((f, _), cluster) in groups {
        families[f].push(cluster);
    }
    let mut cover = Cover { r, claimed_d: 0, families }.drop_empty();
    cover.claimed_d = check_cover(g, &cover).measured_d.map_or(u64::MAX, u64::from);
    Ok(cover)
}

/// Cuts the layering into blocks of `r + 1` consecutive layers, covers each
/// block with `slice_cover` (given the induced block and its vertex map) and
/// combines: family = block parity x slice family. Uses up to twice as many
/// families as the slices.
pub fn layered_combine<F>(g: &Graph, layering: &Layering, r: u64, slice_cover: F) -> Result<Cover>
where
    F: Fn(&Graph, &[usize]) -> Result<Cover>,
{
    if r == 0 {
        return Err(Error::NonPositive("r"));
    }
    layering.verify(g)?;
    let block_len = r + 1;
    let blocks = (layering.layers() as u64).div_ceil(block_len) as usize;
    let mut members = vec![Vec::new(); blocks];
    for (v, &l) in layering.layer.iter().enumerate() {
        members[(u64::from(l) / block_len) as usize].push(v);
    }
    let mut per_block = Vec::with_capacity(blocks);
    let mut width = 0;
    let mut claimed_d = 0;
    for (b, verts) in members.iter().enumerate() {
        if verts.is_empty() {
            per_block.push(Vec::new());
            continue;
        }
        let (slice, back) = g.induced_subgraph(verts);
        let cover = slice_cover(&slice, &back).map_err(|e| Error::SliceCover { block: b, source: Box::new(e) })?;
        let report = check_cover(&slice, &cover);
        if !report.passed() || cover.r < r {
            return Err(Error::SliceCover {
                block: b,
                source: Box::new(Error::Verification(format!("slice cover failed its check: {}", serde_json::to_string(&report).unwrap_or_default()))),
            });
        }
        width = width.max(cover.families.len());
        claimed_d = claimed_d.max(cover.claimed_d);
        let lifted: Vec<Vec<Vec<usize>>> = cover
            .families
            .into_iter()
            .map(|fam| fam.into_iter().map(|c| c.into_iter().map(|v| back[v]).collect()).collect())
            .collect();
        per_block.push(lifted);
    }
    let mut families = vec![Vec::new(); 2 * width];
    for (b, fams) in per_block.into_iter().enumerate() {
        for (i, fam) in fams.into_iter().enumerate() {
            families[(b % 2) * width + i].extend(fam);
        }
    }
    Ok(Cover { r, claimed_d, families }.drop_empty())
}

/// Seeded region growing: clusters are the uncovered parts of balls of
/// radius in `[r, 3r]`, placed first-fit into families. Several seeded
/// attempts are made and the one with fewest families is kept.
pub fn greedy_cover(g: &Graph, r: u64, max_families: usize, seed: u64) -> Result<Cover> {
    const ATTEMPTS: u64 = 8;
    if r == 0 {
        return Err(Error::NonPositive("r"));
    }
    let mut best: Option<Cover> = None;
    for attempt in 0..ATTEMPTS {
        let cover = greedy_attempt(g, r, seed.wrapping_mul(ATTEMPTS).wrapping_add(attempt));
        if best.as_ref().is_none_or(|b| cover.families.len() < b.families.len()) {
            best = Some(cover);
        }
    }
    let best = best.expect("at least one attempt");
    if best.families.len() > max_families {
        return Err(Error::Infeasible(format!(
            "greedy cover needs {} families, more than {max_families}",
            best.families.len()
        )));
    }
    Ok(best)
}

fn ball(g: &Graph, center: usize, radius: u64, dist: &mut [u32], touched: &mut Vec<usize>) {
    for &v in touched.iter() {
        dist[v] = u32::MAX;
    }
    touched.clear();
    dist[center] = 0;
    touched.push(center);
    let mut head = 0;
    while head < touched.len() {
        let v = touched[head];
        head += 1;
        if u64::from(dist[v]) == radius {
            continue;
        }
        for &w in g.neighbors(v) {
            if dist[w] == u32::MAX {
                dist[w] = dist[v] + 1;
                touched.push(w);
            }
        }
    }
}

fn greedy_attempt(g: &Graph, r: u64, seed: u64) -> Cover {
    let n = g.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut covered = vec![false; n];
    // owner[f][v]: cluster of family f containing v
    let mut owner: Vec<Vec<bool>> = Vec::new();
    let mut families: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut dist = vec![u32::MAX; n];
    let mut touched = Vec::new();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    // sweep outward from a random start so clusters stay compact
    if let Some(&start) = order.first() {
        let d = crate::graph::multi_source_bfs(g, &[start]);
        order.sort_by_key(|&v| (d[v].unwrap_or(u32::MAX), v));
    }
    let mut claimed = 0;
    for &center in &order {
        if covered[center] {
            continue;
        }
        let radius = rng.gen_range(r..=3 * r);
        ball(g, center, radius, &mut dist, &mut touched);
        let cluster: Vec<usize> = touched.iter().copied().filter(|&v| !covered[v]).collect();
        // grow the new cluster by r to find families it conflicts with
        let mut halo = vec![u32::MAX; n];
        let mut queue: VecDeque<usize> = cluster.iter().copied().collect();
        for &v in &cluster {
            halo[v] = 0;
        }
        let mut conflict = vec![false; families.len()];
        while let Some(v) = queue.pop_front() {
            for (f, own) in owner.iter().enumerate() {
                if own[v] {
                    conflict[f] = true;
                }
            }
            if u64::from(halo[v]) == r {
                continue;
            }
            for &w in g.neighbors(v) {
                if halo[w] == u32::MAX {
                    halo[w] = halo[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        let f = conflict.iter().position(|&c| !c).unwrap_or_else(|| {
            families.push(Vec::new());
            owner.push(vec![false; n]);
            families.len() - 1
        });
        for &v in &cluster {
            covered[v] = true;
            owner[f][v] = true;
        }
        claimed = claimed.max(2 * radius);
        let mut cluster = cluster;
        cluster.sort_unstable();
        families[f].push(cluster);
    }
    Cover {
        r,
        claimed_d: claimed,
        families,
    }
}

/// One certified `(r, D, families)` measurement.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ControlRow {
    pub r: u64,
    pub d: u32,
    pub families: usize,
}

/// Certified samples of the control function of one graph.
#[derive(Clone, Debug, Serialize)]
pub struct ControlSample {
    pub graph: String,
    pub rows: Vec<ControlRow>,
}

impl ControlSample {
    /// `max D / r`.
    pub fn dilation(&self) -> f64 {
        self.rows
            .iter()
            .map(|row| f64::from(row.d) / row.r as f64)
            .fold(0.0, f64::max)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("r,D,families,c\n");
        for row in &self.rows {
            let _ = writeln!(out, "{},{},{},{:.4}", row.r, row.d, row.families, f64::from(row.d) / row.r as f64);
        }
        out
    }
}

/// Builds a cover per scale and keeps it only if it passes [`check_cover`].
pub fn control_sample<F>(g: &Graph, name: &str, scales: &[u64], build: F) -> Result<ControlSample>
where
    F: Fn(u64) -> Result<Cover>,
{
    let mut rows = Vec::with_capacity(scales.len());
    for &r in scales {
        let cover = build(r)?;
        let report = check_cover(g, &cover);
        if !report.passed() {
            return Err(Error::Verification(format!("cover at r = {r} fails its check")));
        }
        rows.push(ControlRow {
            r,
            d: report.measured_d.expect("bounded covers have finite diameter"),
            families: report.families,
        });
    }
    Ok(ControlSample {
        graph: name.to_string(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::{complete, cycle, grid2, path, star};
    use crate::qi::{cover_pullback, measure_distortion, QiMap};

    fn random_tree(n: usize, seed: u64) -> Graph {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Graph::from_edges(n, (1..n).map(|v| (rng.gen_range(v.saturating_sub(5)..v), v))).unwrap()
    }

    #[test]
    fn single_cluster() {
        let g = grid2(4);
        let cover = Cover { r: 5, claimed_d: 6, families: vec![vec![(0..16).collect()]] };
        let rep = check_cover(&g, &cover);
        assert!(rep.passed());
        assert_eq!(rep.measured_d, Some(6));
    }

    #[test]
    fn strict_disjointness() {
        let g = path(2);
        let cover = Cover { r: 1, claimed_d: 0, families: vec![vec![vec![0], vec![1]]] };
        let rep = check_cover(&g, &cover);
        assert!(!rep.disjoint);
        assert_eq!(rep.disjointness_witness.unwrap().distance, 1);
        let cover = Cover { r: 0, ..cover };
        assert!(check_cover(&g, &cover).passed());
    }

    #[test]
    fn broken_clauses() {
        let g = path(4);
        let cover = Cover { r: 1, claimed_d: 0, families: vec![vec![vec![0, 1], vec![], vec![9]]] };
        let rep = check_cover(&g, &cover);
        assert_eq!(rep.uncovered, vec![2, 3]);
        assert_eq!(rep.empty_clusters, vec![(0, 1)]);
        assert_eq!(rep.out_of_range, vec![9]);
        assert!(!rep.bounded);
        let split = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let cover = Cover { r: 1, claimed_d: 5, families: vec![vec![vec![0, 1, 2, 3]]] };
        assert_eq!(check_cover(&split, &cover).measured_d, None);
    }

    #[test]
    fn diameters_match_all_pairs() {
        let t = random_tree(300, 3);
        let cover = tree_band_cover(&t, 0, 2).unwrap();
        let dm = crate::graph::all_pairs_distances(&t);
        let expected = cover.families.iter().flatten().map(|c| dm.max_over(c).unwrap()).max();
        assert_eq!(check_cover(&t, &cover).measured_d, expected);
        let g = grid2(12);
        let cover = greedy_cover(&g, 2, 10, 4).unwrap();
        let dm = crate::graph::all_pairs_distances(&g);
        let expected = cover.families.iter().flatten().map(|c| dm.max_over(c).unwrap()).max();
        assert_eq!(check_cover(&g, &cover).measured_d, expected);
    }

    #[test]
    fn layering_examples() {
        let l = bfs_layering(&path(5), Some(&[0])).unwrap();
        assert_eq!(l.layer, vec![0, 1, 2, 3, 4]);
        let g = grid2(4);
        let l = bfs_layering(&g, None).unwrap();
        assert!((0..16).all(|v| l.layer[v] as usize == v % 4 + v / 4));
        assert!(matches!(bfs_layering(&Graph::new(2), Some(&[0])), Err(Error::UncoveredComponent(1))));
    }

    #[test]
    fn tree_band_examples() {
        let c = tree_band_cover(&Graph::new(1), 0, 3).unwrap();
        assert_eq!(c.families, vec![vec![vec![0]]]);
        let p = path(100);
        let c = tree_band_cover(&p, 0, 2).unwrap();
        let rep = check_cover(&p, &c);
        assert!(rep.passed() && rep.families == 2 && rep.measured_d.unwrap() <= 12);
        for seed in 0..10 {
            let t = random_tree(2000, seed);
            for r in [1, 2, 4, 8] {
                let c = tree_band_cover(&t, 0, r).unwrap();
                let rep = check_cover(&t, &c);
                assert!(rep.passed() && rep.families <= 2, "seed {seed} r {r}");
                assert!(u64::from(rep.measured_d.unwrap()) <= 6 * r);
                assert!(tree_band_structure_holds(&t, 0, &c));
            }
        }
        assert!(matches!(tree_band_cover(&cycle(4), 0, 1), Err(Error::NotATree(_))));
    }

    #[test]
    fn grid_shift_examples() {
        for (n, r, d) in [(64, 4, 14), (8, 1, 2), (3, 4, 16)] {
            let c = grid_shift_cover(n, r).unwrap();
            let rep = check_cover(&grid2(n), &c);
            assert!(rep.passed(), "{n} {r}");
            assert!(rep.families <= 3 && rep.measured_d.unwrap() <= d);
            if let Some(sep) = rep.min_separation {
                assert!(u64::from(sep) > r);
            }
        }
    }

    #[test]
    fn interval_slice_examples() {
        let p = path(20);
        let coord: Vec<i64> = (0..20).collect();
        let c = interval_slice_cover(&p, &coord, 2).unwrap();
        let rep = check_cover(&p, &c);
        assert!(rep.passed() && rep.families == 2 && rep.measured_d.unwrap() <= 4);
        let k = complete(5);
        let c = interval_slice_cover(&k, &[0; 5], 3).unwrap();
        assert_eq!((c.cluster_count(), c.claimed_d), (1, 1));
        assert!(matches!(interval_slice_cover(&p, &(0..20).map(|x| 2 * x).collect::<Vec<_>>(), 1), Err(Error::NonLipschitz(0, 1))));
    }

    #[test]
    fn layered_examples() {
        let s = star(4);
        let single = bfs_layering(&complete(4), None).unwrap();
        assert_eq!(single.layers(), 2);
        let whole = |g: &Graph, _: &[usize]| Ok(Cover { r: 1, claimed_d: 2, families: vec![vec![(0..g.n()).collect()]] });
        let c = layered_combine(&s, &bfs_layering(&s, Some(&[0])).unwrap(), 1, whole).unwrap();
        assert_eq!(c.families.len(), 1);
        let p = path(30);
        let l = bfs_layering(&p, Some(&[0])).unwrap();
        let c = layered_combine(&p, &l, 1, whole).unwrap();
        let rep = check_cover(&p, &c);
        assert!(rep.passed() && rep.families == 2);
        let n = 64;
        let g = grid2(n);
        let l = bfs_layering(&g, Some(&[0])).unwrap();
        for r in [2, 4, 8] {
            let c = layered_combine(&g, &l, r, |slice, back| {
                let coord: Vec<i64> = back.iter().map(|&v| (v % n) as i64).collect();
                interval_slice_cover(slice, &coord, r)
            })
            .unwrap();
            let rep = check_cover(&g, &c);
            assert!(rep.passed() && rep.families <= 4);
            assert!(rep.dilation().unwrap() <= 10.0);
        }
    }

    #[test]
    fn greedy_examples() {
        let c = greedy_cover(&complete(6), 1, 1, 0).unwrap();
        assert_eq!(c.cluster_count(), 1);
        let cyc = cycle(100);
        let c = greedy_cover(&cyc, 3, 6, 7).unwrap();
        assert!(check_cover(&cyc, &c).passed());
        assert!(c.families.len() <= 2);
        let g = grid2(20);
        for seed in 0..5 {
            let c = greedy_cover(&g, 2, 10, seed).unwrap();
            assert!(check_cover(&g, &c).passed());
        }
    }

    #[test]
    fn pullback_through_subdivision() {
        let g = grid2(8);
        let h = crate::graph::subdivide(&g, 1);
        let f = QiMap::new(g.clone(), h.clone(), (0..g.n()).collect()).unwrap();
        let report = measure_distortion(&f).unwrap();
        let host_cover = greedy_cover(&h, 4, 10, 1).unwrap();
        assert!(check_cover(&h, &host_cover).passed());
        let pulled = cover_pullback(&host_cover, &f, &report).unwrap();
        assert_eq!(pulled.r, 2);
        assert_eq!(pulled.families.len(), host_cover.families.len());
        assert!(check_cover(&g, &pulled).passed());
        let id = QiMap::identity(&g);
        let c = grid_shift_cover(8, 2).unwrap();
        assert_eq!(cover_pullback(&c, &id, &measure_distortion(&id).unwrap()).unwrap(), c);
    }

    #[test]
    fn control_sample_csv() {
        let g = grid2(16);
        let s = control_sample(&g, "grid2", &[1, 2], |r| grid_shift_cover(16, r)).unwrap();
        assert!(s.dilation() <= 4.0);
        assert!(s.to_csv().starts_with("r,D,families,c\n1,2,3,"));
    }

    #[test]
    fn json_shape() {
        let c = Cover { r: 1, claimed_d: 2, families: vec![vec![vec![0]]] };
        assert_eq!(c.to_json(), r#"{"r":1,"claimed_D":2,"families":[[[0]]]}"#);
        assert_eq!(Cover::from_json(&c.to_json()).unwrap(), c);
    }
}
