//! Quasi-isometry measurement and the embeddings built on it:
//! degree pruning, embedding into a blown-up power, and pulling covers back
//! along bilipschitz maps.

use std::collections::{BTreeMap, HashMap, VecDeque};

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dimension::Cover;
use crate::error::{Error, Result};
use crate::graph::metric::{bfs_into, distances_within, finite};
use crate::graph::ops::verify_injective_homomorphism;
use crate::graph::{blowup, families, multi_source_bfs, power, subdivide, Graph};

/// A total map `V(G) -> V(H)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QiMap {
    pub domain: Graph,
    pub codomain: Graph,
    pub map: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct RawMap {
    map: Vec<[usize; 2]>,
}

impl QiMap {
    pub fn new(domain: Graph, codomain: Graph, map: Vec<usize>) -> Result<Self> {
        if map.len() != domain.n() {
            return Err(Error::InvalidMap(format!(
                "{} images for {} vertices",
                map.len(),
                domain.n()
            )));
        }
        if let Some((x, &y)) = map.iter().enumerate().find(|(_, &y)| y >= codomain.n()) {
            return Err(Error::InvalidMap(format!("image {y} of {x} is not a vertex of the codomain")));
        }
        Ok(QiMap { domain, codomain, map })
    }

    pub fn identity(g: &Graph) -> Self {
        QiMap {
            domain: g.clone(),
            codomain: g.clone(),
            map: (0..g.n()).collect(),
        }
    }

    /// Reads `{"map": [[x, y], ...]}`; every domain vertex must appear once.
    pub fn from_json(domain: Graph, codomain: Graph, s: &str) -> Result<Self> {
        let raw: RawMap = serde_json::from_str(s)?;
        let mut map = vec![usize::MAX; domain.n()];
        for [x, y] in raw.map {
            if x >= domain.n() || map[x] != usize::MAX {
                return Err(Error::InvalidMap(format!("bad or repeated domain vertex {x}")));
            }
            map[x] = y;
        }
        if let Some(x) = map.iter().position(|&y| y == usize::MAX) {
            return Err(Error::InvalidMap(format!("vertex {x} has no image")));
        }
        QiMap::new(domain, codomain, map)
    }

    pub fn to_json(&self) -> String {
        let raw = RawMap {
            map: self.map.iter().enumerate().map(|(x, &y)| [x, y]).collect(),
        };
        serde_json::to_string(&raw).expect("serializable")
    }

    /// Vertices of the domain grouped by image, each group in increasing order.
    pub fn fibers(&self) -> BTreeMap<usize, Vec<usize>> {
        let mut out: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (x, &y) in self.map.iter().enumerate() {
            out.entry(y).or_default().push(x);
        }
        out
    }
}

/// Extremes of `d_H(fx, fy)` among pairs at one fixed `d_G(x, y)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ProfileRow {
    pub d_g: u32,
    pub pairs: u64,
    pub min_dh: u32,
    pub min_witness: (usize, usize),
    pub max_dh: u32,
    pub max_witness: (usize, usize),
}

impl ProfileRow {
    fn single(d_g: u32, d_h: u32, pair: (usize, usize)) -> Self {
        ProfileRow {
            d_g,
            pairs: 1,
            min_dh: d_h,
            min_witness: pair,
            max_dh: d_h,
            max_witness: pair,
        }
    }

    /// Keeps the smaller witness on ties, so merging order does not matter.
    fn merge(&mut self, o: &ProfileRow) {
        self.pairs += o.pairs;
        if (o.min_dh, o.min_witness) < (self.min_dh, self.min_witness) {
            self.min_dh = o.min_dh;
            self.min_witness = o.min_witness;
        }
        if o.max_dh > self.max_dh || (o.max_dh == self.max_dh && o.max_witness < self.max_witness) {
            self.max_dh = o.max_dh;
            self.max_witness = o.max_witness;
        }
    }
}

type Profile = BTreeMap<u32, ProfileRow>;

fn merge_profiles(mut a: Profile, b: Profile) -> Profile {
    for (d, row) in b {
        a.entry(d).and_modify(|r| r.merge(&row)).or_insert(row);
    }
    a
}

/// Exact distortion data of a map, from a scan over all pairs.
#[derive(Clone, Debug, Serialize)]
pub struct DistortionReport {
    pub profile: Vec<ProfileRow>,
    #[serde(serialize_with = "ser_ratio")]
    pub c1: Ratio<u64>,
    pub c1_witness: (usize, usize),
    #[serde(serialize_with = "ser_ratio")]
    pub c2: Ratio<u64>,
    pub c2_witness: (usize, usize),
    /// Largest distance from a codomain vertex to the image.
    pub surjectivity_radius: u32,
    pub surjectivity_witness: usize,
    /// Codomain vertices that cannot reach the image at all.
    pub unreachable_from_image: usize,
    /// Pairs skipped because they are disconnected in the domain or the codomain.
    pub skipped_pairs: u64,
}

fn ser_ratio<S: serde::Serializer>(r: &Ratio<u64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeStruct;
    let mut st = s.serialize_struct("Ratio", 2)?;
    st.serialize_field("exact", &format!("{}/{}", r.numer(), r.denom()))?;
    st.serialize_field("value", &(*r.numer() as f64 / *r.denom() as f64))?;
    st.end()
}

impl DistortionReport {
    pub fn c1_f64(&self) -> f64 {
        *self.c1.numer() as f64 / *self.c1.denom() as f64
    }

    pub fn c2_f64(&self) -> f64 {
        *self.c2.numer() as f64 / *self.c2.denom() as f64
    }

    /// `max(d_G/λ - d_H, 0)` over all pairs.
    pub fn additive_eps(&self, lambda: Ratio<u64>) -> Ratio<u64> {
        self.profile
            .iter()
            .map(|r| {
                let lhs = Ratio::from_integer(u64::from(r.d_g)) / lambda;
                let rhs = Ratio::from_integer(u64::from(r.min_dh));
                if lhs > rhs {
                    lhs - rhs
                } else {
                    Ratio::from_integer(0)
                }
            })
            .max()
            .unwrap_or_else(|| Ratio::from_integer(0))
    }

    /// `max(d_H - λ d_G, 0)` over all pairs.
    pub fn upper_additive_eps(&self, lambda: Ratio<u64>) -> Ratio<u64> {
        self.profile
            .iter()
            .map(|r| {
                let bound = lambda * u64::from(r.d_g);
                let dh = Ratio::from_integer(u64::from(r.max_dh));
                if dh > bound {
                    dh - bound
                } else {
                    Ratio::from_integer(0)
                }
            })
            .max()
            .unwrap_or_else(|| Ratio::from_integer(0))
    }

    /// `d_G/λ - ε <= d_H <= λ d_G + ε` for all pairs and every codomain vertex
    /// within `radius` of the image.
    pub fn is_qi(&self, lambda: Ratio<u64>, eps: Ratio<u64>, radius: u32) -> bool {
        self.additive_eps(lambda) <= eps
            && self.upper_additive_eps(lambda) <= eps
            && self.surjectivity_radius <= radius
            && self.unreachable_from_image == 0
    }

    /// `c1 d_G <= d_H <= c2 d_G` for all pairs, with `c1 > 0`.
    pub fn is_bilipschitz(&self) -> bool {
        *self.c1.numer() > 0
    }
}

/// Scans every pair of distinct domain vertices.
pub fn measure_distortion(f: &QiMap) -> Result<DistortionReport> {
    let (g, h) = (&f.domain, &f.codomain);
    if g.n() == 0 {
        return Err(Error::EmptySet);
    }
    let (profile, skipped) = (0..g.n())
        .into_par_iter()
        .map_init(
            || (vec![0u32; g.n()], vec![0u32; h.n()], VecDeque::new()),
            |(dg, dh, queue), x| {
                bfs_into(g, &[x], dg, queue);
                bfs_into(h, &[f.map[x]], dh, queue);
                let mut prof = Profile::new();
                let mut skipped = 0u64;
                for y in x + 1..g.n() {
                    match (finite(dg[y]), finite(dh[f.map[y]])) {
                        (Some(a), Some(b)) => {
                            let row = ProfileRow::single(a, b, (x, y));
                            prof.entry(a).and_modify(|r| r.merge(&row)).or_insert(row);
                        }
                        _ => skipped += 1,
                    }
                }
                (prof, skipped)
            },
        )
        .reduce(|| (Profile::new(), 0), |a, b| (merge_profiles(a.0, b.0), a.1 + b.1));
    let profile: Vec<ProfileRow> = profile.into_values().collect();
    let mut c1 = Ratio::from_integer(1);
    let mut c1_witness = (0, 0);
    let mut c2 = Ratio::from_integer(1);
    let mut c2_witness = (0, 0);
    if let Some(first) = profile.first() {
        c1 = Ratio::new(u64::from(first.min_dh), u64::from(first.d_g));
        c1_witness = first.min_witness;
        c2 = Ratio::new(u64::from(first.max_dh), u64::from(first.d_g));
        c2_witness = first.max_witness;
        for r in &profile[1..] {
            let lo = Ratio::new(u64::from(r.min_dh), u64::from(r.d_g));
            let hi = Ratio::new(u64::from(r.max_dh), u64::from(r.d_g));
            if lo < c1 {
                c1 = lo;
                c1_witness = r.min_witness;
            }
            if hi > c2 {
                c2 = hi;
                c2_witness = r.max_witness;
            }
        }
    }
    let near = multi_source_bfs(h, &f.map);
    let mut surjectivity_radius = 0;
    let mut surjectivity_witness = f.map[0];
    let mut unreachable_from_image = 0;
    for (v, d) in near.iter().enumerate() {
        match d {
            Some(d) if *d > surjectivity_radius => {
                surjectivity_radius = *d;
                surjectivity_witness = v;
            }
            Some(_) => {}
            None => unreachable_from_image += 1,
        }
    }
    Ok(DistortionReport {
        profile,
        c1,
        c1_witness,
        c2,
        c2_witness,
        surjectivity_radius,
        surjectivity_witness,
        unreachable_from_image,
        skipped_pairs: skipped,
    })
}

/// `base^exp`, saturating.
pub fn saturating_pow(base: u64, exp: u64) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(u128::from(base));
        if acc == u128::MAX || acc == 0 {
            break;
        }
    }
    acc
}

/// Output of [`prune_to_bounded_degree`].
#[derive(Clone, Debug, Serialize)]
pub struct PrunedHost {
    /// The subgraph `H'`, numbered densely.
    pub hprime: Graph,
    /// `back[i]` is the vertex of `H` behind vertex `i` of `H'`.
    pub back: Vec<usize>,
    /// `f` with codomain `H'`.
    #[serde(skip)]
    pub map: QiMap,
    pub a: usize,
    pub max_degree: usize,
    /// `Δ(G)^(2A²)`, saturating.
    pub degree_bound: u128,
    pub degree_bound_holds: bool,
    /// Largest distance in `H'` from a vertex to the image.
    pub max_dist_to_image: u32,
    /// Vertices of `H` farther than `A` from the image (window boundary effects).
    pub uncovered_host_vertices: Vec<usize>,
}

/// Union of one canonical shortest path per edge of `G`, between the images
/// of its ends. Fails if some edge has images farther apart than `A²`.
pub fn prune_to_bounded_degree(f: &QiMap, a: usize) -> Result<PrunedHost> {
    if a == 0 {
        return Err(Error::NonPositive("A"));
    }
    let (g, h) = (&f.domain, &f.codomain);
    let limit = (a * a) as u32;
    let mut keep = vec![false; h.n()];
    for &y in &f.map {
        keep[y] = true;
    }
    let mut path_edges = Vec::new();
    let mut by_target: HashMap<usize, HashMap<usize, u32>> = HashMap::new();
    for (x, y) in g.edges() {
        let (s, t) = (f.map[x], f.map[y]);
        let to_t = by_target.entry(t).or_insert_with(|| distances_within(h, t, limit));
        let Some(&d) = to_t.get(&s) else {
            return Err(Error::Hypothesis {
                x,
                y,
                detail: format!("images {s} and {t} are farther apart than A^2 = {limit}"),
            });
        };
        let mut cur = s;
        for step in (0..d).rev() {
            let next = *h
                .neighbors(cur)
                .iter()
                .find(|w| to_t.get(w) == Some(&step))
                .expect("distance layers are consistent");
            path_edges.push((cur, next));
            keep[next] = true;
            cur = next;
        }
    }
    let back: Vec<usize> = (0..h.n()).filter(|&v| keep[v]).collect();
    let mut index = vec![usize::MAX; h.n()];
    for (i, &v) in back.iter().enumerate() {
        index[v] = i;
    }
    let mut hprime = Graph::from_edges(back.len(), path_edges.iter().map(|&(u, v)| (index[u], index[v])))?;
    for (i, &v) in back.iter().enumerate() {
        hprime.set_label(i, h.display_name(v));
    }
    let map = QiMap::new(g.clone(), hprime.clone(), f.map.iter().map(|&y| index[y]).collect())?;
    let max_degree = hprime.max_degree();
    let degree_bound = saturating_pow(g.max_degree() as u64, 2 * (a * a) as u64);
    let near = multi_source_bfs(&hprime, &map.map);
    let max_dist_to_image = near.iter().map(|d| d.unwrap_or(u32::MAX)).max().unwrap_or(0);
    if max_dist_to_image > limit {
        return Err(Error::Verification(format!(
            "a vertex of H' lies {max_dist_to_image} from the image, more than A^2 = {limit}"
        )));
    }
    let host_near = multi_source_bfs(h, &f.map);
    let uncovered_host_vertices = (0..h.n())
        .filter(|&v| host_near[v].is_none_or(|d| d as usize > a))
        .collect();
    Ok(PrunedHost {
        hprime,
        back,
        map,
        a,
        max_degree,
        degree_bound,
        degree_bound_holds: max_degree as u128 <= degree_bound,
        max_dist_to_image,
        uncovered_host_vertices,
    })
}

/// Checks `d_G(x,y) - A² <= A d_H(fx,fy)` and `d_H(fx,fy) <= A d_G(x,y) + A`
/// (the two-sided bound multiplied through by `A`) for all pairs that are
/// connected in `G`.
pub fn check_qi_hypothesis(f: &QiMap, a: usize) -> Result<()> {
    let (g, h) = (&f.domain, &f.codomain);
    let a = a as u64;
    (0..g.n()).into_par_iter().try_for_each_init(
        || (vec![0u32; g.n()], vec![0u32; h.n()], VecDeque::new()),
        |(dg, dh, queue), x| {
            bfs_into(g, &[x], dg, queue);
            bfs_into(h, &[f.map[x]], dh, queue);
            for y in x + 1..g.n() {
                let Some(d_g) = finite(dg[y]) else { continue };
                let Some(d_h) = finite(dh[f.map[y]]) else {
                    return Err(Error::Hypothesis { x, y, detail: "images are disconnected".into() });
                };
                let (d_g, d_h) = (u64::from(d_g), u64::from(d_h));
                if d_g > a * d_h + a * a || d_h > a * d_g + a {
                    return Err(Error::Hypothesis {
                        x,
                        y,
                        detail: format!("d_G = {d_g}, d_H = {d_h}, A = {a}"),
                    });
                }
            }
            Ok(())
        },
    )
}

/// Output of [`embed_power_blowup`].
#[derive(Clone, Debug, Serialize)]
pub struct PowerBlowupEmbedding {
    pub a: usize,
    /// Largest fiber of `f`.
    pub b: usize,
    /// `Δ(G)^(A²)`, saturating.
    pub fiber_bound: u128,
    pub within_fiber_bound: bool,
    /// `max(2A, B)`.
    pub k: usize,
    /// `blowup(power(H, 2A), B)`.
    pub target: Graph,
    /// Injective homomorphism `G -> target`.
    pub g: Vec<usize>,
}

/// Sends `x` to copy `i` of the clique over `f(x)`, where `x` is the `i`-th
/// smallest vertex of its fiber, and checks the result edge by edge.
pub fn embed_power_blowup(f: &QiMap, a: usize) -> Result<PowerBlowupEmbedding> {
    if a == 0 {
        return Err(Error::NonPositive("A"));
    }
    check_qi_hypothesis(f, a)?;
    let fibers = f.fibers();
    let b = fibers.values().map(Vec::len).max().unwrap_or(1).max(1);
    let mut g_map = vec![0; f.domain.n()];
    for (&y, fiber) in &fibers {
        for (i, &x) in fiber.iter().enumerate() {
            g_map[x] = y * b + i;
        }
    }
    let target = blowup(&power(&f.codomain, 2 * a)?, b)?;
    verify_injective_homomorphism(&f.domain, &target, &g_map)?;
    let fiber_bound = saturating_pow(f.domain.max_degree() as u64, (a * a) as u64);
    Ok(PowerBlowupEmbedding {
        a,
        b,
        fiber_bound,
        within_fiber_bound: b as u128 <= fiber_bound,
        k: (2 * a).max(b),
        target,
        g: g_map,
    })
}

/// Preimages of the clusters of a cover of `H`, with scale
/// `floor(r / c2)` and bound `floor(D / c1)`. Empty preimages are dropped;
/// the family count is kept. The result still has to be certified.
pub fn cover_pullback(cover: &Cover, f: &QiMap, report: &DistortionReport) -> Result<Cover> {
    if !report.is_bilipschitz() {
        return Err(Error::ZeroLowerConstant);
    }
    let fibers = f.fibers();
    let families = cover
        .families
        .iter()
        .map(|family| {
            family
                .iter()
                .filter_map(|cluster| {
                    let mut pre: Vec<usize> = cluster
                        .iter()
                        .filter_map(|y| fibers.get(y))
                        .flatten()
                        .copied()
                        .collect();
                    pre.sort_unstable();
                    (!pre.is_empty()).then_some(pre)
                })
                .collect()
        })
        .collect();
    let r = (Ratio::from_integer(cover.r) / report.c2).to_integer();
    let d = (Ratio::from_integer(cover.claimed_d) / report.c1).to_integer();
    Ok(Cover {
        r,
        claimed_d: d,
        families,
    })
}

/// A map with known quasi-isometry constant `a`, for tests and demos.
#[derive(Clone, Debug)]
pub struct PlantedQi {
    pub kind: &'static str,
    pub map: QiMap,
    pub a: usize,
}

/// Seeded planted quasi-isometries between bounded-degree graphs. The kind
/// cycles with the seed: grid quotient, grid plus short chords, blow-up
/// projection, and collapse of a subdivision.
pub fn planted_qi(seed: u64) -> PlantedQi {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match seed % 4 {
        0 => {
            let (w, h) = (rng.gen_range(4..=10), rng.gen_range(4..=10));
            let g = families::grid(w, h);
            let (qw, qh) = (w.div_ceil(2), h.div_ceil(2));
            let host = families::grid(qw, qh);
            let map = (0..w * h).map(|v| (v / w / 2) * qw + (v % w) / 2).collect();
            PlantedQi { kind: "grid quotient", map: QiMap::new(g, host, map).expect("valid"), a: 2 }
        }
        1 => {
            let (w, h) = (rng.gen_range(4..=9), rng.gen_range(4..=9));
            let g = families::grid(w, h);
            let mut host = g.clone();
            for _ in 0..rng.gen_range(1..=w * h / 4) {
                let (x, y) = (rng.gen_range(0..w), rng.gen_range(0..h));
                let (dx, dy) = (rng.gen_range(0..=2usize), rng.gen_range(0..=1usize));
                if x + dx < w && y + dy < h && dx + dy > 1 {
                    host.add_edge(y * w + x, (y + dy) * w + x + dx).expect("in range");
                }
            }
            let map = (0..g.n()).collect();
            PlantedQi { kind: "grid with short chords", map: QiMap::new(g, host, map).expect("valid"), a: 3 }
        }
        2 => {
            let n = rng.gen_range(4..=24);
            let host = families::cycle(n);
            let g = blowup(&host, 2).expect("k > 0");
            let map = (0..g.n()).map(|x| x / 2).collect();
            PlantedQi { kind: "blow-up projection", map: QiMap::new(g, host, map).expect("valid"), a: 2 }
        }
        _ => {
            let (w, h) = (rng.gen_range(3..=7), rng.gen_range(3..=7));
            let host = families::grid(w, h);
            let g = subdivide(&host, 1);
            let n = host.n();
            let edges = host.edge_list();
            let map = (0..g.n()).map(|x| if x < n { x } else { edges[x - n].0 }).collect();
            PlantedQi { kind: "subdivision collapse", map: QiMap::new(g, host, map).expect("valid"), a: 2 }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::{complete, grid, grid2, path};
    use crate::graph::all_pairs_distances;

    #[test]
    fn identity_is_isometry() {
        let r = measure_distortion(&QiMap::identity(&grid2(5))).unwrap();
        assert_eq!((r.c1, r.c2), (Ratio::from_integer(1), Ratio::from_integer(1)));
        assert_eq!(r.surjectivity_radius, 0);
        assert_eq!(r.additive_eps(Ratio::from_integer(1)), Ratio::from_integer(0));
    }

    #[test]
    fn subdivision_inclusion_doubles() {
        let g = grid2(4);
        let s = subdivide(&g, 1);
        let f = QiMap::new(g.clone(), s, (0..g.n()).collect()).unwrap();
        let r = measure_distortion(&f).unwrap();
        assert_eq!((r.c1, r.c2), (Ratio::from_integer(2), Ratio::from_integer(2)));
        assert_eq!(r.surjectivity_radius, 1);
    }

    #[test]
    fn round_to_even() {
        let g = grid2(8);
        let map = (0..64).map(|v| (v / 8) / 2 * 2 * 8 + (v % 8) / 2 * 2).collect();
        let f = QiMap::new(g.clone(), g, map).unwrap();
        let r = measure_distortion(&f).unwrap();
        assert_eq!(r.c1, Ratio::from_integer(0));
        assert_eq!(r.c2, Ratio::from_integer(2));
        assert_eq!(r.additive_eps(Ratio::from_integer(1)), Ratio::from_integer(2));
        // a vertex with two odd coordinates is 2 away from the even sublattice
        assert_eq!(r.surjectivity_radius, 2);
    }

    #[test]
    fn report_is_sound_and_tight() {
        let p = planted_qi(5);
        let r = measure_distortion(&p.map).unwrap();
        let dg = all_pairs_distances(&p.map.domain);
        let dh = all_pairs_distances(&p.map.codomain);
        for x in 0..dg.n() {
            for y in x + 1..dg.n() {
                let a = u64::from(dg.get(x, y).unwrap());
                let b = u64::from(dh.get(p.map.map[x], p.map.map[y]).unwrap());
                assert!(r.c1 * a <= Ratio::from_integer(b) && Ratio::from_integer(b) <= r.c2 * a);
            }
        }
        let (x, y) = r.c1_witness;
        let ratio = Ratio::new(
            u64::from(dh.get(p.map.map[x], p.map.map[y]).unwrap()),
            u64::from(dg.get(x, y).unwrap()),
        );
        assert_eq!(ratio, r.c1);
    }

    #[test]
    fn distortion_is_invariant_under_relabelling() {
        let g = grid(5, 3);
        let perm: Vec<usize> = (0..15).rev().collect();
        let relabelled = Graph::from_edges(15, g.edges().map(|(u, v)| (perm[u], perm[v]))).unwrap();
        let h = path(15);
        let f1 = QiMap::new(g.clone(), h.clone(), (0..15).map(|v| v % 5 + v / 5).collect()).unwrap();
        let map2 = (0..15).map(|v| f1.map[perm[v]]).collect();
        let f2 = QiMap::new(relabelled, h, map2).unwrap();
        let (a, b) = (measure_distortion(&f1).unwrap(), measure_distortion(&f2).unwrap());
        assert_eq!((a.c1, a.c2, a.surjectivity_radius), (b.c1, b.c2, b.surjectivity_radius));
    }

    #[test]
    fn prune_identity() {
        let g = grid2(4);
        let p = prune_to_bounded_degree(&QiMap::identity(&g), 1).unwrap();
        assert_eq!(p.hprime.edge_list(), g.edge_list());
    }

    #[test]
    fn prune_avoids_apex() {
        let g = path(10);
        let mut h = path(11);
        for v in 0..10 {
            h.add_edge(v, 10).unwrap();
        }
        let f = QiMap::new(g, h, (0..10).collect()).unwrap();
        let p = prune_to_bounded_degree(&f, 2).unwrap();
        assert_eq!(p.hprime.n(), 10);
        assert_eq!(p.degree_bound, 256);
        assert!(p.degree_bound_holds);
        let g = path(3);
        let f = QiMap::new(g, path(9), vec![0, 8, 4]).unwrap();
        assert!(matches!(prune_to_bounded_degree(&f, 2), Err(Error::Hypothesis { x: 0, y: 1, .. })));
    }

    #[test]
    fn embed_identity_and_projection() {
        let g = grid2(3);
        let e = embed_power_blowup(&QiMap::identity(&g), 1).unwrap();
        assert_eq!((e.b, e.k), (1, 2));
        assert_eq!(e.g, (0..9).collect::<Vec<_>>());
        let h = path(3);
        let g = blowup(&h, 2).unwrap();
        let f = QiMap::new(g, h, vec![0, 0, 1, 1, 2, 2]).unwrap();
        let e = embed_power_blowup(&f, 2).unwrap();
        assert_eq!(e.b, 2);
        assert!(e.within_fiber_bound);
    }

    #[test]
    fn fiber_can_exceed_degree_power() {
        let f = QiMap::new(complete(4), Graph::new(1), vec![0; 4]).unwrap();
        let e = embed_power_blowup(&f, 1).unwrap();
        assert_eq!((e.b, e.fiber_bound), (4, 3));
        assert!(!e.within_fiber_bound);
    }

    #[test]
    fn hypothesis_violations() {
        let f = QiMap::new(path(5), Graph::new(1), vec![0; 5]).unwrap();
        assert!(matches!(embed_power_blowup(&f, 1), Err(Error::Hypothesis { .. })));
        assert!(QiMap::new(path(2), path(1), vec![0, 1]).is_err());
    }

    #[test]
    fn planted_instances_hold() {
        for seed in 0..12 {
            let p = planted_qi(seed);
            check_qi_hypothesis(&p.map, p.a).unwrap();
            prune_to_bounded_degree(&p.map, p.a).unwrap();
            embed_power_blowup(&p.map, p.a).unwrap();
        }
    }

    #[test]
    fn json_round_trip() {
        let p = planted_qi(2);
        let back = QiMap::from_json(p.map.domain.clone(), p.map.codomain.clone(), &p.map.to_json()).unwrap();
        assert_eq!(back, p.map);
    }
}
