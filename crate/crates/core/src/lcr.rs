//! Crossing bounds for subgraphs of powers of planar graphs, combinatorial
//! drawings, crossing planarization, and the chain that turns a quasi-isometry
//! to a 1-planar graph into a subgraph of a power of a planar graph.

use std::collections::{BTreeMap, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::metric::distances_within;
use crate::graph::{
    attach_pendants, blowup, families, pendant_power_embedding, planarity_check, subdivide, Graph,
    KuratowskiWitness, Planarity, RotationSystem,
};
use crate::qi::{check_qi_hypothesis, embed_power_blowup, prune_to_bounded_degree, saturating_pow, QiMap};

/// Every guest edge routed along a path of length at most `k` in a planar host.
#[derive(Clone, Debug, Serialize)]
pub struct PowerRealization {
    pub host: Graph,
    #[serde(skip)]
    pub rotation: RotationSystem,
    pub guest: Graph,
    /// Guest vertex to host vertex.
    pub injection: Vec<usize>,
    pub k: usize,
    /// Maximum degree of the host.
    pub delta: usize,
    /// One host path per guest edge, in `guest.edge_list()` order.
    pub paths: Vec<Vec<usize>>,
}

/// Routes every edge of `g` along the canonical shortest path between the
/// images of its ends: from the first end, always step to the smallest
/// neighbour one closer to the other end. The host must be planar and the
/// images of adjacent vertices at distance at most `k`.
pub fn realize_in_power(h: &Graph, g: &Graph, k: usize, injection: &[usize]) -> Result<PowerRealization> {
    if k == 0 {
        return Err(Error::NonPositive("k"));
    }
    if injection.len() != g.n() {
        return Err(Error::InvalidMap(format!("{} images for {} vertices", injection.len(), g.n())));
    }
    let mut seen = vec![usize::MAX; h.n()];
    for (x, &y) in injection.iter().enumerate() {
        h.check_vertex(y)?;
        if seen[y] != usize::MAX {
            return Err(Error::InvalidMap(format!("vertices {} and {x} share the image {y}", seen[y])));
        }
        seen[y] = x;
    }
    let rotation = match planarity_check(h) {
        Planarity::Planar(rot) => rot,
        Planarity::NonPlanar(w) => {
            return Err(Error::Verification(format!("host is not planar ({:?} subdivision)", w.kind)));
        }
    };
    let edges = g.edge_list();
    let limit = k as u32;
    let paths: Vec<Vec<usize>> = edges
        .par_iter()
        .map(|&(x, y)| {
            let (s, t) = (injection[x], injection[y]);
            let to_t = distances_within(h, t, limit);
            let Some(&d) = to_t.get(&s) else {
                return Err(Error::Hypothesis {
                    x,
                    y,
                    detail: format!("images {s} and {t} are farther apart than {k}"),
                });
            };
            let mut path = vec![s];
            let mut cur = s;
            for step in (0..d).rev() {
                cur = *h
                    .neighbors(cur)
                    .iter()
                    .find(|w| to_t.get(w) == Some(&step))
                    .expect("distance layers are consistent");
                path.push(cur);
            }
            Ok(path)
        })
        .collect::<Result<_>>()?;
    Ok(PowerRealization {
        host: h.clone(),
        rotation,
        guest: g.clone(),
        injection: injection.to_vec(),
        k,
        delta: h.max_degree(),
        paths,
    })
}

/// Tube-drawing crossing counts of a realization.
#[derive(Clone, Debug, Serialize)]
pub struct CrossingBound {
    /// `2 * sum over w on P_e of (paths through w other than P_e)`.
    pub per_edge: Vec<u64>,
    pub max: u64,
    pub max_edge: Option<(usize, usize)>,
    /// `2k(k+1)Δ^k`, saturating.
    pub formula: u128,
    pub within_formula: bool,
    pub longest_path: usize,
}

/// `2k(k+1)Δ^k`, saturating.
pub fn crossing_formula(k: usize, delta: usize) -> u128 {
    let k = k as u128;
    (2 * k * (k + 1)).saturating_mul(saturating_pow(delta as u64, k as u64))
}

pub fn crossing_upper_bound(real: &PowerRealization) -> CrossingBound {
    let mut through = vec![0u64; real.host.n()];
    for p in &real.paths {
        for &w in p {
            through[w] += 1;
        }
    }
    let per_edge: Vec<u64> = real
        .paths
        .par_iter()
        .map(|p| 2 * p.iter().map(|&w| through[w] - 1).sum::<u64>())
        .collect();
    let edges = real.guest.edge_list();
    let (max, max_edge) = per_edge
        .iter()
        .enumerate()
        .max_by_key(|&(i, &b)| (b, std::cmp::Reverse(i)))
        .map_or((0, None), |(i, &b)| (b, Some(edges[i])));
    let formula = crossing_formula(real.k, real.delta);
    CrossingBound {
        within_formula: u128::from(max) <= formula,
        per_edge,
        max,
        max_edge,
        formula,
        longest_path: real.paths.iter().map(|p| p.len().saturating_sub(1)).max().unwrap_or(0),
    }
}

/// A crossing of two edges; `pos[i]` is its index along `edges[i]`, counted
/// from the smaller end.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Crossing {
    pub id: usize,
    pub edges: [usize; 2],
    pub pos: [usize; 2],
}

/// Combinatorial drawing: cyclic order of edge ids around each vertex and
/// the crossings along each edge. Edge ids index `g.edge_list()`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Drawing {
    #[serde(with = "string_keys")]
    pub rotations: BTreeMap<usize, Vec<usize>>,
    pub crossings: Vec<Crossing>,
}

mod string_keys {
    use std::collections::BTreeMap;

    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(map: &BTreeMap<usize, Vec<usize>>, s: S) -> Result<S::Ok, S::Error> {
        s.collect_map(map.iter().map(|(k, v)| (k.to_string(), v)))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<usize, Vec<usize>>, D::Error> {
        let raw = BTreeMap::<String, Vec<usize>>::deserialize(d)?;
        raw.into_iter()
            .map(|(k, v)| k.parse().map(|k| (k, v)).map_err(D::Error::custom))
            .collect()
    }
}

impl Drawing {
    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    /// Crossings per edge.
    pub fn crossing_counts(&self, m: usize) -> Vec<usize> {
        let mut count = vec![0; m];
        for c in &self.crossings {
            for &e in &c.edges {
                if e < m {
                    count[e] += 1;
                }
            }
        }
        count
    }

    /// Checks ids, edge references, positions and rotations against `g`.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let edges = g.edge_list();
        let m = edges.len();
        let bad = |s: String| Err(Error::MalformedDrawing(s));
        let mut ids = std::collections::HashSet::new();
        let mut pairs = std::collections::HashSet::new();
        let mut positions: Vec<Vec<usize>> = vec![Vec::new(); m];
        for c in &self.crossings {
            if !ids.insert(c.id) {
                return bad(format!("crossing id {} is used twice", c.id));
            }
            let [e, f] = c.edges;
            if e >= m || f >= m {
                return bad(format!("crossing {} names a missing edge", c.id));
            }
            if e == f {
                return bad(format!("crossing {} joins edge {e} to itself", c.id));
            }
            if !pairs.insert((e.min(f), e.max(f))) {
                return bad(format!("edges {e} and {f} cross more than once"));
            }
            positions[e].push(c.pos[0]);
            positions[f].push(c.pos[1]);
        }
        for (e, pos) in positions.iter_mut().enumerate() {
            pos.sort_unstable();
            if pos.iter().enumerate().any(|(i, &p)| i != p) {
                return bad(format!("positions along edge {e} are not 0..{}", pos.len()));
            }
        }
        for (&v, order) in &self.rotations {
            if v >= g.n() {
                return bad(format!("rotation for missing vertex {v}"));
            }
            let mut got = order.clone();
            got.sort_unstable();
            let mut want: Vec<usize> = g.neighbors(v).iter().map(|&w| edge_id(&edges, v, w)).collect();
            want.sort_unstable();
            if got != want {
                return bad(format!("rotation at {v} is not a permutation of its edges"));
            }
        }
        Ok(())
    }
}

fn edge_id(edges: &[(usize, usize)], u: usize, v: usize) -> usize {
    edges.binary_search(&(u.min(v), u.max(v))).expect("edge exists")
}

/// Output of [`planarize_drawing`].
#[derive(Clone, Debug, Serialize)]
pub struct DrawingPlanarization {
    /// `G` with every crossing replaced by a new vertex `n + i`, where `i`
    /// indexes `drawing.crossings`.
    pub f2: Graph,
    /// Per edge of `G` (in `edge_list` order), its path in `F2`.
    pub edge_paths: Vec<Vec<usize>>,
    pub crossings: usize,
    /// Most crossings on one edge.
    pub s: usize,
    /// Largest `F2`-distance between the ends of an edge of `G`.
    pub max_stretch: u32,
    pub planar: bool,
    #[serde(skip)]
    pub obstruction: Option<KuratowskiWitness>,
}

impl DrawingPlanarization {
    /// `G` is a subgraph of `F2^(s+1)`, as measured.
    pub fn power_claim_holds(&self) -> bool {
        self.max_stretch as usize <= self.s + 1
    }
}

/// Replaces each crossing by a degree-4 vertex. A non-planar result means the
/// drawing is not realizable; it is reported, not raised.
pub fn planarize_drawing(g: &Graph, d: &Drawing) -> Result<DrawingPlanarization> {
    d.validate(g)?;
    let n = g.n();
    let edges = g.edge_list();
    let mut along: Vec<Vec<(usize, usize)>> = vec![Vec::new(); edges.len()];
    for (i, c) in d.crossings.iter().enumerate() {
        along[c.edges[0]].push((c.pos[0], n + i));
        along[c.edges[1]].push((c.pos[1], n + i));
    }
    let c = d.crossings.len();
    let mut f2 = Graph::new(n + c);
    for v in 0..n {
        f2.set_label(v, g.display_name(v));
    }
    for (i, cr) in d.crossings.iter().enumerate() {
        f2.set_label(n + i, format!("x{}", cr.id));
    }
    let mut edge_paths = Vec::with_capacity(edges.len());
    for (e, &(u, v)) in edges.iter().enumerate() {
        along[e].sort_unstable();
        let mut path = vec![u];
        path.extend(along[e].iter().map(|&(_, x)| x));
        path.push(v);
        for w in path.windows(2) {
            f2.add_edge(w[0], w[1])?;
        }
        edge_paths.push(path);
    }
    if f2.m() != g.m() + 2 * c {
        return Err(Error::MalformedDrawing(format!(
            "planarization has {} edges, expected {}",
            f2.m(),
            g.m() + 2 * c
        )));
    }
    let s = d.crossing_counts(edges.len()).into_iter().max().unwrap_or(0);
    let limit = (s + 1) as u32;
    let max_stretch = edges
        .par_iter()
        .map(|&(u, v)| distances_within(&f2, v, limit).get(&u).copied().unwrap_or(u32::MAX))
        .max()
        .unwrap_or(0);
    let (planar, obstruction) = match planarity_check(&f2) {
        Planarity::Planar(_) => (true, None),
        Planarity::NonPlanar(w) => (false, Some(w)),
    };
    Ok(DrawingPlanarization {
        f2,
        edge_paths,
        crossings: c,
        s,
        max_stretch,
        planar,
        obstruction,
    })
}

/// Keeps the vertices in `keep` and the edges accepted by `edge_ok` (given
/// as pairs of original vertices). Returns the subgraph, its vertex map to
/// `G` and the inherited drawing.
pub fn sub_drawing<F>(g: &Graph, d: &Drawing, keep: &[usize], edge_ok: F) -> Result<(Graph, Vec<usize>, Drawing)>
where
    F: Fn(usize, usize) -> bool,
{
    d.validate(g)?;
    let (induced, back) = g.induced_subgraph(keep);
    let mut sub = Graph::new(induced.n());
    for v in 0..induced.n() {
        sub.set_label(v, induced.display_name(v));
    }
    for (u, v) in induced.edges() {
        if edge_ok(back[u], back[v]) {
            sub.add_edge(u, v)?;
        }
    }
    let old_edges = g.edge_list();
    let new_edges = sub.edge_list();
    let mut index = vec![usize::MAX; g.n()];
    for (i, &v) in back.iter().enumerate() {
        index[v] = i;
    }
    // old edge id -> new edge id
    let mut remap = vec![usize::MAX; old_edges.len()];
    for (e, &(u, v)) in old_edges.iter().enumerate() {
        let (a, b) = (index[u], index[v]);
        if a != usize::MAX && b != usize::MAX {
            if let Ok(id) = new_edges.binary_search(&(a.min(b), a.max(b))) {
                remap[e] = id;
            }
        }
    }
    let kept: Vec<&Crossing> = d
        .crossings
        .iter()
        .filter(|c| c.edges.iter().all(|&e| remap[e] != usize::MAX))
        .collect();
    // renumber positions along each surviving edge, keeping their order
    let mut along: HashMap<usize, Vec<(usize, usize, usize)>> = HashMap::new();
    for (i, c) in kept.iter().enumerate() {
        for side in 0..2 {
            along.entry(c.edges[side]).or_default().push((c.pos[side], i, side));
        }
    }
    let mut crossings: Vec<Crossing> = kept
        .iter()
        .map(|c| Crossing {
            id: c.id,
            edges: [remap[c.edges[0]], remap[c.edges[1]]],
            pos: [0, 0],
        })
        .collect();
    for list in along.values_mut() {
        list.sort_unstable();
        for (rank, &(_, i, side)) in list.iter().enumerate() {
            crossings[i].pos[side] = rank;
        }
    }
    let rotations = d
        .rotations
        .iter()
        .filter(|(&v, _)| index[v] != usize::MAX)
        .map(|(&v, order)| {
            let order = order.iter().map(|&e| remap[e]).filter(|&e| e != usize::MAX).collect();
            (index[v], order)
        })
        .collect();
    let out = Drawing { rotations, crossings };
    let before = d.crossing_counts(old_edges.len());
    let after = out.crossing_counts(new_edges.len());
    for (e, &ne) in remap.iter().enumerate() {
        if ne != usize::MAX && after[ne] > before[e] {
            return Err(Error::Verification(format!("restriction added crossings to edge {e}")));
        }
    }
    Ok((sub, back, out))
}

/// Drawing of the induced subgraph `G[X]`.
pub fn restrict_drawing(g: &Graph, d: &Drawing, x: &[usize]) -> Result<(Graph, Vec<usize>, Drawing)> {
    sub_drawing(g, d, x, |_, _| true)
}

/// Grid `w x h` (vertex `y*w + x`) where each unit square independently gets
/// both diagonals with probability `p`; the two diagonals cross once. The
/// rotations follow the straight-line picture.
pub fn one_planar_grid(w: usize, h: usize, p: f64, seed: u64) -> Result<(Graph, Drawing)> {
    if w == 0 || h == 0 {
        return Err(Error::NonPositive("grid side"));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Infeasible(format!("probability {p} outside [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = families::grid(w, h);
    let mut squares = Vec::new();
    for y in 0..h.saturating_sub(1) {
        for x in 0..w.saturating_sub(1) {
            if rng.gen_bool(p) {
                let (a, b) = (y * w + x, (y + 1) * w + x + 1);
                let (c, d) = (y * w + x + 1, (y + 1) * w + x);
                g.add_edge(a, b)?;
                g.add_edge(c, d)?;
                squares.push(((a, b), (c, d)));
            }
        }
    }
    let edges = g.edge_list();
    let crossings = squares
        .into_iter()
        .enumerate()
        .map(|(id, (e, f))| Crossing {
            id,
            edges: [edge_id(&edges, e.0, e.1), edge_id(&edges, f.0, f.1)],
            pos: [0, 0],
        })
        .collect();
    let pos = |v: usize| ((v % w) as f64, (v / w) as f64);
    let rotations = (0..g.n())
        .map(|v| {
            let (vx, vy) = pos(v);
            let mut order: Vec<(f64, usize)> = g
                .neighbors(v)
                .iter()
                .map(|&u| {
                    let (ux, uy) = pos(u);
                    ((uy - vy).atan2(ux - vx), edge_id(&edges, u, v))
                })
                .collect();
            order.sort_by(|a, b| a.0.total_cmp(&b.0));
            (v, order.into_iter().map(|(_, e)| e).collect())
        })
        .collect();
    Ok((g, Drawing { rotations, crossings }))
}

/// A quasi-isometry onto a drawn 1-planar graph, with its constant.
#[derive(Clone, Debug)]
pub struct PlantedDrawnQi {
    pub kind: &'static str,
    pub map: QiMap,
    pub a: usize,
    pub drawing: Drawing,
}

/// Seeded maps onto [`one_planar_grid`] graphs: the identity, the collapse
/// of a subdivision, or the projection of a blow-up, by seed.
pub fn planted_one_planar_qi(seed: u64) -> Result<PlantedDrawnQi> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (w, h) = (rng.gen_range(3..=6), rng.gen_range(3..=6));
    let (f1, drawing) = one_planar_grid(w, h, 0.4, rng.gen())?;
    let n = f1.n();
    let (kind, domain, map, a) = match seed % 3 {
        0 => ("identity", f1.clone(), (0..n).collect(), 1),
        1 => {
            let g = subdivide(&f1, 1);
            let edges = f1.edge_list();
            let map = (0..g.n()).map(|x| if x < n { x } else { edges[x - n].0 }).collect();
            ("subdivision collapse", g, map, 2)
        }
        _ => ("blow-up projection", blowup(&f1, 2)?, (0..2 * n).map(|x| x / 2).collect(), 2),
    };
    Ok(PlantedDrawnQi {
        kind,
        map: QiMap::new(domain, f1, map)?,
        a,
        drawing,
    })
}

/// Every stage of [`drawn_qi_chain`], with the quantities it certified.
#[derive(Clone, Debug, Serialize)]
pub struct ChainReport {
    pub a: usize,
    pub domain_vertices: usize,
    pub domain_max_degree: usize,
    /// Bounded-degree subgraph of the drawn target.
    pub pruned_vertices: usize,
    pub pruned_max_degree: usize,
    pub pruned_degree_bound_holds: bool,
    /// Planarization of the inherited drawing.
    pub crossings: usize,
    pub s: usize,
    pub planarization_planar: bool,
    pub planarization_power_claim: bool,
    /// Blow-up embedding.
    pub fiber: usize,
    pub blowup_k: usize,
    /// Final planar host (pendants on the planarization) and power.
    pub host_vertices: usize,
    pub host_max_degree: usize,
    pub power: usize,
    pub longest_path: usize,
    pub crossing_bound: u64,
    pub crossing_formula: u128,
    pub within_formula: bool,
}

impl ChainReport {
    pub fn passed(&self) -> bool {
        self.planarization_planar && self.planarization_power_claim && self.within_formula
    }
}

/// From a quasi-isometry `f: G -> F1` with constant `a` and a drawing of
/// `F1`: prune `F1` to bounded degree, planarize the inherited drawing, embed
/// `G` into a blown-up power of the pruned graph, send the blow-up to
/// pendant leaves, and realize `G` inside a power of the planar graph
/// "planarization plus pendants". Every step is checked.
pub fn drawn_qi_chain(f: &QiMap, a: usize, drawing: &Drawing) -> Result<(ChainReport, PowerRealization)> {
    check_qi_hypothesis(f, a)?;
    let pruned = prune_to_bounded_degree(f, a)?;
    let target = &f.codomain;
    let (hp, back, hp_drawing) = sub_drawing(target, drawing, &pruned.back, |u, v| {
        let (iu, iv) = (
            pruned.back.binary_search(&u).expect("kept"),
            pruned.back.binary_search(&v).expect("kept"),
        );
        pruned.hprime.has_edge(iu, iv)
    })?;
    debug_assert_eq!(back, pruned.back);
    if hp.edge_list() != pruned.hprime.edge_list() {
        return Err(Error::Verification("inherited drawing does not match the pruned graph".into()));
    }
    let planarization = planarize_drawing(&hp, &hp_drawing)?;
    if !planarization.planar {
        return Err(Error::Verification("planarized drawing is not planar".into()));
    }
    if !planarization.power_claim_holds() {
        return Err(Error::Verification(format!(
            "an edge is stretched to {} > s + 1 = {}",
            planarization.max_stretch,
            planarization.s + 1
        )));
    }
    let emb = embed_power_blowup(&pruned.map, a)?;
    let kb = emb.k;
    let pend = pendant_power_embedding(&pruned.hprime, kb)?;
    let f2 = &planarization.f2;
    let host = attach_pendants(f2, kb)?;
    let (n1, n2) = (pruned.hprime.n(), f2.n());
    // G -> blowup(power(H', 2A), B) -> blowup(power(H', kb), kb) -> pendants of H' -> pendants of F2
    let injection: Vec<usize> = emb
        .g
        .iter()
        .map(|&slot| {
            let (v, i) = (slot / emb.b, slot % emb.b);
            let leaf = pend.map[v * kb + i];
            debug_assert!(leaf >= n1);
            n2 + (leaf - n1)
        })
        .collect();
    let power = (kb + 2) * (planarization.s + 1);
    let real = realize_in_power(&host, &f.domain, power, &injection)?;
    let bound = crossing_upper_bound(&real);
    let report = ChainReport {
        a,
        domain_vertices: f.domain.n(),
        domain_max_degree: f.domain.max_degree(),
        pruned_vertices: n1,
        pruned_max_degree: pruned.max_degree,
        pruned_degree_bound_holds: pruned.degree_bound_holds,
        crossings: planarization.crossings,
        s: planarization.s,
        planarization_planar: planarization.planar,
        planarization_power_claim: planarization.power_claim_holds(),
        fiber: emb.b,
        blowup_k: kb,
        host_vertices: host.n(),
        host_max_degree: host.max_degree(),
        power,
        longest_path: bound.longest_path,
        crossing_bound: bound.max,
        crossing_formula: bound.formula,
        within_formula: bound.within_formula,
    };
    Ok((report, real))
}
