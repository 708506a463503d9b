//! Finite windows of infinite graphs and random tree-sums of planar pieces.
//!
//! A [`GraphSource`] is a locally finite graph given by an adjacency oracle on
//! structured keys. [`GraphSource::ball`] explores it breadth-first and
//! returns the metric ball as a dense [`Graph`].

use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::treedec::{BagType, TreeDecomposition};

/// Default vertex cap for ball exploration.
pub const DEFAULT_CAP: usize = 2_000_000;

pub trait GraphSource {
    type Key: Clone + Eq + Hash + Debug;

    fn name(&self) -> String;
    fn base(&self) -> Self::Key;
    /// Finite, symmetric and deterministic.
    fn neighbors(&self, key: &Self::Key) -> Vec<Self::Key>;
    fn label(&self, key: &Self::Key) -> String;

    /// Ball of radius `radius` around the base point.
    fn ball(&self, radius: usize, cap: usize) -> Result<Window> {
        self.ball_around(&self.base(), radius, cap)
    }

    /// Vertices are numbered in breadth-first discovery order, so the centre is 0.
    fn ball_around(&self, center: &Self::Key, radius: usize, cap: usize) -> Result<Window> {
        let mut index: HashMap<Self::Key, usize> = HashMap::new();
        let mut keys = vec![center.clone()];
        let mut depth = vec![0usize];
        index.insert(center.clone(), 0);
        let mut edges = Vec::new();
        let mut head = 0;
        while head < keys.len() {
            let v = head;
            head += 1;
            for w in self.neighbors(&keys[v]) {
                let id = match index.get(&w) {
                    Some(&id) => id,
                    None if depth[v] < radius => {
                        let id = keys.len();
                        if id >= cap {
                            return Err(Error::ExplorationCap(cap));
                        }
                        index.insert(w.clone(), id);
                        keys.push(w);
                        depth.push(depth[v] + 1);
                        id
                    }
                    None => continue,
                };
                if v < id {
                    edges.push((v, id));
                }
            }
        }
        let mut graph = Graph::from_edges(keys.len(), edges)?;
        for (i, k) in keys.iter().enumerate() {
            graph.set_label(i, self.label(k));
        }
        let boundary = (0..keys.len()).filter(|&i| depth[i] == radius).collect();
        Ok(Window {
            source: self.name(),
            graph,
            center: 0,
            radius,
            boundary,
        })
    }
}

/// Metric ball of a source. `boundary` holds the vertices at distance
/// exactly `radius` from `center`.
#[derive(Clone, Debug, Serialize)]
pub struct Window {
    pub source: String,
    pub graph: Graph,
    pub center: usize,
    pub radius: usize,
    pub boundary: Vec<usize>,
}

/// The square grid.
#[derive(Clone, Copy, Debug, Default)]
pub struct Grid2;

impl GraphSource for Grid2 {
    type Key = (i64, i64);
    fn name(&self) -> String {
        "grid2".into()
    }
    fn base(&self) -> Self::Key {
        (0, 0)
    }
    fn neighbors(&self, &(x, y): &Self::Key) -> Vec<Self::Key> {
        vec![(x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)]
    }
    fn label(&self, &(x, y): &Self::Key) -> String {
        format!("({x},{y})")
    }
}

/// The cubic lattice.
#[derive(Clone, Copy, Debug, Default)]
pub struct Grid3;

impl GraphSource for Grid3 {
    type Key = (i64, i64, i64);
    fn name(&self) -> String {
        "grid3".into()
    }
    fn base(&self) -> Self::Key {
        (0, 0, 0)
    }
    fn neighbors(&self, &(x, y, z): &Self::Key) -> Vec<Self::Key> {
        vec![
            (x + 1, y, z),
            (x - 1, y, z),
            (x, y + 1, z),
            (x, y - 1, z),
            (x, y, z + 1),
            (x, y, z - 1),
        ]
    }
    fn label(&self, &(x, y, z): &Self::Key) -> String {
        format!("({x},{y},{z})")
    }
}

/// The square grid with both diagonals in every square.
#[derive(Clone, Copy, Debug, Default)]
pub struct Grid2Diag;

impl GraphSource for Grid2Diag {
    type Key = (i64, i64);
    fn name(&self) -> String {
        "grid2_diag".into()
    }
    fn base(&self) -> Self::Key {
        (0, 0)
    }
    fn neighbors(&self, &(x, y): &Self::Key) -> Vec<Self::Key> {
        let mut out = Vec::with_capacity(8);
        for dx in -1..=1 {
            for dy in -1..=1 {
                if (dx, dy) != (0, 0) {
                    out.push((x + dx, y + dy));
                }
            }
        }
        out
    }
    fn label(&self, k: &Self::Key) -> String {
        Grid2.label(k)
    }
}

/// The square grid plus one edge between `(0,0)` and `(length,0)`.
#[derive(Clone, Copy, Debug)]
pub struct Grid2LongEdge {
    pub length: i64,
}

impl GraphSource for Grid2LongEdge {
    type Key = (i64, i64);
    fn name(&self) -> String {
        format!("grid2_long_edge({})", self.length)
    }
    fn base(&self) -> Self::Key {
        (0, 0)
    }
    fn neighbors(&self, k: &Self::Key) -> Vec<Self::Key> {
        let mut out = Grid2.neighbors(k);
        let far = (self.length, 0);
        if self.length > 1 {
            if *k == (0, 0) {
                out.push(far);
            } else if *k == far {
                out.push((0, 0));
            }
        }
        out
    }
    fn label(&self, k: &Self::Key) -> String {
        Grid2.label(k)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ApexKey {
    Apex,
    Cell(i64, i64),
}

/// The square grid plus an apex joined to every cell with `|x| + |y| <= reach`.
/// A truly universal vertex has infinite degree, so windows use a finite reach
/// (normally the window radius).
#[derive(Clone, Copy, Debug)]
pub struct Grid2Apex {
    pub reach: i64,
}

impl Grid2Apex {
    /// Ball of radius 1 around the apex.
    pub fn apex_window(&self, cap: usize) -> Result<Window> {
        self.ball_around(&ApexKey::Apex, 1, cap)
    }
}

impl GraphSource for Grid2Apex {
    type Key = ApexKey;
    fn name(&self) -> String {
        format!("grid2_apex({})", self.reach)
    }
    fn base(&self) -> Self::Key {
        ApexKey::Cell(0, 0)
    }
    fn neighbors(&self, k: &Self::Key) -> Vec<Self::Key> {
        match *k {
            ApexKey::Apex => {
                let r = self.reach;
                let mut out = Vec::new();
                for x in -r..=r {
                    let span = r - x.abs();
                    for y in -span..=span {
                        out.push(ApexKey::Cell(x, y));
                    }
                }
                out
            }
            ApexKey::Cell(x, y) => {
                let mut out: Vec<_> = Grid2.neighbors(&(x, y)).into_iter().map(|(a, b)| ApexKey::Cell(a, b)).collect();
                if x.abs() + y.abs() <= self.reach {
                    out.push(ApexKey::Apex);
                }
                out
            }
        }
    }
    fn label(&self, k: &Self::Key) -> String {
        match *k {
            ApexKey::Apex => "apex".into(),
            ApexKey::Cell(x, y) => format!("({x},{y})"),
        }
    }
}

/// `d`-regular tree. Keys are child-index addresses from the base vertex;
/// the base has `d` children, every other vertex `d - 1`.
#[derive(Clone, Copy, Debug)]
pub struct RegularTree {
    pub degree: usize,
}

impl GraphSource for RegularTree {
    type Key = Vec<u32>;
    fn name(&self) -> String {
        format!("regular_tree({})", self.degree)
    }
    fn base(&self) -> Self::Key {
        Vec::new()
    }
    fn neighbors(&self, k: &Self::Key) -> Vec<Self::Key> {
        let mut out = Vec::new();
        let children = if k.is_empty() { self.degree } else { self.degree.saturating_sub(1) };
        if let Some((_, parent)) = k.split_last() {
            out.push(parent.to_vec());
        }
        for c in 0..children as u32 {
            let mut child = k.clone();
            child.push(c);
            out.push(child);
        }
        out
    }
    fn label(&self, k: &Self::Key) -> String {
        address_label(k)
    }
}

/// Rooted binary tree: the root has two children and every vertex below it
/// has a parent and two children.
#[derive(Clone, Copy, Debug, Default)]
pub struct BinaryTree;

impl GraphSource for BinaryTree {
    type Key = Vec<u32>;
    fn name(&self) -> String {
        "binary_tree".into()
    }
    fn base(&self) -> Self::Key {
        Vec::new()
    }
    fn neighbors(&self, k: &Self::Key) -> Vec<Self::Key> {
        let mut out = Vec::with_capacity(3);
        if let Some((_, parent)) = k.split_last() {
            out.push(parent.to_vec());
        }
        for c in 0..2 {
            let mut child = k.clone();
            child.push(c);
            out.push(child);
        }
        out
    }
    fn label(&self, k: &Self::Key) -> String {
        address_label(k)
    }
}

fn address_label(k: &[u32]) -> String {
    let mut s = String::from("r");
    for c in k {
        s.push('.');
        s.push_str(&c.to_string());
    }
    s
}

/// The two-way infinite path on the integers.
#[derive(Clone, Copy, Debug, Default)]
pub struct TwoWayPath;

impl GraphSource for TwoWayPath {
    type Key = i64;
    fn name(&self) -> String {
        "two_way_path".into()
    }
    fn base(&self) -> Self::Key {
        0
    }
    fn neighbors(&self, &x: &Self::Key) -> Vec<Self::Key> {
        vec![x - 1, x + 1]
    }
    fn label(&self, x: &Self::Key) -> String {
        x.to_string()
    }
}

/// Strong product of two sources.
#[derive(Clone, Copy, Debug, Default)]
pub struct StrongProduct<A, B>(pub A, pub B);

impl<A: GraphSource, B: GraphSource> GraphSource for StrongProduct<A, B> {
    type Key = (A::Key, B::Key);
    fn name(&self) -> String {
        format!("{}x{}", self.0.name(), self.1.name())
    }
    fn base(&self) -> Self::Key {
        (self.0.base(), self.1.base())
    }
    fn neighbors(&self, (a, b): &Self::Key) -> Vec<Self::Key> {
        let ca: Vec<_> = std::iter::once(a.clone()).chain(self.0.neighbors(a)).collect();
        let cb: Vec<_> = std::iter::once(b.clone()).chain(self.1.neighbors(b)).collect();
        let mut out = Vec::with_capacity(ca.len() * cb.len() - 1);
        for x in &ca {
            for y in &cb {
                if x != a || y != b {
                    out.push((x.clone(), y.clone()));
                }
            }
        }
        out
    }
    fn label(&self, (a, b): &Self::Key) -> String {
        format!("({},{})", self.0.label(a), self.1.label(b))
    }
}

/// Binary tree times the two-way path.
pub fn tree_times_path() -> StrongProduct<BinaryTree, TwoWayPath> {
    StrongProduct(BinaryTree, TwoWayPath)
}

/// Names accepted by [`named_window`].
pub const SOURCE_NAMES: &[&str] = &[
    "grid2",
    "grid3",
    "regular_tree",
    "binary_tree",
    "two_way_path",
    "tree_times_path",
    "grid2_diag",
    "grid2_apex",
    "grid2_long_edge",
];

/// Ball around the base point of a built-in source. `param` is the degree of
/// `regular_tree` (default 3), the edge length of `grid2_long_edge` (default
/// 4) and the apex reach of `grid2_apex` (default `radius`).
///
/// For `grid2_apex` the window is the ball of radius 1 around the apex,
/// that is the grid diamond of radius `reach` plus the apex; balls around a
/// grid cell would leak past the reach through the apex.
pub fn named_window(name: &str, param: Option<usize>, radius: usize, cap: usize) -> Result<Window> {
    match name {
        "grid2" => Grid2.ball(radius, cap),
        "grid3" => Grid3.ball(radius, cap),
        "regular_tree" => RegularTree { degree: param.unwrap_or(3) }.ball(radius, cap),
        "binary_tree" => BinaryTree.ball(radius, cap),
        "two_way_path" => TwoWayPath.ball(radius, cap),
        "tree_times_path" => tree_times_path().ball(radius, cap),
        "grid2_diag" => Grid2Diag.ball(radius, cap),
        "grid2_apex" => Grid2Apex { reach: param.unwrap_or(radius) as i64 }.apex_window(cap),
        "grid2_long_edge" => Grid2LongEdge { length: param.unwrap_or(4) as i64 }.ball(radius, cap),
        other => Err(Error::Infeasible(format!(
            "unknown source `{other}` (expected one of {})",
            SOURCE_NAMES.join(", ")
        ))),
    }
}

/// Parameters of [`tree_sum_planar`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TreeSumParams {
    pub seed: u64,
    pub pieces: usize,
    pub piece_size: usize,
    pub small_fraction: f64,
    pub max_adhesion: usize,
}

/// Vertices per small piece, at most.
const SMALL_PIECE_MAX: usize = 7;

/// Random connected graph glued from planar and small pieces along a tree,
/// together with the decomposition that witnesses the gluing.
///
/// Planar pieces are sparsified stacked triangulations on `piece_size`
/// vertices; small pieces are dense random graphs on at most 7 vertices and
/// need not be planar. Each piece after the first is glued to a uniformly
/// random earlier piece along a set of at most `max_adhesion` vertices that
/// is a clique in both pieces, so every torso equals its piece.
pub fn tree_sum_planar(p: TreeSumParams) -> Result<(Graph, TreeDecomposition)> {
    if p.pieces == 0 {
        return Err(Error::Infeasible("at least one piece is needed".into()));
    }
    if p.piece_size == 0 {
        return Err(Error::Infeasible("piece_size must be positive".into()));
    }
    if !(0.0..=1.0).contains(&p.small_fraction) {
        return Err(Error::Infeasible("small_fraction must lie in [0, 1]".into()));
    }
    if p.pieces > 1 && p.max_adhesion == 0 {
        return Err(Error::Infeasible("connected gluing needs max_adhesion >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let mut g = Graph::new(0);
    let mut bags: Vec<Vec<usize>> = Vec::new();
    let mut kinds = Vec::new();
    let mut tree_edges = Vec::new();
    for piece in 0..p.pieces {
        let small = rng.gen_bool(p.small_fraction);
        let local = if small {
            let size = rng.gen_range(1..=p.piece_size.min(SMALL_PIECE_MAX));
            random_dense_piece(size, &mut rng)
        } else {
            random_planar_piece(p.piece_size, &mut rng)
        };
        // local vertex -> global vertex
        let mut place = vec![usize::MAX; local.n()];
        if piece > 0 {
            let parent = rng.gen_range(0..piece);
            let (host_graph, host_back) = g.induced_subgraph(&bags[parent]);
            let mut size = rng.gen_range(1..=p.max_adhesion);
            let (host_clique, own_clique) = loop {
                let a = random_clique(&host_graph, size, &mut rng);
                let b = random_clique(&local, size, &mut rng);
                if let (Some(a), Some(b)) = (a, b) {
                    break (a, b);
                }
                size -= 1;
            };
            for (&x, &h) in own_clique.iter().zip(&host_clique) {
                place[x] = host_back[h];
            }
            tree_edges.push((parent, piece));
        }
        for slot in place.iter_mut().filter(|s| **s == usize::MAX) {
            *slot = g.add_vertex();
        }
        for (u, v) in local.edges() {
            g.add_edge(place[u], place[v])?;
        }
        let mut bag = place;
        bag.sort_unstable();
        bags.push(bag);
        kinds.push(if small { BagType::Small } else { BagType::Planar });
    }
    for (v, label) in (0..g.n()).map(|v| (v, format!("v{v}"))) {
        g.set_label(v, label);
    }
    let tree = Graph::from_edges(p.pieces, tree_edges)?;
    let td = TreeDecomposition::new(tree, bags, kinds)?;
    Ok((g, td))
}

/// Stacked triangulation on `n` vertices with some non-bridge edges removed.
fn random_planar_piece(n: usize, rng: &mut ChaCha8Rng) -> Graph {
    if n <= 3 {
        return crate::graph::families::complete(n);
    }
    let mut g = crate::graph::families::complete(3);
    let mut faces = vec![[0, 1, 2]];
    // the outer face is [0, 1, 2] as well; only inner faces are split
    for v in 3..n {
        g.add_vertex();
        let f = rng.gen_range(0..faces.len());
        let [a, b, c] = faces.swap_remove(f);
        for x in [a, b, c] {
            g.add_edge(v, x).expect("fresh vertex");
        }
        faces.extend([[a, b, v], [b, c, v], [a, c, v]]);
    }
    let mut edges = g.edge_list();
    edges.shuffle(rng);
    for (u, v) in edges {
        if rng.gen_bool(0.35) {
            g.remove_edge(u, v);
            if !g.is_connected() {
                g.add_edge(u, v).expect("restoring");
            }
        }
    }
    g
}

/// Random spanning tree plus every other pair with probability 0.6.
fn random_dense_piece(n: usize, rng: &mut ChaCha8Rng) -> Graph {
    let mut g = Graph::new(n);
    for v in 1..n {
        let u = rng.gen_range(0..v);
        g.add_edge(u, v).expect("in range");
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(0.6) {
                g.add_edge(u, v).expect("in range");
            }
        }
    }
    g
}

/// A uniformly chosen clique of the given size, if any.
fn random_clique(g: &Graph, size: usize, rng: &mut ChaCha8Rng) -> Option<Vec<usize>> {
    let mut found = Vec::new();
    let mut current = Vec::new();
    fn extend(g: &Graph, size: usize, start: usize, current: &mut Vec<usize>, found: &mut Vec<Vec<usize>>) {
        if current.len() == size {
            found.push(current.clone());
            return;
        }
        let candidates: Vec<usize> = match current.first() {
            None => (start..g.n()).collect(),
            Some(&first) => g.neighbors(first).iter().copied().filter(|&w| w >= start).collect(),
        };
        for w in candidates {
            if current.iter().all(|&c| g.has_edge(c, w)) {
                current.push(w);
                extend(g, size, w + 1, current, found);
                current.pop();
            }
        }
    }
    if size == 0 {
        return None;
    }
    extend(g, size, 0, &mut current, &mut found);
    found.choose(rng).cloned()
}
