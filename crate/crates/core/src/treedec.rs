//! Tree-decompositions: validation, adhesion sets, torsos, edge-separations
//! and tightness.

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{is_planar, Graph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BagType {
    Planar,
    Small,
}

impl BagType {
    /// Default flag for a bag: small iff it has at most `threshold` vertices.
    pub fn by_size(size: usize, threshold: usize) -> Self {
        if size <= threshold {
            BagType::Small
        } else {
            BagType::Planar
        }
    }
}

/// Tree of bags over a host graph. Node `t` of `tree` carries `bags[t]`
/// (sorted, deduplicated) and the flag `bag_type[t]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeDecomposition {
    pub tree: Graph,
    pub bags: Vec<Vec<usize>>,
    pub bag_type: Vec<BagType>,
}

#[derive(Serialize, Deserialize)]
struct RawNode {
    id: usize,
    bag: Vec<usize>,
    #[serde(rename = "type", default, skip_serializing_if = "Option::is_none")]
    kind: Option<BagType>,
}

#[derive(Serialize, Deserialize)]
struct RawDecomposition {
    nodes: Vec<RawNode>,
    tree_edges: Vec<[usize; 2]>,
}

impl TreeDecomposition {
    pub fn new(tree: Graph, bags: Vec<Vec<usize>>, bag_type: Vec<BagType>) -> Result<Self> {
        if bags.len() != tree.n() || bag_type.len() != tree.n() {
            return Err(Error::InvalidDecomposition(format!(
                "{} tree nodes, {} bags, {} bag types",
                tree.n(),
                bags.len(),
                bag_type.len()
            )));
        }
        let bags = bags
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b.dedup();
                b
            })
            .collect();
        Ok(TreeDecomposition { tree, bags, bag_type })
    }

    /// The whole graph in one bag.
    pub fn single_bag(g: &Graph, kind: BagType) -> Self {
        TreeDecomposition {
            tree: Graph::new(1),
            bags: vec![(0..g.n()).collect()],
            bag_type: vec![kind],
        }
    }

    pub fn len(&self) -> usize {
        self.bags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bags.is_empty()
    }

    pub fn bag(&self, t: usize) -> Result<&[usize]> {
        self.bags.get(t).map(Vec::as_slice).ok_or(Error::InvalidNode(t))
    }

    /// Tree edges `(s, t)` with `s < t`, in lexicographic order.
    pub fn tree_edges(&self) -> Vec<(usize, usize)> {
        self.tree.edge_list()
    }

    pub fn adhesion_set(&self, s: usize, t: usize) -> Result<Vec<usize>> {
        self.bag(s)?;
        self.bag(t)?;
        if !self.tree.has_edge(s, t) {
            return Err(Error::NotATreeEdge(s, t));
        }
        Ok(intersect(&self.bags[s], &self.bags[t]))
    }

    pub fn adhesion_sets(&self) -> BTreeMap<(usize, usize), Vec<usize>> {
        self.tree
            .edges()
            .map(|(s, t)| ((s, t), intersect(&self.bags[s], &self.bags[t])))
            .collect()
    }

    /// `max |V_t| - 1`.
    pub fn width(&self) -> Result<usize> {
        self.bags
            .iter()
            .map(Vec::len)
            .max()
            .map(|w| w.saturating_sub(1))
            .ok_or_else(|| Error::InvalidDecomposition("no nodes".into()))
    }

    /// Largest adhesion set; 0 when the tree has no edges.
    pub fn adhesion(&self) -> usize {
        self.adhesion_sets().values().map(Vec::len).max().unwrap_or(0)
    }

    /// For every vertex of a host on `n` vertices, the nodes whose bag holds it.
    pub fn occurrences(&self, n: usize) -> Vec<Vec<usize>> {
        let mut occ = vec![Vec::new(); n];
        for (t, bag) in self.bags.iter().enumerate() {
            for &v in bag {
                if v < n {
                    occ[v].push(t);
                }
            }
        }
        occ
    }

    /// `G[V_t]` plus a clique on every adhesion set at `t`. Vertex `i` of the
    /// result is `bags[t][i]` in `g`.
    pub fn torso(&self, g: &Graph, t: usize) -> Result<(Graph, Vec<usize>)> {
        let bag = self.bag(t)?;
        for &v in bag {
            g.check_vertex(v)?;
        }
        let (mut torso, back) = g.induced_subgraph(bag);
        for &s in self.tree.neighbors(t) {
            let adh = intersect(bag, &self.bags[s]);
            let local: Vec<usize> = adh
                .iter()
                .map(|v| bag.binary_search(v).expect("adhesion lies in the bag"))
                .collect();
            for (i, &a) in local.iter().enumerate() {
                for &b in &local[i + 1..] {
                    torso.add_edge(a, b)?;
                }
            }
        }
        Ok((torso, back))
    }

    /// Separation `(Y, S, Z)` of the tree edge `t1 t2`: `S` is the adhesion
    /// set, `Y` (resp. `Z`) the vertices of bags on the `t1` (resp. `t2`) side
    /// outside `S`.
    pub fn edge_separation(&self, g: &Graph, t1: usize, t2: usize) -> Result<Separation> {
        let s = self.adhesion_set(t1, t2)?;
        let side = self.tree_side(t1, t2);
        let mut in_y = vec![false; g.n()];
        let mut in_z = vec![false; g.n()];
        for (t, bag) in self.bags.iter().enumerate() {
            let mark = if side[t] { &mut in_y } else { &mut in_z };
            for &v in bag {
                g.check_vertex(v)?;
                mark[v] = true;
            }
        }
        for &v in &s {
            in_y[v] = false;
            in_z[v] = false;
        }
        let y: Vec<usize> = (0..g.n()).filter(|&v| in_y[v]).collect();
        let z: Vec<usize> = (0..g.n()).filter(|&v| in_z[v]).collect();
        let sep = Separation { y, s, z };
        sep.check(g)?;
        Ok(sep)
    }

    /// `true` for nodes in the component of `T - t1t2` that contains `t1`.
    fn tree_side(&self, t1: usize, t2: usize) -> Vec<bool> {
        let mut seen = vec![false; self.len()];
        seen[t1] = true;
        let mut queue = VecDeque::from([t1]);
        while let Some(t) = queue.pop_front() {
            for &u in self.tree.neighbors(t) {
                if !seen[u] && !(t == t1 && u == t2) {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
        seen
    }

    pub fn validate(&self, g: &Graph) -> ValidationReport {
        validate(g, self)
    }

    /// Errors with the first problem found by [`validate`].
    pub fn check(&self, g: &Graph) -> Result<()> {
        let report = validate(g, self);
        match report.issues.first() {
            None => Ok(()),
            Some(Issue::NonPlanarTorso { node }) if report.issues.len() == 1 => {
                Err(Error::NonPlanarTorso(*node))
            }
            Some(Issue::EmptyAdhesion { s, t }) if report.issues.len() == 1 => {
                Err(Error::EmptyAdhesion(*s, *t))
            }
            Some(issue) => Err(Error::InvalidDecomposition(issue.to_string())),
        }
    }

    /// Reads the JSON form. Nodes without a `type` get
    /// [`BagType::by_size`] with `small_threshold`.
    pub fn from_json(s: &str, small_threshold: usize) -> Result<Self> {
        let raw: RawDecomposition = serde_json::from_str(s)?;
        let count = raw.nodes.len();
        let mut bags = vec![None; count];
        let mut types = vec![BagType::Planar; count];
        for node in raw.nodes {
            if node.id >= count || bags[node.id].is_some() {
                return Err(Error::InvalidDecomposition(format!(
                    "node ids must be 0..{count} without repeats (saw {})",
                    node.id
                )));
            }
            let mut bag = node.bag;
            bag.sort_unstable();
            bag.dedup();
            types[node.id] = node.kind.unwrap_or_else(|| BagType::by_size(bag.len(), small_threshold));
            bags[node.id] = Some(bag);
        }
        let bags: Vec<Vec<usize>> = bags.into_iter().map(Option::unwrap).collect();
        let tree = Graph::from_edges(count, raw.tree_edges.iter().map(|e| (e[0], e[1])))
            .map_err(|e| Error::InvalidDecomposition(format!("tree edges: {e}")))?;
        TreeDecomposition::new(tree, bags, types)
    }

    pub fn to_json(&self) -> String {
        let raw = RawDecomposition {
            nodes: self
                .bags
                .iter()
                .zip(&self.bag_type)
                .enumerate()
                .map(|(id, (bag, &kind))| RawNode {
                    id,
                    bag: bag.clone(),
                    kind: Some(kind),
                })
                .collect(),
            tree_edges: self.tree.edges().map(|(s, t)| [s, t]).collect(),
        };
        serde_json::to_string(&raw).expect("serializable")
    }
}

impl Serialize for TreeDecomposition {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let value: serde_json::Value =
            serde_json::from_str(&self.to_json()).map_err(serde::ser::Error::custom)?;
        value.serialize(serializer)
    }
}

/// Sorted intersection of two sorted lists.
pub(crate) fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// A partition `(Y, S, Z)` of the vertex set with no edge between `Y` and `Z`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Separation {
    pub y: Vec<usize>,
    pub s: Vec<usize>,
    pub z: Vec<usize>,
}

impl Separation {
    pub fn check(&self, g: &Graph) -> Result<()> {
        let mut side = vec![0u8; g.n()];
        for (mark, part) in [(1u8, &self.y), (2, &self.s), (3, &self.z)] {
            for &v in part {
                g.check_vertex(v)?;
                if side[v] != 0 {
                    return Err(Error::Verification(format!("vertex {v} lies in two parts")));
                }
                side[v] = mark;
            }
        }
        if let Some(v) = side.iter().position(|&s| s == 0) {
            return Err(Error::Verification(format!("vertex {v} lies in no part")));
        }
        for (u, v) in g.edges() {
            if side[u] ^ side[v] == 2 {
                return Err(Error::Verification(format!("edge {u}-{v} joins Y and Z")));
            }
        }
        Ok(())
    }

    /// Some component of `G[Y]` and some component of `G[Z]` both have
    /// neighbourhood exactly `S`.
    pub fn is_tight(&self, g: &Graph) -> bool {
        let side_ok = |part: &[usize]| {
            let mut inside = vec![false; g.n()];
            for &v in part {
                inside[v] = true;
            }
            let mut seen = vec![false; g.n()];
            let mut stamp = vec![usize::MAX; g.n()];
            for (c, &start) in part.iter().enumerate() {
                if seen[start] {
                    continue;
                }
                seen[start] = true;
                let mut stack = vec![start];
                let mut nbhd = 0;
                while let Some(v) = stack.pop() {
                    for &w in g.neighbors(v) {
                        if inside[w] {
                            if !seen[w] {
                                seen[w] = true;
                                stack.push(w);
                            }
                        } else if stamp[w] != c {
                            stamp[w] = c;
                            nbhd += 1;
                        }
                    }
                }
                // with no Y-Z edge the neighbourhood lies in S, so counting suffices
                if nbhd == self.s.len() {
                    return true;
                }
            }
            false
        };
        side_ok(&self.y) && side_ok(&self.z)
    }
}

pub fn is_tight(g: &Graph, sep: &Separation) -> bool {
    sep.is_tight(g)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "issue", rename_all = "snake_case")]
pub enum Issue {
    Shape { detail: String },
    VertexOutOfRange { node: usize, vertex: usize },
    /// First axiom: the vertex is in no bag.
    UncoveredVertex { vertex: usize },
    /// Second axiom: no bag holds both ends.
    UncoveredEdge { u: usize, v: usize },
    /// Third axiom: the nodes holding the vertex do not span a subtree.
    DisconnectedOccurrence { vertex: usize, nodes: Vec<usize> },
    EmptyAdhesion { s: usize, t: usize },
    NonPlanarTorso { node: usize },
}

impl std::fmt::Display for Issue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Issue::Shape { detail } => write!(f, "decomposition tree: {detail}"),
            Issue::VertexOutOfRange { node, vertex } => write!(f, "bag {node} holds unknown vertex {vertex}"),
            Issue::UncoveredVertex { vertex } => write!(f, "vertex {vertex} is in no bag"),
            Issue::UncoveredEdge { u, v } => write!(f, "edge {u}-{v} is in no bag"),
            Issue::DisconnectedOccurrence { vertex, nodes } => {
                write!(f, "bags holding {vertex} ({nodes:?}) are not connected in the tree")
            }
            Issue::EmptyAdhesion { s, t } => write!(f, "empty adhesion set on {s}-{t}"),
            Issue::NonPlanarTorso { node } => write!(f, "planar-type bag {node} has a non-planar torso"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub covers_vertices: bool,
    pub covers_edges: bool,
    pub subtree_property: bool,
    pub issues: Vec<Issue>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.issues.is_empty()
    }
}

pub fn validate(g: &Graph, td: &TreeDecomposition) -> ValidationReport {
    let mut issues = Vec::new();
    let n = g.n();
    if td.is_empty() {
        issues.push(Issue::Shape { detail: "no nodes".into() });
    } else if !td.tree.is_tree() {
        issues.push(Issue::Shape { detail: "not a tree".into() });
    }
    if td.bags.len() != td.tree.n() || td.bag_type.len() != td.tree.n() {
        issues.push(Issue::Shape { detail: "bag count differs from node count".into() });
        return ValidationReport { issues, ..Default::default() };
    }
    for (t, bag) in td.bags.iter().enumerate() {
        for &v in bag {
            if v >= n {
                issues.push(Issue::VertexOutOfRange { node: t, vertex: v });
            }
        }
    }
    if !issues.is_empty() {
        return ValidationReport { issues, ..Default::default() };
    }
    let occ = td.occurrences(n);
    let mut covers_vertices = true;
    for (v, nodes) in occ.iter().enumerate() {
        if nodes.is_empty() {
            covers_vertices = false;
            issues.push(Issue::UncoveredVertex { vertex: v });
        }
    }
    let mut covers_edges = true;
    for (u, v) in g.edges() {
        let hit = occ[u].iter().any(|&t| td.bags[t].binary_search(&v).is_ok());
        if !hit {
            covers_edges = false;
            issues.push(Issue::UncoveredEdge { u, v });
        }
    }
    // nodes holding v span a subtree iff they induce |nodes| - 1 tree edges
    let mut induced = vec![0usize; n];
    let connected = g.is_connected();
    for (s, t) in td.tree.edges() {
        let adh = intersect(&td.bags[s], &td.bags[t]);
        if adh.is_empty() && connected {
            issues.push(Issue::EmptyAdhesion { s, t });
        }
        for v in adh {
            induced[v] += 1;
        }
    }
    let mut subtree_property = true;
    if td.tree.is_tree() {
        for (v, nodes) in occ.iter().enumerate() {
            if !nodes.is_empty() && induced[v] + 1 != nodes.len() {
                subtree_property = false;
                issues.push(Issue::DisconnectedOccurrence { vertex: v, nodes: nodes.clone() });
            }
        }
    } else {
        subtree_property = false;
    }
    for t in 0..td.len() {
        if td.bag_type[t] == BagType::Planar {
            let (torso, _) = td.torso(g, t).expect("bags checked in range");
            if !is_planar(&torso) {
                issues.push(Issue::NonPlanarTorso { node: t });
            }
        }
    }
    ValidationReport {
        covers_vertices,
        covers_edges,
        subtree_property,
        issues,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::{complete, path, star};

    /// Triangles `{a,b,w}` and `{c,d,w}` with `a,b,c,d,w = 0,1,2,3,4`.
    fn two_triangles() -> (Graph, TreeDecomposition) {
        let g = Graph::from_edges(5, [(0, 1), (0, 4), (1, 4), (2, 3), (2, 4), (3, 4)]).unwrap();
        let td = TreeDecomposition::new(
            path(2),
            vec![vec![0, 1, 4], vec![2, 3, 4]],
            vec![BagType::Small; 2],
        )
        .unwrap();
        (g, td)
    }

    fn path_decomposition(n: usize) -> (Graph, TreeDecomposition) {
        let g = path(n);
        let bags = (1..n).map(|i| vec![i - 1, i]).collect();
        let td = TreeDecomposition::new(path(n - 1), bags, vec![BagType::Small; n - 1]).unwrap();
        (g, td)
    }

    #[test]
    fn one_bag() {
        let g = complete(4);
        let td = TreeDecomposition::single_bag(&g, BagType::Planar);
        assert!(td.validate(&g).is_valid());
        assert_eq!(td.adhesion(), 0);
        assert_eq!(td.width().unwrap(), 3);
        assert_eq!(td.torso(&g, 0).unwrap().0, g);
    }

    #[test]
    fn missing_vertex_is_reported() {
        let (g, mut td) = two_triangles();
        td.bags[0].retain(|&v| v != 1);
        let report = td.validate(&g);
        assert!(!report.covers_vertices);
        assert!(report.issues.contains(&Issue::UncoveredVertex { vertex: 1 }));
    }

    #[test]
    fn uncovered_edge_and_broken_subtree() {
        let (g, _) = path_decomposition(4);
        let td = TreeDecomposition::new(
            path(3),
            vec![vec![0, 1], vec![2, 3], vec![1, 2]],
            vec![BagType::Small; 3],
        )
        .unwrap();
        let report = td.validate(&g);
        assert!(report.issues.contains(&Issue::DisconnectedOccurrence { vertex: 1, nodes: vec![0, 2] }));
        let td = TreeDecomposition::new(path(2), vec![vec![0, 1, 2], vec![2, 3]], vec![BagType::Small; 2]).unwrap();
        assert!(td.validate(&g).is_valid());
        let td = TreeDecomposition::new(path(2), vec![vec![0, 1], vec![1, 3, 2]], vec![BagType::Small; 2]).unwrap();
        assert!(td.validate(&g).is_valid());
        let td = TreeDecomposition::new(path(2), vec![vec![0, 1, 3], vec![1, 2]], vec![BagType::Small; 2]).unwrap();
        assert!(!td.validate(&g).covers_edges);
    }

    #[test]
    fn adhesion_and_width() {
        let (_, td) = two_triangles();
        assert_eq!(td.adhesion(), 1);
        assert_eq!(td.width().unwrap(), 2);
        assert_eq!(td.adhesion_sets()[&(0, 1)], vec![4]);
        let (_, td) = path_decomposition(6);
        assert_eq!((td.adhesion(), td.width().unwrap()), (1, 1));
    }

    #[test]
    fn torsos() {
        let (g, td) = two_triangles();
        let (t, back) = td.torso(&g, 0).unwrap();
        assert_eq!(back, vec![0, 1, 4]);
        assert_eq!(t, g.induced_subgraph(&[0, 1, 4]).0);
        // path decomposition of C5 whose middle bag {1,3,4} meets its
        // neighbours in {1,4} and {1,3}
        let c5 = crate::graph::families::cycle(5);
        let td = TreeDecomposition::new(
            path(3),
            vec![vec![0, 1, 4], vec![1, 3, 4], vec![1, 2, 3]],
            vec![BagType::Small; 3],
        )
        .unwrap();
        assert!(td.validate(&c5).is_valid());
        let (t, back) = td.torso(&c5, 1).unwrap();
        assert_eq!(back, vec![1, 3, 4]);
        assert!(t.has_edge(0, 1) && t.has_edge(0, 2), "both adhesion pairs become edges");
        assert!(assert_torso_contains_induced(&c5, &td, 1));
        assert!(matches!(td.torso(&c5, 7), Err(Error::InvalidNode(7))));
    }

    fn assert_torso_contains_induced(g: &Graph, td: &TreeDecomposition, t: usize) -> bool {
        let (torso, back) = td.torso(g, t).unwrap();
        let (induced, _) = g.induced_subgraph(&back);
        let ok = induced.edges().all(|(a, b)| torso.has_edge(a, b));
        ok
    }

    #[test]
    fn separations() {
        let (g, td) = two_triangles();
        let sep = td.edge_separation(&g, 0, 1).unwrap();
        assert_eq!(sep, Separation { y: vec![0, 1], s: vec![4], z: vec![2, 3] });
        assert!(sep.is_tight(&g));
        assert!(matches!(td.edge_separation(&g, 0, 0), Err(Error::NotATreeEdge(0, 0))));
        // leaf with nothing beyond the adhesion set
        let g = path(2);
        let td = TreeDecomposition::new(path(2), vec![vec![0, 1], vec![1]], vec![BagType::Small; 2]).unwrap();
        let sep = td.edge_separation(&g, 0, 1).unwrap();
        assert!(sep.z.is_empty());
    }

    #[test]
    fn tightness() {
        let p3 = path(3);
        let sep = Separation { y: vec![0], s: vec![1], z: vec![2] };
        assert!(is_tight(&p3, &sep));
        let s = star(2);
        assert!(is_tight(&s, &Separation { y: vec![1], s: vec![0], z: vec![2] }));
        let g = Graph::from_edges(4, [(0, 1), (1, 2)]).unwrap();
        let sep = Separation { y: vec![0], s: vec![1, 3], z: vec![2] };
        sep.check(&g).unwrap();
        assert!(!is_tight(&g, &sep));
    }

    #[test]
    fn json_round_trip_and_threshold() {
        let (_, td) = two_triangles();
        let back = TreeDecomposition::from_json(&td.to_json(), 0).unwrap();
        assert_eq!(back, td);
        let text = r#"{"nodes":[{"id":1,"bag":[2,3,4]},{"id":0,"bag":[0,1,4],"type":"planar"}],"tree_edges":[[0,1]]}"#;
        let td = TreeDecomposition::from_json(text, 3).unwrap();
        assert_eq!(td.bag_type, vec![BagType::Planar, BagType::Small]);
        assert!(TreeDecomposition::from_json(r#"{"nodes":[{"id":3,"bag":[]}],"tree_edges":[]}"#, 3).is_err());
    }

    #[test]
    fn nonplanar_torso_flagged() {
        let g = complete(5);
        let td = TreeDecomposition::single_bag(&g, BagType::Planar);
        assert!(matches!(td.check(&g), Err(Error::NonPlanarTorso(0))));
        let td = TreeDecomposition::single_bag(&g, BagType::Small);
        td.check(&g).unwrap();
    }
}
