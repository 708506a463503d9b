//! Finite simple undirected graphs on dense vertex ids `0..n`.
//!
//! Every other module builds on [`Graph`]. Vertices carry no data apart from
//! an optional label that records provenance (grid coordinates, the original
//! vertex of a blow-up copy, and so on).

pub mod families;
pub mod metric;
pub mod ops;
pub mod planarity;

use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write as _;

use serde::de::{self, MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub use metric::{
    all_pairs_distances, bfs_distances, canonical_shortest_path, multi_source_bfs, set_distance,
    subset_diameter, DistanceMatrix,
};
pub use ops::{
    attach_pendants, blowup, disjoint_union, pendant_power_embedding, power, strong_product,
    subdivide, PendantEmbedding,
};
pub use planarity::{
    is_planar, planarity_check, KuratowskiKind, KuratowskiWitness, Planarity, RotationSystem,
};

/// Simple undirected graph. Adjacency lists are kept sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
    labels: BTreeMap<usize, String>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            m: 0,
            labels: BTreeMap::new(),
        }
    }

    /// Builds a graph from an edge list. Duplicate edges collapse; loops and
    /// out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn add_vertex(&mut self) -> usize {
        self.adj.push(Vec::new());
        self.adj.len() - 1
    }

    /// Returns `Ok(true)` if the edge is new.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        match self.adj[u].binary_search(&v) {
            Ok(_) => Ok(false),
            Err(pos) => {
                self.adj[u].insert(pos, v);
                let pos = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(pos, u);
                self.m += 1;
                Ok(true)
            }
        }
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        if u >= self.n() || v >= self.n() {
            return false;
        }
        match self.adj[u].binary_search(&v) {
            Ok(pos) => {
                self.adj[u].remove(pos);
                let pos = self.adj[v].binary_search(&u).unwrap();
                self.adj[v].remove(pos);
                self.m -= 1;
                true
            }
            Err(_) => false,
        }
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n(),
            })
        }
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nb)| nb.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn edge_list(&self) -> Vec<(usize, usize)> {
        self.edges().collect()
    }

    /// Position of `(u, v)` in [`Graph::edge_list`].
    pub fn edge_index(&self) -> BTreeMap<(usize, usize), usize> {
        self.edges().enumerate().map(|(i, e)| (e, i)).collect()
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels.get(&v).map(String::as_str)
    }

    pub fn set_label(&mut self, v: usize, label: impl Into<String>) {
        self.labels.insert(v, label.into());
    }

    pub fn labels(&self) -> &BTreeMap<usize, String> {
        &self.labels
    }

    pub fn clear_labels(&mut self) {
        self.labels.clear();
    }

    /// Label if present, otherwise the vertex id.
    pub fn display_name(&self, v: usize) -> String {
        self.label(v).map_or_else(|| v.to_string(), str::to_owned)
    }

    /// Induced subgraph on `vertices` (deduplicated, renumbered in increasing
    /// order). Also returns the map from new ids to old ids.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> (Graph, Vec<usize>) {
        let mut keep: Vec<usize> = vertices.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let mut sub = Graph::new(keep.len());
        for (i, &v) in keep.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = index[w];
                if j != usize::MAX && j > i {
                    sub.adj[i].push(j);
                    sub.adj[j].push(i);
                    sub.m += 1;
                }
            }
            if let Some(l) = self.labels.get(&v) {
                sub.labels.insert(i, l.clone());
            }
        }
        for nb in &mut sub.adj {
            nb.sort_unstable();
        }
        (sub, keep)
    }

    /// Component id per vertex (ids in order of smallest member) and the count.
    pub fn components(&self) -> (Vec<usize>, usize) {
        let mut comp = vec![usize::MAX; self.n()];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for s in 0..self.n() {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = count;
            queue.push_back(s);
            while let Some(v) = queue.pop_front() {
                for &w in &self.adj[v] {
                    if comp[w] == usize::MAX {
                        comp[w] = count;
                        queue.push_back(w);
                    }
                }
            }
            count += 1;
        }
        (comp, count)
    }

    pub fn is_connected(&self) -> bool {
        self.components().1 <= 1
    }

    pub fn is_forest(&self) -> bool {
        let (_, c) = self.components();
        self.m + c == self.n()
    }

    pub fn is_tree(&self) -> bool {
        self.n() > 0 && self.is_connected() && self.m + 1 == self.n()
    }

    /// Graphviz rendering; labels become node labels.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph G {\n");
        for v in 0..self.n() {
            match self.label(v) {
                Some(l) => {
                    let _ = writeln!(out, "  {v} [label=\"{}\"];", l.replace('"', "\\\""));
                }
                None => {
                    let _ = writeln!(out, "  {v};");
                }
            }
        }
        for (u, v) in self.edges() {
            let _ = writeln!(out, "  {u} -- {v};");
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("graph serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

/// Labels keyed by vertex id, written in numeric order with string keys.
struct LabelMap<'a>(&'a BTreeMap<usize, String>);

impl Serialize for LabelMap<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in self.0 {
            map.serialize_entry(&k.to_string(), v)?;
        }
        map.end()
    }
}

#[derive(Serialize)]
struct GraphOut<'a> {
    n: usize,
    edges: Vec<[usize; 2]>,
    labels: LabelMap<'a>,
}

impl Serialize for Graph {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphOut {
            n: self.n(),
            edges: self.edges().map(|(u, v)| [u, v]).collect(),
            labels: LabelMap(&self.labels),
        }
        .serialize(s)
    }
}

struct LabelsIn(BTreeMap<usize, String>);

impl<'de> Deserialize<'de> for LabelsIn {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = LabelsIn;
            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("a map from vertex ids to label strings")
            }
            fn visit_map<A: MapAccess<'de>>(
                self,
                mut map: A,
            ) -> std::result::Result<LabelsIn, A::Error> {
                let mut out = BTreeMap::new();
                while let Some((k, v)) = map.next_entry::<String, String>()? {
                    let id: usize = k
                        .parse()
                        .map_err(|_| de::Error::custom(format!("bad vertex key {k:?}")))?;
                    out.insert(id, v);
                }
                Ok(LabelsIn(out))
            }
        }
        d.deserialize_map(V)
    }
}

#[derive(Deserialize)]
struct GraphIn {
    n: usize,
    edges: Vec<[usize; 2]>,
    #[serde(default)]
    labels: Option<LabelsIn>,
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = GraphIn::deserialize(d)?;
        let mut g = Graph::from_edges(raw.n, raw.edges.iter().map(|e| (e[0], e[1])))
            .map_err(de::Error::custom)?;
        if let Some(LabelsIn(labels)) = raw.labels {
            for (v, l) in labels {
                if v >= raw.n {
                    return Err(de::Error::custom(format!("label for missing vertex {v}")));
                }
                g.labels.insert(v, l);
            }
        }
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_loops_and_out_of_range() {
        assert!(matches!(Graph::from_edges(2, [(0, 0)]), Err(Error::SelfLoop(0))));
        assert!(matches!(
            Graph::from_edges(2, [(0, 2)]),
            Err(Error::VertexOutOfRange { vertex: 2, n: 2 })
        ));
    }

    #[test]
    fn duplicate_edges_collapse() {
        let g = Graph::from_edges(3, [(0, 1), (1, 0), (1, 2)]).unwrap();
        assert_eq!(g.m(), 2);
        assert_eq!(g.edge_list(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn json_is_canonical_and_round_trips() {
        let mut g = Graph::from_edges(12, [(11, 3), (0, 2), (2, 1)]).unwrap();
        g.set_label(10, "ten");
        g.set_label(2, "two");
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(
            s,
            r#"{"n":12,"edges":[[0,2],[1,2],[3,11]],"labels":{"2":"two","10":"ten"}}"#
        );
        let back: Graph = serde_json::from_str(&s).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn json_labels_optional() {
        let g = Graph::from_json(r#"{"n":2,"edges":[[1,0]]}"#).unwrap();
        assert_eq!(g.edge_list(), vec![(0, 1)]);
        assert!(Graph::from_json(r#"{"n":2,"edges":[[1,1]]}"#).is_err());
    }

    #[test]
    fn induced_subgraph_keeps_labels() {
        let mut g = families::path(4);
        g.set_label(2, "c");
        let (sub, back) = g.induced_subgraph(&[3, 2, 2]);
        assert_eq!(back, vec![2, 3]);
        assert_eq!(sub.edge_list(), vec![(0, 1)]);
        assert_eq!(sub.label(0), Some("c"));
    }

    #[test]
    fn forest_and_tree_predicates() {
        assert!(families::path(5).is_tree());
        assert!(!families::cycle(5).is_forest());
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert!(g.is_forest() && !g.is_tree());
        assert!(g.to_dot().contains("2 -- 3"));
    }
}
