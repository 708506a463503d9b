//! Planarity testing with certificates.
//!
//! The test is the left-right (Brandes) algorithm. A positive answer comes
//! with a rotation system whose face count is checked against Euler's
//! formula; a negative answer comes with a subdivision of `K5` or `K3,3`
//! extracted by edge deletion and checked structurally. Neither certificate
//! is returned unchecked.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::Graph;

/// Cyclic order of neighbours around each vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RotationSystem {
    pub order: Vec<Vec<usize>>,
}

impl RotationSystem {
    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.order[v]
    }

    /// Faces as closed walks. The successor of dart `v -> w` is `w -> x`
    /// where `x` follows `v` in the rotation at `w`.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        let pos: HashMap<(usize, usize), usize> = self
            .order
            .iter()
            .enumerate()
            .flat_map(|(v, nb)| nb.iter().enumerate().map(move |(i, &w)| ((v, w), i)))
            .collect();
        let offsets: Vec<usize> = self
            .order
            .iter()
            .scan(0, |acc, nb| {
                let start = *acc;
                *acc += nb.len();
                Some(start)
            })
            .collect();
        let darts: usize = self.order.iter().map(Vec::len).sum();
        let mut used = vec![false; darts];
        let mut faces = Vec::new();
        for v in 0..self.order.len() {
            for i in 0..self.order[v].len() {
                if used[offsets[v] + i] {
                    continue;
                }
                let mut face = Vec::new();
                let (mut a, mut ai) = (v, i);
                while !used[offsets[a] + ai] {
                    used[offsets[a] + ai] = true;
                    face.push(a);
                    let b = self.order[a][ai];
                    let back = pos[&(b, a)];
                    let next = (back + 1) % self.order[b].len();
                    a = b;
                    ai = next;
                }
                faces.push(face);
            }
        }
        faces
    }

    /// Checks that the rotation lists permute the neighbourhoods of `g` and
    /// that the face count meets Euler's formula on every component.
    pub fn verify(&self, g: &Graph) -> Result<(), String> {
        if self.order.len() != g.n() {
            return Err(format!("rotation covers {} of {} vertices", self.order.len(), g.n()));
        }
        for v in 0..g.n() {
            let mut rot = self.order[v].clone();
            rot.sort_unstable();
            if rot != g.neighbors(v) {
                return Err(format!("rotation at {v} is not a permutation of its neighbours"));
            }
        }
        let (comp, count) = g.components();
        let mut nontrivial = vec![false; count];
        for v in 0..g.n() {
            if g.degree(v) > 0 {
                nontrivial[comp[v]] = true;
            }
        }
        let expected_vertices: usize =
            (0..g.n()).filter(|&v| nontrivial[comp[v]]).count();
        let c = nontrivial.iter().filter(|&&b| b).count();
        let faces = self.faces().len();
        // sum over non-trivial components of (E - V + 2)
        let expected = g.m() + 2 * c;
        if faces + expected_vertices != expected {
            return Err(format!(
                "rotation system has {faces} faces; a planar embedding needs {}",
                expected as isize - expected_vertices as isize
            ));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum KuratowskiKind {
    K5,
    K33,
}

/// Subdivision of `K5` or `K3,3` inside a graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KuratowskiWitness {
    pub kind: KuratowskiKind,
    pub branch_vertices: Vec<usize>,
    /// Paths between branch vertices, internally disjoint.
    pub paths: Vec<Vec<usize>>,
}

impl KuratowskiWitness {
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<_> = self
            .paths
            .iter()
            .flat_map(|p| p.windows(2).map(|w| (w[0].min(w[1]), w[0].max(w[1]))))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn verify(&self, g: &Graph) -> Result<(), String> {
        let branch = &self.branch_vertices;
        let (nb, np) = match self.kind {
            KuratowskiKind::K5 => (5, 10),
            KuratowskiKind::K33 => (6, 9),
        };
        if branch.len() != nb || self.paths.len() != np {
            return Err("wrong number of branch vertices or paths".into());
        }
        let index: HashMap<usize, usize> = branch.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        if index.len() != nb {
            return Err("repeated branch vertex".into());
        }
        let mut internal_seen = HashMap::new();
        let mut pairs = Vec::new();
        for (pi, p) in self.paths.iter().enumerate() {
            if p.len() < 2 {
                return Err(format!("path {pi} is too short"));
            }
            for w in p.windows(2) {
                if !g.has_edge(w[0], w[1]) {
                    return Err(format!("path {pi} uses the non-edge {}-{}", w[0], w[1]));
                }
            }
            let (a, b) = (p[0], p[p.len() - 1]);
            let (Some(&ia), Some(&ib)) = (index.get(&a), index.get(&b)) else {
                return Err(format!("path {pi} does not join two branch vertices"));
            };
            for &x in &p[1..p.len() - 1] {
                if index.contains_key(&x) {
                    return Err(format!("path {pi} passes through branch vertex {x}"));
                }
                if let Some(other) = internal_seen.insert(x, pi) {
                    return Err(format!("paths {other} and {pi} share vertex {x}"));
                }
            }
            pairs.push((ia.min(ib), ia.max(ib)));
        }
        pairs.sort_unstable();
        let mut expected: Vec<(usize, usize)> = match self.kind {
            KuratowskiKind::K5 => (0..5).flat_map(|i| (i + 1..5).map(move |j| (i, j))).collect(),
            KuratowskiKind::K33 => (0..3).flat_map(|i| (3..6).map(move |j| (i, j))).collect(),
        };
        expected.sort_unstable();
        if pairs != expected {
            return Err("paths do not form the pattern on the branch vertices".into());
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Planarity {
    Planar(RotationSystem),
    NonPlanar(KuratowskiWitness),
}

impl Planarity {
    pub fn is_planar(&self) -> bool {
        matches!(self, Planarity::Planar(_))
    }
}

/// Planarity decision without certificates.
pub fn is_planar(g: &Graph) -> bool {
    LrPlanarity::new(g).run().is_some()
}

/// Decides planarity and returns a verified certificate either way.
///
/// # Panics
/// If a produced certificate fails its own check, which indicates a bug in
/// this module rather than a property of the input.
pub fn planarity_check(g: &Graph) -> Planarity {
    match LrPlanarity::new(g).run() {
        Some(rot) => {
            if let Err(e) = rot.verify(g) {
                panic!("planar embedding failed verification: {e}");
            }
            Planarity::Planar(rot)
        }
        None => {
            let w = kuratowski_witness(g);
            if let Err(e) = w.verify(g) {
                panic!("Kuratowski witness failed verification: {e}");
            }
            Planarity::NonPlanar(w)
        }
    }
}

fn kuratowski_witness(g: &Graph) -> KuratowskiWitness {
    let mut edges = g.edge_list();
    let n = g.n();
    let nonplanar = |es: &[(usize, usize)]| {
        let h = Graph::from_edges(n, es.iter().copied()).expect("subgraph");
        !is_planar(&h)
    };
    // chunked deletion, finishing with single edges so the result is edge-minimal
    let mut chunk = (edges.len() / 8).max(1);
    let mut i = 0;
    while i < edges.len() {
        let end = (i + chunk).min(edges.len());
        let mut trial = edges[..i].to_vec();
        trial.extend_from_slice(&edges[end..]);
        if nonplanar(&trial) {
            edges = trial;
        } else if chunk > 1 {
            chunk = (chunk / 2).max(1);
        } else {
            i += 1;
        }
    }
    let h = Graph::from_edges(n, edges.iter().copied()).expect("subgraph");
    let branch: Vec<usize> = (0..n).filter(|&v| h.degree(v) >= 3).collect();
    let is_branch: Vec<bool> = (0..n).map(|v| h.degree(v) >= 3).collect();
    // every chain is traced from both ends; keep the copy whose first dart is smaller
    let mut paths = Vec::new();
    for &b in &branch {
        for &first in h.neighbors(b) {
            let mut path = vec![b, first];
            let (mut prev, mut cur) = (b, first);
            while !is_branch[cur] {
                let next = *h.neighbors(cur).iter().find(|&&x| x != prev).expect("degree 2");
                path.push(next);
                prev = cur;
                cur = next;
            }
            if (b, first) < (cur, path[path.len() - 2]) {
                paths.push(path);
            }
        }
    }
    let kind = if branch.len() == 5 { KuratowskiKind::K5 } else { KuratowskiKind::K33 };
    let branch_vertices = match kind {
        KuratowskiKind::K5 => branch,
        KuratowskiKind::K33 => {
            // two-colour the branch vertices through the paths
            let mut side: HashMap<usize, bool> = HashMap::new();
            side.insert(branch[0], false);
            let mut changed = true;
            while changed {
                changed = false;
                for p in &paths {
                    let (a, b) = (p[0], p[p.len() - 1]);
                    match (side.get(&a).copied(), side.get(&b).copied()) {
                        (Some(s), None) => {
                            side.insert(b, !s);
                            changed = true;
                        }
                        (None, Some(s)) => {
                            side.insert(a, !s);
                            changed = true;
                        }
                        _ => {}
                    }
                }
            }
            let mut left: Vec<usize> = branch.iter().copied().filter(|v| side.get(v) == Some(&false)).collect();
            let right: Vec<usize> = branch.iter().copied().filter(|v| side.get(v) == Some(&true)).collect();
            left.extend(right);
            left
        }
    };
    KuratowskiWitness {
        kind,
        branch_vertices,
        paths,
    }
}

const NONE: usize = usize::MAX;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
struct Interval {
    low: Option<usize>,
    high: Option<usize>,
}

impl Interval {
    fn is_empty(&self) -> bool {
        self.low.is_none() && self.high.is_none()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
struct ConflictPair {
    left: Interval,
    right: Interval,
}

impl ConflictPair {
    fn swap(&mut self) {
        std::mem::swap(&mut self.left, &mut self.right);
    }
}

/// Half-edge store with clockwise/counter-clockwise links per vertex.
struct Embedding {
    links: Vec<HashMap<usize, (usize, usize)>>,
    first: Vec<Option<usize>>,
}

impl Embedding {
    fn new(n: usize) -> Self {
        Embedding {
            links: vec![HashMap::new(); n],
            first: vec![None; n],
        }
    }

    fn add_cw(&mut self, start: usize, end: usize, reference: Option<usize>) {
        let Some(r) = reference else {
            self.links[start].insert(end, (end, end));
            self.first[start] = Some(end);
            return;
        };
        let links = &mut self.links[start];
        let cw_ref = links[&r].0;
        links.get_mut(&r).unwrap().0 = end;
        links.insert(end, (cw_ref, r));
        links.get_mut(&cw_ref).unwrap().1 = end;
    }

    fn add_ccw(&mut self, start: usize, end: usize, reference: Option<usize>) {
        let Some(r) = reference else {
            self.add_cw(start, end, None);
            return;
        };
        let ccw_ref = self.links[start][&r].1;
        self.add_cw(start, end, Some(ccw_ref));
        if self.first[start] == Some(r) {
            self.first[start] = Some(end);
        }
    }

    fn add_first(&mut self, start: usize, end: usize) {
        let r = self.first[start];
        self.add_ccw(start, end, r);
    }

    fn into_rotation(self) -> RotationSystem {
        let order = self
            .links
            .iter()
            .zip(&self.first)
            .map(|(links, first)| {
                let mut out = Vec::with_capacity(links.len());
                if let Some(f) = *first {
                    let mut cur = f;
                    loop {
                        out.push(cur);
                        cur = links[&cur].0;
                        if cur == f {
                            break;
                        }
                    }
                }
                out
            })
            .collect();
        RotationSystem { order }
    }
}

struct LrPlanarity<'a> {
    g: &'a Graph,
    height: Vec<usize>,
    parent_edge: Vec<Option<usize>>,
    src: Vec<usize>,
    dst: Vec<usize>,
    out: Vec<Vec<usize>>,
    lowpt: Vec<usize>,
    lowpt2: Vec<usize>,
    nesting: Vec<isize>,
    reference: Vec<Option<usize>>,
    side: Vec<i8>,
    stack: Vec<ConflictPair>,
    stack_bottom: Vec<Option<ConflictPair>>,
    lowpt_edge: Vec<usize>,
    roots: Vec<usize>,
}

impl<'a> LrPlanarity<'a> {
    fn new(g: &'a Graph) -> Self {
        let n = g.n();
        LrPlanarity {
            g,
            height: vec![NONE; n],
            parent_edge: vec![None; n],
            src: Vec::new(),
            dst: Vec::new(),
            out: vec![Vec::new(); n],
            lowpt: Vec::new(),
            lowpt2: Vec::new(),
            nesting: Vec::new(),
            reference: Vec::new(),
            side: Vec::new(),
            stack: Vec::new(),
            stack_bottom: Vec::new(),
            lowpt_edge: Vec::new(),
            roots: Vec::new(),
        }
    }

    fn run(mut self) -> Option<RotationSystem> {
        let n = self.g.n();
        if n > 2 && self.g.m() > 3 * n - 6 {
            return None;
        }
        // undirected edge ids alongside adjacency
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for (id, (u, v)) in self.g.edges().enumerate() {
            adj[u].push((v, id));
            adj[v].push((u, id));
        }
        for nb in &mut adj {
            nb.sort_unstable();
        }
        let m = self.g.m();
        let mut oriented = vec![NONE; m];
        let mut resume = vec![false; n];
        let mut ind = vec![0usize; n];
        for r in 0..n {
            if self.height[r] == NONE {
                self.height[r] = 0;
                self.roots.push(r);
                self.orient(r, &adj, &mut oriented, &mut resume, &mut ind);
            }
        }
        let e = self.src.len();
        self.reference = vec![None; e];
        self.side = vec![1; e];
        self.stack_bottom = vec![None; e];
        self.lowpt_edge = vec![NONE; e];
        let mut ordered = self.out.clone();
        for list in &mut ordered {
            list.sort_by_key(|&x| self.nesting[x]);
        }
        let roots = self.roots.clone();
        for &r in &roots {
            if !self.test(r, &ordered) {
                return None;
            }
        }
        for x in 0..e {
            let s = self.sign(x);
            self.nesting[x] *= isize::from(s);
        }
        let mut emb = Embedding::new(n);
        for v in 0..n {
            ordered[v] = self.out[v].clone();
            ordered[v].sort_by_key(|&x| self.nesting[x]);
            let mut prev = None;
            for &x in &ordered[v] {
                emb.add_cw(v, self.dst[x], prev);
                prev = Some(self.dst[x]);
            }
        }
        let mut left_ref = vec![NONE; n];
        let mut right_ref = vec![NONE; n];
        let mut ind = vec![0usize; n];
        for &r in &roots {
            let mut dfs = vec![r];
            while let Some(v) = dfs.pop() {
                while ind[v] < ordered[v].len() {
                    let ei = ordered[v][ind[v]];
                    ind[v] += 1;
                    let w = self.dst[ei];
                    if self.parent_edge[w] == Some(ei) {
                        emb.add_first(w, v);
                        left_ref[v] = w;
                        right_ref[v] = w;
                        dfs.push(v);
                        dfs.push(w);
                        break;
                    } else if self.side[ei] == 1 {
                        emb.add_cw(w, v, Some(right_ref[w]));
                    } else {
                        emb.add_ccw(w, v, Some(left_ref[w]));
                        left_ref[w] = v;
                    }
                }
            }
        }
        Some(emb.into_rotation())
    }

    fn new_edge(&mut self, v: usize, w: usize) -> usize {
        let id = self.src.len();
        self.src.push(v);
        self.dst.push(w);
        self.out[v].push(id);
        self.lowpt.push(self.height[v]);
        self.lowpt2.push(self.height[v]);
        self.nesting.push(0);
        id
    }

    fn orient(
        &mut self,
        root: usize,
        adj: &[Vec<(usize, usize)>],
        oriented: &mut [usize],
        resume: &mut [bool],
        ind: &mut [usize],
    ) {
        let mut dfs = vec![root];
        while let Some(v) = dfs.pop() {
            let e = self.parent_edge[v];
            while ind[v] < adj[v].len() {
                let (w, ue) = adj[v][ind[v]];
                if !std::mem::take(&mut resume[v]) {
                    if oriented[ue] != NONE {
                        ind[v] += 1;
                        continue;
                    }
                    let vw = self.new_edge(v, w);
                    oriented[ue] = vw;
                    if self.height[w] == NONE {
                        self.parent_edge[w] = Some(vw);
                        self.height[w] = self.height[v] + 1;
                        dfs.push(v);
                        dfs.push(w);
                        resume[v] = true;
                        break;
                    }
                    self.lowpt[vw] = self.height[w];
                }
                let vw = oriented[ue];
                self.nesting[vw] = 2 * self.lowpt[vw] as isize;
                if self.lowpt2[vw] < self.height[v] {
                    self.nesting[vw] += 1;
                }
                if let Some(e) = e {
                    if self.lowpt[vw] < self.lowpt[e] {
                        self.lowpt2[e] = self.lowpt[e].min(self.lowpt2[vw]);
                        self.lowpt[e] = self.lowpt[vw];
                    } else if self.lowpt[vw] > self.lowpt[e] {
                        self.lowpt2[e] = self.lowpt2[e].min(self.lowpt[vw]);
                    } else {
                        self.lowpt2[e] = self.lowpt2[e].min(self.lowpt2[vw]);
                    }
                }
                ind[v] += 1;
            }
        }
    }

    fn conflicting(&self, i: &Interval, b: usize) -> bool {
        match i.high {
            Some(h) => self.lowpt[h] > self.lowpt[b],
            None => false,
        }
    }

    fn lowest(&self, p: &ConflictPair) -> usize {
        if p.left.is_empty() {
            return self.lowpt[p.right.low.unwrap()];
        }
        if p.right.is_empty() {
            return self.lowpt[p.left.low.unwrap()];
        }
        self.lowpt[p.left.low.unwrap()].min(self.lowpt[p.right.low.unwrap()])
    }

    fn test(&mut self, root: usize, ordered: &[Vec<usize>]) -> bool {
        let n = self.g.n();
        let mut ind = vec![0usize; n];
        let mut skip = vec![false; self.src.len()];
        let mut dfs = vec![root];
        while let Some(v) = dfs.pop() {
            let e = self.parent_edge[v];
            let mut skip_final = false;
            while ind[v] < ordered[v].len() {
                let ei = ordered[v][ind[v]];
                let w = self.dst[ei];
                if !skip[ei] {
                    self.stack_bottom[ei] = self.stack.last().copied();
                    if self.parent_edge[w] == Some(ei) {
                        dfs.push(v);
                        dfs.push(w);
                        skip[ei] = true;
                        skip_final = true;
                        break;
                    }
                    self.lowpt_edge[ei] = ei;
                    self.stack.push(ConflictPair {
                        left: Interval::default(),
                        right: Interval {
                            low: Some(ei),
                            high: Some(ei),
                        },
                    });
                }
                if self.lowpt[ei] < self.height[v] {
                    let e = e.expect("a returning edge has a parent edge");
                    if ei == ordered[v][0] {
                        self.lowpt_edge[e] = self.lowpt_edge[ei];
                    } else if !self.add_constraints(ei, e) {
                        return false;
                    }
                }
                ind[v] += 1;
            }
            if !skip_final {
                if let Some(e) = e {
                    self.remove_back_edges(e);
                }
            }
        }
        true
    }

    fn add_constraints(&mut self, ei: usize, e: usize) -> bool {
        let mut p = ConflictPair::default();
        loop {
            let mut q = self.stack.pop().expect("non-empty conflict stack");
            if !q.left.is_empty() {
                q.swap();
            }
            if !q.left.is_empty() {
                return false;
            }
            if self.lowpt[q.right.low.unwrap()] > self.lowpt[e] {
                if p.right.is_empty() {
                    p.right = q.right;
                } else {
                    self.reference[p.right.low.unwrap()] = q.right.high;
                }
                p.right.low = q.right.low;
            } else {
                self.reference[q.right.low.unwrap()] = Some(self.lowpt_edge[e]);
            }
            if self.stack.last().copied() == self.stack_bottom[ei] {
                break;
            }
        }
        while let Some(top) = self.stack.last().copied() {
            if !(self.conflicting(&top.left, ei) || self.conflicting(&top.right, ei)) {
                break;
            }
            let mut q = self.stack.pop().unwrap();
            if self.conflicting(&q.right, ei) {
                q.swap();
            }
            if self.conflicting(&q.right, ei) {
                return false;
            }
            if let Some(low) = p.right.low {
                self.reference[low] = q.right.high;
            }
            if q.right.low.is_some() {
                p.right.low = q.right.low;
            }
            if p.left.is_empty() {
                p.left = q.left;
            } else {
                self.reference[p.left.low.unwrap()] = q.left.high;
            }
            p.left.low = q.left.low;
        }
        if !(p.left.is_empty() && p.right.is_empty()) {
            self.stack.push(p);
        }
        true
    }

    fn remove_back_edges(&mut self, e: usize) {
        let u = self.src[e];
        while let Some(top) = self.stack.last().copied() {
            if self.lowest(&top) != self.height[u] {
                break;
            }
            let p = self.stack.pop().unwrap();
            if let Some(l) = p.left.low {
                self.side[l] = -1;
            }
        }
        if let Some(mut p) = self.stack.pop() {
            while let Some(h) = p.left.high {
                if self.dst[h] != u {
                    break;
                }
                p.left.high = self.reference[h];
            }
            if p.left.high.is_none() {
                if let Some(l) = p.left.low {
                    self.reference[l] = p.right.low;
                    self.side[l] = -1;
                    p.left.low = None;
                }
            }
            while let Some(h) = p.right.high {
                if self.dst[h] != u {
                    break;
                }
                p.right.high = self.reference[h];
            }
            if p.right.high.is_none() {
                if let Some(r) = p.right.low {
                    self.reference[r] = p.left.low;
                    self.side[r] = -1;
                    p.right.low = None;
                }
            }
            self.stack.push(p);
        }
        if self.lowpt[e] < self.height[u] {
            let top = *self.stack.last().expect("return edges remain on the stack");
            let (hl, hr) = (top.left.high, top.right.high);
            self.reference[e] = match (hl, hr) {
                (Some(l), None) => Some(l),
                (Some(l), Some(r)) if self.lowpt[l] > self.lowpt[r] => Some(l),
                _ => hr,
            };
        }
    }

    fn sign(&mut self, e: usize) -> i8 {
        let mut chain = Vec::new();
        let mut cur = e;
        while let Some(r) = self.reference[cur] {
            chain.push(cur);
            cur = r;
        }
        for &x in chain.iter().rev() {
            let r = self.reference[x].take().unwrap();
            self.side[x] *= self.side[r];
        }
        self.side[e]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::{complete, complete_bipartite, cycle, grid, king, path};
    use crate::graph::ops::{attach_pendants, power, strong_product, subdivide};

    fn assert_planar(g: &Graph) {
        match planarity_check(g) {
            Planarity::Planar(rot) => rot.verify(g).unwrap(),
            Planarity::NonPlanar(w) => panic!("expected planar, got {w:?}"),
        }
    }

    fn assert_nonplanar(g: &Graph) -> KuratowskiWitness {
        match planarity_check(g) {
            Planarity::Planar(_) => panic!("expected non-planar"),
            Planarity::NonPlanar(w) => {
                w.verify(g).unwrap();
                w
            }
        }
    }

    #[test]
    fn small_cases() {
        assert_planar(&Graph::new(0));
        assert_planar(&Graph::new(3));
        assert_planar(&path(5));
        assert_planar(&cycle(6));
        assert_planar(&complete(4));
        assert_eq!(assert_nonplanar(&complete(5)).kind, KuratowskiKind::K5);
        assert_eq!(assert_nonplanar(&complete_bipartite(3, 3)).kind, KuratowskiKind::K33);
        assert_nonplanar(&complete(6));
    }

    #[test]
    fn subdivided_obstructions() {
        let w = assert_nonplanar(&subdivide(&complete(5), 2));
        assert_eq!(w.kind, KuratowskiKind::K5);
        let w = assert_nonplanar(&subdivide(&complete_bipartite(3, 3), 1));
        assert_eq!(w.kind, KuratowskiKind::K33);
    }

    #[test]
    fn grids_and_products() {
        assert_planar(&grid(7, 5));
        assert_planar(&king(2, 7));
        assert_planar(&attach_pendants(&grid(3, 3), 2).unwrap());
        // crossing diagonals in adjacent squares cannot all be uncrossed
        assert_nonplanar(&king(6, 6));
        assert_nonplanar(&power(&grid(4, 4), 2).unwrap());
        assert_nonplanar(&strong_product(&complete(3), &path(3)));
        assert_planar(&strong_product(&path(4), &path(2)));
    }

    #[test]
    fn petersen_is_nonplanar() {
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        let g = Graph::from_edges(10, outer.chain(spokes).chain(inner)).unwrap();
        assert_eq!(assert_nonplanar(&g).kind, KuratowskiKind::K33);
    }

    #[test]
    fn disconnected_mix() {
        let g = crate::graph::ops::disjoint_union(&[complete(4), cycle(5), path(1), grid(3, 3)]);
        assert_planar(&g);
        let g = crate::graph::ops::disjoint_union(&[complete(4), complete(5)]);
        assert_nonplanar(&g);
    }

    #[test]
    fn euler_check_rejects_bad_rotation() {
        // K4 with a rotation that embeds it on the torus
        let g = complete(4);
        let rot = RotationSystem {
            order: vec![vec![1, 2, 3], vec![0, 2, 3], vec![0, 1, 3], vec![0, 1, 2]],
        };
        assert!(rot.verify(&g).is_err());
        let bad = RotationSystem { order: vec![vec![1], vec![0], vec![], vec![]] };
        assert!(bad.verify(&g).is_err());
    }
}
