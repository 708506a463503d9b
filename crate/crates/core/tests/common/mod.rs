#![allow(dead_code)]

use std::collections::VecDeque;

use coarsegraph::fatminor::{verify_certificate, Clause, FatMinorCertificate};
use coarsegraph::Graph;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random tree on `n` vertices. Even seeds attach each vertex to a uniform
/// earlier vertex (shallow), odd seeds to one of the last few (deep).
pub fn random_tree(n: usize, seed: u64) -> Graph {
    let mut r = rng(seed);
    let mut g = Graph::new(n);
    for v in 1..n {
        let p = if seed.is_multiple_of(2) {
            r.gen_range(0..v)
        } else {
            v - 1 - r.gen_range(0..v.min(4))
        };
        g.add_edge(p, v).unwrap();
    }
    // scramble ids so that the tree is not rooted at 0 in id order
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut r);
    Graph::from_edges(n, g.edges().map(|(u, v)| (perm[u], perm[v]))).unwrap()
}

/// Erdos-Renyi graph.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Graph {
    let mut r = rng(seed);
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if r.gen_bool(p) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

/// Floyd-Warshall, `None` for unreachable pairs.
pub fn floyd_warshall(g: &Graph) -> Vec<Vec<Option<u32>>> {
    let n = g.n();
    let inf = u32::MAX / 4;
    let mut d = vec![vec![inf; n]; n];
    for (u, row) in d.iter_mut().enumerate() {
        row[u] = 0;
    }
    for (u, v) in g.edges() {
        d[u][v] = 1;
        d[v][u] = 1;
    }
    for w in 0..n {
        for u in 0..n {
            for v in 0..n {
                let via = d[u][w] + d[w][v];
                if via < d[u][v] {
                    d[u][v] = via;
                }
            }
        }
    }
    d.into_iter()
        .map(|row| row.into_iter().map(|x| (x < inf).then_some(x)).collect())
        .collect()
}

/// Plain BFS, written independently of the library.
pub fn bfs(g: &Graph, s: usize) -> Vec<Option<u32>> {
    let mut d = vec![None; g.n()];
    d[s] = Some(0);
    let mut q = VecDeque::from([s]);
    while let Some(u) = q.pop_front() {
        let du = d[u].unwrap();
        for &v in g.neighbors(u) {
            if d[v].is_none() {
                d[v] = Some(du + 1);
                q.push_back(v);
            }
        }
    }
    d
}

pub fn distance_to_set(g: &Graph, set: &[usize]) -> Vec<Option<u32>> {
    let mut d = vec![None; g.n()];
    let mut q = VecDeque::new();
    for &s in set {
        d[s] = Some(0);
        q.push_back(s);
    }
    while let Some(u) = q.pop_front() {
        let du = d[u].unwrap();
        for &v in g.neighbors(u) {
            if d[v].is_none() {
                d[v] = Some(du + 1);
                q.push_back(v);
            }
        }
    }
    d
}

pub const CLAUSES: [Clause; 6] = [
    Clause::Malformed,
    Clause::Connectivity,
    Clause::Separation,
    Clause::Routing,
    Clause::PathSeparation,
    Clause::PathBranchSeparation,
];

/// Breaks exactly the clause `clause` of a valid certificate, choosing the
/// place at random.
pub fn mutate(g: &Graph, base: &FatMinorCertificate, clause: Clause, seed: u64) -> FatMinorCertificate {
    let mut r = rng(seed);
    let mut cert = base.clone();
    let sets = cert.branch_sets.len();
    let keys: Vec<(usize, usize)> = cert.paths.keys().copied().collect();
    match clause {
        Clause::Malformed => match r.gen_range(0..4) {
            0 => {
                let i = r.gen_range(0..sets);
                cert.branch_sets[i].push(g.n() + r.gen_range(0..100));
            }
            1 => {
                let key = *keys.choose(&mut r).unwrap();
                cert.paths.remove(&key);
            }
            2 => {
                let i = r.gen_range(0..sets);
                cert.branch_sets[i].clear();
            }
            _ => {
                let key = *keys.choose(&mut r).unwrap();
                let p = cert.paths.get_mut(&key).unwrap();
                let at = r.gen_range(0..p.len());
                p[at] = g.n() + r.gen_range(0..100);
            }
        },
        Clause::Connectivity => {
            // a vertex at distance at least 2 from the set cannot join it
            let i = r.gen_range(0..sets);
            let d = distance_to_set(g, &cert.branch_sets[i]);
            let far: Vec<usize> = (0..g.n()).filter(|&v| d[v].is_some_and(|x| x >= 2)).collect();
            cert.branch_sets[i].push(*far.choose(&mut r).unwrap());
        }
        Clause::Separation => {
            let i = r.gen_range(0..sets);
            let j = (i + r.gen_range(1..sets)) % sets;
            let x = *cert.branch_sets[j].choose(&mut r).unwrap();
            cert.branch_sets[i].push(x);
        }
        Clause::Routing => {
            let key = *keys.choose(&mut r).unwrap();
            if r.gen_bool(0.5) {
                // stop one vertex short of the far branch set
                cert.paths.get_mut(&key).unwrap().pop();
            } else {
                // pass through a third branch set
                let w = (0..sets).filter(|&w| w != key.0 && w != key.1).collect::<Vec<_>>();
                let w = *w.choose(&mut r).unwrap();
                let x = *cert.branch_sets[w].choose(&mut r).unwrap();
                let p = cert.paths.get_mut(&key).unwrap();
                let at = 1 + r.gen_range(0..p.len() - 1);
                p.insert(at, x);
            }
        }
        Clause::PathSeparation => {
            let rep = verify_certificate(g, base);
            cert.k = rep.min_path_distance.expect("two disjoint edges") + 1 + r.gen_range(0..2);
        }
        Clause::PathBranchSeparation => {
            let rep = verify_certificate(g, base);
            cert.k = rep.min_path_branch_distance.expect("a non-incident pair") + 1 + r.gen_range(0..2);
        }
    }
    cert
}
