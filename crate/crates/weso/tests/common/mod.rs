#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::Rng;
use weso::structures::{Graph, GraphKind};

fn pair_index(n: usize) -> Vec<Vec<usize>> {
    let mut idx = vec![vec![0; n]; n];
    for v in 0..n {
        for u in 0..v {
            idx[u][v] = v * (v - 1) / 2 + u;
            idx[v][u] = idx[u][v];
        }
    }
    idx
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn canonical(n: usize, mask: u32, idx: &[Vec<usize>], perms: &[Vec<usize>]) -> u32 {
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| mask >> idx[u][v] & 1 == 1)
        .collect();
    perms
        .iter()
        .map(|p| edges.iter().fold(0u32, |m, &(u, v)| m | 1 << idx[p[u]][p[v]]))
        .min()
        .unwrap_or(0)
}

/// One basic graph per isomorphism class, for every order `1..=max_n`.
pub fn nonisomorphic_graphs(max_n: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    let mut prev: BTreeSet<u32> = BTreeSet::from([0]);
    for n in 1..=max_n {
        let idx = pair_index(n);
        let perms = permutations(n);
        let mut cur = BTreeSet::new();
        for &m in &prev {
            for nb in 0u32..1 << (n - 1) {
                let mut mask = m;
                for u in 0..n - 1 {
                    if nb >> u & 1 == 1 {
                        mask |= 1 << idx[u][n - 1];
                    }
                }
                cur.insert(canonical(n, mask, &idx, &perms));
            }
        }
        for &m in &cur {
            out.push(from_mask(n, m, &idx));
        }
        prev = cur;
    }
    out
}

fn from_mask(n: usize, mask: u32, idx: &[Vec<usize>]) -> Graph {
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| mask >> idx[u][v] & 1 == 1)
        .collect();
    Graph::from_edges(GraphKind::Basic, n, &edges)
}

pub fn random_graph(rng: &mut impl Rng, kind: GraphKind, n: usize, density: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        let start = match kind {
            GraphKind::Basic => u + 1,
            GraphKind::Undirected => u,
            GraphKind::Directed => 0,
        };
        for v in start..n {
            if rng.gen_bool(density) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(kind, n, &edges)
}

pub fn random_basic(rng: &mut impl Rng, n: usize) -> Graph {
    let density = rng.gen_range(0.0..=1.0);
    random_graph(rng, GraphKind::Basic, n, density)
}

/// Basic graph built by alternately adding isolated and dominating
/// vertices around a random core, so that it has a long peeling.
pub fn layered_basic(rng: &mut impl Rng, n: usize) -> Graph {
    let core = rng.gen_range(0..=n.min(4));
    let mut g = random_basic(rng, core);
    while g.capacity() < n {
        let v = g.add_vertex();
        if rng.gen_bool(0.5) {
            for u in 0..v {
                g.add_edge(u, v);
            }
        }
    }
    g
}
