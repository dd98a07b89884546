use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};

use super::structure::Structure;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GraphKind {
    Directed,
    Undirected,
    Basic,
}

impl GraphKind {
    pub fn name(self) -> &'static str {
        match self {
            GraphKind::Directed => "directed",
            GraphKind::Undirected => "undirected",
            GraphKind::Basic => "basic",
        }
    }
}

impl fmt::Display for GraphKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Adjacency-matrix graph over a fixed index range `0..n`.
///
/// Vertices can be deactivated instead of removed so that indices stay
/// stable across reduction rules. Inactive vertices carry no edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    kind: GraphKind,
    adj: Vec<Vec<bool>>,
    active: Vec<bool>,
}

impl Graph {
    pub fn new(kind: GraphKind, n: usize) -> Self {
        Graph {
            kind,
            adj: vec![vec![false; n]; n],
            active: vec![true; n],
        }
    }

    pub fn from_edges(kind: GraphKind, n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Graph::new(kind, n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn kind(&self) -> GraphKind {
        self.kind
    }

    /// Size of the index range, including inactive vertices.
    pub fn capacity(&self) -> usize {
        self.active.len()
    }

    /// Number of active vertices.
    pub fn order(&self) -> usize {
        self.active.iter().filter(|&&a| a).count()
    }

    pub fn is_active(&self, v: usize) -> bool {
        self.active[v]
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.active.len()).filter(move |&v| self.active[v])
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u][v]
    }

    /// Adds `u -> v`; for undirected kinds the reverse pair as well.
    ///
    /// # Panics
    /// On a loop in a basic graph or an inactive endpoint.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(self.active[u] && self.active[v], "edge touches inactive vertex");
        assert!(!(self.kind == GraphKind::Basic && u == v), "basic graphs have no loops");
        self.adj[u][v] = true;
        if self.kind != GraphKind::Directed {
            self.adj[v][u] = true;
        }
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u][v] = false;
        if self.kind != GraphKind::Directed {
            self.adj[v][u] = false;
        }
    }

    pub fn deactivate(&mut self, v: usize) {
        self.active[v] = false;
        for u in 0..self.adj.len() {
            self.adj[u][v] = false;
            self.adj[v][u] = false;
        }
    }

    pub fn deactivate_all(&mut self, vs: &[usize]) {
        for &v in vs {
            self.deactivate(v);
        }
    }

    /// Appends a fresh active vertex and returns its index.
    pub fn add_vertex(&mut self) -> usize {
        let n = self.adj.len();
        for row in &mut self.adj {
            row.push(false);
        }
        self.adj.push(vec![false; n + 1]);
        self.active.push(true);
        n
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.adj.len()).filter(move |&u| u != v && self.adj[v][u])
    }

    /// Number of neighbors other than `v` itself.
    pub fn degree(&self, v: usize) -> usize {
        self.neighbors(v).count()
    }

    pub fn edge_count(&self) -> usize {
        let mut m = 0;
        for u in self.vertices() {
            for v in self.vertices() {
                if u < v && self.adj[u][v] {
                    m += 1;
                }
            }
        }
        m
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in self.vertices() {
            for v in self.vertices() {
                let keep = match self.kind {
                    GraphKind::Directed => true,
                    _ => u <= v,
                };
                if keep && self.adj[u][v] {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn is_isolated(&self, v: usize) -> bool {
        self.active[v] && self.degree(v) == 0
    }

    pub fn is_universal(&self, v: usize) -> bool {
        self.active[v] && self.vertices().all(|u| u == v || self.adj[v][u])
    }

    pub fn isolated_vertices(&self) -> Vec<usize> {
        self.vertices().filter(|&v| self.is_isolated(v)).collect()
    }

    pub fn universal_vertices(&self) -> Vec<usize> {
        self.vertices().filter(|&v| self.is_universal(v)).collect()
    }

    pub fn is_edgeless(&self) -> bool {
        self.edge_count() == 0
    }

    pub fn is_complete(&self) -> bool {
        self.vertices()
            .all(|u| self.vertices().all(|v| u == v || self.adj[u][v]))
    }

    /// Connected components (ignoring direction), each sorted, ordered by
    /// smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.capacity();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in self.vertices() {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for u in 0..n {
                    if !seen[u] && (self.adj[v][u] || self.adj[u][v]) {
                        seen[u] = true;
                        comp.push(u);
                        queue.push_back(u);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// BFS spanning tree of the component containing `root`, scanning
    /// neighbors in index order. Returns `parent[v]` for reached vertices.
    pub fn bfs_tree(&self, root: usize) -> Vec<Option<usize>> {
        let n = self.capacity();
        let mut parent = vec![None; n];
        let mut seen = vec![false; n];
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for u in self.neighbors(v) {
                if !seen[u] {
                    seen[u] = true;
                    parent[u] = Some(v);
                    queue.push_back(u);
                }
            }
        }
        parent
    }

    /// Distances from `root` within its component.
    pub fn bfs_depths(&self, root: usize) -> Vec<Option<usize>> {
        let n = self.capacity();
        let mut depth = vec![None; n];
        depth[root] = Some(0);
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            let d = depth[v].unwrap_or(0);
            for u in self.neighbors(v) {
                if depth[u].is_none() {
                    depth[u] = Some(d + 1);
                    queue.push_back(u);
                }
            }
        }
        depth
    }

    /// Greedy maximal matching scanning edges in lexicographic order.
    pub fn greedy_matching(&self) -> Vec<(usize, usize)> {
        let mut used = vec![false; self.capacity()];
        let mut out = Vec::new();
        for u in self.vertices() {
            if used[u] {
                continue;
            }
            for v in self.neighbors(u) {
                if v > u && !used[v] {
                    used[u] = true;
                    used[v] = true;
                    out.push((u, v));
                    break;
                }
            }
        }
        out
    }

    /// `N(u) \ {u,v} == N(v) \ {u,v}` over active vertices.
    pub fn are_twins(&self, u: usize, v: usize) -> bool {
        self.vertices()
            .filter(|&w| w != u && w != v)
            .all(|w| self.adj[u][w] == self.adj[v][w])
    }

    /// Twin classes over active vertices, each sorted, ordered by
    /// representative (smallest member).
    pub fn twin_classes(&self) -> Vec<Vec<usize>> {
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for v in self.vertices() {
            let found = classes.iter().position(|c| self.are_twins(c[0], v));
            match found {
                Some(i) => classes[i].push(v),
                None => classes.push(vec![v]),
            }
        }
        classes
    }

    /// Induced subgraph keeping exactly `keep` active.
    pub fn induced(&self, keep: &[usize]) -> Graph {
        let mut g = self.clone();
        let mut mask = vec![false; self.capacity()];
        for &v in keep {
            mask[v] = true;
        }
        for v in 0..self.capacity() {
            if g.active[v] && !mask[v] {
                g.deactivate(v);
            }
        }
        g
    }

    /// Copy with active vertices renumbered to `0..order`, plus the map
    /// from new to old indices.
    pub fn compact(&self) -> (Graph, Vec<usize>) {
        let old: Vec<usize> = self.vertices().collect();
        let mut g = Graph::new(self.kind, old.len());
        for (i, &u) in old.iter().enumerate() {
            for (j, &v) in old.iter().enumerate() {
                g.adj[i][j] = self.adj[u][v];
            }
        }
        (g, old)
    }

    pub fn to_structure(&self) -> Structure {
        let (g, _) = self.compact();
        let mut s = Structure::new(g.capacity());
        let mut tuples = Vec::new();
        for u in 0..g.capacity() {
            for v in 0..g.capacity() {
                if g.adj[u][v] {
                    tuples.push(vec![u, v]);
                }
            }
        }
        s.add_relation("adj", 2, tuples).expect("adjacency tuples are in range");
        s
    }

    /// Renders active part in the line-based graph file format.
    pub fn to_text(&self) -> String {
        let (g, _) = self.compact();
        let kind = match g.kind {
            GraphKind::Directed => "digraph",
            GraphKind::Undirected => "undirected",
            GraphKind::Basic => "basic",
        };
        let mut out = format!("graph {kind} {}\n", g.capacity());
        for (u, v) in g.edges() {
            out.push_str(&format!("edge {u} {v}\n"));
        }
        out
    }
}

/// Reads a structure with a single binary relation as a graph, classifying
/// it as basic (symmetric, loop-free), undirected (symmetric) or directed.
pub fn graph_view(s: &Structure) -> Result<Graph> {
    let rels = s.relations();
    if rels.len() != 1 || rels[0].arity() != 2 {
        return Err(Error::Signature("graph view needs exactly one binary relation".into()));
    }
    let rel = &rels[0];
    let n = s.universe_size();
    let mut adj = vec![vec![false; n]; n];
    for t in rel.tuples() {
        adj[t[0]][t[1]] = true;
    }
    let symmetric = (0..n).all(|u| (0..n).all(|v| adj[u][v] == adj[v][u]));
    let loops = (0..n).any(|v| adj[v][v]);
    let kind = match (symmetric, loops) {
        (true, false) => GraphKind::Basic,
        (true, true) => GraphKind::Undirected,
        _ => GraphKind::Directed,
    };
    Ok(Graph {
        kind,
        adj,
        active: vec![true; n],
    })
}

/// Exchanges edges and non-edges between distinct active vertices.
pub fn complement_basic(g: &Graph) -> Result<Graph> {
    if g.kind != GraphKind::Basic {
        return Err(Error::GraphKind {
            expected: "basic",
            found: g.kind.name(),
        });
    }
    let mut h = g.clone();
    for u in g.vertices() {
        for v in g.vertices() {
            if u != v {
                h.adj[u][v] = !g.adj[u][v];
            }
        }
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::load_structure;

    fn p3() -> Graph {
        Graph::from_edges(GraphKind::Basic, 3, &[(0, 1), (1, 2)])
    }

    #[test]
    fn view_kinds() {
        let s = load_structure("graph basic 3\nedge 0 1\nedge 1 2\n").unwrap();
        assert_eq!(graph_view(&s).unwrap().kind(), GraphKind::Basic);
        let s = load_structure("graph undirected 2\nedge 0 0\nedge 0 1\n").unwrap();
        assert_eq!(graph_view(&s).unwrap().kind(), GraphKind::Undirected);
        let s = load_structure("graph digraph 2\nedge 0 1\n").unwrap();
        assert_eq!(graph_view(&s).unwrap().kind(), GraphKind::Directed);
        let s = load_structure("structure\nuniverse 2\nrelation adj 2\n0 0\nend\n").unwrap();
        assert_eq!(graph_view(&s).unwrap().kind(), GraphKind::Undirected);
    }

    #[test]
    fn view_rejects_non_graph_signature() {
        let s = load_structure("structure\nuniverse 2\nrelation p 1\n0\nend\n").unwrap();
        assert!(matches!(graph_view(&s), Err(Error::Signature(_))));
    }

    #[test]
    fn complement_examples() {
        let k3 = Graph::from_edges(GraphKind::Basic, 3, &[(0, 1), (1, 2), (0, 2)]);
        assert!(complement_basic(&k3).unwrap().is_edgeless());
        let e2 = Graph::new(GraphKind::Basic, 2);
        assert_eq!(complement_basic(&e2).unwrap().edges(), vec![(0, 1)]);
        assert_eq!(complement_basic(&p3()).unwrap().edges(), vec![(0, 2)]);
        assert_eq!(complement_basic(&complement_basic(&p3()).unwrap()).unwrap(), p3());
        let d = Graph::new(GraphKind::Directed, 2);
        assert!(complement_basic(&d).is_err());
    }

    #[test]
    fn complement_skips_inactive() {
        let mut g = p3();
        g.deactivate(2);
        let h = complement_basic(&g).unwrap();
        assert_eq!(h.edges(), vec![]);
        assert!(!h.is_active(2));
    }

    #[test]
    fn isolated_and_universal() {
        let g = Graph::from_edges(GraphKind::Basic, 4, &[(0, 1), (1, 2)]);
        assert_eq!(g.isolated_vertices(), vec![3]);
        assert_eq!(g.universal_vertices(), Vec::<usize>::new());
        let mut h = g.clone();
        h.deactivate(3);
        assert_eq!(h.universal_vertices(), vec![1]);
    }

    #[test]
    fn components_and_trees() {
        let g = Graph::from_edges(GraphKind::Basic, 5, &[(0, 2), (2, 4), (1, 3)]);
        assert_eq!(g.components(), vec![vec![0, 2, 4], vec![1, 3]]);
        let parent = g.bfs_tree(0);
        assert_eq!(parent[2], Some(0));
        assert_eq!(parent[4], Some(2));
        assert_eq!(parent[1], None);
        assert_eq!(g.greedy_matching(), vec![(0, 2), (1, 3)]);
    }

    #[test]
    fn twins_on_small_graphs() {
        let k23 = Graph::from_edges(GraphKind::Basic, 5, &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]);
        assert_eq!(k23.twin_classes(), vec![vec![0, 1], vec![2, 3, 4]]);
        let k3 = Graph::from_edges(GraphKind::Basic, 3, &[(0, 1), (1, 2), (0, 2)]);
        assert_eq!(k3.twin_classes(), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn compact_renumbers() {
        let mut g = Graph::from_edges(GraphKind::Basic, 4, &[(0, 3), (1, 3)]);
        g.deactivate(1);
        let (h, map) = g.compact();
        assert_eq!(map, vec![0, 2, 3]);
        assert_eq!(h.edges(), vec![(0, 2)]);
    }
}
