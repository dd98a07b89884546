use crate::error::Result;
use crate::structures::{Graph, GraphKind};

use super::mreach::MatchedReachInstance;

/// Undirected graph with a self-loop at `s`: an extra layer matched to the
/// last one except at `t`. Closed sets containing `s` have size `k` iff
/// `t` is reachable from `s`, `k+1` otherwise.
pub fn reduce_reach_aa(inst: &MatchedReachInstance) -> Result<(Graph, usize)> {
    inst.validate()?;
    let (n, k) = (inst.n, inst.k);
    let mut edges = inst.layer_edges();
    for v in (0..n).filter(|&v| v != inst.t) {
        edges.push((inst.index(k - 1, v), inst.index(k, v)));
    }
    edges.push((inst.index(0, inst.s), inst.index(0, inst.s)));
    Ok((Graph::from_edges(GraphKind::Undirected, n * (k + 1), &edges), k))
}

/// Basic graph with triangles hanging at `s` and at `t`; parameter `k+4`.
pub fn reduce_reach_aaa(inst: &MatchedReachInstance) -> Result<(Graph, usize)> {
    inst.validate()?;
    let (n, k) = (inst.n, inst.k);
    let mut g = Graph::from_edges(GraphKind::Basic, n * k, &inst.layer_edges());
    for apex in [inst.index(0, inst.s), inst.index(k - 1, inst.t)] {
        let a = g.add_vertex();
        let b = g.add_vertex();
        g.add_edge(apex, a);
        g.add_edge(apex, b);
        g.add_edge(a, b);
    }
    Ok((g, k + 4))
}

/// Basic graph with a hub joined to every path end other than `s` and
/// `t`, so that all paths except an `s`–`t` path merge into one component.
///
/// With a single layer no vertex has degree 1; the hub then joins every
/// vertex except `s` when `s = t`, and every vertex otherwise.
pub fn reduce_reach_eaa(inst: &MatchedReachInstance) -> Result<(Graph, usize)> {
    inst.validate()?;
    let (n, k) = (inst.n, inst.k);
    let mut g = Graph::from_edges(GraphKind::Basic, n * k, &inst.layer_edges());
    let (s, t) = (inst.index(0, inst.s), inst.index(k - 1, inst.t));
    let targets: Vec<usize> = if k == 1 {
        (0..n).filter(|&v| !(inst.s == inst.t && v == s)).collect()
    } else {
        (0..n * k).filter(|&v| g.degree(v) == 1 && v != s && v != t).collect()
    };
    let hub = g.add_vertex();
    for v in targets {
        g.add_edge(hub, v);
    }
    Ok((g, k))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn identity(t: usize) -> MatchedReachInstance {
        MatchedReachInstance::new(2, 2, vec![vec![0, 1]], 0, t).unwrap()
    }

    #[test]
    fn aa_construction() {
        let (g, k) = reduce_reach_aa(&identity(0)).unwrap();
        assert_eq!((g.kind(), g.order(), k), (GraphKind::Undirected, 6, 2));
        assert!(g.has_edge(0, 0));
        assert!(!g.has_edge(2, 4) && g.has_edge(3, 5));

        let single = MatchedReachInstance::new(3, 1, vec![], 1, 2).unwrap();
        let (g, _) = reduce_reach_aa(&single).unwrap();
        assert_eq!(g.edges(), vec![(0, 3), (1, 1), (1, 4)]);
    }

    #[test]
    fn aaa_construction() {
        let (g, k) = reduce_reach_aaa(&identity(1)).unwrap();
        assert_eq!((g.kind(), g.order(), k), (GraphKind::Basic, 8, 6));
        assert_eq!(g.degree(0), 3);
        assert_eq!(g.degree(3), 3);
        assert!(g.vertices().all(|v| !g.has_edge(v, v)));
    }

    #[test]
    fn eaa_hub_degree() {
        let inst = MatchedReachInstance::new(4, 3, vec![vec![1, 0, 3, 2], vec![2, 3, 0, 1]], 0, 3).unwrap();
        let (g, k) = reduce_reach_eaa(&inst).unwrap();
        assert_eq!(k, 3);
        let hub = g.capacity() - 1;
        assert_eq!(g.degree(hub), 2 * 4 - 2);
    }
}
