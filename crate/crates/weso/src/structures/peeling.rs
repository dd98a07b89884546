use crate::error::{Error, Result};

use super::graph::{Graph, GraphKind};

/// Alternating sequence `I₀, U₁, I₁, U₂, …` of isolated and universal
/// vertex sets.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Peeling {
    pub sets: Vec<Vec<usize>>,
}

impl Peeling {
    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// The isolated stages `I₀, I₁, …`.
    pub fn isolated_stages(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.sets.iter().step_by(2)
    }

    /// Total number of vertices removed in isolated stages.
    pub fn isolated_total(&self) -> usize {
        self.isolated_stages().map(Vec::len).sum()
    }

    /// The graph left after removing every set of the peeling.
    pub fn residual(&self, g: &Graph) -> Graph {
        let mut h = g.clone();
        for set in &self.sets {
            h.deactivate_all(set);
        }
        h
    }
}

fn require_basic(g: &Graph) -> Result<()> {
    if g.kind() != GraphKind::Basic {
        return Err(Error::GraphKind {
            expected: "basic",
            found: g.kind().name(),
        });
    }
    Ok(())
}

/// Keeps the smallest-index vertex of every twin class.
///
/// Returns the quotient (same index range, non-representatives
/// deactivated) and `rep[v]` for every active `v`; inactive indices map to
/// themselves.
pub fn twin_quotient(g: &Graph) -> Result<(Graph, Vec<usize>)> {
    require_basic(g)?;
    let mut rep: Vec<usize> = (0..g.capacity()).collect();
    let mut q = g.clone();
    for class in g.twin_classes() {
        for &v in &class {
            rep[v] = class[0];
        }
        q.deactivate_all(&class[1..]);
    }
    Ok((q, rep))
}

/// Maximal peeling by repeatedly removing all isolated vertices, then all
/// universal vertices.
pub fn peel_naive(g: &Graph) -> Result<Peeling> {
    require_basic(g)?;
    if let Some(&u) = g.universal_vertices().first() {
        if g.order() > 1 {
            return Err(Error::UniversalVertex(u));
        }
    }
    let mut h = g.clone();
    let mut sets = Vec::new();
    loop {
        let iso = h.isolated_vertices();
        if iso.is_empty() {
            break;
        }
        h.deactivate_all(&iso);
        sets.push(iso);
        let uni = h.universal_vertices();
        if uni.is_empty() {
            break;
        }
        h.deactivate_all(&uni);
        sets.push(uni);
    }
    Ok(Peeling { sets })
}

/// Identifies the peeling prefix `({i₀},{u₁},…,{i_l})` of a twin quotient
/// from degrees alone. Returns `None` unless all four structural tests hold:
/// a unique vertex of each degree `0..=l`, a unique vertex adjacent to `i_j`
/// but not `i_{j-1}`, `N(i_j) = {u₁..u_j}`, and `N(u_j) = V \ {i₀..i_{j-1}, u_j}`.
pub fn peel_by_degrees(q: &Graph, l: usize) -> Option<Peeling> {
    let vs: Vec<usize> = q.vertices().collect();
    let mut is = Vec::with_capacity(l + 1);
    for j in 0..=l {
        let mut of_degree = vs.iter().copied().filter(|&v| q.degree(v) == j);
        let i = of_degree.next()?;
        if of_degree.next().is_some() {
            return None;
        }
        is.push(i);
    }
    let mut us = Vec::with_capacity(l);
    for j in 1..=l {
        let mut cands = vs
            .iter()
            .copied()
            .filter(|&v| q.has_edge(v, is[j]) && !q.has_edge(v, is[j - 1]));
        let u = cands.next()?;
        if cands.next().is_some() {
            return None;
        }
        us.push(u);
    }
    for j in 0..=l {
        let mut nb: Vec<usize> = q.neighbors(is[j]).collect();
        nb.sort_unstable();
        let mut want = us[..j].to_vec();
        want.sort_unstable();
        if nb != want {
            return None;
        }
    }
    for j in 1..=l {
        let u = us[j - 1];
        let ok = vs.iter().all(|&v| {
            let expected = v != u && !is[..j].contains(&v);
            q.has_edge(u, v) == expected
        });
        if !ok {
            return None;
        }
    }
    let mut sets = Vec::with_capacity(2 * l + 1);
    for j in 0..=l {
        if j > 0 {
            sets.push(vec![us[j - 1]]);
        }
        sets.push(vec![is[j]]);
    }
    Some(Peeling { sets })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn basic(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::from_edges(GraphKind::Basic, n, edges)
    }

    #[test]
    fn quotient_examples() {
        let k23 = basic(5, &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]);
        let (q, rep) = twin_quotient(&k23).unwrap();
        assert_eq!(q.order(), 2);
        assert_eq!(q.edges(), vec![(0, 2)]);
        assert_eq!(rep, vec![0, 0, 2, 2, 2]);

        let k3 = basic(3, &[(0, 1), (1, 2), (0, 2)]);
        let (q, _) = twin_quotient(&k3).unwrap();
        assert_eq!(q.order(), 1);
        assert!(q.is_isolated(0));

        let p4 = basic(4, &[(0, 1), (1, 2), (2, 3)]);
        let (q, rep) = twin_quotient(&p4).unwrap();
        assert_eq!(q, p4);
        assert_eq!(rep, vec![0, 1, 2, 3]);
    }

    #[test]
    fn naive_examples() {
        let g = basic(3, &[(1, 2)]);
        let p = peel_naive(&g).unwrap();
        assert_eq!(p.sets, vec![vec![0], vec![1, 2]]);
        assert_eq!(p.residual(&g).order(), 0);

        let c4 = basic(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert!(peel_naive(&c4).unwrap().is_empty());

        let mut p3 = basic(3, &[(0, 1), (1, 2)]);
        assert!(matches!(peel_naive(&p3), Err(Error::UniversalVertex(1))));
        p3.deactivate(1);
        assert_eq!(peel_naive(&p3).unwrap().sets, vec![vec![0, 2]]);
    }

    #[test]
    fn degrees_examples() {
        // The adjacent twins 1, 2 collapse to an isolated vertex, so the
        // quotient has two degree-0 vertices.
        let g = basic(3, &[(1, 2)]);
        let (q, _) = twin_quotient(&g).unwrap();
        assert!(peel_by_degrees(&q, 0).is_none());
        let g = basic(5, &[(0, 1), (1, 2), (2, 3)]);
        let (q, _) = twin_quotient(&g).unwrap();
        assert_eq!(peel_by_degrees(&q, 0).unwrap().sets, vec![vec![4]]);
        let c4 = basic(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert!(peel_by_degrees(&c4, 0).is_none());
    }

    #[test]
    fn degrees_two_rounds() {
        // i0 isolated; u1 adjacent to all but i0; i1 adjacent only to u1;
        // remaining two vertices joined to u1 and to each other's partner.
        let g = basic(6, &[(1, 2), (1, 3), (1, 4), (1, 5), (3, 4), (4, 5), (5, 3)]);
        let naive = peel_naive(&g).unwrap();
        let fast = peel_by_degrees(&g, 1).unwrap();
        assert_eq!(fast.sets[..], naive.sets[..3]);
    }
}
