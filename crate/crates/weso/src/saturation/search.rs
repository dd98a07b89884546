use crate::error::{Error, Result};
use crate::structures::{Graph, GraphKind};
use crate::wsat::{exact_sat, exact_sat_min_true, Clause, Lit};

use super::pattern::{Arc, Color, PatternGraph};

pub(crate) fn require_basic(g: &Graph) -> Result<()> {
    if g.kind() != GraphKind::Basic {
        return Err(Error::GraphKind {
            expected: "basic",
            found: g.kind().name(),
        });
    }
    Ok(())
}

/// Colors `y` may take so that it witnesses a vertex of color `cx` across a
/// pair with edge flag `edge`, as a literal on `y` (`true` = black).
enum Need {
    Any,
    Lit(Lit),
    Nothing,
}

fn need(p: PatternGraph, edge: bool, cx: Color, y: usize) -> Need {
    let b = p.allows(edge, Arc(cx, Color::Black));
    let w = p.allows(edge, Arc(cx, Color::White));
    match (b, w) {
        (true, true) => Need::Any,
        (true, false) => Need::Lit(Lit::pos(y)),
        (false, true) => Need::Lit(Lit::neg(y)),
        (false, false) => Need::Nothing,
    }
}

/// Two clauses per active vertex `x` (variable `x` true = black): if `x`
/// is black some `y` offers a black-compatible witness, and likewise for
/// white.
pub fn saturation_cnf(p: PatternGraph, g: &Graph) -> Vec<Clause> {
    let vs: Vec<usize> = g.vertices().collect();
    let mut clauses = Vec::with_capacity(2 * vs.len());
    for &x in &vs {
        for cx in [Color::Black, Color::White] {
            let guard = if cx.is_black() { Lit::neg(x) } else { Lit::pos(x) };
            let mut clause = vec![guard];
            let mut satisfied = false;
            for &y in vs.iter().filter(|&&y| y != x) {
                match need(p, g.has_edge(x, y), cx, y) {
                    Need::Any => {
                        satisfied = true;
                        break;
                    }
                    Need::Lit(l) => clause.push(l),
                    Need::Nothing => {}
                }
            }
            if !satisfied {
                clause.sort_unstable();
                clause.dedup();
                clauses.push(clause);
            }
        }
    }
    clauses
}

/// Whether `g` is `P`-saturable at all.
pub fn decide_saturation_unweighted(p: PatternGraph, g: &Graph) -> Result<bool> {
    require_basic(g)?;
    Ok(exact_sat(g.capacity(), &saturation_cnf(p, g)).is_some())
}

/// A saturating coloring with at least `k` black active vertices.
pub(crate) fn search_coloring(p: PatternGraph, g: &Graph, k: usize) -> Option<Vec<bool>> {
    let counted: Vec<usize> = g.vertices().collect();
    if counted.len() < k {
        return None;
    }
    exact_sat_min_true(g.capacity(), &saturation_cnf(p, g), k, &counted)
}

/// Largest weight of a saturating coloring, `None` if there is none.
pub(crate) fn max_weight(p: PatternGraph, g: &Graph) -> Option<usize> {
    let best = search_coloring(p, g, 0)?;
    let mut lo = g.vertices().filter(|&v| best[v]).count();
    while search_coloring(p, g, lo + 1).is_some() {
        lo += 1;
    }
    Some(lo)
}

/// Caps every twin class at `max(k,3)+3` members.
///
/// Any saturation of weight at least `k` survives the cap: a removed
/// member's users switch to a kept member of the same color, and at least
/// `k` black members are kept whenever a black one is dropped. Conversely
/// a dropped member can copy a kept twin's color and witness.
pub(crate) fn twin_capped(g: &Graph, k: usize) -> Graph {
    let cap = k.max(3) + 3;
    let mut h = g.clone();
    for class in g.twin_classes() {
        if class.len() <= cap || !uniform_class(g, &class) {
            continue;
        }
        h.deactivate_all(&class[cap..]);
    }
    h
}

fn uniform_class(g: &Graph, class: &[usize]) -> bool {
    let inside = g.has_edge(class[0], class[1]);
    class.iter().enumerate().all(|(i, &u)| {
        class[i + 1..]
            .iter()
            .all(|&v| g.are_twins(u, v) && g.has_edge(u, v) == inside)
    })
}

/// Exact decision on the twin-capped kernel.
pub(crate) fn brute_force(p: PatternGraph, g: &Graph, k: usize) -> bool {
    search_coloring(p, &twin_capped(g, k), k).is_some()
}

/// A coloring together with a witness for every active vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SaturationCertificate {
    /// `true` = black, indexed by vertex; inactive entries are ignored.
    pub coloring: Vec<bool>,
    pub witness: Vec<Option<usize>>,
}

impl SaturationCertificate {
    pub fn weight(&self, g: &Graph) -> usize {
        g.vertices().filter(|&v| self.coloring[v]).count()
    }

    /// Checks every witness; returns the weight.
    pub fn verify(&self, p: PatternGraph, g: &Graph) -> Result<usize> {
        for x in g.vertices() {
            let y = self.witness[x].ok_or_else(|| Error::Invalid(format!("vertex {x} has no witness")))?;
            if y == x || !g.is_active(y) {
                return Err(Error::Invalid(format!("vertex {x} has invalid witness {y}")));
            }
            let arc = Arc(Color::from_black(self.coloring[x]), Color::from_black(self.coloring[y]));
            if !p.allows(g.has_edge(x, y), arc) {
                return Err(Error::Invalid(format!("arc {} not allowed for {x} -> {y}", arc.code())));
            }
        }
        Ok(self.weight(g))
    }
}

/// Certificate of weight at least `k`, found by exact search on `g`.
pub fn find_certificate(p: PatternGraph, g: &Graph, k: usize) -> Result<Option<SaturationCertificate>> {
    require_basic(g)?;
    let Some(coloring) = search_coloring(p, g, k) else {
        return Ok(None);
    };
    let mut witness = vec![None; g.capacity()];
    for x in g.vertices() {
        witness[x] = g.vertices().find(|&y| {
            y != x
                && p.allows(
                    g.has_edge(x, y),
                    Arc(Color::from_black(coloring[x]), Color::from_black(coloring[y])),
                )
        });
    }
    Ok(Some(SaturationCertificate { coloring, witness }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn basic(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::from_edges(GraphKind::Basic, n, edges)
    }

    #[test]
    fn unweighted_examples() {
        let p4 = basic(4, &[(0, 1), (1, 2), (2, 3)]);
        let ww = PatternGraph::new(&[Arc::WW], &[]);
        assert!(decide_saturation_unweighted(ww, &p4).unwrap());
        assert!(!decide_saturation_unweighted(PatternGraph::default(), &p4).unwrap());
        let selfp = PatternGraph::new(&[Arc::WB], &[Arc::BW]);
        let edge_iso = basic(3, &[(0, 1)]);
        assert!(!decide_saturation_unweighted(selfp, &edge_iso).unwrap());
    }

    #[test]
    fn certificates_verify() {
        let c4 = basic(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let bb = PatternGraph::new(&[Arc::BB], &[]);
        let cert = find_certificate(bb, &c4, 4).unwrap().unwrap();
        assert_eq!(cert.verify(bb, &c4).unwrap(), 4);
        let mut bad = cert.clone();
        bad.coloring[0] = false;
        assert!(bad.verify(bb, &c4).is_err());
        assert!(find_certificate(bb, &basic(3, &[(0, 1)]), 0).unwrap().is_none());
    }

    #[test]
    fn max_weight_examples() {
        let pp = PatternGraph::new(&[Arc::BW, Arc::WB], &[]);
        let star = basic(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]);
        assert_eq!(max_weight(pp, &star), Some(4));
        assert_eq!(max_weight(pp, &basic(3, &[(0, 1)])), None);
    }

    #[test]
    fn capping_keeps_answers() {
        // Eight isolated vertices plus a triangle.
        let g = basic(11, &[(8, 9), (9, 10), (8, 10)]);
        let h = twin_capped(&g, 1);
        assert_eq!(h.order(), 6 + 3);
        for i in 0..=255u8 {
            let p = PatternGraph::from_index(i);
            for k in 0..3 {
                assert_eq!(brute_force(p, &g, k), search_coloring(p, &g, k).is_some(), "{p} k={k}");
            }
        }
    }
}
