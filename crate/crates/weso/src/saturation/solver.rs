use std::fmt;

use crate::error::{Error, Result};
use crate::structures::{peel_naive, Graph};

use super::pattern::{mirror_instance, normalize_pattern, Arc, PatternGraph};
use super::search::{brute_force, decide_saturation_unweighted, max_weight, require_basic};

/// The case of the dispatcher that decided an instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SatCase {
    EmptyPattern,
    TrivialEdgeless,
    TrivialClique,
    Slice,
    Pm,
    BlackLoopOnly,
    Case2,
    Case1,
    NoPrivateNeighbor,
    Case3,
    AllWhite,
    Both,
    LongPath,
    UniversalVertex,
    Pp,
    SelfPattern,
}

impl SatCase {
    pub fn name(self) -> &'static str {
        match self {
            SatCase::EmptyPattern => "empty-pattern",
            SatCase::TrivialEdgeless => "trivials-edgeless",
            SatCase::TrivialClique => "trivials-clique",
            SatCase::Slice => "slice",
            SatCase::Pm => "pm",
            SatCase::BlackLoopOnly => "black-loop-only",
            SatCase::Case2 => "case2",
            SatCase::Case1 => "case1",
            SatCase::NoPrivateNeighbor => "no-private-neighbor",
            SatCase::Case3 => "case3",
            SatCase::AllWhite => "all-white",
            SatCase::Both => "both",
            SatCase::LongPath => "long-path",
            SatCase::UniversalVertex => "universal-vertex",
            SatCase::Pp => "pp",
            SatCase::SelfPattern => "self",
        }
    }
}

impl fmt::Display for SatCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SaturationTrace {
    pub case: SatCase,
    /// Whether the instance was mirrored before the case applied.
    pub mirrored: bool,
    /// Whether the answer came from exhaustive search on a kernel.
    pub brute: bool,
}

impl fmt::Display for SaturationTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.case)?;
        if self.mirrored {
            write!(f, " (mirrored)")?;
        }
        if self.brute {
            write!(f, " (brute)")?;
        }
        Ok(())
    }
}

/// Does `g` admit a `P`-saturating coloring with at least `k` black vertices?
pub fn solve_saturation_ge(p: PatternGraph, g: &Graph, k: usize) -> Result<bool> {
    solve_saturation_traced(p, g, k).map(|(answer, _)| answer)
}

/// [`solve_saturation_ge`] together with the case that fired.
pub fn solve_saturation_traced(p: PatternGraph, g: &Graph, k: usize) -> Result<(bool, SaturationTrace)> {
    require_basic(g)?;
    if g.order() < 2 {
        return Err(Error::TooFewVertices(g.order()));
    }
    let mut run = Run {
        p: normalize_pattern(p),
        g: g.clone(),
        k,
        mirrored: false,
    };
    let (answer, case, brute) = run.dispatch()?;
    Ok((
        answer,
        SaturationTrace {
            case,
            mirrored: run.mirrored,
            brute,
        },
    ))
}

struct Run {
    p: PatternGraph,
    g: Graph,
    k: usize,
    mirrored: bool,
}

type Outcome = (bool, SatCase, bool);

fn exact(answer: bool, case: SatCase) -> Result<Outcome> {
    Ok((answer, case, false))
}

impl Run {
    fn n(&self) -> usize {
        self.g.order()
    }

    fn mirror(&mut self) -> Result<()> {
        let (p, g) = mirror_instance(self.p, &self.g)?;
        self.p = p;
        self.g = g;
        self.mirrored = !self.mirrored;
        Ok(())
    }

    /// Accept at or above `threshold` vertices, else search the kernel.
    fn heavy(&self, threshold: usize, case: SatCase) -> Result<Outcome> {
        if self.n() >= threshold {
            exact(true, case)
        } else {
            Ok((brute_force(self.p, &self.g, self.k), case, true))
        }
    }

    fn brute(&self, case: SatCase) -> Result<Outcome> {
        Ok((brute_force(self.p, &self.g, self.k), case, true))
    }

    fn dispatch(&mut self) -> Result<Outcome> {
        let p = self.p;
        if p.is_empty() {
            return exact(false, SatCase::EmptyPattern);
        }
        if self.g.is_edgeless() {
            return exact(self.uniform(false), SatCase::TrivialEdgeless);
        }
        if self.g.is_complete() {
            return exact(self.uniform(true), SatCase::TrivialClique);
        }
        if self.k == 0 {
            return exact(decide_saturation_unweighted(p, &self.g)?, SatCase::Slice);
        }
        if p.has_any(Arc::BB) {
            if !p.has_plus(Arc::BB) {
                self.mirror()?;
            }
            return self.black_loop();
        }
        if p.has_any(Arc::WW) {
            if !p.has_plus(Arc::WW) {
                self.mirror()?;
            }
            return self.white_loop();
        }
        if p.has_plus(Arc::BW) && p.has_plus(Arc::WB) {
            return self.pp();
        }
        if p.has_minus(Arc::BW) && p.has_minus(Arc::WB) {
            self.mirror()?;
            return self.pp();
        }
        if p.has_plus(Arc::BW) {
            self.mirror()?;
        }
        assert_eq!(
            self.p,
            PatternGraph::new(&[Arc::WB], &[Arc::BW]),
            "no saturation case matched"
        );
        self.self_pattern()
    }

    /// Exact answer when every pair has the same edge flag.
    fn uniform(&self, edge: bool) -> bool {
        let p = self.p;
        let n = self.n();
        (self.k..=n).any(|nb| {
            let nw = n - nb;
            let black_ok = (p.allows(edge, Arc::BB) && nb >= 2) || (p.allows(edge, Arc::BW) && nw >= 1);
            let white_ok = (p.allows(edge, Arc::WW) && nw >= 2) || (p.allows(edge, Arc::WB) && nb >= 1);
            (nb == 0 || black_ok) && (nw == 0 || white_ok)
        })
    }

    fn black_loop(&mut self) -> Result<Outcome> {
        let (p, n, k) = (self.p, self.n(), self.k);
        let iso = self.g.isolated_vertices().len();
        if p.has_minus(Arc::BB) {
            return exact(n >= k, SatCase::Pm);
        }
        if p.has_minus(Arc::WB) {
            let best = if !p.has_minus(Arc::BW) {
                n - iso
            } else if iso == 0 {
                n
            } else {
                n - 1
            };
            return exact(best >= k, SatCase::Case2);
        }
        if p.has_minus(Arc::WW) {
            return match (p.has_minus(Arc::BW), iso) {
                (_, 0) => exact(n >= k, SatCase::Case1),
                (false, 1) => self.heavy(k + 3, SatCase::Case1),
                (false, _) => exact(n - iso >= k, SatCase::Case1),
                (true, 1) => self.heavy(k + 3, SatCase::Case1),
                (true, _) => self.heavy(k + 2, SatCase::Case1),
            };
        }
        if !p.has_minus(Arc::BW) {
            return exact(iso == 0 && n >= k, SatCase::BlackLoopOnly);
        }
        if p.has_plus(Arc::WW) {
            return if iso == 0 {
                exact(n >= k, SatCase::NoPrivateNeighbor)
            } else {
                self.heavy(k + 3, SatCase::NoPrivateNeighbor)
            };
        }
        debug_assert!(p.has_plus(Arc::WB));
        if iso == 0 {
            return exact(n >= k, SatCase::Case3);
        }
        if self.g.edge_count() == 1 {
            return exact(p.has_plus(Arc::BW) && n > k, SatCase::Case3);
        }
        self.heavy(k + 2, SatCase::Case3)
    }

    fn white_loop(&mut self) -> Result<Outcome> {
        let p = self.p;
        let bw_plus = p.has_plus(Arc::BW);
        let bw_minus = p.has_minus(Arc::BW);
        match (bw_plus, bw_minus) {
            (false, false) => exact(false, SatCase::AllWhite),
            (true, true) => self.heavy(self.k + 2, SatCase::Both),
            (true, false) => self.long_path(),
            (false, true) => {
                self.mirror()?;
                self.universal_vertex()
            }
        }
    }

    fn long_path(&self) -> Result<Outcome> {
        let (p, g, k) = (self.p, &self.g, self.k);
        let minus_empty = p.minus_arcs().is_empty();
        let comps = g.components();
        if minus_empty && comps.iter().any(|c| c.len() == 1) {
            return exact(false, SatCase::LongPath);
        }
        let matched = comps.iter().filter(|c| c.len() == 2).count();
        let big: usize = comps.iter().filter(|c| c.len() >= 3).map(Vec::len).sum();
        if minus_empty {
            if big > path_threshold(k) {
                return exact(true, SatCase::LongPath);
            }
            return Ok((components_reach(p, g, &comps, k), SatCase::LongPath, true));
        }
        if matched > k {
            return exact(true, SatCase::LongPath);
        }
        let rest = k - matched;
        if big > 0 && (rest == 0 || big > path_threshold(rest)) {
            return exact(true, SatCase::LongPath);
        }
        self.brute(SatCase::LongPath)
    }

    fn universal_vertex(&self) -> Result<Outcome> {
        let (g, k) = (&self.g, self.k);
        let u = g.universal_vertices();
        if u.len() >= k {
            return exact(true, SatCase::UniversalVertex);
        }
        let rest = k - u.len();
        let mut b1 = g.clone();
        b1.deactivate_all(&u);
        if b1.vertices().any(|v| b1.degree(v) >= rest) {
            return exact(true, SatCase::UniversalVertex);
        }
        let mut b2 = b1.clone();
        b2.deactivate_all(&b1.isolated_vertices());
        if b2.edge_count() >= 2 * rest * rest {
            return exact(true, SatCase::UniversalVertex);
        }
        self.brute(SatCase::UniversalVertex)
    }

    fn pp(&self) -> Result<Outcome> {
        let (p, g, k) = (self.p, &self.g, self.k);
        let iso = g.isolated_vertices();
        if !iso.is_empty() {
            if p.minus_arcs().is_empty() {
                return exact(false, SatCase::Pp);
            }
            if p.has_minus(Arc::BW) && p.has_minus(Arc::WB) {
                return exact(self.n() > k, SatCase::Pp);
            }
        }
        let mut bound = if p.has_minus(Arc::BW) { iso.len() } else { 0 };
        for comp in g.components().into_iter().filter(|c| c.len() >= 2) {
            let depth = g.bfs_depths(comp[0]);
            let even = comp.iter().filter(|&&v| depth[v].is_some_and(|d| d % 2 == 0)).count();
            bound += even.max(comp.len() - even);
        }
        if bound >= k {
            return exact(true, SatCase::Pp);
        }
        self.brute(SatCase::Pp)
    }

    fn self_pattern(&self) -> Result<Outcome> {
        let (p, k) = (self.p, self.k);
        let mut h = self.g.clone();
        h.deactivate_all(&self.g.universal_vertices());
        if h.order() < 2 {
            return exact(false, SatCase::SelfPattern);
        }
        let peeling = peel_naive(&h)?;
        let core = peeling.residual(&h);
        if core.order() < 2 || !decide_saturation_unweighted(p, &core)? {
            return exact(false, SatCase::SelfPattern);
        }
        let rest = k.saturating_sub(peeling.isolated_total());
        if rest == 0 || core.order() / 2 >= rest {
            return exact(true, SatCase::SelfPattern);
        }
        Ok((brute_force(p, &core, rest), SatCase::SelfPattern, true))
    }
}

/// "More than `3k³ + 2k²` vertices" in components of size at least 3.
fn path_threshold(k: usize) -> usize {
    3 * k.pow(3) + 2 * k.pow(2)
}

/// Exact answer when only edges can witness: components are independent.
fn components_reach(p: PatternGraph, g: &Graph, comps: &[Vec<usize>], k: usize) -> bool {
    let mut total = 0;
    let mut pair_best: Option<Option<usize>> = None;
    for comp in comps {
        let best = if comp.len() == 2 {
            *pair_best.get_or_insert_with(|| max_weight(p, &g.induced(comp)))
        } else {
            max_weight(p, &g.induced(comp))
        };
        match best {
            Some(w) => total += w,
            None => return false,
        }
    }
    total >= k
}


#[cfg(test)]
mod sweep {
    use super::*;
    use crate::saturation::search::search_coloring;
    use crate::structures::GraphKind;
    use rand::{Rng, SeedableRng};

    fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        (0u32..1 << pairs.len()).map(move |mask| {
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            Graph::from_edges(GraphKind::Basic, n, &edges)
        })
    }

    fn check(p: PatternGraph, g: &Graph, k: usize) {
        let want = search_coloring(p, g, k).is_some();
        let (got, trace) = solve_saturation_traced(p, g, k).unwrap();
        assert_eq!(got, want, "{p} {g:?} k={k} {trace}");
    }

    #[test]
    fn exhaustive_small_graphs() {
        for n in 2..=4 {
            for g in all_graphs(n) {
                for p in PatternGraph::all() {
                    for k in 0..=4 {
                        check(p, &g, k);
                    }
                }
            }
        }
    }

    #[test]
    fn random_graphs() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for it in 0..3000 {
            let n = rng.gen_range(7..=14);
            let mut edges = vec![];
            if it % 3 == 1 {
                let mut v = rng.gen_range(0..4);
                while v + 1 < n && rng.gen_bool(0.7) {
                    edges.push((v, v + 1));
                    v += 2;
                }
                while v + 1 < n {
                    edges.push((v, v + 1));
                    v += 1;
                }
            } else {
                let density = [0.05, 0.15, 0.3, 0.6, 0.9][rng.gen_range(0..5)];
                for u in 0..n {
                    for v in u + 1..n {
                        if rng.gen_bool(density) {
                            edges.push((u, v));
                        }
                    }
                }
            }
            let g = Graph::from_edges(GraphKind::Basic, n, &edges);
            check(PatternGraph::from_index(rng.gen()), &g, rng.gen_range(1..=5));
        }
    }
}
