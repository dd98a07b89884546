//! Brute-force deciders used as ground truth for every solver.

use crate::cardcsp::CspInstance;
use crate::error::{Error, Result};
use crate::logic::{Formula, Quant};
use crate::saturation::{Arc, Color, PatternGraph};
use crate::structures::{Graph, GraphKind, Structure};
use crate::wsat::WcnfInstance;

/// Enumeration caps; exceeding one yields [`Error::OracleBudget`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleLimits {
    pub max_set_universe: usize,
    pub max_coloring_vertices: usize,
    pub max_wsat_vars: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            max_set_universe: 20,
            max_coloring_vertices: 16,
            max_wsat_vars: 24,
        }
    }
}

fn within(what: &'static str, size: usize, cap: usize) -> Result<()> {
    if size > cap {
        return Err(Error::OracleBudget { what, size, cap });
    }
    Ok(())
}

/// Calls `f` on every `n`-bit mask with a popcount in `sizes`, smallest
/// sizes first, until it returns `true`.
fn masks_by_size(n: usize, sizes: impl Iterator<Item = usize>, mut f: impl FnMut(u64) -> bool) -> bool {
    for size in sizes {
        if size > n {
            break;
        }
        if size == 0 {
            if f(0) {
                return true;
            }
            continue;
        }
        let limit = 1u64 << n;
        let mut m: u64 = (1u64 << size) - 1;
        while m < limit {
            if f(m) {
                return true;
            }
            // Next mask with the same popcount.
            let c = m & m.wrapping_neg();
            let r = m + c;
            m = (((r ^ m) >> 2) / c) | r;
        }
    }
    false
}

fn bits(mask: u64, n: usize) -> Vec<bool> {
    (0..n).map(|i| mask >> i & 1 == 1).collect()
}

fn sizes_for(mode: crate::logic::Mode, k: usize, n: usize) -> Box<dyn Iterator<Item = usize>> {
    use crate::logic::Mode;
    match mode {
        Mode::Eq => Box::new(std::iter::once(k)),
        Mode::Le => Box::new(0..=k.min(n)),
        Mode::Ge => Box::new(k..=n),
    }
}

fn expand(f: &Formula, s: &Structure, depth: usize, a: &mut Vec<usize>, set: &[bool]) -> bool {
    if depth == f.prefix.len() {
        return f.eval_unchecked(s, a, set);
    }
    let n = s.universe_size();
    let universal = f.prefix[depth].0 == Quant::Forall;
    for e in 0..n {
        a.push(e);
        let v = expand(f, s, depth + 1, a, set);
        a.pop();
        if v != universal {
            return v;
        }
    }
    universal
}

/// A set of admissible size satisfying the first-order part, if any.
pub fn find_model_with(f: &Formula, s: &Structure, k: usize, limits: OracleLimits) -> Result<Option<Vec<bool>>> {
    f.check_signature(s)?;
    let n = s.universe_size();
    within("set enumeration universe", n, limits.max_set_universe)?;
    let mut found = None;
    let mut a = Vec::with_capacity(f.prefix.len());
    masks_by_size(n, sizes_for(f.mode, k, n), |m| {
        let set = bits(m, n);
        if expand(f, s, 0, &mut a, &set) {
            found = Some(set);
            true
        } else {
            false
        }
    });
    Ok(found)
}

pub fn oracle_models_with(f: &Formula, s: &Structure, k: usize, limits: OracleLimits) -> Result<bool> {
    Ok(find_model_with(f, s, k, limits)?.is_some())
}

pub fn oracle_models(f: &Formula, s: &Structure, k: usize) -> Result<bool> {
    oracle_models_with(f, s, k, OracleLimits::default())
}

pub fn oracle_saturation_with(p: PatternGraph, g: &Graph, k: usize, limits: OracleLimits) -> Result<bool> {
    if g.kind() != GraphKind::Basic {
        return Err(Error::GraphKind {
            expected: "basic",
            found: g.kind().name(),
        });
    }
    let vs: Vec<usize> = g.vertices().collect();
    let n = vs.len();
    if n < 2 {
        return Err(Error::TooFewVertices(n));
    }
    within("coloring enumeration graph", n, limits.max_coloring_vertices)?;
    let witnessed = |black: &[bool], i: usize| {
        (0..n).any(|j| {
            j != i
                && p.allows(
                    g.has_edge(vs[i], vs[j]),
                    Arc(Color::from_black(black[i]), Color::from_black(black[j])),
                )
        })
    };
    Ok(masks_by_size(n, k..=n, |m| {
        let black = bits(m, n);
        (0..n).all(|i| witnessed(&black, i))
    }))
}

/// Some coloring with at least `k` black vertices in which every vertex
/// has a witness.
pub fn oracle_saturation(p: PatternGraph, g: &Graph, k: usize) -> Result<bool> {
    oracle_saturation_with(p, g, k, OracleLimits::default())
}

pub fn oracle_csp_with(inst: &CspInstance, limits: OracleLimits) -> Result<bool> {
    let n = inst.universe_size;
    within("CSP universe", n, limits.max_set_universe)?;
    Ok(masks_by_size(n, 0..=inst.k.min(n), |m| inst.satisfied_by(&bits(m, n))))
}

/// Some `X` with `|X| ≤ k` meeting every pair and unary constraint.
pub fn oracle_csp(inst: &CspInstance) -> Result<bool> {
    oracle_csp_with(inst, OracleLimits::default())
}

pub fn oracle_wsat_with(w: &WcnfInstance, limits: OracleLimits) -> Result<bool> {
    let n = w.num_vars;
    within("WSAT variables", n, limits.max_wsat_vars)?;
    Ok(masks_by_size(n, sizes_for(w.mode, w.k, n), |m| {
        w.satisfied_by(&bits(m, n))
    }))
}

/// Some satisfying assignment whose weight compares to `k` per the mode.
pub fn oracle_wsat(w: &WcnfInstance) -> Result<bool> {
    oracle_wsat_with(w, OracleLimits::default())
}
