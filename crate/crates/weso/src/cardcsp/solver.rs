use std::fmt;

use super::instance::{CountSet, CspInstance};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CspCase {
    EmptyUniverse,
    UnaryNone,
    UnaryOnlyOne,
    UnaryOnlyZero,
    Singleton,
    Clique,
    ForbiddenPairs,
    ZeroEverywhere,
    HighDegree,
    TooManyEdges,
    Kernel,
}

impl CspCase {
    pub fn name(self) -> &'static str {
        match self {
            CspCase::EmptyUniverse => "empty-universe",
            CspCase::UnaryNone => "unary-none",
            CspCase::UnaryOnlyOne => "unary-only-one",
            CspCase::UnaryOnlyZero => "unary-only-zero",
            CspCase::Singleton => "singleton",
            CspCase::Clique => "clique",
            CspCase::ForbiddenPairs => "forbidden-pairs",
            CspCase::ZeroEverywhere => "zero-everywhere",
            CspCase::HighDegree => "high-degree",
            CspCase::TooManyEdges => "too-many-edges",
            CspCase::Kernel => "kernel",
        }
    }
}

impl fmt::Display for CspCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which rule decided, with the (C, D) sets it saw after any role swap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CspTrace {
    pub case: CspCase,
    pub swapped: bool,
    pub c_set: CountSet,
    pub d_set: CountSet,
    /// Kernel subsets examined.
    pub subsets: usize,
}

impl fmt::Display for CspTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "case={} C={} D={}", self.case, self.c_set, self.d_set)?;
        if self.swapped {
            f.write_str(" swapped")?;
        }
        if self.subsets > 0 {
            write!(f, " subsets={}", self.subsets)?;
        }
        Ok(())
    }
}

pub fn solve_csp_le(inst: &CspInstance) -> bool {
    solve_csp_traced(inst).0
}

pub fn solve_csp_traced(inst: &CspInstance) -> (bool, CspTrace) {
    let mut trace = CspTrace {
        case: CspCase::EmptyUniverse,
        swapped: false,
        c_set: inst.c_set,
        d_set: inst.d_set,
        subsets: 0,
    };
    let answer = decide(inst, &mut trace);
    (answer, trace)
}

fn decide(inst: &CspInstance, trace: &mut CspTrace) -> bool {
    let (n, k) = (inst.universe_size, inst.k);
    let has_c = !inst.c_pairs.is_empty();
    let has_d = inst.d_pair_count() > 0;
    let all_pairs_allow = |m: usize| (!has_c || inst.c_set.contains(m)) && (!has_d || inst.d_set.contains(m));
    if n == 0 {
        trace.case = CspCase::EmptyUniverse;
        return true;
    }
    let unary = inst.unary_allowed;
    if unary.is_empty() {
        trace.case = CspCase::UnaryNone;
        return false;
    }
    if !unary.contains(0) {
        trace.case = CspCase::UnaryOnlyOne;
        return n <= k && all_pairs_allow(2);
    }
    if !unary.contains(1) {
        trace.case = CspCase::UnaryOnlyZero;
        return all_pairs_allow(0);
    }
    if n == 1 {
        trace.case = CspCase::Singleton;
        return true;
    }
    if !has_c {
        trace.case = CspCase::Clique;
        return clique(inst.d_set, n, k);
    }
    if !has_d {
        trace.case = CspCase::Clique;
        return clique(inst.c_set, n, k);
    }
    if inst.c_set.is_empty() || inst.d_set.is_empty() {
        trace.case = CspCase::ForbiddenPairs;
        return false;
    }
    if inst.c_set.contains(0) && inst.d_set.contains(0) {
        trace.case = CspCase::ZeroEverywhere;
        return true;
    }
    let mut table = PairTable::new(inst);
    if table.d.contains(0) {
        table.swap();
        trace.swapped = true;
        trace.c_set = table.c;
        trace.d_set = table.d;
    }
    kernel(&table, k, trace)
}

/// Every pair carries the same constraint `s`.
fn clique(s: CountSet, n: usize, k: usize) -> bool {
    if s.contains(0) {
        return true;
    }
    match (s.contains(1), s.contains(2)) {
        (false, false) => false,
        (true, false) => n == 2 && k >= 1,
        (false, true) => n <= k,
        (true, true) => n - 1 <= k,
    }
}

/// Dense pair types; `is_c[u][v]` marks C-pairs.
struct PairTable {
    n: usize,
    c: CountSet,
    d: CountSet,
    is_c: Vec<Vec<bool>>,
}

impl PairTable {
    fn new(inst: &CspInstance) -> Self {
        let n = inst.universe_size;
        let mut is_c = vec![vec![false; n]; n];
        for &(u, v) in &inst.c_pairs {
            is_c[u][v] = true;
            is_c[v][u] = true;
        }
        PairTable {
            n,
            c: inst.c_set,
            d: inst.d_set,
            is_c,
        }
    }

    fn swap(&mut self) {
        std::mem::swap(&mut self.c, &mut self.d);
        for u in 0..self.n {
            for v in 0..self.n {
                if u != v {
                    self.is_c[u][v] = !self.is_c[u][v];
                }
            }
        }
    }

    fn allowed(&self, u: usize, v: usize) -> CountSet {
        if self.is_c[u][v] {
            self.c
        } else {
            self.d
        }
    }

    fn d_edge(&self, u: usize, v: usize) -> bool {
        u != v && !self.is_c[u][v]
    }
}

/// `0 ∉ D`: solutions cover the D-graph. Vertices of D-degree above `k`
/// are forced in; the remaining uncovered D-edges span a kernel `M` whose
/// subsets are enumerated, and the rest `L` (D-neighbors only in the forced
/// set, so all pairs inside `L` are C-pairs) is completed greedily.
fn kernel(t: &PairTable, k: usize, trace: &mut CspTrace) -> bool {
    let n = t.n;
    let degree: Vec<usize> = (0..n).map(|u| (0..n).filter(|&v| t.d_edge(u, v)).count()).collect();
    let high: Vec<usize> = (0..n).filter(|&u| degree[u] > k).collect();
    trace.case = CspCase::HighDegree;
    if high.len() > k {
        return false;
    }
    let budget = k - high.len();
    let mut in_high = vec![false; n];
    for &h in &high {
        in_high[h] = true;
    }
    let mut uncovered = 0;
    let mut in_kernel = vec![false; n];
    for u in (0..n).filter(|&u| !in_high[u]) {
        for v in (u + 1..n).filter(|&v| !in_high[v] && t.d_edge(u, v)) {
            uncovered += 1;
            in_kernel[u] = true;
            in_kernel[v] = true;
        }
    }
    trace.case = CspCase::TooManyEdges;
    if uncovered > k * budget {
        return false;
    }
    trace.case = CspCase::Kernel;
    let kernel_vs: Vec<usize> = (0..n).filter(|&u| in_kernel[u]).collect();
    let rest: Vec<usize> = (0..n).filter(|&u| !in_high[u] && !in_kernel[u]).collect();
    let mut member = vec![false; n];
    for &h in &high {
        member[h] = true;
    }
    let mut decided = high.clone();
    decided.extend(&kernel_vs);
    let mut found = false;
    for_each_subset(&kernel_vs, budget, &mut |chosen| {
        trace.subsets += 1;
        for &v in &kernel_vs {
            member[v] = false;
        }
        for &v in chosen {
            member[v] = true;
        }
        if !pairs_ok(t, &decided, &member) {
            return false;
        }
        match extend(t, &decided, &rest, &member) {
            Some(extra) if high.len() + chosen.len() + extra <= k => {
                found = true;
                true
            }
            _ => false,
        }
    });
    found
}

fn pairs_ok(t: &PairTable, vs: &[usize], member: &[bool]) -> bool {
    vs.iter().enumerate().all(|(i, &u)| {
        vs[i + 1..].iter().all(|&v| {
            t.allowed(u, v)
                .contains(usize::from(member[u]) + usize::from(member[v]))
        })
    })
}

/// Fewest members among `rest` completing the decided part, if any.
fn extend(t: &PairTable, decided: &[usize], rest: &[usize], member: &[bool]) -> Option<usize> {
    let (mut forced_in, mut free) = (0, 0);
    for &u in rest {
        let ok = |m: usize| {
            decided
                .iter()
                .all(|&v| t.allowed(u, v).contains(m + usize::from(member[v])))
        };
        match (ok(0), ok(1)) {
            (false, false) => return None,
            (false, true) => forced_in += 1,
            (true, false) => {}
            (true, true) => free += 1,
        }
    }
    let size = rest.len();
    (forced_in..=forced_in + free).find(|&ones| {
        let zeros = size - ones;
        (zeros < 2 || t.c.contains(0)) && (ones == 0 || zeros == 0 || t.c.contains(1)) && (ones < 2 || t.c.contains(2))
    })
}

/// Calls `f` on subsets of `items` of size at most `max`, in index order,
/// until it returns `true`.
fn for_each_subset(items: &[usize], max: usize, f: &mut dyn FnMut(&[usize]) -> bool) {
    fn go(
        items: &[usize],
        start: usize,
        max: usize,
        cur: &mut Vec<usize>,
        f: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if f(cur) {
            return true;
        }
        if cur.len() == max {
            return false;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            if go(items, i + 1, max, cur, f) {
                return true;
            }
            cur.pop();
        }
        false
    }
    go(items, 0, max, &mut Vec::new(), f);
}


#[cfg(test)]
mod sweep {
    use super::*;
    use crate::oracles::oracle_csp;
    use rand::{Rng, SeedableRng};

    #[test]
    fn random_against_oracle() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let rounds: usize = std::env::var("CSP_SWEEP_ROUNDS")
            .ok()
            .and_then(|s| s.parse().ok())
            .unwrap_or(6);
        for c in CountSet::all() {
            for d in CountSet::all() {
                for _ in 0..rounds {
                    let n = rng.gen_range(0..=7);
                    let density: f64 = rng.gen_range(0.0..=1.0);
                    let pairs: Vec<(usize, usize)> = (0..n)
                        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                        .filter(|_| rng.gen_bool(density))
                        .collect();
                    let unary = if rng.gen_bool(0.8) {
                        CountSet::BINARY
                    } else {
                        CountSet::from_bits(rng.gen_range(0..4))
                    };
                    for k in 0..=3 {
                        let inst = CspInstance::new(n, c, d, pairs.iter().copied(), unary, k).unwrap();
                        let (got, trace) = solve_csp_traced(&inst);
                        assert_eq!(got, oracle_csp(&inst).unwrap(), "{}{trace}", inst.to_text());
                    }
                }
            }
        }
    }
}
