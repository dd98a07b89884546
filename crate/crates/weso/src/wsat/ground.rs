use crate::error::{Error, Result};
use crate::logic::{extract_pattern, in_e_star_a_star, Formula};
use crate::structures::Structure;

use super::cnf::{Clause, Lit, WcnfInstance};

/// One weighted CNF per choice of the existential prefix (and of the
/// membership of the elements it picks). The formula holds with a set of
/// the requested weight iff some disjunct accepts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundedInstance {
    pub disjuncts: Vec<WcnfInstance>,
    /// Existential assignment each disjunct was built from.
    pub origins: Vec<Vec<usize>>,
}

/// Iterates over all tuples in `0..n` of length `len`, lexicographically.
pub(crate) fn for_each_tuple(n: usize, len: usize, mut f: impl FnMut(&[usize])) {
    let mut t = vec![0usize; len];
    if len > 0 && n == 0 {
        return;
    }
    loop {
        f(&t);
        let mut i = len;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            t[i] += 1;
            if t[i] < n {
                break;
            }
            t[i] = 0;
        }
    }
}

/// Grounds a formula with prefix `e^l a^d` over `s`.
///
/// For a fixed existential tuple α, the elements α picks inside membership
/// atoms get their membership fixed by an extra unit clause each, so that
/// every remaining clause mentions only elements chosen by the universal
/// variables and has width at most `d`.
pub fn ground_formula(f: &Formula, s: &Structure, k: usize) -> Result<GroundedInstance> {
    let word = extract_pattern(f).word;
    if !in_e_star_a_star(&word) {
        return Err(Error::Unsupported(format!(
            "grounding needs a word in e*a*, found `{word}`"
        )));
    }
    f.check_signature(s)?;
    let l = word.chars().take_while(|&c| c == 'e').count();
    let d = word.len() - l;
    let n = s.universe_size();
    let member_vars = f.matrix.member_vars();
    let exist_members: Vec<usize> = member_vars.iter().copied().filter(|&v| v < l).collect();
    let univ_members: Vec<usize> = member_vars.iter().copied().filter(|&v| v >= l).collect();
    let width = d.max(1);

    let mut out = GroundedInstance {
        disjuncts: Vec::new(),
        origins: Vec::new(),
    };
    let mut set = vec![false; n];
    let mut assignment = vec![0usize; l + d];
    for_each_tuple(n, l, |alpha| {
        assignment[..l].copy_from_slice(alpha);
        let mut fixed: Vec<usize> = exist_members.iter().map(|&v| alpha[v]).collect();
        fixed.sort_unstable();
        fixed.dedup();
        for beta in 0u64..(1u64 << fixed.len()) {
            let mut clauses: Vec<Clause> = Vec::new();
            for (i, &e) in fixed.iter().enumerate() {
                let val = beta >> i & 1 == 1;
                set[e] = val;
                clauses.push(vec![Lit { var: e, positive: val }]);
            }
            for_each_tuple(n, d, |tau| {
                assignment[l..].copy_from_slice(tau);
                let mut free: Vec<usize> = univ_members
                    .iter()
                    .map(|&v| assignment[v])
                    .filter(|e| !fixed.contains(e))
                    .collect();
                free.sort_unstable();
                free.dedup();
                clauses.extend(residual_cnf(f, s, &assignment, &mut set, &free));
            });
            let w = WcnfInstance::new(n, clauses, width, k, f.mode).expect("ground clauses have width at most d");
            out.disjuncts.push(w);
            out.origins.push(alpha.to_vec());
        }
    });
    Ok(out)
}

/// CNF of the matrix as a function of the memberships of `free`, one
/// clause per falsifying assignment restricted to relevant variables.
fn residual_cnf(f: &Formula, s: &Structure, a: &[usize], set: &mut [bool], free: &[usize]) -> Vec<Clause> {
    let m = free.len();
    let mut table = Vec::with_capacity(1 << m);
    for bits in 0u32..(1u32 << m) {
        for (i, &e) in free.iter().enumerate() {
            set[e] = bits >> i & 1 == 1;
        }
        table.push(f.eval_unchecked(s, a, set));
    }
    let relevant: Vec<usize> = (0..m)
        .filter(|&i| (0..table.len()).any(|b| table[b] != table[b ^ (1 << i)]))
        .collect();
    let mut clauses = Vec::new();
    for bits in 0u32..(1u32 << m) {
        if !zero_outside(bits, &relevant) || table[bits as usize] {
            continue;
        }
        clauses.push(
            relevant
                .iter()
                .map(|&i| Lit {
                    var: free[i],
                    positive: bits >> i & 1 == 0,
                })
                .collect(),
        );
    }
    clauses
}

fn zero_outside(bits: u32, relevant: &[usize]) -> bool {
    let mask: u32 = relevant.iter().map(|&i| 1u32 << i).sum();
    bits & !mask == 0
}
