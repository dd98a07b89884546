use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::logic::Mode;

use super::cnf::{Lit, WcnfInstance};

/// Closed-form decision for CNFs made of unit clauses only.
pub fn solve_1wsat(w: &WcnfInstance) -> Result<bool> {
    if let Some(c) = w.clauses.iter().find(|c| c.len() > 1) {
        return Err(Error::ClauseWidth {
            width: c.len(),
            limit: 1,
        });
    }
    let mut forced: Vec<Option<bool>> = vec![None; w.num_vars];
    for c in &w.clauses {
        let Some(&l) = c.first() else {
            return Ok(false);
        };
        match forced[l.var] {
            Some(v) if v != l.positive => return Ok(false),
            _ => forced[l.var] = Some(l.positive),
        }
    }
    let p = forced.iter().filter(|v| **v == Some(true)).count();
    let f = forced.iter().filter(|v| v.is_none()).count();
    let k = w.k;
    Ok(match w.mode {
        Mode::Eq => p <= k && k <= p + f,
        Mode::Le => p <= k,
        Mode::Ge => p + f >= k,
    })
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// `|Ψ_i|` for every level that was built.
    pub level_sizes: Vec<usize>,
    pub nodes: usize,
}

impl SearchStats {
    pub fn max_frontier(&self) -> usize {
        self.level_sizes.iter().copied().max().unwrap_or(0)
    }
}

/// A node of the search tree: the variables set to true so far. The
/// residual formula is determined by this set.
pub type Node = BTreeSet<usize>;

enum Step<'a> {
    Accept,
    Branch(&'a [Lit]),
}

fn inspect<'a>(w: &'a WcnfInstance, node: &Node) -> Step<'a> {
    for c in &w.clauses {
        let satisfied = c.iter().any(|l| l.positive && node.contains(&l.var));
        if satisfied {
            continue;
        }
        let has_negative = c.iter().any(|l| !l.positive && !node.contains(&l.var));
        if !has_negative {
            return Step::Branch(c);
        }
    }
    Step::Accept
}

fn children(clause: &[Lit], node: &Node) -> Vec<Node> {
    clause
        .iter()
        .filter(|l| l.positive)
        .map(|l| {
            let mut child = node.clone();
            child.insert(l.var);
            child
        })
        .collect()
}

/// Whether the residual formula at `node` is satisfied by setting every
/// remaining variable to false.
pub fn zero_satisfies(w: &WcnfInstance, node: &Node) -> bool {
    matches!(inspect(w, node), Step::Accept)
}

/// Levels `Ψ_0..=Ψ_max` of the search tree built without early acceptance.
pub fn search_levels(w: &WcnfInstance, max_level: usize) -> Vec<BTreeSet<Node>> {
    let mut levels = vec![BTreeSet::from([Node::new()])];
    for _ in 0..max_level {
        let mut next = BTreeSet::new();
        for node in levels.last().expect("non-empty") {
            if let Step::Branch(c) = inspect(w, node) {
                next.extend(children(c, node));
            }
        }
        levels.push(next);
    }
    levels
}

/// Bounded search tree for weighted CNF satisfiability with mode `≤`.
///
/// Level `i` holds the residual formulas after setting `i` variables true.
/// A level accepts if some residual is satisfied by the all-false
/// assignment; otherwise each residual branches on its first all-positive
/// clause. Levels beyond `k` are never built.
pub fn solve_wsat_le_searchtree(w: &WcnfInstance) -> Result<(bool, SearchStats)> {
    if w.mode != Mode::Le {
        return Err(Error::Unsupported(format!(
            "search tree needs mode le, found {}",
            w.mode
        )));
    }
    let mut stats = SearchStats::default();
    let mut level = BTreeSet::from([Node::new()]);
    for i in 0..=w.k {
        stats.level_sizes.push(level.len());
        stats.nodes += level.len();
        let mut next = BTreeSet::new();
        for node in &level {
            match inspect(w, node) {
                Step::Accept => return Ok((true, stats)),
                Step::Branch(c) => {
                    if i < w.k {
                        next.extend(children(c, node));
                    }
                }
            }
        }
        if next.is_empty() {
            break;
        }
        level = next;
    }
    Ok((false, stats))
}
