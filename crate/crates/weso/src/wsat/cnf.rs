use std::fmt;

use crate::error::{parse_err, Error, Result};
use crate::logic::Mode;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lit {
    pub var: usize,
    pub positive: bool,
}

impl Lit {
    pub fn pos(var: usize) -> Self {
        Lit { var, positive: true }
    }

    pub fn neg(var: usize) -> Self {
        Lit { var, positive: false }
    }

    pub fn negate(self) -> Self {
        Lit {
            var: self.var,
            positive: !self.positive,
        }
    }

    pub fn holds(self, assignment: &[bool]) -> bool {
        assignment[self.var] == self.positive
    }

    /// Signed 1-based DIMACS-style integer.
    pub fn to_dimacs(self) -> i64 {
        let v = self.var as i64 + 1;
        if self.positive {
            v
        } else {
            -v
        }
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

pub type Clause = Vec<Lit>;

/// Sorts and dedups literals; `None` for a tautology.
pub fn normalize_clause(mut c: Clause) -> Option<Clause> {
    c.sort_unstable();
    c.dedup();
    if c.windows(2).any(|w| w[0].var == w[1].var) {
        return None;
    }
    Some(c)
}

/// CNF with a weight budget; variable `i` stands for "element `i` is in
/// the set".
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WcnfInstance {
    pub num_vars: usize,
    pub clauses: Vec<Clause>,
    pub d: usize,
    pub k: usize,
    pub mode: Mode,
}

impl WcnfInstance {
    /// Builds an instance, dropping tautologies and duplicate clauses
    /// (first occurrence kept). Fails if a clause is wider than `d` or
    /// mentions a variable out of range.
    pub fn new(num_vars: usize, clauses: Vec<Clause>, d: usize, k: usize, mode: Mode) -> Result<Self> {
        let mut out: Vec<Clause> = Vec::new();
        for c in clauses {
            if let Some(l) = c.iter().find(|l| l.var >= num_vars) {
                return Err(Error::Invalid(format!("literal {l} outside {num_vars} variables")));
            }
            let Some(c) = normalize_clause(c) else { continue };
            if c.len() > d {
                return Err(Error::ClauseWidth {
                    width: c.len(),
                    limit: d,
                });
            }
            if !out.contains(&c) {
                out.push(c);
            }
        }
        Ok(WcnfInstance {
            num_vars,
            clauses: out,
            d,
            k,
            mode,
        })
    }

    pub fn max_width(&self) -> usize {
        self.clauses.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn satisfied_by(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|c| c.iter().any(|l| l.holds(assignment)))
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("wcnf {} {} {} {}\n", self.num_vars, self.mode, self.k, self.d);
        for c in &self.clauses {
            let lits: Vec<String> = c.iter().map(|l| l.to_string()).collect();
            out.push_str(&lits.join(" "));
            out.push('\n');
        }
        out
    }
}

/// Parses `wcnf <numvars> <mode> <k> <d>` followed by one clause per line
/// of signed 1-based literals (an optional trailing `0` is ignored; an
/// empty clause is written as a lone `0`).
pub fn parse_wcnf(text: &str) -> Result<WcnfInstance> {
    let mut header: Option<(usize, Mode, usize, usize)> = None;
    let mut clauses = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let toks: Vec<&str> = raw.split('#').next().unwrap_or("").split_whitespace().collect();
        if toks.is_empty() {
            continue;
        }
        let Some((n, ..)) = header else {
            if toks.len() != 5 || toks[0] != "wcnf" {
                return Err(parse_err(line, "expected `wcnf <numvars> <mode> <k> <d>`"));
            }
            let num = |t: &str| {
                t.parse::<usize>()
                    .map_err(|_| parse_err(line, format!("bad number `{t}`")))
            };
            let mode: Mode = toks[2]
                .parse()
                .map_err(|_| parse_err(line, format!("bad mode `{}`", toks[2])))?;
            header = Some((num(toks[1])?, mode, num(toks[3])?, num(toks[4])?));
            continue;
        };
        let mut clause = Vec::new();
        for (j, t) in toks.iter().enumerate() {
            let v: i64 = t.parse().map_err(|_| parse_err(line, format!("bad literal `{t}`")))?;
            if v == 0 {
                if j + 1 != toks.len() {
                    return Err(parse_err(line, "`0` may only end a clause"));
                }
                continue;
            }
            let var = v.unsigned_abs() as usize - 1;
            if var >= n {
                return Err(Error::OutOfRange {
                    line,
                    element: var + 1,
                    size: n,
                });
            }
            clause.push(if v > 0 { Lit::pos(var) } else { Lit::neg(var) });
        }
        clauses.push(clause);
    }
    let (n, mode, k, d) = header.ok_or_else(|| parse_err(1, "missing wcnf header"))?;
    WcnfInstance::new(n, clauses, d, k, mode).map_err(|e| match e {
        Error::ClauseWidth { width, limit } => parse_err(0, format!("clause width {width} exceeds declared d={limit}")),
        other => other,
    })
}

/// Backtracking search with unit propagation. Returns a satisfying
/// assignment of `clauses` over `num_vars` variables if one exists.
pub fn exact_sat(num_vars: usize, clauses: &[Clause]) -> Option<Vec<bool>> {
    exact_sat_min_true(num_vars, clauses, 0, &(0..num_vars).collect::<Vec<_>>())
}

/// Like [`exact_sat`] but requires at least `min_true` of the variables in
/// `counted` to be true. Branches true-first and prunes when the counted
/// variables can no longer reach `min_true`.
pub fn exact_sat_min_true(
    num_vars: usize,
    clauses: &[Clause],
    min_true: usize,
    counted: &[usize],
) -> Option<Vec<bool>> {
    let mut is_counted = vec![false; num_vars];
    for &v in counted {
        is_counted[v] = true;
    }
    let mut occurs: Vec<Vec<usize>> = vec![Vec::new(); num_vars];
    for (i, c) in clauses.iter().enumerate() {
        for l in c {
            occurs[l.var].push(i);
        }
    }
    let mut s = Search {
        clauses,
        occurs,
        value: vec![None; num_vars],
        trail: Vec::new(),
        is_counted,
        min_true,
    };
    if clauses.iter().any(|c| c.is_empty()) {
        return None;
    }
    let units: Vec<Lit> = clauses.iter().filter(|c| c.len() == 1).map(|c| c[0]).collect();
    for u in units {
        if !s.assign_and_propagate(u) {
            return None;
        }
    }
    if s.dfs() {
        Some(s.value.iter().map(|v| v.unwrap_or(false)).collect())
    } else {
        None
    }
}

struct Search<'a> {
    clauses: &'a [Clause],
    occurs: Vec<Vec<usize>>,
    value: Vec<Option<bool>>,
    trail: Vec<usize>,
    is_counted: Vec<bool>,
    min_true: usize,
}

impl Search<'_> {
    fn lit_value(&self, l: Lit) -> Option<bool> {
        self.value[l.var].map(|v| v == l.positive)
    }

    /// Assigns `l` and propagates units; false on conflict. The caller
    /// undoes via the trail.
    fn assign_and_propagate(&mut self, l: Lit) -> bool {
        match self.lit_value(l) {
            Some(true) => return true,
            Some(false) => return false,
            None => {}
        }
        let mut queue = vec![l];
        while let Some(l) = queue.pop() {
            match self.lit_value(l) {
                Some(true) => continue,
                Some(false) => return false,
                None => {}
            }
            self.value[l.var] = Some(l.positive);
            self.trail.push(l.var);
            for &ci in &self.occurs[l.var] {
                let c = &self.clauses[ci];
                let mut sat = false;
                let mut free = None;
                let mut n_free = 0;
                for &m in c {
                    match self.lit_value(m) {
                        Some(true) => {
                            sat = true;
                            break;
                        }
                        None => {
                            n_free += 1;
                            free = Some(m);
                        }
                        Some(false) => {}
                    }
                }
                if sat {
                    continue;
                }
                match n_free {
                    0 => return false,
                    1 => queue.push(free.expect("one free literal")),
                    _ => {}
                }
            }
        }
        true
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let v = self.trail.pop().expect("trail non-empty");
            self.value[v] = None;
        }
    }

    fn reachable_weight(&self) -> usize {
        (0..self.value.len())
            .filter(|&v| self.is_counted[v] && self.value[v] != Some(false))
            .count()
    }

    fn dfs(&mut self) -> bool {
        if self.reachable_weight() < self.min_true {
            return false;
        }
        let Some(v) = (0..self.value.len()).find(|&v| self.value[v].is_none()) else {
            return true;
        };
        for positive in [true, false] {
            let mark = self.trail.len();
            if self.assign_and_propagate(Lit { var: v, positive }) && self.dfs() {
                return true;
            }
            self.undo_to(mark);
        }
        false
    }
}
