use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{parse_err, Error, Result};

/// Subset of `{0, 1, 2}`: admissible counts `|{x,y} ∩ X|` for a pair, or
/// admissible memberships `{0, 1}` for a single element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct CountSet(u8);

impl CountSet {
    pub const EMPTY: CountSet = CountSet(0);
    pub const FULL: CountSet = CountSet(0b111);
    pub const BINARY: CountSet = CountSet(0b011);

    pub fn from_bits(bits: u8) -> Self {
        CountSet(bits & 0b111)
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    pub fn of(counts: &[usize]) -> Self {
        CountSet(counts.iter().filter(|&&c| c <= 2).fold(0, |b, &c| b | 1 << c))
    }

    /// All 8 subsets, by bit pattern.
    pub fn all() -> impl Iterator<Item = CountSet> {
        (0..8u8).map(CountSet)
    }

    pub fn contains(self, count: usize) -> bool {
        count <= 2 && self.0 >> count & 1 == 1
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn counts(self) -> Vec<usize> {
        (0..=2).filter(|&c| self.contains(c)).collect()
    }
}

impl fmt::Display for CountSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.counts().iter().map(usize::to_string).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

impl FromStr for CountSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('{')
            .and_then(|t| t.strip_suffix('}'))
            .ok_or_else(|| parse_err(1, format!("expected `{{...}}`, found `{s}`")))?;
        let mut counts = Vec::new();
        for item in inner.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            match item {
                "0" | "1" | "2" => counts.push(item.parse().expect("digit")),
                _ => return Err(parse_err(1, format!("count `{item}` not in 0..=2"))),
            }
        }
        Ok(CountSet::of(&counts))
    }
}

/// Cardinality-constraint CSP: pairs in `c_pairs` take counts from
/// `c_set`, every other pair from `d_set`; each element's membership must
/// lie in `unary_allowed`; solutions have at most `k` members.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CspInstance {
    pub universe_size: usize,
    pub c_set: CountSet,
    pub d_set: CountSet,
    /// Normalized `(u, v)` with `u < v`.
    pub c_pairs: BTreeSet<(usize, usize)>,
    pub unary_allowed: CountSet,
    pub k: usize,
}

impl CspInstance {
    pub fn new(
        universe_size: usize,
        c_set: CountSet,
        d_set: CountSet,
        c_pairs: impl IntoIterator<Item = (usize, usize)>,
        unary_allowed: CountSet,
        k: usize,
    ) -> Result<Self> {
        let mut pairs = BTreeSet::new();
        for (u, v) in c_pairs {
            if u == v || u >= universe_size || v >= universe_size {
                return Err(Error::Invalid(format!(
                    "pair ({u}, {v}) is not a 2-subset of a universe of size {universe_size}"
                )));
            }
            pairs.insert((u.min(v), u.max(v)));
        }
        if unary_allowed.contains(2) {
            return Err(Error::Invalid("unary constraint may only contain 0 and 1".to_string()));
        }
        Ok(CspInstance {
            universe_size,
            c_set,
            d_set,
            c_pairs: pairs,
            unary_allowed,
            k,
        })
    }

    pub fn is_c_pair(&self, u: usize, v: usize) -> bool {
        self.c_pairs.contains(&(u.min(v), u.max(v)))
    }

    /// Constraint of the pair `{u, v}`, `u != v`.
    pub fn allowed(&self, u: usize, v: usize) -> CountSet {
        if self.is_c_pair(u, v) {
            self.c_set
        } else {
            self.d_set
        }
    }

    pub fn pair_count(&self) -> usize {
        self.universe_size * self.universe_size.saturating_sub(1) / 2
    }

    pub fn d_pair_count(&self) -> usize {
        self.pair_count() - self.c_pairs.len()
    }

    /// Pair and unary constraints only; the size bound is not checked.
    pub fn satisfied_by(&self, member: &[bool]) -> bool {
        let n = self.universe_size;
        (0..n).all(|u| self.unary_allowed.contains(usize::from(member[u])))
            && (0..n).all(|u| {
                (u + 1..n).all(|v| {
                    self.allowed(u, v)
                        .contains(usize::from(member[u]) + usize::from(member[v]))
                })
            })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "csp {} {}\ncset {}\ndset {}\nunary {}\n",
            self.universe_size, self.k, self.c_set, self.d_set, self.unary_allowed
        );
        for (u, v) in &self.c_pairs {
            out.push_str(&format!("cpair {u} {v}\n"));
        }
        out
    }
}

/// Reads the `csp n k` / `cset` / `dset` / `unary` / `cpair u v` format.
/// `unary` defaults to `{0,1}`; `#` starts a comment.
pub fn parse_csp(text: &str) -> Result<CspInstance> {
    let mut header = None;
    let mut c_set = None;
    let mut d_set = None;
    let mut unary = CountSet::BINARY;
    let mut pairs = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (kw, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let set = |rest: &str| rest.parse::<CountSet>().map_err(|e| relabel(e, line_no));
        match kw {
            "csp" => {
                let nums = numbers(rest, 2, line_no)?;
                header = Some((nums[0], nums[1]));
            }
            "cset" => c_set = Some(set(rest)?),
            "dset" => d_set = Some(set(rest)?),
            "unary" => unary = set(rest)?,
            "cpair" => {
                let nums = numbers(rest, 2, line_no)?;
                pairs.push((nums[0], nums[1]));
            }
            _ => return Err(parse_err(line_no, format!("unknown keyword `{kw}`"))),
        }
        if kw != "csp" && header.is_none() {
            return Err(parse_err(line_no, "expected `csp <n> <k>` header first"));
        }
    }
    let (n, k) = header.ok_or_else(|| parse_err(1, "missing `csp <n> <k>` header"))?;
    let c_set = c_set.ok_or_else(|| parse_err(1, "missing `cset` line"))?;
    let d_set = d_set.ok_or_else(|| parse_err(1, "missing `dset` line"))?;
    CspInstance::new(n, c_set, d_set, pairs, unary, k)
}

fn relabel(e: Error, line: usize) -> Error {
    match e {
        Error::Parse { msg, .. } => Error::Parse { line, msg },
        other => other,
    }
}

fn numbers(rest: &str, count: usize, line: usize) -> Result<Vec<usize>> {
    let nums: Vec<usize> = rest
        .split_whitespace()
        .map(|t| {
            t.parse()
                .map_err(|_| parse_err(line, format!("expected a number, found `{t}`")))
        })
        .collect::<Result<_>>()?;
    if nums.len() != count {
        return Err(parse_err(
            line,
            format!("expected {count} numbers, found {}", nums.len()),
        ));
    }
    Ok(nums)
}

impl FromStr for CspInstance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_csp(s)
    }
}
