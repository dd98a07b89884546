use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{parse_err, Error, Result};

/// Layered graph of `k` layers of width `n`; consecutive layers are joined
/// by the perfect matchings `matchings[i]` (vertex `v` of layer `i` to
/// vertex `matchings[i][v]` of layer `i+1`). `s` is in the first layer, `t`
/// in the last. Vertices are 0-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchedReachInstance {
    pub n: usize,
    pub k: usize,
    pub matchings: Vec<Vec<usize>>,
    pub s: usize,
    pub t: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    Yes,
    No,
}

impl FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "yes" => Ok(Target::Yes),
            "no" => Ok(Target::No),
            _ => Err(parse_err(1, format!("target must be `yes` or `no`, found `{s}`"))),
        }
    }
}

impl MatchedReachInstance {
    pub fn new(n: usize, k: usize, matchings: Vec<Vec<usize>>, s: usize, t: usize) -> Result<Self> {
        let inst = MatchedReachInstance { n, k, matchings, s, t };
        inst.validate()?;
        Ok(inst)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Invalid(msg));
        if self.n == 0 || self.k == 0 {
            return bad(format!("width {} and layer count {} must be positive", self.n, self.k));
        }
        if self.matchings.len() != self.k - 1 {
            return bad(format!(
                "{} layers need {} matchings, found {}",
                self.k,
                self.k - 1,
                self.matchings.len()
            ));
        }
        for (i, m) in self.matchings.iter().enumerate() {
            let mut seen = vec![false; self.n];
            if m.len() != self.n || m.iter().any(|&v| v >= self.n || std::mem::replace(&mut seen[v], true)) {
                return bad(format!("matching {i} is not a permutation of 0..{}", self.n));
            }
        }
        if self.s >= self.n || self.t >= self.n {
            return bad(format!("s={} and t={} must lie in 0..{}", self.s, self.t, self.n));
        }
        Ok(())
    }

    /// Last-layer endpoint of the path starting at `s`.
    pub fn endpoint(&self) -> usize {
        self.matchings.iter().fold(self.s, |v, m| m[v])
    }

    pub fn is_yes(&self) -> bool {
        self.endpoint() == self.t
    }

    /// Global index of vertex `v` in layer `layer`.
    pub fn index(&self, layer: usize, v: usize) -> usize {
        layer * self.n + v
    }

    /// Undirected layer edges as global index pairs.
    pub fn layer_edges(&self) -> Vec<(usize, usize)> {
        let mut edges = Vec::with_capacity(self.n * self.matchings.len());
        for (i, m) in self.matchings.iter().enumerate() {
            for (v, &w) in m.iter().enumerate() {
                edges.push((self.index(i, v), self.index(i + 1, w)));
            }
        }
        edges
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }

    /// Every instance of the given width and depth.
    pub fn enumerate(n: usize, k: usize) -> Vec<MatchedReachInstance> {
        let perms = permutations(n);
        let mut out = Vec::new();
        let mut idx = vec![0usize; k.saturating_sub(1)];
        loop {
            let matchings: Vec<Vec<usize>> = idx.iter().map(|&i| perms[i].clone()).collect();
            for s in 0..n {
                for t in 0..n {
                    out.push(MatchedReachInstance {
                        n,
                        k,
                        matchings: matchings.clone(),
                        s,
                        t,
                    });
                }
            }
            let Some(pos) = idx.iter().rposition(|&i| i + 1 < perms.len()) else {
                return out;
            };
            idx[pos] += 1;
            for i in &mut idx[pos + 1..] {
                *i = 0;
            }
        }
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                go(cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Seeded random instance whose answer is `target`.
pub fn gen_matched_reach(n: usize, k: usize, seed: u64, target: Target) -> Result<MatchedReachInstance> {
    if k == 0 || n == 0 {
        return Err(Error::Invalid("width and layer count must be positive".to_string()));
    }
    if target == Target::No && n < 2 {
        return Err(Error::Invalid("a no-instance needs width at least 2".to_string()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let matchings: Vec<Vec<usize>> = (1..k)
        .map(|_| {
            let mut p: Vec<usize> = (0..n).collect();
            p.shuffle(&mut rng);
            p
        })
        .collect();
    let s = rng.gen_range(0..n);
    let end = matchings.iter().fold(s, |v, m| m[v]);
    let t = match target {
        Target::Yes => end,
        Target::No => (end + rng.gen_range(1..n)) % n,
    };
    MatchedReachInstance::new(n, k, matchings, s, t)
}

impl fmt::Display for MatchedReachInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "mreach {} {} {} {}", self.n, self.k, self.s, self.t)?;
        for m in &self.matchings {
            let items: Vec<String> = m.iter().map(usize::to_string).collect();
            writeln!(f, "{}", items.join(" "))?;
        }
        Ok(())
    }
}

/// Reads `mreach <n> <k> <s> <t>` followed by `k-1` permutation lines.
pub fn parse_mreach(text: &str) -> Result<MatchedReachInstance> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "empty matched-reach file"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.first() != Some(&"mreach") || fields.len() != 5 {
        return Err(parse_err(hline, "expected `mreach <n> <k> <s> <t>`"));
    }
    let nums = parse_numbers(&fields[1..], hline)?;
    let mut matchings = Vec::new();
    for (line, l) in lines {
        let fields: Vec<&str> = l.split_whitespace().collect();
        matchings.push(parse_numbers(&fields, line)?);
    }
    MatchedReachInstance::new(nums[0], nums[1], matchings, nums[2], nums[3])
}

fn parse_numbers(fields: &[&str], line: usize) -> Result<Vec<usize>> {
    fields
        .iter()
        .map(|t| {
            t.parse()
                .map_err(|_| parse_err(line, format!("expected a number, found `{t}`")))
        })
        .collect()
}

impl FromStr for MatchedReachInstance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_mreach(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_targets() {
        let yes = MatchedReachInstance::new(2, 2, vec![vec![0, 1]], 0, 0).unwrap();
        assert!(yes.is_yes());
        let no = MatchedReachInstance { t: 1, ..yes };
        assert!(!no.is_yes());
    }

    #[test]
    fn generator_hits_target() {
        for seed in 0..50 {
            for (n, k) in [(2, 1), (4, 3), (5, 6)] {
                let yes = gen_matched_reach(n, k, seed, Target::Yes).unwrap();
                assert!(yes.is_yes());
                let no = gen_matched_reach(n, k, seed, Target::No).unwrap();
                assert!(!no.is_yes());
            }
        }
        assert_eq!(
            gen_matched_reach(4, 3, 9, Target::Yes).unwrap(),
            gen_matched_reach(4, 3, 9, Target::Yes).unwrap()
        );
        assert!(gen_matched_reach(1, 3, 0, Target::No).is_err());
    }

    #[test]
    fn text_roundtrip() {
        let inst = gen_matched_reach(4, 3, 1, Target::No).unwrap();
        assert_eq!(parse_mreach(&inst.to_text()).unwrap(), inst);
        assert!(matches!(
            parse_mreach("mreach 2 2 0\n0 1\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(parse_mreach("mreach 2 2 0 0\n0 0\n"), Err(Error::Invalid(_))));
        assert!(matches!(parse_mreach("mreach 2 3 0 0\n0 1\n"), Err(Error::Invalid(_))));
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(MatchedReachInstance::enumerate(3, 3).len(), 36 * 9);
        assert_eq!(MatchedReachInstance::enumerate(2, 1).len(), 4);
        let all = MatchedReachInstance::enumerate(3, 2);
        assert_eq!(all.iter().filter(|i| i.is_yes()).count(), 6 * 3);
    }
}
