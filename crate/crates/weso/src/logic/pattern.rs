use std::fmt;

use serde::{Deserialize, Serialize};

use super::ast::{Formula, Mode, Quant};

/// Head mode plus quantifier word over `{a, e}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Pattern {
    pub mode: Mode,
    pub word: String,
}

impl Pattern {
    pub fn new(mode: Mode, word: &str) -> Self {
        Pattern {
            mode,
            word: word.to_string(),
        }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, \"{}\")", self.mode, self.word)
    }
}

pub fn extract_pattern(f: &Formula) -> Pattern {
    let word = f
        .prefix
        .iter()
        .map(|(q, _)| match q {
            Quant::Forall => 'a',
            Quant::Exists => 'e',
        })
        .collect();
    Pattern { mode: f.mode, word }
}

/// `p ⪯ q`: `p` arises from `q` by deleting letters.
pub fn is_subsequence(p: &str, q: &str) -> bool {
    let mut it = q.chars();
    p.chars().all(|c| it.any(|d| d == c))
}

/// `p ∈ e* ∪ e*a`, equivalently `p ⪯ e*a`.
pub fn in_e_star_a(p: &str) -> bool {
    let body = p.strip_suffix('a').unwrap_or(p);
    body.chars().all(|c| c == 'e')
}

/// `p ∈ e*a*`.
pub fn in_e_star_a_star(p: &str) -> bool {
    !p.contains("ae")
}

/// `p ⪯ ae`, i.e. `p ∈ {ε, a, e, ae}`.
pub fn below_ae(p: &str) -> bool {
    matches!(p, "" | "a" | "e" | "ae")
}

/// All words over `{a, e}` of length at most `max_len`, shortest first.
pub fn words_up_to(max_len: usize) -> Vec<String> {
    let mut out = vec![String::new()];
    let mut layer = vec![String::new()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * 2);
        for w in &layer {
            next.push(format!("{w}a"));
            next.push(format!("{w}e"));
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}
