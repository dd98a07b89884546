use std::fmt;
use std::str::FromStr;

use crate::error::{parse_err, Error, Result};
use crate::structures::{complement_basic, Graph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Color {
    Black,
    White,
}

impl Color {
    pub fn is_black(self) -> bool {
        self == Color::Black
    }

    pub fn from_black(black: bool) -> Self {
        if black {
            Color::Black
        } else {
            Color::White
        }
    }

    fn letter(self) -> char {
        match self {
            Color::Black => 'b',
            Color::White => 'w',
        }
    }
}

/// Ordered color pair `(source, target)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Arc(pub Color, pub Color);

impl Arc {
    pub const BB: Arc = Arc(Color::Black, Color::Black);
    pub const BW: Arc = Arc(Color::Black, Color::White);
    pub const WB: Arc = Arc(Color::White, Color::Black);
    pub const WW: Arc = Arc(Color::White, Color::White);
    pub const ALL: [Arc; 4] = [Arc::BB, Arc::BW, Arc::WB, Arc::WW];

    fn bit(self) -> u8 {
        let s = u8::from(self.0 == Color::White);
        let t = u8::from(self.1 == Color::White);
        1 << (2 * s + t)
    }

    pub fn code(self) -> String {
        format!("{}{}", self.0.letter(), self.1.letter())
    }
}

/// Binary pattern graph: arcs usable across an edge (`plus`) and across a
/// non-edge (`minus`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct PatternGraph {
    plus: u8,
    minus: u8,
}

impl PatternGraph {
    pub fn new(plus: &[Arc], minus: &[Arc]) -> Self {
        PatternGraph {
            plus: plus.iter().map(|a| a.bit()).fold(0, |x, y| x | y),
            minus: minus.iter().map(|a| a.bit()).fold(0, |x, y| x | y),
        }
    }

    /// The pattern with index `i ∈ 0..256`: low nibble `plus`, high nibble
    /// `minus`.
    pub fn from_index(i: u8) -> Self {
        PatternGraph {
            plus: i & 0xf,
            minus: i >> 4,
        }
    }

    pub fn index(self) -> u8 {
        self.plus | self.minus << 4
    }

    pub fn all() -> impl Iterator<Item = PatternGraph> {
        (0..=255u8).map(PatternGraph::from_index)
    }

    pub fn has_plus(self, a: Arc) -> bool {
        self.plus & a.bit() != 0
    }

    pub fn has_minus(self, a: Arc) -> bool {
        self.minus & a.bit() != 0
    }

    /// Whether `(c(x), c(y))` may witness across a pair with the given
    /// edge flag.
    pub fn allows(self, edge: bool, a: Arc) -> bool {
        if edge {
            self.has_plus(a)
        } else {
            self.has_minus(a)
        }
    }

    pub fn is_empty(self) -> bool {
        self.plus == 0 && self.minus == 0
    }

    pub fn plus_arcs(self) -> Vec<Arc> {
        Arc::ALL.into_iter().filter(|&a| self.has_plus(a)).collect()
    }

    pub fn minus_arcs(self) -> Vec<Arc> {
        Arc::ALL.into_iter().filter(|&a| self.has_minus(a)).collect()
    }

    /// Arcs in either set.
    pub fn has_any(self, a: Arc) -> bool {
        self.has_plus(a) || self.has_minus(a)
    }

    pub fn swapped(self) -> Self {
        PatternGraph {
            plus: self.minus,
            minus: self.plus,
        }
    }

    fn leaves(self, c: Color) -> bool {
        Arc::ALL.iter().any(|&a| a.0 == c && self.has_any(a))
    }

    fn remove(&mut self, a: Arc) {
        self.plus &= !a.bit();
        self.minus &= !a.bit();
    }
}

/// Repeatedly drops arcs whose target color has no outgoing arc; a vertex
/// of that color could never itself be witnessed.
pub fn normalize_pattern(p: PatternGraph) -> PatternGraph {
    let mut p = p;
    loop {
        let before = p;
        for a in Arc::ALL {
            if p.has_any(a) && !p.leaves(a.1) {
                p.remove(a);
            }
        }
        if p == before {
            return p;
        }
    }
}

/// Swaps `plus` and `minus` and complements the graph.
pub fn mirror_instance(p: PatternGraph, g: &Graph) -> Result<(PatternGraph, Graph)> {
    Ok((p.swapped(), complement_basic(g)?))
}

fn fmt_set(arcs: &[Arc]) -> String {
    let codes: Vec<String> = arcs.iter().map(|a| a.code()).collect();
    format!("{{{}}}", codes.join(","))
}

impl fmt::Display for PatternGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "pattern plus {} minus {}",
            fmt_set(&self.plus_arcs()),
            fmt_set(&self.minus_arcs())
        )
    }
}

fn parse_set(text: &str) -> Result<Vec<Arc>> {
    let inner = text
        .trim()
        .strip_prefix('{')
        .and_then(|t| t.strip_suffix('}'))
        .ok_or_else(|| parse_err(1, format!("expected `{{...}}`, found `{text}`")))?;
    inner
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            Arc::ALL
                .into_iter()
                .find(|a| a.code() == t)
                .ok_or_else(|| parse_err(1, format!("unknown arc `{t}`")))
        })
        .collect()
}

impl FromStr for PatternGraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let rest = s
            .strip_prefix("pattern")
            .ok_or_else(|| parse_err(1, "expected `pattern plus {..} minus {..}`"))?
            .trim_start();
        let rest = rest
            .strip_prefix("plus")
            .ok_or_else(|| parse_err(1, "expected `plus`"))?;
        let (plus, rest) = rest
            .split_once("minus")
            .ok_or_else(|| parse_err(1, "expected `minus`"))?;
        Ok(PatternGraph::new(&parse_set(plus)?, &parse_set(rest)?))
    }
}
