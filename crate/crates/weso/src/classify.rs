//! Complexity classification of (mode, quantifier word, structure class)
//! and the solver route chosen for each combination.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::logic::{below_ae, in_e_star_a, in_e_star_a_star, is_subsequence, Mode};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StructureClass {
    Arbitrary,
    Undirected,
    Basic,
}

impl StructureClass {
    pub const ALL: [StructureClass; 3] = [
        StructureClass::Arbitrary,
        StructureClass::Undirected,
        StructureClass::Basic,
    ];

    /// Whether a structure of class `self` also belongs to `other`.
    pub fn within(self, other: StructureClass) -> bool {
        use StructureClass::*;
        matches!(
            (self, other),
            (_, Arbitrary) | (Undirected, Undirected) | (Basic, Undirected) | (Basic, Basic)
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            StructureClass::Arbitrary => "arbitrary",
            StructureClass::Undirected => "undirected",
            StructureClass::Basic => "basic",
        }
    }
}

impl fmt::Display for StructureClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StructureClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "arbitrary" | "directed" | "digraph" => Ok(StructureClass::Arbitrary),
            "undirected" => Ok(StructureClass::Undirected),
            "basic" => Ok(StructureClass::Basic),
            _ => Err(Error::Parse {
                line: 1,
                msg: format!("unknown structure class `{s}`"),
            }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Bucket {
    InParaAC0,
    InParaAC0UpNotInParaAC0,
    ContainsWHard,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Hardness {
    W1,
    W2,
    ParaNP,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ComplexityLabel {
    pub bucket: Bucket,
    pub hardness: Option<Hardness>,
}

impl ComplexityLabel {
    pub const AC0: ComplexityLabel = ComplexityLabel {
        bucket: Bucket::InParaAC0,
        hardness: None,
    };
    pub const AC0_UP: ComplexityLabel = ComplexityLabel {
        bucket: Bucket::InParaAC0UpNotInParaAC0,
        hardness: None,
    };

    pub fn hard(h: Hardness) -> Self {
        ComplexityLabel {
            bucket: Bucket::ContainsWHard,
            hardness: Some(h),
        }
    }

    pub fn is_tractable(&self) -> bool {
        self.bucket != Bucket::ContainsWHard
    }
}

impl fmt::Display for ComplexityLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.hardness {
            None => write!(f, "{:?}", self.bucket),
            Some(h) => write!(f, "{:?}({:?})", self.bucket, h),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Route {
    OneWsat,
    SearchTree,
    SaturationBasic,
    CspBasic,
    OracleOnly,
}

impl Route {
    pub const ALL: [Route; 5] = [
        Route::OneWsat,
        Route::SearchTree,
        Route::SaturationBasic,
        Route::CspBasic,
        Route::OracleOnly,
    ];
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for Route {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Route::ALL
            .into_iter()
            .find(|r| r.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse {
                line: 1,
                msg: format!("unknown route `{s}`"),
            })
    }
}

fn sub(p: &str, q: &str) -> bool {
    is_subsequence(p, q)
}

/// Maps a pattern to its bucket in the complete classification.
pub fn classify_pattern(mode: Mode, word: &str, class: StructureClass) -> ComplexityLabel {
    let basic = class == StructureClass::Basic;
    match mode {
        Mode::Eq => {
            if in_e_star_a(word) {
                ComplexityLabel::AC0
            } else if sub("ae", word) {
                ComplexityLabel::hard(Hardness::W2)
            } else {
                ComplexityLabel::hard(Hardness::W1)
            }
        }
        Mode::Ge => {
            if in_e_star_a(word) || (basic && below_ae(word)) {
                ComplexityLabel::AC0
            } else if (!basic && sub("ae", word)) || (basic && (sub("eae", word) || sub("aee", word))) {
                ComplexityLabel::hard(Hardness::ParaNP)
            } else {
                ComplexityLabel::hard(Hardness::W1)
            }
        }
        Mode::Le => {
            if in_e_star_a(word) || (basic && sub(word, "aa")) {
                ComplexityLabel::AC0
            } else if sub("ae", word) {
                ComplexityLabel::hard(Hardness::W2)
            } else {
                debug_assert!(in_e_star_a_star(word) && sub("aa", word));
                ComplexityLabel::AC0_UP
            }
        }
    }
}

/// Dispatch policy; never picks a constructive route for a hard bucket.
pub fn route_for(mode: Mode, word: &str, class: StructureClass) -> Route {
    let basic = class == StructureClass::Basic;
    if in_e_star_a(word) {
        Route::OneWsat
    } else if basic && mode == Mode::Le && word == "aa" {
        Route::CspBasic
    } else if basic && mode == Mode::Ge && word == "ae" {
        Route::SaturationBasic
    } else if mode == Mode::Le && in_e_star_a_star(word) {
        Route::SearchTree
    } else {
        Route::OracleOnly
    }
}

/// Whether `route` is able to decide the pattern at all (ignoring whether
/// it is the preferred one).
pub fn route_admissible(route: Route, mode: Mode, word: &str, class: StructureClass) -> bool {
    let basic = class == StructureClass::Basic;
    match route {
        Route::OracleOnly => true,
        Route::OneWsat => in_e_star_a(word),
        Route::SearchTree => mode == Mode::Le && in_e_star_a_star(word),
        Route::CspBasic => basic && mode == Mode::Le && word == "aa",
        Route::SaturationBasic => basic && mode == Mode::Ge && word == "ae",
    }
}
