use std::collections::BTreeMap;

use crate::logic::{parse_formula, Formula};

/// Source text of every library formula, keyed by name.
pub const LIBRARY_SOURCES: &[(&str, &str)] = &[
    (
        "clique",
        "exists>= C . forall x . forall y . ((C(x) & C(y) & x != y) -> adj(x,y))",
    ),
    (
        "vertex-cover",
        "exists<= C . forall x . forall y . (adj(x,y) -> (C(x) | C(y)))",
    ),
    (
        "dominating-set",
        "exists<= D . forall x . exists y . (D(y) & (x = y | adj(x,y)))",
    ),
    (
        "bipartite",
        "exists>= X . forall x . forall y . (adj(x,y) -> (X(x) <-> !X(y)))",
    ),
    (
        "reach",
        "exists<= S . forall x . forall y . ((adj(x,x) -> S(x)) & ((S(x) & adj(x,y)) -> S(y)))",
    ),
    (
        "reach-aaa",
        "exists<= S . forall x . forall y . forall z . \
         (((adj(x,y) & adj(y,z) & adj(x,z)) -> S(x)) & ((S(x) & adj(x,y)) -> S(y)))",
    ),
    (
        "reach-eaa",
        "exists<= S . exists z . forall x . forall y . (S(z) & ((S(x) & adj(x,y)) -> S(y)))",
    ),
    (
        "opposite-neighbor",
        "exists>= X . forall x . exists y . (adj(x,y) & (X(x) <-> !X(y)))",
    ),
    (
        "neighborhood-subset",
        "exists>= S . exists z . forall x . (S(x) -> adj(z,x))",
    ),
    ("loop-cover", "exists<= S . forall x . (adj(x,x) -> S(x))"),
];

/// The library, parsed.
pub fn formula_library() -> BTreeMap<&'static str, Formula> {
    LIBRARY_SOURCES
        .iter()
        .map(|&(name, text)| (name, parse_formula(text).expect("library formulas parse")))
        .collect()
}

pub fn library_formula(name: &str) -> Option<Formula> {
    LIBRARY_SOURCES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| parse_formula(text).expect("library formulas parse"))
}
