//! Saturation of basic graphs by binary pattern graphs, and the case
//! analysis deciding whether a saturating coloring of weight at least `k`
//! exists.

mod compile;
mod pattern;
mod search;
mod solver;

pub use compile::{compile_pattern_graph, pattern_table};
pub(crate) use compile::{graph_relation, pair_structure, singleton_structure};
pub use pattern::{mirror_instance, normalize_pattern, Arc, Color, PatternGraph};
pub use search::{decide_saturation_unweighted, find_certificate, saturation_cnf, SaturationCertificate};
pub use solver::{solve_saturation_ge, solve_saturation_traced, SatCase, SaturationTrace};
