//! Matched-reach instances, the three reachability reductions, and a
//! library of named formulas.

mod library;
mod mreach;
mod reductions;

pub use library::{formula_library, library_formula, LIBRARY_SOURCES};
pub use mreach::{gen_matched_reach, parse_mreach, MatchedReachInstance, Target};
pub use reductions::{reduce_reach_aa, reduce_reach_aaa, reduce_reach_eaa};
