//! Cardinality-constraint CSPs: each pair of elements restricts how many
//! of its two members a solution may contain, via one of two count sets.

mod compile;
mod instance;
mod solver;

pub use compile::compile_csp;
pub use instance::{parse_csp, CountSet, CspInstance};
pub use solver::{solve_csp_le, solve_csp_traced, CspCase, CspTrace};
