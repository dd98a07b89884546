//! Weighted CNF satisfiability: grounding of `e*a*` formulas, the closed
//! form for unit CNFs, the bounded search tree for mode `≤`, and an exact
//! backtracking SAT procedure.

mod cnf;
mod ground;
mod solvers;

pub use cnf::{exact_sat, exact_sat_min_true, normalize_clause, parse_wcnf, Clause, Lit, WcnfInstance};
pub use ground::{ground_formula, GroundedInstance};
pub use solvers::{search_levels, solve_1wsat, solve_wsat_le_searchtree, zero_satisfies, Node, SearchStats};
