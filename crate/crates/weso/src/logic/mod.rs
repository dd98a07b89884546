//! Weighted-ESO formulas: syntax tree, parser, printer, quantifier
//! patterns and matrix evaluation.

mod ast;
mod eval;
mod parser;
mod pattern;

pub use ast::{Expr, Formula, Mode, Quant};
pub use parser::parse_formula;
pub use pattern::{below_ae, extract_pattern, in_e_star_a, in_e_star_a_star, is_subsequence, words_up_to, Pattern};
