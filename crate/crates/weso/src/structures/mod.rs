//! Finite structures, graph views and the graph routines used by the
//! saturation and CSP solvers.

mod graph;
mod peeling;
mod structure;

pub use graph::{complement_basic, graph_view, Graph, GraphKind};
pub use peeling::{peel_by_degrees, peel_naive, twin_quotient, Peeling};
pub use structure::{load_structure, Relation, Structure};
