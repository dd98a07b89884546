//! Parameterized model checking for weighted existential second-order logic
//! with a single monadic set variable.
//!
//! A formula `exists<= X . forall x . exists y . ψ` is summarized by its head
//! mode and its quantifier word (`ae` here). [`classify`] maps (mode, word,
//! structure class) to a complexity bucket and a solver route; the engine in
//! [`engine`] dispatches instances to the matching constructive algorithm and
//! falls back to brute force ([`oracles`]) when the pattern is hard.

pub mod cardcsp;
pub mod classify;
pub mod cli;
pub mod engine;
pub mod error;
pub mod gadgets;
pub mod logic;
pub mod oracles;
pub mod saturation;
pub mod structures;
pub mod wsat;

pub use error::{Error, Result};
