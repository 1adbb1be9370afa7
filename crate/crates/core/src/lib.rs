//! Finite semigroup workbench for the variety ZG and its locality.
//!
//! The crate is organised bottom-up: [`algebra`] provides Cayley tables and
//! power machinery, [`varieties`] decides equational membership, and the
//! remaining modules build word congruences, the category of idempotents,
//! the delay compatibility checker, automata tooling and small-order
//! enumeration on top of them.

pub mod algebra;
pub mod automata;
pub mod category;
pub mod congruence;
pub mod delay;
pub mod enumeration;
pub mod fixtures;
pub mod graph;
pub mod threshold;
pub mod varieties;

pub use algebra::{Alphabet, AlgebraError, CayleyTable, Element, FiniteSemigroup, Letter, Morphism, Witness};
