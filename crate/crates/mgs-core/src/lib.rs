//! Exact quiver mutation and maximal green sequences for type-A quivers.
//!
//! The pipeline: recognize type A structurally, split into summands along
//! one-way junctions, embed each irreducible summand as a rooted tree of
//! 3-cycles, build its associated mutation sequence, and concatenate. The
//! permutation and matrix models predict every intermediate state and are
//! checked against direct mutation.

pub mod assoc;
pub mod direct_sum;
pub mod embedding;
pub mod error;
pub mod green;
pub mod matrix;
pub mod matrix_model;
pub mod perm_model;
pub mod quiver;
pub mod type_a;

pub use error::{Error, Result};
pub use matrix::{Color, Entry, ExtMatrix, ExtendedQuiver};
pub use quiver::{MutationSequence, Permutation, Quiver};
