//! Exact computation of the Lie algebra cohomology of invariant formal
//! vector fields, via truncated (relative) Weil algebras, together with the
//! characteristic-class rings this cohomology produces for foliations on
//! orbifolds.
//!
//! All arithmetic is exact over the rationals. Betti numbers in
//! characteristic zero are field independent (every complex built here has
//! rational structure constants), so the "complex case" tables are computed
//! over Q as well.

pub mod ce;
pub mod charclasses;
pub mod docs;
mod error;
pub mod gca;
pub mod invariants;
pub mod lie;
pub mod linalg;
pub mod repdecomp;
pub mod weil;

pub use error::{CoreError, Result};
pub use linalg::{BettiEntry, BettiTable, ChainComplexSlice, Rat, SparseMatrix};
