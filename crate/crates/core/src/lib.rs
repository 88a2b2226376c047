//! Combinatorics and representation theory of two-row Δ-Springer varieties,
//! computed with exact arithmetic.
//!
//! Vertices are 1-indexed and the cut line sits after vertex `n - m`.

pub mod actions;
pub mod diagrams;
pub mod error;
pub mod homology;
pub mod linalg;
pub mod number;
pub mod params;
pub mod report;
pub mod specht;
pub mod tensor;

pub use diagrams::{CupDiagram, DeltaWeight, Symbol};
pub use error::{Error, Result};
pub use homology::{HomVector, LBasis, Subset};
pub use number::Rational;
pub use params::{Mode, ShapeParams};
