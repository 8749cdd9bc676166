//! Exact-arithmetic computations with finite-dimensional Lie superalgebras:
//! structure-constant algebras and embedded subsuperalgebras, PBW normal
//! forms in the universal enveloping superalgebra, actions on exterior
//! modules, and the split-grading analysis of homogeneous superspace data
//! (g, h).
//!
//! All coefficients are arbitrary-precision rationals; there is no floating
//! point anywhere, so every kernel, rank and verdict is exact and every
//! basis is deterministic for a fixed input.

pub mod algebra;
pub mod catalog;
pub mod exterior;
pub mod grading;
pub mod linalg;
pub mod mask;
pub mod pbw;
pub mod sampling;
pub mod scalar;
pub mod subalgebra;

pub use algebra::{Homogeneous, LieSuperalgebra, Parity, SubspaceReport, ValidationReport};
pub use exterior::{ExteriorField, ExteriorPoly, RankVector, TargetSpace};
pub use grading::{GradingSolutionSpace, SplitVerdict, Verdict};
pub use pbw::{Envelope, OddMultivector, PBWElement, PBWMonomial};
pub use scalar::Scalar;
pub use subalgebra::SubalgebraEmbedding;
