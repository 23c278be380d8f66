//! Exact computational homological algebra over small Artinian algebras.
//!
//! The crate builds a finite free resolution over a weighted-graded
//! polynomial presentation, specializes it into a finite-dimensional local
//! algebra, tensors with a module and reads off Tor lengths by exact linear
//! algebra. [`paperlab`] assembles the concrete rigidity counterexample and
//! checks every finitely checkable claim about it.

pub mod artin;
pub mod exactla;
pub mod homcx;
pub mod paperlab;
pub mod wpoly;

pub use artin::{
    monomial_square_zero_algebra, AlgebraElement, AlgebraError, ArtinAlgebra, FDModule, Subspace,
};
pub use exactla::{FieldCtx, LinAlgError, Matrix, Scalar};
pub use homcx::{
    compose, homology_at, image_equals_radical, induced_map, specialize_complex,
    tor_from_resolution, AlgebraMatrix, ChainComplex, ComplexError, FreeResolution, Homology,
    ModuleMap, TorReport,
};
pub use wpoly::{Assignment, Degree, PolyError, PolyMatrix, VarTable, WeightedPoly};
