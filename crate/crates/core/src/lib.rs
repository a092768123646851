//! Subspace-relative Schur complements of nonnegative Hermitian matrices and
//! their application to truncated matricial Hamburger and α-Stieltjes moment
//! sequences.
//!
//! Everything is generic over the real scalar type through [`Real`]; the
//! aliases at the crate root fix it to `f64` or `f32`.

pub mod ando;
pub mod error;
pub mod hamburger;
pub mod linalg;
pub mod matrix;
pub mod sample;
pub mod scalar;
pub mod sequence;
pub mod stieltjes;
pub mod tolerance;

pub use ando::{
    decompose, in_lcr, is_unique_split, schur_complement, schur_complement_via_basis,
    variational_value, SchurResult,
};
pub use error::{Error, Result};
pub use linalg::{HermitianEigen, Subspace};
pub use matrix::ComplexMatrix;
pub use scalar::Real;
pub use sequence::MomentSequence;
pub use tolerance::Tolerance;

pub type Complex64 = num_complex::Complex<f64>;
pub type Matrix = ComplexMatrix<f64>;
pub type Matrix32 = ComplexMatrix<f32>;
pub type Subspace64 = Subspace<f64>;
pub type Sequence = MomentSequence<f64>;
pub type Sequence32 = MomentSequence<f32>;
