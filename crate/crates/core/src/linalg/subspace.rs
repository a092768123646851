use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::scalar::Real;
use crate::tolerance::Tolerance;

use super::{eigen, projector_from_basis, range_basis, range_basis_at};

/// A linear subspace of `C^q`, held as a `q x d` matrix with orthonormal
/// columns. The zero subspace is a `q x 0` basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace<T> {
    basis: ComplexMatrix<T>,
}

impl<T: Real> Subspace<T> {
    pub fn zero(ambient_dim: usize) -> Self {
        Self {
            basis: ComplexMatrix::zeros(ambient_dim, 0),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self {
            basis: ComplexMatrix::identity(ambient_dim),
        }
    }

    /// Span of the columns of `m`, with an orthonormal basis from a
    /// rank-revealing factorization.
    pub fn from_columns(m: &ComplexMatrix<T>, tol: &Tolerance) -> Result<Self> {
        Ok(Self {
            basis: range_basis(m, tol)?,
        })
    }

    /// Span of the columns of `m`, keeping only directions above the
    /// tolerance threshold at `scale`.
    pub(crate) fn from_columns_at(m: &ComplexMatrix<T>, scale: T, tol: &Tolerance) -> Result<Self> {
        Ok(Self {
            basis: range_basis_at(m, Some(scale), tol)?,
        })
    }

    /// Wraps a basis that is already orthonormal, checking `BᴴB = I`.
    pub fn from_orthonormal(basis: ComplexMatrix<T>, tol: &Tolerance) -> Result<Self> {
        let d = basis.cols();
        if d > basis.rows() {
            return Err(Error::DimensionMismatch(format!(
                "{d} basis vectors in C^{}",
                basis.rows()
            )));
        }
        let gram = &basis.adjoint() * &basis;
        let defect = (&gram - &ComplexMatrix::identity(d)).frobenius_norm();
        if defect > tol.threshold(T::one()) * T::lit(d.max(1) as f64) {
            return Err(Error::InvalidMatrix(format!(
                "basis columns are not orthonormal (defect {:e})",
                defect.to_f64().unwrap_or(f64::NAN)
            )));
        }
        Ok(Self { basis })
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &ComplexMatrix<T> {
        &self.basis
    }

    /// Orthogonal projector `P_V`.
    pub fn projector(&self) -> ComplexMatrix<T> {
        projector_from_basis(&self.basis)
    }

    /// Orthonormal basis of `V⊥`, taken from the eigenvectors of `P_V` that
    /// belong to its `q − d` smallest eigenvalues.
    pub fn orthogonal_complement(&self) -> Result<Self> {
        let q = self.ambient_dim();
        let d = self.dim();
        if d == 0 {
            return Ok(Self::full(q));
        }
        if d == q {
            return Ok(Self::zero(q));
        }
        let eig = eigen::jacobi_eigh(&self.projector())?;
        let idx: Vec<usize> = (0..q - d).collect();
        Ok(Self {
            basis: eig.vectors.select_cols(&idx),
        })
    }

    /// A unitary `q x q` matrix whose leading `d` columns are this basis.
    pub fn completed_unitary(&self) -> Result<ComplexMatrix<T>> {
        let complement = self.orthogonal_complement()?;
        self.basis.hstack(complement.basis())
    }
}
