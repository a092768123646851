//! The Schur complement of a nonnegative Hermitian matrix relative to a
//! subspace.
//!
//! For `A ⪰ 0` and a subspace `V ⊆ C^q`, `S(A, V) = √A · Ψ · √A` where `Ψ`
//! projects onto `{x : √A x ∈ V}`. It is the largest `X` with `0 ⪯ X ⪯ A`
//! and `ran X ⊆ V`, and `(S, A − S)` is the only split of `A` into a part
//! living in `V` and a part whose range meets `V` trivially.

use crate::error::{Error, Result};
use crate::linalg::{
    self, fiber_projector, hermitian_eig, is_psd_or_false, loewner_leq, pinv_hermitian_at,
    psd_sqrt, range_included, range_projector, ranges_intersect_trivially, HermitianEigen,
    Subspace,
};
use crate::matrix::ComplexMatrix;
use crate::scalar::{Real, C};
use crate::tolerance::Tolerance;

/// `S(A, V)` together with the fiber projector and the remainder `A − S`.
#[derive(Debug, Clone)]
pub struct SchurResult<T> {
    pub s: ComplexMatrix<T>,
    /// `Ψ(A, V)`, the projector onto the fiber of `√A` over `V`.
    pub fiber_projector: ComplexMatrix<T>,
    /// `A − S(A, V)`, symmetrized but not clamped.
    pub complement: ComplexMatrix<T>,
}

/// Eigen-decomposition of `a`, failing with `NotPsd` if it has an eigenvalue
/// below the tolerance threshold.
pub(crate) fn require_psd<T: Real>(
    a: &ComplexMatrix<T>,
    tol: &Tolerance,
) -> Result<HermitianEigen<T>> {
    let eig = hermitian_eig(a, tol)?;
    let thr = tol.threshold(eig.spectral_radius());
    match eig.values.first() {
        Some(&lowest) if lowest < -thr => Err(Error::NotPsd {
            eigenvalue: lowest.to_f64().unwrap_or(f64::NAN),
            threshold: thr.to_f64().unwrap_or(f64::NAN),
        }),
        _ => Ok(eig),
    }
}

fn check_dims<T: Real>(a: &ComplexMatrix<T>, v: &Subspace<T>) -> Result<()> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "Schur complement needs a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    if v.ambient_dim() != a.rows() {
        return Err(Error::DimensionMismatch(format!(
            "matrix is {0}x{0} but the subspace lives in C^{1}",
            a.rows(),
            v.ambient_dim()
        )));
    }
    Ok(())
}

/// `S(A, V) = √A Ψ(A, V) √A`.
pub fn schur_complement<T: Real>(
    a: &ComplexMatrix<T>,
    v: &Subspace<T>,
    tol: &Tolerance,
) -> Result<SchurResult<T>> {
    check_dims(a, v)?;
    require_psd(a, tol)?;
    let q = a.rows();
    let a_h = a.hermitian_part();

    if v.dim() == 0 {
        let psi = &ComplexMatrix::identity(q) - &range_projector(&a_h, tol)?;
        return Ok(SchurResult {
            s: ComplexMatrix::zeros(q, q),
            fiber_projector: psi,
            complement: a_h,
        });
    }
    if v.dim() == q {
        return Ok(SchurResult {
            s: a_h,
            fiber_projector: ComplexMatrix::identity(q),
            complement: ComplexMatrix::zeros(q, q),
        });
    }

    let root = psd_sqrt(&a_h, tol)?;
    let psi = fiber_projector(&root, v, tol)?;
    let s = (&(&root * &psi) * &root).hermitian_part();
    let complement = (&a_h - &s).hermitian_part();
    Ok(SchurResult {
        s,
        fiber_projector: psi,
        complement,
    })
}

/// `S(A, V)` from the classical block Schur complement in a unitary basis
/// adapted to `V`: with `U = [V-basis | V⊥-basis]` and `B = Uᴴ A U`,
/// `S = U diag(B₁₁ − B₁₂ B₂₂⁺ B₂₁, 0) Uᴴ`.
pub fn schur_complement_via_basis<T: Real>(
    a: &ComplexMatrix<T>,
    v: &Subspace<T>,
    tol: &Tolerance,
) -> Result<ComplexMatrix<T>> {
    check_dims(a, v)?;
    let eig = require_psd(a, tol)?;
    let q = a.rows();
    let d = v.dim();
    let a_h = a.hermitian_part();
    if d == 0 {
        return Ok(ComplexMatrix::zeros(q, q));
    }
    if d == q {
        return Ok(a_h);
    }

    let u = v.completed_unitary()?;
    let b = &(&u.adjoint() * &a_h) * &u;
    let b11 = b.submatrix(0, 0, d, d);
    let b12 = b.submatrix(0, d, d, q - d);
    let b21 = b.submatrix(d, 0, q - d, d);
    let b22 = b.submatrix(d, d, q - d, q - d);
    let b22_pinv = pinv_hermitian_at(&b22, eig.spectral_radius(), tol)?;
    let block = &b11 - &(&(&b12 * &b22_pinv) * &b21);
    let u1 = v.basis();
    Ok((&(u1 * &block) * &u1.adjoint()).hermitian_part())
}

/// `min_{y ∈ V⊥} (x − y)ᴴ A (x − y)` in closed form.
///
/// With `W` an orthonormal basis of `V⊥` the minimum is
/// `xᴴAx − (WᴴAx)ᴴ (WᴴAW)⁺ (WᴴAx)`.
pub fn variational_value<T: Real>(
    a: &ComplexMatrix<T>,
    v: &Subspace<T>,
    x: &[C<T>],
    tol: &Tolerance,
) -> Result<T> {
    check_dims(a, v)?;
    if x.len() != a.rows() {
        return Err(Error::DimensionMismatch(format!(
            "vector of length {} for a {}x{} matrix",
            x.len(),
            a.rows(),
            a.rows()
        )));
    }
    let eig = require_psd(a, tol)?;
    let a_h = a.hermitian_part();
    let full = a_h.quadratic_form(x);
    let perp = v.orthogonal_complement()?;
    if perp.dim() == 0 {
        return Ok(full.max(T::zero()));
    }
    let w = perp.basis();
    let wax = w.adjoint().mul_vec(&a_h.mul_vec(x));
    let gram = &(&w.adjoint() * &a_h) * w;
    let gram_pinv = pinv_hermitian_at(&gram, eig.spectral_radius(), tol)?;
    let correction = gram_pinv.quadratic_form(&wax);
    Ok((full - correction).max(T::zero()))
}

/// Membership in `L(A, V) = {X : 0 ⪯ X ⪯ A, ran X ⊆ V}`.
pub fn in_lcr<T: Real>(
    a: &ComplexMatrix<T>,
    v: &Subspace<T>,
    x: &ComplexMatrix<T>,
    tol: &Tolerance,
) -> Result<bool> {
    check_dims(a, v)?;
    linalg::check_hermitian(x, tol)?;
    require_psd(a, tol)?;
    if x.shape() != a.shape() {
        return Err(Error::DimensionMismatch("X and A differ in shape".into()));
    }
    Ok(linalg::is_psd(x, tol)? && loewner_leq(x, a, tol)? && range_included(x, v.basis(), tol)?)
}

/// The unique split `A = X + Y` with `ran X ⊆ V` and `ran Y ∩ V = {0}`.
pub fn decompose<T: Real>(
    a: &ComplexMatrix<T>,
    v: &Subspace<T>,
    tol: &Tolerance,
) -> Result<(ComplexMatrix<T>, ComplexMatrix<T>)> {
    let r = schur_complement(a, v, tol)?;
    Ok((r.s, r.complement))
}

/// Whether `(X, Y)` with `X + Y = A` is the split `(S(A, V), A − S(A, V))`,
/// decided by `ran X ⊆ V` and `ran Y ∩ V = {0}`.
///
/// A pair in which `X` or `Y` is not nonnegative Hermitian is not a split in
/// the first place and yields `false`.
pub fn is_unique_split<T: Real>(
    a: &ComplexMatrix<T>,
    v: &Subspace<T>,
    x: &ComplexMatrix<T>,
    y: &ComplexMatrix<T>,
    tol: &Tolerance,
) -> Result<bool> {
    check_dims(a, v)?;
    if x.shape() != a.shape() || y.shape() != a.shape() {
        return Err(Error::DimensionMismatch(
            "X, Y and A differ in shape".into(),
        ));
    }
    let defect = (&(x + y) - a).frobenius_norm();
    if defect > tol.threshold(a.frobenius_norm()) {
        return Err(Error::SplitInvalid {
            defect: defect.to_f64().unwrap_or(f64::NAN),
        });
    }
    if !is_psd_or_false(x, tol) || !is_psd_or_false(y, tol) {
        return Ok(false);
    }
    Ok(range_included(x, v.basis(), tol)? && ranges_intersect_trivially(y, v.basis(), tol)?)
}
