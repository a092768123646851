//! Tolerance-aware Hermitian and PSD primitives.
//!
//! Every rank, definiteness and inclusion decision goes through a
//! [`Tolerance`], so the predicates here agree with each other on the same
//! operand.

mod eigen;
mod subspace;

pub use eigen::{svd, HermitianEigen, Svd};
pub use subspace::Subspace;

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::scalar::{Real, C};
use crate::tolerance::Tolerance;

fn to_f64<T: Real>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

fn require_square<T: Real>(a: &ComplexMatrix<T>, what: &str) -> Result<()> {
    if a.is_square() {
        Ok(())
    } else {
        Err(Error::DimensionMismatch(format!(
            "{what} needs a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )))
    }
}

/// Fails with `NotHermitian` unless `‖A − Aᴴ‖_F ≤ tol · max(1, ‖A‖_F)`.
pub fn check_hermitian<T: Real>(a: &ComplexMatrix<T>, tol: &Tolerance) -> Result<()> {
    check_hermitian_at(a, T::zero(), tol)
}

/// [`check_hermitian`] with the threshold taken at `max(scale, ‖A‖_F)`, for
/// residuals whose roundoff is set by the data they were computed from.
pub(crate) fn check_hermitian_at<T: Real>(
    a: &ComplexMatrix<T>,
    scale: T,
    tol: &Tolerance,
) -> Result<()> {
    require_square(a, "Hermitian check")?;
    let asym = (a - &a.adjoint()).frobenius_norm();
    let threshold = tol.threshold(scale.max(a.frobenius_norm()));
    if asym <= threshold {
        Ok(())
    } else {
        Err(Error::NotHermitian {
            asymmetry: to_f64(asym),
            threshold: to_f64(threshold),
        })
    }
}

pub fn is_hermitian<T: Real>(a: &ComplexMatrix<T>, tol: &Tolerance) -> bool {
    check_hermitian(a, tol).is_ok()
}

pub(crate) fn is_hermitian_at<T: Real>(a: &ComplexMatrix<T>, scale: T, tol: &Tolerance) -> bool {
    check_hermitian_at(a, scale, tol).is_ok()
}

/// Eigenvalues (ascending) and a unitary eigenvector matrix of a Hermitian matrix.
///
/// The input is replaced by its Hermitian part before the Jacobi sweeps.
pub fn hermitian_eig<T: Real>(a: &ComplexMatrix<T>, tol: &Tolerance) -> Result<HermitianEigen<T>> {
    hermitian_eig_at(a, T::zero(), tol)
}

pub(crate) fn hermitian_eig_at<T: Real>(
    a: &ComplexMatrix<T>,
    scale: T,
    tol: &Tolerance,
) -> Result<HermitianEigen<T>> {
    check_hermitian_at(a, scale, tol)?;
    eigen::jacobi_eigh(&a.hermitian_part())
}

/// Largest singular value.
pub fn spectral_norm<T: Real>(a: &ComplexMatrix<T>) -> Result<T> {
    Ok(svd(a)?.sigma_max())
}

/// The nonnegative Hermitian square root.
///
/// Eigenvalues in `[-thr, thr]` are treated as zero, where `thr` is the
/// tolerance threshold at the matrix's spectral scale; anything below `-thr`
/// is rejected.
pub fn psd_sqrt<T: Real>(a: &ComplexMatrix<T>, tol: &Tolerance) -> Result<ComplexMatrix<T>> {
    let eig = hermitian_eig(a, tol)?;
    let thr = tol.threshold(eig.spectral_radius());
    if let Some(&lowest) = eig.values.first() {
        if lowest < -thr {
            return Err(Error::NotPsd {
                eigenvalue: to_f64(lowest),
                threshold: to_f64(thr),
            });
        }
    }
    Ok(eig.reconstruct_with(|l| if l > thr { l.sqrt() } else { T::zero() }))
}

/// The matrix with eigenvalues in `[-thr, 0)` raised to zero, where `thr` is
/// the threshold at `max(scale, ρ(A))`. Anything further below is `NotPsd`.
pub(crate) fn psd_clamp_at<T: Real>(
    a: &ComplexMatrix<T>,
    scale: T,
    tol: &Tolerance,
) -> Result<ComplexMatrix<T>> {
    let eig = hermitian_eig_at(a, scale, tol)?;
    let thr = tol.threshold(scale.max(eig.spectral_radius()));
    if let Some(&lowest) = eig.values.first() {
        if lowest < -thr {
            return Err(Error::NotPsd {
                eigenvalue: to_f64(lowest),
                threshold: to_f64(thr),
            });
        }
        if lowest >= T::zero() {
            return Ok(a.hermitian_part());
        }
    }
    Ok(eig.reconstruct_with(|l| l.max(T::zero())))
}

/// Moore–Penrose inverse.
///
/// Hermitian inputs go through the eigen-decomposition, everything else
/// through the SVD. Only spectral values above the tolerance threshold are
/// inverted.
pub fn pinv<T: Real>(a: &ComplexMatrix<T>, tol: &Tolerance) -> Result<ComplexMatrix<T>> {
    if a.is_square() && is_hermitian(a, tol) {
        let eig = eigen::jacobi_eigh(&a.hermitian_part())?;
        let thr = tol.threshold(eig.spectral_radius());
        return Ok(eig.reconstruct_with(|l| if l.abs() > thr { l.recip() } else { T::zero() }));
    }
    let d = svd(a)?;
    let rank = d.rank_above(tol.threshold(d.sigma_max()));
    // A⁺ = Σ v_k w_kᴴ / σ_k² with w_k = σ_k u_k.
    let mut x = ComplexMatrix::zeros(a.cols(), a.rows());
    for k in 0..rank {
        let w = d.sigma[k] * d.sigma[k];
        for i in 0..a.cols() {
            let vi = d.right[(i, k)] / w;
            for j in 0..a.rows() {
                x[(i, j)] = x[(i, j)] + vi * d.scaled_left[(j, k)].conj();
            }
        }
    }
    Ok(x)
}

/// Moore–Penrose inverse of a Hermitian matrix with the rank decided at
/// `tol.threshold(scale)` rather than at the matrix's own spectral radius.
pub(crate) fn pinv_hermitian_at<T: Real>(
    a: &ComplexMatrix<T>,
    scale: T,
    tol: &Tolerance,
) -> Result<ComplexMatrix<T>> {
    check_hermitian(a, tol)?;
    let eig = eigen::jacobi_eigh(&a.hermitian_part())?;
    let thr = tol.threshold(scale.max(eig.spectral_radius()));
    Ok(eig.reconstruct_with(|l| if l.abs() > thr { l.recip() } else { T::zero() }))
}

/// Orthonormal basis of the column space, with the numerical rank decided at
/// `tol.threshold(max(scale, σ_max))`.
pub(crate) fn range_basis_at<T: Real>(
    m: &ComplexMatrix<T>,
    scale: Option<T>,
    tol: &Tolerance,
) -> Result<ComplexMatrix<T>> {
    if m.cols() == 0 || m.rows() == 0 {
        return Ok(ComplexMatrix::zeros(m.rows(), 0));
    }
    if m.is_square() && is_hermitian_at(m, scale.unwrap_or_else(T::zero), tol) {
        let eig = eigen::jacobi_eigh(&m.hermitian_part())?;
        let rho = eig.spectral_radius();
        let thr = tol.threshold(scale.map_or(rho, |s| s.max(rho)));
        let mut idx: Vec<usize> = (0..eig.values.len())
            .filter(|&k| eig.values[k].abs() > thr)
            .collect();
        // Largest magnitude first, for a stable column order.
        idx.sort_by(|&i, &j| {
            eig.values[j]
                .abs()
                .partial_cmp(&eig.values[i].abs())
                .unwrap_or(std::cmp::Ordering::Equal)
        });
        return Ok(eig.vectors.select_cols(&idx));
    }
    let d = svd(m)?;
    let top = d.sigma_max();
    let rank = d.rank_above(tol.threshold(scale.map_or(top, |s| s.max(top))));
    Ok(d.left_vectors(rank))
}

/// Orthonormal basis of `ran M`.
pub fn range_basis<T: Real>(m: &ComplexMatrix<T>, tol: &Tolerance) -> Result<ComplexMatrix<T>> {
    range_basis_at(m, None, tol)
}

/// Numerical rank.
pub fn numerical_rank<T: Real>(m: &ComplexMatrix<T>, tol: &Tolerance) -> Result<usize> {
    Ok(range_basis(m, tol)?.cols())
}

/// Orthogonal projector onto `ran M`, i.e. `M M⁺`.
///
/// Formed from an orthonormal range basis, which equals `M M⁺` under the same
/// rank decision and is Hermitian by construction.
pub fn range_projector<T: Real>(m: &ComplexMatrix<T>, tol: &Tolerance) -> Result<ComplexMatrix<T>> {
    let b = range_basis(m, tol)?;
    Ok(projector_from_basis(&b))
}

pub(crate) fn projector_from_basis<T: Real>(b: &ComplexMatrix<T>) -> ComplexMatrix<T> {
    (b * &b.adjoint()).hermitian_part()
}

/// Orthonormal basis of `ran M` as a [`Subspace`].
pub fn subspace_from_columns<T: Real>(
    m: &ComplexMatrix<T>,
    tol: &Tolerance,
) -> Result<Subspace<T>> {
    Subspace::from_columns(m, tol)
}

/// Orthogonal projector onto the fiber `{x : M x ∈ V}` for a `q x p` matrix `M`.
///
/// Computed as `I − N⁺N` with `N = (I − P_V) M`; the rank of `N` is decided at
/// the scale of `M`, since `N` is a residual of it.
pub fn fiber_projector<T: Real>(
    m: &ComplexMatrix<T>,
    v: &Subspace<T>,
    tol: &Tolerance,
) -> Result<ComplexMatrix<T>> {
    if v.ambient_dim() != m.rows() {
        return Err(Error::DimensionMismatch(format!(
            "subspace lives in C^{} but the matrix has {} rows",
            v.ambient_dim(),
            m.rows()
        )));
    }
    let p = m.cols();
    let b = v.basis();
    let n = m - &(b * &(&b.adjoint() * m));
    let dm = svd(m)?;
    let thr = tol.threshold(dm.sigma_max());
    let dn = svd(&n)?;
    let rank = dn.rank_above(thr);
    let row_space = dn.right_vectors(rank);
    Ok(&ComplexMatrix::identity(p) - &projector_from_basis(&row_space))
}

/// `A ⪰ 0` up to tolerance: every eigenvalue is at least `-thr`.
pub fn is_psd<T: Real>(a: &ComplexMatrix<T>, tol: &Tolerance) -> Result<bool> {
    is_psd_at(a, T::zero(), tol)
}

/// [`is_psd`] with the threshold taken at `max(scale, ρ(A))`.
pub(crate) fn is_psd_at<T: Real>(a: &ComplexMatrix<T>, scale: T, tol: &Tolerance) -> Result<bool> {
    let eig = hermitian_eig_at(a, scale, tol)?;
    let thr = tol.threshold(scale.max(eig.spectral_radius()));
    Ok(eig.values.first().is_none_or(|&l| l >= -thr))
}

/// Like [`is_psd`], but a non-Hermitian or non-square input is simply "no".
pub fn is_psd_or_false<T: Real>(a: &ComplexMatrix<T>, tol: &Tolerance) -> bool {
    a.is_square() && is_psd(a, tol).unwrap_or(false)
}

/// `A ⪯ B` in the Loewner order.
///
/// The threshold scales with the larger spectral radius of `A` and `B`, so a
/// small difference of two large matrices is judged at their own scale.
pub fn loewner_leq<T: Real>(
    a: &ComplexMatrix<T>,
    b: &ComplexMatrix<T>,
    tol: &Tolerance,
) -> Result<bool> {
    if a.shape() != b.shape() {
        return Err(Error::DimensionMismatch(format!(
            "Loewner comparison of {}x{} and {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    let ea = hermitian_eig(a, tol)?;
    let eb = hermitian_eig(b, tol)?;
    let diff = eigen::jacobi_eigh(&(b - a).hermitian_part())?;
    let scale = ea.spectral_radius().max(eb.spectral_radius());
    let thr = tol.threshold(scale);
    Ok(diff.values.first().is_none_or(|&l| l >= -thr))
}

/// `ran B ⊆ ran A`: `‖(I − P_{ran A}) B‖_F ≤ tol · max(1, ‖B‖_F)`.
pub fn range_included<T: Real>(
    b: &ComplexMatrix<T>,
    a: &ComplexMatrix<T>,
    tol: &Tolerance,
) -> Result<bool> {
    range_included_at(b, a, None, tol)
}

/// [`range_included`] with the rank of `A` and the residual judged at
/// `scale` (defaulting to the operands' own sizes).
pub(crate) fn range_included_at<T: Real>(
    b: &ComplexMatrix<T>,
    a: &ComplexMatrix<T>,
    scale: Option<T>,
    tol: &Tolerance,
) -> Result<bool> {
    if a.rows() != b.rows() {
        return Err(Error::DimensionMismatch(format!(
            "range inclusion between C^{} and C^{}",
            b.rows(),
            a.rows()
        )));
    }
    let basis = range_basis_at(a, scale, tol)?;
    let residual = b - &(&basis * &(&basis.adjoint() * b));
    let size = scale.map_or(b.frobenius_norm(), |s| s.max(b.frobenius_norm()));
    Ok(residual.frobenius_norm() <= tol.threshold(size))
}

/// `ran A ∩ ran B = {0}`, decided by rank additivity.
///
/// The ranks are taken of orthonormal range bases, so the test of
/// `rank [Q_A | Q_B] = rank Q_A + rank Q_B` depends only on principal angles
/// and not on how the columns of `A` and `B` are scaled.
pub fn ranges_intersect_trivially<T: Real>(
    a: &ComplexMatrix<T>,
    b: &ComplexMatrix<T>,
    tol: &Tolerance,
) -> Result<bool> {
    ranges_intersect_trivially_at(a, b, None, tol)
}

/// [`ranges_intersect_trivially`] with both ranks decided at `scale`.
pub(crate) fn ranges_intersect_trivially_at<T: Real>(
    a: &ComplexMatrix<T>,
    b: &ComplexMatrix<T>,
    scale: Option<T>,
    tol: &Tolerance,
) -> Result<bool> {
    if a.rows() != b.rows() {
        return Err(Error::DimensionMismatch(format!(
            "range intersection between C^{} and C^{}",
            a.rows(),
            b.rows()
        )));
    }
    let qa = range_basis_at(a, scale, tol)?;
    let qb = range_basis_at(b, scale, tol)?;
    if qa.cols() == 0 || qb.cols() == 0 {
        return Ok(true);
    }
    if qa.cols() + qb.cols() > a.rows() {
        return Ok(false);
    }
    let joint = svd(&qa.hstack(&qb)?)?;
    let rank = joint.rank_above(tol.threshold(joint.sigma_max()));
    Ok(rank == qa.cols() + qb.cols())
}

/// Euclidean distance from `x` to the subspace `V`.
pub fn distance_to_subspace<T: Real>(x: &[C<T>], v: &Subspace<T>) -> T {
    let b = v.basis();
    let coeff = b.adjoint().mul_vec(x);
    let proj = b.mul_vec(&coeff);
    x.iter()
        .zip(&proj)
        .fold(T::zero(), |acc, (a, p)| acc + (*a - *p).norm_sqr())
        .sqrt()
}
