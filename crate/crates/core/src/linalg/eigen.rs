//! Cyclic Jacobi eigensolver for Hermitian matrices and one-sided Jacobi SVD.
//!
//! Both reduce to the same complex plane rotation: a phase factor that makes
//! the pivot real, followed by the classical symmetric Jacobi rotation.

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::scalar::{Real, C};

const MAX_SWEEPS: usize = 100;

/// Eigen-decomposition `A = U diag(values) Uᴴ` with ascending eigenvalues.
#[derive(Debug, Clone)]
pub struct HermitianEigen<T> {
    pub values: Vec<T>,
    pub vectors: ComplexMatrix<T>,
}

impl<T: Real> HermitianEigen<T> {
    /// Largest absolute eigenvalue.
    pub fn spectral_radius(&self) -> T {
        self.values
            .iter()
            .fold(T::zero(), |acc, v| acc.max(v.abs()))
    }

    /// `U diag(f(λ)) Uᴴ`, re-symmetrized.
    pub fn reconstruct_with(&self, f: impl Fn(T) -> T) -> ComplexMatrix<T> {
        let n = self.values.len();
        let mut out = ComplexMatrix::zeros(n, n);
        for (k, &lambda) in self.values.iter().enumerate() {
            let w = f(lambda);
            if w == T::zero() {
                continue;
            }
            for i in 0..n {
                let ui = self.vectors[(i, k)] * w;
                for j in 0..n {
                    out[(i, j)] = out[(i, j)] + ui * self.vectors[(j, k)].conj();
                }
            }
        }
        out.hermitian_part()
    }
}

/// Thin singular value decomposition from one-sided Jacobi.
///
/// `scaled_left` holds `U Σ` (column `k` has norm `sigma[k]`), so that
/// `M = scaled_left · Vᴴ`. Singular values are sorted descending.
#[derive(Debug, Clone)]
pub struct Svd<T> {
    pub sigma: Vec<T>,
    pub scaled_left: ComplexMatrix<T>,
    pub right: ComplexMatrix<T>,
}

impl<T: Real> Svd<T> {
    pub fn sigma_max(&self) -> T {
        self.sigma.first().copied().unwrap_or_else(T::zero)
    }

    /// Number of singular values strictly above `threshold`.
    pub fn rank_above(&self, threshold: T) -> usize {
        self.sigma.iter().take_while(|&&s| s > threshold).count()
    }

    /// Orthonormal left singular vectors for the leading `k` singular values.
    pub fn left_vectors(&self, k: usize) -> ComplexMatrix<T> {
        let m = self.scaled_left.rows();
        ComplexMatrix::from_fn(m, k, |i, j| self.scaled_left[(i, j)] / self.sigma[j])
    }

    pub fn right_vectors(&self, k: usize) -> ComplexMatrix<T> {
        self.right.submatrix(0, 0, self.right.rows(), k)
    }
}

/// The unitary `G` acting on columns `(p, q)` such that `Gᴴ [[app, apq], [conj apq, aqq]] G`
/// is diagonal. Returned as `(g_pp, g_pq, g_qp, g_qq)`.
fn rotation<T: Real>(app: T, aqq: T, apq: C<T>) -> (C<T>, C<T>, C<T>, C<T>) {
    let g = apq.norm();
    let phase = apq / g;
    let two = T::lit(2.0);
    let tau = (aqq - app) / (two * g);
    let t = if tau == T::zero() {
        T::one()
    } else {
        tau.signum() / (tau.abs() + T::one().hypot(tau))
    };
    let c = T::one() / T::one().hypot(t);
    let s = t * c;
    let back = phase.conj();
    (
        Complex::new(c, T::zero()),
        Complex::new(s, T::zero()),
        back * (-s),
        back * c,
    )
}

fn rotate_cols<T: Real>(m: &mut ComplexMatrix<T>, p: usize, q: usize, g: (C<T>, C<T>, C<T>, C<T>)) {
    let (gpp, gpq, gqp, gqq) = g;
    for k in 0..m.rows() {
        let x = m[(k, p)];
        let y = m[(k, q)];
        m[(k, p)] = x * gpp + y * gqp;
        m[(k, q)] = x * gpq + y * gqq;
    }
}

fn rotate_rows<T: Real>(m: &mut ComplexMatrix<T>, p: usize, q: usize, g: (C<T>, C<T>, C<T>, C<T>)) {
    let (gpp, gpq, gqp, gqq) = g;
    for k in 0..m.cols() {
        let x = m[(p, k)];
        let y = m[(q, k)];
        m[(p, k)] = gpp.conj() * x + gqp.conj() * y;
        m[(q, k)] = gpq.conj() * x + gqq.conj() * y;
    }
}

/// Eigen-decomposition of a matrix that is already exactly Hermitian.
///
/// Callers validate and symmetrize; see [`crate::linalg::hermitian_eig`].
pub(crate) fn jacobi_eigh<T: Real>(a: &ComplexMatrix<T>) -> Result<HermitianEigen<T>> {
    let n = a.rows();
    let mut a = a.clone();
    let mut v = ComplexMatrix::identity(n);
    let norm = a.frobenius_norm();
    // Each rotation leaves roundoff of order eps·‖A‖ in the entries it touches.
    let target = T::lit(n.max(1) as f64) * T::epsilon() * norm;

    let mut converged = n <= 1 || norm == T::zero();
    for _ in 0..MAX_SWEEPS {
        if converged {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                if apq.norm() <= T::min_positive_value() {
                    continue;
                }
                let g = rotation(a[(p, p)].re, a[(q, q)].re, apq);
                rotate_cols(&mut a, p, q, g);
                rotate_rows(&mut a, p, q, g);
                a[(p, q)] = C::zero();
                a[(q, p)] = C::zero();
                a[(p, p)].im = T::zero();
                a[(q, q)].im = T::zero();
                rotate_cols(&mut v, p, q, g);
            }
        }
        let off = off_diagonal_norm(&a);
        converged = off <= target;
    }
    if !converged {
        return Err(Error::NoConvergence {
            what: "Hermitian Jacobi eigensolver",
            sweeps: MAX_SWEEPS,
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        a[(i, i)]
            .re
            .partial_cmp(&a[(j, j)].re)
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = v.select_cols(&order);
    Ok(HermitianEigen { values, vectors })
}

fn off_diagonal_norm<T: Real>(a: &ComplexMatrix<T>) -> T {
    let n = a.rows();
    let mut s = T::zero();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s = s + a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Singular value decomposition of an arbitrary matrix.
pub fn svd<T: Real>(m: &ComplexMatrix<T>) -> Result<Svd<T>> {
    let cols = m.cols();
    let rows = m.rows();
    let mut w = m.clone();
    let mut v = ComplexMatrix::identity(cols);
    // Inner products of length `rows` carry roundoff of order √rows·eps; a
    // tighter orthogonality target can stall on rotations that round to the
    // identity.
    let eps = T::lit(4.0) * T::lit(rows.max(1) as f64).sqrt() * T::epsilon();
    // Columns below this squared norm are numerically zero; rotating them
    // against others only churns roundoff.
    let negligible = (eps * m.frobenius_norm()).powi(2);

    let mut converged = cols <= 1;
    for _ in 0..MAX_SWEEPS {
        if converged {
            break;
        }
        let mut rotated = false;
        for p in 0..cols {
            for q in (p + 1)..cols {
                let mut alpha = T::zero();
                let mut beta = T::zero();
                let mut gamma = C::<T>::zero();
                for k in 0..rows {
                    let x = w[(k, p)];
                    let y = w[(k, q)];
                    alpha = alpha + x.norm_sqr();
                    beta = beta + y.norm_sqr();
                    gamma = gamma + x.conj() * y;
                }
                if alpha <= negligible
                    || beta <= negligible
                    || gamma.norm() <= eps * (alpha * beta).sqrt()
                    || gamma.norm() <= T::min_positive_value()
                {
                    continue;
                }
                rotated = true;
                let g = rotation(alpha, beta, gamma);
                rotate_cols(&mut w, p, q, g);
                rotate_cols(&mut v, p, q, g);
            }
        }
        converged = !rotated;
    }
    if !converged {
        return Err(Error::NoConvergence {
            what: "one-sided Jacobi SVD",
            sweeps: MAX_SWEEPS,
        });
    }

    let norms: Vec<T> = (0..cols)
        .map(|j| {
            (0..rows)
                .fold(T::zero(), |acc, i| acc + w[(i, j)].norm_sqr())
                .sqrt()
        })
        .collect();
    let mut order: Vec<usize> = (0..cols).collect();
    order.sort_by(|&i, &j| {
        norms[j]
            .partial_cmp(&norms[i])
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    Ok(Svd {
        sigma: order.iter().map(|&i| norms[i]).collect(),
        scaled_left: w.select_cols(&order),
        right: v.select_cols(&order),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    type M = ComplexMatrix<f64>;

    #[test]
    fn two_by_two_symmetric() {
        let a = M::from_real_rows(&[&[2.0, 1.0], &[1.0, 2.0]]);
        let e = jacobi_eigh(&a).unwrap();
        assert_relative_eq!(e.values[0], 1.0, epsilon = 1e-14);
        assert_relative_eq!(e.values[1], 3.0, epsilon = 1e-14);
    }

    #[test]
    fn complex_hermitian_reconstructs() {
        let a = M::from_fn(3, 3, |i, j| {
            if i == j {
                Complex::new((i + 1) as f64, 0.0)
            } else if i < j {
                Complex::new(0.5, (j - i) as f64)
            } else {
                Complex::new(0.5, -((i - j) as f64))
            }
        });
        let e = jacobi_eigh(&a).unwrap();
        let back = e.reconstruct_with(|x| x);
        assert!((&back - &a).frobenius_norm() < 1e-13);
        let u = &e.vectors;
        assert!((&(&u.adjoint() * u) - &M::identity(3)).frobenius_norm() < 1e-13);
        assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn svd_of_rank_one() {
        let x = M::from_fn(3, 1, |i, _| Complex::new(i as f64 + 1.0, 1.0));
        let y = M::from_fn(1, 4, |_, j| Complex::new(1.0, -(j as f64)));
        let m = &x * &y;
        let d = svd(&m).unwrap();
        assert_eq!(d.rank_above(1e-10), 1);
        let expected = x.frobenius_norm() * y.frobenius_norm();
        assert_relative_eq!(d.sigma[0], expected, max_relative = 1e-13);
        let back = &d.scaled_left * &d.right.adjoint();
        assert!((&back - &m).frobenius_norm() < 1e-12);
    }

    #[test]
    fn svd_of_wide_and_empty() {
        let m = M::from_real_rows(&[&[1.0, 2.0, 3.0]]);
        let d = svd(&m).unwrap();
        assert_eq!(d.rank_above(1e-12), 1);
        assert_relative_eq!(d.sigma[0], 14f64.sqrt(), max_relative = 1e-14);
        let e = svd(&M::zeros(3, 0)).unwrap();
        assert!(e.sigma.is_empty());
        assert_eq!(e.sigma_max(), 0.0);
    }

    #[test]
    fn converges_on_rank_deficient_gram_matrices() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..2000 {
            let q = rng.gen_range(1..=6);
            let r = rng.gen_range(0..=q);
            let a: M = crate::sample::psd_of_rank(&mut rng, q, r);
            let e = jacobi_eigh(&a).unwrap();
            let root = e.reconstruct_with(|l| l.max(0.0).sqrt());
            let d = svd(&root).unwrap();
            let back = &d.scaled_left * &d.right.adjoint();
            assert!((&back - &root).frobenius_norm() <= 1e-12 * root.frobenius_norm().max(1.0));
        }
    }
}
