//! Random generators for tests and benchmarks: nonnegative Hermitian matrices
//! of prescribed rank, subspaces, and exact moment sequences of discrete
//! matrix measures.

use num_complex::Complex;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::Result;
use crate::linalg::Subspace;
use crate::matrix::ComplexMatrix;
use crate::scalar::{Real, C};
use crate::sequence::MomentSequence;
use crate::tolerance::Tolerance;

fn normal<T: Real, R: Rng + ?Sized>(rng: &mut R) -> T {
    T::lit(rng.sample::<f64, _>(StandardNormal))
}

pub fn complex_normal<T: Real, R: Rng + ?Sized>(rng: &mut R) -> C<T> {
    Complex::new(normal(rng), normal(rng))
}

/// A matrix with independent standard complex Gaussian entries.
pub fn gaussian_matrix<T: Real, R: Rng + ?Sized>(
    rng: &mut R,
    rows: usize,
    cols: usize,
) -> ComplexMatrix<T> {
    ComplexMatrix::from_fn(rows, cols, |_, _| complex_normal(rng))
}

pub fn gaussian_vector<T: Real, R: Rng + ?Sized>(rng: &mut R, len: usize) -> Vec<C<T>> {
    (0..len).map(|_| complex_normal(rng)).collect()
}

/// `GᴴG` with `G` an `rank x q` Gaussian matrix, so the rank is `rank`
/// almost surely.
pub fn psd_of_rank<T: Real, R: Rng + ?Sized>(
    rng: &mut R,
    q: usize,
    rank: usize,
) -> ComplexMatrix<T> {
    let g = gaussian_matrix(rng, rank, q);
    (&g.adjoint() * &g).hermitian_part()
}

/// A random `d`-dimensional subspace of `C^q`.
pub fn subspace<T: Real, R: Rng + ?Sized>(
    rng: &mut R,
    q: usize,
    d: usize,
    tol: &Tolerance,
) -> Result<Subspace<T>> {
    if d == 0 {
        return Ok(Subspace::zero(q));
    }
    Subspace::from_columns(&gaussian_matrix(rng, q, d), tol)
}

/// A nonnegative Hermitian matrix of rank at most `rank` whose range lies in
/// `v`.
pub fn psd_inside<T: Real, R: Rng + ?Sized>(
    rng: &mut R,
    v: &Subspace<T>,
    rank: usize,
) -> ComplexMatrix<T> {
    let c = gaussian_matrix(rng, v.dim(), rank);
    let b = v.basis() * &c;
    (&b * &b.adjoint()).hermitian_part()
}

/// `Σ_i w_i x_iʲ` for a finite set of atoms `x_i` with nonnegative Hermitian
/// weights `w_i`.
#[derive(Debug, Clone)]
pub struct DiscreteMeasure<T> {
    pub atoms: Vec<(T, ComplexMatrix<T>)>,
}

impl<T: Real> DiscreteMeasure<T> {
    /// The moments `s₀, …, s_{len−1}`.
    pub fn moments(&self, len: usize) -> Result<MomentSequence<T>> {
        let q = self.atoms.first().map_or(0, |(_, w)| w.rows());
        let mut blocks = vec![ComplexMatrix::zeros(q, q); len];
        for (x, w) in &self.atoms {
            let mut power = T::one();
            for block in blocks.iter_mut() {
                *block = &*block + &w.scale(power);
                power = power * *x;
            }
        }
        MomentSequence::new(blocks)
    }
}

/// `atoms` points with rank-`weight_rank` weights. Points are drawn from
/// `[−2, 2]`, or as `α + |ξ|` with `ξ` uniform on `[−2, 2]` when `alpha` is
/// given, so the support lies in `[α, ∞)`.
pub fn discrete_measure<T: Real, R: Rng + ?Sized>(
    rng: &mut R,
    q: usize,
    atoms: usize,
    weight_rank: usize,
    alpha: Option<f64>,
) -> DiscreteMeasure<T> {
    let atoms = (0..atoms)
        .map(|_| {
            let xi: f64 = rng.gen_range(-2.0..=2.0);
            let x = match alpha {
                Some(a) => a + xi.abs(),
                None => xi,
            };
            let w = psd_of_rank(rng, q, weight_rank).scale(T::lit(1.0 / q as f64));
            (T::lit(x), w)
        })
        .collect();
    DiscreteMeasure { atoms }
}
