//! Block Hankel machinery for truncated matricial Hamburger moment sequences.
//!
//! For `s = (s₀, …, s₂ₙ)` the predictor `Θₙ = z_{n,2n−1} H_{n−1}⁺ y_{n,2n−1}`
//! and the residual `Lₙ = s₂ₙ − Θₙ` drive everything: `s` is Hankel
//! nonnegative definite iff `Hₙ ⪰ 0`, the admissible last blocks form the
//! interval `[Θₙ, s₂ₙ]`, and the extendable ones form `[Θₙ, Rₙ]` with
//! `Rₙ = Θₙ + S(Lₙ, ran Lₙ₋₁)`.

use crate::ando::schur_complement;
use crate::error::{Error, Result};
use crate::linalg::{
    check_hermitian, is_hermitian, is_hermitian_at, is_psd_at, is_psd_or_false, loewner_leq, pinv,
    psd_clamp_at, range_included_at, ranges_intersect_trivially_at, Subspace,
};
use crate::matrix::ComplexMatrix;
use crate::scalar::Real;
use crate::sequence::MomentSequence;
use crate::tolerance::Tolerance;

/// Which upper end of the extension interval to test against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    /// The given last block: membership in the nonnegative definite extensions.
    Given,
    /// The canonical upper bound `R`: membership in the extendable extensions.
    Canonical,
}

/// The three conditions that characterize class equivalence, reported
/// separately.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassTest {
    /// All blocks but the last agree.
    pub leading_equal: bool,
    /// `r_last − R ⪰ 0`.
    pub remainder_psd: bool,
    /// `ran(r_last − R)` meets the range of the previous residual only in zero.
    pub ranges_trivial: bool,
    /// Whether both sequences have the same canonical representative, when
    /// `r` is itself nonnegative definite and that comparison is meaningful.
    pub canonical_agrees: Option<bool>,
}

impl ClassTest {
    pub fn holds(&self) -> bool {
        self.leading_equal && self.remainder_psd && self.ranges_trivial
    }
}

/// Relative slack, in units of the tolerance, when comparing two canonical
/// representatives computed along different routes.
pub(crate) const CROSS_CHECK_FACTOR: f64 = 1e2;

pub fn block_hankel<T: Real>(s: &MomentSequence<T>, n: usize) -> Result<ComplexMatrix<T>> {
    s.block_hankel(n)
}

pub fn y_block<T: Real>(s: &MomentSequence<T>, l: usize, m: usize) -> Result<ComplexMatrix<T>> {
    s.y_block(l, m)
}

pub fn z_block<T: Real>(s: &MomentSequence<T>, l: usize, m: usize) -> Result<ComplexMatrix<T>> {
    s.z_block(l, m)
}

/// `Θₙ = z_{n,2n−1} H_{n−1}⁺ y_{n,2n−1}`, with `Θ₀ = 0`.
///
/// Defined for every sequence reaching `s_{2n−1}`; nothing is assumed about
/// definiteness, so the result need not be Hermitian.
pub fn theta<T: Real>(
    s: &MomentSequence<T>,
    n: usize,
    tol: &Tolerance,
) -> Result<ComplexMatrix<T>> {
    if n == 0 {
        return Ok(ComplexMatrix::zeros(s.q(), s.q()));
    }
    let h = s.block_hankel(n - 1)?;
    let y = s.y_block(n, 2 * n - 1)?;
    let z = s.z_block(n, 2 * n - 1)?;
    Ok(&(&z * &pinv(&h, tol)?) * &y)
}

/// `Lₙ = s₂ₙ − Θₙ`.
pub fn l_matrix<T: Real>(
    s: &MomentSequence<T>,
    n: usize,
    tol: &Tolerance,
) -> Result<ComplexMatrix<T>> {
    let last = s.block(2 * n)?;
    Ok(last - &theta(s, n, tol)?)
}

fn require_odd<T: Real>(s: &MomentSequence<T>) -> Result<usize> {
    if s.len() % 2 == 1 {
        Ok(s.last_index() / 2)
    } else {
        Err(Error::OddOrderUnsupported { len: s.len() })
    }
}

/// `Hₙ ⪰ 0` for a sequence `s₀, …, s₂ₙ`.
pub fn is_hnnd<T: Real>(s: &MomentSequence<T>, tol: &Tolerance) -> Result<bool> {
    let n = require_odd(s)?;
    Ok(is_psd_or_false(&s.block_hankel(n)?, tol))
}

/// Whether `s` extends to a longer Hankel nonnegative definite sequence.
///
/// Odd length `2n + 1`: the prefix `s₀, …, s₂ₙ₋₁` is extendable, `Lₙ ⪰ 0`
/// and `ran Lₙ ⊆ ran Lₙ₋₁`. Even length `2n`: every block is Hermitian,
/// `Hₙ₋₁ ⪰ 0` and `ran y_{n,2n−1} ⊆ ran Hₙ₋₁`, which is what it takes for some
/// `s₂ₙ` to make `Hₙ ⪰ 0`.
pub fn is_hnnde<T: Real>(s: &MomentSequence<T>, tol: &Tolerance) -> Result<bool> {
    let scale = s.scale();
    if s.len().is_multiple_of(2) {
        let n = s.len() / 2;
        if !s.blocks().iter().all(|b| is_hermitian(b, tol)) {
            return Ok(false);
        }
        let h = s.block_hankel(n - 1)?.hermitian_part();
        if !is_psd_at(&h, scale, tol)? {
            return Ok(false);
        }
        return range_included_at(&s.y_block(n, 2 * n - 1)?, &h, Some(scale), tol);
    }
    let n = s.last_index() / 2;
    if n == 0 {
        return Ok(is_psd_or_false(s.block(0)?, tol));
    }
    if !is_hnnde(&s.truncate(2 * n)?, tol)? {
        return Ok(false);
    }
    let l = l_matrix(s, n, tol)?;
    if !is_hermitian_at(&l, scale, tol) || !is_psd_at(&l, scale, tol)? {
        return Ok(false);
    }
    let l_prev = l_matrix(s, n - 1, tol)?;
    range_included_at(
        &l.hermitian_part(),
        &l_prev.hermitian_part(),
        Some(scale),
        tol,
    )
}

/// `Θₙ`, `Lₙ` and `Lₙ₋₁` of a sequence known to be nonnegative definite,
/// symmetrized and with `Lₙ` clamped onto the cone.
struct Residuals<T> {
    theta: ComplexMatrix<T>,
    l: ComplexMatrix<T>,
    l_prev: ComplexMatrix<T>,
}

fn residuals<T: Real>(s: &MomentSequence<T>, n: usize, tol: &Tolerance) -> Result<Residuals<T>> {
    let scale = s.scale();
    let theta = theta(s, n, tol)?.hermitian_part();
    let l = psd_clamp_at(&(&s.block(2 * n)?.hermitian_part() - &theta), scale, tol)?;
    let l_prev = l_matrix(s, n - 1, tol)?.hermitian_part();
    Ok(Residuals { theta, l, l_prev })
}

/// `Rₙ = Θₙ + S(Lₙ, ran Lₙ₋₁)`, and `R₀ = s₀`.
pub fn r_upper<T: Real>(
    s: &MomentSequence<T>,
    n: usize,
    tol: &Tolerance,
) -> Result<ComplexMatrix<T>> {
    let prefix = s.truncate(2 * n + 1)?;
    if !is_hnnd(&prefix, tol)? {
        return Err(Error::NotHnnd);
    }
    if n == 0 {
        return Ok(s.block(0)?.hermitian_part());
    }
    let r = residuals(&prefix, n, tol)?;
    let v = Subspace::from_columns_at(&r.l_prev, prefix.scale(), tol)?;
    let sc = schur_complement(&r.l, &v, tol)?;
    Ok((&r.theta + &sc.s).hermitian_part())
}

/// The sequence with its last block replaced by `Rₙ`: the unique extendable
/// member of the class of `s`.
pub fn canonical_rep<T: Real>(s: &MomentSequence<T>, tol: &Tolerance) -> Result<MomentSequence<T>> {
    let n = require_odd(s)?;
    s.with_last(r_upper(s, n, tol)?)
}

/// Whether `t` lies in `[Θₙ, s₂ₙ]` (`Bound::Given`) or `[Θₙ, Rₙ]`
/// (`Bound::Canonical`).
pub fn in_extension_interval<T: Real>(
    s: &MomentSequence<T>,
    t: &ComplexMatrix<T>,
    bound: Bound,
    tol: &Tolerance,
) -> Result<bool> {
    let (lower, upper) = extension_interval(s, bound, tol)?;
    if t.shape() != lower.shape() {
        return Err(Error::DimensionMismatch(format!(
            "candidate block is {}x{}, sequence has {q}x{q} blocks",
            t.rows(),
            t.cols(),
            q = s.q()
        )));
    }
    check_hermitian(t, tol)?;
    Ok(loewner_leq(&lower, t, tol)? && loewner_leq(t, &upper, tol)?)
}

/// The endpoints `(Θₙ, s₂ₙ)` or `(Θₙ, Rₙ)`.
pub fn extension_interval<T: Real>(
    s: &MomentSequence<T>,
    bound: Bound,
    tol: &Tolerance,
) -> Result<(ComplexMatrix<T>, ComplexMatrix<T>)> {
    let n = require_odd(s)?;
    if !is_hnnd(s, tol)? {
        return Err(Error::NotHnnd);
    }
    let lower = theta(s, n, tol)?.hermitian_part();
    let upper = match bound {
        Bound::Given => s.last().hermitian_part(),
        Bound::Canonical => r_upper(s, n, tol)?,
    };
    Ok((lower, upper))
}

fn check_same_shape<T: Real>(s: &MomentSequence<T>, r: &MomentSequence<T>) -> Result<()> {
    if s.len() != r.len() || s.q() != r.q() {
        return Err(Error::ShapeMismatch(format!(
            "{} blocks of size {} vs {} blocks of size {}",
            s.len(),
            s.q(),
            r.len(),
            r.q()
        )));
    }
    Ok(())
}

/// The class-equivalence conditions for `r` against a nonnegative definite
/// `s = (s₀, …, s₂ₙ)`, `n ≥ 1`.
pub fn same_class_detail<T: Real>(
    s: &MomentSequence<T>,
    r: &MomentSequence<T>,
    tol: &Tolerance,
) -> Result<ClassTest> {
    check_same_shape(s, r)?;
    let n = require_odd(s)?;
    if n == 0 {
        return Err(Error::TooShort {
            needed: 3,
            got: s.len(),
        });
    }
    if !is_hnnd(s, tol)? {
        return Err(Error::NotHnnd);
    }
    let scale = s.scale().max(r.scale());
    let leading_equal = s.leading_blocks_close(r, 2 * n, tol.eps_rel());
    let big_r = r_upper(s, n, tol)?;
    let d = r.last() - &big_r;
    let hermitian = is_hermitian_at(&d, scale, tol);
    let remainder_psd = hermitian && is_psd_at(&d, scale, tol)?;
    let d = if hermitian { d.hermitian_part() } else { d };
    let l_prev = l_matrix(s, n - 1, tol)?.hermitian_part();
    let ranges_trivial = ranges_intersect_trivially_at(&d, &l_prev, Some(scale), tol)?;

    let canonical_agrees = if leading_equal && is_hnnd(r, tol)? {
        let cs = big_r;
        let cr = r_upper(r, n, tol)?;
        let slack = T::lit(CROSS_CHECK_FACTOR) * tol.threshold(scale);
        Some((&cs - &cr).frobenius_norm() <= slack)
    } else {
        None
    };
    Ok(ClassTest {
        leading_equal,
        remainder_psd,
        ranges_trivial,
        canonical_agrees,
    })
}

/// Whether `r` belongs to the class of `s`: same leading blocks,
/// `r₂ₙ − Rₙ ⪰ 0` and `ran(r₂ₙ − Rₙ) ∩ ran Lₙ₋₁ = {0}`.
pub fn same_class<T: Real>(
    s: &MomentSequence<T>,
    r: &MomentSequence<T>,
    tol: &Tolerance,
) -> Result<bool> {
    Ok(same_class_detail(s, r, tol)?.holds())
}

/// Everything the classification of an odd-length sequence produces.
#[derive(Debug, Clone)]
pub struct HamburgerReport<T> {
    pub is_hnnd: bool,
    pub is_hnnde: bool,
    pub theta: ComplexMatrix<T>,
    pub l: ComplexMatrix<T>,
    /// `Lₙ₋₁`; absent for a single block.
    pub l_prev: Option<ComplexMatrix<T>>,
    /// `Rₙ`; present when the sequence is nonnegative definite.
    pub r: Option<ComplexMatrix<T>>,
    pub canonical: Option<MomentSequence<T>>,
}

impl<T: Real> HamburgerReport<T> {
    pub fn new(s: &MomentSequence<T>, tol: &Tolerance) -> Result<Self> {
        let n = require_odd(s)?;
        let is_hnnd = is_hnnd(s, tol)?;
        let is_hnnde = is_hnnde(s, tol)?;
        let l_prev = if n > 0 {
            Some(l_matrix(s, n - 1, tol)?)
        } else {
            None
        };
        let (r, canonical) = if is_hnnd {
            let r = r_upper(s, n, tol)?;
            let canonical = s.with_last(r.clone())?;
            (Some(r), Some(canonical))
        } else {
            (None, None)
        };
        Ok(Self {
            is_hnnd,
            is_hnnde,
            theta: theta(s, n, tol)?,
            l: l_matrix(s, n, tol)?,
            l_prev,
            r,
            canonical,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type S = MomentSequence<f64>;
    type M = ComplexMatrix<f64>;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn sc(v: &[f64]) -> S {
        S::from_scalars(v).unwrap()
    }

    fn val(m: &M) -> f64 {
        assert_eq!(m.shape(), (1, 1));
        m[(0, 0)].re
    }

    #[test]
    fn theta_examples() {
        assert_eq!(
            theta(&sc(&[1.0, 0.0, 7.0]), 0, &tol()).unwrap(),
            M::zeros(1, 1)
        );
        assert_eq!(val(&theta(&sc(&[1.0, 0.0, 7.0]), 1, &tol()).unwrap()), 0.0);
        assert!((val(&theta(&sc(&[1.0, 1.0, 7.0]), 1, &tol()).unwrap()) - 1.0).abs() < 1e-14);
        assert!(matches!(
            theta(&sc(&[1.0]), 1, &tol()),
            Err(Error::IndexOutOfRange(_))
        ));
    }

    #[test]
    fn l_examples() {
        assert_eq!(
            val(&l_matrix(&sc(&[1.0, 0.0, 1.0]), 1, &tol()).unwrap()),
            1.0
        );
        assert_eq!(
            val(&l_matrix(&sc(&[0.0, 0.0, 1.0]), 1, &tol()).unwrap()),
            1.0
        );
        assert_eq!(
            val(&l_matrix(&sc(&[3.0, 0.0, 1.0]), 0, &tol()).unwrap()),
            3.0
        );
    }

    #[test]
    fn hnnd_examples() {
        assert!(is_hnnd(&sc(&[1.0, 0.0, 1.0]), &tol()).unwrap());
        assert!(!is_hnnd(&sc(&[1.0, 2.0, 1.0]), &tol()).unwrap());
        assert!(is_hnnd(&sc(&[0.0, 0.0, 0.0]), &tol()).unwrap());
        assert!(matches!(
            is_hnnd(&sc(&[1.0, 0.0]), &tol()),
            Err(Error::OddOrderUnsupported { len: 2 })
        ));
    }

    #[test]
    fn hnnde_examples() {
        assert!(is_hnnde(&sc(&[1.0, 0.0, 1.0]), &tol()).unwrap());
        assert!(!is_hnnde(&sc(&[0.0, 0.0, 1.0]), &tol()).unwrap());
        assert!(is_hnnde(&sc(&[1.0]), &tol()).unwrap());
        assert!(is_hnnde(&sc(&[0.0]), &tol()).unwrap());
        assert!(!is_hnnde(&sc(&[-1.0]), &tol()).unwrap());
        // Even lengths: (0, 1) has no completion, (1, 2) has s₂ = 4.
        assert!(!is_hnnde(&sc(&[0.0, 1.0]), &tol()).unwrap());
        assert!(is_hnnde(&sc(&[1.0, 2.0]), &tol()).unwrap());
    }

    #[test]
    fn r_upper_examples() {
        assert_eq!(
            val(&r_upper(&sc(&[2.0, 0.0, 1.0]), 0, &tol()).unwrap()),
            2.0
        );
        assert!((val(&r_upper(&sc(&[1.0, 0.0, 1.0]), 1, &tol()).unwrap()) - 1.0).abs() < 1e-12);
        assert!(val(&r_upper(&sc(&[0.0, 0.0, 1.0]), 1, &tol()).unwrap()).abs() < 1e-12);
        assert_eq!(
            r_upper(&sc(&[1.0, 2.0, 1.0]), 1, &tol()),
            Err(Error::NotHnnd)
        );
    }

    #[test]
    fn canonical_examples() {
        let c = canonical_rep(&sc(&[1.0, 0.0, 1.0]), &tol()).unwrap();
        assert!(c.leading_blocks_close(&sc(&[1.0, 0.0, 1.0]), 3, 1e-12));
        let c = canonical_rep(&sc(&[0.0, 0.0, 1.0]), &tol()).unwrap();
        assert!(c.leading_blocks_close(&sc(&[0.0, 0.0, 0.0]), 3, 1e-12));
        let again = canonical_rep(&c, &tol()).unwrap();
        assert!(again.leading_blocks_close(&c, 3, 1e-12));
    }

    #[test]
    fn interval_examples() {
        let s = sc(&[0.0, 0.0, 1.0]);
        let t = M::scalar(1.0);
        assert!(!in_extension_interval(&s, &t, Bound::Canonical, &tol()).unwrap());
        assert!(in_extension_interval(&s, &t, Bound::Given, &tol()).unwrap());
        let lower = theta(&s, 1, &tol()).unwrap();
        assert!(in_extension_interval(&s, &lower, Bound::Canonical, &tol()).unwrap());
        assert!(in_extension_interval(&s, &lower, Bound::Given, &tol()).unwrap());
        let skew = M::from_real_rows(&[&[0.0, 1.0], &[-1.0, 0.0]]);
        let s2 = S::new(vec![M::identity(2), M::zeros(2, 2), M::identity(2)]).unwrap();
        assert!(matches!(
            in_extension_interval(&s2, &skew, Bound::Given, &tol()),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn class_examples() {
        let s = sc(&[1.0, 0.0, 1.0]);
        assert!(same_class(&s, &s, &tol()).unwrap());
        assert!(same_class(&sc(&[0.0, 0.0, 1.0]), &sc(&[0.0, 0.0, 5.0]), &tol()).unwrap());
        let d = same_class_detail(&s, &sc(&[1.0, 0.0, 2.0]), &tol()).unwrap();
        assert!(d.leading_equal && d.remainder_psd && !d.ranges_trivial);
        assert_eq!(d.canonical_agrees, Some(false));
        assert!(!same_class(&s, &sc(&[1.0, 0.1, 1.0]), &tol()).unwrap());
        assert!(matches!(
            same_class(&s, &sc(&[1.0, 0.0, 1.0, 0.0, 1.0]), &tol()),
            Err(Error::ShapeMismatch(_))
        ));
    }

    #[test]
    fn report_on_scalar_examples() {
        let r = HamburgerReport::new(&sc(&[1.0, 0.0, 1.0]), &tol()).unwrap();
        assert!(r.is_hnnd && r.is_hnnde);
        assert!((val(r.r.as_ref().unwrap()) - 1.0).abs() < 1e-12);
        let r = HamburgerReport::new(&sc(&[0.0, 0.0, 1.0]), &tol()).unwrap();
        assert!(r.is_hnnd && !r.is_hnnde);
        assert!(val(r.canonical.as_ref().unwrap().last()).abs() < 1e-12);
        let r = HamburgerReport::new(&sc(&[1.0, 2.0, 1.0]), &tol()).unwrap();
        assert!(!r.is_hnnd && r.r.is_none());
    }
}
