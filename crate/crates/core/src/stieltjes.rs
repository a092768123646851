//! The α-Stieltjes analogue: sequences whose moments come from measures on
//! `[α, ∞)`.
//!
//! Besides the Hankel matrices of `s`, the conditions involve those of the
//! shifted sequence `s_{α,j} = −α s_j + s_{j+1}`. The residuals `κ_j` and
//! lower endpoints `u_m` interleave the two, with `κ_j = s_j − u_{j−1}`.

use crate::ando::schur_complement;
use crate::error::{Error, Result};
use crate::hamburger::{theta, Bound, ClassTest, CROSS_CHECK_FACTOR};
use crate::linalg::{
    check_hermitian, is_hermitian_at, is_psd_at, is_psd_or_false, loewner_leq, psd_clamp_at,
    range_included_at, ranges_intersect_trivially_at, Subspace,
};
use crate::matrix::ComplexMatrix;
use crate::scalar::Real;
use crate::sequence::MomentSequence;
use crate::tolerance::Tolerance;

/// `(s_{α,0}, …, s_{α,κ−1})`.
pub fn alpha_shift<T: Real>(s: &MomentSequence<T>, alpha: T) -> Result<MomentSequence<T>> {
    s.alpha_shift(alpha)
}

fn scale_of<T: Real>(s: &MomentSequence<T>, alpha: T) -> T {
    let shifted = s.alpha_shift(alpha).map_or(T::zero(), |a| a.scale());
    s.scale().max(shifted)
}

/// Whether `s₀, …, s_m` is α-Stieltjes nonnegative definite.
///
/// `m = 0`: `s₀ ⪰ 0`. `m = 2n`: `Hₙ ⪰ 0` and `H_{α,n−1} ⪰ 0`.
/// `m = 2n + 1`: `Hₙ ⪰ 0` and `H_{α,n} ⪰ 0`.
pub fn is_knnd<T: Real>(s: &MomentSequence<T>, alpha: T, tol: &Tolerance) -> Result<bool> {
    let m = s.last_index();
    if m == 0 {
        return Ok(is_psd_or_false(s.block(0)?, tol));
    }
    let n = m / 2;
    let shifted = s.alpha_shift(alpha)?;
    let shifted_order = if m.is_multiple_of(2) { n - 1 } else { n };
    Ok(is_psd_or_false(&s.block_hankel(n)?, tol)
        && is_psd_or_false(&shifted.block_hankel(shifted_order)?, tol))
}

/// `κ_{2k} = s_{2k} − Θ_k` and `κ_{2k+1} = s_{α,2k} − Θ_{α,k}`.
pub fn kappa<T: Real>(
    s: &MomentSequence<T>,
    alpha: T,
    j: usize,
    tol: &Tolerance,
) -> Result<ComplexMatrix<T>> {
    let sj = s.block(j)?;
    let k = j / 2;
    if j.is_multiple_of(2) {
        return Ok(sj - &theta(s, k, tol)?);
    }
    let shifted = s.truncate(j + 1)?.alpha_shift(alpha)?;
    Ok(shifted.block(2 * k)? - &theta(&shifted, k, tol)?)
}

/// `u_{−1} = 0`, `u_{2k−1} = Θ_k` and `u_{2k} = α s_{2k} + Θ_{α,k}`.
pub fn u_lower<T: Real>(
    s: &MomentSequence<T>,
    alpha: T,
    m: isize,
    tol: &Tolerance,
) -> Result<ComplexMatrix<T>> {
    if m < -1 || m > s.last_index() as isize {
        return Err(Error::IndexOutOfRange(format!(
            "u_{m} for a sequence ending at s_{}",
            s.last_index()
        )));
    }
    if m == -1 {
        return Ok(ComplexMatrix::zeros(s.q(), s.q()));
    }
    let m = m as usize;
    if m % 2 == 1 {
        return theta(s, m.div_ceil(2), tol);
    }
    let k = m / 2;
    let base = s.block(m)?.scale(alpha);
    if k == 0 {
        return Ok(base);
    }
    let shifted = s.truncate(m + 1)?.alpha_shift(alpha)?;
    Ok(&base + &theta(&shifted, k, tol)?)
}

/// Whether `s₀, …, s_m` extends to a longer α-Stieltjes nonnegative definite
/// sequence: `s₀ ⪰ 0` for `m = 0`, otherwise the prefix is extendable,
/// `κ_m ⪰ 0` and `ran κ_m ⊆ ran κ_{m−1}`.
pub fn is_knnde<T: Real>(s: &MomentSequence<T>, alpha: T, tol: &Tolerance) -> Result<bool> {
    let m = s.last_index();
    if m == 0 {
        return Ok(is_psd_or_false(s.block(0)?, tol));
    }
    if !is_knnde(&s.truncate(m)?, alpha, tol)? {
        return Ok(false);
    }
    let scale = scale_of(s, alpha);
    let k = kappa(s, alpha, m, tol)?;
    if !is_hermitian_at(&k, scale, tol) || !is_psd_at(&k, scale, tol)? {
        return Ok(false);
    }
    let k_prev = kappa(s, alpha, m - 1, tol)?;
    range_included_at(
        &k.hermitian_part(),
        &k_prev.hermitian_part(),
        Some(scale),
        tol,
    )
}

/// `R_m = u_{m−1} + S(κ_m, ran κ_{m−1})`, and `R₀ = s₀`.
pub fn r_upper_stieltjes<T: Real>(
    s: &MomentSequence<T>,
    alpha: T,
    m: usize,
    tol: &Tolerance,
) -> Result<ComplexMatrix<T>> {
    let prefix = s.truncate(m + 1)?;
    if !is_knnd(&prefix, alpha, tol)? {
        return Err(Error::NotKnnd);
    }
    if m == 0 {
        return Ok(s.block(0)?.hermitian_part());
    }
    let scale = scale_of(&prefix, alpha);
    let u = u_lower(&prefix, alpha, m as isize - 1, tol)?.hermitian_part();
    let k = psd_clamp_at(&(&prefix.last().hermitian_part() - &u), scale, tol)?;
    let k_prev = kappa(&prefix, alpha, m - 1, tol)?.hermitian_part();
    let v = Subspace::from_columns_at(&k_prev, scale, tol)?;
    let sc = schur_complement(&k, &v, tol)?;
    Ok((&u + &sc.s).hermitian_part())
}

/// The sequence with its last block replaced by `R_m`.
pub fn canonical_rep_stieltjes<T: Real>(
    s: &MomentSequence<T>,
    alpha: T,
    tol: &Tolerance,
) -> Result<MomentSequence<T>> {
    s.with_last(r_upper_stieltjes(s, alpha, s.last_index(), tol)?)
}

/// The endpoints `(u_{m−1}, s_m)` or `(u_{m−1}, R_m)`.
pub fn extension_interval_stieltjes<T: Real>(
    s: &MomentSequence<T>,
    alpha: T,
    bound: Bound,
    tol: &Tolerance,
) -> Result<(ComplexMatrix<T>, ComplexMatrix<T>)> {
    if !is_knnd(s, alpha, tol)? {
        return Err(Error::NotKnnd);
    }
    let m = s.last_index();
    let lower = u_lower(s, alpha, m as isize - 1, tol)?.hermitian_part();
    let upper = match bound {
        Bound::Given => s.last().hermitian_part(),
        Bound::Canonical => r_upper_stieltjes(s, alpha, m, tol)?,
    };
    Ok((lower, upper))
}

/// Whether `t` lies in `[u_{m−1}, s_m]` or `[u_{m−1}, R_m]`.
pub fn in_extension_interval_stieltjes<T: Real>(
    s: &MomentSequence<T>,
    alpha: T,
    t: &ComplexMatrix<T>,
    bound: Bound,
    tol: &Tolerance,
) -> Result<bool> {
    let (lower, upper) = extension_interval_stieltjes(s, alpha, bound, tol)?;
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

/// The class-equivalence conditions for `r` against an α-Stieltjes
/// nonnegative definite `s = (s₀, …, s_m)`, `m ≥ 1`.
pub fn same_class_stieltjes_detail<T: Real>(
    s: &MomentSequence<T>,
    r: &MomentSequence<T>,
    alpha: T,
    tol: &Tolerance,
) -> Result<ClassTest> {
    if s.len() != r.len() || s.q() != r.q() {
        return Err(Error::ShapeMismatch(format!(
            "{} blocks of size {} vs {} blocks of size {}",
            s.len(),
            s.q(),
            r.len(),
            r.q()
        )));
    }
    let m = s.last_index();
    if m == 0 {
        return Err(Error::TooShort { needed: 2, got: 1 });
    }
    if !is_knnd(s, alpha, tol)? {
        return Err(Error::NotKnnd);
    }
    let scale = scale_of(s, alpha).max(scale_of(r, alpha));
    let leading_equal = s.leading_blocks_close(r, m, tol.eps_rel());
    let big_r = r_upper_stieltjes(s, alpha, m, tol)?;
    let d = r.last() - &big_r;
    let hermitian = is_hermitian_at(&d, scale, tol);
    let remainder_psd = hermitian && is_psd_at(&d, scale, tol)?;
    let d = if hermitian { d.hermitian_part() } else { d };
    let k_prev = kappa(s, alpha, m - 1, tol)?.hermitian_part();
    let ranges_trivial = ranges_intersect_trivially_at(&d, &k_prev, Some(scale), tol)?;

    let canonical_agrees = if leading_equal && is_knnd(r, alpha, tol)? {
        let cr = r_upper_stieltjes(r, alpha, m, tol)?;
        let slack = T::lit(CROSS_CHECK_FACTOR) * tol.threshold(scale);
        Some((&big_r - &cr).frobenius_norm() <= slack)
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

pub fn same_class_stieltjes<T: Real>(
    s: &MomentSequence<T>,
    r: &MomentSequence<T>,
    alpha: T,
    tol: &Tolerance,
) -> Result<bool> {
    Ok(same_class_stieltjes_detail(s, r, alpha, tol)?.holds())
}

/// A sequence analyzed against a fixed left endpoint `α`.
#[derive(Debug, Clone)]
pub struct StieltjesContext<T> {
    alpha: T,
    sequence: MomentSequence<T>,
    tol: Tolerance,
}

impl<T: Real> StieltjesContext<T> {
    pub fn new(alpha: T, sequence: MomentSequence<T>, tol: Tolerance) -> Result<Self> {
        if !alpha.is_finite() {
            return Err(Error::InvalidAlpha(alpha.to_f64().unwrap_or(f64::NAN)));
        }
        Ok(Self {
            alpha,
            sequence,
            tol,
        })
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    pub fn sequence(&self) -> &MomentSequence<T> {
        &self.sequence
    }

    pub fn tolerance(&self) -> &Tolerance {
        &self.tol
    }

    pub fn report(&self) -> Result<StieltjesReport<T>> {
        let (s, alpha, tol) = (&self.sequence, self.alpha, &self.tol);
        let m = s.last_index();
        let is_knnd = is_knnd(s, alpha, tol)?;
        let is_knnde = is_knnde(s, alpha, tol)?;
        let kappa = (0..=m)
            .map(|j| kappa(s, alpha, j, tol))
            .collect::<Result<Vec<_>>>()?;
        let u = (-1..m as isize)
            .map(|j| u_lower(s, alpha, j, tol))
            .collect::<Result<Vec<_>>>()?;
        let (r, canonical) = if is_knnd {
            let r = r_upper_stieltjes(s, alpha, m, tol)?;
            let canonical = s.with_last(r.clone())?;
            (Some(r), Some(canonical))
        } else {
            (None, None)
        };
        Ok(StieltjesReport {
            is_knnd,
            is_knnde,
            kappa,
            u,
            r,
            canonical,
        })
    }
}

/// Everything the classification of a sequence against `[α, ∞)` produces.
#[derive(Debug, Clone)]
pub struct StieltjesReport<T> {
    pub is_knnd: bool,
    pub is_knnde: bool,
    /// `κ₀, …, κ_m`.
    pub kappa: Vec<ComplexMatrix<T>>,
    /// `u_{−1}, …, u_{m−1}`.
    pub u: Vec<ComplexMatrix<T>>,
    pub r: Option<ComplexMatrix<T>>,
    pub canonical: Option<MomentSequence<T>>,
}
