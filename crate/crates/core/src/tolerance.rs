use crate::error::{Error, Result};
use crate::scalar::Real;

/// Numeric policy for every rank, definiteness and inclusion decision.
///
/// A decision on an operand whose spectral scale is `s` uses the threshold
/// `eps_rel * max(1, s)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    eps_rel: f64,
}

impl Tolerance {
    pub const DEFAULT_EPS_REL: f64 = 1e-10;

    pub fn new(eps_rel: f64) -> Result<Self> {
        if eps_rel > 0.0 && eps_rel.is_finite() {
            Ok(Self { eps_rel })
        } else {
            Err(Error::InvalidTolerance(eps_rel))
        }
    }

    /// The default tolerance for the precision of `T`.
    pub fn for_scalar<T: Real>() -> Self {
        Self {
            eps_rel: T::DEFAULT_EPS_REL,
        }
    }

    pub fn eps_rel(&self) -> f64 {
        self.eps_rel
    }

    pub fn threshold<T: Real>(&self, scale: T) -> T {
        T::lit(self.eps_rel) * scale.abs().max(T::one())
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            eps_rel: Self::DEFAULT_EPS_REL,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_nonpositive() {
        assert!(Tolerance::new(0.0).is_err());
        assert!(Tolerance::new(-1e-3).is_err());
        assert!(Tolerance::new(f64::NAN).is_err());
        assert!(Tolerance::new(1e-12).is_ok());
    }

    #[test]
    fn threshold_scales_above_one() {
        let tol = Tolerance::default();
        assert_eq!(tol.threshold(0.5_f64), 1e-10);
        assert_eq!(tol.threshold(100.0_f64), 1e-8);
        assert_eq!(Tolerance::for_scalar::<f32>().eps_rel(), 1e-4);
    }
}
