use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::scalar::Real;

/// A finite sequence `s₀, …, s_κ` of complex `q x q` matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentSequence<T> {
    q: usize,
    blocks: Vec<ComplexMatrix<T>>,
}

impl<T: Real> MomentSequence<T> {
    /// Checks that there is at least one block and that all blocks are square
    /// of the same size.
    pub fn new(blocks: Vec<ComplexMatrix<T>>) -> Result<Self> {
        let first = blocks
            .first()
            .ok_or(Error::TooShort { needed: 1, got: 0 })?;
        let q = first.rows();
        for (j, b) in blocks.iter().enumerate() {
            if b.shape() != (q, q) {
                return Err(Error::DimensionMismatch(format!(
                    "block {j} is {}x{}, expected {q}x{q}",
                    b.rows(),
                    b.cols()
                )));
            }
            if !b.is_finite() {
                return Err(Error::InvalidMatrix(format!(
                    "block {j} has a non-finite entry"
                )));
            }
        }
        Ok(Self { q, blocks })
    }

    /// A sequence of `1 x 1` real blocks.
    pub fn from_scalars(values: &[f64]) -> Result<Self> {
        Self::new(
            values
                .iter()
                .map(|&x| ComplexMatrix::scalar(T::lit(x)))
                .collect(),
        )
    }

    pub fn q(&self) -> usize {
        self.q
    }

    /// Number of blocks, `κ + 1`.
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    /// Always false; kept for the `len`/`is_empty` convention.
    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Index `κ` of the last block.
    pub fn last_index(&self) -> usize {
        self.blocks.len() - 1
    }

    pub fn blocks(&self) -> &[ComplexMatrix<T>] {
        &self.blocks
    }

    pub fn block(&self, j: usize) -> Result<&ComplexMatrix<T>> {
        self.blocks.get(j).ok_or_else(|| {
            Error::IndexOutOfRange(format!(
                "block {j} of a sequence with {} blocks",
                self.len()
            ))
        })
    }

    pub fn last(&self) -> &ComplexMatrix<T> {
        &self.blocks[self.blocks.len() - 1]
    }

    /// Largest Frobenius norm among the blocks; the size against which
    /// numerical decisions on the sequence are judged.
    pub fn scale(&self) -> T {
        self.blocks
            .iter()
            .fold(T::zero(), |acc, b| acc.max(b.frobenius_norm()))
    }

    fn need(&self, last: usize) -> Result<()> {
        if last < self.len() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange(format!(
                "needs s_{last} but the sequence ends at s_{}",
                self.last_index()
            )))
        }
    }

    /// `Hₙ = [s_{j+k}]_{j,k=0..n}`.
    pub fn block_hankel(&self, n: usize) -> Result<ComplexMatrix<T>> {
        self.need(2 * n)?;
        let q = self.q;
        let mut h = ComplexMatrix::zeros((n + 1) * q, (n + 1) * q);
        for j in 0..=n {
            for k in 0..=n {
                h.set_submatrix(j * q, k * q, &self.blocks[j + k]);
            }
        }
        Ok(h)
    }

    /// Block column `col(s_ℓ, …, s_m)`.
    pub fn y_block(&self, l: usize, m: usize) -> Result<ComplexMatrix<T>> {
        self.check_range(l, m)?;
        let q = self.q;
        let mut y = ComplexMatrix::zeros((m - l + 1) * q, q);
        for (i, j) in (l..=m).enumerate() {
            y.set_submatrix(i * q, 0, &self.blocks[j]);
        }
        Ok(y)
    }

    /// Block row `row(s_ℓ, …, s_m)`.
    pub fn z_block(&self, l: usize, m: usize) -> Result<ComplexMatrix<T>> {
        self.check_range(l, m)?;
        let q = self.q;
        let mut z = ComplexMatrix::zeros(q, (m - l + 1) * q);
        for (i, j) in (l..=m).enumerate() {
            z.set_submatrix(0, i * q, &self.blocks[j]);
        }
        Ok(z)
    }

    fn check_range(&self, l: usize, m: usize) -> Result<()> {
        if l > m {
            return Err(Error::IndexOutOfRange(format!(
                "empty block range {l}..={m}"
            )));
        }
        self.need(m)
    }

    /// The first `len` blocks.
    pub fn truncate(&self, len: usize) -> Result<Self> {
        if len == 0 || len > self.len() {
            return Err(Error::IndexOutOfRange(format!(
                "cannot keep {len} of {} blocks",
                self.len()
            )));
        }
        Ok(Self {
            q: self.q,
            blocks: self.blocks[..len].to_vec(),
        })
    }

    /// The same sequence with the last block replaced by `t`.
    pub fn with_last(&self, t: ComplexMatrix<T>) -> Result<Self> {
        self.check_block(&t)?;
        let mut blocks = self.blocks.clone();
        let k = blocks.len() - 1;
        blocks[k] = t;
        Ok(Self { q: self.q, blocks })
    }

    /// The sequence extended by one block.
    pub fn pushed(&self, t: ComplexMatrix<T>) -> Result<Self> {
        self.check_block(&t)?;
        let mut blocks = self.blocks.clone();
        blocks.push(t);
        Ok(Self { q: self.q, blocks })
    }

    fn check_block(&self, t: &ComplexMatrix<T>) -> Result<()> {
        if t.shape() == (self.q, self.q) {
            Ok(())
        } else {
            Err(Error::DimensionMismatch(format!(
                "block is {}x{}, sequence has {q}x{q} blocks",
                t.rows(),
                t.cols(),
                q = self.q
            )))
        }
    }

    /// `s_{α,j} = −α s_j + s_{j+1}` for `j = 0..κ−1`.
    pub fn alpha_shift(&self, alpha: T) -> Result<Self> {
        if self.len() < 2 {
            return Err(Error::TooShort {
                needed: 2,
                got: self.len(),
            });
        }
        let blocks = self
            .blocks
            .windows(2)
            .map(|w| &w[1] - &w[0].scale(alpha))
            .collect();
        Ok(Self { q: self.q, blocks })
    }

    /// Blockwise closeness: `‖s_j − r_j‖_F ≤ eps · max(1, ‖s_j‖_F)` for the
    /// first `count` blocks.
    pub fn leading_blocks_close(&self, other: &Self, count: usize, eps: f64) -> bool {
        if self.q != other.q || count > self.len() || count > other.len() {
            return false;
        }
        let eps = T::lit(eps);
        self.blocks[..count]
            .iter()
            .zip(&other.blocks[..count])
            .all(|(a, b)| (a - b).frobenius_norm() <= eps * a.frobenius_norm().max(T::one()))
    }

    pub fn cast<U: Real>(&self) -> MomentSequence<U> {
        MomentSequence {
            q: self.q,
            blocks: self.blocks.iter().map(ComplexMatrix::cast).collect(),
        }
    }
}
