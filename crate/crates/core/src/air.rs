//! AIR matrices: binary `m x n` matrices in which every `n` cyclically
//! consecutive rows are linearly independent.
//!
//! The construction alternates two steps on the still-unfilled lower-right
//! block of the matrix. With the block being `rows x cols`:
//!
//! 1. write `rows = q*cols + r` and fill the first `q*cols` rows with `q`
//!    stacked copies of `I_cols`; stop if `r = 0`;
//! 2. write `cols = q'*r + r'` and fill the first `q'*r` columns with `q'`
//!    side-by-side copies of `I_r`; stop if `r' = 0`, otherwise recurse on the
//!    `r x r'` block that is left.
//!
//! Cells never touched by either step are zero.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::finite_field::BitMatrix;

/// Orientation of an identity-stack block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BlockKind {
    /// `I_{c x d}`: `c/d` copies of `I_d` stacked vertically.
    Vertical,
    /// `I_{d x c}`: the transpose, copies of `I_d` side by side.
    Horizontal,
}

/// One block written by the construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AirBlock {
    pub row: usize,
    pub col: usize,
    pub rows: usize,
    pub cols: usize,
    pub kind: BlockKind,
}

impl AirBlock {
    pub fn area(&self) -> usize {
        self.rows * self.cols
    }

    /// Side length of the repeated identity.
    pub fn unit(&self) -> usize {
        match self.kind {
            BlockKind::Vertical => self.cols,
            BlockKind::Horizontal => self.rows,
        }
    }
}

/// Remainder chain `λ₋₁ = n, λ₀ = m - n, λ_{i-1} = β_i λ_i + λ_{i+1}`.
///
/// `lambda[0]` holds `λ₋₁`, `lambda[1]` holds `λ₀`, and so on up to the last
/// nonzero term `λ_l` (for `m = n` the list is `[n, 0]`). `beta[i]` holds `β_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainDecomposition {
    pub lambda: Vec<usize>,
    pub beta: Vec<usize>,
}

impl ChainDecomposition {
    /// Checks the defining identities and the strict decrease `λ_i < λ_{i-1}` for `i >= 1`.
    pub fn is_consistent(&self) -> bool {
        if self.lambda.len() < 2 {
            return false;
        }
        let identities = (0..self.beta.len()).all(|i| {
            let next = self.lambda.get(i + 2).copied().unwrap_or(0);
            self.lambda.get(i + 1).is_some_and(|&l| self.lambda[i] == self.beta[i] * l + next)
        });
        let terminates = match self.beta.len() {
            // m = n: nothing to divide by.
            0 => self.lambda == [self.lambda[0], 0],
            b => self.lambda.len() == b + 1,
        };
        let decreasing = self.lambda.windows(2).skip(1).all(|w| w[1] < w[0]);
        identities && terminates && decreasing
    }
}

/// The chain of remainders for an `m x n` AIR matrix.
pub fn chain_of(m: usize, n: usize) -> Result<ChainDecomposition> {
    check_shape(m, n)?;
    let mut lambda = vec![n, m - n];
    let mut beta = Vec::new();
    let (mut a, mut b) = (n, m - n);
    while b > 0 {
        beta.push(a / b);
        let r = a % b;
        if r > 0 {
            lambda.push(r);
        }
        a = b;
        b = r;
    }
    Ok(ChainDecomposition { lambda, beta })
}

fn check_shape(m: usize, n: usize) -> Result<()> {
    if n == 0 || n > m {
        return Err(Error::InvalidShape { rows: m, cols: n });
    }
    Ok(())
}

/// An AIR matrix together with its structural certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AirMatrix {
    matrix: BitMatrix,
    chain: ChainDecomposition,
    blocks: Vec<AirBlock>,
}

impl AirMatrix {
    pub fn rows(&self) -> usize {
        self.matrix.rows()
    }

    pub fn cols(&self) -> usize {
        self.matrix.cols()
    }

    pub fn matrix(&self) -> &BitMatrix {
        &self.matrix
    }

    pub fn chain(&self) -> &ChainDecomposition {
        &self.chain
    }

    /// Blocks in the order the construction wrote them.
    pub fn blocks(&self) -> &[AirBlock] {
        &self.blocks
    }

    /// Row indices `start, start+1, ..., start+n-1`, taken modulo `m`.
    pub fn window(&self, start: usize) -> Vec<usize> {
        let m = self.rows();
        (start..start + self.cols()).map(|i| i % m).collect()
    }

    /// The first start index whose cyclic window of `n` rows is rank deficient.
    pub fn first_deficient_window(&self) -> Option<usize> {
        let n = self.cols();
        (0..self.rows()).find(|&s| self.matrix.select_rows(&self.window(s)).rank() != n)
    }

    /// True iff every `n` cyclically consecutive rows have rank `n`.
    pub fn verify_consecutive_rank(&self) -> bool {
        self.first_deficient_window().is_none()
    }
}

/// Builds the `m x n` AIR matrix.
pub fn build_air(m: usize, n: usize) -> Result<AirMatrix> {
    check_shape(m, n)?;
    let mut matrix = BitMatrix::zeros(m, n);
    let mut blocks = Vec::new();

    let (mut row0, mut col0) = (0, 0);
    let (mut rows, mut cols) = (m, n);
    loop {
        // Step 1: stacked identities down the unfilled block.
        let (q, r) = (rows / cols, rows % cols);
        for i in 0..q * cols {
            matrix.set(row0 + i, col0 + i % cols, true);
        }
        blocks.push(AirBlock {
            row: row0,
            col: col0,
            rows: q * cols,
            cols,
            kind: BlockKind::Vertical,
        });
        row0 += q * cols;
        rows = r;
        if r == 0 {
            break;
        }

        // Step 2: identities side by side across the remaining rows.
        let (q2, r2) = (cols / rows, cols % rows);
        for j in 0..q2 * rows {
            matrix.set(row0 + j % rows, col0 + j, true);
        }
        blocks.push(AirBlock {
            row: row0,
            col: col0,
            rows,
            cols: q2 * rows,
            kind: BlockKind::Horizontal,
        });
        col0 += q2 * rows;
        cols = r2;
        if r2 == 0 {
            break;
        }
    }

    Ok(AirMatrix {
        matrix,
        chain: chain_of(m, n)?,
        blocks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE_7X5: &str = "10000\n01000\n00100\n00010\n00001\n10101\n01011\n";

    #[test]
    fn square_is_identity() {
        let a = build_air(5, 5).unwrap();
        assert_eq!(a.matrix(), &BitMatrix::identity(5));
        assert!(a.verify_consecutive_rank());
    }

    #[test]
    fn divisible_is_stacked_identity() {
        let a = build_air(6, 3).unwrap();
        assert_eq!(a.matrix().to_text(), "100\n010\n001\n100\n010\n001\n");
    }

    #[test]
    fn seven_by_five_matches_printed_matrix() {
        let a = build_air(7, 5).unwrap();
        assert_eq!(a.matrix().to_text(), EXAMPLE_7X5);
        assert!(a.verify_consecutive_rank());
        assert_eq!(a.window(5), vec![5, 6, 0, 1, 2]);
        assert_eq!(a.matrix().select_rows(&a.window(5)).rank(), 5);
    }

    #[test]
    fn eight_by_three_windows() {
        let a = build_air(8, 3).unwrap();
        assert_eq!(a.matrix().to_text(), "100\n010\n001\n100\n010\n001\n101\n011\n");
        // Enumerate each of the 8 windows: a 3x3 binary matrix is invertible iff
        // no nonempty subset of its rows xors to zero.
        for s in 0..8 {
            let w = a.matrix().select_rows(&a.window(s));
            let dependent = (1u32..8).any(|mask| {
                let sel = crate::finite_field::BitVector::from_indices(3, (0..3).filter(|i| mask >> i & 1 == 1));
                w.vec_mul(&sel).is_zero()
            });
            assert!(!dependent, "window {s}");
        }
        assert!(a.verify_consecutive_rank());
    }

    #[test]
    fn chain_examples() {
        assert_eq!(
            chain_of(7, 5).unwrap(),
            ChainDecomposition { lambda: vec![5, 2, 1], beta: vec![2, 2] }
        );
        assert_eq!(
            chain_of(6, 3).unwrap(),
            ChainDecomposition { lambda: vec![3, 3], beta: vec![1] }
        );
        assert_eq!(
            chain_of(4, 4).unwrap(),
            ChainDecomposition { lambda: vec![4, 0], beta: vec![] }
        );
        for (m, n) in [(7, 5), (6, 3), (4, 4), (8, 3), (64, 37), (13, 1)] {
            assert!(chain_of(m, n).unwrap().is_consistent(), "({m},{n})");
        }
    }

    #[test]
    fn invalid_shapes() {
        assert_eq!(build_air(3, 5), Err(Error::InvalidShape { rows: 3, cols: 5 }));
        assert_eq!(build_air(3, 0), Err(Error::InvalidShape { rows: 3, cols: 0 }));
        assert!(chain_of(2, 3).is_err());
    }

    #[test]
    fn blocks_tile_the_matrix() {
        for m in 1..=40 {
            for n in 1..=m {
                let a = build_air(m, n).unwrap();
                let mut covered = vec![vec![0u8; n]; m];
                for b in a.blocks() {
                    for r in b.row..b.row + b.rows {
                        for c in b.col..b.col + b.cols {
                            covered[r][c] += 1;
                        }
                    }
                }
                assert!(covered.iter().flatten().all(|&c| c == 1), "({m},{n})");
                assert_eq!(a.blocks().iter().map(AirBlock::area).sum::<usize>(), m * n);
            }
        }
    }

    #[test]
    fn block_units_follow_the_remainder_chain() {
        // After the first block, the identity sizes are the chain's remainders.
        for m in 1..=40 {
            for n in 1..=m {
                let a = build_air(m, n).unwrap();
                let chain = a.chain();
                let units: Vec<usize> = a.blocks().iter().skip(1).map(AirBlock::unit).collect();
                let tail: Vec<usize> = chain.lambda.iter().rev().take(units.len()).rev().copied().collect();
                assert_eq!(units, tail, "({m},{n})");
            }
        }
    }

    #[test]
    fn top_rows_are_identity_when_tall() {
        for n in 1..=12 {
            for m in 2 * n..=3 * n + 1 {
                let a = build_air(m, n).unwrap();
                assert_eq!(a.matrix().select_rows(&(0..n).collect::<Vec<_>>()), BitMatrix::identity(n));
            }
        }
    }
}
