//! Bit-packed vectors and dense matrices over GF(2).
//!
//! Coordinates are stored in little-endian 64-bit words. Bits past `len` in the
//! final word are always kept at zero so that derived equality and hashing
//! compare only observable coordinates.

use std::fmt;
use std::ops::{BitXor, BitXorAssign};
use std::str::FromStr;

use crate::error::{Error, Result};

const WORD: usize = 64;

#[inline]
fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

/// A vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = Self {
            len,
            words: vec![u64::MAX; words_for(len)],
        };
        v.clear_tail();
        v
    }

    /// The indicator vector `e_index`.
    pub fn unit(len: usize, index: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(index, true);
        v
    }

    /// Builds a vector of length `len` with ones at the given positions.
    pub fn from_indices<I: IntoIterator<Item = usize>>(len: usize, ones: I) -> Self {
        let mut v = Self::zeros(len);
        for i in ones {
            v.set(i, true);
        }
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        Self::from_indices(bits.len(), bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i))
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// # Panics
    ///
    /// Panics if `index >= len`.
    #[inline]
    pub fn get(&self, index: usize) -> bool {
        assert!(index < self.len, "bit index {index} out of range {}", self.len);
        (self.words[index / WORD] >> (index % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, index: usize, value: bool) {
        assert!(index < self.len, "bit index {index} out of range {}", self.len);
        let mask = 1u64 << (index % WORD);
        if value {
            self.words[index / WORD] |= mask;
        } else {
            self.words[index / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, index: usize) {
        assert!(index < self.len, "bit index {index} out of range {}", self.len);
        self.words[index / WORD] ^= 1u64 << (index % WORD);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Inner product over GF(2).
    pub fn dot(&self, other: &BitVector) -> bool {
        assert_eq!(self.len, other.len, "dot of vectors with different lengths");
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    /// Positions holding a one, ascending.
    pub fn ones_iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let tz = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * WORD + tz)
            })
        })
    }

    /// Lowest set position, if any.
    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(wi, w)| wi * WORD + w.trailing_zeros() as usize)
    }

    /// True when every one of `self` also appears in `mask`.
    pub fn is_subset_of(&self, mask: &BitVector) -> bool {
        assert_eq!(self.len, mask.len);
        self.words.iter().zip(&mask.words).all(|(a, m)| a & !m == 0)
    }

    /// Appends one coordinate at the end.
    pub fn push(&mut self, value: bool) {
        if self.len.is_multiple_of(WORD) {
            self.words.push(0);
        }
        self.len += 1;
        self.set(self.len - 1, value);
    }

    pub fn to_bools(&self) -> Vec<bool> {
        (0..self.len).map(|i| self.get(i)).collect()
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    fn clear_tail(&mut self) {
        let rem = self.len % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }
}

impl BitXorAssign<&BitVector> for BitVector {
    fn bitxor_assign(&mut self, rhs: &BitVector) {
        assert_eq!(self.len, rhs.len, "xor of vectors with different lengths");
        for (a, b) in self.words.iter_mut().zip(&rhs.words) {
            *a ^= b;
        }
    }
}

impl BitXor<&BitVector> for &BitVector {
    type Output = BitVector;

    fn bitxor(self, rhs: &BitVector) -> BitVector {
        let mut out = self.clone();
        out ^= rhs;
        out
    }
}

/// Prints the vector as a `0`/`1` string, index 0 leftmost.
impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

impl FromStr for BitVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut v = BitVector::zeros(s.len());
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => v.set(i, true),
                other => {
                    return Err(Error::Parse(format!(
                        "unexpected character {other:?} at position {i} in bitstring"
                    )))
                }
            }
        }
        Ok(v)
    }
}

/// A dense matrix over GF(2), stored as a list of bit-packed rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<BitVector>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            cols,
            rows: vec![BitVector::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            cols: n,
            rows: (0..n).map(|i| BitVector::unit(n, i)).collect(),
        }
    }

    /// # Panics
    ///
    /// Panics if the rows do not all have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<BitVector>) -> Self {
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "row {i} has length {} but matrix has {cols} columns", r.len());
        }
        Self { cols, rows }
    }

    /// Builds a matrix from nested 0/1 literals. Handy in tests.
    pub fn from_bits<R: AsRef<[u8]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let rows = rows
            .iter()
            .map(|r| BitVector::from_indices(cols, r.as_ref().iter().enumerate().filter(|(_, &b)| b != 0).map(|(i, _)| i)))
            .collect();
        Self::from_rows(cols, rows)
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &BitVector {
        &self.rows[i]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut BitVector {
        &mut self.rows[i]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &BitVector> {
        self.rows.iter()
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.rows[r].set(c, value)
    }

    pub fn column(&self, c: usize) -> BitVector {
        BitVector::from_indices(self.rows(), (0..self.rows()).filter(|&r| self.get(r, c)))
    }

    pub fn transpose(&self) -> BitMatrix {
        let rows = (0..self.cols).map(|c| self.column(c)).collect();
        BitMatrix::from_rows(self.rows(), rows)
    }

    /// The submatrix made of the listed rows, in the listed order.
    pub fn select_rows(&self, indices: &[usize]) -> BitMatrix {
        BitMatrix::from_rows(self.cols, indices.iter().map(|&i| self.rows[i].clone()).collect())
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        self.rows.swap(a, b);
    }

    /// `rows[dst] ^= rows[src]`.
    pub fn xor_row_into(&mut self, src: usize, dst: usize) {
        if src == dst {
            self.rows[dst] = BitVector::zeros(self.cols);
            return;
        }
        let s = self.rows[src].clone();
        self.rows[dst] ^= &s;
    }

    /// Matrix-vector product `M x` (x indexed by columns).
    pub fn mul_vec(&self, x: &BitVector) -> BitVector {
        assert_eq!(x.len(), self.cols);
        BitVector::from_indices(self.rows(), (0..self.rows()).filter(|&r| self.rows[r].dot(x)))
    }

    /// Row-vector product `x M` (x indexed by rows): the xor of the rows selected by `x`.
    pub fn vec_mul(&self, x: &BitVector) -> BitVector {
        assert_eq!(x.len(), self.rows());
        let mut out = BitVector::zeros(self.cols);
        for r in x.ones_iter() {
            out ^= &self.rows[r];
        }
        out
    }

    /// GF(2) row rank.
    pub fn rank(&self) -> usize {
        let mut work: Vec<BitVector> = self.rows.clone();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(p) = (rank..work.len()).find(|&r| work[r].get(col)) else {
                continue;
            };
            work.swap(rank, p);
            let pivot = work[rank].clone();
            for row in work.iter_mut().skip(rank + 1) {
                if row.get(col) {
                    *row ^= &pivot;
                }
            }
            rank += 1;
            if rank == work.len() {
                break;
            }
        }
        rank
    }

    /// Solves `A x = b` for square `A`.
    ///
    /// Returns [`Error::NotUnique`] when `A` is singular but `b` lies in its
    /// column space, and [`Error::NoSolution`] when it does not.
    pub fn solve(&self, b: &BitVector) -> Result<BitVector> {
        let n = self.rows();
        if self.cols != n {
            return Err(Error::LengthMismatch {
                expected: n,
                actual: self.cols,
            });
        }
        if b.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                actual: b.len(),
            });
        }
        // Augmented rows [A | b].
        let mut aug: Vec<BitVector> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut row = r.clone();
                row.push(b.get(i));
                row
            })
            .collect();
        let mut pivots = Vec::with_capacity(n);
        let mut rank = 0;
        for col in 0..n {
            let Some(p) = (rank..n).find(|&r| aug[r].get(col)) else {
                continue;
            };
            aug.swap(rank, p);
            let pivot = aug[rank].clone();
            for (r, row) in aug.iter_mut().enumerate() {
                if r != rank && row.get(col) {
                    *row ^= &pivot;
                }
            }
            pivots.push(col);
            rank += 1;
        }
        // Zero rows with a one in the augmented column are inconsistent.
        if aug[rank..].iter().any(|row| row.get(n)) {
            return Err(Error::NoSolution);
        }
        if rank < n {
            return Err(Error::NotUnique);
        }
        let mut x = BitVector::zeros(n);
        for (r, &col) in pivots.iter().enumerate() {
            x.set(col, aug[r].get(n));
        }
        Ok(x)
    }

    /// Parses the repo matrix text format: one row per line, `0`/`1`
    /// characters with no separators, terminated by a blank line or end of input.
    pub fn parse_text(text: &str) -> Result<BitMatrix> {
        let mut rows = Vec::new();
        for line in text.lines() {
            let line = line.trim_end_matches('\r');
            if line.trim().is_empty() {
                break;
            }
            rows.push(line.trim().parse::<BitVector>()?);
        }
        let cols = rows.first().map_or(0, BitVector::len);
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != cols) {
            return Err(Error::Parse(format!(
                "row {i} has {} columns, expected {cols}",
                r.len()
            )));
        }
        Ok(BitMatrix::from_rows(cols, rows))
    }

    /// Renders in the repo matrix text format (one `0`/`1` row per line).
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(self.rows() * (self.cols + 1));
        for r in &self.rows {
            out.push_str(&r.to_string());
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{} [", self.rows(), self.cols)?;
        for r in &self.rows {
            writeln!(f, "  {r}")?;
        }
        write!(f, "]")
    }
}

/// Returns the coefficients expressing `v` as a GF(2) combination of `basis`,
/// or `None` if `v` is outside their span. The zero vector always has the
/// all-zero witness.
pub fn in_span(v: &BitVector, basis: &[BitVector]) -> Option<BitVector> {
    let m = basis.len();
    // Echelon form of the basis, each row tagged with the combination producing it.
    let mut echelon: Vec<(usize, BitVector, BitVector)> = Vec::with_capacity(m);
    for (i, b) in basis.iter().enumerate() {
        assert_eq!(b.len(), v.len(), "basis vector {i} has mismatched length");
        let mut row = b.clone();
        let mut combo = BitVector::unit(m, i);
        for (pivot, erow, ecombo) in &echelon {
            if row.get(*pivot) {
                row ^= erow;
                combo ^= ecombo;
            }
        }
        if let Some(pivot) = row.first_one() {
            echelon.push((pivot, row, combo));
        }
    }
    let mut rest = v.clone();
    let mut witness = BitVector::zeros(m);
    for (pivot, erow, ecombo) in &echelon {
        if rest.get(*pivot) {
            rest ^= erow;
            witness ^= ecombo;
        }
    }
    rest.is_zero().then_some(witness)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn air_7x5() -> BitMatrix {
        BitMatrix::from_bits(&[
            [1, 0, 0, 0, 0],
            [0, 1, 0, 0, 0],
            [0, 0, 1, 0, 0],
            [0, 0, 0, 1, 0],
            [0, 0, 0, 0, 1],
            [1, 0, 1, 0, 1],
            [0, 1, 0, 1, 1],
        ])
    }

    #[test]
    fn rank_identity_and_equal_rows() {
        assert_eq!(BitMatrix::identity(5).rank(), 5);
        assert_eq!(BitMatrix::from_bits(&[[1, 1], [1, 1]]).rank(), 1);
        assert_eq!(BitMatrix::zeros(3, 4).rank(), 0);
        assert_eq!(BitMatrix::zeros(0, 4).rank(), 0);
    }

    #[test]
    fn rank_of_printed_7x5_matrix() {
        assert_eq!(air_7x5().rank(), 5);
    }

    #[test]
    fn solve_examples() {
        let x = BitMatrix::identity(3).solve(&"101".parse().unwrap()).unwrap();
        assert_eq!(x.to_string(), "101");

        let a = BitMatrix::from_bits(&[[1, 1], [0, 1]]);
        assert_eq!(a.solve(&"11".parse().unwrap()).unwrap().to_string(), "01");
    }

    #[test]
    fn solve_wraparound_window_of_7x5() {
        // Rows 5, 6, 0, 1, 2 of the 7x5 matrix; solve xA = b for every b,
        // i.e. A^T x = b, and check against brute force over all 32 x.
        let window = air_7x5().select_rows(&[5, 6, 0, 1, 2]);
        let at = window.transpose();
        for bits in 0u32..32 {
            let b = BitVector::from_indices(5, (0..5).filter(|i| bits >> i & 1 == 1));
            let brute: Vec<BitVector> = (0u32..32)
                .map(|c| BitVector::from_indices(5, (0..5).filter(|i| c >> i & 1 == 1)))
                .filter(|x| window.vec_mul(x) == b)
                .collect();
            assert_eq!(brute.len(), 1);
            assert_eq!(at.solve(&b).unwrap(), brute[0]);
        }
    }

    #[test]
    fn solve_distinguishes_singular_cases() {
        let a = BitMatrix::from_bits(&[[1, 1], [1, 1]]);
        assert_eq!(a.solve(&"11".parse().unwrap()), Err(Error::NotUnique));
        assert_eq!(a.solve(&"10".parse().unwrap()), Err(Error::NoSolution));
        assert_eq!(
            BitMatrix::zeros(2, 3).solve(&BitVector::zeros(2)),
            Err(Error::LengthMismatch { expected: 2, actual: 3 })
        );
    }

    #[test]
    fn in_span_examples() {
        let e0 = BitVector::unit(2, 0);
        let e1 = BitVector::unit(2, 1);
        let w = in_span(&BitVector::zeros(2), &[e1.clone()]).unwrap();
        assert!(w.is_zero());
        assert!(in_span(&BitVector::zeros(2), &[]).is_some());
        assert_eq!(in_span(&e0, &[e1.clone()]), None);
        let sum = &e0 ^ &e1;
        assert_eq!(in_span(&sum, &[e0, e1]).unwrap().to_string(), "11");
    }

    #[test]
    fn in_span_witness_with_dependent_basis() {
        let basis: Vec<BitVector> = ["110", "011", "101", "111"].iter().map(|s| s.parse().unwrap()).collect();
        let v: BitVector = "100".parse().unwrap();
        let w = in_span(&v, &basis).unwrap();
        let mut acc = BitVector::zeros(3);
        for i in w.ones_iter() {
            acc ^= &basis[i];
        }
        assert_eq!(acc, v);
    }

    #[test]
    fn tail_bits_stay_clear() {
        let v = BitVector::ones(70);
        assert_eq!(v.count_ones(), 70);
        assert_eq!(v, BitVector::from_indices(70, 0..70));
        let mut p = BitVector::zeros(63);
        p.push(true);
        p.push(true);
        assert_eq!(p.len(), 65);
        assert_eq!(p.ones_iter().collect::<Vec<_>>(), vec![63, 64]);
    }

    #[test]
    fn text_format_round_trip() {
        let text = air_7x5().to_text();
        assert_eq!(text.lines().next(), Some("10000"));
        assert_eq!(BitMatrix::parse_text(&text).unwrap(), air_7x5());
        let truncated = BitMatrix::parse_text("101\n010\n\n111\n").unwrap();
        assert_eq!(truncated.rows(), 2);
        assert!(BitMatrix::parse_text("10\n1\n").is_err());
        assert!("10x".parse::<BitVector>().is_err());
    }

    #[test]
    fn vec_mul_and_mul_vec_agree_through_transpose() {
        let a = air_7x5();
        let x: BitVector = "1000010".parse().unwrap();
        assert_eq!(a.vec_mul(&x), a.transpose().mul_vec(&x));
        assert_eq!(a.vec_mul(&x).to_string(), "00101");
    }
}
