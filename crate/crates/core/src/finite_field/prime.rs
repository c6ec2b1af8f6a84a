//! Arithmetic and linear algebra over a prime field GF(p).

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// The prime field of integers modulo `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PrimeField {
    p: u64,
}

/// Deterministic trial division; adequate for the moduli used here (p ≲ 10^6).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime { modulus: p });
        }
        Ok(Self { p })
    }

    /// The field whose modulus is the smallest prime `>= k` (with `k` clamped to 2).
    pub fn smallest_prime_geq(k: u64) -> Self {
        let mut p = k.max(2);
        while !is_prime(p) {
            p += 1;
        }
        Self { p }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn contains(&self, a: u64) -> bool {
        a < self.p
    }

    pub fn check(&self, a: u64) -> Result<u64> {
        if self.contains(a) {
            Ok(a)
        } else {
            Err(Error::Range { value: a, p: self.p })
        }
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        ((a as u128 + b as u128) % self.p as u128) as u64
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.p - b % self.p)
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    /// `a^e` with the convention `0^0 = 1`.
    pub fn pow(&self, a: u64, mut e: u64) -> u64 {
        let mut base = a % self.p;
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via Fermat's little theorem.
    pub fn inv(&self, a: u64) -> Option<u64> {
        let a = a % self.p;
        (a != 0).then(|| self.pow(a, self.p - 2))
    }

    /// Rank of a matrix given as rows of field elements.
    pub fn rank(&self, rows: &[Vec<u64>]) -> usize {
        let mut m: Vec<Vec<u64>> = rows.to_vec();
        let cols = m.first().map_or(0, Vec::len);
        let mut rank = 0;
        for col in 0..cols {
            let Some(p) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
                continue;
            };
            m.swap(rank, p);
            let inv = self.inv(m[rank][col]).expect("nonzero pivot");
            for r in rank + 1..m.len() {
                let f = self.mul(m[r][col], inv);
                if f != 0 {
                    for c in col..cols {
                        let t = self.mul(f, m[rank][c]);
                        m[r][c] = self.sub(m[r][c], t);
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// Solves `A x = b` for square `A` by Gauss-Jordan elimination.
    pub fn solve(&self, a: &[Vec<u64>], b: &[u64]) -> Result<Vec<u64>> {
        let n = a.len();
        if b.len() != n {
            return Err(Error::LengthMismatch { expected: n, actual: b.len() });
        }
        let mut m: Vec<Vec<u64>> = Vec::with_capacity(n);
        for (row, &rhs) in a.iter().zip(b) {
            if row.len() != n {
                return Err(Error::LengthMismatch { expected: n, actual: row.len() });
            }
            let mut r = row.iter().map(|&v| self.check(v)).collect::<Result<Vec<_>>>()?;
            r.push(self.check(rhs)?);
            m.push(r);
        }
        for col in 0..n {
            let p = (col..n).find(|&r| m[r][col] != 0).ok_or(Error::Singular { p: self.p })?;
            m.swap(col, p);
            let inv = self.inv(m[col][col]).expect("nonzero pivot");
            for c in col..=n {
                m[col][c] = self.mul(m[col][c], inv);
            }
            for r in 0..n {
                if r == col || m[r][col] == 0 {
                    continue;
                }
                let f = m[r][col];
                for c in col..=n {
                    let t = self.mul(f, m[col][c]);
                    m[r][c] = self.sub(m[r][c], t);
                }
            }
        }
        Ok(m.into_iter().map(|r| r[n]).collect())
    }

    /// `A x` over the field.
    pub fn mat_vec(&self, a: &[Vec<u64>], x: &[u64]) -> Vec<u64> {
        a.iter()
            .map(|row| {
                row.iter()
                    .zip(x)
                    .fold(0, |acc, (&r, &v)| self.add(acc, self.mul(r, v)))
            })
            .collect()
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.p)
    }
}

/// Renders a GF(p) matrix: decimal entries separated by single spaces, one row per line.
pub fn format_decimal_matrix(rows: &[Vec<u64>]) -> String {
    let mut out = String::new();
    for row in rows {
        let line: Vec<String> = row.iter().map(u64::to_string).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

/// Parses the decimal matrix format; a blank line terminates.
pub fn parse_decimal_matrix(text: &str) -> Result<Vec<Vec<u64>>> {
    let mut rows = Vec::new();
    for line in text.lines() {
        if line.trim().is_empty() {
            break;
        }
        let row = line
            .split(' ')
            .map(|t| t.parse::<u64>().map_err(|e| Error::Parse(format!("{t:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    Ok(rows)
}
