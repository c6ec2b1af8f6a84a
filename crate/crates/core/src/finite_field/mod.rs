//! Exact arithmetic over GF(2) (bit-packed) and over prime fields.

mod bits;
mod prime;

pub use bits::{in_span, BitMatrix, BitVector};
pub use prime::{format_decimal_matrix, is_prime, parse_decimal_matrix, PrimeField};
