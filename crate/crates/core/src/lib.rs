//! Scalar linear index codes for single-unicast index coding problems with
//! symmetric neighboring consecutive side-information.
//!
//! - [`finite_field`]: GF(2) bit matrices and prime-field arithmetic.
//! - [`air`]: AIR matrices, whose cyclic windows of `n` rows are independent.
//! - [`snc`]: the problem model and its closed-form quantities.
//! - [`codec`]: the AIR-based code, its decoder and symbol-sum decoding plans.
//! - [`oracles`]: brute-force MAIS, minrank and decodability checks.
//! - [`mds`]: the partial-clique MDS baseline over GF(p).
//! - [`report`]: table renderings.

pub mod air;
pub mod codec;
pub mod error;
pub mod finite_field;
pub mod mds;
pub mod oracles;
pub mod report;
pub mod snc;

pub use error::{Error, Result};
pub use snc::SncInstance;
