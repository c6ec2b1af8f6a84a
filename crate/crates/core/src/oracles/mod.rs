//! Brute-force ground truth, independent of the closed-form results:
//! exhaustive MAIS, exhaustive GF(2) minrank, algebraic decodability of an
//! arbitrary linear code, and a seeded encode/decode simulation.

mod mais;
mod minrank;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub use mais::{brute_mais, MaisResult, MAIS_CAP};
pub use minrank::{brute_minrank2, is_fitting, MinrankResult, MINRANK_DEFAULT_CAP};

use crate::codec::{CodeSpec, SideInfo};
use crate::finite_field::{in_span, BitMatrix, BitVector};
use crate::snc::SideInfoGraph;

/// Per-receiver linear decodability of the code `c = x A` (`A` is `K x N`).
///
/// Receiver `k` can decode iff `e_k` lies in the span of the columns of `A`
/// together with the indicators of its known messages.
pub fn check_decodable(graph: &SideInfoGraph, a: &BitMatrix) -> Vec<bool> {
    let k = graph.vertex_count();
    assert_eq!(a.rows(), k, "encoding matrix must have one row per message");
    let columns: Vec<BitVector> = (0..a.cols()).map(|t| a.column(t)).collect();
    (0..k)
        .map(|r| {
            let mut basis = columns.clone();
            basis.extend(graph.known_set(r).iter().map(|&j| BitVector::unit(k, j)));
            in_span(&BitVector::unit(k, r), &basis).is_some()
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub trial: usize,
    pub receiver: usize,
    pub expected: bool,
    /// `None` when the decoder returned an error.
    pub actual: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RoundTripReport {
    pub seed: u64,
    pub trials: usize,
    pub decodes: usize,
    pub mismatches: usize,
    pub first_mismatch: Option<Mismatch>,
}

impl RoundTripReport {
    pub fn passed(&self) -> bool {
        self.mismatches == 0
    }
}

/// Draws `K` uniform message bits.
pub fn random_messages<R: Rng>(rng: &mut R, k: usize) -> BitVector {
    BitVector::from_indices(k, (0..k).filter(|_| rng.gen::<bool>()))
}

/// Encodes seeded random message vectors with the transmitter-side `K x N`
/// matrix and decodes at every receiver.
pub fn roundtrip_sim(spec: &CodeSpec, trials: usize, seed: u64) -> RoundTripReport {
    let inst = spec.instance();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = RoundTripReport {
        seed,
        trials,
        decodes: 0,
        mismatches: 0,
        first_mismatch: None,
    };
    for trial in 0..trials {
        let x = random_messages(&mut rng, inst.k());
        let c = spec.encode_expanded(&x).expect("message length matches");
        for receiver in 0..inst.k() {
            let side = SideInfo::for_receiver(inst, receiver, &x);
            let actual = spec.decode(receiver, &c, &side).ok();
            report.decodes += 1;
            if actual != Some(x.get(receiver)) {
                report.mismatches += 1;
                report.first_mismatch.get_or_insert(Mismatch {
                    trial,
                    receiver,
                    expected: x.get(receiver),
                    actual,
                });
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::{build_code, single_sum_code};
    use crate::snc::{build_graph, SncInstance};

    #[test]
    fn k20_expanded_matrix_is_decodable() {
        let inst = SncInstance::new(20, 9, 2).unwrap();
        let spec = build_code(&inst).unwrap();
        let verdicts = check_decodable(&build_graph(&inst), spec.expanded());
        assert_eq!(verdicts.len(), 20);
        assert!(verdicts.iter().all(|&v| v));
    }

    #[test]
    fn identity_and_zero_matrices() {
        let inst = SncInstance::new(9, 3, 2).unwrap();
        let g = build_graph(&inst);
        assert!(check_decodable(&g, &BitMatrix::identity(9)).iter().all(|&v| v));
        assert!(check_decodable(&g, &BitMatrix::zeros(9, 3)).iter().all(|&v| !v));
    }

    #[test]
    fn roundtrip_controls() {
        let spec = build_code(&SncInstance::new(20, 9, 2).unwrap()).unwrap();
        let r = roundtrip_sim(&spec, 100, 1);
        assert!(r.passed());
        assert_eq!(r.decodes, 2000);

        let single = single_sum_code(&SncInstance::new(5, 3, 1).unwrap()).unwrap();
        assert!(roundtrip_sim(&single, 10, 2).passed());

        let broken = spec.with_corrupted_expanded_row(4);
        let r = roundtrip_sim(&broken, 100, 1);
        assert!(!r.passed());
        assert!(r.first_mismatch.is_some());
    }

    #[test]
    fn roundtrip_is_deterministic_in_the_seed() {
        let spec = build_code(&SncInstance::new(11, 4, 1).unwrap()).unwrap().with_corrupted_expanded_row(0);
        assert_eq!(roundtrip_sim(&spec, 20, 9), roundtrip_sim(&spec, 20, 9));
    }
}
