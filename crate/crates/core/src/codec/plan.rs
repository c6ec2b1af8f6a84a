//! Decoding by plain symbol sums.
//!
//! For group `j`, a plan is a set `A` of code symbols whose sum equals `y_j`
//! plus extended symbols that every receiver of group `j` knows in full. The
//! shortest such set is found by exhaustive search in order of size, ties
//! broken lexicographically, and is shared by all receivers of the group.

use itertools::Itertools;
use serde::Serialize;

use super::{CodeSpec, SideInfo};
use crate::error::{Error, Result};
use crate::finite_field::BitVector;

/// Subsets examined per receiver before giving up.
const SEARCH_BUDGET: u64 = 1 << 24;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReceiverPlan {
    pub receiver: usize,
    pub group: usize,
    /// Code-symbol indices to add together.
    pub symbols: Vec<usize>,
    /// Known extended symbols cancelled from that sum.
    pub cancelled: Vec<usize>,
}

impl ReceiverPlan {
    /// Applies the plan to a codeword.
    pub fn evaluate(&self, spec: &CodeSpec, c: &BitVector, side: &SideInfo) -> Result<bool> {
        let mut acc = self.symbols.iter().fold(false, |acc, &t| acc ^ c.get(t));
        for &g in &self.cancelled {
            acc ^= spec.group_sum_from_side(g, None, side, self.receiver)?;
        }
        Ok(acc ^ spec.group_sum_from_side(self.group, Some(self.receiver), side, self.receiver)?)
    }
}

/// A row of the plan table: receivers sharing one group and one symbol set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlanRow {
    pub receivers: Vec<usize>,
    pub symbols: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecodePlan {
    pub receivers: Vec<ReceiverPlan>,
}

impl DecodePlan {
    /// Consecutive receivers with the same group and symbol set merged into one row.
    pub fn table_rows(&self) -> Vec<PlanRow> {
        self.receivers
            .iter()
            .chunk_by(|p| (p.group, p.symbols.clone()))
            .into_iter()
            .map(|((_, symbols), ps)| PlanRow {
                receivers: ps.map(|p| p.receiver).collect(),
                symbols,
            })
            .collect()
    }
}

/// Groups other than `j` lying entirely inside the known set of every receiver of group `j`.
fn fully_known_groups(spec: &CodeSpec, j: usize) -> BitVector {
    let known: Vec<BitVector> = spec.groups()[j]
        .clone()
        .map(|r| BitVector::from_indices(spec.instance().k(), spec.instance().known_set(r)))
        .collect();
    BitVector::from_indices(
        spec.k1(),
        spec.groups()
            .iter()
            .enumerate()
            .filter(|&(g, range)| g != j && range.clone().all(|i| known.iter().all(|m| m.get(i))))
            .map(|(g, _)| g),
    )
}

fn plan_for_group(spec: &CodeSpec, j: usize, columns: &[BitVector]) -> Result<(Vec<usize>, Vec<usize>)> {
    let receiver = spec.groups()[j].start;
    let allowed = fully_known_groups(spec, j);
    let target = BitVector::unit(spec.k1(), j);
    let mut examined = 0u64;
    for size in 1..=columns.len() {
        for combo in (0..columns.len()).combinations(size) {
            examined += 1;
            if examined > SEARCH_BUDGET {
                return Err(Error::TooLarge {
                    size: examined as usize,
                    cap: SEARCH_BUDGET as usize,
                });
            }
            let mut residue = target.clone();
            for &t in &combo {
                residue ^= &columns[t];
            }
            if residue.is_subset_of(&allowed) {
                return Ok((combo, residue.ones_iter().collect()));
            }
        }
    }
    Err(Error::NoPlan { receiver })
}

/// Minimal symbol-sum plans for every receiver.
pub fn extract_plan(spec: &CodeSpec) -> Result<DecodePlan> {
    let columns: Vec<BitVector> = (0..spec.n()).map(|t| spec.air().matrix().column(t)).collect();
    let mut receivers = Vec::with_capacity(spec.instance().k());
    for (j, group) in spec.groups().iter().enumerate() {
        let (symbols, cancelled) = plan_for_group(spec, j, columns.as_slice())?;
        receivers.extend(group.clone().map(|receiver| ReceiverPlan {
            receiver,
            group: j,
            symbols: symbols.clone(),
            cancelled: cancelled.clone(),
        }));
    }
    Ok(DecodePlan { receivers })
}
