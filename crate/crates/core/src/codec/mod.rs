//! AIR-based scalar linear index codes.
//!
//! Messages are summed in consecutive groups of `U + 1` into extended symbols
//! `y_0, ..., y_{K1-1}` (the last group may be shorter), and the extended
//! vector is encoded with the `K1 x (K1 - D1)` AIR matrix:
//! `c = y L`. Receiver `k` in group `j = ⌊k/(U+1)⌋` knows the `D1` groups
//! cyclically after `j`, strips them from `c`, and inverts the remaining
//! cyclic window of `K1 - D1` AIR rows to recover `y_j`.

mod plan;

use std::ops::Range;

use serde::Serialize;

pub use plan::{extract_plan, DecodePlan, PlanRow, ReceiverPlan};

use crate::air::{build_air, AirMatrix};
use crate::error::{Error, Result};
use crate::finite_field::{BitMatrix, BitVector};
use crate::snc::{gamma_length, SncInstance};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CodeKind {
    /// Extended symbols encoded with an AIR matrix.
    Air,
    /// One symbol, the sum of all messages (complete side-information).
    SingleSum,
}

/// Everything the transmitter and the receivers need.
#[derive(Clone, Debug)]
pub struct CodeSpec {
    inst: SncInstance,
    kind: CodeKind,
    group_width: usize,
    k1: usize,
    d1: usize,
    groups: Vec<Range<usize>>,
    air: AirMatrix,
    expanded: BitMatrix,
}

/// Partitions `0..k` into consecutive runs of `width`; the last run may be shorter.
fn consecutive_groups(k: usize, width: usize) -> Vec<Range<usize>> {
    (0..k.div_ceil(width)).map(|j| j * width..((j + 1) * width).min(k)).collect()
}

/// Replicates AIR row `j` once per message of group `j`.
fn expand(air: &AirMatrix, groups: &[Range<usize>]) -> BitMatrix {
    let rows = groups
        .iter()
        .enumerate()
        .flat_map(|(j, g)| g.clone().map(move |_| air.matrix().row(j).clone()))
        .collect();
    BitMatrix::from_rows(air.cols(), rows)
}

impl CodeSpec {
    fn assemble(inst: SncInstance, kind: CodeKind, group_width: usize, d1: usize) -> Result<Self> {
        let groups = consecutive_groups(inst.k(), group_width);
        let k1 = groups.len();
        let air = build_air(k1, k1 - d1)?;
        let expanded = expand(&air, &groups);
        Ok(Self {
            inst,
            kind,
            group_width,
            k1,
            d1,
            groups,
            air,
            expanded,
        })
    }

    /// The natural code for any instance: AIR-based, or single-sum when the
    /// side-information is complete.
    pub fn for_instance(inst: &SncInstance) -> Result<Self> {
        if inst.is_complete() {
            single_sum_code(inst)
        } else {
            build_code(inst)
        }
    }

    pub fn instance(&self) -> &SncInstance {
        &self.inst
    }

    pub fn kind(&self) -> CodeKind {
        self.kind
    }

    /// Number of extended symbols.
    pub fn k1(&self) -> usize {
        self.k1
    }

    /// Number of extended symbols each receiver knows outright.
    pub fn d1(&self) -> usize {
        self.d1
    }

    /// Code length.
    pub fn n(&self) -> usize {
        self.k1 - self.d1
    }

    pub fn groups(&self) -> &[Range<usize>] {
        &self.groups
    }

    pub fn group_of(&self, message: usize) -> usize {
        message / self.group_width
    }

    pub fn air(&self) -> &AirMatrix {
        &self.air
    }

    /// The `K x N` encoding matrix acting directly on messages.
    pub fn expanded(&self) -> &BitMatrix {
        &self.expanded
    }

    /// Copy of this code whose transmitter-side matrix has row `row` zeroed.
    /// Receivers still assume the intact code; used for negative controls.
    pub fn with_corrupted_expanded_row(&self, row: usize) -> Self {
        let mut out = self.clone();
        *out.expanded.row_mut(row) = BitVector::zeros(out.expanded.cols());
        out
    }

    fn check_len(&self, v: &BitVector, expected: usize) -> Result<()> {
        if v.len() != expected {
            return Err(Error::LengthMismatch { expected, actual: v.len() });
        }
        Ok(())
    }

    /// Extended symbols: `y_j` is the xor of the messages in group `j`.
    pub fn extend(&self, x: &BitVector) -> Result<BitVector> {
        self.check_len(x, self.inst.k())?;
        Ok(BitVector::from_indices(
            self.k1,
            self.groups
                .iter()
                .enumerate()
                .filter(|(_, g)| (*g).clone().filter(|&i| x.get(i)).count() % 2 == 1)
                .map(|(j, _)| j),
        ))
    }

    /// `c = extend(x) L`.
    pub fn encode(&self, x: &BitVector) -> Result<BitVector> {
        Ok(self.air.matrix().vec_mul(&self.extend(x)?))
    }

    /// `c = x L_expanded`, the same codeword computed from the `K x N` matrix.
    pub fn encode_expanded(&self, x: &BitVector) -> Result<BitVector> {
        self.check_len(x, self.inst.k())?;
        Ok(self.expanded.vec_mul(x))
    }

    /// Groups whose sums receiver `receiver` is guaranteed to know.
    pub fn known_groups(&self, receiver: usize) -> Vec<usize> {
        let j = self.group_of(receiver);
        (1..=self.d1).map(|t| (j + t) % self.k1).collect()
    }

    fn check_receiver(&self, receiver: usize) -> Result<()> {
        if receiver >= self.inst.k() {
            return Err(Error::ReceiverOutOfRange { receiver, k: self.inst.k() });
        }
        Ok(())
    }

    /// Xor of the messages of group `group` other than `skip`, read from side-information.
    fn group_sum_from_side(&self, group: usize, skip: Option<usize>, side: &SideInfo, receiver: usize) -> Result<bool> {
        let mut acc = false;
        for i in self.groups[group].clone() {
            if Some(i) == skip {
                continue;
            }
            acc ^= side.get(i).ok_or_else(|| Error::SideInfoMismatch {
                receiver,
                detail: format!("message {i} needed but not supplied"),
            })?;
        }
        Ok(acc)
    }

    /// Recovers `x_receiver` from the codeword and the receiver's side-information.
    pub fn decode(&self, receiver: usize, c: &BitVector, side: &SideInfo) -> Result<bool> {
        self.check_receiver(receiver)?;
        self.check_len(c, self.n())?;
        side.check_matches(&self.inst, receiver)?;

        let j = self.group_of(receiver);
        let mut reduced = c.clone();
        for g in self.known_groups(receiver) {
            if self.group_sum_from_side(g, None, side, receiver)? {
                reduced ^= self.air.matrix().row(g);
            }
        }
        // Remaining unknowns: the cyclic window ending at row j.
        let window = self.air.window((j + self.d1 + 1) % self.k1);
        debug_assert_eq!(window.last(), Some(&j));
        let system = self.air.matrix().select_rows(&window).transpose();
        let z = system
            .solve(&reduced)
            .map_err(|_| Error::SystemSingular { receiver })?;
        let y_j = z.get(window.len() - 1);
        Ok(y_j ^ self.group_sum_from_side(j, Some(receiver), side, receiver)?)
    }
}

/// Builds the AIR-based code of length `⌈K/(U+1)⌉ - ⌊(D-U)/(U+1)⌋`.
pub fn build_code(inst: &SncInstance) -> Result<CodeSpec> {
    gamma_length(inst)?;
    let w = inst.u() + 1;
    let spec = CodeSpec::assemble(*inst, CodeKind::Air, w, (inst.d() - inst.u()) / w)?;
    debug_assert_eq!(Ok(spec.n()), gamma_length(inst));
    Ok(spec)
}

/// The length-1 code `c_0 = x_0 + ... + x_{K-1}` for complete side-information.
///
/// Represented as singleton groups encoded by the `K x 1` AIR matrix (a column
/// of ones), so the generic decoder applies unchanged.
pub fn single_sum_code(inst: &SncInstance) -> Result<CodeSpec> {
    if !inst.is_complete() {
        return Err(Error::InvalidInstance {
            k: inst.k(),
            d: inst.d(),
            u: inst.u(),
            rule: "single-sum code needs U + D = K - 1",
        });
    }
    CodeSpec::assemble(*inst, CodeKind::SingleSum, 1, inst.k() - 1)
}

/// Side-information held by one receiver: a `K`-long vector with unknown positions masked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SideInfo {
    bits: Vec<Option<bool>>,
}

impl SideInfo {
    pub fn new(bits: Vec<Option<bool>>) -> Self {
        Self { bits }
    }

    /// What receiver `receiver` knows of the message vector `x`.
    pub fn for_receiver(inst: &SncInstance, receiver: usize, x: &BitVector) -> Self {
        let mut bits = vec![None; inst.k()];
        for i in inst.known_set(receiver) {
            bits[i] = Some(x.get(i));
        }
        Self { bits }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<bool> {
        self.bits.get(i).copied().flatten()
    }

    /// Requires known bits exactly at the receiver's known set.
    pub fn check_matches(&self, inst: &SncInstance, receiver: usize) -> Result<()> {
        let mismatch = |detail: String| Err(Error::SideInfoMismatch { receiver, detail });
        if self.bits.len() != inst.k() {
            return mismatch(format!("expected {} positions, got {}", inst.k(), self.bits.len()));
        }
        let mut expected = vec![false; inst.k()];
        for i in inst.known_set(receiver) {
            expected[i] = true;
        }
        for (i, (bit, &want)) in self.bits.iter().zip(&expected).enumerate() {
            match (bit.is_some(), want) {
                (false, true) => return mismatch(format!("message {i} is known but missing")),
                (true, false) => return mismatch(format!("message {i} is not in the known set")),
                _ => {}
            }
        }
        Ok(())
    }

    /// Parses a `K`-character string of `0`, `1` and `?` (unknown), index 0 leftmost.
    pub fn parse(s: &str) -> Result<Self> {
        s.chars()
            .enumerate()
            .map(|(i, ch)| match ch {
                '0' => Ok(Some(false)),
                '1' => Ok(Some(true)),
                '?' => Ok(None),
                other => Err(Error::Parse(format!("unexpected character {other:?} at position {i} in side-information"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }
}

impl std::fmt::Display for SideInfo {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for b in &self.bits {
            f.write_str(match b {
                Some(true) => "1",
                Some(false) => "0",
                None => "?",
            })?;
        }
        Ok(())
    }
}
