//! Symmetric neighboring consecutive side-information problems.
//!
//! Receiver `k` wants message `x_k` and knows the `U` messages cyclically
//! before it and the `D` messages cyclically after it. All indices are taken
//! modulo `K`.

use std::collections::VecDeque;
use std::fmt;

use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::finite_field::BitVector;

/// Exact non-negative rational.
pub type Rational = Ratio<u64>;

/// The triple `(K, D, U)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub struct SncInstance {
    k: usize,
    d: usize,
    u: usize,
}

impl SncInstance {
    /// Validates `K >= 2`, `U <= D` and `U + D <= K - 1`.
    pub fn new(k: usize, d: usize, u: usize) -> Result<Self> {
        let fail = |rule| Err(Error::InvalidInstance { k, d, u, rule });
        if k < 2 {
            return fail("K >= 2");
        }
        if u > d {
            return fail("U <= D");
        }
        if u + d > k - 1 {
            return fail("U + D <= K - 1");
        }
        Ok(Self { k, d, u })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn u(&self) -> usize {
        self.u
    }

    /// Complete side-information: every receiver knows all other messages.
    pub fn is_complete(&self) -> bool {
        self.u + self.d == self.k - 1
    }

    /// The known set of receiver `receiver`: `k-U, ..., k-1` then `k+1, ..., k+D`, all mod `K`.
    pub fn known_set(&self, receiver: usize) -> Vec<usize> {
        let k = self.k;
        let back = (1..=self.u).rev().map(|i| (receiver + k - i) % k);
        let fwd = (1..=self.d).map(|i| (receiver + i) % k);
        back.chain(fwd).collect()
    }

    /// Every valid instance with `2 <= K <= max_k`, ordered by `K`, then `D`, then `U`.
    pub fn all_up_to(max_k: usize) -> impl Iterator<Item = SncInstance> {
        (2..=max_k).flat_map(|k| {
            (0..k).flat_map(move |d| (0..=d).filter_map(move |u| SncInstance::new(k, d, u).ok()))
        })
    }

    /// Like [`SncInstance::all_up_to`] but skipping the complete case.
    pub fn all_proper_up_to(max_k: usize) -> impl Iterator<Item = SncInstance> {
        Self::all_up_to(max_k).filter(|i| !i.is_complete())
    }
}

impl fmt::Display for SncInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(K={}, D={}, U={})", self.k, self.d, self.u)
    }
}

/// Directed side-information graph: edge `i -> j` iff receiver `i` knows `x_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SideInfoGraph {
    known: Vec<Vec<usize>>,
    masks: Vec<BitVector>,
}

impl SideInfoGraph {
    pub fn from_known_sets(known: Vec<Vec<usize>>) -> Self {
        let k = known.len();
        let masks = known.iter().map(|s| BitVector::from_indices(k, s.iter().copied())).collect();
        Self { known, masks }
    }

    pub fn vertex_count(&self) -> usize {
        self.known.len()
    }

    pub fn known_set(&self, v: usize) -> &[usize] {
        &self.known[v]
    }

    /// Out-neighbourhood of `v` as a bit mask over all vertices.
    pub fn known_mask(&self, v: usize) -> &BitVector {
        &self.masks[v]
    }

    pub fn knows(&self, i: usize, j: usize) -> bool {
        self.masks[i].get(j)
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.known[v].len()
    }

    /// Kahn's algorithm on the subgraph induced by `vertices`.
    pub fn is_induced_acyclic(&self, vertices: &[usize]) -> bool {
        let n = vertices.len();
        let mut indeg = vec![0usize; n];
        for (a, &va) in vertices.iter().enumerate() {
            for (b, &vb) in vertices.iter().enumerate() {
                if a != b && self.knows(va, vb) {
                    indeg[b] += 1;
                }
            }
        }
        let mut queue: VecDeque<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
        let mut seen = 0;
        while let Some(a) = queue.pop_front() {
            seen += 1;
            for b in 0..n {
                if a != b && self.knows(vertices[a], vertices[b]) {
                    indeg[b] -= 1;
                    if indeg[b] == 0 {
                        queue.push_back(b);
                    }
                }
            }
        }
        seen == n
    }
}

pub fn build_graph(inst: &SncInstance) -> SideInfoGraph {
    SideInfoGraph::from_known_sets((0..inst.k).map(|v| inst.known_set(v)).collect())
}

fn ratio(n: usize, d: usize) -> Rational {
    Rational::new(n as u64, d as u64)
}

/// `β = (K - D + U)/(U + 1)`, or 1 under complete side-information.
pub fn broadcast_rate(inst: &SncInstance) -> Rational {
    if inst.is_complete() {
        Rational::from_integer(1)
    } else {
        ratio(inst.k - inst.d + inst.u, inst.u + 1)
    }
}

pub fn capacity(inst: &SncInstance) -> Rational {
    broadcast_rate(inst).recip()
}

/// `⌊(K - D + U)/(U + 1)⌋`.
pub fn mais_formula(inst: &SncInstance) -> usize {
    (inst.k - inst.d + inst.u) / (inst.u + 1)
}

/// The acyclic set `{0, U+1, 2(U+1), ..., (t-1)(U+1)}` with `t` the MAIS value.
pub fn mais_witness(inst: &SncInstance) -> Vec<usize> {
    (0..mais_formula(inst)).map(|j| j * (inst.u + 1)).collect()
}

/// Length `⌈K/(U+1)⌉ - ⌊(D-U)/(U+1)⌋` of the AIR-based scalar code.
pub fn gamma_length(inst: &SncInstance) -> Result<usize> {
    if inst.is_complete() {
        return Err(Error::SpecialCase);
    }
    let w = inst.u + 1;
    Ok(inst.k.div_ceil(w) - (inst.d - inst.u) / w)
}

/// Length of the code actually used: γ, or 1 for the single-sum code.
pub fn code_length(inst: &SncInstance) -> usize {
    gamma_length(inst).unwrap_or(1)
}

/// β non-integer and `(D-U) mod (U+1) + (K-D+U) mod (U+1) <= K mod (U+1)`.
/// Never holds under complete side-information, where β = 1.
pub fn tight_condition(inst: &SncInstance) -> bool {
    if inst.is_complete() {
        return false;
    }
    let w = inst.u + 1;
    let excess = (inst.k - inst.d + inst.u) % w;
    excess != 0 && (inst.d - inst.u) % w + excess <= inst.k % w
}

/// What is known about the minrank of the side-information graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MinrankStatus {
    Exact(usize),
    Bounds { lo: usize, hi: usize },
}

impl MinrankStatus {
    pub fn lower(&self) -> usize {
        match *self {
            MinrankStatus::Exact(v) => v,
            MinrankStatus::Bounds { lo, .. } => lo,
        }
    }

    pub fn upper(&self) -> usize {
        match *self {
            MinrankStatus::Exact(v) => v,
            MinrankStatus::Bounds { hi, .. } => hi,
        }
    }

    pub fn admits(&self, value: usize) -> bool {
        (self.lower()..=self.upper()).contains(&value)
    }
}

impl fmt::Display for MinrankStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MinrankStatus::Exact(v) => write!(f, "{v}"),
            MinrankStatus::Bounds { lo, hi } => write!(f, "[{lo},{hi}]"),
        }
    }
}

pub fn minrank_status(inst: &SncInstance) -> MinrankStatus {
    if inst.is_complete() {
        return MinrankStatus::Exact(1);
    }
    let gamma = code_length(inst);
    if tight_condition(inst) {
        debug_assert_eq!(gamma as u64, broadcast_rate(inst).ceil().to_integer());
        return MinrankStatus::Exact(gamma);
    }
    let lo = broadcast_rate(inst).ceil().to_integer() as usize;
    let hi = gamma.min(inst.k - inst.d - inst.u);
    // minrank >= β, and codes of both candidate lengths exist.
    if lo == hi {
        MinrankStatus::Exact(lo)
    } else {
        MinrankStatus::Bounds { lo, hi }
    }
}

/// Gap between the AIR code length and the broadcast rate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GapBound {
    pub gamma: usize,
    pub beta: Rational,
    /// `γ - β`.
    pub slack: Rational,
}

impl GapBound {
    /// `γ < β + 2`.
    pub fn holds(&self) -> bool {
        Rational::from_integer(self.gamma as u64) < self.beta + Rational::from_integer(2)
    }
}

pub fn gap_bound(inst: &SncInstance) -> Result<GapBound> {
    let gamma = gamma_length(inst)?;
    let beta = broadcast_rate(inst);
    Ok(GapBound {
        gamma,
        beta,
        slack: Rational::from_integer(gamma as u64) - beta,
    })
}

/// Partial-clique view of the graph and the MDS baseline it enables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PartialClique {
    /// `κ = K - D - U - 1`.
    pub kappa: usize,
    /// `κ + 1`, the MDS index code length.
    pub mds_length: usize,
    /// `min(γ, K - D - U)`.
    pub conjecture_value: usize,
}

pub fn partial_clique_kappa(inst: &SncInstance) -> PartialClique {
    let mds_length = inst.k - inst.d - inst.u;
    PartialClique {
        kappa: mds_length - 1,
        mds_length,
        conjecture_value: code_length(inst).min(mds_length),
    }
}

fn ser_rational<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(r))
}

/// `num/den`, or just `num` for integers.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Every closed-form quantity for one instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    #[serde(rename = "K")]
    pub k: usize,
    #[serde(rename = "D")]
    pub d: usize,
    #[serde(rename = "U")]
    pub u: usize,
    #[serde(serialize_with = "ser_rational")]
    pub beta: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub capacity: Rational,
    pub mais: usize,
    /// Scalar code length: γ, or 1 under complete side-information.
    pub gamma: usize,
    pub cond11: bool,
    pub minrank_status: MinrankStatus,
    pub kappa: usize,
    pub mds_length: usize,
    pub conjecture_value: usize,
}

impl AnalysisReport {
    /// `mais <= β <= γ < β + 2`.
    pub fn is_consistent(&self) -> bool {
        let mais = Rational::from_integer(self.mais as u64);
        let gamma = Rational::from_integer(self.gamma as u64);
        mais <= self.beta && self.beta <= gamma && gamma < self.beta + Rational::from_integer(2)
    }
}

pub fn analyze(inst: &SncInstance) -> AnalysisReport {
    let clique = partial_clique_kappa(inst);
    AnalysisReport {
        k: inst.k,
        d: inst.d,
        u: inst.u,
        beta: broadcast_rate(inst),
        capacity: capacity(inst),
        mais: mais_formula(inst),
        gamma: code_length(inst),
        cond11: tight_condition(inst),
        minrank_status: minrank_status(inst),
        kappa: clique.kappa,
        mds_length: clique.mds_length,
        conjecture_value: clique.conjecture_value,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(k: usize, d: usize, u: usize) -> SncInstance {
        SncInstance::new(k, d, u).unwrap()
    }

    #[test]
    fn validation_names_the_rule() {
        let rule = |k, d, u| match SncInstance::new(k, d, u) {
            Err(Error::InvalidInstance { rule, .. }) => rule,
            other => panic!("expected rejection, got {other:?}"),
        };
        assert_eq!(rule(1, 0, 0), "K >= 2");
        assert_eq!(rule(10, 2, 3), "U <= D");
        assert_eq!(rule(5, 3, 2), "U + D <= K - 1");
        assert!(SncInstance::new(5, 3, 1).is_ok());
    }

    #[test]
    fn broadcast_rate_examples() {
        assert_eq!(broadcast_rate(&inst(17, 6, 2)), ratio(13, 3));
        assert_eq!(broadcast_rate(&inst(16, 3, 2)), ratio(5, 1));
        assert_eq!(broadcast_rate(&inst(5, 3, 1)), ratio(1, 1));
    }

    #[test]
    fn capacity_examples() {
        assert_eq!(capacity(&inst(17, 6, 2)), ratio(3, 13));
        assert_eq!(capacity(&inst(5, 3, 1)), ratio(1, 1));
        assert_eq!(capacity(&inst(20, 9, 2)), ratio(3, 13));
    }

    #[test]
    fn mais_examples() {
        assert_eq!(mais_formula(&inst(17, 6, 2)), 4);
        assert_eq!(mais_formula(&inst(16, 3, 2)), 5);
        for k in 2..12 {
            for u in 0..k {
                if let Ok(i) = SncInstance::new(k, k - 1 - u, u) {
                    assert_eq!(mais_formula(&i), 1);
                }
            }
        }
        assert_eq!(mais_witness(&inst(17, 6, 2)), vec![0, 3, 6, 9]);
        assert_eq!(mais_witness(&inst(16, 3, 2)), vec![0, 3, 6, 9, 12]);
        assert_eq!(mais_witness(&inst(4, 3, 0)), vec![0]);
    }

    #[test]
    fn witness_is_acyclic() {
        for i in SncInstance::all_up_to(60) {
            let g = build_graph(&i);
            assert!(g.is_induced_acyclic(&mais_witness(&i)), "{i}");
        }
    }

    #[test]
    fn kahn_detects_cycles() {
        let g = build_graph(&inst(5, 2, 1));
        // 0 knows 1 and 1 knows 0 (backward).
        assert!(!g.is_induced_acyclic(&[0, 1]));
        assert!(g.is_induced_acyclic(&[0, 2]));
    }

    #[test]
    fn gamma_examples() {
        assert_eq!(gamma_length(&inst(20, 9, 2)), Ok(5));
        assert_eq!(gamma_length(&inst(827, 23, 4)), Ok(163));
        assert_eq!(gamma_length(&inst(10, 4, 0)), Ok(6));
        assert_eq!(gamma_length(&inst(5, 3, 1)), Err(Error::SpecialCase));
        for i in SncInstance::all_proper_up_to(50).filter(|i| i.u() == 0) {
            assert_eq!(gamma_length(&i).unwrap(), i.k() - i.d());
        }
    }

    #[test]
    fn tight_condition_examples() {
        assert!(tight_condition(&inst(20, 9, 2)));
        assert!(!tight_condition(&inst(16, 3, 2)));
        assert!(tight_condition(&inst(17, 6, 2)));
        assert!(tight_condition(&inst(7, 3, 1)));
    }

    #[test]
    fn minrank_status_examples() {
        assert_eq!(minrank_status(&inst(20, 9, 2)), MinrankStatus::Exact(5));
        assert_eq!(minrank_status(&inst(5, 3, 1)), MinrankStatus::Exact(1));
        assert_eq!(minrank_status(&inst(7, 3, 1)), MinrankStatus::Exact(3));
        assert_eq!(minrank_status(&inst(16, 3, 2)), MinrankStatus::Bounds { lo: 5, hi: 6 });
        // U = 0: β = γ = K - D pins the value.
        assert_eq!(minrank_status(&inst(4, 2, 0)), MinrankStatus::Exact(2));
    }

    #[test]
    fn gap_bound_examples() {
        let b = gap_bound(&inst(827, 23, 1)).unwrap();
        assert_eq!((b.gamma, b.slack), (403, ratio(1, 2)));
        assert!(b.holds());
        let b = gap_bound(&inst(827, 23, 4)).unwrap();
        assert_eq!((b.gamma, b.slack), (163, ratio(7, 5)));
        assert!(b.holds());
        let b = gap_bound(&inst(9, 4, 0)).unwrap();
        assert_eq!(b.slack, ratio(0, 1));
    }

    #[test]
    fn partial_clique_examples() {
        assert_eq!(
            partial_clique_kappa(&inst(20, 9, 2)),
            PartialClique { kappa: 8, mds_length: 9, conjecture_value: 5 }
        );
        let c = partial_clique_kappa(&inst(5, 3, 1));
        assert_eq!((c.kappa, c.mds_length), (0, 1));
        let c = partial_clique_kappa(&inst(827, 23, 10));
        assert_eq!((c.mds_length, c.conjecture_value), (794, 75));
    }

    #[test]
    fn graph_examples() {
        assert_eq!(build_graph(&inst(5, 2, 1)).known_set(0), &[4, 1, 2]);
        let g = build_graph(&inst(20, 9, 2));
        let k18 = g.known_set(18);
        for v in [19, 0, 1, 2, 3, 4, 5, 6, 7] {
            assert!(k18.contains(&v));
        }
        assert_eq!(k18, &[16, 17, 19, 0, 1, 2, 3, 4, 5, 6, 7]);
        assert_eq!(build_graph(&inst(4, 3, 0)).known_set(0), &[1, 2, 3]);
    }

    #[test]
    fn graph_is_regular_and_loop_free() {
        for i in SncInstance::all_up_to(30) {
            let g = build_graph(&i);
            for v in 0..i.k() {
                assert_eq!(g.out_degree(v), i.u() + i.d());
                assert_eq!(g.known_mask(v).count_ones(), i.u() + i.d());
                assert!(!g.knows(v, v));
            }
        }
    }

    #[test]
    fn closed_form_sweep() {
        for i in SncInstance::all_up_to(200) {
            let r = analyze(&i);
            assert!(r.is_consistent(), "{i}: {r:?}");
            if !i.is_complete() {
                assert!(gap_bound(&i).unwrap().holds(), "{i}");
                assert!(r.minrank_status.lower() <= r.minrank_status.upper(), "{i}");
                if tight_condition(&i) {
                    assert_eq!(r.gamma as u64, r.beta.ceil().to_integer(), "{i}");
                }
            }
        }
    }

    #[test]
    fn report_serializes_rationals_as_fractions() {
        let r = analyze(&inst(17, 6, 2));
        assert_eq!(format_rational(&r.beta), "13/3");
        assert_eq!(r.gamma, 5);
        assert!(r.cond11);
        assert_eq!(r.minrank_status, MinrankStatus::Exact(5));
    }
}
