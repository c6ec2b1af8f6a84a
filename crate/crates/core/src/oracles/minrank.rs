//! Exhaustive GF(2) minrank over fitting matrices.
//!
//! A fitting matrix has ones on the diagonal, free entries at the positions of
//! each receiver's known set, and zeros elsewhere. The search assigns rows one
//! at a time while keeping an incremental echelon basis, and abandons a branch
//! as soon as its partial rank reaches the best complete rank found so far.
//! Within a row, assignments that do not raise the rank are tried first.

use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::snc::SideInfoGraph;

/// Default cap on the number of free positions (`2^26` fitting matrices).
pub const MINRANK_DEFAULT_CAP: usize = 26;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinrankResult {
    /// Minimum rank found; the true GF(2) minrank unless `early_stopped`.
    pub value: usize,
    /// Rows of a fitting matrix attaining `value`, bit `j` of row `k` = entry `(k, j)`.
    pub witness: Vec<u64>,
    /// True when the search stopped at the requested threshold rather than
    /// exhausting the space.
    pub early_stopped: bool,
}

/// XOR basis indexed by leading bit.
#[derive(Clone)]
struct Basis([u64; 64]);

impl Basis {
    fn reduce(&self, mut v: u64) -> u64 {
        while v != 0 {
            let top = 63 - v.leading_zeros() as usize;
            if self.0[top] == 0 {
                break;
            }
            v ^= self.0[top];
        }
        v
    }
}

struct Shared {
    best: AtomicUsize,
    stop: AtomicBool,
    early_stop: usize,
}

struct Worker<'a> {
    candidates: &'a [Vec<u64>],
    shared: &'a Shared,
    rows: Vec<u64>,
    best_rows: Option<Vec<u64>>,
    best_value: usize,
}

impl Worker<'_> {
    fn record(&mut self, rank: usize) {
        if rank < self.best_value {
            self.best_value = rank;
            self.best_rows = Some(self.rows.clone());
        }
        self.shared.best.fetch_min(rank, Ordering::SeqCst);
        if rank <= self.shared.early_stop {
            self.shared.stop.store(true, Ordering::SeqCst);
        }
    }

    fn dfs(&mut self, row: usize, basis: &mut Basis, rank: usize) {
        if self.shared.stop.load(Ordering::Relaxed) {
            return;
        }
        if row == self.candidates.len() {
            self.record(rank);
            return;
        }
        // Two passes: rank-preserving assignments, then rank-raising ones.
        for raise in [false, true] {
            let new_rank = rank + raise as usize;
            if new_rank >= self.shared.best.load(Ordering::Relaxed) {
                continue;
            }
            for &v in &self.candidates[row] {
                let reduced = basis.reduce(v);
                if (reduced != 0) != raise {
                    continue;
                }
                self.rows[row] = v;
                if raise {
                    let top = 63 - reduced.leading_zeros() as usize;
                    basis.0[top] = reduced;
                    self.dfs(row + 1, basis, new_rank);
                    basis.0[top] = 0;
                } else {
                    self.dfs(row + 1, basis, new_rank);
                }
                if self.shared.stop.load(Ordering::Relaxed)
                    || new_rank >= self.shared.best.load(Ordering::Relaxed)
                {
                    break;
                }
            }
        }
    }
}

/// Every admissible row of the fitting matrix for receiver `k`.
fn row_candidates(graph: &SideInfoGraph, k: usize) -> Vec<u64> {
    let free = graph.known_set(k);
    (0u64..1 << free.len())
        .map(|a| {
            free.iter()
                .enumerate()
                .filter(|(b, _)| a >> b & 1 == 1)
                .fold(1u64 << k, |row, (_, &j)| row | 1 << j)
        })
        .collect()
}

/// Minimum GF(2) rank over all fitting matrices of `graph`.
///
/// `early_stop` ends the search as soon as a matrix of rank at most that value
/// is found; pass a proven lower bound to keep the answer exact. `jobs`
/// splits the first row's assignments across threads; the value is the same
/// for any `jobs`, the witness is deterministic only for `jobs = 1`.
pub fn brute_minrank2(
    graph: &SideInfoGraph,
    early_stop: Option<usize>,
    cap: usize,
    jobs: usize,
) -> Result<MinrankResult> {
    let k = graph.vertex_count();
    let free: usize = (0..k).map(|v| graph.known_set(v).len()).sum();
    if free > cap || k > 64 {
        return Err(Error::TooLarge { size: free, cap });
    }
    let candidates: Vec<Vec<u64>> = (0..k).map(|v| row_candidates(graph, v)).collect();
    let shared = Shared {
        best: AtomicUsize::new(k + 1),
        stop: AtomicBool::new(false),
        early_stop: early_stop.unwrap_or(0),
    };
    let jobs = jobs.clamp(1, candidates[0].len());

    let results: Vec<(usize, Option<Vec<u64>>)> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..jobs)
            .map(|job| {
                let shared = &shared;
                let candidates = &candidates;
                scope.spawn(move || {
                    // Each worker owns every jobs-th choice for row 0.
                    let mine: Vec<u64> = candidates[0].iter().copied().skip(job).step_by(jobs).collect();
                    let mut local = candidates.clone();
                    local[0] = mine;
                    let mut worker = Worker {
                        candidates: &local,
                        shared,
                        rows: vec![0; k],
                        best_rows: None,
                        best_value: usize::MAX,
                    };
                    worker.dfs(0, &mut Basis([0; 64]), 0);
                    (worker.best_value, worker.best_rows)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("minrank worker panicked")).collect()
    });

    let (value, witness) = results
        .into_iter()
        .filter_map(|(v, w)| w.map(|w| (v, w)))
        .min_by_key(|(v, _)| *v)
        .expect("the identity-like fitting matrices guarantee a leaf");
    Ok(MinrankResult {
        value,
        witness,
        early_stopped: shared.stop.load(Ordering::SeqCst),
    })
}

/// Checks that `rows` is a fitting matrix of `graph`.
pub fn is_fitting(graph: &SideInfoGraph, rows: &[u64]) -> bool {
    rows.len() == graph.vertex_count()
        && rows.iter().enumerate().all(|(k, &r)| {
            let allowed = graph.known_set(k).iter().fold(1u64 << k, |m, &j| m | 1 << j);
            r >> k & 1 == 1 && r & !allowed == 0
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_field::{BitMatrix, BitVector};
    use crate::snc::{build_graph, SncInstance};

    fn graph(k: usize, d: usize, u: usize) -> SideInfoGraph {
        build_graph(&SncInstance::new(k, d, u).unwrap())
    }

    /// Straight enumeration of every fitting matrix, rank by [`BitMatrix::rank`].
    fn naive_minrank(g: &SideInfoGraph) -> usize {
        let k = g.vertex_count();
        let positions: Vec<(usize, usize)> =
            (0..k).flat_map(|r| g.known_set(r).iter().map(move |&c| (r, c))).collect();
        (0u64..1 << positions.len())
            .map(|mask| {
                let mut m = BitMatrix::identity(k);
                for (b, &(r, c)) in positions.iter().enumerate() {
                    if mask >> b & 1 == 1 {
                        m.set(r, c, true);
                    }
                }
                m.rank()
            })
            .min()
            .unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(brute_minrank2(&graph(5, 3, 1), None, 26, 1).unwrap().value, 1);
        assert_eq!(brute_minrank2(&graph(4, 2, 0), None, 26, 1).unwrap().value, 2);
        let r = brute_minrank2(&graph(7, 3, 1), None, 28, 1).unwrap();
        assert_eq!(r.value, 3);
        assert!(!r.early_stopped);
    }

    #[test]
    fn agrees_with_naive_enumeration() {
        for inst in SncInstance::all_up_to(8).filter(|i| i.k() * (i.u() + i.d()) <= 14) {
            let g = build_graph(&inst);
            let fast = brute_minrank2(&g, None, 26, 1).unwrap();
            assert_eq!(fast.value, naive_minrank(&g), "{inst}");
            assert!(is_fitting(&g, &fast.witness));
            let rows = fast
                .witness
                .iter()
                .map(|&r| BitVector::from_indices(inst.k(), (0..inst.k()).filter(|j| r >> j & 1 == 1)))
                .collect();
            assert_eq!(BitMatrix::from_rows(inst.k(), rows).rank(), fast.value);
        }
    }

    #[test]
    fn parallel_value_matches_serial() {
        for (k, d, u) in [(7, 3, 1), (8, 2, 1), (9, 2, 0), (6, 2, 2)] {
            let g = graph(k, d, u);
            let serial = brute_minrank2(&g, None, 28, 1).unwrap().value;
            assert_eq!(brute_minrank2(&g, None, 28, 4).unwrap().value, serial);
        }
    }

    #[test]
    fn early_stop_and_cap() {
        let g = graph(7, 3, 1);
        let r = brute_minrank2(&g, Some(3), 28, 1).unwrap();
        assert_eq!(r.value, 3);
        assert!(r.early_stopped);
        assert_eq!(brute_minrank2(&g, None, 26, 1), Err(Error::TooLarge { size: 28, cap: 26 }));
    }
}
