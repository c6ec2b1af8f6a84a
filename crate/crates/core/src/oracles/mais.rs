use serde::Serialize;

use crate::error::{Error, Result};
use crate::snc::SideInfoGraph;

/// Largest vertex count [`brute_mais`] will enumerate (`2^K` subsets).
pub const MAIS_CAP: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MaisResult {
    pub size: usize,
    /// One maximum acyclic set, ascending.
    pub witness: Vec<usize>,
}

/// Maximum acyclic induced subgraph by exhaustive enumeration of vertex subsets.
///
/// A subset induces an acyclic graph iff it contains a vertex with no
/// out-neighbour inside the subset whose removal leaves an acyclic subset;
/// this is evaluated for all `2^K` subsets bottom-up.
pub fn brute_mais(graph: &SideInfoGraph) -> Result<MaisResult> {
    let k = graph.vertex_count();
    if k > MAIS_CAP {
        return Err(Error::TooLarge { size: k, cap: MAIS_CAP });
    }
    let out: Vec<u32> = (0..k)
        .map(|v| graph.known_set(v).iter().fold(0u32, |m, &j| m | 1 << j))
        .collect();

    let total = 1usize << k;
    let mut acyclic = vec![0u64; total.div_ceil(64)];
    acyclic[0] = 1;
    let mut best: u32 = 0;
    for set in 1..total as u32 {
        let mut rest = set;
        let ok = loop {
            if rest == 0 {
                break false;
            }
            let v = rest.trailing_zeros();
            rest &= rest - 1;
            let without = (set ^ (1 << v)) as usize;
            if out[v as usize] & set == 0 && acyclic[without / 64] >> (without % 64) & 1 == 1 {
                break true;
            }
        };
        if ok {
            acyclic[set as usize / 64] |= 1 << (set % 64);
            if set.count_ones() > best.count_ones() {
                best = set;
            }
        }
    }
    Ok(MaisResult {
        size: best.count_ones() as usize,
        witness: (0..k).filter(|&v| best >> v & 1 == 1).collect(),
    })
}
