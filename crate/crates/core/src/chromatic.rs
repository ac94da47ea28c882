//! Chromatic number by inclusion-exclusion over vertex subsets.
//!
//! With `i(W)` the number of independent sets of `G[W]`,
//! `s_k = sum_W (-1)^(n - |W|) i(W)^k` counts the `k`-tuples of independent
//! sets covering `V(G)`, so the chromatic number is the least `k` with
//! `s_k > 0`. Subsets are visited one at a time and never stored.

use alloc::vec::Vec;
use core::ops::Range;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::graph::{Graph, VertexId, VertexSet};
use crate::iscount::{count_independent_sets, EngineConfig, EngineError};

pub const DEFAULT_CHROMATIC_CAP: usize = 18;
pub const BRUTEFORCE_COLORING_CAP: usize = 12;
/// Subsets are indexed by `u64` masks.
const MASK_BITS: usize = 63;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChromaticError {
    #[error("graph has {n} vertices, the limit is {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error(transparent)]
    Engine(#[from] EngineError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChromaticResult {
    pub chi: usize,
    /// `s_1, ..., s_chi`.
    pub per_k_sums: Vec<BigInt>,
    pub subsets_evaluated: u64,
}

/// Number of independent sets of `G[W]`.
pub fn count_is_induced(g: &Graph, w: &VertexSet, cfg: &EngineConfig) -> Result<BigUint, EngineError> {
    if w.is_empty() {
        return Ok(BigUint::one());
    }
    count_independent_sets(&g.induced(w), cfg)
}

/// Partial sums `s_1..s_n` over the subsets whose masks (bit `i` = the `i`-th
/// vertex in id order) lie in `masks`. Sums over disjoint ranges add up.
pub fn inclusion_exclusion_sums(
    g: &Graph,
    masks: Range<u64>,
    cfg: &EngineConfig,
) -> Result<Vec<BigInt>, ChromaticError> {
    let n = g.n();
    if n > MASK_BITS {
        return Err(ChromaticError::TooLarge { n, cap: MASK_BITS });
    }
    let order: Vec<VertexId> = g.vertices().collect();
    let mut sums = alloc::vec![BigInt::zero(); n];
    for mask in masks {
        let w: VertexSet = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| order[i]).collect();
        let base = BigInt::from(count_is_induced(g, &w, cfg)?);
        let negative = (n - w.len()) % 2 == 1;
        let mut power = BigInt::one();
        for s in sums.iter_mut() {
            power *= &base;
            if negative {
                *s -= &power;
            } else {
                *s += &power;
            }
        }
    }
    Ok(sums)
}

/// Least `k` with `s_k > 0`, given `s_1..s_n`.
pub fn chi_from_sums(sums: &[BigInt]) -> Option<usize> {
    sums.iter().position(|s| s.is_positive()).map(|i| i + 1)
}

pub fn chromatic_number(g: &Graph, cfg: &EngineConfig, cap: usize) -> Result<ChromaticResult, ChromaticError> {
    let n = g.n();
    if n > cap.min(MASK_BITS) {
        return Err(ChromaticError::TooLarge { n, cap });
    }
    let subsets = 1u64 << n;
    let sums = inclusion_exclusion_sums(g, 0..subsets, cfg)?;
    let chi = if n == 0 {
        0
    } else {
        chi_from_sums(&sums).expect("n colours always suffice")
    };
    Ok(ChromaticResult {
        chi,
        per_k_sums: sums.into_iter().take(chi).collect(),
        subsets_evaluated: subsets,
    })
}

/// Least `k` admitting a proper colouring, by backtracking over colour
/// assignments in vertex order.
pub fn chromatic_bruteforce(g: &Graph) -> Result<usize, ChromaticError> {
    let n = g.n();
    if n > BRUTEFORCE_COLORING_CAP {
        return Err(ChromaticError::TooLarge {
            n,
            cap: BRUTEFORCE_COLORING_CAP,
        });
    }
    let order: Vec<VertexId> = g.vertices().collect();
    let earlier: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..i).filter(|&j| g.has_edge(order[i], order[j])).collect())
        .collect();
    fn colour(i: usize, k: usize, earlier: &[Vec<usize>], col: &mut Vec<usize>) -> bool {
        if i == earlier.len() {
            return true;
        }
        for c in 0..k {
            if earlier[i].iter().all(|&j| col[j] != c) {
                col.push(c);
                if colour(i + 1, k, earlier, col) {
                    return true;
                }
                col.pop();
            }
        }
        false
    }
    Ok((0..=n)
        .find(|&k| colour(0, k, &earlier, &mut Vec::with_capacity(n)))
        .expect("n colours suffice"))
}
