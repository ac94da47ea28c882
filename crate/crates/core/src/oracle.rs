//! Brute-force references used as ground truth by the test suites.
//!
//! Vertices are taken in increasing id order and each is decided "out" then
//! "in"; a vertex may only go in when none of its earlier neighbours is in.
//! Nothing here shares code with the branching engine.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::Zero;
use thiserror::Error;

use crate::cardinality::{edge_key, CardinalityState, Rational};
use crate::graph::{Graph, VertexId};

pub const DEFAULT_ORACLE_CAP: usize = 25;
pub const HARD_ORACLE_CAP: usize = 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleLimit {
    pub max_n: usize,
}

impl Default for OracleLimit {
    fn default() -> Self {
        Self {
            max_n: DEFAULT_ORACLE_CAP,
        }
    }
}

impl OracleLimit {
    pub fn new(max_n: usize) -> Self {
        Self {
            max_n: max_n.min(HARD_ORACLE_CAP),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("graph has {n} vertices, brute force is capped at {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("constraint on vertex {0} which is not in the graph")]
    MissingVertex(VertexId),
    #[error("vertex {0} is constrained both in and out")]
    InconsistentConstraints(VertexId),
}

struct Indexed {
    order: Vec<VertexId>,
    /// Bitmask of neighbours with a smaller index.
    earlier: Vec<u32>,
}

fn index(g: &Graph, limit: OracleLimit) -> Result<Indexed, OracleError> {
    let cap = limit.max_n.min(HARD_ORACLE_CAP);
    if g.n() > cap {
        return Err(OracleError::TooLarge { n: g.n(), cap });
    }
    let order: Vec<VertexId> = g.vertices().collect();
    let pos: BTreeMap<VertexId, usize> = order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let earlier = order
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            g.neighbors(v)
                .iter()
                .map(|w| pos[w])
                .filter(|&j| j < i)
                .fold(0u32, |m, j| m | (1 << j))
        })
        .collect();
    Ok(Indexed { order, earlier })
}

/// Number of independent sets, the empty set included.
pub fn count_is_bruteforce(g: &Graph, limit: OracleLimit) -> Result<BigUint, OracleError> {
    let ix = index(g, limit)?;
    fn walk(ix: &Indexed, i: usize, chosen: u32) -> u64 {
        if i == ix.order.len() {
            return 1;
        }
        let mut total = walk(ix, i + 1, chosen);
        if ix.earlier[i] & chosen == 0 {
            total += walk(ix, i + 1, chosen | (1 << i));
        }
        total
    }
    Ok(BigUint::from(walk(&ix, 0, 0)))
}

/// `c(G)`: sum of `c_G(S)` over all independent sets `S`.
pub fn weighted_total_bruteforce(
    g: &Graph,
    c: &CardinalityState,
    limit: OracleLimit,
) -> Result<Rational, OracleError> {
    restricted_total_bruteforce(g, c, &[], limit)
}

/// Weighted sum over independent sets `S` with `v in S` for every `(v, true)`
/// constraint and `v not in S` for every `(v, false)`. Empty families sum to 0.
pub fn restricted_total_bruteforce(
    g: &Graph,
    c: &CardinalityState,
    constraints: &[(VertexId, bool)],
    limit: OracleLimit,
) -> Result<Rational, OracleError> {
    let ix = index(g, limit)?;
    let mut forced: BTreeMap<VertexId, bool> = BTreeMap::new();
    for &(v, eta) in constraints {
        if !g.contains(v) {
            return Err(OracleError::MissingVertex(v));
        }
        if forced.insert(v, eta).is_some_and(|prev| prev != eta) {
            return Err(OracleError::InconsistentConstraints(v));
        }
    }
    let forced: Vec<Option<bool>> = ix.order.iter().map(|v| forced.get(v).copied()).collect();

    struct Walk<'a> {
        c: &'a CardinalityState,
        ix: &'a Indexed,
        forced: &'a [Option<bool>],
        total: Rational,
    }
    impl Walk<'_> {
        fn go(&mut self, i: usize, chosen: u32, weight: Rational) {
            if i == self.ix.order.len() {
                self.total += weight;
                return;
            }
            let v = self.ix.order[i];
            if self.forced[i] != Some(true) {
                // v out: its own c0 and c0 of every edge to an earlier vertex that is also out
                let mut w = &weight * self.c.c0(v);
                for j in 0..i {
                    if self.ix.earlier[i] & (1 << j) != 0 && chosen & (1 << j) == 0 {
                        w *= &self.c.c0_e[&edge_key(v, self.ix.order[j])];
                    }
                }
                self.go(i + 1, chosen, w);
            }
            if self.forced[i] != Some(false) && self.ix.earlier[i] & chosen == 0 {
                let w = &weight * self.c.c1(v);
                self.go(i + 1, chosen | (1 << i), w);
            }
        }
    }
    let mut walk = Walk {
        c,
        ix: &ix,
        forced: &forced,
        total: Rational::zero(),
    };
    walk.go(0, 0, c.scalar.clone());
    Ok(walk.total)
}
