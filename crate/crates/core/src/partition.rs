//! The degree-3 skeleton of a subcubic graph and the bisection that guides
//! branching on it.
//!
//! Two vertices of degree 3 are *topological neighbours* when a path with all
//! inner vertices of degree 2 joins them. The skeleton keeps one edge per such
//! chain, so parallel chains show up as multiplicities and a chain returning to
//! its start makes the vertex self-adjacent.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::cardinality::{edge_key, EdgeKey};
use crate::graph::{Graph, VertexId, VertexSet};

/// Number of starting points tried by [`bisect`].
pub const BISECTION_STARTS: u64 = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("skeleton needs maximum degree at most 3, found {0}")]
    DegreeTooLarge(usize),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Skeleton {
    pub vertices: VertexSet,
    /// Chain multiplicity between distinct skeleton vertices, keyed `(min, max)`.
    pub edges: BTreeMap<EdgeKey, u32>,
    /// Number of chains that leave and re-enter the same vertex.
    pub self_loops: BTreeMap<VertexId, u32>,
    adj: BTreeMap<VertexId, BTreeMap<VertexId, u32>>,
}

impl Skeleton {
    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn multiplicity(&self, u: VertexId, v: VertexId) -> u32 {
        self.edges.get(&edge_key(u, v)).copied().unwrap_or(0)
    }

    /// Distinct topological neighbours of `v` (itself excluded) with multiplicities.
    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = (VertexId, u32)> + '_ {
        self.adj.get(&v).into_iter().flatten().map(|(&w, &k)| (w, k))
    }

    pub fn is_self_adjacent(&self, v: VertexId) -> bool {
        self.self_loops.get(&v).is_some_and(|&k| k > 0)
    }

    /// Chains from `v` ending in `side`, counted with multiplicity.
    pub fn links_into(&self, v: VertexId, side: &VertexSet) -> u32 {
        self.neighbors(v)
            .filter(|(w, _)| side.contains(w))
            .map(|(_, k)| k)
            .sum()
    }
}

/// Walks from `v` through `first` along vertices of degree 2 and returns the
/// first vertex whose degree is not 2, or `v` if the chain closes on itself.
/// Also returns the last vertex before the end, which identifies the chain
/// from the other side.
fn chain_end(g: &Graph, v: VertexId, first: VertexId) -> (VertexId, VertexId) {
    let (mut prev, mut cur) = (v, first);
    while cur != v && g.degree(cur) == 2 {
        let next = *g
            .neighbors(cur)
            .iter()
            .find(|&&w| w != prev)
            .expect("degree-2 vertex has a second neighbour");
        prev = cur;
        cur = next;
    }
    (cur, prev)
}

/// Topological neighbours of `v`: the far end of every chain of degree-2
/// vertices leaving `v`, one entry per chain. A chain that returns to `v`
/// contributes `v` once.
pub fn topological_neighbors(g: &Graph, v: VertexId) -> Vec<VertexId> {
    let mut out = Vec::new();
    let mut loops = 0;
    for &w in g.neighbors(v) {
        let (end, _) = chain_end(g, v, w);
        if end == v {
            loops += 1;
        } else {
            out.push(end);
        }
    }
    // each closed chain is walked once from either side
    out.extend(core::iter::repeat_n(v, loops / 2));
    out.sort();
    out
}

/// The skeleton `B(G)` of a graph with maximum degree at most 3.
pub fn skeleton(g: &Graph) -> Result<Skeleton, PartitionError> {
    let delta = g.max_degree();
    if delta > 3 {
        return Err(PartitionError::DegreeTooLarge(delta));
    }
    let mut sk = Skeleton::default();
    for v in g.vertices().filter(|&v| g.degree(v) == 3) {
        sk.vertices.insert(v);
        sk.adj.entry(v).or_default();
        let mut loop_ends = 0;
        for &w in g.neighbors(v) {
            let (end, _) = chain_end(g, v, w);
            if end == v {
                loop_ends += 1;
            } else if g.degree(end) == 3 {
                *sk.adj.entry(v).or_default().entry(end).or_default() += 1;
                if v < end {
                    *sk.edges.entry((v, end)).or_default() += 1;
                }
            }
        }
        if loop_ends > 0 {
            sk.self_loops.insert(v, loop_ends / 2);
        }
    }
    Ok(sk)
}

/// A split `(V0, V1)` of skeleton vertices.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Partition {
    pub v0: VertexSet,
    pub v1: VertexSet,
}

impl Partition {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn new(v0: VertexSet, v1: VertexSet) -> Self {
        Self { v0, v1 }
    }

    pub fn has_empty_side(&self) -> bool {
        self.v0.is_empty() || self.v1.is_empty()
    }

    pub fn side(&self, i: usize) -> &VertexSet {
        if i == 0 {
            &self.v0
        } else {
            &self.v1
        }
    }

    fn side_mut(&mut self, i: usize) -> &mut VertexSet {
        if i == 0 {
            &mut self.v0
        } else {
            &mut self.v1
        }
    }

    pub fn side_of(&self, v: VertexId) -> Option<usize> {
        if self.v0.contains(&v) {
            Some(0)
        } else if self.v1.contains(&v) {
            Some(1)
        } else {
            None
        }
    }

    /// `bp = max(|V0|, |V1|)`.
    pub fn bp(&self) -> usize {
        self.v0.len().max(self.v1.len())
    }

    /// `ec`: skeleton chains with one end in each side, with multiplicity.
    pub fn ec(&self, b: &Skeleton) -> usize {
        b.edges
            .iter()
            .filter(|((x, y), _)| {
                matches!(
                    (self.side_of(*x), self.side_of(*y)),
                    (Some(0), Some(1)) | (Some(1), Some(0))
                )
            })
            .map(|(_, &k)| k as usize)
            .sum()
    }
}

/// Both sides intersected with the skeleton's vertex set.
pub fn restrict(p: &Partition, b: &Skeleton) -> Partition {
    Partition {
        v0: p.v0.intersection(&b.vertices).copied().collect(),
        v1: p.v1.intersection(&b.vertices).copied().collect(),
    }
}

/// Moves vertices whose every chain crosses the cut (3 crossing chains, or a
/// self-loop plus one crossing chain) to the other side until none is left.
/// Each move lowers `ec` by at least one.
pub fn rebalance_heavy_vertices(p: &Partition, b: &Skeleton) -> Partition {
    let mut p = p.clone();
    loop {
        let mover = (0..2).find_map(|i| {
            p.side(i)
                .iter()
                .copied()
                .find(|&v| {
                    let cross = b.links_into(v, p.side(1 - i));
                    cross == 3 || (b.is_self_adjacent(v) && cross == 1)
                })
                .map(|v| (v, i))
        });
        let Some((v, i)) = mover else {
            return p;
        };
        p.side_mut(i).remove(&v);
        p.side_mut(1 - i).insert(v);
    }
}

/// Balanced split of the skeleton (`|V0| = floor(n/2)`, `|V1| = ceil(n/2)`) of
/// small width: Kernighan-Lin pair-swap refinement from a breadth-first seed
/// and from seeded random shuffles, keeping the narrowest.
pub fn bisect(b: &Skeleton, seed: u64) -> Partition {
    let order: Vec<VertexId> = b.vertices.iter().copied().collect();
    let k = order.len();
    if k < 2 {
        return Partition::new(VertexSet::new(), b.vertices.clone());
    }
    let pos: BTreeMap<VertexId, usize> = order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut w = alloc::vec![alloc::vec![0i64; k]; k];
    for (&(x, y), &mult) in &b.edges {
        let (i, j) = (pos[&x], pos[&y]);
        w[i][j] += mult as i64;
        w[j][i] += mult as i64;
    }
    let half = k / 2;

    let mut best: Option<(i64, Vec<bool>)> = None;
    for start in 0..BISECTION_STARTS {
        let seed_order = if start == 0 {
            bfs_order(&w)
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ start.wrapping_mul(0x9E37_79B9_7F4A_7C15));
            let mut o: Vec<usize> = (0..k).collect();
            o.shuffle(&mut rng);
            o
        };
        // side[i] == false means V0
        let mut side = alloc::vec![true; k];
        for &i in &seed_order[..half] {
            side[i] = false;
        }
        kernighan_lin(&w, &mut side);
        let width = cut_width(&w, &side);
        if best.as_ref().is_none_or(|(bw, _)| width < *bw) {
            best = Some((width, side));
        }
    }
    let (_, side) = best.unwrap();
    let mut p = Partition::empty();
    for (i, &v) in order.iter().enumerate() {
        if side[i] {
            p.v1.insert(v);
        } else {
            p.v0.insert(v);
        }
    }
    p
}

fn bfs_order(w: &[Vec<i64>]) -> Vec<usize> {
    let k = w.len();
    let mut seen = alloc::vec![false; k];
    let mut out = Vec::with_capacity(k);
    for root in 0..k {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut head = out.len();
        out.push(root);
        while head < out.len() {
            let x = out[head];
            head += 1;
            for y in 0..k {
                if w[x][y] > 0 && !seen[y] {
                    seen[y] = true;
                    out.push(y);
                }
            }
        }
    }
    out
}

fn cut_width(w: &[Vec<i64>], side: &[bool]) -> i64 {
    let k = w.len();
    let mut total = 0;
    for i in 0..k {
        for j in i + 1..k {
            if side[i] != side[j] {
                total += w[i][j];
            }
        }
    }
    total
}

fn kernighan_lin(w: &[Vec<i64>], side: &mut [bool]) {
    let k = w.len();
    loop {
        // D(x) = external - internal cost
        let mut d: Vec<i64> = (0..k)
            .map(|x| {
                (0..k)
                    .map(|y| if side[x] != side[y] { w[x][y] } else { -w[x][y] })
                    .sum()
            })
            .collect();
        let mut locked = alloc::vec![false; k];
        let mut swaps = Vec::new();
        let mut gains = Vec::new();
        loop {
            let mut pick: Option<(i64, usize, usize)> = None;
            for a in (0..k).filter(|&a| !locked[a] && !side[a]) {
                for b in (0..k).filter(|&b| !locked[b] && side[b]) {
                    let g = d[a] + d[b] - 2 * w[a][b];
                    if pick.is_none_or(|(bg, _, _)| g > bg) {
                        pick = Some((g, a, b));
                    }
                }
            }
            let Some((g, a, b)) = pick else { break };
            locked[a] = true;
            locked[b] = true;
            for x in (0..k).filter(|&x| !locked[x]) {
                if !side[x] {
                    d[x] += 2 * w[x][a] - 2 * w[x][b];
                } else {
                    d[x] += 2 * w[x][b] - 2 * w[x][a];
                }
            }
            swaps.push((a, b));
            gains.push(g);
        }
        let mut best = (0i64, 0usize);
        let mut acc = 0;
        for (i, g) in gains.iter().enumerate() {
            acc += g;
            if acc > best.0 {
                best = (acc, i + 1);
            }
        }
        if best.0 <= 0 {
            return;
        }
        for &(a, b) in &swaps[..best.1] {
            side[a] = true;
            side[b] = false;
        }
    }
}
