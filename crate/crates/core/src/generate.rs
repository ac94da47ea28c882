//! Named graph families and seeded random instances.

use alloc::vec::Vec;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::cardinality::{CardinalityState, Rational};
use crate::graph::{Graph, VertexId, VertexSet};

fn build(n: usize, edges: impl IntoIterator<Item = (u32, u32)>) -> Graph {
    let mut g = Graph::with_vertices(n);
    for (a, b) in edges {
        g.add_edge(VertexId(a), VertexId(b))
            .expect("family generators produce simple graphs");
    }
    g
}

pub fn path(n: usize) -> Graph {
    build(n, (1..n as u32).map(|i| (i - 1, i)))
}

/// Cycle `C_n`; for `n < 3` this is a path.
pub fn cycle(n: usize) -> Graph {
    let mut g = path(n);
    if n >= 3 {
        g.add_edge(VertexId(0), VertexId(n as u32 - 1)).unwrap();
    }
    g
}

pub fn complete(n: usize) -> Graph {
    let n32 = n as u32;
    build(n, (0..n32).flat_map(|i| (i + 1..n32).map(move |j| (i, j))))
}

pub fn empty(n: usize) -> Graph {
    Graph::with_vertices(n)
}

pub fn petersen() -> Graph {
    let outer = (0..5).map(|i| (i, (i + 1) % 5));
    let spokes = (0..5).map(|i| (i, i + 5));
    let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
    build(10, outer.chain(spokes).chain(inner))
}

/// Two triangles sharing vertex 0.
pub fn bowtie() -> Graph {
    build(5, [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)])
}

/// Hubs 0 and 1 joined by one chain per entry of `inner`, each chain having
/// the given number of internal vertices. At most one entry may be 0.
pub fn theta(inner: &[usize]) -> Graph {
    let mut g = Graph::with_vertices(2);
    let (a, b) = (VertexId(0), VertexId(1));
    for &len in inner {
        let mut prev = a;
        for _ in 0..len {
            let x = g.add_vertex();
            g.add_edge(prev, x).unwrap();
            prev = x;
        }
        g.add_edge(prev, b).expect("at most one direct hub edge");
    }
    g
}

/// The 3-dimensional hypercube `Q_3`.
pub fn cube() -> Graph {
    let mut edges = Vec::new();
    for x in 0u32..8 {
        for bit in 0..3 {
            let y = x ^ (1 << bit);
            if x < y {
                edges.push((x, y));
            }
        }
    }
    build(8, edges)
}

/// Erdos-Renyi `G(n, p)`.
pub fn gnp<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut g = Graph::with_vertices(n);
    for i in 0..n as u32 {
        for j in i + 1..n as u32 {
            if rng.gen_bool(p) {
                g.add_edge(VertexId(i), VertexId(j)).unwrap();
            }
        }
    }
    g
}

/// Uniform-ish random 3-regular simple graph by the pairing model with
/// rejection of loops and multi-edges. `n` must be even and at least 4.
pub fn random_cubic<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Graph {
    assert!(n >= 4 && n.is_multiple_of(2), "cubic graphs need an even n >= 4");
    let mut points: Vec<u32> = (0..3 * n as u32).collect();
    'retry: loop {
        points.shuffle(rng);
        let mut g = Graph::with_vertices(n);
        for pair in points.chunks(2) {
            let (a, b) = (VertexId(pair[0] / 3), VertexId(pair[1] / 3));
            if a == b || g.has_edge(a, b) {
                continue 'retry;
            }
            g.add_edge(a, b).unwrap();
        }
        return g;
    }
}

/// Random rational in `{1/3, 2/3, ..., 15/3}`.
pub fn random_weight<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    Rational::new(BigInt::from(rng.gen_range(1..=15)), BigInt::from(3))
}

/// Random proper cardinality state. With `gadgets`, an independent set of
/// vertices of degree at most two is declared added and given a negative
/// `c1` that still satisfies the third properness condition.
pub fn random_state<R: Rng + ?Sized>(g: &Graph, gadgets: bool, rng: &mut R) -> CardinalityState {
    let mut c = CardinalityState::trivial(g);
    for v in g.vertices() {
        c.c1.insert(v, random_weight(rng));
        c.c0_v.insert(v, random_weight(rng));
    }
    for (u, v) in g.edges() {
        c.c0_e.insert((u, v), random_weight(rng));
    }
    if rng.gen_bool(0.5) {
        c.scalar = random_weight(rng);
    }
    if gadgets {
        let mut blocked = VertexSet::new();
        for v in g.vertices() {
            if g.degree(v) > 2 || blocked.contains(&v) || !rng.gen_bool(0.4) {
                continue;
            }
            blocked.insert(v);
            blocked.extend(g.neighbors(v).iter().copied());
            c.added.insert(v);
            // c1(v) in (-c0(v) * prod c0(vy), 0)
            let mut bound = c.c0(v).clone();
            for &y in g.neighbors(v) {
                bound *= c.c0_edge(v, y);
            }
            let frac = Rational::new(BigInt::from(rng.gen_range(1..=5)), BigInt::from(6));
            c.c1.insert(v, -(bound * frac));
        }
    }
    c
}
