//! Cardinality functions: the weights that turn independent-set counting into a
//! weighted sum.
//!
//! A state assigns `c1(v)` (weight when `v` is in the set), `c0(v)` (weight
//! when it is not) and `c0(e)` (weight of an edge with neither end in the set).
//! The weight of an independent set `S` is
//!
//! ```text
//! scalar * prod_{v in S} c1(v) * prod_{v not in S} c0(v) * prod_{e, e ∩ S = ∅} c0(e)
//! ```
//!
//! and the total `c(G)` is the sum of these weights over all independent sets.
//! The scalar accumulates factors that reductions peel off the graph.

use alloc::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::graph::{Graph, VertexId, VertexSet};

/// Exact arbitrary-precision rational; always kept in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// Unordered edge key, stored as `(min, max)`.
pub type EdgeKey = (VertexId, VertexId);

pub fn edge_key(u: VertexId, v: VertexId) -> EdgeKey {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CardinalityError {
    #[error("set is not independent: edge {0}-{1} has both ends inside")]
    NotIndependent(VertexId, VertexId),
    #[error("vertex {0} is not in the graph")]
    MissingVertex(VertexId),
    #[error("cardinality domains do not match the graph")]
    DomainMismatch,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CardinalityState {
    pub c1: BTreeMap<VertexId, Rational>,
    pub c0_v: BTreeMap<VertexId, Rational>,
    pub c0_e: BTreeMap<EdgeKey, Rational>,
    pub scalar: Rational,
    /// Vertices created by separator gadgets (the set `A(G)`).
    pub added: BTreeSet<VertexId>,
}

impl CardinalityState {
    /// All weights 1: the total is the number of independent sets.
    pub fn trivial(g: &Graph) -> Self {
        let one = Rational::one();
        Self {
            c1: g.vertices().map(|v| (v, one.clone())).collect(),
            c0_v: g.vertices().map(|v| (v, one.clone())).collect(),
            c0_e: g.edges().map(|e| (e, one.clone())).collect(),
            scalar: one,
            added: BTreeSet::new(),
        }
    }

    pub fn c1(&self, v: VertexId) -> &Rational {
        &self.c1[&v]
    }

    pub fn c0(&self, v: VertexId) -> &Rational {
        &self.c0_v[&v]
    }

    /// `c_eta(v)`.
    pub fn c_eta(&self, v: VertexId, eta: bool) -> &Rational {
        if eta {
            self.c1(v)
        } else {
            self.c0(v)
        }
    }

    pub fn c0_edge(&self, u: VertexId, v: VertexId) -> &Rational {
        &self.c0_e[&edge_key(u, v)]
    }

    pub fn scale_c1(&mut self, v: VertexId, by: &Rational) {
        *self.c1.get_mut(&v).expect("live vertex") *= by;
    }

    pub fn scale_c0(&mut self, v: VertexId, by: &Rational) {
        *self.c0_v.get_mut(&v).expect("live vertex") *= by;
    }

    /// Drops every weight mentioning `v`; `nbrs` is its neighbourhood.
    pub fn forget_vertex(&mut self, v: VertexId, nbrs: &VertexSet) {
        self.c1.remove(&v);
        self.c0_v.remove(&v);
        self.added.remove(&v);
        for &w in nbrs {
            self.c0_e.remove(&edge_key(v, w));
        }
    }

    /// Restriction to the induced subgraph `sub`, with the scalar reset to 1.
    pub fn restricted_to(&self, sub: &Graph) -> Self {
        Self {
            c1: sub.vertices().map(|v| (v, self.c1[&v].clone())).collect(),
            c0_v: sub.vertices().map(|v| (v, self.c0_v[&v].clone())).collect(),
            c0_e: sub.edges().map(|e| (e, self.c0_e[&e].clone())).collect(),
            scalar: Rational::one(),
            added: self
                .added
                .iter()
                .copied()
                .filter(|&v| sub.contains(v))
                .collect(),
        }
    }

    /// Checks that the weight maps are defined on exactly `V(G)` and `E(G)`.
    pub fn check_domains(&self, g: &Graph) -> Result<(), CardinalityError> {
        let verts_ok = self.c1.len() == g.n()
            && self.c0_v.len() == g.n()
            && g.vertices().all(|v| self.c1.contains_key(&v) && self.c0_v.contains_key(&v));
        let edges_ok =
            self.c0_e.len() == g.m() && g.edges().all(|e| self.c0_e.contains_key(&e));
        let added_ok = self.added.iter().all(|&v| g.contains(v));
        if verts_ok && edges_ok && added_ok {
            Ok(())
        } else {
            Err(CardinalityError::DomainMismatch)
        }
    }
}

/// Weight `c_G(S)` of the independent set `s`, scalar included.
pub fn weight_of_set(
    g: &Graph,
    c: &CardinalityState,
    s: &VertexSet,
) -> Result<Rational, CardinalityError> {
    if let Some(&v) = s.iter().find(|&&v| !g.contains(v)) {
        return Err(CardinalityError::MissingVertex(v));
    }
    if let Some((u, v)) = g.edges().find(|(u, v)| s.contains(u) && s.contains(v)) {
        return Err(CardinalityError::NotIndependent(u, v));
    }
    let mut w = c.scalar.clone();
    for v in g.vertices() {
        w *= if s.contains(&v) { c.c1(v) } else { c.c0(v) };
    }
    for (u, v) in g.edges() {
        if !s.contains(&u) && !s.contains(&v) {
            w *= c.c0_edge(u, v);
        }
    }
    Ok(w)
}

/// The three positivity conditions that keep every division in the
/// procedures well defined:
/// 1. `c0(x) > 0` on all vertices and edges;
/// 2. `c1(x) > 0` for every vertex not created by a gadget;
/// 3. `c1(x) + c0(x) * prod_{y in N(x)} c0(xy) > 0` for every vertex.
pub fn is_proper(g: &Graph, c: &CardinalityState) -> bool {
    if c.check_domains(g).is_err() {
        return false;
    }
    if c.c0_v.values().chain(c.c0_e.values()).any(|x| !x.is_positive()) {
        return false;
    }
    g.vertices().all(|x| {
        if !c.added.contains(&x) && !c.c1(x).is_positive() {
            return false;
        }
        let mut closed = c.c0(x).clone();
        for &y in g.neighbors(x) {
            closed *= c.c0_edge(x, y);
        }
        (closed + c.c1(x)).is_positive()
    })
}

/// `true` when the rational is an integer; used by printers.
pub fn is_integral(r: &Rational) -> bool {
    r.denom().is_one()
}

pub(crate) fn nonzero(r: &Rational) -> bool {
    !r.is_zero()
}
