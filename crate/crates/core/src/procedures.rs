//! Weight-preserving rewrites of `(G, c)`.
//!
//! Every procedure leaves the weighted total `c(G)` unchanged. `d0`, `d1` and
//! `d2` need totals of sub-instances; those are obtained through a caller
//! supplied counter so the engine can plug in its own recursion and tests can
//! plug in the brute-force oracle.

use num_traits::Zero;
use thiserror::Error;

use crate::cardinality::{edge_key, nonzero, CardinalityState, Rational};
use crate::graph::{Graph, VertexId, VertexSet};

/// A graph together with a cardinality state defined on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedState {
    pub graph: Graph,
    pub card: CardinalityState,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProcedureError {
    #[error("vertex {0} is not in the graph")]
    MissingVertex(VertexId),
    #[error("vertex set is not a connected component")]
    NotAComponent,
    #[error("the given side is not separated from the rest of the graph by the cut")]
    NotSeparated,
    #[error("cut vertices must lie in the given side and the side must be a proper part")]
    BadSide,
    #[error("degenerate separating pair: a normalising divisor is zero")]
    DegenerateCut,
}

/// How many times each reduction rule fired.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ReductionTally {
    pub r1: u64,
    pub r2: u64,
}

/// Which branch of the two-vertex separator rewrite was taken.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum D2Kind {
    /// `u` and `v` adjacent: the side folds into `c1(u)`, `c1(v)` and `c0(uv)`.
    Adjacent,
    /// The 2x2 table of side totals has rank one: the side folds into the
    /// weights of `u` and `v`.
    RankOne,
    /// A fresh vertex joined to `u` and `v` replaces the side.
    Gadget(VertexId),
}

impl ReducedState {
    pub fn new(graph: Graph, card: CardinalityState) -> Self {
        Self { graph, card }
    }

    pub fn trivial(graph: Graph) -> Self {
        let card = CardinalityState::trivial(&graph);
        Self { graph, card }
    }

    pub fn delete_vertex(&mut self, v: VertexId) {
        if let Some(nbrs) = self.graph.remove_vertex(v) {
            self.card.forget_vertex(v, &nbrs);
        }
    }

    pub fn delete_all(&mut self, set: &VertexSet) {
        for &v in set {
            self.delete_vertex(v);
        }
    }

    /// Copy of the instance induced by `keep`, with scalar 1.
    pub fn induced(&self, keep: &VertexSet) -> Self {
        let graph = self.graph.induced(keep);
        let card = self.card.restricted_to(&graph);
        Self { graph, card }
    }

    /// Total of the instance with the given vertices forced in (`true`) or
    /// out (`false`), computed by PROP on a copy, then REDUCTION, then `count`.
    pub fn restricted_total(
        &self,
        fixes: &[(VertexId, bool)],
        count: &mut dyn FnMut(ReducedState) -> Rational,
    ) -> Result<Rational, ProcedureError> {
        let mut st = self.clone();
        for &(w, eta) in fixes {
            if st.graph.contains(w) {
                prop(&mut st, w, eta)?;
            } else if eta {
                // w was swallowed as a neighbour of an earlier forced-in vertex
                return Ok(Rational::zero());
            } else if !self.graph.contains(w) {
                return Err(ProcedureError::MissingVertex(w));
            }
        }
        reduction(&mut st);
        Ok(count(st))
    }
}

/// Removes isolated vertices (R1) and leaves (R2) while the minimum degree is
/// below two and more than two vertices remain.
pub fn reduction(st: &mut ReducedState) -> ReductionTally {
    let mut tally = ReductionTally::default();
    while st.graph.n() > 2 && st.graph.min_degree() < 2 {
        let g = &st.graph;
        let isolated = g.vertices().find(|&v| g.degree(v) == 0);
        let leaf = g.vertices().find(|&v| g.degree(v) == 1);
        if let Some(v) = isolated {
            // R1: the vertex contributes a factor c0(v) + c1(v) to every term
            let factor = st.card.c0(v) + st.card.c1(v);
            st.card.scalar *= factor;
            st.delete_vertex(v);
            tally.r1 += 1;
        } else {
            // R2
            let v = leaf.expect("min degree is 1");
            let u = *st.graph.neighbors(v).first().unwrap();
            let c = &st.card;
            let out_factor = c.c1(v) + c.c0(v) * c.c0_edge(u, v);
            let in_factor = c.c0(v).clone();
            st.card.scale_c0(u, &out_factor);
            st.card.scale_c1(u, &in_factor);
            st.delete_vertex(v);
            tally.r2 += 1;
        }
    }
    tally
}

/// Restricts the count to independent sets avoiding (`eta == false`) or
/// containing (`eta == true`) `v`, and simplifies the graph accordingly.
pub fn prop(st: &mut ReducedState, v: VertexId, eta: bool) -> Result<(), ProcedureError> {
    if !st.graph.contains(v) {
        return Err(ProcedureError::MissingVertex(v));
    }
    let nbrs = st.graph.neighbors(v).clone();
    let factor = if !eta {
        let factor = st.card.c0(v).clone();
        for &u in &nbrs {
            let e = st.card.c0_edge(u, v).clone();
            st.card.scale_c0(u, &e);
        }
        st.delete_vertex(v);
        factor
    } else {
        let mut factor = st.card.c1(v).clone();
        for &u in &nbrs {
            factor *= st.card.c0(u);
        }
        for &u in &nbrs {
            for &w in st.graph.neighbors(u).range(u..) {
                if nbrs.contains(&w) {
                    factor *= st.card.c0_edge(u, w);
                }
            }
        }
        for &u in &nbrs {
            let outside: alloc::vec::Vec<VertexId> = st
                .graph
                .neighbors(u)
                .iter()
                .copied()
                .filter(|&w| w != v && !nbrs.contains(&w))
                .collect();
            for w in outside {
                let e = st.card.c0_e[&edge_key(u, w)].clone();
                st.card.scale_c0(w, &e);
            }
        }
        st.delete_vertex(v);
        st.delete_all(&nbrs);
        factor
    };
    st.card.scalar *= factor;
    Ok(())
}

fn is_component(g: &Graph, h: &VertexSet) -> bool {
    let Some(&first) = h.first() else {
        return false;
    };
    if !h.iter().all(|&x| g.contains(x)) {
        return false;
    }
    let comps = g.components();
    comps.iter().any(|c| c.contains(&first) && c == h)
}

/// `inner` is nonempty, connected and has neighbours only inside
/// `inner ∪ cut`.
fn is_cut_side(g: &Graph, inner: &VertexSet, cut: &VertexSet) -> bool {
    if inner.is_empty() || !inner.iter().all(|&x| g.contains(x)) {
        return false;
    }
    let closed = inner
        .iter()
        .all(|&x| g.neighbors(x).iter().all(|y| inner.contains(y) || cut.contains(y)));
    closed && g.induced(inner).is_connected()
}

/// Splits off the component `h`: its total is folded into the scalar.
pub fn d0(
    st: &mut ReducedState,
    h: &VertexSet,
    count: &mut dyn FnMut(ReducedState) -> Rational,
) -> Result<(), ProcedureError> {
    if !is_component(&st.graph, h) || h.len() == st.graph.n() {
        return Err(ProcedureError::NotAComponent);
    }
    let total = count(st.induced(h));
    st.card.scalar *= total;
    st.delete_all(h);
    Ok(())
}

/// Folds the side `g1 = V(H) ∪ {v}` hanging off the cut vertex `v` into the
/// weights of `v`.
pub fn d1(
    st: &mut ReducedState,
    v: VertexId,
    g1: &VertexSet,
    count: &mut dyn FnMut(ReducedState) -> Rational,
) -> Result<(), ProcedureError> {
    if !st.graph.contains(v) {
        return Err(ProcedureError::MissingVertex(v));
    }
    if !g1.contains(&v) || g1.len() >= st.graph.n() {
        return Err(ProcedureError::BadSide);
    }
    let mut inner = g1.clone();
    inner.remove(&v);
    let cut: VertexSet = [v].into_iter().collect();
    if !is_cut_side(&st.graph, &inner, &cut) {
        return Err(ProcedureError::NotSeparated);
    }
    let side = st.induced(g1);
    let with_v = side.restricted_total(&[(v, true)], count)?;
    let without_v = side.restricted_total(&[(v, false)], count)?;
    st.card.c1.insert(v, with_v);
    st.card.c0_v.insert(v, without_v);
    st.delete_all(&inner);
    Ok(())
}

/// Replaces the side `g1 = V(H) ∪ {u, v}` of the separating pair `{u, v}` by
/// weights on `u`, `v`, `uv`, or by a single gadget vertex.
pub fn d2(
    st: &mut ReducedState,
    u: VertexId,
    v: VertexId,
    g1: &VertexSet,
    count: &mut dyn FnMut(ReducedState) -> Rational,
) -> Result<D2Kind, ProcedureError> {
    for w in [u, v] {
        if !st.graph.contains(w) {
            return Err(ProcedureError::MissingVertex(w));
        }
    }
    if u == v || !g1.contains(&u) || !g1.contains(&v) || g1.len() >= st.graph.n() {
        return Err(ProcedureError::BadSide);
    }
    let cut: VertexSet = [u, v].into_iter().collect();
    let inner: VertexSet = g1.difference(&cut).copied().collect();
    // H must be a union of components of G - {u, v}; connectivity is not needed
    // for the identities, only separation.
    let separated = !inner.is_empty()
        && inner.iter().all(|&x| {
            st.graph.contains(x)
                && st
                    .graph
                    .neighbors(x)
                    .iter()
                    .all(|y| inner.contains(y) || cut.contains(y))
        });
    if !separated {
        return Err(ProcedureError::NotSeparated);
    }
    let adjacent = st.graph.has_edge(u, v);
    let card = &st.card;
    for (w, eta) in [(u, false), (u, true), (v, false), (v, true)] {
        if !nonzero(card.c_eta(w, eta)) {
            return Err(ProcedureError::DegenerateCut);
        }
    }

    let side = st.induced(g1);
    // normalised side totals c(u^zeta, v^eta)
    let mut table = |zeta: bool, eta: bool| -> Result<Rational, ProcedureError> {
        let raw = side.restricted_total(&[(u, zeta), (v, eta)], count)?;
        Ok(raw / (side.card.c_eta(u, zeta) * side.card.c_eta(v, eta)))
    };
    let t00 = table(false, false)?;
    let t01 = table(false, true)?;
    let t10 = table(true, false)?;

    let kind = if adjacent {
        st.card.scale_c1(u, &t10);
        st.card.scale_c1(v, &t01);
        st.card.c0_e.insert(edge_key(u, v), t00);
        st.delete_all(&inner);
        D2Kind::Adjacent
    } else {
        let t11 = table(true, true)?;
        if t11.is_zero() {
            return Err(ProcedureError::DegenerateCut);
        }
        if &t00 * &t11 == &t01 * &t10 {
            let c0v = &t10 / &t11;
            st.card.scale_c1(u, &t11);
            st.card.scale_c0(u, &t01);
            st.card.scale_c0(v, &c0v);
            st.delete_all(&inner);
            D2Kind::RankOne
        } else {
            st.delete_all(&inner);
            let x = st.graph.add_vertex();
            st.graph.add_edge(u, x).expect("fresh vertex");
            st.graph.add_edge(v, x).expect("fresh vertex");
            let det = &t00 * &t11 - &t01 * &t10;
            st.card.c0_e.insert(edge_key(u, x), &t01 / &t11);
            st.card.c0_e.insert(edge_key(v, x), &t10 / &t11);
            st.card.c1.insert(x, det / &t11);
            st.card.c0_v.insert(x, t11);
            st.card.added.insert(x);
            D2Kind::Gadget(x)
        }
    };
    Ok(kind)
}

/// `true` when the instance's added vertices have degree at most two and are
/// pairwise non-adjacent.
pub fn added_set_is_disciplined(st: &ReducedState) -> bool {
    let g = &st.graph;
    st.card.added.iter().all(|&x| {
        g.contains(x)
            && g.degree(x) <= 2
            && g.neighbors(x).iter().all(|y| !st.card.added.contains(y))
    })
}
