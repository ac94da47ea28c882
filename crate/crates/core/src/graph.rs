//! Mutable simple undirected graph with stable vertex identifiers.
//!
//! Vertex ids are issued from a monotone counter and never reused, so a vertex
//! created late in a computation (such as a separator gadget) can always be told
//! apart from every vertex that was deleted before it.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

/// Stable vertex identifier.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

pub type VertexSet = BTreeSet<VertexId>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {0} is not in the graph")]
    MissingVertex(VertexId),
    #[error("self-loop at {0}")]
    SelfLoop(VertexId),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(VertexId, VertexId),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Graph {
    adj: BTreeMap<VertexId, VertexSet>,
    next_id: u32,
    edge_count: usize,
}

/// A pair `{u, v}` whose removal leaves at least two components that contain a
/// vertex of degree at least three in the original graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparatingPair {
    pub u: VertexId,
    pub v: VertexId,
    /// Components of `G - {u, v}`, ordered by smallest contained id.
    pub components: Vec<VertexSet>,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Graph with `n` isolated vertices `v0 .. v{n-1}`.
    pub fn with_vertices(n: usize) -> Self {
        let mut g = Self::new();
        for _ in 0..n {
            g.add_vertex();
        }
        g
    }

    /// Builds a graph on `n` vertices from 0-based index pairs.
    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Result<Self, GraphError> {
        let mut g = Self::with_vertices(n);
        for &(a, b) in edges {
            g.add_edge(VertexId(a), VertexId(b))?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self) -> VertexId {
        let id = VertexId(self.next_id);
        self.next_id += 1;
        self.adj.insert(id, VertexSet::new());
        id
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<(), GraphError> {
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        for w in [u, v] {
            if !self.adj.contains_key(&w) {
                return Err(GraphError::MissingVertex(w));
            }
        }
        if !self.adj.get_mut(&u).unwrap().insert(v) {
            return Err(GraphError::DuplicateEdge(u, v));
        }
        self.adj.get_mut(&v).unwrap().insert(u);
        self.edge_count += 1;
        Ok(())
    }

    /// Removes `v` and its incident edges, returning its former neighbourhood.
    pub fn remove_vertex(&mut self, v: VertexId) -> Option<VertexSet> {
        let nbrs = self.adj.remove(&v)?;
        for w in &nbrs {
            if let Some(set) = self.adj.get_mut(w) {
                set.remove(&v);
            }
        }
        self.edge_count -= nbrs.len();
        Some(nbrs)
    }

    pub fn remove_edge(&mut self, u: VertexId, v: VertexId) -> bool {
        let removed = self.adj.get_mut(&u).is_some_and(|s| s.remove(&v));
        if removed {
            self.adj.get_mut(&v).unwrap().remove(&u);
            self.edge_count -= 1;
        }
        removed
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.adj.contains_key(&v)
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adj.get(&u).is_some_and(|s| s.contains(&v))
    }

    /// Neighbourhood of `v`. Panics if `v` is not live.
    pub fn neighbors(&self, v: VertexId) -> &VertexSet {
        &self.adj[&v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj.get(&v).map_or(0, BTreeSet::len)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.edge_count
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    /// Live vertices in increasing id order.
    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.adj.keys().copied()
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.adj.keys().copied().collect()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.adj
            .iter()
            .flat_map(|(&u, nb)| nb.range(u..).map(move |&v| (u, v)))
    }

    /// Id that the next `add_vertex` call will return.
    pub fn next_id(&self) -> VertexId {
        VertexId(self.next_id)
    }

    pub fn max_degree(&self) -> usize {
        self.adj.values().map(BTreeSet::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.values().map(BTreeSet::len).min().unwrap_or(0)
    }

    /// `n_i(G)`: number of vertices of degree exactly `i`.
    pub fn count_degree(&self, i: usize) -> usize {
        self.adj.values().filter(|s| s.len() == i).count()
    }

    /// `n_{>=i}(G)`.
    pub fn count_degree_at_least(&self, i: usize) -> usize {
        self.adj.values().filter(|s| s.len() >= i).count()
    }

    /// Induced subgraph on `keep`. Ids are preserved and the id counter is
    /// inherited so fresh vertices never collide with ids of the parent.
    pub fn induced(&self, keep: &VertexSet) -> Graph {
        let mut adj = BTreeMap::new();
        let mut twice_m = 0;
        for &v in keep {
            if let Some(nb) = self.adj.get(&v) {
                let inner: VertexSet = nb.intersection(keep).copied().collect();
                twice_m += inner.len();
                adj.insert(v, inner);
            }
        }
        Graph {
            adj,
            next_id: self.next_id,
            edge_count: twice_m / 2,
        }
    }

    /// Connected components, ordered by their smallest vertex id.
    pub fn components(&self) -> Vec<VertexSet> {
        self.components_avoiding(&VertexSet::new())
    }

    /// Components of `G - removed`.
    pub fn components_avoiding(&self, removed: &VertexSet) -> Vec<VertexSet> {
        let mut seen = VertexSet::new();
        let mut out = Vec::new();
        for start in self.vertices() {
            if removed.contains(&start) || seen.contains(&start) {
                continue;
            }
            let mut comp = VertexSet::new();
            let mut stack = alloc::vec![start];
            seen.insert(start);
            while let Some(x) = stack.pop() {
                comp.insert(x);
                for &y in &self.adj[&x] {
                    if !removed.contains(&y) && seen.insert(y) {
                        stack.push(y);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Vertices whose removal increases the number of components
    /// (Hopcroft-Tarjan low-link, iterative).
    pub fn cut_vertices(&self) -> VertexSet {
        let order: Vec<VertexId> = self.vertices().collect();
        let index: BTreeMap<VertexId, usize> =
            order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let nbrs: Vec<Vec<usize>> = order
            .iter()
            .map(|v| self.adj[v].iter().map(|w| index[w]).collect())
            .collect();
        let n = order.len();
        const UNSEEN: usize = usize::MAX;
        let mut disc = alloc::vec![UNSEEN; n];
        let mut low = alloc::vec![0usize; n];
        let mut is_cut = alloc::vec![false; n];
        let mut time = 0;
        for root in 0..n {
            if disc[root] != UNSEEN {
                continue;
            }
            disc[root] = time;
            low[root] = time;
            time += 1;
            let mut root_children = 0;
            // (vertex, parent, next neighbour cursor)
            let mut stack: Vec<(usize, usize, usize)> = alloc::vec![(root, UNSEEN, 0)];
            while let Some(frame) = stack.last_mut() {
                let (x, parent, cursor) = *frame;
                if cursor < nbrs[x].len() {
                    frame.2 += 1;
                    let y = nbrs[x][cursor];
                    if disc[y] == UNSEEN {
                        disc[y] = time;
                        low[y] = time;
                        time += 1;
                        if x == root {
                            root_children += 1;
                        }
                        stack.push((y, x, 0));
                    } else if y != parent {
                        low[x] = low[x].min(disc[y]);
                    }
                } else {
                    stack.pop();
                    if parent != UNSEEN {
                        low[parent] = low[parent].min(low[x]);
                        if parent != root && low[x] >= disc[parent] {
                            is_cut[parent] = true;
                        }
                    }
                }
            }
            if root_children >= 2 {
                is_cut[root] = true;
            }
        }
        order
            .into_iter()
            .zip(is_cut)
            .filter_map(|(v, c)| c.then_some(v))
            .collect()
    }

    /// Lexicographically smallest separating pair, see [`SeparatingPair`].
    pub fn find_separating_pair(&self) -> Option<SeparatingPair> {
        self.find_separating_pair_excluding(&VertexSet::new())
    }

    /// As [`Graph::find_separating_pair`], never using a vertex of `excluded`
    /// as an endpoint of the pair.
    pub fn find_separating_pair_excluding(&self, excluded: &VertexSet) -> Option<SeparatingPair> {
        for u in self.vertices() {
            if excluded.contains(&u) {
                continue;
            }
            let mut rest = self.clone();
            rest.remove_vertex(u);
            // When G - u is connected, {u, v} separates iff v is a cut vertex of G - u.
            let candidates: Vec<VertexId> = if rest.is_connected() {
                rest.cut_vertices().into_iter().filter(|&v| v > u).collect()
            } else {
                rest.vertices().filter(|&v| v > u).collect()
            };
            for v in candidates {
                if excluded.contains(&v) {
                    continue;
                }
                if let Some(components) = self.heavy_split(u, v) {
                    return Some(SeparatingPair { u, v, components });
                }
            }
        }
        None
    }

    /// Components of `G - {u, v}` when at least two of them contain a vertex of
    /// degree >= 3 in `G`.
    pub(crate) fn heavy_split(&self, u: VertexId, v: VertexId) -> Option<Vec<VertexSet>> {
        let removed: VertexSet = [u, v].into_iter().collect();
        let comps = self.components_avoiding(&removed);
        let heavy = comps
            .iter()
            .filter(|c| c.iter().any(|&x| self.degree(x) >= 3))
            .count();
        (heavy >= 2).then_some(comps)
    }

    /// Number of vertices of `set` whose degree in this graph is at least 3.
    pub fn heavy_count(&self, set: &VertexSet) -> usize {
        set.iter().filter(|&&x| self.degree(x) >= 3).count()
    }
}
