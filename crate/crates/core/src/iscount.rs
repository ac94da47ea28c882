//! The branch-and-reduce counter.
//!
//! Each call reduces the instance, splits it along components, cut vertices
//! and two-vertex separators when no bisection is active, then branches on a
//! vertex picked by degree-dependent rules. Subcubic instances with few
//! vertices whose neighbours all have degree 3 are driven by a bisection of
//! the degree-3 skeleton: branching on vertices with edges across the cut
//! shrinks the cut until the pieces fall apart.

use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::cardinality::{is_proper, CardinalityError, CardinalityState, Rational};
use crate::graph::{Graph, VertexId, VertexSet};
use crate::partition::{bisect, rebalance_heavy_vertices, restrict, skeleton, Partition, Skeleton};
use crate::procedures::{d0, d1, d2, prop, reduction, D2Kind, ProcedureError, ReducedState};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EngineConfig {
    /// Instances with at most this many vertices of degree >= 3 branch on a
    /// maximum-degree vertex without further policy.
    pub small_cutoff: usize,
    pub delta: Rational,
    pub collect_stats: bool,
    pub rng_seed: u64,
}

pub const DEFAULT_SMALL_CUTOFF: usize = 20;

impl Default for EngineConfig {
    fn default() -> Self {
        Self {
            small_cutoff: DEFAULT_SMALL_CUTOFF,
            delta: Rational::new(BigInt::one(), BigInt::from(100_000)),
            collect_stats: false,
            rng_seed: 0,
        }
    }
}

impl EngineConfig {
    pub fn with_stats(mut self) -> Self {
        self.collect_stats = true;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("cardinality function is not proper for the graph")]
    Improper,
    #[error(transparent)]
    Cardinality(#[from] CardinalityError),
    #[error("small cutoff must be at least 2, got {0}")]
    BadCutoff(usize),
    #[error("delta must be positive")]
    BadDelta,
}

/// Counters gathered over one run. `branch_nodes` counts every call of the
/// recursive counter, sub-instance calls from the decompositions included.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub branch_nodes: u64,
    pub r1: u64,
    pub r2: u64,
    pub d0: u64,
    pub d1: u64,
    pub d2: u64,
    pub d2_gadgets: u64,
    pub d2_degenerate: u64,
    pub restarts: u64,
    pub bisections: u64,
    /// Width of every fresh bisection, in order.
    pub widths: Vec<usize>,
    pub max_depth: usize,
    /// One point per branch taken in the bisection regime, in search order.
    pub measure_trace: Vec<MeasurePoint>,
    pub descent_checks: u64,
    pub descent_violations: u64,
}

/// Measure of a node branched through the bisection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeasurePoint {
    pub depth: usize,
    /// Number of the bisection the node's partition descends from.
    pub epoch: u64,
    /// Index in the trace of the nearest ancestor on the same bisection.
    pub parent: Option<usize>,
    pub value: Rational,
}

#[derive(Clone, Copy)]
struct Lineage {
    point: usize,
    epoch: u64,
}

/// Which selection rule produced a branching vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rule {
    Small,
    CrossTwo,
    CrossOne,
    CubicCore,
    DegreeFour,
    HighDegree,
    Fallback,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Selection {
    Branch {
        vertex: VertexId,
        partition: Partition,
        rule: Rule,
        /// Width of the bisection computed while selecting, if one was.
        bisection_width: Option<usize>,
    },
    /// The cut has no edges left: start over with an empty partition.
    Restart,
}

fn decimal(s: &str) -> Rational {
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    let digits: alloc::string::String = int.chars().chain(frac.chars()).collect();
    let num = BigInt::parse_bytes(digits.as_bytes(), 10).expect("decimal literal");
    Rational::new(num, BigInt::from(10u32).pow(frac.len() as u32))
}

fn ratio(a: i64, b: i64) -> Rational {
    Rational::new(BigInt::from(a), BigInt::from(b))
}

/// One row of the density-banded weights for maximum degree 4.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensityBand {
    /// Exclusive lower and inclusive upper bound on `2m/n`.
    pub low: Rational,
    pub high: Rational,
    /// Weights of degree 2, 3 and 4 vertices.
    pub w: [Rational; 3],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeasureWeights {
    pub delta: Rational,
    /// `1/5 + delta`, per degree-3 vertex or per vertex on the larger side.
    pub subcubic_vertex: Rational,
    /// `3/5`, per skeleton edge across the bisection.
    pub subcubic_cut: Rational,
    pub density_bands: [DensityBand; 5],
    /// Weights of degree 2..=6 vertices when the maximum degree is 5 or 6.
    pub high_band: [Rational; 5],
}

impl MeasureWeights {
    pub fn new(delta: Rational) -> Self {
        let band = |low: Rational, high: Rational, w: [&str; 3]| DensityBand {
            low,
            high,
            w: w.map(decimal),
        };
        Self {
            subcubic_vertex: ratio(1, 5) + &delta,
            subcubic_cut: ratio(3, 5),
            delta,
            density_bands: [
                band(ratio(2, 1), ratio(3, 1), ["0.023855", "0.188173", "0.331455"]),
                band(ratio(3, 1), ratio(16, 5), ["0.068596", "0.188173", "0.286715"]),
                band(ratio(16, 5), ratio(76, 21), ["0.081402", "0.190308", "0.278178"]),
                band(ratio(76, 21), ratio(15, 4), ["0.093788", "0.194436", "0.27405"]),
                band(ratio(15, 4), ratio(4, 1), ["0.108682", "0.20082", "0.271922"]),
            ],
            high_band: ["0.113664", "0.200821", "0.27194", "0.298566", "0.30669"].map(decimal),
        }
    }

    /// Band for density `k`; densities at or below 2 use the first row.
    pub fn band_for(&self, k: &Rational) -> &DensityBand {
        self.density_bands
            .iter()
            .find(|b| k <= &b.high)
            .unwrap_or(&self.density_bands[4])
    }

    /// `(1/5 + delta) bp + (3/5) ec`.
    pub fn bisection_form(&self, b: &Skeleton, p: &Partition) -> Rational {
        &self.subcubic_vertex * int(p.bp()) + &self.subcubic_cut * int(p.ec(b))
    }
}

impl Default for MeasureWeights {
    fn default() -> Self {
        Self::new(EngineConfig::default().delta)
    }
}

fn int(i: usize) -> Rational {
    Rational::from_integer(BigInt::from(i))
}

fn density(g: &Graph) -> Rational {
    if g.n() == 0 {
        return Rational::zero();
    }
    ratio(2 * g.m() as i64, g.n() as i64)
}

/// `alpha(v) / beta(v)`: the mean degree of `v` and its neighbours of degree
/// below the graph's average degree, each such neighbour weighted `1/d`.
pub fn alpha_beta(g: &Graph, v: VertexId) -> Rational {
    let k = density(g);
    let mut alpha = g.degree(v);
    let mut beta = Rational::one();
    for &w in g.neighbors(v) {
        let d = g.degree(w);
        if int(d) < k {
            alpha += 1;
            beta += ratio(1, d as i64);
        }
    }
    int(alpha) / beta
}

fn connected_measure(h: &Graph, w: &MeasureWeights) -> Rational {
    let nd = |d: usize| int(h.count_degree(d));
    match h.max_degree() {
        0..=3 => &w.subcubic_vertex * int(h.count_degree_at_least(3)),
        4 => {
            let band = w.band_for(&density(h));
            (2..=4).map(|d| &band.w[d - 2] * nd(d)).sum()
        }
        5 | 6 => (2..=6).map(|d| &w.high_band[d - 2] * nd(d)).sum(),
        _ => int(h.n()),
    }
}

/// The running-time measure of `(G, P)`. Subcubic graphs with a partition
/// that is nonempty on both sides after restriction to the skeleton use
/// `(1/5 + delta) bp + (3/5) ec`; otherwise the measure is summed over
/// components, each measured by its own maximum degree.
pub fn measure(g: &Graph, p: &Partition, w: &MeasureWeights) -> Rational {
    if g.max_degree() <= 3 {
        let b = skeleton(g).expect("subcubic");
        let q = restrict(p, &b);
        if !q.has_empty_side() {
            return w.bisection_form(&b, &q);
        }
    }
    g.components()
        .iter()
        .map(|c| connected_measure(&g.induced(c), w))
        .sum()
}

/// `w2 n2 + w3 n3` with the first density band; the measure used for
/// subcubic graphs whose density exceeds 8/3.
pub fn dense_subcubic_measure(g: &Graph, w: &MeasureWeights) -> Rational {
    let band = &w.density_bands[0];
    &band.w[0] * int(g.count_degree(2)) + &band.w[1] * int(g.count_degree(3))
}

struct Engine<'a> {
    cfg: &'a EngineConfig,
    weights: MeasureWeights,
    stats: SearchStats,
}

fn base_case(st: &ReducedState) -> Option<Rational> {
    match st.graph.n() {
        0 => Some(st.card.scalar.clone()),
        1 => {
            let v = st.graph.vertices().next().unwrap();
            Some(&st.card.scalar * (st.card.c1(v) + st.card.c0(v)))
        }
        _ => None,
    }
}

/// Part with the fewest vertices of degree >= 3 in `g`, ties to the smallest
/// contained id. With `need_heavy`, parts without such vertices are skipped.
fn lightest(g: &Graph, parts: Vec<VertexSet>, need_heavy: bool) -> Option<VertexSet> {
    parts
        .into_iter()
        .map(|c| (g.heavy_count(&c), c))
        .filter(|(h, _)| !need_heavy || *h > 0)
        .min_by(|(ha, a), (hb, b)| ha.cmp(hb).then(a.first().cmp(&b.first())))
        .map(|(_, c)| c)
}

impl Engine<'_> {
    fn new(cfg: &EngineConfig) -> Engine<'_> {
        Engine {
            cfg,
            weights: MeasureWeights::new(cfg.delta.clone()),
            stats: SearchStats::default(),
        }
    }

    fn count(&mut self, mut st: ReducedState, mut p: Partition, depth: usize, lineage: Option<Lineage>) -> Rational {
        self.stats.branch_nodes += 1;
        self.stats.max_depth = self.stats.max_depth.max(depth);
        let tally = reduction(&mut st);
        self.stats.r1 += tally.r1;
        self.stats.r2 += tally.r2;

        let mut restarted = false;
        let mut plain = false;
        loop {
            if let Some(total) = base_case(&st) {
                return total;
            }
            let live = st.graph.vertex_set();
            p = Partition::new(
                p.v0.intersection(&live).copied().collect(),
                p.v1.intersection(&live).copied().collect(),
            );
            if p.has_empty_side() {
                self.decompose(&mut st, depth);
                if let Some(total) = base_case(&st) {
                    return total;
                }
            }
            match self.select(&st, &p, plain) {
                Selection::Restart => {
                    self.stats.restarts += 1;
                    p = Partition::empty();
                    // a second restart in a row means the bisection cannot get
                    // an edge across; branch without it
                    plain = restarted;
                    restarted = true;
                }
                Selection::Branch {
                    vertex,
                    partition,
                    rule,
                    bisection_width,
                } => {
                    let in_regime = matches!(rule, Rule::CrossTwo | Rule::CrossOne);
                    let lineage = if in_regime && self.cfg.collect_stats {
                        let epoch = match (bisection_width, lineage) {
                            (Some(_), _) | (None, None) => self.stats.bisections,
                            (None, Some(l)) => l.epoch,
                        };
                        let parent = lineage.filter(|l| l.epoch == epoch).map(|l| l.point);
                        Some(self.record(&st, &partition, depth, epoch, parent))
                    } else {
                        lineage
                    };
                    return self.branch(st, vertex, partition, depth, in_regime, lineage);
                }
            }
        }
    }

    fn branch(
        &mut self,
        st: ReducedState,
        v: VertexId,
        p: Partition,
        depth: usize,
        in_regime: bool,
        lineage: Option<Lineage>,
    ) -> Rational {
        let parent_mu = lineage
            .filter(|_| in_regime)
            .map(|l| self.stats.measure_trace[l.point].value.clone());
        let mut with_v = st.clone();
        prop(&mut with_v, v, true).expect("branch vertex is live");
        let mut without_v = st;
        prop(&mut without_v, v, false).expect("branch vertex is live");
        if let Some(mu) = parent_mu {
            self.check_descent(&mu, &with_v, &p);
            self.check_descent(&mu, &without_v, &p);
        }
        let a = self.count(with_v, p.clone(), depth + 1, lineage);
        let b = self.count(without_v, p, depth + 1, lineage);
        a + b
    }

    fn record(&mut self, st: &ReducedState, p: &Partition, depth: usize, epoch: u64, parent: Option<usize>) -> Lineage {
        let b = skeleton(&st.graph).expect("bisection regime is subcubic");
        self.stats.measure_trace.push(MeasurePoint {
            depth,
            epoch,
            parent,
            value: self.weights.bisection_form(&b, p),
        });
        Lineage {
            point: self.stats.measure_trace.len() - 1,
            epoch,
        }
    }

    /// Bisection measure of a reduced child against its parent's.
    fn check_descent(&mut self, parent: &Rational, child: &ReducedState, p: &Partition) {
        let mut c = child.clone();
        reduction(&mut c);
        let b = skeleton(&c.graph).expect("children stay subcubic");
        let mu = self.weights.bisection_form(&b, &restrict(p, &b));
        self.stats.descent_checks += 1;
        if &mu >= parent {
            self.stats.descent_violations += 1;
        }
    }

    fn decompose(&mut self, st: &mut ReducedState, depth: usize) {
        let cfg_depth = depth + 1;
        while !st.graph.is_connected() {
            let h = lightest(&st.graph, st.graph.components(), false).expect("two components");
            let mut counter = |sub: ReducedState| self.count(sub, Partition::empty(), cfg_depth, None);
            d0(st, &h, &mut counter).expect("whole component");
            self.stats.d0 += 1;
        }
        while let Some(&v) = st.graph.cut_vertices().first() {
            let cut: VertexSet = [v].into_iter().collect();
            let mut g1 = lightest(&st.graph, st.graph.components_avoiding(&cut), false)
                .expect("cut vertex splits the graph");
            g1.insert(v);
            let mut counter = |sub: ReducedState| self.count(sub, Partition::empty(), cfg_depth, None);
            d1(st, v, &g1, &mut counter).expect("side of a cut vertex");
            self.stats.d1 += 1;
        }
        while let Some(pair) = st.graph.find_separating_pair_excluding(&st.card.added) {
            let mut g1 = lightest(&st.graph, pair.components, true).expect("two heavy parts");
            g1.insert(pair.u);
            g1.insert(pair.v);
            let mut counter = |sub: ReducedState| self.count(sub, Partition::empty(), cfg_depth, None);
            match d2(st, pair.u, pair.v, &g1, &mut counter) {
                Ok(kind) => {
                    self.stats.d2 += 1;
                    if matches!(kind, D2Kind::Gadget(_)) {
                        self.stats.d2_gadgets += 1;
                    }
                }
                Err(ProcedureError::DegenerateCut) => {
                    self.stats.d2_degenerate += 1;
                    break;
                }
                Err(e) => panic!("separating pair rejected: {e}"),
            }
        }
    }

    fn select(&mut self, st: &ReducedState, p: &Partition, plain: bool) -> Selection {
        let g = &st.graph;
        let delta = g.max_degree();
        let branch = |vertex, partition, rule| Selection::Branch {
            vertex,
            partition,
            rule,
            bisection_width: None,
        };
        if plain || g.count_degree_at_least(3) <= self.cfg.small_cutoff {
            let top: Vec<VertexId> = g.vertices().filter(|&v| g.degree(v) == delta).collect();
            let pick = top.iter().copied().find(|&v| st.card.c1(v).is_positive());
            let rule = if plain { Rule::Fallback } else { Rule::Small };
            let v = pick.unwrap_or(top[0]);
            return branch(v, p.clone(), rule);
        }
        let all_cubic = |v: VertexId| g.degree(v) == 3 && g.neighbors(v).iter().all(|&w| g.degree(w) == 3);
        match delta {
            3 => match g.vertices().find(|&v| all_cubic(v)) {
                Some(v) => branch(v, p.clone(), Rule::CubicCore),
                None => self.select_by_cut(g, p),
            },
            4 => {
                let mut best: Option<(Rational, VertexId)> = None;
                for v in g.vertices().filter(|&v| g.degree(v) == 4) {
                    let r = alpha_beta(g, v);
                    if best.as_ref().is_none_or(|(b, _)| r > *b) {
                        best = Some((r, v));
                    }
                }
                branch(best.unwrap().1, p.clone(), Rule::DegreeFour)
            }
            _ => {
                let top: Vec<VertexId> = g.vertices().filter(|&v| g.degree(v) == delta).collect();
                let v = top
                    .iter()
                    .copied()
                    .find(|&v| g.neighbors(v).iter().any(|&w| g.degree(w) < delta))
                    .unwrap_or(top[0]);
                branch(v, p.clone(), Rule::HighDegree)
            }
        }
    }

    fn select_by_cut(&mut self, g: &Graph, p: &Partition) -> Selection {
        let b = skeleton(g).expect("maximum degree is 3");
        let mut q = restrict(p, &b);
        let mut width = None;
        if q.has_empty_side() {
            q = bisect(&b, self.cfg.rng_seed);
            let w = q.ec(&b);
            self.stats.bisections += 1;
            self.stats.widths.push(w);
            width = Some(w);
        }
        let q = rebalance_heavy_vertices(&q, &b);
        let cross = |v: VertexId, i: usize| b.links_into(v, q.side(1 - i));
        let two = b
            .vertices
            .iter()
            .copied()
            .find(|&v| q.side_of(v).is_some_and(|i| cross(v, i) >= 2));
        let (vertex, rule) = if let Some(v) = two {
            (v, Rule::CrossTwo)
        } else {
            let i = if q.v0.len() >= q.v1.len() { 0 } else { 1 };
            match q.side(i).iter().copied().find(|&v| cross(v, i) >= 1) {
                Some(v) => (v, Rule::CrossOne),
                None => return Selection::Restart,
            }
        };
        Selection::Branch {
            vertex,
            partition: q,
            rule,
            bisection_width: width,
        }
    }
}

fn check_input(g: &Graph, c: &CardinalityState, cfg: &EngineConfig) -> Result<(), EngineError> {
    if cfg.small_cutoff < 2 {
        return Err(EngineError::BadCutoff(cfg.small_cutoff));
    }
    if !cfg.delta.is_positive() {
        return Err(EngineError::BadDelta);
    }
    c.check_domains(g)?;
    if !is_proper(g, c) {
        return Err(EngineError::Improper);
    }
    Ok(())
}

/// `c(G)`, the weighted number of independent sets, with run statistics.
pub fn iscount_with_stats(
    g: &Graph,
    c: &CardinalityState,
    p: &Partition,
    cfg: &EngineConfig,
) -> Result<(Rational, SearchStats), EngineError> {
    check_input(g, c, cfg)?;
    let mut engine = Engine::new(cfg);
    let total = engine.count(ReducedState::new(g.clone(), c.clone()), p.clone(), 0, None);
    let mut stats = engine.stats;
    if !cfg.collect_stats {
        stats.widths.clear();
    }
    Ok((total, stats))
}

/// `c(G)`, the weighted number of independent sets.
pub fn iscount(
    g: &Graph,
    c: &CardinalityState,
    p: &Partition,
    cfg: &EngineConfig,
) -> Result<Rational, EngineError> {
    iscount_with_stats(g, c, p, cfg).map(|(t, _)| t)
}

/// Number of independent sets of `g`, the empty set included.
pub fn count_independent_sets(g: &Graph, cfg: &EngineConfig) -> Result<BigUint, EngineError> {
    let total = iscount(g, &CardinalityState::trivial(g), &Partition::empty(), cfg)?;
    Ok(total
        .to_integer()
        .to_biguint()
        .expect("trivial weights give a nonnegative integer"))
}

/// The vertex the engine would branch on for `(G, c, P)`, or a restart signal.
pub fn select_branch_vertex(
    g: &Graph,
    c: &CardinalityState,
    p: &Partition,
    cfg: &EngineConfig,
) -> Selection {
    let mut engine = Engine::new(cfg);
    engine.select(&ReducedState::new(g.clone(), c.clone()), p, false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;
    use crate::oracle::{count_is_bruteforce, weighted_total_bruteforce, OracleLimit};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn count(g: &Graph) -> BigUint {
        count_independent_sets(g, &EngineConfig::default()).unwrap()
    }

    fn tight() -> EngineConfig {
        EngineConfig {
            small_cutoff: 2,
            ..EngineConfig::default()
        }
        .with_stats()
    }

    fn vs(ids: &[u32]) -> VertexSet {
        ids.iter().map(|&i| VertexId(i)).collect()
    }

    /// Every edge of `g` replaced by a path of length two.
    fn subdivided(g: &Graph) -> Graph {
        let mut h = Graph::with_vertices(g.n());
        for (u, v) in g.edges() {
            let x = h.add_vertex();
            h.add_edge(u, x).unwrap();
            h.add_edge(x, v).unwrap();
        }
        h
    }

    #[test]
    fn small_examples() {
        assert_eq!(count(&generate::path(4)), BigUint::from(8u32));
        assert_eq!(count(&generate::cycle(5)), BigUint::from(11u32));
        assert_eq!(count(&generate::petersen()), BigUint::from(76u32));
        assert_eq!(count(&Graph::new()), BigUint::one());
        assert_eq!(count(&generate::empty(3)), BigUint::from(8u32));
    }

    #[test]
    fn policies_agree_with_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for cutoff in [2, 4, 20] {
            let cfg = EngineConfig {
                small_cutoff: cutoff,
                ..EngineConfig::default()
            };
            for _ in 0..40 {
                let n = rng.gen_range(1..=14);
                let g = generate::gnp(n, rng.gen_range(0.1..0.6), &mut rng);
                let want = count_is_bruteforce(&g, OracleLimit::default()).unwrap();
                assert_eq!(count_independent_sets(&g, &cfg).unwrap(), want);
            }
            for n in [10, 14, 18] {
                let g = generate::random_cubic(n, &mut rng);
                let want = count_is_bruteforce(&g, OracleLimit::default()).unwrap();
                assert_eq!(count_independent_sets(&g, &cfg).unwrap(), want);
                let s = subdivided(&generate::random_cubic(8, &mut rng));
                let want = count_is_bruteforce(&s, OracleLimit::default()).unwrap();
                assert_eq!(count_independent_sets(&s, &cfg).unwrap(), want);
            }
        }
    }

    #[test]
    fn weighted_states_agree_with_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for i in 0..60 {
            let n = rng.gen_range(1..=11);
            let g = generate::gnp(n, rng.gen_range(0.15..0.6), &mut rng);
            let c = generate::random_state(&g, i % 2 == 0, &mut rng);
            let want = weighted_total_bruteforce(&g, &c, OracleLimit::default()).unwrap();
            for cfg in [EngineConfig::default(), tight()] {
                assert_eq!(iscount(&g, &c, &Partition::empty(), &cfg).unwrap(), want);
            }
        }
    }

    #[test]
    fn rejects_bad_input() {
        let g = generate::path(3);
        let mut c = CardinalityState::trivial(&g);
        c.c0_v.insert(VertexId(1), Rational::zero());
        let cfg = EngineConfig::default();
        assert_eq!(iscount(&g, &c, &Partition::empty(), &cfg), Err(EngineError::Improper));
        c.c0_v.remove(&VertexId(1));
        assert!(matches!(
            iscount(&g, &c, &Partition::empty(), &cfg),
            Err(EngineError::Cardinality(_))
        ));
        let bad = EngineConfig {
            small_cutoff: 1,
            ..cfg
        };
        assert_eq!(count_independent_sets(&g, &bad), Err(EngineError::BadCutoff(1)));
    }

    #[test]
    fn stale_partition_is_harmless() {
        let g = generate::cube();
        let p = Partition::new(vs(&[0, 40]), vs(&[7, 41]));
        let t = iscount(&g, &CardinalityState::trivial(&g), &p, &tight()).unwrap();
        assert_eq!(t, Rational::from_integer(BigInt::from(35)));
    }

    #[test]
    fn alpha_beta_examples() {
        let k5 = generate::complete(5);
        assert_eq!(alpha_beta(&k5, VertexId(0)), ratio(4, 1));

        // v0 has neighbours v1, v2 of degree 2 and v3, v4 of degree 4; 2m/n = 16/5
        let g = Graph::from_edges(
            10,
            &[
                (0, 1), (0, 2), (0, 3), (0, 4), (1, 5), (2, 6), (3, 4), (3, 7), (3, 8),
                (4, 7), (4, 9), (5, 6), (6, 7), (7, 8), (8, 9), (9, 5),
            ],
        )
        .unwrap();
        assert_eq!(density(&g), ratio(16, 5));
        assert_eq!(alpha_beta(&g, VertexId(0)), ratio(3, 1));

        // v0 of degree 4 with four neighbours of degree 3; 2m/n = 7/2
        let g = Graph::from_edges(
            8,
            &[
                (0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (5, 6), (6, 7), (5, 7),
                (5, 3), (5, 4), (6, 3), (6, 4), (7, 1), (7, 2),
            ],
        )
        .unwrap();
        assert_eq!(density(&g), ratio(7, 2));
        assert!(g.neighbors(VertexId(0)).iter().all(|&w| g.degree(w) == 3));
        assert_eq!(alpha_beta(&g, VertexId(0)), ratio(24, 7));
    }

    #[test]
    fn measure_examples() {
        let w = MeasureWeights::default();
        assert_eq!(measure(&generate::petersen(), &Partition::empty(), &w), decimal("2.0001"));
        assert_eq!(measure(&Graph::new(), &Partition::empty(), &w), Rational::zero());

        // K3,3 with the three edges at a0 subdivided: n2 = 3, n3 = 6
        let mut g = Graph::with_vertices(6);
        for a in 0..3 {
            for b in 3..6 {
                if a == 0 {
                    let x = g.add_vertex();
                    g.add_edge(VertexId(a), x).unwrap();
                    g.add_edge(x, VertexId(b)).unwrap();
                } else {
                    g.add_edge(VertexId(a), VertexId(b)).unwrap();
                }
            }
        }
        assert_eq!((g.count_degree(2), g.count_degree(3)), (3, 6));
        let want = decimal("0.023855") * int(3) + decimal("0.188173") * int(6);
        assert_eq!(dense_subcubic_measure(&g, &w), want);
        assert_eq!(measure(&g, &Partition::empty(), &w), decimal("1.20006"));

        let q3 = generate::cube();
        let p = Partition::new(vs(&[0, 1, 2, 3]), vs(&[4, 5, 6, 7]));
        let want = &w.subcubic_vertex * int(4) + ratio(3, 5) * int(4);
        assert_eq!(measure(&q3, &p, &w), want);

        assert_eq!(measure(&generate::complete(5), &Partition::empty(), &w), decimal("0.271922") * int(5));
        assert_eq!(measure(&generate::complete(6), &Partition::empty(), &w), decimal("0.298566") * int(6));
        assert_eq!(measure(&generate::complete(8), &Partition::empty(), &w), int(8));

        // components add up
        let two = Graph::from_edges(8, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (4, 5)]).unwrap();
        assert_eq!(measure(&two, &Partition::empty(), &w), &w.subcubic_vertex * int(4));
    }

    #[test]
    fn table_constants() {
        let w = MeasureWeights::default();
        assert_eq!(w.delta, ratio(1, 100_000));
        assert_eq!(w.density_bands[0].w, ["0.023855", "0.188173", "0.331455"].map(decimal));
        assert_eq!(w.density_bands[2].high, ratio(76, 21));
        assert_eq!(w.high_band[4], ratio(30669, 100_000));
        assert_eq!(w.band_for(&ratio(3, 1)).w[0], decimal("0.023855"));
        assert_eq!(w.band_for(&ratio(31, 10)).w[0], decimal("0.068596"));
        assert_eq!(w.band_for(&ratio(4, 1)).w[2], decimal("0.271922"));
    }

    fn chosen(s: Selection) -> (VertexId, Rule) {
        match s {
            Selection::Branch { vertex, rule, .. } => (vertex, rule),
            Selection::Restart => panic!("unexpected restart"),
        }
    }

    #[test]
    fn selection_rules() {
        let sel = |g: &Graph, p: &Partition, cfg: &EngineConfig| {
            select_branch_vertex(g, &CardinalityState::trivial(g), p, cfg)
        };
        let pet = generate::petersen();
        let none = Partition::empty();
        assert_eq!(chosen(sel(&pet, &none, &EngineConfig::default())), (VertexId(0), Rule::Small));
        assert_eq!(chosen(sel(&pet, &none, &tight())), (VertexId(0), Rule::CubicCore));

        let sub = subdivided(&generate::cube());
        match sel(&sub, &none, &tight()) {
            Selection::Branch {
                vertex,
                partition,
                rule,
                bisection_width,
            } => {
                assert!(matches!(rule, Rule::CrossTwo | Rule::CrossOne));
                assert_eq!(bisection_width, Some(4));
                assert_eq!(sub.degree(vertex), 3);
                assert_eq!(partition.v0.len() + partition.v1.len(), 8);
            }
            Selection::Restart => panic!("cube skeleton is connected"),
        }
        // antipodal corners share no chain
        let apart = Partition::new(vs(&[0]), vs(&[7]));
        assert_eq!(sel(&sub, &apart, &tight()), Selection::Restart);

        // the degree-4 example: v0 has ratio 3, v3 and v4 have lower ratios
        let g = Graph::from_edges(
            10,
            &[
                (0, 1), (0, 2), (0, 3), (0, 4), (1, 5), (2, 6), (3, 4), (3, 7), (3, 8),
                (4, 7), (4, 9), (5, 6), (6, 7), (7, 8), (8, 9), (9, 5),
            ],
        )
        .unwrap();
        let best = g
            .vertices()
            .filter(|&v| g.degree(v) == 4)
            .max_by(|&a, &b| alpha_beta(&g, a).cmp(&alpha_beta(&g, b)).then(b.cmp(&a)))
            .unwrap();
        assert_eq!(chosen(sel(&g, &none, &tight())), (best, Rule::DegreeFour));

        // K6 plus a pendant path on v5: v5 has a lower-degree neighbour
        let mut k6 = generate::complete(6);
        let x = k6.add_vertex();
        k6.add_edge(VertexId(5), x).unwrap();
        assert_eq!(chosen(sel(&k6, &none, &tight())), (VertexId(5), Rule::HighDegree));
    }

    #[test]
    fn small_rule_skips_negative_gadgets() {
        // path u - x - v with x a gadget of negative c1; x alone has maximum degree
        let g = generate::path(3);
        let mut c = CardinalityState::trivial(&g);
        c.added.insert(VertexId(1));
        c.c1.insert(VertexId(1), ratio(-1, 2));
        let s = select_branch_vertex(&g, &c, &Partition::empty(), &EngineConfig::default());
        // nothing else has degree 2, so the gadget is taken anyway
        assert_eq!(chosen(s), (VertexId(1), Rule::Small));
        let mut c4 = CardinalityState::trivial(&generate::cycle(4));
        c4.added.insert(VertexId(0));
        c4.c1.insert(VertexId(0), ratio(-1, 2));
        let s = select_branch_vertex(&generate::cycle(4), &c4, &Partition::empty(), &EngineConfig::default());
        assert_eq!(chosen(s).0, VertexId(1));
    }

    #[test]
    fn runs_are_deterministic() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let g = generate::random_cubic(30, &mut rng);
        let c = CardinalityState::trivial(&g);
        let cfg = tight();
        let a = iscount_with_stats(&g, &c, &Partition::empty(), &cfg).unwrap();
        let b = iscount_with_stats(&g, &c, &Partition::empty(), &cfg).unwrap();
        assert_eq!(a, b);
        assert!(a.1.branch_nodes >= 1);
    }

    #[test]
    fn bisection_regime_descends() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut linked = 0;
        for n in [20, 24] {
            let g = generate::random_cubic(n, &mut rng);
            let c = CardinalityState::trivial(&g);
            let (t, stats) = iscount_with_stats(&g, &c, &Partition::empty(), &tight()).unwrap();
            assert_eq!(t.to_integer().to_biguint().unwrap(), count_is_bruteforce(&g, OracleLimit::default()).unwrap());
            assert!(stats.bisections > 0);
            assert!(stats.descent_checks > 0);
            assert_eq!(stats.descent_violations, 0);
            let trace = &stats.measure_trace;
            linked += trace.iter().filter(|m| m.parent.is_some()).count();
            for m in trace {
                if let Some(i) = m.parent {
                    assert!(m.value < trace[i].value);
                    assert!(m.depth > trace[i].depth);
                    assert_eq!(m.epoch, trace[i].epoch);
                }
            }
        }
        assert!(linked > 0);
    }
}
