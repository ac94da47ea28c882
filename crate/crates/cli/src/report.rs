//! JSON views of engine results.

use iscount_core::chromatic::ChromaticResult;
use iscount_core::iscount::SearchStats;
use serde_json::{json, Value};

/// `{branch_nodes, depth, r1, r2, d0, d1, d2, restarts, bisections, widths}`.
pub fn stats_json(s: &SearchStats) -> Value {
    json!({
        "branch_nodes": s.branch_nodes,
        "depth": s.max_depth,
        "r1": s.r1,
        "r2": s.r2,
        "d0": s.d0,
        "d1": s.d1,
        "d2": s.d2,
        "restarts": s.restarts,
        "bisections": s.bisections,
        "widths": s.widths,
    })
}

pub fn chromatic_json(r: &ChromaticResult) -> Value {
    json!({
        "chi": r.chi,
        "per_k_sums": r.per_k_sums.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
        "subsets_evaluated": r.subsets_evaluated,
    })
}
