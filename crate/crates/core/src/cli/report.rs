// SPDX-License-Identifier: Apache-2.0

//! Serializable reports printed by `--json`.
//!
//! `run --json` emits a [`RunReport`]:
//!
//! ```text
//! { "n": 6, "k": 2, "ops": 4, "updates": 2,
//!   "answers": [ {"kind": "same", "index": 2, "u": 0, "v": 2, "same": true},
//!                {"kind": "repr", "index": 3, "u": 4, "repr": 5} ],
//!   "final_partition": [[0, 2], [1], ...],
//!   "invariant_checks": 4 | null,
//!   "work": { "finds": .., "unions": .., "list_nodes": .., "primal_ops": ..,
//!             "queue_extractions": .., "splices": .. },
//!   "mean_update_nodes_touched": 12.5, "max_update_nodes_touched": 17,
//!   "elapsed_secs": 0.0001 }
//! ```
//!
//! `bench --json` emits a [`BenchReport`]: one row per update plus a summary
//! of mean and max time and work. Every report type deserializes back from
//! its own output.
//! Op indices count every line of the ops file that holds an op, from 0.

use serde::{Deserialize, Serialize};

use crate::engine::WorkCounters;
use crate::partition::Partition;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum QueryAnswer {
    Same {
        index: usize,
        u: usize,
        v: usize,
        same: bool,
    },
    Repr {
        index: usize,
        u: usize,
        repr: usize,
    },
}

impl std::fmt::Display for QueryAnswer {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            QueryAnswer::Same { same, .. } => write!(f, "{same}"),
            QueryAnswer::Repr { repr, .. } => write!(f, "{repr}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub n: usize,
    pub k: usize,
    pub ops: usize,
    pub updates: usize,
    pub answers: Vec<QueryAnswer>,
    pub final_partition: Partition,
    /// Number of invariant checks performed, when requested.
    pub invariant_checks: Option<usize>,
    /// Work summed over all updates.
    pub work: WorkCounters,
    pub mean_update_nodes_touched: f64,
    pub max_update_nodes_touched: u64,
    pub elapsed_secs: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OfflineCost {
    pub micros: f64,
    pub edge_touches: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub index: usize,
    pub op: String,
    pub micros: f64,
    pub nodes_touched: u64,
    pub work: WorkCounters,
    pub offline: Option<OfflineCost>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct Stat {
    pub mean: f64,
    pub max: f64,
}

impl Stat {
    pub fn of(xs: impl Iterator<Item = f64>) -> Self {
        let (mut sum, mut max, mut len) = (0.0, 0.0f64, 0usize);
        for x in xs {
            sum += x;
            max = max.max(x);
            len += 1;
        }
        Stat {
            mean: if len == 0 { 0.0 } else { sum / len as f64 },
            max,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchSummary {
    pub updates: usize,
    pub micros: Stat,
    pub nodes_touched: Stat,
    pub offline_micros: Option<Stat>,
    pub offline_edge_touches: Option<Stat>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub n: usize,
    pub k: usize,
    pub rows: Vec<BenchRow>,
    pub summary: BenchSummary,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Mismatch {
    /// Index of the last applied op, or `None` for the initial graph.
    pub after_op: Option<usize>,
    pub oracle: String,
    pub engine: Partition,
    pub expected: Partition,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub ops: usize,
    pub comparisons: usize,
    pub mismatch: Option<Mismatch>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stat_of_empty_is_zero() {
        assert_eq!(Stat::of(std::iter::empty()), Stat::default());
    }

    #[test]
    fn stat_mean_and_max() {
        let s = Stat::of([1.0, 4.0, 1.0].into_iter());
        assert_eq!(s, Stat { mean: 2.0, max: 4.0 });
    }

    #[test]
    fn answers_print_bare_values() {
        let same = QueryAnswer::Same {
            index: 0,
            u: 1,
            v: 2,
            same: false,
        };
        assert_eq!(same.to_string(), "false");
        let repr = QueryAnswer::Repr {
            index: 1,
            u: 3,
            repr: 7,
        };
        assert_eq!(repr.to_string(), "7");
        let json = serde_json::to_value(&repr).unwrap();
        assert_eq!(json["kind"], "repr");
    }
}
