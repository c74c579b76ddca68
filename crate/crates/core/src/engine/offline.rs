// SPDX-License-Identifier: Apache-2.0

//! From-scratch DSCC computation: one pass over the edges, then the merge loop.

use super::fixpoint::{FixpointCore, WorkCounters};
use crate::graph::DyckGraph;
use crate::partition::Partition;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OfflineResult {
    pub partition: Partition,
    /// Edges read during initialization plus list entries read by the merge
    /// loop. At least the number of distinct edges.
    pub edge_touches: u64,
    pub work: WorkCounters,
}

pub fn offline_recompute(g: &DyckGraph) -> OfflineResult {
    let mut core = FixpointCore::new(g.n(), g.k());
    let mut touches = 0u64;
    for ((u, v, a), _) in g.edges() {
        touches += 1;
        let s = core.slot(u, a);
        core.edges.push_back(s, v);
    }
    for u in 0..g.n() {
        for a in 0..g.k() {
            core.enqueue_if_long(u, a);
        }
    }
    core.run();
    let reps: Vec<usize> = (0..g.n()).map(|u| core.dsu.find_const(u)).collect();
    OfflineResult {
        partition: Partition::from_labels(&reps),
        edge_touches: touches + core.work.list_nodes,
        work: core.work,
    }
}
