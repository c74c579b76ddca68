// SPDX-License-Identifier: Apache-2.0

//! Rebuild phase after an edge removal: split possibly affected DSCCs into
//! their PDSCCs and restore the `Edges` lists around them.

use serde::Serialize;

use super::Engine;

/// Record of one rebuild, for inspection and tests.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct MakePrimaryTrace {
    /// Roots of the DSCCs reached by the forward search, in discovery order.
    pub affected: Vec<usize>,
    /// Roots of the PDSCC pieces the affected DSCCs were split into.
    pub new_roots: Vec<usize>,
    /// `(root, label)` lists that received an entry through `in_primary`.
    pub gathered: Vec<(usize, usize)>,
    /// `(root, label)` pairs placed on the worklist.
    pub enqueued: Vec<(usize, usize)>,
}

impl Engine {
    pub(super) fn make_primary(&mut self, start: usize) {
        let k = self.k;
        let mut trace = MakePrimaryTrace::default();
        self.in_z.clear();
        self.in_r.clear();
        self.in_l.clear();

        // 1. forward search over DSCCs with two distinct targets under a label
        let z0 = self.core.find(start);
        self.in_z.insert(z0);
        trace.affected.push(z0);
        let mut i = 0;
        while i < trace.affected.len() {
            let x = trace.affected[i];
            i += 1;
            let members: Vec<usize> = self.core.dsu.members(x).collect();
            for b in 0..k {
                let mut first = None;
                let mut second = None;
                for &w in &members {
                    self.core.work.list_nodes += 1;
                    if let Some(h) = self.out.head(self.slot(w, b)) {
                        match first {
                            None => first = Some(h),
                            Some(f) if f != h => {
                                second = Some(h);
                                break;
                            }
                            Some(_) => {}
                        }
                    }
                }
                if let Some(t) = second {
                    let z = self.core.find(t);
                    if self.in_z.insert(z) {
                        trace.affected.push(z);
                    }
                }
            }
        }

        // 2. drop stale lists of unaffected in-neighbors, split into PDSCCs
        for &z in &trace.affected {
            let members: Vec<usize> = self.core.dsu.members(z).collect();
            for &t in &members {
                for b in 0..k {
                    let ts = self.slot(t, b);
                    self.core.work.list_nodes += 1 + self.in_primary[ts].len() as u64;
                    for j in 0..self.in_primary[ts].len() {
                        let s = self.in_primary[ts][j] as usize;
                        let x = self.core.find(s);
                        if !self.in_z.contains(x) {
                            let xs = self.slot(x, b);
                            self.core.edges.clear(xs);
                        }
                    }
                }
            }
            let prim = &mut self.prim;
            self.core.work.finds += members.len() as u64;
            let pieces = self.core.dsu.split_by(z, |t| prim.component_repr(t));
            for r in pieces {
                self.in_r.insert(r);
                trace.new_roots.push(r);
            }
            for b in 0..k {
                let zs = self.slot(z, b);
                self.core.edges.clear(zs);
            }
        }

        // 3. repopulate Edges for the pieces and their in-neighbors
        let mut collapse = Vec::new();
        for ri in 0..trace.new_roots.len() {
            let r = trace.new_roots[ri];
            let members: Vec<usize> = self.core.dsu.members(r).collect();
            for &t in &members {
                for b in 0..k {
                    let ts = self.slot(t, b);
                    self.core.work.list_nodes += 1 + self.in_primary[ts].len() as u64;
                    for j in 0..self.in_primary[ts].len() {
                        let s = self.in_primary[ts][j] as usize;
                        let x = self.core.find(s);
                        let xs = self.slot(x, b);
                        self.core.edges.push_back(xs, t);
                        if self.in_l.insert(xs) {
                            trace.gathered.push((x, b));
                        }
                    }
                    if let Some(y) = self.out.head(ts) {
                        if !self.in_r.contains(self.core.find(y)) {
                            let rs = self.slot(r, b);
                            self.core.edges.push_back(rs, y);
                            collapse.push((r, b));
                        }
                    }
                }
            }
        }
        // several members may point into the same outside DSCC; those lists
        // only need collapsing, but must not stay longer than one entry
        self.in_l.clear();
        for &(x, b) in trace.gathered.iter().chain(&collapse) {
            let xs = self.slot(x, b);
            if self.in_l.insert(xs) && self.core.enqueue_if_long(x, b) {
                trace.enqueued.push((x, b));
            }
        }
        self.trace = Some(trace);
    }
}
