// SPDX-License-Identifier: Apache-2.0

//! The merge loop shared by the dynamic engine and the offline baseline.

use std::collections::VecDeque;
use std::ops::Sub;

use serde::{Deserialize, Serialize};

use super::lists::ConcatLists;
use crate::dsu::SplitDisjointSets;

/// Machine-independent work tallies.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WorkCounters {
    pub finds: u64,
    pub unions: u64,
    /// List cells, set members and adjacency entries visited.
    pub list_nodes: u64,
    /// Insertions into and deletions from the primal connectivity structure.
    pub primal_ops: u64,
    pub queue_extractions: u64,
    pub splices: u64,
}

impl WorkCounters {
    /// finds + list nodes visited + primal ops + queue extractions.
    pub fn nodes_touched(&self) -> u64 {
        self.finds + self.list_nodes + self.primal_ops + self.queue_extractions
    }

    pub fn dsu_ops(&self) -> u64 {
        self.finds + self.unions
    }
}

impl Sub for WorkCounters {
    type Output = WorkCounters;

    fn sub(self, o: WorkCounters) -> WorkCounters {
        WorkCounters {
            finds: self.finds - o.finds,
            unions: self.unions - o.unions,
            list_nodes: self.list_nodes - o.list_nodes,
            primal_ops: self.primal_ops - o.primal_ops,
            queue_extractions: self.queue_extractions - o.queue_extractions,
            splices: self.splices - o.splices,
        }
    }
}

/// Epoch-stamped membership marks; `clear` is O(1).
#[derive(Debug, Clone)]
pub(crate) struct Marks {
    stamp: Vec<u32>,
    epoch: u32,
}

impl Marks {
    pub(crate) fn new(len: usize) -> Self {
        Marks {
            stamp: vec![0; len],
            epoch: 1,
        }
    }

    pub(crate) fn clear(&mut self) {
        if self.epoch == u32::MAX {
            self.stamp.fill(0);
            self.epoch = 0;
        }
        self.epoch += 1;
    }

    pub(crate) fn contains(&self, i: usize) -> bool {
        self.stamp[i] == self.epoch
    }

    /// Marks `i`; returns false if it was already marked.
    pub(crate) fn insert(&mut self, i: usize) -> bool {
        let fresh = self.stamp[i] != self.epoch;
        self.stamp[i] = self.epoch;
        fresh
    }
}

/// DisjointSets, the per-root `Edges` lists and the worklist.
#[derive(Debug, Clone)]
pub(crate) struct FixpointCore {
    pub(crate) k: usize,
    pub(crate) dsu: SplitDisjointSets,
    pub(crate) edges: ConcatLists,
    pub(crate) queue: VecDeque<(usize, usize)>,
    pub(crate) work: WorkCounters,
    seen: Marks,
    roots: Vec<usize>,
}

impl FixpointCore {
    pub(crate) fn new(n: usize, k: usize) -> Self {
        FixpointCore {
            k,
            dsu: SplitDisjointSets::new(n),
            edges: ConcatLists::new(n * k),
            queue: VecDeque::new(),
            work: WorkCounters::default(),
            seen: Marks::new(n),
            roots: Vec::new(),
        }
    }

    #[inline]
    pub(crate) fn slot(&self, x: usize, a: usize) -> usize {
        x * self.k + a
    }

    pub(crate) fn find(&mut self, u: usize) -> usize {
        self.work.finds += 1;
        self.dsu.find(u)
    }

    pub(crate) fn enqueue_if_long(&mut self, x: usize, a: usize) -> bool {
        let long = self.edges.len(self.slot(x, a)) >= 2;
        if long {
            self.queue.push_back((x, a));
        }
        long
    }

    /// Drains the worklist. Each extracted `(u, a)` with `u` still a root
    /// merges the components its `a`-targets fall into and leaves a single
    /// entry in `Edges[u][a]`.
    pub(crate) fn run(&mut self) {
        while let Some((u, a)) = self.queue.pop_front() {
            self.work.queue_extractions += 1;
            if self.find(u) != u {
                continue;
            }
            let us = self.slot(u, a);
            self.seen.clear();
            let mut roots = std::mem::take(&mut self.roots);
            roots.clear();
            let targets: Vec<usize> = self.edges.iter(us).collect();
            self.work.list_nodes += targets.len() as u64;
            for w in targets {
                let r = self.find(w);
                if self.seen.insert(r) {
                    roots.push(r);
                }
            }
            let Some(&only) = roots.first() else {
                self.roots = roots;
                continue;
            };
            let x = if roots.len() >= 2 {
                // latest-discovered component other than u survives
                let x = *roots.iter().rev().find(|&&r| r != u).expect("two roots");
                self.merge(&roots, x, u, a);
                x
            } else {
                only
            };
            if !self.seen.contains(u) || roots.len() == 1 {
                self.edges.set_single(us, x);
            }
            self.roots = roots;
        }
    }

    fn merge(&mut self, roots: &[usize], x: usize, u: usize, a: usize) {
        self.dsu.union_onto(roots, x);
        self.work.unions += roots.len() as u64 - 1;
        for b in 0..self.k {
            let xs = self.slot(x, b);
            for &v in roots {
                if v == x {
                    continue;
                }
                if (v, b) == (u, a) {
                    // the list being processed becomes a self-loop on x
                    self.edges.clear(self.slot(u, a));
                    self.edges.push_back(xs, x);
                } else {
                    self.edges.splice_front(xs, self.slot(v, b));
                    self.work.splices += 1;
                }
            }
            self.enqueue_if_long(x, b);
        }
    }
}
