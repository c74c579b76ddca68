// SPDX-License-Identifier: Apache-2.0

//! Fully dynamic DSCC maintenance.
//!
//! Only closing edges `u -a-> v` are stored. The engine keeps, per
//! `(node, label)`:
//!
//! * `out`: the distinct targets, newest first, with an O(1) removal handle
//!   per present edge;
//! * `in_primary`: for a node `z`, the sources `u` for which `z` is the tail
//!   (oldest target) of `out[u][a]`;
//! * `Edges` (inside the fixpoint core): for a DSCC root, the pending targets
//!   still to be merged.
//!
//! Targets of one `out` list are all Dyck-equivalent, so consecutive list
//! entries are joined in an undirected "primal" connectivity structure whose
//! components (PDSCCs) refine the DSCCs and survive deletions elsewhere. A
//! deletion splits every possibly affected DSCC into its PDSCCs, rebuilds the
//! `Edges` lists around them and reruns the merge loop.

mod fixpoint;
mod invariants;
mod lists;
mod offline;
mod primary;

use std::collections::HashMap;

use serde::Serialize;

pub use fixpoint::WorkCounters;
pub use invariants::{InvariantReport, InvariantResult};
pub use offline::{offline_recompute, OfflineResult};
pub use primary::MakePrimaryTrace;

use crate::conn::DynConnectivity;
use crate::error::{Error, Result};
use crate::graph::{DyckGraph, Edge, Label, NodeId, UpdateOp};
use crate::partition::Partition;
use fixpoint::{FixpointCore, Marks};
use lists::{AdjLists, CellId};

const NO_POS: u32 = u32::MAX;

#[derive(Debug, Clone, Copy)]
struct EdgeSlot {
    count: u32,
    cell: CellId,
}

/// Cumulative and last-operation work counters.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct CounterSnapshot {
    pub total: WorkCounters,
    pub last_op: WorkCounters,
}

/// Result of [`Engine::apply`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OpOutcome {
    Updated,
    Same(bool),
    Repr(NodeId),
}

#[derive(Debug, Clone)]
pub struct Engine {
    n: usize,
    k: usize,
    count: HashMap<Edge, EdgeSlot>,
    out: AdjLists,
    // slot z*k+a -> sources u whose out[u][a] ends at z
    in_primary: Vec<Vec<u32>>,
    // slot u*k+a -> index of u in the in_primary list of its tail
    ip_pos: Vec<u32>,
    core: FixpointCore,
    prim: DynConnectivity,
    op_start: WorkCounters,
    last_op: WorkCounters,
    trace: Option<MakePrimaryTrace>,
    in_z: Marks,
    in_r: Marks,
    in_l: Marks,
}

impl Engine {
    /// Engine over `n` isolated nodes and `k` labels. Panics if `k == 0`.
    pub fn new(n: usize, k: usize) -> Self {
        assert!(k >= 1, "at least one label is required");
        Engine {
            n,
            k,
            count: HashMap::new(),
            out: AdjLists::new(n * k),
            in_primary: vec![Vec::new(); n * k],
            ip_pos: vec![NO_POS; n * k],
            core: FixpointCore::new(n, k),
            prim: DynConnectivity::new(n),
            op_start: WorkCounters::default(),
            last_op: WorkCounters::default(),
            trace: None,
            in_z: Marks::new(n),
            in_r: Marks::new(n),
            in_l: Marks::new(n * k),
        }
    }

    /// Same state as inserting every edge copy of `g` one by one.
    pub fn from_graph(g: &DyckGraph) -> Self {
        let mut e = Engine::new(g.n(), g.k());
        for (u, v, a) in g.edge_copies() {
            e.insert(u, v, a).expect("graph edges are in range");
        }
        e
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    #[inline]
    fn slot(&self, x: usize, a: usize) -> usize {
        x * self.k + a
    }

    fn check_edge(&self, u: NodeId, v: NodeId, a: Label) -> Result<()> {
        for x in [u, v] {
            if x >= self.n {
                return Err(Error::NodeOutOfRange {
                    node: x as u32,
                    n: self.n,
                });
            }
        }
        if a >= self.k {
            return Err(Error::LabelOutOfRange {
                label: a as u32,
                k: self.k,
            });
        }
        Ok(())
    }

    fn check_node(&self, u: NodeId) -> Result<()> {
        if u >= self.n {
            return Err(Error::NodeOutOfRange {
                node: u as u32,
                n: self.n,
            });
        }
        Ok(())
    }

    fn begin_op(&mut self) {
        self.op_start = self.core.work;
    }

    fn end_op(&mut self) {
        self.last_op = self.core.work - self.op_start;
    }

    fn ip_add(&mut self, z: usize, a: usize, u: usize) {
        let zs = self.slot(z, a);
        let us = self.slot(u, a);
        debug_assert_eq!(self.ip_pos[us], NO_POS);
        self.ip_pos[us] = self.in_primary[zs].len() as u32;
        self.in_primary[zs].push(u as u32);
    }

    fn ip_remove(&mut self, z: usize, a: usize, u: usize) {
        let zs = self.slot(z, a);
        let us = self.slot(u, a);
        let pos = std::mem::replace(&mut self.ip_pos[us], NO_POS) as usize;
        let list = &mut self.in_primary[zs];
        debug_assert_eq!(list[pos] as usize, u);
        list.swap_remove(pos);
        if let Some(&moved) = list.get(pos) {
            let ms = moved as usize * self.k + a;
            self.ip_pos[ms] = pos as u32;
        }
    }

    fn prim_insert(&mut self, x: usize, y: usize) {
        self.core.work.primal_ops += 1;
        self.prim.insert(x, y);
    }

    fn prim_delete(&mut self, x: usize, y: usize) {
        self.core.work.primal_ops += 1;
        self.prim.delete(x, y);
    }

    /// Adds one copy of the closing edge `u -a-> v`.
    pub fn insert(&mut self, u: NodeId, v: NodeId, a: Label) -> Result<()> {
        self.check_edge(u, v, a)?;
        self.begin_op();
        self.insert_edge(u, v, a);
        self.end_op();
        Ok(())
    }

    fn insert_edge(&mut self, u: usize, v: usize, a: usize) {
        if let Some(e) = self.count.get_mut(&(u, v, a)) {
            e.count += 1;
            return;
        }
        let us = self.slot(u, a);
        match self.out.head(us) {
            None => self.ip_add(v, a, u),
            Some(y) => self.prim_insert(v, y),
        }
        let cell = self.out.push_head(us, v);
        self.core.work.list_nodes += 1;
        self.count.insert((u, v, a), EdgeSlot { count: 1, cell });

        let x = self.core.find(u);
        let xs = self.slot(x, a);
        self.core.edges.push_back(xs, v);
        if self.core.enqueue_if_long(x, a) {
            self.core.run();
        }
    }

    /// Removes one copy of the closing edge `u -a-> v`.
    pub fn delete(&mut self, u: NodeId, v: NodeId, a: Label) -> Result<()> {
        self.check_edge(u, v, a)?;
        if !self.count.contains_key(&(u, v, a)) {
            return Err(Error::AbsentEdge {
                u: u as u32,
                v: v as u32,
                label: a as u32,
            });
        }
        self.begin_op();
        let e = self.count.get_mut(&(u, v, a)).expect("checked above");
        e.count -= 1;
        if e.count == 0 {
            let cell = e.cell;
            self.count.remove(&(u, v, a));
            self.delete_edge(u, v, a, cell);
        }
        self.end_op();
        Ok(())
    }

    fn delete_edge(&mut self, u: usize, v: usize, a: usize, cell: CellId) {
        let us = self.slot(u, a);
        let toward_head = self.out.prev(cell);
        let toward_tail = self.out.next(cell);
        if toward_tail.is_none() {
            // v is the tail: the in_primary entry moves to the new tail
            self.ip_remove(v, a, u);
            if let Some(p) = toward_head {
                let w = self.out.val(p);
                self.ip_add(w, a, u);
            }
        }
        let nb: Vec<usize> = [toward_head, toward_tail]
            .into_iter()
            .flatten()
            .map(|c| self.out.val(c))
            .collect();
        self.core.work.list_nodes += 1 + nb.len() as u64;
        for &y in &nb {
            self.prim_delete(v, y);
        }
        self.out.remove(us, cell);
        if let [p, q] = nb[..] {
            self.prim_insert(p, q);
        }
        // Edges[find(u)][a] may name v as its only target. Any remaining
        // a-edges of u's DSCC lead into DSCC(v), which the rebuild visits, so
        // the list is repopulated there if still needed.
        let x = self.core.find(u);
        let xs = self.slot(x, a);
        self.core.edges.clear(xs);
        self.make_primary(v);
        self.core.run();
    }

    /// Applies an update or answers a query.
    pub fn apply(&mut self, op: &UpdateOp) -> Result<OpOutcome> {
        match *op {
            UpdateOp::Insert { u, v, label } => {
                self.insert(u, v, label).map(|_| OpOutcome::Updated)
            }
            UpdateOp::Delete { u, v, label } => {
                self.delete(u, v, label).map(|_| OpOutcome::Updated)
            }
            UpdateOp::QuerySame { u, v } => {
                self.check_node(u)?;
                self.check_node(v)?;
                Ok(OpOutcome::Same(self.same_dscc(u, v)))
            }
            UpdateOp::QueryRepr { u } => {
                self.check_node(u)?;
                Ok(OpOutcome::Repr(self.dscc_repr(u)))
            }
        }
    }

    /// True iff `u` and `v` are Dyck-inter-reachable. Panics on out-of-range ids.
    pub fn same_dscc(&self, u: NodeId, v: NodeId) -> bool {
        self.dscc_repr(u) == self.dscc_repr(v)
    }

    /// Representative of `u`'s DSCC. Panics on out-of-range ids.
    pub fn dscc_repr(&self, u: NodeId) -> NodeId {
        self.core.dsu.find_const(u)
    }

    pub fn partition(&self) -> Partition {
        let reps: Vec<usize> = (0..self.n).map(|u| self.dscc_repr(u)).collect();
        Partition::from_labels(&reps)
    }

    /// PDSCCs: components of the primal graph.
    pub fn primal_partition(&self) -> Partition {
        let reps: Vec<usize> = (0..self.n)
            .map(|u| self.prim.component_repr_const(u))
            .collect();
        Partition::from_labels(&reps)
    }

    /// Multiplicity of `u -a-> v`.
    pub fn count(&self, u: NodeId, v: NodeId, a: Label) -> u32 {
        self.count.get(&(u, v, a)).map_or(0, |e| e.count)
    }

    /// The current edge multiset as a graph.
    pub fn graph(&self) -> DyckGraph {
        let mut g = DyckGraph::new(self.n, self.k);
        let mut es: Vec<_> = self.count.iter().collect();
        es.sort_unstable_by_key(|(e, _)| **e);
        for (&(u, v, a), s) in es {
            for _ in 0..s.count {
                g.add_edge(u, v, a).expect("engine edges are in range");
            }
        }
        g
    }

    pub fn work_counters(&self) -> CounterSnapshot {
        CounterSnapshot {
            total: self.core.work,
            last_op: self.last_op,
        }
    }

    /// Rotations and adjacency scans inside the primal connectivity structure.
    pub fn primal_work(&self) -> u64 {
        self.prim.work()
    }

    /// What the most recent edge removal's rebuild phase did, if any edge
    /// has been removed.
    pub fn last_make_primary(&self) -> Option<&MakePrimaryTrace> {
        self.trace.as_ref()
    }

    /// Distinct targets of `u` under `a`, newest first.
    pub fn out_edges(&self, u: NodeId, a: Label) -> Vec<NodeId> {
        self.out.iter(self.slot(u, a)).collect()
    }

    /// Sources `u` whose oldest `a`-target is `z`, ascending.
    pub fn in_primary(&self, z: NodeId, a: Label) -> Vec<NodeId> {
        let mut v: Vec<usize> = self.in_primary[self.slot(z, a)]
            .iter()
            .map(|&u| u as usize)
            .collect();
        v.sort_unstable();
        v
    }

    /// Pending merge targets of root `x` under `a`, in list order.
    pub fn edges_list(&self, x: NodeId, a: Label) -> Vec<NodeId> {
        self.core.edges.iter(self.slot(x, a)).collect()
    }

    /// All non-empty pending-target lists as `((node, label), targets)`.
    pub fn edges_lists(&self) -> Vec<((NodeId, Label), Vec<NodeId>)> {
        (0..self.n)
            .flat_map(|x| (0..self.k).map(move |a| (x, a)))
            .filter(|&(x, a)| self.core.edges.len(self.slot(x, a)) > 0)
            .map(|(x, a)| ((x, a), self.edges_list(x, a)))
            .collect()
    }

    /// Primal edges as sorted `(min, max)` pairs, one entry per copy.
    pub fn primal_edges(&self) -> Vec<(NodeId, NodeId)> {
        self.prim.edge_multiset()
    }
}
