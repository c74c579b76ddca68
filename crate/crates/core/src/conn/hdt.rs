// SPDX-License-Identifier: Apache-2.0

//! Fully dynamic connectivity with amortized polylogarithmic updates
//! (Holm, de Lichtenberg and Thorup).
//!
//! Every edge has a level. `forests[i]` spans the edges whose level is at
//! least `i`; tree edges live in all forests up to their level. Deleting a
//! tree edge searches for a replacement level by level, starting from the
//! edge's own level, on the smaller of the two halves. Edges scanned without
//! success are pushed one level up, which pays for the scan.

use std::collections::HashMap;

use super::ett::{ArcId, EulerForest, NONTREE_FLAG, TREE_FLAG};

type EdgeId = usize;

#[derive(Debug, Clone)]
struct EdgeRec {
    ends: [usize; 2],
    level: usize,
    tree: bool,
    /// Arc pairs in `forests[0..=level]` while `tree` is set.
    arcs: Vec<(ArcId, ArcId)>,
    /// Position of this edge in each endpoint's adjacency list.
    pos: [usize; 2],
}

impl EdgeRec {
    fn other(&self, x: usize) -> usize {
        if self.ends[0] == x {
            self.ends[1]
        } else {
            self.ends[0]
        }
    }
}

#[derive(Debug, Clone)]
pub struct DynConnectivity {
    n: usize,
    forests: Vec<EulerForest>,
    edges: Vec<Option<EdgeRec>>,
    free_edges: Vec<EdgeId>,
    by_pair: HashMap<(usize, usize), Vec<EdgeId>>,
    // [level][vertex] -> edges of exactly that level
    tree_adj: Vec<Vec<Vec<EdgeId>>>,
    nontree_adj: Vec<Vec<Vec<EdgeId>>>,
    edge_count: usize,
    scans: u64,
}

fn key(u: usize, v: usize) -> (usize, usize) {
    (u.min(v), u.max(v))
}

impl DynConnectivity {
    pub fn new(n: usize) -> Self {
        // floor(log2 n) + 2 levels; the level bound of the scheme is log2 n
        let levels = (usize::BITS - n.leading_zeros()) as usize + 1;
        DynConnectivity {
            n,
            forests: (0..levels).map(|_| EulerForest::new(n)).collect(),
            edges: Vec::new(),
            free_edges: Vec::new(),
            by_pair: HashMap::new(),
            tree_adj: vec![vec![Vec::new(); n]; levels],
            nontree_adj: vec![vec![Vec::new(); n]; levels],
            edge_count: 0,
            scans: 0,
        }
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    /// Number of edges currently stored, counting parallel copies.
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn multiplicity(&self, u: usize, v: usize) -> usize {
        self.by_pair.get(&key(u, v)).map_or(0, Vec::len)
    }

    /// Stored edges as `(min, max)` pairs, one entry per copy, sorted.
    pub fn edge_multiset(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self
            .by_pair
            .iter()
            .flat_map(|(&k, ids)| std::iter::repeat_n(k, ids.len()))
            .collect();
        out.sort_unstable();
        out
    }

    /// Structural work performed so far: splay rotations plus adjacency scans.
    pub fn work(&self) -> u64 {
        self.scans + self.forests.iter().map(|f| f.rotations).sum::<u64>()
    }

    fn rec(&self, e: EdgeId) -> &EdgeRec {
        self.edges[e].as_ref().expect("live edge")
    }

    fn rec_mut(&mut self, e: EdgeId) -> &mut EdgeRec {
        self.edges[e].as_mut().expect("live edge")
    }

    fn adj_add(&mut self, e: EdgeId) {
        let EdgeRec {
            ends, level, tree, ..
        } = *self.rec(e);
        let (lists, flag) = if tree {
            (&mut self.tree_adj[level], TREE_FLAG)
        } else {
            (&mut self.nontree_adj[level], NONTREE_FLAG)
        };
        let mut pos = [0; 2];
        let mut newly_flagged = [false; 2];
        for side in 0..2 {
            let list = &mut lists[ends[side]];
            pos[side] = list.len();
            list.push(e);
            newly_flagged[side] = list.len() == 1;
        }
        self.rec_mut(e).pos = pos;
        for side in 0..2 {
            if newly_flagged[side] {
                self.forests[level].set_flag(ends[side], flag, true);
            }
        }
    }

    fn adj_remove(&mut self, e: EdgeId) {
        let EdgeRec {
            ends,
            level,
            tree,
            pos,
            ..
        } = *self.rec(e);
        let flag = if tree { TREE_FLAG } else { NONTREE_FLAG };
        for side in 0..2 {
            let x = ends[side];
            let list = if tree {
                &mut self.tree_adj[level][x]
            } else {
                &mut self.nontree_adj[level][x]
            };
            debug_assert_eq!(list[pos[side]], e);
            list.swap_remove(pos[side]);
            let moved = list.get(pos[side]).copied();
            let emptied = list.is_empty();
            if let Some(m) = moved {
                let mrec = self.rec_mut(m);
                let mside = usize::from(mrec.ends[0] != x);
                mrec.pos[mside] = pos[side];
            }
            if emptied {
                self.forests[level].set_flag(x, flag, false);
            }
        }
    }

    fn alloc_edge(&mut self, rec: EdgeRec) -> EdgeId {
        match self.free_edges.pop() {
            Some(id) => {
                self.edges[id] = Some(rec);
                id
            }
            None => {
                self.edges.push(Some(rec));
                self.edges.len() - 1
            }
        }
    }

    /// Adds an undirected edge. Parallel copies are allowed; self-loops are not.
    pub fn insert(&mut self, u: usize, v: usize) {
        assert!(u < self.n && v < self.n, "node out of range");
        assert_ne!(u, v, "self-loops carry no connectivity");
        let tree = !self.forests[0].connected(u, v);
        let arcs = if tree {
            vec![self.forests[0].link(u, v)]
        } else {
            Vec::new()
        };
        let e = self.alloc_edge(EdgeRec {
            ends: [u, v],
            level: 0,
            tree,
            arcs,
            pos: [0; 2],
        });
        self.adj_add(e);
        self.by_pair.entry(key(u, v)).or_default().push(e);
        self.edge_count += 1;
    }

    /// Removes one copy of edge `(u, v)`, which must be present.
    pub fn delete(&mut self, u: usize, v: usize) {
        let ids = self
            .by_pair
            .get_mut(&key(u, v))
            .unwrap_or_else(|| panic!("edge ({u}, {v}) not present"));
        // removing a non-tree copy never needs a replacement search
        let idx = ids
            .iter()
            .position(|&e| !self.edges[e].as_ref().expect("live edge").tree)
            .unwrap_or(0);
        let e = ids.swap_remove(idx);
        if ids.is_empty() {
            self.by_pair.remove(&key(u, v));
        }
        self.edge_count -= 1;

        self.adj_remove(e);
        let rec = self.edges[e].take().expect("live edge");
        self.free_edges.push(e);
        if !rec.tree {
            return;
        }
        for (i, &arcs) in rec.arcs.iter().enumerate() {
            self.forests[i].cut(arcs);
        }
        self.replace(rec.ends[0], rec.ends[1], rec.level);
    }

    fn replace(&mut self, u: usize, v: usize, level: usize) {
        for i in (0..=level).rev() {
            let small = if self.forests[i].tree_size(u) <= self.forests[i].tree_size(v) {
                u
            } else {
                v
            };

            while let Some(x) = self.forests[i].find_flagged(small, TREE_FLAG) {
                let e = *self.tree_adj[i][x].last().expect("flag implies edge");
                self.scans += 1;
                self.adj_remove(e);
                let [a, b] = self.rec(e).ends;
                let arcs = self.forests[i + 1].link(a, b);
                let rec = self.rec_mut(e);
                rec.level = i + 1;
                rec.arcs.push(arcs);
                self.adj_add(e);
            }

            while let Some(x) = self.forests[i].find_flagged(small, NONTREE_FLAG) {
                let e = *self.nontree_adj[i][x].last().expect("flag implies edge");
                self.scans += 1;
                self.adj_remove(e);
                let y = self.rec(e).other(x);
                if self.forests[i].connected(x, y) {
                    debug_assert!(i + 1 < self.forests.len());
                    self.rec_mut(e).level = i + 1;
                    self.adj_add(e);
                } else {
                    let [a, b] = self.rec(e).ends;
                    let arcs: Vec<_> = (0..=i).map(|j| self.forests[j].link(a, b)).collect();
                    let rec = self.rec_mut(e);
                    rec.tree = true;
                    rec.arcs = arcs;
                    self.adj_add(e);
                    return;
                }
            }
        }
    }

    pub fn connected(&mut self, u: usize, v: usize) -> bool {
        self.forests[0].connected(u, v)
    }

    /// Read-only variant of [`connected`](Self::connected).
    pub fn connected_const(&self, u: usize, v: usize) -> bool {
        self.forests[0].connected_const(u, v)
    }

    /// The smallest node of `u`'s component.
    pub fn component_repr(&mut self, u: usize) -> usize {
        self.forests[0].tree_min(u)
    }

    pub fn component_repr_const(&self, u: usize) -> usize {
        self.forests[0].tree_min_const(u)
    }

    pub fn component_size(&mut self, u: usize) -> usize {
        self.forests[0].tree_size(u)
    }

    /// Nodes of `u`'s component, each once.
    pub fn component_members(&mut self, u: usize) -> Vec<usize> {
        self.forests[0].tree_vertices(u)
    }

    /// Checks the level invariants: each forest's trees span at most
    /// `n / 2^i` vertices, and tree edges of level `i` join distinct trees of
    /// `forests[i]` only once. Intended for tests.
    pub fn check_levels(&mut self) -> Result<(), String> {
        for i in 0..self.forests.len() {
            let cap = self.n >> i;
            for x in 0..self.n {
                let s = self.forests[i].tree_size(x);
                if s > cap.max(1) {
                    return Err(format!("level {i}: tree of {x} has {s} > {cap} vertices"));
                }
            }
        }
        for e in self.edges.iter().flatten() {
            if e.tree && e.arcs.len() != e.level + 1 {
                return Err("tree edge arc count does not match its level".into());
            }
            let [a, b] = e.ends;
            if !self.forests[e.level].connected_const(a, b) {
                return Err(format!("edge ({a}, {b}) endpoints split at its level"));
            }
        }
        Ok(())
    }
}
