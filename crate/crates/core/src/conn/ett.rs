// SPDX-License-Identifier: Apache-2.0

//! Euler-tour forest over splay trees.
//!
//! Nodes `0..n` are the vertex occurrences (one per vertex); every tree edge
//! contributes two arc nodes allocated past `n`. A tree's tour is the in-order
//! sequence of its splay tree. Vertex nodes carry two flag bits (used by the
//! connectivity structure to find vertices with level-local tree edges and
//! non-tree edges) and subtree aggregates: vertex count, flag union and the
//! minimum vertex id.

const NIL: u32 = u32::MAX;

pub(crate) const TREE_FLAG: u8 = 1;
pub(crate) const NONTREE_FLAG: u8 = 2;

#[derive(Debug, Clone, Copy)]
struct Node {
    ch: [u32; 2],
    p: u32,
    vcnt: u32,
    own: u8,
    agg: u8,
    minv: u32,
}

impl Node {
    fn vertex(v: u32) -> Self {
        Node {
            ch: [NIL; 2],
            p: NIL,
            vcnt: 1,
            own: 0,
            agg: 0,
            minv: v,
        }
    }

    fn arc() -> Self {
        Node {
            ch: [NIL; 2],
            p: NIL,
            vcnt: 0,
            own: 0,
            agg: 0,
            minv: u32::MAX,
        }
    }
}

/// Handle to an arc node.
pub(crate) type ArcId = u32;

#[derive(Debug, Clone)]
pub(crate) struct EulerForest {
    n: usize,
    nodes: Vec<Node>,
    free: Vec<u32>,
    /// Rotation count, used as a machine-independent work measure.
    pub(crate) rotations: u64,
}

impl EulerForest {
    pub(crate) fn new(n: usize) -> Self {
        EulerForest {
            n,
            nodes: (0..n as u32).map(Node::vertex).collect(),
            free: Vec::new(),
            rotations: 0,
        }
    }

    fn alloc_arc(&mut self) -> u32 {
        match self.free.pop() {
            Some(id) => {
                self.nodes[id as usize] = Node::arc();
                id
            }
            None => {
                self.nodes.push(Node::arc());
                (self.nodes.len() - 1) as u32
            }
        }
    }

    #[inline]
    fn node(&self, x: u32) -> &Node {
        &self.nodes[x as usize]
    }

    #[inline]
    fn node_mut(&mut self, x: u32) -> &mut Node {
        &mut self.nodes[x as usize]
    }

    fn pull(&mut self, x: u32) {
        let Node { ch, own, .. } = *self.node(x);
        let mut vcnt = u32::from(x < self.n as u32);
        let mut agg = own;
        let mut minv = if x < self.n as u32 { x } else { u32::MAX };
        for c in ch {
            if c != NIL {
                let cn = self.node(c);
                vcnt += cn.vcnt;
                agg |= cn.agg;
                minv = minv.min(cn.minv);
            }
        }
        let xn = self.node_mut(x);
        xn.vcnt = vcnt;
        xn.agg = agg;
        xn.minv = minv;
    }

    #[inline]
    fn dir(&self, x: u32) -> usize {
        let p = self.node(x).p;
        usize::from(self.node(p).ch[1] == x)
    }

    fn rotate(&mut self, x: u32) {
        self.rotations += 1;
        let y = self.node(x).p;
        let z = self.node(y).p;
        let d = self.dir(x);
        if z != NIL {
            let dy = self.dir(y);
            self.node_mut(z).ch[dy] = x;
        }
        let b = self.node(x).ch[1 - d];
        self.node_mut(y).ch[d] = b;
        if b != NIL {
            self.node_mut(b).p = y;
        }
        self.node_mut(x).ch[1 - d] = y;
        self.node_mut(y).p = x;
        self.node_mut(x).p = z;
        self.pull(y);
        self.pull(x);
    }

    fn splay(&mut self, x: u32) {
        while self.node(x).p != NIL {
            let y = self.node(x).p;
            if self.node(y).p != NIL {
                if self.dir(x) == self.dir(y) {
                    self.rotate(y);
                } else {
                    self.rotate(x);
                }
            }
            self.rotate(x);
        }
    }

    /// Concatenates the tours rooted (in splay terms) at `a` and `b`.
    fn join(&mut self, a: u32, b: u32) -> u32 {
        if a == NIL {
            return b;
        }
        if b == NIL {
            return a;
        }
        let mut x = a;
        while self.node(x).ch[1] != NIL {
            x = self.node(x).ch[1];
        }
        self.splay(x);
        self.node_mut(x).ch[1] = b;
        self.node_mut(b).p = x;
        self.pull(x);
        x
    }

    /// Splays `x` and detaches its subtree on side `side`, returning it.
    fn detach(&mut self, x: u32, side: usize) -> u32 {
        self.splay(x);
        let c = self.node(x).ch[side];
        if c != NIL {
            self.node_mut(c).p = NIL;
            self.node_mut(x).ch[side] = NIL;
            self.pull(x);
        }
        c
    }

    /// Rotates the tour of `v`'s tree so it starts at `v`; returns the splay root.
    fn reroot(&mut self, v: u32) -> u32 {
        let before = self.detach(v, 0);
        self.join(v, before)
    }

    pub(crate) fn connected(&mut self, u: usize, v: usize) -> bool {
        if u == v {
            return true;
        }
        let (u, v) = (u as u32, v as u32);
        self.splay(u);
        self.splay(v);
        self.node(u).p != NIL
    }

    /// Links the trees of `u` and `v` (which must differ) with a new tree edge.
    pub(crate) fn link(&mut self, u: usize, v: usize) -> (ArcId, ArcId) {
        let (u, v) = (u as u32, v as u32);
        let uv = self.alloc_arc();
        let vu = self.alloc_arc();
        let tu = self.reroot(u);
        let tv = self.reroot(v);
        let t = self.join(tu, uv);
        let t = self.join(t, tv);
        self.join(t, vu);
        (uv, vu)
    }

    /// Removes the tree edge represented by the arc pair.
    pub(crate) fn cut(&mut self, arcs: (ArcId, ArcId)) {
        let (uv, vu) = arcs;
        // [A] uv [R]
        let a = self.detach(uv, 0);
        self.splay(vu);
        if self.node(uv).p != NIL {
            // A uv B vu C
            let c = self.detach(vu, 1);
            self.detach(vu, 0);
            self.detach(uv, 1);
            self.join(a, c);
        } else {
            // A1 vu A2 uv C
            let a1 = self.detach(vu, 0);
            self.detach(vu, 1);
            let c = self.detach(uv, 1);
            self.join(a1, c);
        }
        for arc in [uv, vu] {
            debug_assert_eq!(self.node(arc).p, NIL);
            debug_assert!(self.node(arc).ch.iter().all(|&c| c == NIL));
            self.free.push(arc);
        }
    }

    pub(crate) fn tree_size(&mut self, v: usize) -> usize {
        self.splay(v as u32);
        self.node(v as u32).vcnt as usize
    }

    pub(crate) fn tree_min(&mut self, v: usize) -> usize {
        self.splay(v as u32);
        self.node(v as u32).minv as usize
    }

    fn splay_root_const(&self, v: usize) -> u32 {
        let mut x = v as u32;
        while self.node(x).p != NIL {
            x = self.node(x).p;
        }
        x
    }

    /// `tree_min` without restructuring; cost is the splay depth of `v`.
    pub(crate) fn tree_min_const(&self, v: usize) -> usize {
        self.node(self.splay_root_const(v)).minv as usize
    }

    pub(crate) fn connected_const(&self, u: usize, v: usize) -> bool {
        self.splay_root_const(u) == self.splay_root_const(v)
    }

    pub(crate) fn set_flag(&mut self, v: usize, bit: u8, on: bool) {
        let v = v as u32;
        let own = self.node(v).own;
        let new = if on { own | bit } else { own & !bit };
        if new != own {
            self.splay(v);
            self.node_mut(v).own = new;
            self.pull(v);
        }
    }

    /// Some vertex in `v`'s tree whose own flags contain `bit`.
    pub(crate) fn find_flagged(&mut self, v: usize, bit: u8) -> Option<usize> {
        let mut x = v as u32;
        self.splay(x);
        if self.node(x).agg & bit == 0 {
            return None;
        }
        loop {
            let node = self.node(x);
            if node.own & bit != 0 {
                break;
            }
            let l = node.ch[0];
            x = if l != NIL && self.node(l).agg & bit != 0 {
                l
            } else {
                node.ch[1]
            };
        }
        self.splay(x);
        Some(x as usize)
    }

    /// All vertices of `v`'s tree, in tour order.
    pub(crate) fn tree_vertices(&mut self, v: usize) -> Vec<usize> {
        let root = v as u32;
        self.splay(root);
        let mut out = Vec::with_capacity(self.node(root).vcnt as usize);
        let mut stack = Vec::new();
        let mut cur = root;
        while cur != NIL || !stack.is_empty() {
            while cur != NIL {
                stack.push(cur);
                cur = self.node(cur).ch[0];
            }
            let x = stack.pop().unwrap();
            if (x as usize) < self.n {
                out.push(x as usize);
            }
            cur = self.node(x).ch[1];
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn link_cut_roundtrip() {
        let mut f = EulerForest::new(5);
        let a = f.link(0, 1);
        let b = f.link(1, 2);
        let c = f.link(3, 2);
        assert!(f.connected(0, 3));
        assert_eq!(f.tree_size(2), 4);
        assert_eq!(f.tree_min(3), 0);
        f.cut(b);
        assert!(f.connected(0, 1));
        assert!(f.connected(2, 3));
        assert!(!f.connected(1, 2));
        assert_eq!(f.tree_size(3), 2);
        assert_eq!(f.tree_min(3), 2);
        let mut vs = f.tree_vertices(2);
        vs.sort_unstable();
        assert_eq!(vs, vec![2, 3]);
        f.cut(a);
        f.cut(c);
        for v in 0..5 {
            assert_eq!(f.tree_size(v), 1);
        }
        assert!(!f.connected(0, 4));
    }

    #[test]
    fn flags_are_found() {
        let mut f = EulerForest::new(6);
        f.link(0, 1);
        f.link(1, 2);
        f.link(4, 5);
        assert_eq!(f.find_flagged(0, TREE_FLAG), None);
        f.set_flag(2, TREE_FLAG, true);
        f.set_flag(5, NONTREE_FLAG, true);
        assert_eq!(f.find_flagged(0, TREE_FLAG), Some(2));
        assert_eq!(f.find_flagged(0, NONTREE_FLAG), None);
        assert_eq!(f.find_flagged(4, NONTREE_FLAG), Some(5));
        f.set_flag(2, TREE_FLAG, false);
        assert_eq!(f.find_flagged(1, TREE_FLAG), None);
    }
}
