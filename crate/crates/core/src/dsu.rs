// SPDX-License-Identifier: Apache-2.0

//! Union-find over a fixed node set with member enumeration and
//! partition-directed splitting.
//!
//! The internal forest uses union-by-size and path compression, but the
//! caller picks which node is reported as the root of a merged set. Each
//! tree root carries an alias to its canonical node and each canonical node
//! points back at its tree root. Members of a set are threaded on an
//! intrusive circular ring so that merging two sets is O(1) and enumerating
//! a set is linear in its size.

use std::collections::HashMap;
use std::hash::Hash;

#[derive(Debug, Clone, Default)]
pub struct SplitDisjointSets {
    parent: Vec<usize>,
    size: Vec<usize>,
    // tree root -> canonical node
    canon: Vec<usize>,
    // canonical node -> tree root
    tree_of: Vec<usize>,
    next: Vec<usize>,
    prev: Vec<usize>,
}

impl SplitDisjointSets {
    /// `n` singleton sets.
    pub fn new(n: usize) -> Self {
        let ids: Vec<usize> = (0..n).collect();
        SplitDisjointSets {
            parent: ids.clone(),
            size: vec![1; n],
            canon: ids.clone(),
            tree_of: ids.clone(),
            next: ids.clone(),
            prev: ids,
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    fn tree_root(&self, mut u: usize) -> usize {
        while self.parent[u] != u {
            u = self.parent[u];
        }
        u
    }

    fn tree_root_compress(&mut self, u: usize) -> usize {
        let root = self.tree_root(u);
        let mut cur = u;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    /// Canonical root of `u`'s set, compressing the path.
    pub fn find(&mut self, u: usize) -> usize {
        let t = self.tree_root_compress(u);
        self.canon[t]
    }

    /// Canonical root of `u`'s set without mutating the structure.
    pub fn find_const(&self, u: usize) -> usize {
        self.canon[self.tree_root(u)]
    }

    pub fn is_root(&self, r: usize) -> bool {
        let t = self.tree_of[r];
        self.parent[t] == t && self.canon[t] == r
    }

    pub fn set_size(&self, r: usize) -> usize {
        debug_assert!(self.is_root(r));
        self.size[self.tree_of[r]]
    }

    /// Merges two distinct sets given by canonical roots; `keep` names the
    /// surviving canonical root.
    fn link(&mut self, a: usize, b: usize, keep: usize) {
        let (ta, tb) = (self.tree_of[a], self.tree_of[b]);
        let (big, small) = if self.size[ta] >= self.size[tb] {
            (ta, tb)
        } else {
            (tb, ta)
        };
        self.parent[small] = big;
        self.size[big] += self.size[small];
        self.canon[big] = keep;
        self.tree_of[keep] = big;

        // splice b's ring right after a
        let a_next = self.next[a];
        let b_prev = self.prev[b];
        self.next[a] = b;
        self.prev[b] = a;
        self.next[b_prev] = a_next;
        self.prev[a_next] = b_prev;
    }

    /// Merges every set in `roots` into one set whose canonical root is
    /// `target`. All of `roots` must be canonical roots and `target` must be
    /// among them.
    pub fn union_onto(&mut self, roots: &[usize], target: usize) {
        debug_assert!(self.is_root(target));
        debug_assert!(roots.contains(&target));
        for &r in roots {
            if r == target {
                continue;
            }
            debug_assert!(self.is_root(r), "{r} is not a root");
            self.link(target, r, target);
        }
    }

    /// Members of the set rooted at `r`, starting with `r`.
    pub fn members(&self, r: usize) -> Members<'_> {
        debug_assert!(self.is_root(r), "{r} is not a root");
        Members {
            next: &self.next,
            start: r,
            cur: Some(r),
        }
    }

    /// Replaces the set rooted at `r` by one set per distinct key of
    /// `class_of`. The smallest node of each class becomes its root. Returns
    /// the new roots in ascending order.
    pub fn split_by<K, F>(&mut self, r: usize, mut class_of: F) -> Vec<usize>
    where
        K: Eq + Hash,
        F: FnMut(usize) -> K,
    {
        let members: Vec<usize> = self.members(r).collect();
        let mut class_index: HashMap<K, usize> = HashMap::new();
        let mut leader: Vec<usize> = Vec::new();
        let mut class_of_member = Vec::with_capacity(members.len());
        for &m in &members {
            let next = class_index.len();
            let c = *class_index.entry(class_of(m)).or_insert(next);
            if c == leader.len() {
                leader.push(m);
            } else {
                leader[c] = leader[c].min(m);
            }
            class_of_member.push(c);
        }
        let leaders_of: Vec<usize> = class_of_member.iter().map(|&c| leader[c]).collect();
        for &m in &members {
            self.parent[m] = m;
            self.size[m] = 1;
            self.canon[m] = m;
            self.tree_of[m] = m;
            self.next[m] = m;
            self.prev[m] = m;
        }
        for (&m, &l) in members.iter().zip(&leaders_of) {
            if m != l {
                self.link(l, m, l);
            }
        }
        let mut roots = leader;
        roots.sort_unstable();
        roots
    }
}

pub struct Members<'a> {
    next: &'a [usize],
    start: usize,
    cur: Option<usize>,
}

impl Iterator for Members<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        let cur = self.cur?;
        let nxt = self.next[cur];
        self.cur = (nxt != self.start).then_some(nxt);
        Some(cur)
    }
}
