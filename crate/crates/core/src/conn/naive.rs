// SPDX-License-Identifier: Apache-2.0

use std::collections::{BTreeMap, VecDeque};

/// Ground-truth connectivity: an explicit edge multiset and a fresh
/// breadth-first search per query.
#[derive(Debug, Clone, Default)]
pub struct NaiveConnectivity {
    n: usize,
    edges: BTreeMap<(usize, usize), usize>,
}

impl NaiveConnectivity {
    pub fn new(n: usize) -> Self {
        NaiveConnectivity {
            n,
            edges: BTreeMap::new(),
        }
    }

    pub fn insert(&mut self, u: usize, v: usize) {
        assert_ne!(u, v, "self-loops carry no connectivity");
        *self.edges.entry((u.min(v), u.max(v))).or_insert(0) += 1;
    }

    pub fn delete(&mut self, u: usize, v: usize) {
        let k = (u.min(v), u.max(v));
        let c = self
            .edges
            .get_mut(&k)
            .unwrap_or_else(|| panic!("edge ({u}, {v}) not present"));
        *c -= 1;
        if *c == 0 {
            self.edges.remove(&k);
        }
    }

    pub fn multiplicity(&self, u: usize, v: usize) -> usize {
        self.edges.get(&(u.min(v), u.max(v))).copied().unwrap_or(0)
    }

    pub fn edge_multiset(&self) -> Vec<(usize, usize)> {
        self.edges
            .iter()
            .flat_map(|(&k, &c)| std::iter::repeat_n(k, c))
            .collect()
    }

    /// Sorted node list of `u`'s component.
    pub fn component_members(&self, u: usize) -> Vec<usize> {
        let mut adj = vec![Vec::new(); self.n];
        for &(a, b) in self.edges.keys() {
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([u]);
        seen[u] = true;
        let mut out = Vec::new();
        while let Some(x) = queue.pop_front() {
            out.push(x);
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn connected(&self, u: usize, v: usize) -> bool {
        u == v || self.component_members(u).binary_search(&v).is_ok()
    }

    pub fn component_repr(&self, u: usize) -> usize {
        self.component_members(u)[0]
    }

    /// Component label per node (smallest member), computed in one pass.
    pub fn labels(&self) -> Vec<usize> {
        let mut label = vec![usize::MAX; self.n];
        let mut adj = vec![Vec::new(); self.n];
        for &(a, b) in self.edges.keys() {
            adj[a].push(b);
            adj[b].push(a);
        }
        for s in 0..self.n {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = s;
            let mut stack = vec![s];
            while let Some(x) = stack.pop() {
                for &y in &adj[x] {
                    if label[y] == usize::MAX {
                        label[y] = s;
                        stack.push(y);
                    }
                }
            }
        }
        label
    }
}
