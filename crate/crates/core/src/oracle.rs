// SPDX-License-Identifier: Apache-2.0

//! Brute-force DSCC partitions used as ground truth in tests.
//!
//! Neither function shares code with the engine. [`closure_oracle`] computes
//! the least equivalence closed under "equivalent nodes with same-label edges
//! have equivalent targets". [`cfl_oracle`] saturates the Dyck grammar
//! directly over a bit matrix.

use crate::error::{Error, Result};
use crate::graph::DyckGraph;
use crate::partition::Partition;

/// Largest graph accepted by [`cfl_oracle`].
pub const CFL_NODE_LIMIT: usize = 64;

/// Least equivalence on nodes containing identity and closed under
/// `u ≡ v, u -a-> x, v -a-> y  =>  x ≡ y`.
pub fn closure_oracle(g: &DyckGraph) -> Partition {
    let n = g.n();
    let k = g.k();
    let edges: Vec<_> = g.edges().map(|(e, _)| e).collect();
    let mut class: Vec<usize> = (0..n).collect();
    loop {
        let mut changed = false;
        for a in 0..k {
            // first target class seen per source class
            let mut first: Vec<Option<usize>> = vec![None; n];
            for &(u, x, l) in &edges {
                if l != a {
                    continue;
                }
                let cu = class[u];
                match first[cu] {
                    None => first[cu] = Some(class[x]),
                    Some(cx) if cx != class[x] => {
                        let gone = class[x];
                        for c in class.iter_mut() {
                            if *c == gone {
                                *c = cx;
                            }
                        }
                        // the relabeling may invalidate `first`; rescan
                        changed = true;
                        break;
                    }
                    Some(_) => {}
                }
            }
            if changed {
                break;
            }
        }
        if !changed {
            return Partition::from_labels(&class);
        }
    }
}

/// Dyck reachability relation as bit rows: bit `v` of row `u` is set iff a
/// path with a balanced label string leads from `u` to `v`.
pub fn cfl_relation(g: &DyckGraph) -> Result<Vec<u64>> {
    let n = g.n();
    if n > CFL_NODE_LIMIT {
        return Err(Error::OracleLimit {
            n,
            limit: CFL_NODE_LIMIT,
        });
    }
    // every stored closing edge z -a-> v has an opening twin v -a-> z
    let close: Vec<_> = g.edges().map(|(e, _)| e).collect();
    let open: Vec<_> = close.iter().map(|&(z, v, a)| (v, z, a)).collect();

    let mut b: Vec<u64> = (0..n).map(|u| 1u64 << u).collect();
    loop {
        let before = b.clone();
        // I -> open I close
        for &(u, w, a) in &open {
            for &(z, v, a2) in &close {
                if a == a2 && b[w] >> z & 1 == 1 {
                    b[u] |= 1 << v;
                }
            }
        }
        // I -> I I
        for m in 0..n {
            for u in 0..n {
                if b[u] >> m & 1 == 1 {
                    b[u] |= b[m];
                }
            }
        }
        if b == before {
            return Ok(b);
        }
    }
}

/// Partition induced by [`cfl_relation`]. Refuses graphs larger than
/// [`CFL_NODE_LIMIT`] nodes.
pub fn cfl_oracle(g: &DyckGraph) -> Result<Partition> {
    let b = cfl_relation(g)?;
    // reflexive, symmetric and transitive: each row is its own class
    Ok(Partition::from_labels(&b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn graph(n: usize, k: usize, edges: &[(usize, usize, usize)]) -> DyckGraph {
        let mut g = DyckGraph::new(n, k);
        for &(u, v, a) in edges {
            g.add_edge(u, v, a).unwrap();
        }
        g
    }

    #[test]
    fn edgeless_is_singletons() {
        let g = DyckGraph::new(4, 2);
        assert_eq!(closure_oracle(&g), Partition::singletons(4));
        assert_eq!(cfl_oracle(&g).unwrap(), Partition::singletons(4));
    }

    #[test]
    fn self_loop() {
        let g = graph(1, 1, &[(0, 0, 0)]);
        assert_eq!(cfl_relation(&g).unwrap(), vec![1]);
        assert_eq!(cfl_oracle(&g).unwrap(), Partition::singletons(1));
    }

    #[test]
    fn single_closing_edge_is_not_a_path() {
        let g = graph(2, 1, &[(0, 1, 0)]);
        assert_eq!(closure_oracle(&g), Partition::singletons(2));
        assert_eq!(cfl_oracle(&g).unwrap(), Partition::singletons(2));
    }

    #[test]
    fn two_closing_edges_from_one_source() {
        // x <-a- u -a-> y: x opens into u then closes into y
        let g = graph(3, 1, &[(0, 1, 0), (0, 2, 0)]);
        let want = Partition::from_blocks(vec![vec![0], vec![1, 2]]);
        assert_eq!(closure_oracle(&g), want);
        assert_eq!(cfl_oracle(&g).unwrap(), want);
    }

    #[test]
    fn different_labels_do_not_match() {
        let g = graph(3, 2, &[(0, 1, 0), (0, 2, 1)]);
        assert_eq!(closure_oracle(&g), Partition::singletons(3));
        assert_eq!(cfl_oracle(&g).unwrap(), Partition::singletons(3));
    }

    #[test]
    fn cascade() {
        // 0 -a-> 1, 0 -a-> 2 merges {1,2}; then 1 -b-> 3, 2 -b-> 4 merges {3,4}
        let g = graph(5, 2, &[(0, 1, 0), (0, 2, 0), (1, 3, 1), (2, 4, 1)]);
        let want = Partition::from_blocks(vec![vec![0], vec![1, 2], vec![3, 4]]);
        assert_eq!(closure_oracle(&g), want);
        assert_eq!(cfl_oracle(&g).unwrap(), want);
    }

    #[test]
    fn size_guard() {
        let g = DyckGraph::new(CFL_NODE_LIMIT + 1, 1);
        assert!(matches!(cfl_oracle(&g), Err(Error::OracleLimit { .. })));
        assert!(cfl_oracle(&DyckGraph::new(CFL_NODE_LIMIT, 1)).is_ok());
    }

    fn arb_graph(max_n: usize) -> impl Strategy<Value = DyckGraph> {
        (1..=max_n, 1..=3usize).prop_flat_map(|(n, k)| {
            proptest::collection::vec((0..n, 0..n, 0..k), 0..=3 * n).prop_map(move |es| {
                let mut g = DyckGraph::new(n, k);
                for (u, v, a) in es {
                    g.add_edge(u, v, a).unwrap();
                }
                g
            })
        })
    }

    proptest! {
        #[test]
        fn oracles_agree(g in arb_graph(12)) {
            prop_assert_eq!(closure_oracle(&g), cfl_oracle(&g).unwrap());
        }

        #[test]
        fn relation_is_symmetric(g in arb_graph(12)) {
            let b = cfl_relation(&g).unwrap();
            for u in 0..g.n() {
                for v in 0..g.n() {
                    prop_assert_eq!(b[u] >> v & 1, b[v] >> u & 1);
                }
            }
        }

        #[test]
        fn adding_an_edge_never_splits(g in arb_graph(16), e in (0..16usize, 0..16usize, 0..3usize)) {
            let before = closure_oracle(&g);
            let mut h = g.clone();
            let (u, v, a) = (e.0 % g.n(), e.1 % g.n(), e.2 % g.k());
            h.add_edge(u, v, a).unwrap();
            prop_assert!(before.refines(&closure_oracle(&h)));
        }
    }
}
