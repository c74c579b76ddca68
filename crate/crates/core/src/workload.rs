// SPDX-License-Identifier: Apache-2.0

//! Seeded update sequences and the two scaling families.
//!
//! Randomness comes from `ChaCha8Rng::seed_from_u64(seed)`, whose output is
//! fixed across platforms and crate versions, so a `(graph, ratio, seed)`
//! triple always yields the same sequence. The sampling unit is an edge copy:
//! a graph with an edge of multiplicity 2 contributes two candidates.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{DyckGraph, Edge, UpdateOp};
use crate::partition::Partition;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mode {
    Incremental,
    Decremental,
    Mixed,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SequenceSpec {
    pub mode: Mode,
    /// Fraction of edge copies withheld (incremental), removed (decremental)
    /// or placed in the insert pool (mixed).
    pub ratio: f64,
    pub seed: u64,
}

/// Starting graph plus the operations to replay on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Workload {
    pub initial: DyckGraph,
    pub ops: Vec<UpdateOp>,
}

impl SequenceSpec {
    pub fn generate(&self, g: &DyckGraph) -> Result<Workload> {
        match self.mode {
            Mode::Incremental => gen_incremental(g, self.ratio, self.seed),
            Mode::Decremental => Ok(Workload {
                initial: g.clone(),
                ops: gen_decremental(g, self.ratio, self.seed)?,
            }),
            Mode::Mixed => gen_mixed(g, self.ratio, self.seed),
        }
    }
}

fn check_ratio(ratio: f64, allow_zero: bool) -> Result<()> {
    let ok = ratio.is_finite() && ratio <= 1.0 && (ratio > 0.0 || (allow_zero && ratio == 0.0));
    if ok {
        Ok(())
    } else {
        let range = if allow_zero { "[0, 1]" } else { "(0, 1]" };
        Err(Error::InvalidArgument(format!(
            "ratio {ratio} outside {range}"
        )))
    }
}

/// ⌈ratio · m⌉, robust against float noise such as 0.9 · 10 = 9.000000000000002.
fn portion(ratio: f64, m: usize) -> usize {
    let x = ratio * m as f64;
    let r = x.round();
    let c = if (x - r).abs() < 1e-9 { r } else { x.ceil() };
    (c as usize).min(m)
}

/// Shuffled edge copies; the first `take` are selected.
fn sample(g: &DyckGraph, ratio: f64, rng: &mut ChaCha8Rng) -> (Vec<Edge>, Vec<Edge>) {
    let mut copies: Vec<Edge> = g.edge_copies().collect();
    copies.shuffle(rng);
    let take = portion(ratio, copies.len());
    let rest = copies.split_off(take);
    (copies, rest)
}

fn graph_of(n: usize, k: usize, edges: &[Edge]) -> DyckGraph {
    let mut g = DyckGraph::new(n, k);
    for &(u, v, a) in edges {
        g.add_edge(u, v, a)
            .expect("edges come from a graph of the same shape");
    }
    g
}

fn insert_op((u, v, label): Edge) -> UpdateOp {
    UpdateOp::Insert { u, v, label }
}

fn delete_op((u, v, label): Edge) -> UpdateOp {
    UpdateOp::Delete { u, v, label }
}

/// Withholds a random `ratio` share of the edge copies; the ops insert them
/// back in random order.
pub fn gen_incremental(g: &DyckGraph, ratio: f64, seed: u64) -> Result<Workload> {
    check_ratio(ratio, false)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (chosen, rest) = sample(g, ratio, &mut rng);
    Ok(Workload {
        initial: graph_of(g.n(), g.k(), &rest),
        ops: chosen.into_iter().map(insert_op).collect(),
    })
}

/// Deletes a random `ratio` share of the edge copies of `g`, in random order.
pub fn gen_decremental(g: &DyckGraph, ratio: f64, seed: u64) -> Result<Vec<UpdateOp>> {
    check_ratio(ratio, false)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (chosen, _) = sample(g, ratio, &mut rng);
    Ok(chosen.into_iter().map(delete_op).collect())
}

/// Puts a random `ratio` share of the edge copies in an insert pool and
/// starts from the rest. Each of the ⌈ratio · m⌉ steps flips a fair coin
/// between inserting a random pooled copy and deleting a random present
/// copy, taking the other branch when the chosen side is empty. The moved
/// copy switches pools.
pub fn gen_mixed(g: &DyckGraph, ratio: f64, seed: u64) -> Result<Workload> {
    check_ratio(ratio, true)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut pool, mut present) = sample(g, ratio, &mut rng);
    let initial = graph_of(g.n(), g.k(), &present);
    let steps = pool.len();
    let mut ops = Vec::with_capacity(steps);
    for _ in 0..steps {
        let want_insert = rng.gen_bool(0.5);
        let insert = if pool.is_empty() {
            false
        } else if present.is_empty() {
            true
        } else {
            want_insert
        };
        let (from, to) = if insert {
            (&mut pool, &mut present)
        } else {
            (&mut present, &mut pool)
        };
        let e = from.swap_remove(rng.gen_range(0..from.len()));
        to.push(e);
        ops.push(if insert { insert_op(e) } else { delete_op(e) });
    }
    Ok(Workload { initial, ops })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FamilyKind {
    Dense,
    Sparse,
}

/// A scaling-family instance: a graph and the one deletion of interest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Family {
    pub kind: FamilyKind,
    pub n: usize,
    pub graph: DyckGraph,
    pub delete: UpdateOp,
}

/// Dense family, one label. Node ids: `u = 0`, then `a_i = 1 + i`,
/// `b_i = 1 + n + i`, `c_i = 1 + 2n + i`, `d_i = 1 + 3n + i` for `i < n`.
/// Edges `a_i -> b_j` and `d_i -> c_j` for all `i, j`, plus `u -> b_0` and
/// `u -> c_0`. The distinguished operation deletes `u -> c_0`, which splits
/// the block of all `b`s and `c`s in two.
pub fn gen_dense_family(n: usize) -> Result<Family> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "family size must be at least 1".into(),
        ));
    }
    let (a, b, c, d) = (
        |i| 1 + i,
        |i| 1 + n + i,
        |i| 1 + 2 * n + i,
        |i| 1 + 3 * n + i,
    );
    let mut g = DyckGraph::new(4 * n + 1, 1);
    for i in 0..n {
        for j in 0..n {
            g.add_edge(a(i), b(j), 0)?;
            g.add_edge(d(i), c(j), 0)?;
        }
    }
    g.add_edge(0, b(0), 0)?;
    g.add_edge(0, c(0), 0)?;
    Ok(Family {
        kind: FamilyKind::Dense,
        n,
        graph: g,
        delete: UpdateOp::Delete {
            u: 0,
            v: c(0),
            label: 0,
        },
    })
}

/// Sparse family, labels `0` and `1`. Node ids: `u = 0`, `v = 1`, then
/// `a_i = 2 + i`, `b_i = 2 + n + i`, `c_i = 2 + 2n + i` for `i < n`. Edges
/// `u -0-> a_0`, `u -0-> b_0`, `a_i -0-> a_{i+1}`, `b_i -0-> b_{i+1}`,
/// `a_i -1-> c_i`, `b_i -1-> c_i` and `v -0-> c_i`. The distinguished
/// operation deletes `u -0-> b_0`, which dissolves every `{a_i, b_i}` block
/// and leaves the block of `c`s intact.
pub fn gen_sparse_family(n: usize) -> Result<Family> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "family size must be at least 1".into(),
        ));
    }
    let (a, b, c) = (|i| 2 + i, |i| 2 + n + i, |i| 2 + 2 * n + i);
    let mut g = DyckGraph::new(3 * n + 2, 2);
    g.add_edge(0, a(0), 0)?;
    g.add_edge(0, b(0), 0)?;
    for i in 0..n {
        if i + 1 < n {
            g.add_edge(a(i), a(i + 1), 0)?;
            g.add_edge(b(i), b(i + 1), 0)?;
        }
        g.add_edge(a(i), c(i), 1)?;
        g.add_edge(b(i), c(i), 1)?;
        g.add_edge(1, c(i), 0)?;
    }
    Ok(Family {
        kind: FamilyKind::Sparse,
        n,
        graph: g,
        delete: UpdateOp::Delete {
            u: 0,
            v: b(0),
            label: 0,
        },
    })
}

impl Family {
    /// Closed-form partition before the distinguished deletion.
    pub fn expected_before(&self) -> Partition {
        self.expected(false)
    }

    /// Closed-form partition after the distinguished deletion.
    pub fn expected_after(&self) -> Partition {
        self.expected(true)
    }

    fn expected(&self, deleted: bool) -> Partition {
        let n = self.n;
        let total = self.graph.n();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut covered = vec![false; total];
        let mut add = |b: Vec<usize>, blocks: &mut Vec<Vec<usize>>| {
            for &x in &b {
                covered[x] = true;
            }
            blocks.push(b);
        };
        match self.kind {
            FamilyKind::Dense => {
                let bs: Vec<usize> = (0..n).map(|i| 1 + n + i).collect();
                let cs: Vec<usize> = (0..n).map(|i| 1 + 2 * n + i).collect();
                if deleted {
                    add(bs, &mut blocks);
                    add(cs, &mut blocks);
                } else {
                    add(bs.into_iter().chain(cs).collect(), &mut blocks);
                }
            }
            FamilyKind::Sparse => {
                add((0..n).map(|i| 2 + 2 * n + i).collect(), &mut blocks);
                if !deleted {
                    for i in 0..n {
                        add(vec![2 + i, 2 + n + i], &mut blocks);
                    }
                }
            }
        }
        for (x, &c) in covered.iter().enumerate() {
            if !c {
                blocks.push(vec![x]);
            }
        }
        Partition::from_blocks(blocks)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::closure_oracle;

    fn sample_graph() -> DyckGraph {
        let mut g = DyckGraph::new(6, 2);
        for (u, v, a) in [
            (0, 1, 0),
            (0, 2, 0),
            (0, 2, 0),
            (1, 3, 1),
            (2, 4, 1),
            (5, 5, 0),
            (3, 4, 0),
            (4, 5, 1),
            (1, 0, 1),
            (2, 3, 0),
        ] {
            g.add_edge(u, v, a).unwrap();
        }
        g
    }

    fn replay(g: &DyckGraph, ops: &[UpdateOp]) -> DyckGraph {
        let mut g = g.clone();
        for op in ops {
            match *op {
                UpdateOp::Insert { u, v, label } => {
                    g.add_edge(u, v, label).unwrap();
                }
                UpdateOp::Delete { u, v, label } => {
                    g.remove_edge(u, v, label).unwrap();
                }
                _ => unreachable!(),
            }
        }
        g
    }

    #[test]
    fn portion_rounding() {
        assert_eq!(portion(0.9, 10), 9);
        assert_eq!(portion(0.9, 11), 10);
        assert_eq!(portion(1.0, 7), 7);
        assert_eq!(portion(0.0, 7), 0);
        assert_eq!(portion(0.8, 1), 1);
    }

    #[test]
    fn ratio_validation() {
        let g = sample_graph();
        assert!(gen_incremental(&g, 0.0, 1).is_err());
        assert!(gen_decremental(&g, 1.5, 1).is_err());
        assert!(gen_mixed(&g, f64::NAN, 1).is_err());
        assert!(gen_mixed(&g, 0.0, 1).is_ok());
    }

    #[test]
    fn incremental_reconstructs() {
        let g = sample_graph();
        let w = gen_incremental(&g, 0.9, 7).unwrap();
        assert_eq!(w.ops.len(), 9);
        assert_eq!(w.initial.edge_count(), 1);
        assert_eq!(replay(&w.initial, &w.ops), g);
        let full = gen_incremental(&g, 1.0, 7).unwrap();
        assert!(full.initial.is_empty());
        assert_eq!(full.ops.len(), g.edge_count());
    }

    #[test]
    fn seeds_change_order_only() {
        let g = sample_graph();
        let a = gen_incremental(&g, 1.0, 1).unwrap();
        let b = gen_incremental(&g, 1.0, 2).unwrap();
        assert_ne!(a.ops, b.ops);
        assert_eq!(replay(&a.initial, &a.ops), replay(&b.initial, &b.ops));
        assert_eq!(a, gen_incremental(&g, 1.0, 1).unwrap());
    }

    #[test]
    fn decremental_is_valid() {
        let g = sample_graph();
        let ops = gen_decremental(&g, 1.0, 3).unwrap();
        assert!(replay(&g, &ops).is_empty());
        let ops = gen_decremental(&g, 0.9, 3).unwrap();
        assert_eq!(ops, gen_decremental(&g, 0.9, 3).unwrap());
        let rest = replay(&g, &ops);
        assert_eq!(rest.edge_count(), 1);
    }

    #[test]
    fn mixed_zero_ratio() {
        let g = sample_graph();
        let w = gen_mixed(&g, 0.0, 5).unwrap();
        assert!(w.ops.is_empty());
        assert_eq!(w.initial, g);
    }

    #[test]
    fn mixed_pool_accounting() {
        let g = sample_graph();
        for seed in 0..20 {
            let w = gen_mixed(&g, 0.9, seed).unwrap();
            assert_eq!(w.ops.len(), 9);
            // present + pool is always the whole multiset, so replay is
            // valid and every intermediate graph is a sub-multiset of g
            let mut cur = w.initial.clone();
            for op in &w.ops {
                cur = replay(&cur, std::slice::from_ref(op));
                for ((u, v, a), c) in cur.edges() {
                    assert!(c <= g.count(u, v, a));
                }
            }
        }
    }

    #[test]
    fn dense_family_shape() {
        let f = gen_dense_family(1).unwrap();
        assert_eq!(f.graph.n(), 5);
        assert_eq!(f.graph.edge_count(), 4);
        let f = gen_dense_family(3).unwrap();
        assert_eq!(f.graph.n(), 13);
        assert_eq!(f.graph.edge_count(), 2 * 9 + 2);
        assert!(gen_dense_family(0).is_err());
    }

    #[test]
    fn sparse_family_shape() {
        let f = gen_sparse_family(3).unwrap();
        assert_eq!(f.graph.n(), 11);
        // 2 from u, 2(n-1) chain, 2n label-1, n from v
        assert_eq!(f.graph.edge_count(), 2 + 4 + 6 + 3);
    }

    #[test]
    fn families_match_oracle() {
        for n in 1..=3 {
            for f in [gen_dense_family(n).unwrap(), gen_sparse_family(n).unwrap()] {
                assert_eq!(
                    closure_oracle(&f.graph),
                    f.expected_before(),
                    "{:?} {n}",
                    f.kind
                );
                let after = replay(&f.graph, &[f.delete]);
                assert_eq!(
                    closure_oracle(&after),
                    f.expected_after(),
                    "{:?} {n}",
                    f.kind
                );
            }
        }
    }
}
