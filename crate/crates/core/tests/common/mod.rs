// SPDX-License-Identifier: Apache-2.0
#![allow(dead_code)]

use bidyck::{DyckGraph, Engine, Partition};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Six-node two-label example: nodes c..h are 0..5, labels L = 0, R = 1.
pub mod small {
    pub const C: usize = 0;
    pub const D: usize = 1;
    pub const E: usize = 2;
    pub const F: usize = 3;
    pub const G: usize = 4;
    pub const H: usize = 5;
    pub const L: usize = 0;
    pub const R: usize = 1;

    /// Initial edges in insertion order; `f`'s L-list ends up as (e, c, d).
    pub const EDGES: [(usize, usize, usize); 6] = [
        (C, G, R),
        (F, D, L),
        (F, C, L),
        (F, E, L),
        (G, E, L),
        (H, F, L),
    ];
    pub const INSERTED: (usize, usize, usize) = (D, H, R);
    pub const DELETED: (usize, usize, usize) = (F, D, L);
}

pub fn small_engine() -> Engine {
    let mut e = Engine::new(6, 2);
    for (u, v, a) in small::EDGES {
        e.insert(u, v, a).unwrap();
    }
    e
}

pub fn small_graph() -> DyckGraph {
    let mut g = DyckGraph::new(6, 2);
    for (u, v, a) in small::EDGES {
        g.add_edge(u, v, a).unwrap();
    }
    g
}

/// Twelve-node three-label example.
pub mod twelve {
    pub const A: usize = 0;
    pub const B: usize = 1;
    pub const C: usize = 2;
    pub const D: usize = 3;
    pub const E: usize = 4;
    pub const F: usize = 5;
    pub const G: usize = 6;
    pub const H: usize = 7;
    pub const U: usize = 8;
    pub const V: usize = 9;
    pub const X: usize = 10;
    pub const Y: usize = 11;
    pub const ALPHA: usize = 0;
    pub const BETA: usize = 1;
    pub const GAMMA: usize = 2;

    pub const EDGES: [(usize, usize, usize); 19] = [
        (A, A, ALPHA),
        (A, C, ALPHA),
        (C, A, BETA),
        (C, B, BETA),
        (C, D, GAMMA),
        (C, E, GAMMA),
        (D, G, ALPHA),
        (D, U, BETA),
        (E, H, ALPHA),
        (F, X, BETA),
        (F, C, GAMMA),
        (G, D, GAMMA),
        (H, F, GAMMA),
        (Y, Y, ALPHA),
        (Y, U, ALPHA),
        (Y, U, BETA),
        (Y, V, BETA),
        (U, E, GAMMA),
        (V, F, GAMMA),
    ];
    pub const DELETED: (usize, usize, usize) = (C, D, GAMMA);
}

pub fn twelve_engine() -> Engine {
    let mut e = Engine::new(12, 3);
    for (u, v, a) in twelve::EDGES {
        e.insert(u, v, a).unwrap();
    }
    e
}

/// `u -a-> x1`, `u -a-> x2`, `x1 <-> y1`, `x2 <-> y2`; nodes u, x1, x2, y1, y2.
pub fn counterexample_engine() -> Engine {
    let (u, x1, x2, y1, y2) = (0, 1, 2, 3, 4);
    let mut e = Engine::new(5, 1);
    for (s, t) in [(u, x1), (u, x2), (x1, y1), (y1, x1), (x2, y2), (y2, x2)] {
        e.insert(s, t, 0).unwrap();
    }
    e
}

pub fn blocks(bs: &[&[usize]], n: usize) -> Partition {
    let mut all: Vec<Vec<usize>> = bs.iter().map(|b| b.to_vec()).collect();
    let mut covered = vec![false; n];
    for &x in bs.iter().flat_map(|b| b.iter()) {
        covered[x] = true;
    }
    all.extend((0..n).filter(|&x| !covered[x]).map(|x| vec![x]));
    Partition::from_blocks(all)
}

/// Random graph with `n` nodes, `k` labels and `m` edge copies.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, k: usize, m: usize) -> DyckGraph {
    let mut g = DyckGraph::new(n, k);
    for _ in 0..m {
        g.add_edge(
            rng.gen_range(0..n),
            rng.gen_range(0..n),
            rng.gen_range(0..k),
        )
        .unwrap();
    }
    g
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
