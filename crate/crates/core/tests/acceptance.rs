// SPDX-License-Identifier: Apache-2.0

//! Acceptance suite. Runs without the libtest harness so that the one-line
//! verdict per criterion is always printed; exits non-zero if any fails.

mod common;

use std::collections::BTreeSet;
use std::time::Instant;

use bidyck::conn::{DynConnectivity, NaiveConnectivity};
use bidyck::graph::{serialize_graph, serialize_ops};
use bidyck::oracle::{cfl_oracle, closure_oracle};
use bidyck::workload::{
    gen_decremental, gen_dense_family, gen_incremental, gen_mixed, gen_sparse_family, Family,
};
use bidyck::{offline_recompute, DyckGraph, Engine, Partition, UpdateOp};
use common::{blocks, rng};
use rand::Rng;

type Verdict = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Tallies shared between the criteria that replay update sequences.
#[derive(Default)]
struct Tally {
    invariant_checks: u64,
    invariant_failures: Vec<String>,
    fuzz_ops: u64,
    budget_violations: Vec<String>,
    worst_budget_ratio: f64,
}

impl Tally {
    fn check(&mut self, e: &Engine, context: impl FnOnce() -> String) {
        self.invariant_checks += 1;
        let report = e.check_invariants(true);
        if !report.all_passed() && self.invariant_failures.len() < 5 {
            self.invariant_failures
                .push(format!("{}:\n{}", context(), report));
        }
    }
}

fn criterion_1(t: &mut Tally) -> Verdict {
    use common::small::*;
    let mut e = common::small_engine();
    t.check(&e, || "worked example, initial".into());
    let p0 = blocks(&[&[C, D, E]], 6);
    ensure(e.partition() == p0, || {
        format!("initial partition {}", e.partition())
    })?;

    let (u, v, a) = INSERTED;
    e.insert(u, v, a).map_err(|x| x.to_string())?;
    t.check(&e, || "worked example, after insert".into());
    let p1 = blocks(&[&[C, D, E, F], &[G, H]], 6);
    ensure(e.partition() == p1, || {
        format!("after insert {}", e.partition())
    })?;
    ensure(e.dscc_repr(C) == F && e.dscc_repr(G) == H, || {
        "roots after insert are not f and h".into()
    })?;
    let lists = e.edges_lists();
    let keys: Vec<_> = lists.iter().map(|(k, _)| *k).collect();
    ensure(keys == vec![(F, L), (F, R), (H, L)], || {
        format!("Edges keys after insert {keys:?}")
    })?;
    ensure(
        lists[0].1.len() == 1
            && e.same_dscc(lists[0].1[0], C)
            && lists[1].1 == vec![H]
            && lists[2].1 == vec![F],
        || format!("Edges after insert {lists:?}"),
    )?;
    ensure(e.in_primary(H, R) == vec![D], || {
        "InPrimary[h][R] after insert".into()
    })?;
    ensure(e.primal_partition() == p0, || "PDSCCs after insert".into())?;

    let (u, v, a) = DELETED;
    e.delete(u, v, a).map_err(|x| x.to_string())?;
    t.check(&e, || "worked example, after delete".into());
    let p2 = blocks(&[&[C, E]], 6);
    ensure(e.partition() == p2, || {
        format!("after delete {}", e.partition())
    })?;
    ensure(e.dscc_repr(E) == C, || "root of {c,e} is not c".into())?;
    let mut lists = e.edges_lists();
    lists.sort();
    let want = vec![
        ((C, R), vec![G]),
        ((D, R), vec![H]),
        ((F, L), vec![C]),
        ((G, L), vec![E]),
        ((H, L), vec![F]),
    ];
    ensure(lists == want, || format!("Edges after delete {lists:?}"))?;
    let ip: Vec<_> = [(C, L), (E, L), (F, L), (G, R), (H, R)]
        .iter()
        .map(|&(z, b)| e.in_primary(z, b))
        .collect();
    ensure(
        ip == vec![vec![F], vec![G], vec![H], vec![C], vec![D]],
        || format!("InPrimary after delete {ip:?}"),
    )?;
    let tr = e.last_make_primary().ok_or("no rebuild trace")?;
    ensure(tr.affected == vec![F, H], || {
        format!("Z = {:?}", tr.affected)
    })?;
    let r: BTreeSet<_> = tr.new_roots.iter().copied().collect();
    ensure(r == BTreeSet::from([C, D, F, G, H]), || {
        format!("R = {r:?}")
    })?;
    let l: BTreeSet<_> = tr.gathered.iter().copied().collect();
    ensure(
        l == BTreeSet::from([(D, R), (F, L), (C, R), (G, L), (H, L)]),
        || format!("L = {l:?}"),
    )?;
    ensure(tr.enqueued.is_empty(), || format!("Q = {:?}", tr.enqueued))?;
    Ok("3 partitions and both quiescent states match".into())
}

fn criterion_2(t: &mut Tally) -> Verdict {
    let mut e = common::counterexample_engine();
    t.check(&e, || "counterexample, before delete".into());
    e.delete(0, 2, 0).map_err(|x| x.to_string())?;
    t.check(&e, || "counterexample, after delete".into());
    ensure(e.partition() == Partition::singletons(5), || {
        format!("partition {}", e.partition())
    })?;
    Ok("five singletons".into())
}

fn random_op(rng: &mut impl Rng, g: &DyckGraph) -> UpdateOp {
    let (n, k) = (g.n(), g.k());
    let roll = rng.gen_range(0..10);
    if roll < 1 {
        return UpdateOp::QuerySame {
            u: rng.gen_range(0..n),
            v: rng.gen_range(0..n),
        };
    }
    if roll < 5 && !g.is_empty() {
        let copies: Vec<_> = g.edge_copies().collect();
        let (u, v, label) = copies[rng.gen_range(0..copies.len())];
        return UpdateOp::Delete { u, v, label };
    }
    UpdateOp::Insert {
        u: rng.gen_range(0..n),
        v: rng.gen_range(0..n),
        label: rng.gen_range(0..k),
    }
}

fn criterion_3(t: &mut Tally) -> Verdict {
    const GRAPHS: u64 = 500;
    const OPS: usize = 200;
    let mut r = rng(3);
    let mut mismatches = Vec::new();
    for case in 0..GRAPHS {
        let n = r.gen_range(1..=40);
        let k = r.gen_range(1..=3);
        let m = r.gen_range(0..=3 * n);
        let mut g = common::random_graph(&mut r, n, k, m);
        let mut e = Engine::from_graph(&g);
        t.check(&e, || format!("fuzz case {case}, initial"));
        for i in 0..OPS {
            let op = random_op(&mut r, &g);
            let out = e
                .apply(&op)
                .map_err(|x| format!("case {case} op {i}: {x}"))?;
            match op {
                UpdateOp::Insert { u, v, label } => {
                    g.add_edge(u, v, label).unwrap();
                }
                UpdateOp::Delete { u, v, label } => {
                    g.remove_edge(u, v, label).unwrap();
                }
                _ => {}
            }
            t.fuzz_ops += 1;
            let want = closure_oracle(&g);
            let got = e.partition();
            if got != want && mismatches.len() < 3 {
                mismatches.push(format!(
                    "case {case} op {i} {op:?}: engine {got}, oracle {want}"
                ));
            }
            if let (UpdateOp::QuerySame { u, v }, bidyck::OpOutcome::Same(s)) = (op, out) {
                if s != want.same_block(u, v) && mismatches.len() < 3 {
                    mismatches.push(format!("case {case} op {i}: query ({u},{v}) answered {s}"));
                }
            }
            t.check(&e, || format!("fuzz case {case} op {i} {op:?}"));
            if op.is_update() {
                let touched = e.work_counters().last_op.nodes_touched();
                let ratio = touched as f64 / n as f64;
                t.worst_budget_ratio = t.worst_budget_ratio.max(ratio);
                if touched > 64 * n as u64 && t.budget_violations.len() < 3 {
                    t.budget_violations
                        .push(format!("case {case} op {i}: {touched} > 64 * {n}"));
                }
            }
        }
        if offline_recompute(&g).partition != e.partition() && mismatches.len() < 3 {
            mismatches.push(format!("case {case}: offline recompute disagrees"));
        }
    }
    ensure(mismatches.is_empty(), || mismatches.join("; "))?;
    Ok(format!("{GRAPHS} graphs x {OPS} ops, 0 mismatches"))
}

fn criterion_4() -> Verdict {
    const GRAPHS: usize = 200;
    let mut r = rng(4);
    for case in 0..GRAPHS {
        let n = r.gen_range(1..=12);
        let k = r.gen_range(1..=3);
        let m = r.gen_range(0..=3 * n);
        let g = common::random_graph(&mut r, n, k, m);
        let a = closure_oracle(&g);
        let b = cfl_oracle(&g).map_err(|x| x.to_string())?;
        ensure(a == b, || format!("case {case}: closure {a}, cfl {b}"))?;
    }
    Ok(format!("{GRAPHS} graphs, 0 mismatches"))
}

fn criterion_5(t: &Tally) -> Verdict {
    ensure(t.invariant_failures.is_empty(), || {
        t.invariant_failures.join("\n")
    })?;
    ensure(t.invariant_checks > 0, || "no checks ran".into())?;
    Ok(format!(
        "{} checks of I1-I7, 0 failures",
        t.invariant_checks
    ))
}

fn criterion_6() -> Verdict {
    const N: usize = 256;
    const OPS: usize = 100_000;
    let mut r = rng(6);
    let mut fast = DynConnectivity::new(N);
    let mut slow = NaiveConnectivity::new(N);
    let mut present: Vec<(usize, usize)> = Vec::new();
    let (mut queries, mut samples) = (0, 0);
    for i in 0..OPS {
        let roll = r.gen_range(0..10);
        // keep the edge count hovering around n so components keep forming
        // and breaking
        let want_insert = present.len() < N / 2 || (present.len() < 2 * N && roll < 4);
        if roll >= 7 {
            let (u, v) = (r.gen_range(0..N), r.gen_range(0..N));
            queries += 1;
            ensure(fast.connected(u, v) == slow.connected(u, v), || {
                format!("op {i}: connected({u},{v}) disagrees")
            })?;
        } else if want_insert || present.is_empty() {
            let u = r.gen_range(0..N);
            let v = (u + r.gen_range(1..N)) % N;
            fast.insert(u, v);
            slow.insert(u, v);
            present.push((u, v));
        } else {
            let (u, v) = present.swap_remove(r.gen_range(0..present.len()));
            fast.delete(u, v);
            slow.delete(u, v);
        }
        if i % 100 == 99 {
            samples += 1;
            let a: Vec<usize> = (0..N).map(|x| fast.component_repr(x)).collect();
            let b = slow.labels();
            ensure(a == b, || format!("op {i}: component partitions differ"))?;
            ensure(fast.edge_multiset() == slow.edge_multiset(), || {
                format!("op {i}: edge sets differ")
            })?;
        }
    }
    fast.check_levels()?;
    Ok(format!(
        "{OPS} ops on n={N}, {queries} queries, {samples} partition samples, 0 mismatches"
    ))
}

struct Scaling {
    sizes: Vec<usize>,
    dynamic: Vec<u64>,
    offline: Vec<u64>,
}

fn measure(make: impl Fn(usize) -> Family, sizes: &[usize]) -> Result<Scaling, String> {
    let mut s = Scaling {
        sizes: sizes.to_vec(),
        dynamic: Vec::new(),
        offline: Vec::new(),
    };
    for &n in sizes {
        let f = make(n);
        let mut e = Engine::from_graph(&f.graph);
        ensure(e.partition() == f.expected_before(), || {
            format!("n={n}: partition before the delete is wrong")
        })?;
        e.apply(&f.delete).map_err(|x| x.to_string())?;
        ensure(e.partition() == f.expected_after(), || {
            format!("n={n}: partition after the delete is wrong")
        })?;
        s.dynamic.push(e.work_counters().last_op.nodes_touched());
        let off = offline_recompute(&e.graph());
        ensure(off.partition == f.expected_after(), || {
            format!("n={n}: offline partition is wrong")
        })?;
        s.offline.push(off.edge_touches);
    }
    Ok(s)
}

fn ratios(v: &[u64]) -> Vec<f64> {
    v.windows(2).map(|w| w[1] as f64 / w[0] as f64).collect()
}

fn fmt_ratios(v: &[f64]) -> String {
    v.iter()
        .map(|r| format!("{r:.2}"))
        .collect::<Vec<_>>()
        .join(",")
}

fn criterion_7() -> Verdict {
    let s = measure(|n| gen_dense_family(n).unwrap(), &[100, 200, 400, 800])?;
    let dy = ratios(&s.dynamic);
    let off = ratios(&s.offline);
    let detail = format!(
        "n={:?} dynamic={:?} ratios [{}], offline={:?} ratios [{}]",
        s.sizes,
        s.dynamic,
        fmt_ratios(&dy),
        s.offline,
        fmt_ratios(&off)
    );
    ensure(dy.iter().all(|&r| r <= 3.0), || {
        format!("dynamic ratio above 3.0: {detail}")
    })?;
    ensure(off.iter().all(|&r| r >= 3.5), || {
        format!("offline ratio below 3.5: {detail}")
    })?;
    Ok(detail)
}

fn criterion_8() -> Verdict {
    let s = measure(|n| gen_sparse_family(n).unwrap(), &[200, 400, 800, 1600])?;
    let dy = ratios(&s.dynamic);
    let detail = format!(
        "n={:?} dynamic={:?} ratios [{}], c-block intact",
        s.sizes,
        s.dynamic,
        fmt_ratios(&dy)
    );
    ensure(dy.iter().all(|&r| (1.5..=3.0).contains(&r)), || {
        format!("ratio outside [1.5, 3.0]: {detail}")
    })?;
    Ok(detail)
}

fn criterion_9(t: &Tally) -> Verdict {
    ensure(t.fuzz_ops > 0, || "no fuzz ops ran".into())?;
    ensure(t.budget_violations.is_empty(), || {
        t.budget_violations.join("; ")
    })?;
    Ok(format!(
        "{} ops, worst nodes-touched / n = {:.2} (budget 64)",
        t.fuzz_ops, t.worst_budget_ratio
    ))
}

fn criterion_10() -> Verdict {
    let g = common::small_graph();
    let dir = tempfile::tempdir().map_err(|x| x.to_string())?;
    let mut files = Vec::new();
    for run in 0..2 {
        let inc = gen_incremental(&g, 0.9, 7).map_err(|x| x.to_string())?;
        let dec = gen_decremental(&g, 0.9, 7).map_err(|x| x.to_string())?;
        let mix = gen_mixed(&g, 0.9, 7).map_err(|x| x.to_string())?;
        let dense = gen_dense_family(5).map_err(|x| x.to_string())?;
        let text = [
            serialize_graph(&inc.initial),
            serialize_ops(&inc.ops),
            serialize_ops(&dec),
            serialize_graph(&mix.initial),
            serialize_ops(&mix.ops),
            serialize_graph(&dense.graph),
        ];
        let mut paths = Vec::new();
        for (i, t) in text.iter().enumerate() {
            let p = dir.path().join(format!("run{run}_{i}.txt"));
            std::fs::write(&p, t).map_err(|x| x.to_string())?;
            paths.push(p);
        }
        files.push(paths);
    }
    for (a, b) in files[0].iter().zip(&files[1]) {
        let (x, y) = (std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
        ensure(x == y, || format!("{} differs between runs", a.display()))?;
    }
    let want = blocks(&[&[0, 1, 2]], 6);
    for seed in 0..10 {
        let w = gen_incremental(&g, 0.9, seed).map_err(|x| x.to_string())?;
        let mut e = Engine::from_graph(&w.initial);
        for op in &w.ops {
            e.apply(op).map_err(|x| x.to_string())?;
        }
        ensure(e.partition() == want, || {
            format!("seed {seed}: replay ends in {}", e.partition())
        })?;
    }
    Ok("byte-identical reruns; 10 seeded 90-10 replays reach {c,d,e},{f},{g},{h}".into())
}

fn main() {
    let mut tally = Tally::default();
    let mut failed = 0;
    let mut report = |id: u32, title: &str, run: &mut dyn FnMut() -> Verdict| {
        let start = Instant::now();
        let v = run();
        let secs = start.elapsed().as_secs_f64();
        match v {
            Ok(detail) => println!("criterion {id:>2} PASS  {title} ({secs:.1}s): {detail}"),
            Err(why) => {
                failed += 1;
                println!("criterion {id:>2} FAIL  {title} ({secs:.1}s): {why}");
            }
        }
    };
    report(1, "worked example exactness", &mut || {
        criterion_1(&mut tally)
    });
    report(2, "correctness counterexample", &mut || {
        criterion_2(&mut tally)
    });
    report(3, "oracle equivalence fuzz", &mut || {
        criterion_3(&mut tally)
    });
    report(4, "cross-oracle validation", &mut criterion_4);
    report(5, "invariant suite", &mut || criterion_5(&tally));
    report(6, "dynamic connectivity differential", &mut criterion_6);
    report(7, "dense family scaling", &mut criterion_7);
    report(8, "sparse family scaling", &mut criterion_8);
    report(9, "per-update budget", &mut || criterion_9(&tally));
    report(10, "workload determinism", &mut criterion_10);
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all 10 acceptance criteria passed");
}
