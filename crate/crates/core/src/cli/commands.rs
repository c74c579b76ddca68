// SPDX-License-Identifier: Apache-2.0

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use super::report::{
    BenchReport, BenchRow, BenchSummary, CheckReport, Mismatch, OfflineCost, QueryAnswer,
    RunReport, Stat,
};
use super::{Baseline, BenchArgs, CheckArgs, CliError, FamilyArg, GenArgs, OracleArg, RunArgs};
use crate::engine::{offline_recompute, Engine, OpOutcome, WorkCounters};
use crate::error::Error;
use crate::graph::{parse_graph, parse_ops, serialize_graph, serialize_ops, DyckGraph, UpdateOp};
use crate::oracle::{cfl_oracle, closure_oracle, CFL_NODE_LIMIT};
use crate::workload::{gen_dense_family, gen_sparse_family, Mode, SequenceSpec};

type CliResult<T> = std::result::Result<T, CliError>;

fn io_err(e: std::io::Error) -> CliError {
    CliError::input(format!("write failed: {e}"))
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

pub(crate) fn load_graph(path: &Path) -> CliResult<DyckGraph> {
    parse_graph(&read(path)?).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

/// Parses an ops file and range-checks every op against `g`.
pub(crate) fn load_ops(path: &Path, g: &DyckGraph) -> CliResult<Vec<UpdateOp>> {
    let ops =
        parse_ops(&read(path)?).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    for (i, op) in ops.iter().enumerate() {
        op.check(g.n(), g.k())
            .map_err(|e| CliError::input(format!("{}: op {i}: {e}", path.display())))?;
    }
    Ok(ops)
}

fn op_error(index: usize, op: &UpdateOp, e: Error) -> CliError {
    let code = if matches!(e, Error::AbsentEdge { .. }) {
        3
    } else {
        2
    };
    CliError {
        code,
        message: format!("op {index} ({}): {e}", op_text(op)),
    }
}

fn op_text(op: &UpdateOp) -> String {
    serialize_ops(std::slice::from_ref(op))
        .trim_end()
        .to_owned()
}

fn mirror(g: &mut DyckGraph, op: &UpdateOp) {
    // the engine already validated the op, so these cannot fail
    match *op {
        UpdateOp::Insert { u, v, label } => {
            g.add_edge(u, v, label).expect("validated insert");
        }
        UpdateOp::Delete { u, v, label } => {
            g.remove_edge(u, v, label).expect("validated delete");
        }
        _ => {}
    }
}

pub fn run(args: &RunArgs, out: &mut dyn Write) -> CliResult<()> {
    let g = load_graph(&args.graph)?;
    let ops = load_ops(&args.ops, &g)?;
    let start = Instant::now();
    let mut e = Engine::from_graph(&g);
    let build = e.work_counters().total;
    let mut answers = Vec::new();
    let mut updates = 0;
    let mut checks = 0;
    let mut max_touched = 0;
    let mut sum_touched = 0;
    for (i, op) in ops.iter().enumerate() {
        let outcome = e.apply(op).map_err(|err| op_error(i, op, err))?;
        let answer = match (outcome, *op) {
            (OpOutcome::Same(same), UpdateOp::QuerySame { u, v }) => Some(QueryAnswer::Same {
                index: i,
                u,
                v,
                same,
            }),
            (OpOutcome::Repr(repr), UpdateOp::QueryRepr { u }) => {
                Some(QueryAnswer::Repr { index: i, u, repr })
            }
            _ => {
                updates += 1;
                let t = e.work_counters().last_op.nodes_touched();
                max_touched = max_touched.max(t);
                sum_touched += t;
                None
            }
        };
        if let Some(a) = answer {
            if !args.json {
                writeln!(out, "{a}").map_err(io_err)?;
            }
            answers.push(a);
        }
        if args.check_invariants {
            checks += 1;
            let report = e.check_invariants(false);
            if !report.all_passed() {
                return Err(CliError::failed(format!(
                    "invariant violated after op {i} ({}):\n{report}",
                    op_text(op)
                )));
            }
        }
    }
    let final_partition = e.partition();
    if args.json {
        let report = RunReport {
            n: g.n(),
            k: g.k(),
            ops: ops.len(),
            updates,
            answers,
            final_partition,
            invariant_checks: args.check_invariants.then_some(checks),
            work: e.work_counters().total - build,
            mean_update_nodes_touched: if updates == 0 {
                0.0
            } else {
                sum_touched as f64 / updates as f64
            },
            max_update_nodes_touched: max_touched,
            elapsed_secs: start.elapsed().as_secs_f64(),
        };
        serde_json::to_writer_pretty(&mut *out, &report)
            .map_err(|e| CliError::input(format!("write failed: {e}")))?;
        writeln!(out).map_err(io_err)?;
    } else if args.final_partition {
        writeln!(out, "partition: {final_partition}").map_err(io_err)?;
    }
    Ok(())
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = OsString::from(prefix.as_os_str());
    s.push(suffix);
    PathBuf::from(s)
}

pub fn generate(args: &GenArgs, out: &mut dyn Write) -> CliResult<()> {
    let invalid = |e: Error| CliError::input(e.to_string());
    let (graph, ops) = if let Some(kind) = args.family {
        if args.graph.is_some() {
            return Err(CliError::input("--family takes no input graph"));
        }
        let n = args
            .n
            .ok_or_else(|| CliError::input("--family requires --n"))?;
        let fam = match kind {
            FamilyArg::Dense => gen_dense_family(n),
            FamilyArg::Sparse => gen_sparse_family(n),
        }
        .map_err(invalid)?;
        (fam.graph, vec![fam.delete])
    } else {
        let path = args
            .graph
            .as_deref()
            .ok_or_else(|| CliError::input("an input graph is required"))?;
        let g = load_graph(path)?;
        let mode = if args.incremental {
            Mode::Incremental
        } else if args.decremental {
            Mode::Decremental
        } else {
            Mode::Mixed
        };
        let seq = SequenceSpec {
            mode,
            ratio: args.ratio,
            seed: args.seed,
        };
        let w = seq.generate(&g).map_err(invalid)?;
        (w.initial, w.ops)
    };
    let gpath = with_suffix(&args.out, ".graph");
    let opath = with_suffix(&args.out, ".ops");
    for (path, text) in [
        (&gpath, serialize_graph(&graph)),
        (&opath, serialize_ops(&ops)),
    ] {
        std::fs::write(path, text)
            .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    }
    writeln!(out, "graph {}", gpath.display()).map_err(io_err)?;
    writeln!(out, "ops {}", opath.display()).map_err(io_err)?;
    writeln!(out, "length {}", ops.len()).map_err(io_err)?;
    Ok(())
}

pub fn bench_report(args: &BenchArgs) -> CliResult<BenchReport> {
    let mut g = load_graph(&args.graph)?;
    let ops = load_ops(&args.ops, &g)?;
    let mut e = Engine::from_graph(&g);
    let mut rows = Vec::new();
    for (i, op) in ops.iter().enumerate() {
        let t = Instant::now();
        e.apply(op).map_err(|err| op_error(i, op, err))?;
        let micros = t.elapsed().as_secs_f64() * 1e6;
        if !op.is_update() {
            continue;
        }
        let work = e.work_counters().last_op;
        let offline = if args.baseline == Baseline::Offline {
            mirror(&mut g, op);
            let t = Instant::now();
            let res = offline_recompute(&g);
            let micros = t.elapsed().as_secs_f64() * 1e6;
            if res.partition != e.partition() {
                return Err(CliError::failed(format!(
                    "recomputation disagrees with the engine after op {i}"
                )));
            }
            Some(OfflineCost {
                micros,
                edge_touches: res.edge_touches,
            })
        } else {
            None
        };
        rows.push(BenchRow {
            index: i,
            op: op_text(op),
            micros,
            nodes_touched: work.nodes_touched(),
            work,
            offline,
        });
    }
    let offline = args.baseline == Baseline::Offline;
    let summary = BenchSummary {
        updates: rows.len(),
        micros: Stat::of(rows.iter().map(|r| r.micros)),
        nodes_touched: Stat::of(rows.iter().map(|r| r.nodes_touched as f64)),
        offline_micros: offline
            .then(|| Stat::of(rows.iter().filter_map(|r| r.offline.map(|o| o.micros)))),
        offline_edge_touches: offline.then(|| {
            Stat::of(
                rows.iter()
                    .filter_map(|r| r.offline.map(|o| o.edge_touches as f64)),
            )
        }),
    };
    Ok(BenchReport {
        n: e.n(),
        k: e.k(),
        rows,
        summary,
    })
}

fn counter_cells(w: &WorkCounters) -> [f64; 6] {
    [
        w.finds as f64,
        w.unions as f64,
        w.list_nodes as f64,
        w.primal_ops as f64,
        w.queue_extractions as f64,
        w.splices as f64,
    ]
}

pub fn bench(args: &BenchArgs, out: &mut dyn Write) -> CliResult<()> {
    let report = bench_report(args)?;
    if args.json {
        serde_json::to_writer_pretty(&mut *out, &report)
            .map_err(|e| CliError::input(format!("write failed: {e}")))?;
        return writeln!(out).map_err(io_err);
    }
    let offline = args.baseline == Baseline::Offline;
    let mut header = format!(
        "{:>8} {:<20} {:>12} {:>10}",
        "index", "op", "micros", "touched"
    );
    if args.counters {
        for name in ["finds", "unions", "list", "primal", "extract", "splices"] {
            header += &format!(" {name:>10}");
        }
    }
    if offline {
        header += &format!(" {:>12} {:>12}", "off_micros", "off_touched");
    }
    writeln!(out, "{header}").map_err(io_err)?;

    let line = |index: &str,
                op: &str,
                micros: f64,
                touched: f64,
                cells: Option<[f64; 6]>,
                off: Option<(f64, f64)>| {
        let mut s = format!("{index:>8} {op:<20} {micros:>12.2} {touched:>10.1}");
        if let Some(cells) = cells {
            for c in cells {
                s += &format!(" {c:>10.1}");
            }
        }
        if let Some((m, t)) = off {
            s += &format!(" {m:>12.2} {t:>12.1}");
        }
        s
    };
    for r in &report.rows {
        let text = line(
            &r.index.to_string(),
            &r.op,
            r.micros,
            r.nodes_touched as f64,
            args.counters.then(|| counter_cells(&r.work)),
            r.offline.map(|o| (o.micros, o.edge_touches as f64)),
        );
        writeln!(out, "{text}").map_err(io_err)?;
    }
    let s = &report.summary;
    let n = report.rows.len().max(1) as f64;
    let mut sums = [0.0; 6];
    let mut maxes = [0.0f64; 6];
    for r in &report.rows {
        for (j, c) in counter_cells(&r.work).into_iter().enumerate() {
            sums[j] += c;
            maxes[j] = maxes[j].max(c);
        }
    }
    let means = sums.map(|x| x / n);
    let off = |pick: fn(&Stat) -> f64| {
        s.offline_micros
            .zip(s.offline_edge_touches)
            .map(|(m, t)| (pick(&m), pick(&t)))
    };
    let mean_line = line(
        "mean",
        "",
        s.micros.mean,
        s.nodes_touched.mean,
        args.counters.then_some(means),
        off(|x| x.mean),
    );
    let max_line = line(
        "max",
        "",
        s.micros.max,
        s.nodes_touched.max,
        args.counters.then_some(maxes),
        off(|x| x.max),
    );
    writeln!(out, "{mean_line}\n{max_line}").map_err(io_err)?;
    Ok(())
}

pub fn check_report(args: &CheckArgs) -> CliResult<CheckReport> {
    let mut g = load_graph(&args.graph)?;
    let use_cfl = matches!(args.oracle, OracleArg::Cfl | OracleArg::Both);
    let use_closure = matches!(args.oracle, OracleArg::Closure | OracleArg::Both);
    if use_cfl && g.n() > CFL_NODE_LIMIT {
        return Err(CliError::input(
            Error::OracleLimit {
                n: g.n(),
                limit: CFL_NODE_LIMIT,
            }
            .to_string(),
        ));
    }
    let ops = load_ops(&args.ops, &g)?;
    let mut e = Engine::from_graph(&g);
    let mut comparisons = 0;
    let mut compare = |e: &Engine, g: &DyckGraph, after_op: Option<usize>| -> Option<Mismatch> {
        let engine = e.partition();
        let mut expected: Vec<(&str, _)> = Vec::new();
        if use_closure {
            expected.push(("closure", closure_oracle(g)));
        }
        if use_cfl {
            expected.push(("cfl", cfl_oracle(g).expect("size checked above")));
        }
        comparisons += 1;
        expected
            .into_iter()
            .find(|(_, p)| *p != engine)
            .map(|(oracle, expected)| Mismatch {
                after_op,
                oracle: oracle.to_owned(),
                engine,
                expected,
            })
    };
    if let Some(m) = compare(&e, &g, None) {
        return Ok(CheckReport {
            ops: ops.len(),
            comparisons,
            mismatch: Some(m),
        });
    }
    for (i, op) in ops.iter().enumerate() {
        e.apply(op).map_err(|err| op_error(i, op, err))?;
        mirror(&mut g, op);
        if (i as u64 + 1).is_multiple_of(args.every) || i + 1 == ops.len() {
            if let Some(m) = compare(&e, &g, Some(i)) {
                return Ok(CheckReport {
                    ops: ops.len(),
                    comparisons,
                    mismatch: Some(m),
                });
            }
        }
    }
    Ok(CheckReport {
        ops: ops.len(),
        comparisons,
        mismatch: None,
    })
}

pub fn check(args: &CheckArgs, out: &mut dyn Write) -> CliResult<()> {
    let report = check_report(args)?;
    match report.mismatch {
        None => writeln!(
            out,
            "ok: {} ops, {} comparisons",
            report.ops, report.comparisons
        )
        .map_err(io_err),
        Some(m) => {
            let at = match m.after_op {
                Some(i) => format!("after op {i}"),
                None => "on the initial graph".to_owned(),
            };
            Err(CliError::failed(format!(
                "mismatch {at} against the {} oracle\n  engine:   {}\n  expected: {}",
                m.oracle, m.engine, m.expected
            )))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suffix_appends_without_replacing_extension() {
        assert_eq!(
            with_suffix(Path::new("out/run.v1"), ".graph"),
            PathBuf::from("out/run.v1.graph")
        );
    }

    #[test]
    fn absent_edge_maps_to_exit_3() {
        let op = UpdateOp::Delete {
            u: 0,
            v: 1,
            label: 0,
        };
        let e = op_error(
            4,
            &op,
            Error::AbsentEdge {
                u: 0,
                v: 1,
                label: 0,
            },
        );
        assert_eq!(e.code, 3);
        assert!(e.message.starts_with("op 4 (d 0 1 0)"));
        let e = op_error(4, &op, Error::NodeOutOfRange { node: 9, n: 2 });
        assert_eq!(e.code, 2);
    }
}
