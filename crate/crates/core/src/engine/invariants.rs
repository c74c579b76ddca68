// SPDX-License-Identifier: Apache-2.0

//! From-scratch verification of the engine's internal state.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use serde::Serialize;

use super::{Engine, NO_POS};
use crate::oracle::closure_oracle;
use crate::partition::Partition;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantResult {
    pub name: &'static str,
    pub what: &'static str,
    /// `None` when the check passed or was skipped.
    pub failure: Option<String>,
    pub skipped: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub results: Vec<InvariantResult>,
}

impl InvariantReport {
    pub fn all_passed(&self) -> bool {
        self.results.iter().all(|r| r.failure.is_none())
    }

    pub fn failures(&self) -> impl Iterator<Item = &InvariantResult> {
        self.results.iter().filter(|r| r.failure.is_some())
    }
}

impl fmt::Display for InvariantReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.results {
            let status = match (&r.failure, r.skipped) {
                (_, true) => "skip".to_string(),
                (None, false) => "pass".to_string(),
                (Some(msg), false) => format!("FAIL: {msg}"),
            };
            writeln!(f, "{} {}: {}", r.name, r.what, status)?;
        }
        Ok(())
    }
}

fn check(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Connected components of the primal graph, recomputed from the edge set:
/// all `a`-targets of one source are joined.
fn primal_components(e: &Engine) -> Partition {
    let mut targets: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for &(u, v, a) in e.count.keys() {
        targets.entry((u, a)).or_default().push(v);
    }
    let mut label: Vec<usize> = (0..e.n).collect();
    loop {
        let mut changed = false;
        for ts in targets.values() {
            let m = ts.iter().map(|&t| label[t]).min().expect("non-empty");
            for &t in ts {
                let old = label[t];
                if old != m {
                    for l in label.iter_mut() {
                        if *l == old {
                            *l = m;
                        }
                    }
                    changed = true;
                }
            }
        }
        if !changed {
            return Partition::from_labels(&label);
        }
    }
}

impl Engine {
    /// Checks I1 to I7. The DSCC check (I7) runs the closure oracle and is
    /// skipped unless `with_oracle` is set.
    pub fn check_invariants(&self, with_oracle: bool) -> InvariantReport {
        let mut results = Vec::new();
        let mut push = |name, what, r: Result<(), String>, skipped| {
            results.push(InvariantResult {
                name,
                what,
                failure: r.err(),
                skipped,
            })
        };
        push("I1", "quiescent fixpoint", self.check_i1(), false);
        push("I2", "out lists match edge counts", self.check_i2(), false);
        push("I3", "in_primary soundness", self.check_i3(), false);
        push("I4", "in_primary completeness", self.check_i4(), false);
        push(
            "I5",
            "PDSCCs equal primal components",
            self.check_i5(),
            false,
        );
        push(
            "I6",
            "primal edges are consecutive out pairs",
            self.check_i6(),
            false,
        );
        let i7 = if with_oracle { self.check_i7() } else { Ok(()) };
        push("I7", "DSCCs equal the oracle", i7, !with_oracle);
        InvariantReport { results }
    }

    fn check_i1(&self) -> Result<(), String> {
        check(self.core.queue.is_empty(), || "worklist not empty".into())?;
        let dsu = &self.core.dsu;
        for x in 0..self.n {
            for a in 0..self.k {
                let list = self.edges_list(x, a);
                if !dsu.is_root(x) {
                    check(list.is_empty(), || {
                        format!("non-root {x} holds Edges[{x}][{a}] = {list:?}")
                    })?;
                    continue;
                }
                check(list.len() <= 1, || format!("Edges[{x}][{a}] = {list:?}"))?;
                // the entry names the DSCC all a-targets of x's DSCC fall into
                let mut target_roots = HashSet::new();
                for m in dsu.members(x) {
                    for t in self.out.iter(self.slot(m, a)) {
                        target_roots.insert(dsu.find_const(t));
                    }
                }
                match list.first() {
                    None => check(target_roots.is_empty(), || {
                        format!("Edges[{x}][{a}] empty but the DSCC has {a}-edges")
                    })?,
                    Some(&t) => check(
                        target_roots.len() == 1 && target_roots.contains(&dsu.find_const(t)),
                        || format!("Edges[{x}][{a}] = ({t}) does not name the target DSCC"),
                    )?,
                }
            }
        }
        Ok(())
    }

    fn check_i2(&self) -> Result<(), String> {
        let mut listed = 0;
        for u in 0..self.n {
            for a in 0..self.k {
                let s = self.slot(u, a);
                let items: Vec<usize> = self.out.iter(s).collect();
                check(items.len() == self.out.len(s), || {
                    format!("out[{u}][{a}] length mismatch")
                })?;
                let distinct: HashSet<_> = items.iter().collect();
                check(distinct.len() == items.len(), || {
                    format!("out[{u}][{a}] = {items:?} repeats a target")
                })?;
                for &v in &items {
                    check(self.count(u, v, a) >= 1, || {
                        format!("out[{u}][{a}] lists {v} without an edge")
                    })?;
                }
                listed += items.len();
            }
        }
        check(listed == self.count.len(), || {
            "some present edge is missing from its out list".into()
        })
    }

    fn check_i3(&self) -> Result<(), String> {
        for z in 0..self.n {
            for a in 0..self.k {
                for (pos, &u) in self.in_primary[self.slot(z, a)].iter().enumerate() {
                    let u = u as usize;
                    let us = self.slot(u, a);
                    check(self.count(u, z, a) >= 1, || {
                        format!("{u} in in_primary[{z}][{a}] without an edge")
                    })?;
                    let tail = self.out.tail_cell(us).map(|c| self.out.val(c));
                    check(tail == Some(z), || {
                        format!("{u} in in_primary[{z}][{a}] but tail is {tail:?}")
                    })?;
                    check(self.ip_pos[us] as usize == pos, || {
                        format!("stale position for {u} in in_primary[{z}][{a}]")
                    })?;
                }
            }
        }
        Ok(())
    }

    fn check_i4(&self) -> Result<(), String> {
        let pdscc = self.primal_partition().block_index();
        for u in 0..self.n {
            for a in 0..self.k {
                let us = self.slot(u, a);
                let Some(y) = self.out.head(us) else {
                    check(self.ip_pos[us] == NO_POS, || {
                        format!("{u} has no {a}-edges but an in_primary entry")
                    })?;
                    continue;
                };
                let holders: Vec<usize> = (0..self.n)
                    .filter(|&z| self.in_primary[self.slot(z, a)].contains(&(u as u32)))
                    .collect();
                check(holders.len() == 1, || {
                    format!("{u} listed under {a} in in_primary of {holders:?}")
                })?;
                check(pdscc[holders[0]] == pdscc[y], || {
                    format!("in_primary holder of ({u},{a}) outside PDSCC({y})")
                })?;
            }
        }
        Ok(())
    }

    fn check_i5(&self) -> Result<(), String> {
        let want = primal_components(self);
        let got = self.primal_partition();
        check(got == want, || {
            format!("PDSCCs {got} but primal graph has {want}")
        })
    }

    fn check_i6(&self) -> Result<(), String> {
        let mut want = Vec::new();
        for s in 0..self.n * self.k {
            let items: Vec<usize> = self.out.iter(s).collect();
            for w in items.windows(2) {
                want.push((w[0].min(w[1]), w[0].max(w[1])));
            }
        }
        want.sort_unstable();
        let got = self.prim.edge_multiset();
        check(got == want, || {
            format!("primal edges {got:?}, consecutive pairs {want:?}")
        })
    }

    fn check_i7(&self) -> Result<(), String> {
        let want = closure_oracle(&self.graph());
        let got = self.partition();
        check(got == want, || format!("engine {got}, oracle {want}"))
    }
}
