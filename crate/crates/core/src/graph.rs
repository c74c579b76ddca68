// SPDX-License-Identifier: Apache-2.0

//! The logical edge-labeled bidirected multigraph and its text formats.
//!
//! Only closing-parenthesis edges `u --ā--> v` are stored; the matching
//! opening edge `v --a--> u` is implied. Multiplicities are tracked so that
//! repeated insertions of one edge need the same number of deletions.
//!
//! Graph file:
//!
//! ```text
//! # comment
//! n k
//! u v label
//! ...
//! ```
//!
//! Ops file, one op per line: `i u v label`, `d u v label`, `q u v`, `r u`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense node index in `0..n`.
pub type NodeId = usize;
/// Dense closing-label index in `0..k`.
pub type Label = usize;

/// A closing edge `(src, dst, label)`.
pub type Edge = (NodeId, NodeId, Label);

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct DyckGraph {
    n: usize,
    k: usize,
    count: BTreeMap<Edge, u32>,
}

impl DyckGraph {
    pub fn new(n: usize, k: usize) -> Self {
        DyckGraph {
            n,
            k,
            count: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn check_edge(&self, u: NodeId, v: NodeId, label: Label) -> Result<()> {
        for node in [u, v] {
            if node >= self.n {
                return Err(Error::NodeOutOfRange {
                    node: node as u32,
                    n: self.n,
                });
            }
        }
        if label >= self.k {
            return Err(Error::LabelOutOfRange {
                label: label as u32,
                k: self.k,
            });
        }
        Ok(())
    }

    /// Adds one copy of `u --label--> v`, returning the new multiplicity.
    pub fn add_edge(&mut self, u: NodeId, v: NodeId, label: Label) -> Result<u32> {
        self.check_edge(u, v, label)?;
        let c = self.count.entry((u, v, label)).or_insert(0);
        *c += 1;
        Ok(*c)
    }

    /// Removes one copy of `u --label--> v`, returning the remaining multiplicity.
    pub fn remove_edge(&mut self, u: NodeId, v: NodeId, label: Label) -> Result<u32> {
        self.check_edge(u, v, label)?;
        match self.count.get_mut(&(u, v, label)) {
            None => Err(Error::AbsentEdge {
                u: u as u32,
                v: v as u32,
                label: label as u32,
            }),
            Some(c) if *c == 1 => {
                self.count.remove(&(u, v, label));
                Ok(0)
            }
            Some(c) => {
                *c -= 1;
                Ok(*c)
            }
        }
    }

    pub fn count(&self, u: NodeId, v: NodeId, label: Label) -> u32 {
        self.count.get(&(u, v, label)).copied().unwrap_or(0)
    }

    /// Distinct edges with their multiplicities, sorted by `(u, v, label)`.
    pub fn edges(&self) -> impl Iterator<Item = (Edge, u32)> + '_ {
        self.count.iter().map(|(&e, &c)| (e, c))
    }

    /// Every edge copy, sorted, repeated by multiplicity.
    pub fn edge_copies(&self) -> impl Iterator<Item = Edge> + '_ {
        self.count
            .iter()
            .flat_map(|(&e, &c)| std::iter::repeat_n(e, c as usize))
    }

    pub fn distinct_edge_count(&self) -> usize {
        self.count.len()
    }

    /// Total number of edge copies.
    pub fn edge_count(&self) -> usize {
        self.count.values().map(|&c| c as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.count.is_empty()
    }
}

/// One element of an update sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum UpdateOp {
    Insert { u: NodeId, v: NodeId, label: Label },
    Delete { u: NodeId, v: NodeId, label: Label },
    QuerySame { u: NodeId, v: NodeId },
    QueryRepr { u: NodeId },
}

impl UpdateOp {
    pub fn is_update(&self) -> bool {
        matches!(self, UpdateOp::Insert { .. } | UpdateOp::Delete { .. })
    }

    pub fn is_query(&self) -> bool {
        !self.is_update()
    }

    /// Checks node and label ranges against a graph of `n` nodes and `k` labels.
    pub fn check(&self, n: usize, k: usize) -> Result<()> {
        let (nodes, label) = match *self {
            UpdateOp::Insert { u, v, label } | UpdateOp::Delete { u, v, label } => {
                ([u, v], Some(label))
            }
            UpdateOp::QuerySame { u, v } => ([u, v], None),
            UpdateOp::QueryRepr { u } => ([u, u], None),
        };
        for node in nodes {
            if node >= n {
                return Err(Error::NodeOutOfRange {
                    node: node as u32,
                    n,
                });
            }
        }
        if let Some(label) = label {
            if label >= k {
                return Err(Error::LabelOutOfRange {
                    label: label as u32,
                    k,
                });
            }
        }
        Ok(())
    }
}

fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_fields<const N: usize>(line_no: usize, line: &str) -> Result<[usize; N]> {
    let mut out = [0usize; N];
    let mut fields = line.split_whitespace();
    for slot in out.iter_mut() {
        let f = fields
            .next()
            .ok_or_else(|| Error::parse(line_no, format!("expected {N} fields")))?;
        *slot = f
            .parse()
            .map_err(|_| Error::parse(line_no, format!("not a non-negative integer: {f:?}")))?;
    }
    if fields.next().is_some() {
        return Err(Error::parse(line_no, format!("expected {N} fields")));
    }
    Ok(out)
}

pub fn parse_graph(text: &str) -> Result<DyckGraph> {
    let mut lines = data_lines(text);
    let (line_no, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "missing \"n k\" header"))?;
    let [n, k] = parse_fields::<2>(line_no, header)?;
    if n == 0 || k == 0 {
        return Err(Error::parse(line_no, "n and k must be positive"));
    }
    let mut g = DyckGraph::new(n, k);
    for (line_no, line) in lines {
        let [u, v, label] = parse_fields::<3>(line_no, line)?;
        g.add_edge(u, v, label)
            .map_err(|e| Error::parse(line_no, e.to_string()))?;
    }
    Ok(g)
}

pub fn serialize_graph(g: &DyckGraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", g.n, g.k);
    for (u, v, label) in g.edge_copies() {
        let _ = writeln!(out, "{u} {v} {label}");
    }
    out
}

pub fn parse_ops(text: &str) -> Result<Vec<UpdateOp>> {
    let mut ops = Vec::new();
    for (line_no, line) in data_lines(text) {
        let (code, rest) = line.split_at(line.find(char::is_whitespace).unwrap_or(line.len()));
        let op = match code {
            "i" => {
                let [u, v, label] = parse_fields::<3>(line_no, rest)?;
                UpdateOp::Insert { u, v, label }
            }
            "d" => {
                let [u, v, label] = parse_fields::<3>(line_no, rest)?;
                UpdateOp::Delete { u, v, label }
            }
            "q" => {
                let [u, v] = parse_fields::<2>(line_no, rest)?;
                UpdateOp::QuerySame { u, v }
            }
            "r" => {
                let [u] = parse_fields::<1>(line_no, rest)?;
                UpdateOp::QueryRepr { u }
            }
            other => return Err(Error::parse(line_no, format!("unknown opcode {other:?}"))),
        };
        ops.push(op);
    }
    Ok(ops)
}

pub fn serialize_ops(ops: &[UpdateOp]) -> String {
    let mut out = String::new();
    for op in ops {
        let _ = match *op {
            UpdateOp::Insert { u, v, label } => writeln!(out, "i {u} {v} {label}"),
            UpdateOp::Delete { u, v, label } => writeln!(out, "d {u} {v} {label}"),
            UpdateOp::QuerySame { u, v } => writeln!(out, "q {u} {v}"),
            UpdateOp::QueryRepr { u } => writeln!(out, "r {u}"),
        };
    }
    out
}
