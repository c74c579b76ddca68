// SPDX-License-Identifier: Apache-2.0

//! Fully dynamic Dyck reachability on bidirected graphs.
//!
//! A bidirected Dyck graph stores, for every closing edge `u -a-> v`, an
//! implicit opening edge `v -a-> u`. Two nodes are in the same DSCC iff a path
//! with a balanced parenthesis string joins them. [`Engine`] maintains that
//! partition under single-edge insertions and deletions; [`oracle`] holds
//! brute-force ground truth and [`workload`] builds update sequences.

pub mod cli;
pub mod conn;
pub mod dsu;
pub mod engine;
pub mod error;
pub mod graph;
pub mod oracle;
pub mod partition;
pub mod workload;

pub use engine::{offline_recompute, CounterSnapshot, Engine, OpOutcome, WorkCounters};
pub use error::{Error, Result};
pub use graph::{DyckGraph, Edge, Label, NodeId, UpdateOp};
pub use partition::Partition;
