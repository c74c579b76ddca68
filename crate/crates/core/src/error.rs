// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

/// Errors surfaced by parsing and by the dynamic engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("deleting absent edge ({u}, {v}, label {label})")]
    AbsentEdge { u: u32, v: u32, label: u32 },

    #[error("node {node} out of range (n = {n})")]
    NodeOutOfRange { node: u32, n: usize },

    #[error("label {label} out of range (k = {k})")]
    LabelOutOfRange { label: u32, k: usize },

    #[error("graph too large for this oracle: n = {n}, limit {limit}")]
    OracleLimit { n: usize, limit: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
