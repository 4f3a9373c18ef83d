// SPDX-License-Identifier: MIT
//! Crate-wide error type.

use crate::graph::GraphKind;

/// Errors produced by parsing, validation, and the query operations.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// The graph file is syntactically malformed.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// The edge set violates a structural invariant of the declared kind
    /// (e.g. a directed cycle in a DAG, an almost directed cycle in a MAG).
    #[error("invalid {kind} graph: {msg}")]
    InvalidGraph { kind: GraphKind, msg: String },

    /// A vertex label was not found in the graph.
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    /// An operation precondition was violated (overlapping sets, empty
    /// required set, identical endpoints, and the like).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The operation is not defined for this graph kind.
    #[error("operation `{op}` does not support {kind} inputs")]
    KindNotSupported { op: &'static str, kind: GraphKind },

    /// The circle component of a CPDAG/PAG is not chordal, so no
    /// representative orientation exists; the input cannot be the completed
    /// graph of an equivalence class.
    #[error("circle component is not chordal: {0}")]
    NotChordal(String),

    /// The request exceeds a documented brute-force bound or asks for an
    /// unimplemented generator.
    #[error("{0}")]
    Unsupported(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
