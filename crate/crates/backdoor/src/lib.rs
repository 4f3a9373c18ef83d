// SPDX-License-Identifier: MIT
//! Covariate-adjustment reasoning on causal graphs.
//!
//! This crate decides, for DAGs, CPDAGs, MAGs and PAGs, whether a covariate
//! set `W` satisfies the generalized back-door criterion relative to
//! intervention vertices `X` and outcome vertices `Y`, whether *any* such set
//! exists for a pair `(X, Y)`, and constructs an explicit set when it does.
//! Brute-force oracles and an exact linear-Gaussian validator confirm the
//! graph theory numerically at desk scale.
//!
//! # Modules
//!
//! - [`graph`] — partial mixed graphs (three endpoint marks), parsing,
//!   canonical serialization, and reachability primitives such as
//!   [`graph::possible_descendants`].
//! - [`separation`] — m-connection over definite status paths,
//!   [`separation::m_separated`], and D-SEP sets.
//! - [`visibility`] — visible/invisible classification of directed edges and
//!   back-door path enumeration.
//! - [`criterion`] — the generalized back-door criterion for sets, Pearl's
//!   back-door criterion, and the graphical invariance conditions.
//! - [`search`] — existence test and explicit construction of a back-door
//!   set for a single pair `(X, Y)` via representative graphs.
//! - [`oracle`] — independent brute-force references used by the test suite:
//!   equivalence-class enumeration, exhaustive back-door search,
//!   moralization d-separation, and seeded random graph generation.
//! - [`gaussian`] — exact linear-Gaussian SEMs: implied covariance,
//!   interventional effects, and population regression adjustment.
//!
//! # Example
//!
//! ```
//! use backdoor::graph::parse_graph;
//! use backdoor::search::find_backdoor_set;
//!
//! let g = parse_graph("kind: DAG\nV1 --> X\nV1 --> Y\nX --> Y\n").unwrap();
//! let x = g.index("X").unwrap();
//! let y = g.index("Y").unwrap();
//! let found = find_backdoor_set(&g, x, y).unwrap();
//! assert_eq!(found.set, Some(vec![g.index("V1").unwrap()]));
//! ```

pub mod criterion;
mod error;
pub mod gaussian;
pub mod graph;
pub mod oracle;
pub mod search;
pub mod separation;
pub mod visibility;

pub use error::{Error, Result};
pub use graph::{Edge, GraphKind, Mark, MixedGraph, Path};
