// SPDX-License-Identifier: MIT
//! Visible and invisible directed edges, and back-door path enumeration.
//!
//! A directed edge `A -> B` in a MAG or PAG is *visible* when some vertex
//! `C` not adjacent to `B` either has an edge into `A`, or reaches `A` by a
//! collider path into `A` whose every non-endpoint vertex is a parent of
//! `B`. A visible edge certifies the absence of hidden confounding between
//! `A` and `B`; in DAGs and CPDAGs every directed edge is visible by
//! definition.
//!
//! A *back-door path* from `x` to `y` is a definite status path whose first
//! edge is not a visible directed edge out of `x` — the paths an adjustment
//! set has to block.

use crate::error::{Error, Result};
use crate::graph::{definite_status_paths, GraphKind, Mark, MixedGraph, Path};

/// Certificate that an edge `A -> B` is visible: a vertex `c` not adjacent
/// to `B`, plus the path from `c` to `A` that the definition demands
/// (either the single edge into `A`, or a collider path into `A` through
/// parents of `B`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VisibilityWitness {
    pub c: usize,
    pub path: Path,
}

fn require_directed(g: &MixedGraph, a: usize, b: usize) -> Result<()> {
    if a >= g.n() || b >= g.n() || !g.is_directed(a, b) {
        return Err(Error::InvalidArgument(format!(
            "visibility is defined for directed edges only, and `{} -> {}` is not one",
            g.labels().get(a).map(String::as_str).unwrap_or("?"),
            g.labels().get(b).map(String::as_str).unwrap_or("?"),
        )));
    }
    Ok(())
}

/// Searches for a [`VisibilityWitness`] for the directed edge `a -> b`.
///
/// The search is run on every kind (on DAGs/CPDAGs a witness is optional
/// extra diagnostics; the edge is visible regardless). Deterministic: the
/// direct-edge form is preferred, with the smallest `c`; otherwise the
/// first collider chain in breadth-first order.
pub fn visibility_witness(g: &MixedGraph, a: usize, b: usize) -> Result<Option<VisibilityWitness>> {
    require_directed(g, a, b)?;

    // Direct form: an edge c *-> a with c not adjacent to b. (c = b itself
    // is impossible: the only b–a edge is a -> b, which is not into a.)
    for c in 0..g.n() {
        if c != a && !g.adjacent(c, b) && g.mark(c, a) == Some(Mark::Arrow) {
            return Ok(Some(VisibilityWitness { c, path: vec![c, a] }));
        }
    }

    // Collider-path form: a chain a <-> d_k <-> … <-> d_1 with every d_i a
    // parent of b, plus an edge c *-> d_1 with c not adjacent to b. All
    // interior vertices are colliders, which forces bidirected edges along
    // the chain; BFS with parent pointers keeps the chain simple. Any c
    // with the required edge is automatically outside the chain, since
    // chain vertices are parents of b and hence adjacent to b.
    let mut via = vec![usize::MAX; g.n()];
    let mut queue = std::collections::VecDeque::from([a]);
    let mut seen = vec![false; g.n()];
    seen[a] = true;
    while let Some(v) = queue.pop_front() {
        for d in 0..g.n() {
            if seen[d] || !g.is_bidirected(v, d) || !g.is_directed(d, b) {
                continue;
            }
            seen[d] = true;
            via[d] = v;
            for c in 0..g.n() {
                if c != d && !g.adjacent(c, b) && g.mark(c, d) == Some(Mark::Arrow) {
                    let mut path = vec![c];
                    let mut at = d;
                    while at != usize::MAX {
                        path.push(at);
                        at = if at == a { usize::MAX } else { via[at] };
                    }
                    return Ok(Some(VisibilityWitness { c, path }));
                }
            }
            queue.push_back(d);
        }
    }
    Ok(None)
}

/// Whether the directed edge `a -> b` is visible.
///
/// `true` unconditionally for DAG and CPDAG inputs; for MAG and PAG inputs,
/// `true` iff a [`VisibilityWitness`] exists.
pub fn is_visible(g: &MixedGraph, a: usize, b: usize) -> Result<bool> {
    require_directed(g, a, b)?;
    match g.kind() {
        GraphKind::Dag | GraphKind::Cpdag => Ok(true),
        GraphKind::Mag | GraphKind::Pag => Ok(visibility_witness(g, a, b)?.map_or(false, |_| true)),
    }
}

/// All definite status paths from `x` to `y` whose first edge is not a
/// visible directed edge out of `x`, in lexicographic order.
///
/// An invisible directed edge `x -> y` itself qualifies as (the start of) a
/// back-door path. Visibility of each first edge is judged once per
/// neighbor of `x`.
pub fn back_door_paths(g: &MixedGraph, x: usize, y: usize) -> Result<Vec<Path>> {
    if x >= g.n() || y >= g.n() {
        return Err(Error::InvalidArgument("unknown vertex index".into()));
    }
    if x == y {
        return Err(Error::InvalidArgument("back-door paths need distinct endpoints".into()));
    }
    let mut keep_first: Vec<Option<bool>> = vec![None; g.n()];
    let mut out = Vec::new();
    for p in definite_status_paths(g, x, y) {
        let first = p[1];
        let keep = match keep_first[first] {
            Some(k) => k,
            None => {
                let k = !(g.is_directed(x, first) && is_visible(g, x, first)?);
                keep_first[first] = Some(k);
                k
            }
        };
        if keep {
            out.push(p);
        }
    }
    Ok(out)
}
