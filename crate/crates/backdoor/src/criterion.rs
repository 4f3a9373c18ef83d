// SPDX-License-Identifier: MIT
//! The generalized back-door criterion for vertex sets, its classical
//! special case, and the graphical invariance conditions.
//!
//! For pairwise disjoint sets `X`, `Y`, `W`, the set `W` satisfies the
//! generalized back-door criterion relative to `(X, Y)` when
//!
//! * (B-i) `W` contains no possible descendant of `X`, and
//! * (B-ii) for every `x ∈ X`, every definite status back-door path from
//!   `x` to any `y ∈ Y` is blocked by `(W ∪ X) ∖ {x}`.
//!
//! When it holds, adjusting for `W` identifies the effect of intervening
//! on `X` (see the `gaussian` module for an exact numeric validation).
//! The criterion is sufficient but not necessary.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{
    definite_status_paths, descendants, is_definite_status, possible_ancestors,
    possible_descendants, GraphKind, Mark, MixedGraph, Path,
};
use crate::separation::is_m_connecting;
use crate::visibility::{back_door_paths, is_visible};

/// Which condition a failed check violated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FailedCondition {
    /// `W` contains a possible descendant of `X`.
    BI,
    /// Some definite status back-door path is left unblocked.
    BII,
    /// `W` contains a descendant of some `x ∈ X` (classical form).
    PI,
    /// Some path into `x` is left unblocked by `W` alone (classical form).
    PII,
    /// An m-connecting path from a conditioned-on `x` is not a visible edge
    /// out of `x`.
    I1,
    /// An m-connecting path exists although `x` is a possible ancestor of
    /// the conditioning set.
    I2,
    /// An m-connecting path from an unconditioned non-ancestor `x` is not
    /// into `x`.
    I3,
}

impl fmt::Display for FailedCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FailedCondition::BI => "B-i",
            FailedCondition::BII => "B-ii",
            FailedCondition::PI => "P-i",
            FailedCondition::PII => "P-ii",
            FailedCondition::I1 => "I-1",
            FailedCondition::I2 => "I-2",
            FailedCondition::I3 => "I-3",
        };
        f.write_str(s)
    }
}

/// Evidence for a violation: the offending vertex (B-i/P-i) or the
/// offending path together with the `x` it starts from (all other
/// conditions).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CriterionWitness {
    Vertex(usize),
    PathFrom { source: usize, path: Path },
}

/// Outcome of a criterion check. `failed_condition` and `witness` are
/// present exactly when `verdict` is false; the witness always replays to a
/// genuine violation and is deterministic (first in vertex/path order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionReport {
    pub verdict: bool,
    pub failed_condition: Option<FailedCondition>,
    pub witness: Option<CriterionWitness>,
}

impl CriterionReport {
    fn holds() -> Self {
        CriterionReport { verdict: true, failed_condition: None, witness: None }
    }

    fn fails(condition: FailedCondition, witness: CriterionWitness) -> Self {
        CriterionReport {
            verdict: false,
            failed_condition: Some(condition),
            witness: Some(witness),
        }
    }
}

fn normalized(g: &MixedGraph, set: &[usize], name: &str) -> Result<Vec<usize>> {
    for &v in set {
        if v >= g.n() {
            return Err(Error::InvalidArgument(format!(
                "{name} contains vertex index {v}, out of range for {} vertices",
                g.n()
            )));
        }
    }
    let mut v = set.to_vec();
    v.sort_unstable();
    v.dedup();
    Ok(v)
}

fn require_disjoint(
    g: &MixedGraph,
    a: &[usize],
    b: &[usize],
    a_name: &str,
    b_name: &str,
) -> Result<()> {
    for v in a {
        if b.binary_search(v).is_ok() {
            return Err(Error::InvalidArgument(format!(
                "{a_name} and {b_name} overlap in `{}`",
                g.label(*v)
            )));
        }
    }
    Ok(())
}

/// Checks the generalized back-door criterion for `w` relative to `(x, y)`.
///
/// `x` and `y` must be nonempty and `x`, `y`, `w` pairwise disjoint.
/// Conditions are evaluated in order (B-i, then B-ii); the first violation
/// in vertex/path order is reported.
pub fn check_generalized_backdoor(
    g: &MixedGraph,
    x: &[usize],
    y: &[usize],
    w: &[usize],
) -> Result<CriterionReport> {
    let xs = normalized(g, x, "X")?;
    let ys = normalized(g, y, "Y")?;
    let ws = normalized(g, w, "W")?;
    if xs.is_empty() || ys.is_empty() {
        return Err(Error::InvalidArgument("X and Y must be nonempty".into()));
    }
    require_disjoint(g, &xs, &ys, "X", "Y")?;
    require_disjoint(g, &xs, &ws, "X", "W")?;
    require_disjoint(g, &ys, &ws, "Y", "W")?;

    // (B-i): W may not contain a possible descendant of X.
    let poss_de = possible_descendants(g, &xs);
    for &v in &ws {
        if poss_de.binary_search(&v).is_ok() {
            return Ok(CriterionReport::fails(FailedCondition::BI, CriterionWitness::Vertex(v)));
        }
    }

    // (B-ii): for each x, block all back-door paths to Y with (W ∪ X)∖{x}.
    for &xv in &xs {
        let mut blocker: Vec<usize> =
            ws.iter().chain(xs.iter()).copied().filter(|&v| v != xv).collect();
        blocker.sort_unstable();
        for &yv in &ys {
            for p in back_door_paths(g, xv, yv)? {
                let verdict = is_m_connecting(g, &p, &blocker)?;
                if !verdict.blocked {
                    return Ok(CriterionReport::fails(
                        FailedCondition::BII,
                        CriterionWitness::PathFrom { source: xv, path: p },
                    ));
                }
            }
        }
    }
    Ok(CriterionReport::holds())
}

/// Literal form of the first condition: no `w ∈ W` is reachable from `X`
/// by a path that is simultaneously possibly directed and of definite
/// status.
///
/// Deliberately independent of [`possible_descendants`] — it enumerates
/// qualifying simple paths outright — so the provable equivalence of the
/// two readings can be tested rather than assumed.
pub fn check_b_i_prime(g: &MixedGraph, x: &[usize], w: &[usize]) -> Result<bool> {
    let xs = normalized(g, x, "X")?;
    let ws = normalized(g, w, "W")?;
    require_disjoint(g, &xs, &ws, "X", "W")?;

    let mut in_w = vec![false; g.n()];
    for &v in &ws {
        in_w[v] = true;
    }
    for &xv in &xs {
        let mut on_path = vec![false; g.n()];
        on_path[xv] = true;
        let mut path = vec![xv];
        if reaches_w_definite_pd(g, &in_w, &mut path, &mut on_path) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn reaches_w_definite_pd(
    g: &MixedGraph,
    in_w: &[bool],
    path: &mut Path,
    on_path: &mut Vec<bool>,
) -> bool {
    let u = *path.last().unwrap();
    for v in 0..g.n() {
        // Extend only along edges that are not into their predecessor.
        if on_path[v] || !g.adjacent(u, v) || g.mark(v, u) == Some(Mark::Arrow) {
            continue;
        }
        if path.len() >= 2 && !is_definite_status(g, path[path.len() - 2], u, v) {
            continue;
        }
        if in_w[v] {
            return true;
        }
        path.push(v);
        on_path[v] = true;
        let hit = reaches_w_definite_pd(g, in_w, path, on_path);
        path.pop();
        on_path[v] = false;
        if hit {
            return true;
        }
    }
    false
}

/// Checks the classical back-door criterion on a DAG: for every pair
/// `(x, y) ∈ X × Y`, `W` contains no descendant of `x` (P-i) and blocks —
/// by itself — every path between `x` and `y` that is into `x` (P-ii).
///
/// Strictly stronger than the generalized criterion on DAGs with `|X| > 1`;
/// equivalent for singleton `X`.
pub fn check_pearl_backdoor(
    d: &MixedGraph,
    x: &[usize],
    y: &[usize],
    w: &[usize],
) -> Result<CriterionReport> {
    if d.kind() != GraphKind::Dag {
        return Err(Error::KindNotSupported { op: "check_pearl_backdoor", kind: d.kind() });
    }
    let xs = normalized(d, x, "X")?;
    let ys = normalized(d, y, "Y")?;
    let ws = normalized(d, w, "W")?;
    if xs.is_empty() || ys.is_empty() {
        return Err(Error::InvalidArgument("X and Y must be nonempty".into()));
    }
    require_disjoint(d, &xs, &ys, "X", "Y")?;
    require_disjoint(d, &xs, &ws, "X", "W")?;
    require_disjoint(d, &ys, &ws, "Y", "W")?;

    for &xv in &xs {
        // (P-i) for this x.
        let de = descendants(d, &[xv]);
        for &wv in &ws {
            if de.binary_search(&wv).is_ok() {
                return Ok(CriterionReport::fails(
                    FailedCondition::PI,
                    CriterionWitness::Vertex(wv),
                ));
            }
        }
        // (P-ii): W alone blocks every path into x.
        for &yv in &ys {
            for p in definite_status_paths(d, xv, yv) {
                if !d.is_directed(p[1], xv) {
                    continue; // not into x
                }
                if !is_m_connecting(d, &p, &ws)?.blocked {
                    return Ok(CriterionReport::fails(
                        FailedCondition::PII,
                        CriterionWitness::PathFrom { source: xv, path: p },
                    ));
                }
            }
        }
    }
    Ok(CriterionReport::holds())
}

/// Checks the graphical conditions under which the conditional density of
/// `Y` given `Z` is invariant to interventions on `X`.
///
/// `X` and `Z` may overlap; `Y` must be disjoint from both. Each `x ∈ X`
/// must satisfy the clause of its case:
///
/// 1. `x ∈ Z`: every m-connecting definite status path from `x` to `Y`
///    given `Z ∖ {x}` is a visible directed edge out of `x`.
/// 2. `x` a possible ancestor of `Z` but not in `Z`: no m-connecting
///    definite status path from `x` to `Y` given `Z`.
/// 3. every other `x`: every m-connecting definite status path from `x` to
///    `Y` given `Z` is into `x`.
///
/// An empty `X` or `Y` is vacuously invariant.
pub fn check_invariance_graphical(
    g: &MixedGraph,
    x: &[usize],
    y: &[usize],
    z: &[usize],
) -> Result<CriterionReport> {
    let xs = normalized(g, x, "X")?;
    let ys = normalized(g, y, "Y")?;
    let zs = normalized(g, z, "Z")?;
    require_disjoint(g, &xs, &ys, "X", "Y")?;
    require_disjoint(g, &ys, &zs, "Y", "Z")?;

    let poss_an_z = possible_ancestors(g, &zs);
    for &xv in &xs {
        let in_z = zs.binary_search(&xv).is_ok();
        let clause = if in_z {
            FailedCondition::I1
        } else if poss_an_z.binary_search(&xv).is_ok() {
            FailedCondition::I2
        } else {
            FailedCondition::I3
        };
        let cond: Vec<usize> = zs.iter().copied().filter(|&v| v != xv).collect();
        for &yv in &ys {
            for p in definite_status_paths(g, xv, yv) {
                if is_m_connecting(g, &p, &cond)?.blocked {
                    continue;
                }
                let ok = match clause {
                    // "Out of x with a visible edge" classifies the path by
                    // its first edge, exactly complementing back-door paths.
                    FailedCondition::I1 => g.is_directed(xv, p[1]) && is_visible(g, xv, p[1])?,
                    FailedCondition::I2 => false,
                    _ => g.mark(p[1], xv) == Some(Mark::Arrow),
                };
                if !ok {
                    return Ok(CriterionReport::fails(
                        clause,
                        CriterionWitness::PathFrom { source: xv, path: p },
                    ));
                }
            }
        }
    }
    Ok(CriterionReport::holds())
}
