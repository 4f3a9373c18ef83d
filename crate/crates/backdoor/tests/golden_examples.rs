// SPDX-License-Identifier: MIT

//! End-to-end checks of the worked examples that ship as fixture files.
//! Every expected value here was derived by hand on the fixture graphs and
//! is exact; no tolerance is involved.

use backdoor::criterion::{check_generalized_backdoor, check_pearl_backdoor, FailedCondition};
use backdoor::graph::{descendants, format_path, parse_graph, possible_descendants};
use backdoor::search::{
    construct_representative, find_backdoor_set, find_backdoor_set_cpdag, find_backdoor_set_mag,
    find_backdoor_set_with, minimal_backdoor_sets,
};
use backdoor::separation::{is_m_connecting, BlockReason};
use backdoor::visibility::{is_visible, visibility_witness};
use backdoor::MixedGraph;

fn fixture(name: &str) -> MixedGraph {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/");
    parse_graph(&std::fs::read_to_string(format!("{path}{name}")).unwrap()).unwrap()
}

fn idx(g: &MixedGraph, l: &str) -> usize {
    g.index(l).unwrap()
}

fn ids(g: &MixedGraph, ls: &[&str]) -> Vec<usize> {
    ls.iter().map(|l| idx(g, l)).collect()
}

fn labels(g: &MixedGraph, vs: &[usize]) -> Vec<String> {
    vs.iter().map(|&v| g.label(v).to_string()).collect()
}

/// Every subset of `pool`, in no particular order.
fn subsets(pool: &[usize]) -> Vec<Vec<usize>> {
    (0..1u32 << pool.len())
        .map(|mask| (0..pool.len()).filter(|i| mask >> i & 1 == 1).map(|i| pool[i]).collect())
        .collect()
}

#[test]
fn chain_multi_intervention_needs_no_covariates_but_defeats_the_classic_criterion() {
    // X1 --> X2 --> X3 --> X4 with X3 --> Y. The empty set satisfies the
    // generalized criterion for the joint intervention {X1, X3, X4}: the
    // only back-door paths out of an intervened vertex run through other
    // intervened vertices, which the per-vertex blocking set provides.
    let g = fixture("multi_intervention_chain.dag");
    let xs = ids(&g, &["X1", "X3", "X4"]);
    let y = idx(&g, "Y");
    let report = check_generalized_backdoor(&g, &xs, &[y], &[]).unwrap();
    assert!(report.verdict, "empty set should work: {report:?}");

    // The classic per-vertex criterion demands that W alone block every
    // path into each intervened vertex; X2 can never be included (it is a
    // descendant of X1), so no W whatsoever passes.
    let pool: Vec<usize> = (0..g.n()).filter(|v| !xs.contains(v) && *v != y).collect();
    for w in subsets(&pool) {
        let report = check_pearl_backdoor(&g, &xs, &[y], &w).unwrap();
        assert!(!report.verdict, "W = {:?} unexpectedly passed", labels(&g, &w));
    }
}

#[test]
fn sequential_treatments_admit_no_generalized_backdoor_set() {
    // X1 --> Z --> X2 --> Y with Z --> Y: Z confounds X2 but mediates X1,
    // so it can neither be left out of W nor put in.
    let g = fixture("two_stage_treatment.dag");
    let xs = ids(&g, &["X1", "X2"]);
    let y = idx(&g, "Y");
    let pool: Vec<usize> = (0..g.n()).filter(|v| !xs.contains(v) && *v != y).collect();
    for w in subsets(&pool) {
        let report = check_generalized_backdoor(&g, &xs, &[y], &w).unwrap();
        assert!(!report.verdict, "W = {:?} unexpectedly passed", labels(&g, &w));
    }
    // The two failure shapes: ∅ leaves the back-door path X2 <-- Z --> Y
    // open, {Z} conditions on a possible descendant of X1.
    let empty = check_generalized_backdoor(&g, &xs, &[y], &[]).unwrap();
    assert_eq!(empty.failed_condition, Some(FailedCondition::BII));
    let with_z = check_generalized_backdoor(&g, &xs, &[y], &[idx(&g, "Z")]).unwrap();
    assert_eq!(with_z.failed_condition, Some(FailedCondition::BI));
}

#[test]
fn three_member_class_has_no_set_because_d_sep_meets_possible_descendants() {
    let g = fixture("three_member_class.cpdag");
    let (x, y) = (idx(&g, "X"), idx(&g, "Y"));
    let search = find_backdoor_set(&g, x, y).unwrap();
    assert_eq!(search.set, None);
    assert_eq!(labels(&g, &search.d_sep), ["V1", "V2", "V3"]);
    assert_eq!(labels(&g, &search.possible_de), ["V2", "Y"]);
    assert_eq!(labels(&g, &search.intersection), ["V2"]);
    assert!(!search.y_adjacent_in_lower);
    // The single-kind route agrees: Y stays a possible descendant of X
    // after the directed edges out of X (there are none) are removed.
    assert_eq!(find_backdoor_set_cpdag(&g, x, y).unwrap(), None);
}

#[test]
fn two_member_class_is_adjusted_by_the_parents_of_the_treatment() {
    let g = fixture("two_member_class.cpdag");
    let (x, y) = (idx(&g, "X"), idx(&g, "Y"));
    let search = find_backdoor_set(&g, x, y).unwrap();
    assert_eq!(labels(&g, &search.d_sep), ["V1", "V3"]);
    assert_eq!(labels(&g, &search.set.as_ref().unwrap().clone()), ["V1", "V3"]);
    assert!(!search.y_adjacent_in_lower);
    assert!(search.intersection.is_empty());
    let pa = find_backdoor_set_cpdag(&g, x, y).unwrap().unwrap();
    assert_eq!(labels(&g, &pa), ["V1", "V3"]);
    // And the returned set verifies against the criterion definition.
    assert!(check_generalized_backdoor(&g, &[x], &[y], &pa).unwrap().verdict);
}

#[test]
fn latent_confounding_mag_blocking_dilemma() {
    // Both back-door paths cannot be blocked at once: closing
    // X <-> V2 --> V4 <-- Y at V2 opens the collider V2 on
    // X <-> V2 <-> V3 --> V5 --> Y, whose other interiors are descendants
    // of X and therefore barred from W.
    let g = fixture("latent_confounding.mag");
    let (x, y) = (idx(&g, "X"), idx(&g, "Y"));
    let v2 = idx(&g, "V2");

    let short = ids(&g, &["X", "V2", "V4", "Y"]);
    let verdict = is_m_connecting(&g, &short, &[v2]).unwrap();
    assert!(verdict.blocked);
    assert_eq!(verdict.reason, BlockReason::DefiniteNoncolliderInZ(v2));

    let long = ids(&g, &["X", "V2", "V3", "V5", "Y"]);
    let verdict = is_m_connecting(&g, &long, &[v2]).unwrap();
    assert!(!verdict.blocked, "conditioning on the collider V2 opens this path");

    let search = find_backdoor_set(&g, x, y).unwrap();
    assert_eq!(search.set, None);
    assert_eq!(labels(&g, &search.d_sep), ["V1", "V2", "V3"]);
    let mut de = descendants(&g, &[x]);
    de.retain(|&v| v != x);
    assert_eq!(labels(&g, &de), ["V3", "V5", "Y"]);
    assert_eq!(labels(&g, &search.intersection), ["V3"]);
    assert_eq!(find_backdoor_set_mag(&g, x, y).unwrap(), None);

    // No subset passes the criterion either, confirming the dilemma
    // exhaustively.
    let pool: Vec<usize> = (0..g.n()).filter(|&v| v != x && v != y).collect();
    for w in subsets(&pool) {
        assert!(!check_generalized_backdoor(&g, &[x], &[y], &w).unwrap().verdict);
    }
}

#[test]
fn invisible_single_edge_keeps_the_outcome_adjacent() {
    let g = fixture("invisible_edge.mag");
    let (x, y) = (idx(&g, "X"), idx(&g, "Y"));
    assert!(!is_visible(&g, x, y).unwrap());
    let search = find_backdoor_set(&g, x, y).unwrap();
    assert!(search.y_adjacent_in_lower);
    assert_eq!(search.set, None);
    assert_eq!(find_backdoor_set_mag(&g, x, y).unwrap(), None);
}

#[test]
fn visible_treatment_pag_yields_d_sep_and_the_empty_minimal_set() {
    let g = fixture("visible_treatment.pag");
    let (x, y) = (idx(&g, "X"), idx(&g, "Y"));

    // The edge X --> Y is visible: V1 (or V2) points at X without touching Y.
    assert!(is_visible(&g, x, y).unwrap());
    let witness = visibility_witness(&g, x, y).unwrap().unwrap();
    assert_eq!(witness.c, idx(&g, "V1"));
    assert_eq!(format_path(&g, &witness.path), "V1 o-> X");

    let search = find_backdoor_set(&g, x, y).unwrap();
    assert_eq!(labels(&g, &search.d_sep), ["V1", "V2"]);
    assert_eq!(labels(&g, &search.possible_de), ["V3", "V4", "Y"]);
    assert!(search.intersection.is_empty());
    assert_eq!(labels(&g, &search.set.clone().unwrap()), ["V1", "V2"]);

    // Every back-door path runs through the collider V4, so even the empty
    // set blocks them all; the D-SEP set is valid but not minimal.
    assert_eq!(minimal_backdoor_sets(&g, x, y).unwrap(), vec![Vec::<usize>::new()]);
    for w in subsets(&search.set.unwrap()) {
        assert!(check_generalized_backdoor(&g, &[x], &[y], &w).unwrap().verdict);
    }
}

#[test]
fn visible_treatment_member_mag_treated_directly_gives_the_same_set() {
    let g = fixture("visible_treatment_representative.mag");
    let (x, y) = (idx(&g, "X"), idx(&g, "Y"));
    let found = find_backdoor_set_mag(&g, x, y).unwrap().unwrap();
    assert_eq!(labels(&g, &found), ["V1", "V2"]);
}

#[test]
fn deterministic_representative_reproduces_the_published_member() {
    let g = fixture("visible_treatment.pag");
    let expected = fixture("visible_treatment_representative.mag");
    let rep = construct_representative(&g, idx(&g, "X")).unwrap();
    assert_eq!(rep.r, expected);
    // Lower-manipulated graph: only the visible X --> Y edge is removed.
    assert!(!rep.r_lower.adjacent(idx(&g, "X"), idx(&g, "Y")));
    assert!(rep.r_lower.adjacent(idx(&g, "X"), idx(&g, "V3")));
}

#[test]
fn extra_edge_into_the_treatment_spoils_the_candidate_set() {
    // Negative control: flipping X --> V3 to V3 --> X adds an edge into X.
    // The search over that graph pulls V3 into D-SEP, where it collides
    // with the possible descendants of X — no set is (wrongly) found, and
    // the computed quantities show exactly why the edge-count side
    // condition on representatives cannot be dropped.
    let g = fixture("visible_treatment.pag");
    let wrong = fixture("non_representative.mag");
    let (x, y) = (idx(&g, "X"), idx(&g, "Y"));
    let search = find_backdoor_set_with(&g, &wrong, x, y).unwrap();
    assert_eq!(labels(&g, &search.d_sep), ["V1", "V2", "V3"]);
    assert_eq!(labels(&g, &search.intersection), ["V3"]);
    assert_eq!(search.set, None);

    // Yet a set does exist (the proper search finds {V1, V2}), so the
    // wrong representative really does reach the wrong conclusion.
    assert!(find_backdoor_set(&g, x, y).unwrap().set.is_some());
}

#[test]
fn possible_descendants_on_the_figures_match_the_hand_derivations() {
    let g = fixture("three_member_class.cpdag");
    let mut pd = possible_descendants(&g, &[idx(&g, "X")]);
    pd.retain(|&v| v != idx(&g, "X"));
    assert_eq!(labels(&g, &pd), ["V2", "Y"]);

    let g = fixture("visible_treatment.pag");
    let mut pd = possible_descendants(&g, &[idx(&g, "X")]);
    pd.retain(|&v| v != idx(&g, "X"));
    assert_eq!(labels(&g, &pd), ["V3", "V4", "Y"]);
}
