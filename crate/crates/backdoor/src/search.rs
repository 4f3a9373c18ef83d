// SPDX-License-Identifier: MIT

//! Existence testing and explicit construction of generalized back-door sets
//! for a single treatment/outcome pair.
//!
//! The search reduces every input kind to one concrete *representative*: a
//! DAG (for DAG and CPDAG inputs) or a MAG (for MAG and PAG inputs) with the
//! same skeleton as the input and exactly as many edges into the treatment
//! vertex `X` as the input has. Deleting from the representative every
//! directed edge out of `X` that is visible in the input yields the
//! *lower-manipulated* graph, and a generalized back-door set relative to
//! `(X, Y)` exists if and only if `Y` is not adjacent to `X` there and
//! `D-SEP(X, Y, ·)` of that graph avoids the possible descendants of `X`.
//! When the test passes, that `D-SEP` set itself is a valid set.

use crate::criterion::check_generalized_backdoor;
use crate::graph::{descendants, possible_descendants, MixedGraph};
use crate::separation::d_sep_set;
use crate::visibility::is_visible;
use crate::{Error, GraphKind, Mark, Result};

/// A representative of an input graph `G`, oriented for the back-door search.
///
/// Invariants, maintained by [`construct_representative`]:
///
/// * `r` has kind DAG (for DAG/CPDAG inputs) or MAG (for MAG/PAG inputs), the
///   same skeleton as `G`, and exactly as many edges into `target_vertex` as
///   `G` has.
/// * `r_lower` is `r` minus every directed edge out of `target_vertex` that
///   is visible in `G` (visibility is judged in `G`, not in `r`); it is
///   acyclic/ancestral like `r`.
///
/// [`representative_from`] accepts a caller-supplied `r` and deliberately
/// does *not* enforce the edge-count invariant, so the effect of a
/// representative with extra edges into the treatment can be studied.
#[derive(Clone, Debug)]
pub struct RepresentativeGraph {
    pub r: MixedGraph,
    pub r_lower: MixedGraph,
    pub source_kind: GraphKind,
    pub target_vertex: usize,
}

/// Number of arrowheads pointing at `v`.
fn edges_into(g: &MixedGraph, v: usize) -> usize {
    (0..g.n()).filter(|&u| g.mark(u, v) == Some(Mark::Arrow)).count()
}

fn check_vertex(g: &MixedGraph, v: usize, name: &str) -> Result<()> {
    if v >= g.n() {
        return Err(Error::InvalidArgument(format!(
            "{name} index {v} out of range for {} vertices",
            g.n()
        )));
    }
    Ok(())
}

/// Builds the deterministic representative of `g` for treatment `x`.
///
/// DAGs and MAGs are their own representative. For CPDAGs and PAGs the
/// orientation proceeds in two steps: every `∘→` edge becomes `→`, and the
/// circle-circle subgraph is oriented along a perfect elimination ordering
/// that keeps `x` for last, so no new edge into `x` is created and — on
/// genuine completed graphs — no cycle and no new unshielded collider
/// appears. The circle subgraph of a genuine completed graph is chordal;
/// non-chordal input is rejected as invalid.
pub fn construct_representative(g: &MixedGraph, x: usize) -> Result<RepresentativeGraph> {
    check_vertex(g, x, "treatment")?;
    let r = match g.kind() {
        GraphKind::Dag | GraphKind::Mag => g.clone(),
        GraphKind::Cpdag | GraphKind::Pag => orient_representative(g, x)?,
    };
    debug_assert_eq!(
        edges_into(&r, x),
        edges_into(g, x),
        "internal error: representative changed the number of edges into `{}`",
        g.label(x)
    );
    let r_lower = remove_visible_out_edges(g, &r, x)?;
    Ok(RepresentativeGraph { r, r_lower, source_kind: g.kind(), target_vertex: x })
}

/// Wraps a caller-supplied representative `r` of `g`, validating kind and
/// skeleton compatibility and deriving the lower-manipulated graph.
///
/// The number of edges into `x` is *not* checked, unlike in
/// [`construct_representative`]; passing an `r` with extra edges into `x`
/// reproduces how the search breaks down on such graphs.
pub fn representative_from(
    g: &MixedGraph,
    r: &MixedGraph,
    x: usize,
) -> Result<RepresentativeGraph> {
    check_vertex(g, x, "treatment")?;
    let expected = match g.kind() {
        GraphKind::Dag | GraphKind::Cpdag => GraphKind::Dag,
        GraphKind::Mag | GraphKind::Pag => GraphKind::Mag,
    };
    if r.kind() != expected {
        return Err(Error::InvalidArgument(format!(
            "representative of a {} must be a {}, got {}",
            g.kind(),
            expected,
            r.kind()
        )));
    }
    if r.labels() != g.labels() {
        return Err(Error::InvalidArgument(
            "representative must have the same vertices as the input graph".into(),
        ));
    }
    for u in 0..g.n() {
        for v in (u + 1)..g.n() {
            if g.adjacent(u, v) != r.adjacent(u, v) {
                return Err(Error::InvalidArgument(format!(
                    "representative must have the same skeleton as the input graph; \
                     they differ on the pair {{{}, {}}}",
                    g.label(u),
                    g.label(v)
                )));
            }
        }
    }
    let r_lower = remove_visible_out_edges(g, r, x)?;
    Ok(RepresentativeGraph { r: r.clone(), r_lower, source_kind: g.kind(), target_vertex: x })
}

/// `r` minus every edge that is directed out of `x` and visible in `g`.
/// Every directed edge of a DAG or CPDAG is visible, so for those kinds this
/// deletes all directed edges out of `x`.
fn remove_visible_out_edges(g: &MixedGraph, r: &MixedGraph, x: usize) -> Result<MixedGraph> {
    let mut lower = r.clone();
    for c in 0..g.n() {
        if g.is_directed(x, c) && is_visible(g, x, c)? {
            lower = lower.without_edge(x, c)?;
        }
    }
    Ok(lower)
}

/// Orients a CPDAG into a member DAG (or a PAG into a member MAG) with no
/// new edge into `x`: `∘→` edges become `→`, then circle-circle edges are
/// oriented into each vertex of a perfect elimination ordering of the circle
/// subgraph that never eliminates `x`.
fn orient_representative(g: &MixedGraph, x: usize) -> Result<MixedGraph> {
    let n = g.n();
    let mut marks: Vec<Vec<Option<Mark>>> =
        (0..n).map(|u| (0..n).map(|v| g.mark(u, v)).collect()).collect();

    // Step 1: replace every u ∘→ v by u → v.
    for u in 0..n {
        for v in 0..n {
            if marks[u][v] == Some(Mark::Arrow) && marks[v][u] == Some(Mark::Circle) {
                marks[v][u] = Some(Mark::Tail);
            }
        }
    }

    // Step 2: collect the circle-circle subgraph and orient it.
    let mut circle: Vec<Vec<usize>> = vec![Vec::new(); n];
    for u in 0..n {
        for v in (u + 1)..n {
            if marks[u][v] == Some(Mark::Circle) && marks[v][u] == Some(Mark::Circle) {
                circle[u].push(v);
                circle[v].push(u);
            }
        }
    }
    check_circle_chordal(g, &circle)?;

    let is_clique = |circle: &[Vec<usize>], members: &[usize]| {
        members
            .iter()
            .enumerate()
            .all(|(i, &a)| members[i + 1..].iter().all(|b| circle[a].contains(b)))
    };
    while circle.iter().any(|nb| !nb.is_empty()) {
        // A vertex whose remaining circle neighbourhood is a clique can be
        // eliminated; one other than `x` always exists because every circle
        // component is chordal (just verified) and stays chordal as
        // simplicial vertices are removed.
        let v = (0..n)
            .find(|&v| v != x && !circle[v].is_empty() && is_clique(&circle, &circle[v]))
            .expect("internal error: chordal circle subgraph lost all simplicial vertices");
        for &u in &circle[v] {
            marks[u][v] = Some(Mark::Arrow);
            marks[v][u] = Some(Mark::Tail);
        }
        let gone = std::mem::take(&mut circle[v]);
        for u in gone {
            circle[u].retain(|&w| w != v);
        }
    }

    let kind = if g.kind() == GraphKind::Cpdag { GraphKind::Dag } else { GraphKind::Mag };
    MixedGraph::from_marks(kind, g.labels().to_vec(), marks)
}

/// Verifies that the circle-circle subgraph is chordal, via
/// maximum-cardinality search (smallest label on ties) followed by the
/// standard perfect-elimination check of the resulting order.
fn check_circle_chordal(g: &MixedGraph, circle: &[Vec<usize>]) -> Result<()> {
    let n = circle.len();
    let verts: Vec<usize> = (0..n).filter(|&v| !circle[v].is_empty()).collect();
    let mut picked = vec![false; n];
    let mut weight = vec![0usize; n];
    let mut pos = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(verts.len());
    for _ in 0..verts.len() {
        let mut best = usize::MAX;
        for &v in &verts {
            if !picked[v] && (best == usize::MAX || weight[v] > weight[best]) {
                best = v;
            }
        }
        picked[best] = true;
        pos[best] = order.len();
        order.push(best);
        for &u in &circle[best] {
            weight[u] += 1;
        }
    }
    // The reverse of a maximum-cardinality order is a perfect elimination
    // ordering exactly when, for each vertex, its earlier-picked neighbours
    // minus the latest-picked one are all neighbours of that latest one.
    for &v in &order {
        let earlier: Vec<usize> = circle[v].iter().copied().filter(|&u| pos[u] < pos[v]).collect();
        if let Some(&p) = earlier.iter().max_by_key(|&&u| pos[u]) {
            for &u in &earlier {
                if u != p && !circle[p].contains(&u) {
                    return Err(Error::NotChordal(format!(
                        "circle edges around `{}`, `{}` and `{}` form a chordless cycle; \
                         the graph is not a completed {}",
                        g.label(u),
                        g.label(p),
                        g.label(v),
                        g.kind()
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Outcome of [`find_backdoor_set`]: the constructed set when one exists,
/// plus the quantities that explain a negative verdict.
#[derive(Clone, Debug)]
pub struct BackdoorSearch {
    pub representative: RepresentativeGraph,
    /// `D-SEP(X, Y, r_lower)`, sorted.
    pub d_sep: Vec<usize>,
    /// Possible descendants of `X` in the input graph, sorted. `X` itself is
    /// omitted: it is trivially its own possible descendant and can never
    /// appear in `d_sep`, so listing it would only add noise.
    pub possible_de: Vec<usize>,
    /// `d_sep ∩ possible_de`; nonempty exactly when that condition fails.
    pub intersection: Vec<usize>,
    /// Whether `Y` remained adjacent to `X` in `r_lower`; true exactly when
    /// the adjacency condition fails.
    pub y_adjacent_in_lower: bool,
    /// The generalized back-door set — `d_sep` — when both conditions hold.
    pub set: Option<Vec<usize>>,
}

/// Decides whether a generalized back-door set relative to `(x, y)` exists
/// and constructs one if so, together with diagnostics.
///
/// The verdict is exact for every kind: a set exists if and only if `y` is
/// not adjacent to `x` in the lower-manipulated representative and
/// `D-SEP(x, y, ·)` of that graph contains no possible descendant of `x`.
/// On DAG, CPDAG and MAG inputs the specialized single-kind tests
/// ([`find_backdoor_set_dag`] and friends) are run as well and their
/// existence verdict is asserted to agree; with a returned set, its passing
/// [`check_generalized_backdoor`] is likewise asserted. Both assertions are
/// unconditional internal soundness checks.
pub fn find_backdoor_set(g: &MixedGraph, x: usize, y: usize) -> Result<BackdoorSearch> {
    check_vertex(g, y, "outcome")?;
    let representative = construct_representative(g, x)?;
    let search = search_with(g, representative, y)?;
    let corollary_exists = match g.kind() {
        GraphKind::Dag => Some(find_backdoor_set_dag(g, x, y)?.is_some()),
        GraphKind::Cpdag => Some(find_backdoor_set_cpdag(g, x, y)?.is_some()),
        GraphKind::Mag => Some(find_backdoor_set_mag(g, x, y)?.is_some()),
        GraphKind::Pag => None,
    };
    if let Some(exists) = corollary_exists {
        assert_eq!(
            exists,
            search.set.is_some(),
            "internal error: the single-kind existence test disagrees with the \
             representative search on this {}",
            g.kind()
        );
    }
    Ok(search)
}

/// [`find_backdoor_set`] with a caller-supplied representative (validated by
/// [`representative_from`]). No single-kind cross-check is run: a
/// representative with extra edges into `x` may legitimately change the
/// verdict, which is precisely what this entry point lets callers observe.
pub fn find_backdoor_set_with(
    g: &MixedGraph,
    r: &MixedGraph,
    x: usize,
    y: usize,
) -> Result<BackdoorSearch> {
    check_vertex(g, y, "outcome")?;
    let representative = representative_from(g, r, x)?;
    search_with(g, representative, y)
}

fn search_with(
    g: &MixedGraph,
    representative: RepresentativeGraph,
    y: usize,
) -> Result<BackdoorSearch> {
    let x = representative.target_vertex;
    if x == y {
        return Err(Error::InvalidArgument("treatment and outcome must be distinct".into()));
    }
    let d_sep = d_sep_set(&representative.r_lower, x, y)?;
    let mut possible_de = possible_descendants(g, &[x]);
    possible_de.retain(|&v| v != x);
    let intersection: Vec<usize> =
        d_sep.iter().copied().filter(|v| possible_de.binary_search(v).is_ok()).collect();
    let y_adjacent_in_lower = representative.r_lower.adjacent(x, y);
    let set =
        if y_adjacent_in_lower || !intersection.is_empty() { None } else { Some(d_sep.clone()) };
    if let Some(w) = &set {
        assert!(
            w.binary_search(&y).is_err(),
            "internal error: candidate set contains the outcome vertex"
        );
        let report = check_generalized_backdoor(g, &[x], &[y], w)?;
        assert!(
            report.verdict,
            "internal error: constructed set fails the criterion it was built to satisfy"
        );
    }
    Ok(BackdoorSearch {
        representative,
        d_sep,
        possible_de,
        intersection,
        y_adjacent_in_lower,
        set,
    })
}

/// DAG-only back-door set construction: `pa(x)` works unless `y` is a parent
/// of `x`, and nothing works in that case.
pub fn find_backdoor_set_dag(d: &MixedGraph, x: usize, y: usize) -> Result<Option<Vec<usize>>> {
    if d.kind() != GraphKind::Dag {
        return Err(Error::KindNotSupported { op: "find_backdoor_set_dag", kind: d.kind() });
    }
    check_vertex(d, x, "treatment")?;
    check_vertex(d, y, "outcome")?;
    let pa = d.parents(x);
    Ok(if pa.contains(&y) { None } else { Some(pa) })
}

/// CPDAG-only back-door set construction: `pa(x)` works unless `y` is a
/// parent of `x` or `y` stays a possible descendant of `x` after all
/// directed edges out of `x` are deleted.
pub fn find_backdoor_set_cpdag(c: &MixedGraph, x: usize, y: usize) -> Result<Option<Vec<usize>>> {
    if c.kind() != GraphKind::Cpdag {
        return Err(Error::KindNotSupported { op: "find_backdoor_set_cpdag", kind: c.kind() });
    }
    check_vertex(c, x, "treatment")?;
    check_vertex(c, y, "outcome")?;
    let pa = c.parents(x);
    if pa.contains(&y) {
        return Ok(None);
    }
    let mut lower = c.clone();
    for child in c.children(x) {
        lower = lower.without_edge(x, child)?;
    }
    if possible_descendants(&lower, &[x]).contains(&y) {
        return Ok(None);
    }
    Ok(Some(pa))
}

/// MAG-only back-door set construction: delete the visible directed edges
/// out of `x`, then `D-SEP(x, y, ·)` of the result works unless `y` stays
/// adjacent to `x` or the set meets the descendants of `x`.
pub fn find_backdoor_set_mag(m: &MixedGraph, x: usize, y: usize) -> Result<Option<Vec<usize>>> {
    if m.kind() != GraphKind::Mag {
        return Err(Error::KindNotSupported { op: "find_backdoor_set_mag", kind: m.kind() });
    }
    check_vertex(m, x, "treatment")?;
    check_vertex(m, y, "outcome")?;
    let lower = remove_visible_out_edges(m, m, x)?;
    if lower.adjacent(x, y) {
        return Ok(None);
    }
    let d = d_sep_set(&lower, x, y)?;
    let de = descendants(m, &[x]);
    if d.iter().any(|v| de.contains(v)) {
        return Ok(None);
    }
    Ok(Some(d))
}

/// All inclusion-minimal generalized back-door sets contained in the set
/// found by [`find_backdoor_set`], in increasing size and lexicographic
/// order within a size. Supersets of an already-found minimal set are
/// pruned without testing. Errors when no back-door set exists at all.
pub fn minimal_backdoor_sets(g: &MixedGraph, x: usize, y: usize) -> Result<Vec<Vec<usize>>> {
    let search = find_backdoor_set(g, x, y)?;
    let s = search.set.ok_or_else(|| {
        Error::InvalidArgument(format!(
            "no generalized back-door set exists relative to (`{}`, `{}`)",
            g.label(x),
            g.label(y)
        ))
    })?;
    let m = s.len();
    let mut subsets: Vec<Vec<usize>> = (0..1u64 << m)
        .map(|mask| (0..m).filter(|i| mask >> i & 1 == 1).map(|i| s[i]).collect())
        .collect();
    subsets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));

    let mut minimal: Vec<Vec<usize>> = Vec::new();
    'candidates: for cand in subsets {
        for found in &minimal {
            if found.iter().all(|v| cand.binary_search(v).is_ok()) {
                continue 'candidates;
            }
        }
        if check_generalized_backdoor(g, &[x], &[y], &cand)?.verdict {
            minimal.push(cand);
        }
    }
    Ok(minimal)
}
