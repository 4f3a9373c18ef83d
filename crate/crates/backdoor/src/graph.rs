// SPDX-License-Identifier: MIT
//! Partial mixed graphs with three endpoint marks, their file format, and
//! structural reachability primitives.
//!
//! A graph has at most one edge per vertex pair; each edge carries a mark
//! (tail `-`, arrowhead `>`/`<`, circle `o`) at both endpoints. The legal
//! mark pairs depend on the graph kind:
//!
//! | kind  | legal edges                  |
//! |-------|------------------------------|
//! | DAG   | `-->`                        |
//! | CPDAG | `-->`, `o-o`                 |
//! | MAG   | `-->`, `<->`                 |
//! | PAG   | `-->`, `<->`, `o->`, `o-o`   |
//!
//! Tail-tail edges (selection bias) are rejected for every kind, and so are
//! circle-tail edges, which cannot occur in any of the four kinds. DAGs and
//! the directed part of CPDAGs must be acyclic; MAGs must be ancestral (no
//! directed or almost directed cycles). CPDAG/PAG validation is syntactic
//! only: whether the input really is the completed graph of a Markov
//! equivalence class is not decidable by local checks and is the caller's
//! responsibility.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};

/// An edge endpoint mark.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mark {
    /// Tail (`-`): the endpoint vertex is an ancestor of the other endpoint.
    Tail,
    /// Arrowhead (`>`): the endpoint vertex is not an ancestor of the other.
    Arrow,
    /// Circle (`o`): the mark is undetermined within the equivalence class.
    Circle,
}

/// The four supported graph kinds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GraphKind {
    Dag,
    Cpdag,
    Mag,
    Pag,
}

impl fmt::Display for GraphKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GraphKind::Dag => "DAG",
            GraphKind::Cpdag => "CPDAG",
            GraphKind::Mag => "MAG",
            GraphKind::Pag => "PAG",
        };
        f.write_str(s)
    }
}

/// An edge between vertices `u < v` with a mark at each endpoint.
///
/// `mark_at_u = Tail, mark_at_v = Arrow` is a directed edge `u -> v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub mark_at_u: Mark,
    pub mark_at_v: Mark,
}

/// A path: ordered distinct vertices, consecutive pairs adjacent.
pub type Path = Vec<usize>;

/// An immutable partial mixed graph.
///
/// Vertices are identified by `usize` indices; index order equals
/// lexicographic label order, so sorted index sets print in label order.
/// All operations are pure; the graph never mutates after construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedGraph {
    kind: GraphKind,
    labels: Vec<String>,
    /// `marks[a][b]` is the mark at `b` on the edge between `a` and `b`,
    /// or `None` if `a` and `b` are not adjacent.
    marks: Vec<Vec<Option<Mark>>>,
}

/// Legal unordered mark pairs per kind; tail-tail and circle-tail edges are
/// rejected for every kind.
fn pair_legal(kind: GraphKind, a: Mark, b: Mark) -> bool {
    use Mark::*;
    let pair = if (a as u8) <= (b as u8) { (a, b) } else { (b, a) };
    match kind {
        GraphKind::Dag => pair == (Tail, Arrow),
        GraphKind::Cpdag => pair == (Tail, Arrow) || pair == (Circle, Circle),
        GraphKind::Mag => pair == (Tail, Arrow) || pair == (Arrow, Arrow),
        GraphKind::Pag => {
            pair == (Tail, Arrow)
                || pair == (Arrow, Arrow)
                || pair == (Arrow, Circle)
                || pair == (Circle, Circle)
        }
    }
}

fn glyph(mark_at_u: Mark, mark_at_v: Mark) -> &'static str {
    use Mark::*;
    match (mark_at_u, mark_at_v) {
        (Tail, Arrow) => "-->",
        (Arrow, Tail) => "<--",
        (Arrow, Arrow) => "<->",
        (Circle, Arrow) => "o->",
        (Arrow, Circle) => "<-o",
        (Circle, Circle) => "o-o",
        (Tail, Tail) => "---",
        (Tail, Circle) => "--o",
        (Circle, Tail) => "o--",
    }
}

fn glyph_marks(glyph: &str) -> Option<(Mark, Mark)> {
    use Mark::*;
    Some(match glyph {
        "-->" => (Tail, Arrow),
        "<--" => (Arrow, Tail),
        "<->" => (Arrow, Arrow),
        "o->" => (Circle, Arrow),
        "<-o" => (Arrow, Circle),
        "o-o" => (Circle, Circle),
        "---" => (Tail, Tail),
        "--o" => (Tail, Circle),
        "o--" => (Circle, Tail),
        _ => return None,
    })
}

fn validate_label(label: &str) -> std::result::Result<(), String> {
    if label.is_empty() {
        return Err("vertex label is empty".into());
    }
    for c in label.chars() {
        if c.is_whitespace() || matches!(c, '<' | '>' | 'o' | '-' | '#') {
            return Err(format!("vertex label `{label}` contains forbidden character `{c}`"));
        }
    }
    Ok(())
}

impl MixedGraph {
    /// Builds a validated graph from labeled edges.
    ///
    /// `vertices` may list isolated vertices; endpoints of `edges` are added
    /// implicitly. Each edge is `(u, mark_at_u, mark_at_v, v)`, so
    /// `("A", Tail, Arrow, "B")` is `A -> B`. Labels are sorted internally;
    /// vertex indices follow that sorted order.
    pub fn new(
        kind: GraphKind,
        vertices: &[&str],
        edges: &[(&str, Mark, Mark, &str)],
    ) -> Result<Self> {
        let mut labels: Vec<String> = Vec::new();
        let mut seen: HashSet<&str> = HashSet::new();
        for &name in vertices {
            validate_label(name).map_err(|msg| Error::InvalidArgument(msg))?;
            if !seen.insert(name) {
                return Err(Error::InvalidArgument(format!("duplicate vertex `{name}`")));
            }
            labels.push(name.to_string());
        }
        for &(u, _, _, v) in edges {
            for name in [u, v] {
                validate_label(name).map_err(Error::InvalidArgument)?;
                if seen.insert(name) {
                    labels.push(name.to_string());
                }
            }
        }
        labels.sort_unstable();

        let n = labels.len();
        let mut marks = vec![vec![None; n]; n];
        let at = |name: &str| labels.binary_search_by(|l| l.as_str().cmp(name)).unwrap();
        for &(lu, mu, mv, lv) in edges {
            let (u, v) = (at(lu), at(lv));
            if u == v {
                return Err(Error::InvalidArgument(format!("self-loop at `{lu}`")));
            }
            if marks[u][v].is_some() {
                return Err(Error::InvalidArgument(format!(
                    "duplicate edge for pair {{{lu}, {lv}}}"
                )));
            }
            marks[u][v] = Some(mv);
            marks[v][u] = Some(mu);
        }
        Self::from_marks(kind, labels, marks)
    }

    /// Builds a graph from an already-assembled marks matrix and runs the
    /// full kind validation. `labels` must be sorted.
    pub(crate) fn from_marks(
        kind: GraphKind,
        labels: Vec<String>,
        marks: Vec<Vec<Option<Mark>>>,
    ) -> Result<Self> {
        debug_assert!(labels.windows(2).all(|w| w[0] < w[1]));
        let g = MixedGraph { kind, labels, marks };
        g.validate()?;
        Ok(g)
    }

    fn validate(&self) -> Result<()> {
        let n = self.n();
        for u in 0..n {
            for v in (u + 1)..n {
                match (self.marks[v][u], self.marks[u][v]) {
                    (None, None) => {}
                    (Some(mu), Some(mv)) => {
                        if !pair_legal(self.kind, mu, mv) {
                            return Err(Error::InvalidGraph {
                                kind: self.kind,
                                msg: format!(
                                    "edge {} {} {} uses an illegal mark pair for this kind",
                                    self.labels[u],
                                    glyph(mu, mv),
                                    self.labels[v]
                                ),
                            });
                        }
                    }
                    _ => unreachable!("asymmetric adjacency"),
                }
            }
        }
        match self.kind {
            GraphKind::Dag | GraphKind::Cpdag => self.check_directed_acyclic()?,
            GraphKind::Mag => {
                self.check_directed_acyclic()?;
                self.check_no_almost_directed_cycle()?;
            }
            GraphKind::Pag => {}
        }
        Ok(())
    }

    /// Rejects directed cycles (DAG, CPDAG directed part, MAG).
    fn check_directed_acyclic(&self) -> Result<()> {
        // Iterative three-color DFS over directed edges only.
        let n = self.n();
        let mut state = vec![0u8; n]; // 0 unvisited, 1 on stack, 2 done
        for start in 0..n {
            if state[start] != 0 {
                continue;
            }
            let mut stack = vec![(start, 0usize)];
            state[start] = 1;
            while let Some(&mut (v, ref mut next)) = stack.last_mut() {
                let mut advanced = false;
                while *next < n {
                    let w = *next;
                    *next += 1;
                    if !self.is_directed(v, w) {
                        continue;
                    }
                    match state[w] {
                        0 => {
                            state[w] = 1;
                            stack.push((w, 0));
                            advanced = true;
                            break;
                        }
                        1 => {
                            return Err(Error::InvalidGraph {
                                kind: self.kind,
                                msg: format!(
                                    "directed cycle through `{}` and `{}`",
                                    self.labels[v], self.labels[w]
                                ),
                            });
                        }
                        _ => {}
                    }
                }
                if !advanced {
                    state[v] = 2;
                    stack.pop();
                }
            }
        }
        Ok(())
    }

    /// Rejects almost directed cycles: `u <-> v` with `u` an ancestor of `v`
    /// or vice versa (the edge plus the directed path would form one).
    fn check_no_almost_directed_cycle(&self) -> Result<()> {
        let n = self.n();
        for u in 0..n {
            let reach = descendants(self, &[u]);
            for &v in &reach {
                if v != u && self.is_bidirected(u, v) {
                    return Err(Error::InvalidGraph {
                        kind: self.kind,
                        msg: format!(
                            "almost directed cycle: `{}` is an ancestor of `{}` but {} <-> {}",
                            self.labels[u], self.labels[v], self.labels[u], self.labels[v]
                        ),
                    });
                }
            }
        }
        Ok(())
    }

    /// Number of vertices.
    #[inline]
    pub fn n(&self) -> usize {
        self.labels.len()
    }

    /// Graph kind.
    #[inline]
    pub fn kind(&self) -> GraphKind {
        self.kind
    }

    /// All labels, sorted; index order equals this order.
    #[inline]
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Label of vertex `v`.
    #[inline]
    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    /// Index of a label, or [`Error::UnknownVertex`].
    pub fn index(&self, label: &str) -> Result<usize> {
        self.labels
            .binary_search_by(|l| l.as_str().cmp(label))
            .map_err(|_| Error::UnknownVertex(label.to_string()))
    }

    /// Whether `a` and `b` are adjacent.
    #[inline]
    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.marks[a][b].is_some()
    }

    /// Mark at `to` on the edge between `from` and `to`, if adjacent.
    ///
    /// `mark(a, b) == Some(Mark::Arrow)` reads "the edge is into `b`".
    #[inline]
    pub fn mark(&self, from: usize, to: usize) -> Option<Mark> {
        self.marks[from][to]
    }

    /// Whether the edge `a -> b` (tail at `a`, arrowhead at `b`) exists.
    #[inline]
    pub fn is_directed(&self, a: usize, b: usize) -> bool {
        self.marks[a][b] == Some(Mark::Arrow) && self.marks[b][a] == Some(Mark::Tail)
    }

    /// Whether the edge `a <-> b` exists.
    #[inline]
    pub fn is_bidirected(&self, a: usize, b: usize) -> bool {
        self.marks[a][b] == Some(Mark::Arrow) && self.marks[b][a] == Some(Mark::Arrow)
    }

    /// Vertices adjacent to `v`, ascending.
    pub fn adjacency(&self, v: usize) -> Vec<usize> {
        (0..self.n()).filter(|&w| self.adjacent(v, w)).collect()
    }

    /// Parents of `v`: vertices `p` with `p -> v`.
    pub fn parents(&self, v: usize) -> Vec<usize> {
        (0..self.n()).filter(|&p| self.is_directed(p, v)).collect()
    }

    /// Children of `v`: vertices `c` with `v -> c`.
    pub fn children(&self, v: usize) -> Vec<usize> {
        (0..self.n()).filter(|&c| self.is_directed(v, c)).collect()
    }

    /// The edge between `a` and `b`, normalized to `u < v`.
    pub fn edge_between(&self, a: usize, b: usize) -> Option<Edge> {
        let (u, v) = if a < b { (a, b) } else { (b, a) };
        match (self.marks[v][u], self.marks[u][v]) {
            (Some(mu), Some(mv)) => Some(Edge { u, v, mark_at_u: mu, mark_at_v: mv }),
            _ => None,
        }
    }

    /// All edges in canonical order (by `(u, v)` with `u < v`).
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::new();
        for u in 0..self.n() {
            for v in (u + 1)..self.n() {
                if let Some(e) = self.edge_between(u, v) {
                    out.push(e);
                }
            }
        }
        out
    }

    /// All directed edges `(a, b)` with `a -> b`, in canonical order.
    pub fn directed_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for e in self.edges() {
            if self.is_directed(e.u, e.v) {
                out.push((e.u, e.v));
            } else if self.is_directed(e.v, e.u) {
                out.push((e.v, e.u));
            }
        }
        out
    }

    /// A copy of the graph with the edge between `a` and `b` removed.
    ///
    /// Removing an edge preserves every kind invariant, so the result keeps
    /// the same kind. Used to form lower-manipulated graphs and to replay
    /// "what if this edge were absent" diagnostics.
    pub fn without_edge(&self, a: usize, b: usize) -> Result<MixedGraph> {
        if !self.adjacent(a, b) {
            return Err(Error::InvalidArgument(format!(
                "no edge between `{}` and `{}`",
                self.labels[a], self.labels[b]
            )));
        }
        let mut g = self.clone();
        g.marks[a][b] = None;
        g.marks[b][a] = None;
        Ok(g)
    }

    /// Canonical text form: `kind:` header, `vertex:` lines for isolated
    /// vertices, then edges sorted with the lexicographically smaller
    /// endpoint on the left. Parsing this text reproduces the graph.
    pub fn to_text(&self) -> String {
        let mut out = format!("kind: {}\n", self.kind);
        for v in 0..self.n() {
            if self.adjacency(v).is_empty() {
                out.push_str(&format!("vertex: {}\n", self.labels[v]));
            }
        }
        for e in self.edges() {
            out.push_str(&format!(
                "{} {} {}\n",
                self.labels[e.u],
                glyph(e.mark_at_u, e.mark_at_v),
                self.labels[e.v]
            ));
        }
        out
    }
}

impl fmt::Display for MixedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Parses the line-oriented graph file format.
///
/// ```text
/// kind: MAG            # first significant line
/// V1 --> X             # one edge per line; glyphs: --> <-- <-> o-> <-o o-o
/// X <-> V2
/// vertex: LONER        # isolated vertex
/// ```
///
/// `#` starts a comment (full-line or trailing); blank lines are ignored.
/// Labels may not contain whitespace or any of `< > o - #`.
pub fn parse_graph(text: &str) -> Result<MixedGraph> {
    let mut kind: Option<GraphKind> = None;
    let mut vertices: Vec<String> = Vec::new();
    let mut vertex_set: HashSet<String> = HashSet::new();
    let mut edges: Vec<(String, Mark, Mark, String)> = Vec::new();
    let mut pairs: HashSet<(String, String)> = HashSet::new();

    let err = |line: usize, msg: String| Error::Parse { line, msg };
    let add_vertex = |name: &str, vertices: &mut Vec<String>, set: &mut HashSet<String>| {
        if set.insert(name.to_string()) {
            vertices.push(name.to_string());
        }
    };

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }

        let kind_known = match kind {
            Some(k) => k,
            None => {
                let value = line
                    .strip_prefix("kind:")
                    .ok_or_else(|| {
                        err(line_no, "expected `kind: DAG|CPDAG|MAG|PAG` header".into())
                    })?
                    .trim();
                kind = Some(match value {
                    "DAG" => GraphKind::Dag,
                    "CPDAG" => GraphKind::Cpdag,
                    "MAG" => GraphKind::Mag,
                    "PAG" => GraphKind::Pag,
                    other => return Err(err(line_no, format!("unknown graph kind `{other}`"))),
                });
                continue;
            }
        };

        if let Some(rest) = line.strip_prefix("vertex:") {
            let name = rest.trim();
            validate_label(name).map_err(|msg| err(line_no, msg))?;
            add_vertex(name, &mut vertices, &mut vertex_set);
            continue;
        }

        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != 3 {
            return Err(err(
                line_no,
                format!("expected `<u> <edge> <v>`, found {} token(s)", tokens.len()),
            ));
        }
        let (lu, g, lv) = (tokens[0], tokens[1], tokens[2]);
        validate_label(lu).map_err(|msg| err(line_no, msg))?;
        validate_label(lv).map_err(|msg| err(line_no, msg))?;
        let (mu, mv) =
            glyph_marks(g).ok_or_else(|| err(line_no, format!("unrecognized edge glyph `{g}`")))?;
        if lu == lv {
            return Err(err(line_no, format!("self-loop at `{lu}`")));
        }
        if !pair_legal(kind_known, mu, mv) {
            return Err(err(
                line_no,
                format!("edge `{lu} {g} {lv}` is not a legal {kind_known} edge"),
            ));
        }
        let key = if lu < lv {
            (lu.to_string(), lv.to_string())
        } else {
            (lv.to_string(), lu.to_string())
        };
        if !pairs.insert(key) {
            return Err(err(line_no, format!("duplicate edge for pair {{{lu}, {lv}}}")));
        }
        add_vertex(lu, &mut vertices, &mut vertex_set);
        add_vertex(lv, &mut vertices, &mut vertex_set);
        edges.push((lu.to_string(), mu, mv, lv.to_string()));
    }

    let kind = kind.ok_or_else(|| err(1, "missing `kind:` header".into()))?;
    let vertex_refs: Vec<&str> = vertices.iter().map(|s| s.as_str()).collect();
    let edge_refs: Vec<(&str, Mark, Mark, &str)> =
        edges.iter().map(|(u, mu, mv, v)| (u.as_str(), *mu, *mv, v.as_str())).collect();
    MixedGraph::new(kind, &vertex_refs, &edge_refs)
}

/// Renders a path with edge glyphs, e.g. `X <-> V2 --> V4 <-- Y`.
pub fn format_path(g: &MixedGraph, path: &[usize]) -> String {
    let mut out = String::new();
    for (i, &v) in path.iter().enumerate() {
        if i > 0 {
            let u = path[i - 1];
            let mu = g.mark(v, u).expect("consecutive path vertices must be adjacent");
            let mv = g.mark(u, v).expect("consecutive path vertices must be adjacent");
            out.push_str(&format!(" {} ", glyph(mu, mv)));
        }
        out.push_str(g.label(v));
    }
    out
}

/// Renders a sorted vertex set as `{A, B, C}`.
pub fn format_vertex_set(g: &MixedGraph, set: &[usize]) -> String {
    let names: Vec<&str> = set.iter().map(|&v| g.label(v)).collect();
    format!("{{{}}}", names.join(", "))
}

fn reach(g: &MixedGraph, sources: &[usize], step: impl Fn(usize, usize) -> bool) -> Vec<usize> {
    let mut seen = vec![false; g.n()];
    let mut queue: Vec<usize> = Vec::new();
    for &s in sources {
        if !seen[s] {
            seen[s] = true;
            queue.push(s);
        }
    }
    while let Some(v) = queue.pop() {
        for w in 0..g.n() {
            if !seen[w] && g.adjacent(v, w) && step(v, w) {
                seen[w] = true;
                queue.push(w);
            }
        }
    }
    (0..g.n()).filter(|&v| seen[v]).collect()
}

/// Vertices reachable from `sources` by directed paths, including the
/// sources themselves (descendant sets are reflexive).
pub fn descendants(g: &MixedGraph, sources: &[usize]) -> Vec<usize> {
    reach(g, sources, |v, w| g.is_directed(v, w))
}

/// Vertices with a directed path into some source, including the sources.
pub fn ancestors(g: &MixedGraph, sources: &[usize]) -> Vec<usize> {
    reach(g, sources, |v, w| g.is_directed(w, v))
}

/// Vertices reachable from `sources` by possibly directed paths (no edge on
/// the path is into its predecessor endpoint), including the sources.
///
/// A step `v .. w` is allowed iff the mark at `v` on that edge is not an
/// arrowhead. Any walk built from such steps splices into a path with the
/// same property, so plain reachability is sound.
pub fn possible_descendants(g: &MixedGraph, sources: &[usize]) -> Vec<usize> {
    reach(g, sources, |v, w| g.mark(w, v) != Some(Mark::Arrow))
}

/// Mirror of [`possible_descendants`]: vertices with a possibly directed
/// path into some source, including the sources.
pub fn possible_ancestors(g: &MixedGraph, sources: &[usize]) -> Vec<usize> {
    reach(g, sources, |v, w| g.mark(v, w) != Some(Mark::Arrow))
}

/// Whether interior vertex `b` is a collider on a path segment `a *-* b *-* c`:
/// both incident edges have arrowheads at `b`.
#[inline]
pub fn is_collider(g: &MixedGraph, a: usize, b: usize, c: usize) -> bool {
    g.mark(a, b) == Some(Mark::Arrow) && g.mark(c, b) == Some(Mark::Arrow)
}

/// Whether interior vertex `b` is a *definite* noncollider on `a *-* b *-* c`:
/// a tail at `b` on either incident edge, or circle marks at `b` on both
/// edges with `a` and `c` nonadjacent (an unshielded circle triple).
#[inline]
pub fn is_definite_noncollider(g: &MixedGraph, a: usize, b: usize, c: usize) -> bool {
    let m_ab = g.mark(a, b);
    let m_cb = g.mark(c, b);
    m_ab == Some(Mark::Tail)
        || m_cb == Some(Mark::Tail)
        || (m_ab == Some(Mark::Circle) && m_cb == Some(Mark::Circle) && !g.adjacent(a, c))
}

/// Whether interior vertex `b` has definite status on `a *-* b *-* c`.
#[inline]
pub fn is_definite_status(g: &MixedGraph, a: usize, b: usize, c: usize) -> bool {
    is_collider(g, a, b, c) || is_definite_noncollider(g, a, b, c)
}

/// All definite status paths between `x` and `y`, in lexicographic order of
/// their vertex sequences.
///
/// A path has definite status when every interior vertex is a collider or a
/// definite noncollider. In DAGs and MAGs every path qualifies, so this
/// enumerates all paths. Exhaustive DFS; intended for desk-scale graphs.
pub fn definite_status_paths(g: &MixedGraph, x: usize, y: usize) -> Vec<Path> {
    definite_status_paths_bounded(g, x, y, None)
}

/// [`definite_status_paths`] with an optional maximum edge count.
pub fn definite_status_paths_bounded(
    g: &MixedGraph,
    x: usize,
    y: usize,
    max_edges: Option<usize>,
) -> Vec<Path> {
    assert!(x != y, "definite status paths require distinct endpoints");
    let mut out = Vec::new();
    let mut path = vec![x];
    let mut on_path = vec![false; g.n()];
    on_path[x] = true;
    dfs_definite(g, y, max_edges, &mut path, &mut on_path, &mut out);
    out
}

fn dfs_definite(
    g: &MixedGraph,
    y: usize,
    max_edges: Option<usize>,
    path: &mut Path,
    on_path: &mut Vec<bool>,
    out: &mut Vec<Path>,
) {
    if let Some(limit) = max_edges {
        if path.len() > limit {
            return;
        }
    }
    let u = *path.last().unwrap();
    for w in 0..g.n() {
        if on_path[w] || !g.adjacent(u, w) {
            continue;
        }
        // Extending past `u` makes it interior; it must have definite status.
        if path.len() >= 2 {
            let a = path[path.len() - 2];
            if !is_definite_status(g, a, u, w) {
                continue;
            }
        }
        if w == y {
            let mut found = path.clone();
            found.push(y);
            out.push(found);
            continue;
        }
        path.push(w);
        on_path[w] = true;
        dfs_definite(g, y, max_edges, path, on_path, out);
        path.pop();
        on_path[w] = false;
    }
}

/// A shortest possibly directed path from `x` to `y`, or `None` when `y` is
/// not a possible descendant of `x`.
///
/// On genuine CPDAGs/PAGs a shortest possibly directed path is guaranteed to
/// have definite status and to satisfy the tail property (once some edge on
/// it has an arrowhead at its far endpoint, all later edges are directed).
/// Both guarantees are asserted; a violation means the input is
/// syntactically valid but not the completed graph of an equivalence class.
pub fn possibly_directed_definite_status_path(g: &MixedGraph, x: usize, y: usize) -> Option<Path> {
    assert!(x != y, "path endpoints must be distinct");
    // BFS over possibly directed steps; first-found parents give a shortest
    // path, with deterministic tie-breaking by vertex order.
    let mut parent = vec![usize::MAX; g.n()];
    let mut seen = vec![false; g.n()];
    seen[x] = true;
    let mut queue = std::collections::VecDeque::from([x]);
    while let Some(v) = queue.pop_front() {
        if v == y {
            break;
        }
        for w in 0..g.n() {
            if seen[w] || !g.adjacent(v, w) || g.mark(w, v) == Some(Mark::Arrow) {
                continue;
            }
            seen[w] = true;
            parent[w] = v;
            queue.push_back(w);
        }
    }
    if !seen[y] {
        return None;
    }
    let mut path = vec![y];
    while *path.last().unwrap() != x {
        path.push(parent[*path.last().unwrap()]);
    }
    path.reverse();

    for i in 1..path.len().saturating_sub(1) {
        assert!(
            is_definite_noncollider(g, path[i - 1], path[i], path[i + 1]),
            "shortest possibly directed path is not definite status; \
             the input is not a genuine CPDAG/PAG"
        );
    }
    let mut arrow_seen = false;
    for i in 1..path.len() {
        if arrow_seen {
            assert!(
                g.is_directed(path[i - 1], path[i]),
                "tail property violated on a shortest possibly directed path; \
                 the input is not a genuine CPDAG/PAG"
            );
        }
        if g.mark(path[i - 1], path[i]) == Some(Mark::Arrow) {
            arrow_seen = true;
        }
    }
    Some(path)
}
