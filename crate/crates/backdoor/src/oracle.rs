// SPDX-License-Identifier: MIT
//! Brute-force reference implementations used for testing: equivalence
//! class enumeration, exhaustive back-door search, moralization-based
//! d-separation, and seeded random graph generation.
//!
//! Everything here trades speed for obviousness — these functions define
//! what the optimized operations elsewhere in the crate are tested against,
//! so they stay as close to the definitions as possible.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::criterion::check_generalized_backdoor;
use crate::error::{Error, Result};
use crate::graph::{ancestors, is_collider, GraphKind, Mark, MixedGraph};

/// Unshielded colliders `a *-> b <-* c` with `a < c` and `a`, `c`
/// nonadjacent, sorted. Two DAGs with equal skeletons are Markov
/// equivalent iff these sets coincide.
fn unshielded_colliders(g: &MixedGraph) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for b in 0..g.n() {
        for a in 0..g.n() {
            for c in (a + 1)..g.n() {
                if a != b
                    && c != b
                    && g.adjacent(a, b)
                    && g.adjacent(c, b)
                    && !g.adjacent(a, c)
                    && is_collider(g, a, b, c)
                {
                    out.push((a, b, c));
                }
            }
        }
    }
    out.sort_unstable();
    out
}

/// All member DAGs of the equivalence class described by a CPDAG: every
/// orientation of the circle edges that is acyclic, creates no unshielded
/// collider the CPDAG does not have, and keeps all directed edges.
///
/// Members are ordered by their orientation pattern (deterministic).
/// Rejects inputs with more than 12 circle edges.
pub fn enumerate_cpdag_members(c: &MixedGraph) -> Result<Vec<MixedGraph>> {
    if c.kind() != GraphKind::Cpdag {
        return Err(Error::KindNotSupported { op: "enumerate_cpdag_members", kind: c.kind() });
    }
    let circles: Vec<(usize, usize)> =
        c.edges().iter().filter(|e| e.mark_at_u == Mark::Circle).map(|e| (e.u, e.v)).collect();
    if circles.len() > 12 {
        return Err(Error::Unsupported(format!(
            "refusing to enumerate 2^{} orientations (more than 12 undirected edges)",
            circles.len()
        )));
    }

    let reference = unshielded_colliders(c);
    let mut members = Vec::new();
    for bits in 0u32..(1u32 << circles.len()) {
        let mut marks: Vec<Vec<Option<Mark>>> = vec![vec![None; c.n()]; c.n()];
        for e in c.edges() {
            marks[e.u][e.v] = Some(e.mark_at_v);
            marks[e.v][e.u] = Some(e.mark_at_u);
        }
        for (i, &(u, v)) in circles.iter().enumerate() {
            let (from, to) = if bits >> i & 1 == 0 { (u, v) } else { (v, u) };
            marks[from][to] = Some(Mark::Arrow);
            marks[to][from] = Some(Mark::Tail);
        }
        // Cyclic orientations fail DAG validation and are skipped.
        let Ok(candidate) = MixedGraph::from_marks(GraphKind::Dag, c.labels().to_vec(), marks)
        else {
            continue;
        };
        if unshielded_colliders(&candidate) == reference {
            members.push(candidate);
        }
    }
    Ok(members)
}

/// The CPDAG of a DAG's Markov equivalence class: skeleton plus unshielded
/// colliders, closed under the standard orientation rules; every edge whose
/// direction is not compelled becomes a circle edge.
pub fn cpdag_of(d: &MixedGraph) -> Result<MixedGraph> {
    if d.kind() != GraphKind::Dag {
        return Err(Error::KindNotSupported { op: "cpdag_of", kind: d.kind() });
    }
    let n = d.n();
    // dir[a][b]: a -> b in the pattern; und[a][b]: still undirected.
    let mut dir = vec![vec![false; n]; n];
    let mut und = vec![vec![false; n]; n];
    for e in d.edges() {
        und[e.u][e.v] = true;
        und[e.v][e.u] = true;
    }
    let mut orient = |a: usize, b: usize, und: &mut Vec<Vec<bool>>| {
        und[a][b] = false;
        und[b][a] = false;
        dir[a][b] = true;
    };
    for &(a, b, c) in &unshielded_colliders(d) {
        orient(a, b, &mut und);
        orient(c, b, &mut und);
    }

    let adj = |a: usize, b: usize, dir: &Vec<Vec<bool>>, und: &Vec<Vec<bool>>| {
        und[a][b] || dir[a][b] || dir[b][a]
    };
    let reachable = |from: usize, to: usize, dir: &Vec<Vec<bool>>| {
        let mut seen = vec![false; n];
        seen[from] = true;
        let mut stack = vec![from];
        while let Some(v) = stack.pop() {
            for w in 0..n {
                if dir[v][w] && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen[to]
    };

    loop {
        let mut changed = false;
        for a in 0..n {
            for b in 0..n {
                if !und[a][b] {
                    continue;
                }
                // R1: c -> a, a -- b, c not adjacent to b  =>  a -> b.
                let r1 = (0..n).any(|c| dir[c][a] && !adj(c, b, &dir, &und) && c != b);
                // R2 (path form): a => b directed  =>  a -> b, else a cycle.
                let r2 = reachable(a, b, &dir);
                // R3: a -- c -> b and a -- d -> b with c, d nonadjacent.
                let r3 = (0..n).any(|c| {
                    und[a][c]
                        && dir[c][b]
                        && (0..n)
                            .any(|e| e != c && und[a][e] && dir[e][b] && !adj(c, e, &dir, &und))
                });
                if r1 || r2 || r3 {
                    dir[a][b] = true;
                    und[a][b] = false;
                    und[b][a] = false;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }

    let mut marks: Vec<Vec<Option<Mark>>> = vec![vec![None; n]; n];
    for a in 0..n {
        for b in 0..n {
            if dir[a][b] {
                marks[a][b] = Some(Mark::Arrow);
                marks[b][a] = Some(Mark::Tail);
            } else if und[a][b] {
                marks[a][b] = Some(Mark::Circle);
                marks[b][a] = Some(Mark::Circle);
            }
        }
    }
    MixedGraph::from_marks(GraphKind::Cpdag, d.labels().to_vec(), marks)
}

/// Exhaustively searches for a set satisfying the generalized back-door
/// criterion for `(x, y)`, over all subsets of the other vertices, smallest
/// first and lexicographic within a size. `None` means no subset works.
/// Rejects graphs with more than 9 vertices.
pub fn oracle_backdoor_exists(g: &MixedGraph, x: usize, y: usize) -> Result<Option<Vec<usize>>> {
    if g.n() > 9 {
        return Err(Error::Unsupported(format!(
            "exhaustive back-door search is limited to 9 vertices, got {}",
            g.n()
        )));
    }
    let universe: Vec<usize> = (0..g.n()).filter(|&v| v != x && v != y).collect();
    for size in 0..=universe.len() {
        let mut found: Option<Vec<usize>> = None;
        let mut current = Vec::with_capacity(size);
        combinations(&universe, size, 0, &mut current, &mut |w| {
            if found.is_none()
                && check_generalized_backdoor(g, &[x], &[y], w).map(|r| r.verdict).unwrap_or(false)
            {
                found = Some(w.to_vec());
            }
        });
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

/// Calls `f` on every `k`-combination of `universe[start..]` appended to
/// `current`, in lexicographic order.
fn combinations(
    universe: &[usize],
    k: usize,
    start: usize,
    current: &mut Vec<usize>,
    f: &mut impl FnMut(&[usize]),
) {
    if current.len() == k {
        f(current);
        return;
    }
    let needed = k - current.len();
    for i in start..=universe.len().saturating_sub(needed) {
        current.push(universe[i]);
        combinations(universe, k, i + 1, current, f);
        current.pop();
    }
}

/// Classical d-separation on a DAG by moralization: restrict to the
/// ancestors of `{x, y} ∪ z`, marry co-parents, drop directions, delete
/// `z`, and test undirected reachability. Independent of the m-separation
/// machinery, hence useful as its oracle.
pub fn dsep_moral_oracle(d: &MixedGraph, x: usize, y: usize, z: &[usize]) -> Result<bool> {
    if d.kind() != GraphKind::Dag {
        return Err(Error::KindNotSupported { op: "dsep_moral_oracle", kind: d.kind() });
    }
    if x == y || z.contains(&x) || z.contains(&y) {
        return Err(Error::InvalidArgument(
            "d-separation query needs distinct x, y outside z".into(),
        ));
    }
    let mut sources = vec![x, y];
    sources.extend_from_slice(z);
    let anc = ancestors(d, &sources);
    let in_anc = {
        let mut f = vec![false; d.n()];
        for &v in &anc {
            f[v] = true;
        }
        f
    };

    let n = d.n();
    let mut joined = vec![vec![false; n]; n];
    for &v in &anc {
        let parents: Vec<usize> = (0..n).filter(|&p| in_anc[p] && d.is_directed(p, v)).collect();
        for &p in &parents {
            joined[p][v] = true;
            joined[v][p] = true;
        }
        // Marry co-parents of v.
        for (i, &p) in parents.iter().enumerate() {
            for &q in &parents[i + 1..] {
                joined[p][q] = true;
                joined[q][p] = true;
            }
        }
    }

    let blocked = {
        let mut f = vec![false; n];
        for &v in z {
            f[v] = true;
        }
        f
    };
    let mut seen = vec![false; n];
    seen[x] = true;
    let mut stack = vec![x];
    while let Some(v) = stack.pop() {
        for w in 0..n {
            if joined[v][w] && !seen[w] && !blocked[w] {
                if w == y {
                    return Ok(false);
                }
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    Ok(true)
}

fn observed_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| ((b'A' + i as u8) as char).to_string()).collect()
}

fn random_dag_marks(n: usize, density: f64, rng: &mut ChaCha8Rng) -> Vec<Vec<Option<Mark>>> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut marks = vec![vec![None; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.gen_bool(density) {
                let (a, b) = (order[i], order[j]);
                marks[a][b] = Some(Mark::Arrow);
                marks[b][a] = Some(Mark::Tail);
            }
        }
    }
    marks
}

/// A random DAG over `n` observed vertices `A`, `B`, … plus a random
/// number (up to 4) of latent vertices `h1`, `h2`, …, returned together
/// with the latent indices. Projecting out the latents with
/// [`mag_projection`] yields a random MAG; the full DAG is what numeric
/// validations marginalize.
pub fn random_dag_with_latents(
    n: usize,
    density: f64,
    seed: u64,
) -> Result<(MixedGraph, Vec<usize>)> {
    check_generator_args(n, density)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let l = rng.gen_range(0..=(n / 2).min(4));
    let mut labels = observed_labels(n);
    labels.extend((1..=l).map(|i| format!("h{i}")));
    let total = n + l;
    let marks = random_dag_marks(total, density, &mut rng);
    let dag = MixedGraph::from_marks(GraphKind::Dag, labels, marks)?;
    Ok((dag, (n..total).collect()))
}

/// Marginalizes a DAG onto its non-latent vertices as a MAG: two observed
/// vertices stay adjacent iff no subset of the remaining observed vertices
/// d-separates them, and an endpoint mark is a tail iff that endpoint is
/// an ancestor of the other in the DAG. Exponential in the number of
/// observed vertices; a reference construction, not an algorithm.
pub fn mag_projection(d: &MixedGraph, latents: &[usize]) -> Result<MixedGraph> {
    if d.kind() != GraphKind::Dag {
        return Err(Error::KindNotSupported { op: "mag_projection", kind: d.kind() });
    }
    let mut is_latent = vec![false; d.n()];
    for &v in latents {
        if v >= d.n() {
            return Err(Error::InvalidArgument(format!("latent index {v} out of range")));
        }
        is_latent[v] = true;
    }
    let observed: Vec<usize> = (0..d.n()).filter(|&v| !is_latent[v]).collect();
    let m = observed.len();
    let labels: Vec<String> = observed.iter().map(|&v| d.label(v).to_string()).collect();

    let anc_of: Vec<Vec<usize>> = (0..d.n()).map(|v| ancestors(d, &[v])).collect();
    let mut marks: Vec<Vec<Option<Mark>>> = vec![vec![None; m]; m];
    for i in 0..m {
        for j in (i + 1)..m {
            let (u, v) = (observed[i], observed[j]);
            let rest: Vec<usize> = observed.iter().copied().filter(|&w| w != u && w != v).collect();
            let mut separable = false;
            let mut z = Vec::new();
            let check = |z: &[usize]| dsep_moral_oracle(d, u, v, z).unwrap();
            for k in 0..=rest.len() {
                let mut hit = false;
                combinations(&rest, k, 0, &mut z, &mut |zs| hit = hit || check(zs));
                if hit {
                    separable = true;
                    break;
                }
            }
            if separable {
                continue;
            }
            // mark at an endpoint is a tail iff it is an ancestor of the
            // other endpoint (both-tails would mean a directed cycle)
            let mark_at = |a: usize, b: usize| {
                if anc_of[b].binary_search(&a).is_ok() {
                    Mark::Tail
                } else {
                    Mark::Arrow
                }
            };
            marks[i][j] = Some(mark_at(v, u));
            marks[j][i] = Some(mark_at(u, v));
        }
    }
    MixedGraph::from_marks(GraphKind::Mag, labels, marks)
}

fn check_generator_args(n: usize, density: f64) -> Result<()> {
    if n == 0 || n > 15 {
        return Err(Error::InvalidArgument(format!(
            "generator supports 1 to 15 vertices, got {n}"
        )));
    }
    if !(0.0..=1.0).contains(&density) {
        return Err(Error::InvalidArgument(format!("density {density} outside [0, 1]")));
    }
    Ok(())
}

/// Deterministic-by-seed random graph of the requested kind.
///
/// DAG: random topological order plus independent edges. CPDAG: the
/// completed pattern of such a DAG (a genuine equivalence-class
/// representative by construction). MAG: projection of a random DAG with
/// random latents. PAG generation is unsupported — there is no local
/// procedure for completing a MAG class — so PAG test inputs are files.
pub fn random_graph(kind: GraphKind, n: usize, density: f64, seed: u64) -> Result<MixedGraph> {
    check_generator_args(n, density)?;
    match kind {
        GraphKind::Dag => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let marks = random_dag_marks(n, density, &mut rng);
            MixedGraph::from_marks(GraphKind::Dag, observed_labels(n), marks)
        }
        GraphKind::Cpdag => cpdag_of(&random_graph(GraphKind::Dag, n, density, seed)?),
        GraphKind::Mag => {
            let (dag, latents) = random_dag_with_latents(n, density, seed)?;
            mag_projection(&dag, &latents)
        }
        GraphKind::Pag => Err(Error::Unsupported(
            "random PAG generation is not supported; supply PAG files instead".into(),
        )),
    }
}
