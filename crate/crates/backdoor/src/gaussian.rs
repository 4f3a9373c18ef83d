// SPDX-License-Identifier: MIT

//! Exact linear-Gaussian validation of the adjustment semantics.
//!
//! A linear structural equation model over a DAG assigns every vertex the
//! weighted sum of its parents plus independent Gaussian noise. Within this
//! family, both sides of the adjustment identity are available in closed
//! form: the interventional effect `∂E[Y | do(X=x)]/∂x` is a sum of directed
//! path weight products, and the adjusted estimate is the coefficient of `X`
//! in the population regression of `Y` on `{X} ∪ W`. Whenever `W` satisfies
//! the generalized back-door criterion, the two must agree to rounding
//! error, which makes the family a sharp numeric test bed for the graph
//! theory. The claims validated here hold for all compatible densities; the
//! linear-Gaussian slice is chosen because it is exactly computable.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::criterion::check_generalized_backdoor;
use crate::graph::MixedGraph;
use crate::oracle::{
    enumerate_cpdag_members, mag_projection, random_dag_with_latents, random_graph,
};
use crate::{Error, GraphKind, Result};

/// A linear-Gaussian structural equation model: each vertex `v` of a DAG is
/// `v = Σ_{p ∈ pa(v)} weight(p→v) · p + ε_v` with independent centered
/// Gaussian noise of variance `noise_variance(v)`.
#[derive(Clone, Debug)]
pub struct LinearSEM {
    dag: MixedGraph,
    /// `weights[p][c]` is the coefficient on the edge `p → c`; zero entries
    /// correspond exactly to absent edges.
    weights: Vec<Vec<f64>>,
    noise_variances: Vec<f64>,
    /// A fixed topological order of `dag`, smallest vertex first among the
    /// ready ones.
    topo: Vec<usize>,
}

impl LinearSEM {
    /// Builds a model from explicit per-edge weights and per-vertex noise
    /// variances. Every directed edge of `dag` must receive exactly one
    /// weight, every vertex exactly one positive variance.
    pub fn new(
        dag: MixedGraph,
        weights: &[(&str, &str, f64)],
        noise_variances: &[(&str, f64)],
    ) -> Result<LinearSEM> {
        if dag.kind() != GraphKind::Dag {
            return Err(Error::KindNotSupported { op: "LinearSEM::new", kind: dag.kind() });
        }
        let n = dag.n();
        let mut w = vec![vec![0.0; n]; n];
        let mut seen = vec![vec![false; n]; n];
        for &(p, c, coef) in weights {
            let (p, c) = (dag.index(p)?, dag.index(c)?);
            if !dag.is_directed(p, c) {
                return Err(Error::InvalidArgument(format!(
                    "weight given for {} → {}, which is not an edge of the DAG",
                    dag.label(p),
                    dag.label(c)
                )));
            }
            if seen[p][c] {
                return Err(Error::InvalidArgument(format!(
                    "duplicate weight for {} → {}",
                    dag.label(p),
                    dag.label(c)
                )));
            }
            seen[p][c] = true;
            w[p][c] = coef;
        }
        for (p, c) in dag.directed_edges() {
            if !seen[p][c] {
                return Err(Error::InvalidArgument(format!(
                    "missing weight for {} → {}",
                    dag.label(p),
                    dag.label(c)
                )));
            }
        }
        let mut omega = vec![f64::NAN; n];
        for &(v, var) in noise_variances {
            let v = dag.index(v)?;
            if !omega[v].is_nan() {
                return Err(Error::InvalidArgument(format!(
                    "duplicate noise variance for {}",
                    dag.label(v)
                )));
            }
            if !(var > 0.0) {
                return Err(Error::InvalidArgument(format!(
                    "noise variance of {} must be positive, got {var}",
                    dag.label(v)
                )));
            }
            omega[v] = var;
        }
        if let Some(v) = omega.iter().position(|x| x.is_nan()) {
            return Err(Error::InvalidArgument(format!(
                "missing noise variance for {}",
                dag.label(v)
            )));
        }
        let topo = topological_order(&dag);
        Ok(LinearSEM { dag, weights: w, noise_variances: omega, topo })
    }

    /// Draws a model on `dag` deterministically from `seed`: edge weights
    /// uniform on `[−1, −0.1] ∪ [0.1, 1]` (bounded away from zero so causal
    /// effects cannot vanish by accident), noise variances uniform on
    /// `[0.5, 1.5]`.
    pub fn random(dag: &MixedGraph, seed: u64) -> Result<LinearSEM> {
        if dag.kind() != GraphKind::Dag {
            return Err(Error::KindNotSupported { op: "LinearSEM::random", kind: dag.kind() });
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = dag.n();
        let mut weights = vec![vec![0.0; n]; n];
        for (p, c) in dag.directed_edges() {
            let magnitude = rng.gen_range(0.1..=1.0);
            weights[p][c] = if rng.gen_bool(0.5) { magnitude } else { -magnitude };
        }
        let noise_variances = (0..n).map(|_| rng.gen_range(0.5..1.5)).collect();
        let topo = topological_order(dag);
        Ok(LinearSEM { dag: dag.clone(), weights, noise_variances, topo })
    }

    #[inline]
    pub fn dag(&self) -> &MixedGraph {
        &self.dag
    }

    /// Coefficient on the edge `p → c` (zero when there is no such edge).
    #[inline]
    pub fn weight(&self, p: usize, c: usize) -> f64 {
        self.weights[p][c]
    }

    #[inline]
    pub fn noise_variance(&self, v: usize) -> f64 {
        self.noise_variances[v]
    }
}

/// A topological order of a DAG: repeatedly emit the smallest vertex whose
/// parents were all emitted.
fn topological_order(dag: &MixedGraph) -> Vec<usize> {
    let n = dag.n();
    let mut remaining: Vec<usize> = (0..n).map(|v| dag.parents(v).len()).collect();
    let mut order = Vec::with_capacity(n);
    let mut done = vec![false; n];
    while order.len() < n {
        let v = (0..n)
            .find(|&v| !done[v] && remaining[v] == 0)
            .expect("internal error: DAG has no source vertex left");
        done[v] = true;
        order.push(v);
        for c in dag.children(v) {
            remaining[c] -= 1;
        }
    }
    order
}

/// The exact covariance matrix of the distribution the model describes,
/// computed by the parent recursion along a topological order:
/// `Cov(v, u) = Σ_p w(p→v)·Cov(p, u)` for `u` before `v`, and
/// `Var(v) = Σ_p Σ_q w(p→v)·w(q→v)·Cov(p, q) + noise_variance(v)`.
pub fn implied_covariance(sem: &LinearSEM) -> Vec<Vec<f64>> {
    let n = sem.dag.n();
    let mut sigma = vec![vec![0.0; n]; n];
    for (i, &v) in sem.topo.iter().enumerate() {
        let parents = sem.dag.parents(v);
        for &u in &sem.topo[..i] {
            let cov: f64 = parents.iter().map(|&p| sem.weights[p][v] * sigma[p][u]).sum();
            sigma[v][u] = cov;
            sigma[u][v] = cov;
        }
        let mut var = sem.noise_variances[v];
        for &p in &parents {
            for &q in &parents {
                var += sem.weights[p][v] * sem.weights[q][v] * sigma[p][q];
            }
        }
        sigma[v][v] = var;
    }
    sigma
}

/// `∂E[Y | do(X=x)]/∂x`: the sum over all directed paths from `x` to `y` of
/// the product of the edge weights along the path, evaluated by dynamic
/// programming along the topological order. Zero when `y` is not a
/// descendant of `x`, matching that an intervention on a non-ancestor leaves
/// the outcome distribution untouched.
pub fn interventional_effect(sem: &LinearSEM, x: usize, y: usize) -> Result<f64> {
    Ok(joint_interventional_effects(sem, &[x], y)?[0])
}

/// Per-treatment coefficients of `E[Y | do(X₁=x₁, …, X_k=x_k)]`: entry `i`
/// sums the weight products over directed paths from `xs[i]` to `y` that
/// avoid the other intervened vertices (their equations are replaced by the
/// intervention, so nothing propagates through them).
pub fn joint_interventional_effects(sem: &LinearSEM, xs: &[usize], y: usize) -> Result<Vec<f64>> {
    let n = sem.dag.n();
    for &v in xs.iter().chain([y].iter()) {
        if v >= n {
            return Err(Error::InvalidArgument(format!(
                "vertex index {v} out of range for {n} vertices"
            )));
        }
    }
    let mut distinct = xs.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() != xs.len() {
        return Err(Error::InvalidArgument("intervened vertices must be distinct".into()));
    }
    if distinct.binary_search(&y).is_ok() {
        return Err(Error::InvalidArgument("the outcome cannot be intervened on".into()));
    }
    let mut out = Vec::with_capacity(xs.len());
    for &x in xs {
        let mut eff = vec![0.0; n];
        eff[x] = 1.0;
        for &v in &sem.topo {
            if distinct.binary_search(&v).is_ok() {
                continue; // intervened: edges into it are severed
            }
            eff[v] = sem.dag.parents(v).iter().map(|&p| sem.weights[p][v] * eff[p]).sum();
        }
        out.push(eff[y]);
    }
    Ok(out)
}

/// Population least-squares coefficients of `y` on `regressors`, aligned
/// with the input order, from the implied covariance. The regressors must be
/// distinct and exclude `y`.
pub fn regression_coefficients(
    sem: &LinearSEM,
    y: usize,
    regressors: &[usize],
) -> Result<Vec<f64>> {
    let n = sem.dag.n();
    for &v in regressors.iter().chain([y].iter()) {
        if v >= n {
            return Err(Error::InvalidArgument(format!(
                "vertex index {v} out of range for {n} vertices"
            )));
        }
    }
    let mut sorted = regressors.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != regressors.len() {
        return Err(Error::InvalidArgument("regressors must be distinct".into()));
    }
    if sorted.binary_search(&y).is_ok() {
        return Err(Error::InvalidArgument("the response cannot also be a regressor".into()));
    }
    let sigma = implied_covariance(sem);
    let k = regressors.len();
    let a: Vec<Vec<f64>> =
        regressors.iter().map(|&u| regressors.iter().map(|&v| sigma[u][v]).collect()).collect();
    let b: Vec<f64> = regressors.iter().map(|&u| sigma[u][y]).collect();
    solve_spd(a, b, k)
}

/// The adjusted treatment effect: the coefficient of `x` in the population
/// regression of `y` on `{x} ∪ w`. This is the linear-Gaussian form of the
/// covariate-adjustment formula `E_W[f(y | w, x)]`.
pub fn adjusted_effect(sem: &LinearSEM, x: usize, y: usize, w: &[usize]) -> Result<f64> {
    if w.contains(&x) || w.contains(&y) {
        return Err(Error::InvalidArgument(
            "the adjustment set may contain neither the treatment nor the outcome".into(),
        ));
    }
    if x == y {
        return Err(Error::InvalidArgument("treatment and outcome must be distinct".into()));
    }
    let mut regressors = Vec::with_capacity(w.len() + 1);
    regressors.push(x);
    regressors.extend_from_slice(w);
    Ok(regression_coefficients(sem, y, &regressors)?[0])
}

/// Solves the symmetric positive definite system `A β = b` by Cholesky
/// factorization. Sizes here are at most the vertex count, so no pivoting or
/// blocking is needed.
fn solve_spd(mut a: Vec<Vec<f64>>, mut b: Vec<f64>, k: usize) -> Result<Vec<f64>> {
    // In-place lower Cholesky factor.
    for j in 0..k {
        for i in j..k {
            let mut sum = a[i][j];
            for l in 0..j {
                sum -= a[i][l] * a[j][l];
            }
            if i == j {
                if sum <= 0.0 {
                    return Err(Error::InvalidArgument(
                        "covariance submatrix is not positive definite".into(),
                    ));
                }
                a[j][j] = sum.sqrt();
            } else {
                a[i][j] = sum / a[j][j];
            }
        }
    }
    // Forward substitution L z = b, then back substitution Lᵀ β = z.
    for i in 0..k {
        for l in 0..i {
            b[i] -= a[i][l] * b[l];
        }
        b[i] /= a[i][i];
    }
    for i in (0..k).rev() {
        for l in (i + 1)..k {
            b[i] -= a[l][i] * b[l];
        }
        b[i] /= a[i][i];
    }
    Ok(b)
}

/// Result of one seed of [`adjustment_sweep`].
#[derive(Clone, Debug)]
pub struct SeedOutcome {
    pub seed: u64,
    /// Adjustment sets that passed the criterion and were therefore compared.
    pub sets_checked: usize,
    /// Largest `|adjusted − interventional|` among them (0 when none passed).
    pub max_deviation: f64,
}

/// Sweeps seeded random models and verifies the adjustment identity on every
/// covariate set that passes the generalized back-door criterion.
///
/// Per seed, one treatment/outcome pair is chosen deterministically and all
/// subsets of the remaining (observed) vertices are screened with the
/// criterion; each passing set must reproduce the interventional effect.
///
/// * DAG — criterion and both effects on the same random DAG.
/// * CPDAG — criterion on the completed pattern of a random DAG; effects on
///   every member of its equivalence class under fresh random weights, since
///   a density compatible with the CPDAG is one compatible with some member.
/// * MAG — criterion on the latent projection of a random DAG; both effects
///   on the *full* DAG over observed and latent vertices, whose marginal is
///   what the MAG describes.
///
/// Errors on PAG (no random generator exists for that kind).
pub fn adjustment_sweep(
    kind: GraphKind,
    seeds: u64,
    n: usize,
    density: f64,
) -> Result<Vec<SeedOutcome>> {
    if kind == GraphKind::Pag {
        return Err(Error::Unsupported(
            "no random PAG generator exists; validate DAG, CPDAG or MAG models".into(),
        ));
    }
    let mut outcomes = Vec::with_capacity(seeds as usize);
    for seed in 0..seeds {
        let outcome = match kind {
            GraphKind::Dag => sweep_dag_seed(seed, n, density)?,
            GraphKind::Cpdag => sweep_cpdag_seed(seed, n, density)?,
            GraphKind::Mag => sweep_mag_seed(seed, n, density)?,
            GraphKind::Pag => unreachable!(),
        };
        outcomes.push(outcome);
    }
    Ok(outcomes)
}

/// Deterministic treatment/outcome pair for a seed: distinct, cycling
/// through all ordered pairs as the seed grows.
fn seed_pair(seed: u64, n: usize) -> (usize, usize) {
    let x = (seed as usize) % n;
    let y = (x + 1 + (seed as usize / n) % (n - 1)) % n;
    (x, y)
}

/// All subsets of `pool`, smallest first, lexicographic within a size.
fn subsets_of(pool: &[usize]) -> Vec<Vec<usize>> {
    let m = pool.len();
    let mut out: Vec<Vec<usize>> = (0..1u64 << m)
        .map(|mask| (0..m).filter(|i| mask >> i & 1 == 1).map(|i| pool[i]).collect())
        .collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

fn sweep_dag_seed(seed: u64, n: usize, density: f64) -> Result<SeedOutcome> {
    let dag = random_graph(GraphKind::Dag, n, density, seed)?;
    let sem = LinearSEM::random(&dag, seed ^ 0x5eed)?;
    let (x, y) = seed_pair(seed, dag.n());
    let truth = interventional_effect(&sem, x, y)?;
    let pool: Vec<usize> = (0..dag.n()).filter(|&v| v != x && v != y).collect();
    let mut sets_checked = 0;
    let mut max_deviation: f64 = 0.0;
    for w in subsets_of(&pool) {
        if check_generalized_backdoor(&dag, &[x], &[y], &w)?.verdict {
            sets_checked += 1;
            let adjusted = adjusted_effect(&sem, x, y, &w)?;
            max_deviation = max_deviation.max((adjusted - truth).abs());
        }
    }
    Ok(SeedOutcome { seed, sets_checked, max_deviation })
}

fn sweep_cpdag_seed(seed: u64, n: usize, density: f64) -> Result<SeedOutcome> {
    let cpdag = random_graph(GraphKind::Cpdag, n, density, seed)?;
    let members = enumerate_cpdag_members(&cpdag)?;
    let (x, y) = seed_pair(seed, cpdag.n());
    let pool: Vec<usize> = (0..cpdag.n()).filter(|&v| v != x && v != y).collect();
    let passing: Vec<Vec<usize>> = subsets_of(&pool)
        .into_iter()
        .filter(|w| {
            check_generalized_backdoor(&cpdag, &[x], &[y], w).map(|r| r.verdict).unwrap_or(false)
        })
        .collect();
    let mut sets_checked = 0;
    let mut max_deviation: f64 = 0.0;
    for (k, member) in members.iter().enumerate() {
        let sem = LinearSEM::random(member, seed ^ (k as u64) << 17)?;
        let truth = interventional_effect(&sem, x, y)?;
        for w in &passing {
            sets_checked += 1;
            let adjusted = adjusted_effect(&sem, x, y, w)?;
            max_deviation = max_deviation.max((adjusted - truth).abs());
        }
    }
    Ok(SeedOutcome { seed, sets_checked, max_deviation })
}

fn sweep_mag_seed(seed: u64, n: usize, density: f64) -> Result<SeedOutcome> {
    let (full, latents) = random_dag_with_latents(n, density, seed)?;
    let mag = mag_projection(&full, &latents)?;
    let sem = LinearSEM::random(&full, seed ^ 0xa9)?;
    // Observed vertices keep their indices under projection: latent labels
    // sort after the observed ones.
    let (x, y) = seed_pair(seed, mag.n());
    let truth = interventional_effect(&sem, x, y)?;
    let pool: Vec<usize> = (0..mag.n()).filter(|&v| v != x && v != y).collect();
    let mut sets_checked = 0;
    let mut max_deviation: f64 = 0.0;
    for w in subsets_of(&pool) {
        if check_generalized_backdoor(&mag, &[x], &[y], &w)?.verdict {
            sets_checked += 1;
            let adjusted = adjusted_effect(&sem, x, y, &w)?;
            max_deviation = max_deviation.max((adjusted - truth).abs());
        }
    }
    Ok(SeedOutcome { seed, sets_checked, max_deviation })
}
