// SPDX-License-Identifier: MIT

//! `backdoor`: command-line front end for the causal-graph library.
//!
//! Every subcommand reads a graph file (`kind:` header plus one edge per
//! line), runs one library capability, and prints a deterministic report:
//!
//! * `check` — generalized back-door criterion for a covariate set (JSON).
//! * `find` — existence + construction of a back-door set for (X, Y).
//! * `dsep` — the canonical separating set D-SEP(X, Y).
//! * `visible` — visibility verdict and witness for every directed edge.
//! * `paths` — definite status paths between two vertices.
//! * `enumerate` — the DAG members of a CPDAG's equivalence class.
//! * `validate-gaussian` — numeric adjustment check on random linear SEMs.
//!
//! Exit codes are a contract: 0 criterion-holds/set-found, 1
//! criterion-fails/no-set, 2 usage or input error (single-line diagnostic
//! on stderr).

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use backdoor::criterion::{check_generalized_backdoor, CriterionWitness};
use backdoor::gaussian::adjustment_sweep;
use backdoor::graph::{
    definite_status_paths, format_path, format_vertex_set, parse_graph, GraphKind, MixedGraph,
};
use backdoor::oracle::enumerate_cpdag_members;
use backdoor::search::{find_backdoor_set, minimal_backdoor_sets, BackdoorSearch};
use backdoor::separation::d_sep_set;
use backdoor::visibility::{back_door_paths, visibility_witness};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

/// Appends one formatted line to the output buffer (a `println!` that
/// defers the actual I/O to the end of the run).
macro_rules! outln {
    ($out:expr, $($t:tt)*) => {{
        use std::fmt::Write as _;
        writeln!($out, $($t)*).expect("writing to a String cannot fail");
    }};
}

#[derive(Parser)]
#[command(name = "backdoor", version, about = "Back-door criterion queries on causal graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the generalized back-door criterion for W relative to (X, Y).
    Check {
        /// Graph file.
        #[arg(short, long)]
        graph: PathBuf,
        /// Treatment vertices, comma-separated.
        #[arg(short)]
        x: String,
        /// Outcome vertices, comma-separated.
        #[arg(short)]
        y: String,
        /// Covariate vertices, comma-separated; empty string for ∅.
        #[arg(short, default_value = "")]
        w: String,
    },
    /// Find a generalized back-door set relative to (X, Y), if one exists.
    Find {
        /// Graph file.
        #[arg(short, long)]
        graph: PathBuf,
        /// Treatment vertex.
        #[arg(short)]
        x: String,
        /// Outcome vertex.
        #[arg(short)]
        y: String,
        /// Also list all inclusion-minimal back-door sets.
        #[arg(long)]
        minimal: bool,
        /// Emit the full diagnostics as JSON instead of plain text.
        #[arg(long)]
        json: bool,
    },
    /// Print D-SEP(X, Y): the canonical separating set.
    Dsep {
        /// Graph file.
        #[arg(short, long)]
        graph: PathBuf,
        /// First endpoint.
        #[arg(short)]
        x: String,
        /// Second endpoint.
        #[arg(short)]
        y: String,
    },
    /// Report visibility of every directed edge, with witnesses.
    Visible {
        /// Graph file.
        #[arg(short, long)]
        graph: PathBuf,
    },
    /// List definite status paths from X to Y, one per line.
    Paths {
        /// Graph file.
        #[arg(short, long)]
        graph: PathBuf,
        /// Source vertex.
        #[arg(short)]
        x: String,
        /// Target vertex.
        #[arg(short)]
        y: String,
        /// Keep only back-door paths (first edge not visibly out of X).
        #[arg(long)]
        backdoor: bool,
    },
    /// Write every DAG member of a CPDAG's equivalence class to a directory.
    Enumerate {
        /// Graph file (must be a CPDAG).
        #[arg(short, long)]
        graph: PathBuf,
        /// Output directory for member_<k>.dag files.
        #[arg(short, long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// Compare regression-adjusted and interventional effects on random
    /// linear-Gaussian models, for every criterion-passing covariate set.
    ValidateGaussian {
        /// Graph kind to sweep.
        #[arg(long, value_enum)]
        kind: SweepKind,
        /// Number of random models.
        #[arg(long)]
        seeds: u64,
        /// Vertices per model.
        #[arg(long, default_value_t = 7)]
        n: usize,
        /// Edge density in [0, 1].
        #[arg(long, default_value_t = 0.4)]
        density: f64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SweepKind {
    Dag,
    Cpdag,
    Mag,
}

impl From<SweepKind> for GraphKind {
    fn from(k: SweepKind) -> GraphKind {
        match k {
            SweepKind::Dag => GraphKind::Dag,
            SweepKind::Cpdag => GraphKind::Cpdag,
            SweepKind::Mag => GraphKind::Mag,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let result = run(cli, &mut out);

    // Deliver the buffered report in one write. A consumer that closed the
    // pipe early (e.g. `| head`) truncates the report, never the verdict.
    if let Err(e) = std::io::stdout().write_all(out.as_bytes()) {
        if e.kind() != std::io::ErrorKind::BrokenPipe {
            eprintln!("error: cannot write to stdout: {e}");
            return ExitCode::from(2);
        }
    }
    match result {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli, out: &mut String) -> Result<u8, String> {
    match cli.command {
        Command::Check { graph, x, y, w } => check(out, &graph, &x, &y, &w),
        Command::Find { graph, x, y, minimal, json } => find(out, &graph, &x, &y, minimal, json),
        Command::Dsep { graph, x, y } => dsep(out, &graph, &x, &y),
        Command::Visible { graph } => visible(out, &graph),
        Command::Paths { graph, x, y, backdoor } => paths(out, &graph, &x, &y, backdoor),
        Command::Enumerate { graph, out_dir } => enumerate(out, &graph, &out_dir),
        Command::ValidateGaussian { kind, seeds, n, density } => {
            validate_gaussian(out, kind.into(), seeds, n, density)
        }
    }
}

/// Reads and parses a graph file, with single-line diagnostics.
fn load_graph(path: &Path) -> Result<MixedGraph, String> {
    let text =
        fs::read_to_string(path).map_err(|e| format!("cannot read `{}`: {e}", path.display()))?;
    parse_graph(&text).map_err(|e| format!("{}: {e}", path.display()))
}

/// Resolves a comma-separated label list; the empty string is ∅.
fn vertex_list(g: &MixedGraph, list: &str) -> Result<Vec<usize>, String> {
    if list.is_empty() {
        return Ok(Vec::new());
    }
    list.split(',').map(|label| g.index(label).map_err(|e| e.to_string())).collect()
}

/// Resolves a single vertex label.
fn vertex(g: &MixedGraph, label: &str) -> Result<usize, String> {
    g.index(label).map_err(|e| e.to_string())
}

fn check(out: &mut String, path: &Path, x: &str, y: &str, w: &str) -> Result<u8, String> {
    let g = load_graph(path)?;
    let x = vertex_list(&g, x)?;
    let y = vertex_list(&g, y)?;
    let w = vertex_list(&g, w)?;
    let report = check_generalized_backdoor(&g, &x, &y, &w).map_err(|e| e.to_string())?;

    let labels = |set: &[usize]| -> Vec<&str> { set.iter().map(|&v| g.label(v)).collect() };
    let witness = match &report.witness {
        None => serde_json::Value::Null,
        Some(CriterionWitness::Vertex(v)) => json!({
            "type": "vertex",
            "vertex": g.label(*v),
        }),
        Some(CriterionWitness::PathFrom { source, path }) => json!({
            "type": "path",
            "source": g.label(*source),
            "path": labels(path),
            "rendered": format_path(&g, path),
        }),
    };
    let report_json = json!({
        "schema": 1,
        "kind": g.kind().to_string(),
        "x": labels(&x),
        "y": labels(&y),
        "w": labels(&w),
        "verdict": report.verdict,
        "failed_condition": report.failed_condition.map(|c| c.to_string()),
        "witness": witness,
    });
    outln!(out, "{}", serde_json::to_string_pretty(&report_json).expect("report serializes"));
    Ok(u8::from(!report.verdict))
}

/// The plain-text reason for a negative `find` verdict. Adjacency is
/// reported first: when Y is still adjacent to X in R_X no separating set
/// can exist regardless of the intersection.
fn none_reason(g: &MixedGraph, search: &BackdoorSearch) -> String {
    if search.y_adjacent_in_lower {
        "NONE (Y adjacent to X in R_X)".to_string()
    } else {
        format!("NONE (intersection: {})", format_vertex_set(g, &search.intersection))
    }
}

fn find(
    out: &mut String,
    path: &Path,
    x: &str,
    y: &str,
    minimal: bool,
    as_json: bool,
) -> Result<u8, String> {
    let g = load_graph(path)?;
    let x = vertex(&g, x)?;
    let y = vertex(&g, y)?;
    let search = find_backdoor_set(&g, x, y).map_err(|e| e.to_string())?;
    let minimal_sets = match (minimal, &search.set) {
        (true, Some(_)) => Some(minimal_backdoor_sets(&g, x, y).map_err(|e| e.to_string())?),
        _ => None,
    };

    if as_json {
        let labels = |set: &[usize]| -> Vec<&str> { set.iter().map(|&v| g.label(v)).collect() };
        let report = json!({
            "schema": 1,
            "kind": g.kind().to_string(),
            "x": g.label(x),
            "y": g.label(y),
            "set": search.set.as_deref().map(labels),
            "d_sep": labels(&search.d_sep),
            "possible_de": labels(&search.possible_de),
            "intersection": labels(&search.intersection),
            "y_adjacent_in_lower": search.y_adjacent_in_lower,
            "representative": search.representative.r.to_text(),
            "representative_lower": search.representative.r_lower.to_text(),
            "minimal_sets": minimal_sets
                .as_ref()
                .map(|sets| sets.iter().map(|s| labels(s)).collect::<Vec<_>>()),
        });
        outln!(out, "{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    } else {
        match &search.set {
            Some(set) => {
                outln!(out, "{}", format_vertex_set(&g, set));
                for m in minimal_sets.iter().flatten() {
                    outln!(out, "minimal: {}", format_vertex_set(&g, m));
                }
            }
            None => outln!(out, "{}", none_reason(&g, &search)),
        }
    }
    Ok(u8::from(search.set.is_none()))
}

fn dsep(out: &mut String, path: &Path, x: &str, y: &str) -> Result<u8, String> {
    let g = load_graph(path)?;
    let x = vertex(&g, x)?;
    let y = vertex(&g, y)?;
    let set = d_sep_set(&g, x, y).map_err(|e| e.to_string())?;
    outln!(out, "{}", format_vertex_set(&g, &set));
    Ok(0)
}

fn visible(out: &mut String, path: &Path) -> Result<u8, String> {
    let g = load_graph(path)?;
    for (a, b) in g.directed_edges() {
        let edge = format_path(&g, &[a, b]);
        match visibility_witness(&g, a, b).map_err(|e| e.to_string())? {
            Some(w) => {
                let along = format_path(&g, &w.path);
                outln!(out, "{edge}: visible (witness {}, path {along})", g.label(w.c));
            }
            // DAG/CPDAG directed edges are visible by definition, witness
            // or not; on MAGs/PAGs no witness means invisible.
            None if matches!(g.kind(), GraphKind::Dag | GraphKind::Cpdag) => {
                outln!(out, "{edge}: visible (by kind)");
            }
            None => outln!(out, "{edge}: invisible"),
        }
    }
    Ok(0)
}

fn paths(
    out: &mut String,
    path: &Path,
    x: &str,
    y: &str,
    backdoor_only: bool,
) -> Result<u8, String> {
    let g = load_graph(path)?;
    let x = vertex(&g, x)?;
    let y = vertex(&g, y)?;
    let paths = if backdoor_only {
        back_door_paths(&g, x, y).map_err(|e| e.to_string())?
    } else {
        definite_status_paths(&g, x, y)
    };
    for p in &paths {
        outln!(out, "{}", format_path(&g, p));
    }
    Ok(0)
}

fn enumerate(out: &mut String, path: &Path, out_dir: &Path) -> Result<u8, String> {
    let g = load_graph(path)?;
    let members = enumerate_cpdag_members(&g).map_err(|e| e.to_string())?;
    fs::create_dir_all(out_dir)
        .map_err(|e| format!("cannot create `{}`: {e}", out_dir.display()))?;
    for (k, member) in members.iter().enumerate() {
        let file = out_dir.join(format!("member_{k}.dag"));
        fs::write(&file, member.to_text())
            .map_err(|e| format!("cannot write `{}`: {e}", file.display()))?;
        outln!(out, "wrote {}", file.display());
    }
    outln!(out, "{} members", members.len());
    Ok(0)
}

fn validate_gaussian(
    out: &mut String,
    kind: GraphKind,
    seeds: u64,
    n: usize,
    density: f64,
) -> Result<u8, String> {
    const TOLERANCE: f64 = 1e-8;
    let outcomes = adjustment_sweep(kind, seeds, n, density).map_err(|e| e.to_string())?;
    let mut worst: f64 = 0.0;
    let mut total_sets = 0usize;
    for o in &outcomes {
        outln!(
            out,
            "seed {}: {} sets, max deviation {:.2e}",
            o.seed,
            o.sets_checked,
            o.max_deviation
        );
        worst = worst.max(o.max_deviation);
        total_sets += o.sets_checked;
    }
    outln!(out, "worst deviation {worst:.2e} over {} seeds ({total_sets} sets)", outcomes.len());
    Ok(u8::from(worst > TOLERANCE))
}
