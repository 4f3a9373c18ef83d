// SPDX-License-Identifier: MIT

//! Check candidate covariate sets against the generalized back-door
//! criterion and inspect the reported witness when a set fails.
//!
//! ```text
//! cargo run --example check_criterion
//! ```

use backdoor::criterion::{check_generalized_backdoor, CriterionWitness};
use backdoor::graph::{format_path, format_vertex_set, parse_graph, MixedGraph};
use backdoor::Result;

fn report(g: &MixedGraph, x: &[usize], y: &[usize], w: &[usize]) -> Result<()> {
    let r = check_generalized_backdoor(g, x, y, w)?;
    print!("W = {:<10} -> {}", format_vertex_set(g, w), r.verdict);
    if let Some(cond) = r.failed_condition {
        print!("  (fails {cond}: ");
        match r.witness.unwrap() {
            CriterionWitness::Vertex(v) => print!("{}", g.label(v)),
            CriterionWitness::PathFrom { path, .. } => print!("{}", format_path(g, &path)),
        }
        print!(")");
    }
    println!();
    Ok(())
}

fn main() -> Result<()> {
    // A confounded treatment: V1 confounds X and Y, V2 mediates X --> Y.
    let g = parse_graph(
        "\
kind: DAG
V1 --> X
V1 --> Y
X --> V2
V2 --> Y
",
    )?;
    let x = [g.index("X")?];
    let y = [g.index("Y")?];
    println!("single treatment, single outcome:");
    report(&g, &x, &y, &[])?;
    report(&g, &x, &y, &[g.index("V2")?])?;
    report(&g, &x, &y, &[g.index("V1")?])?;

    // Joint interventions may need no covariates at all: each back-door
    // path out of one treatment is blocked by the other treatment.
    let chain = parse_graph("kind: DAG\nX1 --> X2\nX2 --> X3\nX3 --> X4\nX3 --> Y\n")?;
    let xs = [chain.index("X1")?, chain.index("X3")?, chain.index("X4")?];
    println!();
    println!("joint treatment {{X1, X3, X4}}:");
    report(&chain, &xs, &[chain.index("Y")?], &[])?;
    Ok(())
}
