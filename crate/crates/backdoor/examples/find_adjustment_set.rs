// SPDX-License-Identifier: MIT

//! Decide whether any generalized back-door set exists for a pair (X, Y),
//! construct one when it does, shrink it to the inclusion-minimal ones, and
//! read the diagnostics when none exists.
//!
//! ```text
//! cargo run --example find_adjustment_set
//! ```

use backdoor::graph::{format_vertex_set, parse_graph, MixedGraph};
use backdoor::search::{find_backdoor_set, minimal_backdoor_sets};
use backdoor::Result;

fn run(title: &str, g: &MixedGraph) -> Result<()> {
    let x = g.index("X")?;
    let y = g.index("Y")?;
    println!("{title} ({}):", g.kind());
    let search = find_backdoor_set(g, x, y)?;
    println!("  D-SEP        = {}", format_vertex_set(g, &search.d_sep));
    println!("  possibleDe   = {}", format_vertex_set(g, &search.possible_de));
    match &search.set {
        Some(set) => {
            println!("  found        = {}", format_vertex_set(g, set));
            let minimal = minimal_backdoor_sets(g, x, y)?;
            let rendered: Vec<String> = minimal.iter().map(|m| format_vertex_set(g, m)).collect();
            println!("  minimal      = {}", rendered.join(", "));
        }
        None if search.y_adjacent_in_lower => {
            println!("  none: Y stays adjacent to X after removing visible edges");
        }
        None => {
            println!(
                "  none: D-SEP meets possibleDe(X) in {}",
                format_vertex_set(g, &search.intersection)
            );
        }
    }
    println!();
    Ok(())
}

fn main() -> Result<()> {
    // Identifiable: the treatment's parents block everything.
    let ok = parse_graph(
        "\
kind: CPDAG
V1 --> X
V3 --> X
V1 --> V2
V3 --> V2
V2 --> V4
Y --> V4
X o-o V2
",
    )?;
    run("undetermined mediator, determined confounders", &ok)?;

    // Not identifiable: the only candidates are possible descendants of X.
    let blocked = parse_graph(
        "\
kind: CPDAG
V1 --> X
V3 --> X
V1 --> V2
V3 --> V2
V1 --> Y
V3 --> Y
X o-o V2
V2 o-o Y
",
    )?;
    run("possibly mediated outcome", &blocked)?;

    // Not identifiable for a different reason: the single treatment edge
    // is invisible, so it survives into the lower-manipulated graph.
    run("invisible treatment edge", &parse_graph("kind: MAG\nX --> Y\n")?)?;
    Ok(())
}
