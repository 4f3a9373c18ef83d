// SPDX-License-Identifier: MIT

//! Parse a graph from its text form and run basic structural queries:
//! adjacency, edge orientation, and the four reachability sets.
//!
//! ```text
//! cargo run --example parse_and_query
//! ```

use backdoor::graph::{
    ancestors, descendants, format_path, format_vertex_set, parse_graph, possible_ancestors,
    possible_descendants,
};
use backdoor::Result;

fn main() -> Result<()> {
    let text = "\
kind: PAG
V1 o-> X
V2 o-> X
V1 o-> V3
V2 o-> V3
X o-o V3
X --> Y
V3 --> V4
Y --> V4
";
    let g = parse_graph(text)?;
    println!("kind: {}", g.kind());
    println!("vertices: {}", g.labels().join(", "));
    println!("edges:");
    for edge in g.edges() {
        println!("  {}", format_path(&g, &[edge.u, edge.v]));
    }

    let x = g.index("X")?;
    let y = g.index("Y")?;
    println!();
    println!("X and Y adjacent: {}", g.adjacent(x, y));
    println!("X --> Y directed:  {}", g.is_directed(x, y));
    println!();
    for (name, set) in [
        ("an(X)", ancestors(&g, &[x])),
        ("de(X)", descendants(&g, &[x])),
        ("possibleAn(X)", possible_ancestors(&g, &[x])),
        ("possibleDe(X)", possible_descendants(&g, &[x])),
    ] {
        println!("{name:>14} = {}", format_vertex_set(&g, &set));
    }

    // The canonical serialization round-trips.
    assert_eq!(parse_graph(&g.to_text())?, g);
    Ok(())
}
