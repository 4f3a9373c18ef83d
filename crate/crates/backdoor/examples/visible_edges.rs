// SPDX-License-Identifier: MIT

//! Classify every directed edge of a MAG as visible or invisible. A visible
//! edge is certified free of hidden confounding by a witness configuration;
//! an invisible one may owe its existence to a latent common cause.
//!
//! ```text
//! cargo run --example visible_edges
//! ```

use backdoor::graph::{format_path, parse_graph};
use backdoor::visibility::visibility_witness;
use backdoor::Result;

fn main() -> Result<()> {
    let g = parse_graph(
        "\
kind: MAG
V1 --> X
V2 --> X
V1 --> V3
V2 --> V3
X --> V3
X --> Y
V3 --> V4
Y --> V4
",
    )?;
    for (a, b) in g.directed_edges() {
        match visibility_witness(&g, a, b)? {
            Some(w) => println!(
                "{} --> {}: visible    (witness {}, arriving along {})",
                g.label(a),
                g.label(b),
                g.label(w.c),
                format_path(&g, &w.path)
            ),
            None => println!("{} --> {}: invisible", g.label(a), g.label(b)),
        }
    }

    // A single directed edge with nothing pointing at its tail is the
    // textbook invisible edge.
    let lone = parse_graph("kind: MAG\nX --> Y\n")?;
    let (x, y) = (lone.index("X")?, lone.index("Y")?);
    println!();
    println!(
        "lone X --> Y: {}",
        if visibility_witness(&lone, x, y)?.is_some() { "visible" } else { "invisible" }
    );
    Ok(())
}
