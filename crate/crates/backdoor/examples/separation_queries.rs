// SPDX-License-Identifier: MIT

//! m-connection and m-separation queries: test a specific path against a
//! conditioning set, search for any connecting path, and compute the
//! canonical D-SEP candidate set.
//!
//! ```text
//! cargo run --example separation_queries
//! ```

use backdoor::graph::{format_path, format_vertex_set, parse_graph};
use backdoor::separation::{d_sep_set, is_m_connecting, m_connecting_path, m_separated};
use backdoor::Result;

fn main() -> Result<()> {
    // A latent-confounding structure: conditioning on V2 blocks one
    // back-door path but opens another through the collider at V2.
    let g = parse_graph(
        "\
kind: MAG
V1 --> X
X <-> V2
X --> V3
V2 <-> V3
V2 --> V4
V3 --> V5
V4 --> Y
V5 --> Y
",
    )?;
    let x = g.index("X")?;
    let y = g.index("Y")?;
    let v2 = g.index("V2")?;

    for path in [vec![x, v2, g.index("V4")?, y], vec![x, v2, g.index("V3")?, g.index("V5")?, y]] {
        let verdict = is_m_connecting(&g, &path, &[v2])?;
        println!(
            "{} given {{V2}}: {}",
            format_path(&g, &path),
            if verdict.blocked { "blocked" } else { "m-connecting" }
        );
    }

    println!();
    println!("m-separated(X, Y | {{V2}}): {}", m_separated(&g, x, y, &[v2])?);
    match m_connecting_path(&g, x, y, &[v2])? {
        Some(p) => println!("first connecting path:     {}", format_path(&g, &p)),
        None => println!("no connecting path"),
    }

    println!();
    let d = d_sep_set(&g, x, y)?;
    println!("D-SEP(X, Y) = {}", format_vertex_set(&g, &d));
    Ok(())
}
