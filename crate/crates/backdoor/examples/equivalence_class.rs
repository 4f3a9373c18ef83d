// SPDX-License-Identifier: MIT

//! Walk a Markov equivalence class: enumerate every DAG a CPDAG stands for,
//! rebuild the pattern from each member, and pick the class representative
//! used by the back-door search.
//!
//! ```text
//! cargo run --example equivalence_class
//! ```

use backdoor::graph::{parse_graph, GraphKind};
use backdoor::oracle::{cpdag_of, enumerate_cpdag_members};
use backdoor::search::construct_representative;
use backdoor::Result;

fn main() -> Result<()> {
    // Three undetermined edges around X, one determined collider at V4.
    let cpdag = parse_graph(
        "\
kind: CPDAG
X o-o V1
V1 o-o V2
X o-o V2
V2 --> V4
V3 --> V4
",
    )?;

    let members = enumerate_cpdag_members(&cpdag)?;
    println!("the pattern stands for {} DAGs:", members.len());
    for (k, member) in members.iter().enumerate() {
        let arrows: Vec<String> = member
            .directed_edges()
            .iter()
            .map(|&(a, b)| format!("{} --> {}", member.label(a), member.label(b)))
            .collect();
        println!("  member {k}: {}", arrows.join(", "));

        // Recompleting any member gives back the pattern we started from.
        assert_eq!(cpdag_of(member)?, cpdag);
    }

    // The search replaces the pattern by one member with no extra edge
    // pointing at X; every undetermined edge at X is oriented outward.
    let x = cpdag.index("X")?;
    let rep = construct_representative(&cpdag, x)?;
    assert_eq!(rep.r.kind(), GraphKind::Dag);
    assert!(members.contains(&rep.r));
    println!("\nrepresentative for X:");
    print!("{}", rep.r.to_text());
    Ok(())
}
