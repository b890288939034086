//! Build a chord model for a circle split graph and check its
//! interlacement graph reproduces the input exactly.
//!
//! ```bash
//! cargo run --example build_chord_model
//! ```

use split_circle::graph::Graph;
use split_circle::oracle::OracleConfig;
use split_circle::recognize::{recognize, VerdictStatus};

fn main() {
    // a 4-tent with an extra clique vertex and an extra stable vertex
    let g = Graph::from_edges(
        9,
        &[
            (0, 1),
            (0, 2),
            (0, 3),
            (1, 2),
            (1, 3),
            (2, 3),
            (4, 0),
            (4, 1),
            (5, 1),
            (5, 2),
            (6, 2),
            (6, 3),
            (7, 0),
            (7, 1),
            (7, 2),
            (7, 3),
            (8, 0),
        ],
    );
    let out = recognize(&g, &OracleConfig::default()).unwrap();
    assert_eq!(out.verdict.status, VerdictStatus::Circle);
    let model = out.model.expect("circle graphs at this size get a model");
    println!("word: {}", model.emit().trim());
    for arc in &model.arcs {
        println!("  arc {:4}  positions {}..{}", arc.name, arc.start, arc.start + arc.len);
    }
    assert_eq!(model.interlacement(), g);
    println!("interlacement matches the input graph");
}
