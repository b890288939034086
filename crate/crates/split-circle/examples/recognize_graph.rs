//! Recognize a split graph: run the structured pipeline and print the
//! verdict as JSON.
//!
//! ```bash
//! cargo run --example recognize_graph
//! ```

use split_circle::graph::Graph;
use split_circle::oracle::OracleConfig;
use split_circle::recognize::recognize;

fn main() {
    // the tent plus one extra stable vertex attached to two clique vertices
    let g = Graph::from_edges(
        7,
        &[
            (0, 1),
            (1, 2),
            (0, 2),
            (3, 0),
            (3, 1),
            (4, 1),
            (4, 2),
            (5, 2),
            (5, 0),
            (6, 0),
            (6, 1),
        ],
    );
    let out = recognize(&g, &OracleConfig::default()).expect("pipeline is total");
    println!("{}", serde_json::to_string_pretty(&out.verdict).unwrap());
}
