//! Extract a forbidden-subgraph witness from a non-circle split graph and
//! verify that it is a genuine induced embedding.
//!
//! ```bash
//! cargo run --example extract_witness
//! ```

use split_circle::catalog::{make_fsc, Family};
use split_circle::graph::Graph;
use split_circle::oracle::OracleConfig;
use split_circle::recognize::{recognize, VerdictStatus};

fn main() {
    // a 5-sun with center plus an extra isolated stable vertex
    let base = make_fsc(Family::OddSunCenter, 5).unwrap().graph;
    let mut g = Graph::new(base.n() + 1);
    for (u, v) in base.edges() {
        g.add_edge(u, v);
    }

    let out = recognize(&g, &OracleConfig::default()).unwrap();
    assert_eq!(out.verdict.status, VerdictStatus::NotCircle);
    let (family, k, embedding) = out.witness.expect("non-circle verdicts carry a witness");
    println!("witness: {}({k}) on vertices {embedding:?}", family.name());

    // double-check the embedding is induced
    let member = make_fsc(family, k).unwrap().graph;
    for i in 0..member.n() {
        for j in 0..member.n() {
            if i != j {
                assert_eq!(member.has_edge(i, j), g.has_edge(embedding[i], embedding[j]));
            }
        }
    }
    println!("embedding verified induced");
}
