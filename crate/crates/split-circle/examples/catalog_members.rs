//! Walk the catalog of minimal non-circle split graphs and emit one member
//! in the graph text format.
//!
//! ```bash
//! cargo run --example catalog_members
//! ```

use split_circle::catalog::{make_fsc, members_up_to, Family};

fn main() {
    println!("members with at most 10 vertices:");
    for m in members_up_to(10) {
        println!("  {:16} k={:2}  n={}", m.family.name(), m.k, m.graph.n());
    }
    let member = make_fsc(Family::F0, 0).unwrap();
    println!("\nthe F0 member:\n{}", member.graph.emit());
    println!("clique: {:?}", member.partition.k);
    println!("stable: {:?}", member.partition.s);
}
