//! The brute-force side: enumerate split graphs, test them with the chord
//! search oracle, and compare a couple of matrix engines against their
//! permutation oracles.
//!
//! ```bash
//! cargo run --release --example oracle_lab
//! ```

use split_circle::matrix::BitMatrix;
use split_circle::oracle::{enumerate_split_graphs, CircleOracle, OracleConfig};
use split_circle::twonested::oracle_is_nested;

fn main() {
    let oracle = CircleOracle::new(OracleConfig::default());
    for n in 1..=7usize {
        let graphs = enumerate_split_graphs(n);
        let circle = graphs.iter().filter(|g| oracle.is_circle(g).unwrap()).count();
        println!("n={n}: {:4} split classes, {circle:4} circle", graphs.len());
    }
    let m = BitMatrix::from_bools(&[&[1, 1, 0], &[0, 1, 1]]);
    println!(
        "0-gem example: is_nested={} oracle={}",
        m.is_nested(),
        oracle_is_nested(&m, 8).unwrap()
    );
}
