//! The enriched-matrix toolkit: parse the text format, decide
//! 2-nestedness, verify the certificate, and scan for forbidden
//! subconfigurations.
//!
//! ```bash
//! cargo run --example matrix_toolkit
//! ```

use split_circle::families::{detect_forbidden, is_admissible};
use split_circle::matrix::EnrichedMatrix;
use split_circle::twonested::{is_2nested, verify_certificate};

fn main() {
    let text = "4 4\nL red 1100\nU - 0110\nR blue 0011\nLR - 1001\n";
    let em = EnrichedMatrix::parse(text).unwrap();
    println!("input:\n{}", em.emit());
    match is_2nested(&em) {
        Ok(cert) => {
            println!("2-nested; ordering {:?}", cert.ordering);
            for b in &cert.blocks {
                println!("  row {} {:?} block {:#b} colored {}", b.row, b.kind, b.positions, b.color);
            }
            assert!(verify_certificate(&em, &cert));
        }
        Err(e) => println!("not 2-nested: {e:?}"),
    }

    let bad = EnrichedMatrix::parse("2 2\nL - 10\nL - 01\n").unwrap();
    println!("admissible: {}", is_admissible(&bad));
    for d in detect_forbidden(&bad, false) {
        println!("forbidden subconfiguration {} at rows {:?}", d.tag, d.rows);
    }
}
