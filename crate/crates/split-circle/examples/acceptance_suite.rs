//! Run the full acceptance suite and print the pass/fail table (the same
//! checks as `splitcircle selfcheck` and the `acceptance` test target).
//!
//! ```bash
//! cargo run --release --example acceptance_suite
//! ```

use split_circle::oracle::OracleConfig;
use split_circle::selfcheck::{report, run_all};

fn main() {
    let results = run_all(&OracleConfig::default());
    print!("{}", report(&results));
}
