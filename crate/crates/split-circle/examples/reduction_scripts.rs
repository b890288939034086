//! Run the local-complementation reduction script of a sun member and find
//! the non-circle target it lands on.
//!
//! ```bash
//! cargo run --example reduction_scripts
//! ```

use split_circle::catalog::{apply_script, make_fsc, reduction_script, Family};

fn main() {
    for (family, k) in [(Family::OddSunCenter, 9), (Family::EvenSun, 8)] {
        let member = make_fsc(family, k).unwrap();
        let (seq, target) = reduction_script(&member).unwrap();
        println!("{}({k}): apply local complements at {seq:?}", family.name());
        let reduced = apply_script(&member.graph, &seq);
        let emb = reduced
            .find_induced(&target.graph(), None)
            .expect("script reaches its target");
        println!("  -> contains {target:?} on vertices {emb:?}");
    }
}
