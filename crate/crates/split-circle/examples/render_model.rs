//! Render a chord model as SVG (written to stdout).
//!
//! ```bash
//! cargo run --example render_model > model.svg
//! ```

use split_circle::chord::ChordModel;
use split_circle::svg::render_svg;

fn main() {
    let model = ChordModel::parse("0 1 2 0 3 1 2 3").unwrap();
    print!("{}", render_svg(&model));
}
