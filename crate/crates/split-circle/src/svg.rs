//! Deterministic SVG rendering of chord models: a unit circle with 2n
//! equally spaced endpoints in word order, straight chords, and arc labels
//! when annotations are present.

use crate::chord::ChordModel;

const SIZE: f64 = 480.0;
const R: f64 = 200.0;
const CX: f64 = 240.0;
const CY: f64 = 240.0;

fn endpoint(idx: usize, total: usize) -> (f64, f64) {
    let theta = 2.0 * std::f64::consts::PI * idx as f64 / total as f64
        - std::f64::consts::FRAC_PI_2;
    (CX + R * theta.cos(), CY + R * theta.sin())
}

pub fn render_svg(model: &ChordModel) -> String {
    let word = &model.word;
    let total = word.len().max(1);
    let mut first: std::collections::HashMap<usize, usize> = std::collections::HashMap::new();
    let mut chords: Vec<(usize, usize, usize)> = Vec::new(); // (v, i, j)
    for (i, &v) in word.iter().enumerate() {
        match first.get(&v) {
            None => {
                first.insert(v, i);
            }
            Some(&j) => chords.push((v, j, i)),
        }
    }
    chords.sort();
    let mut s = String::new();
    s.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">\n"
    ));
    s.push_str(&format!(
        "  <circle cx=\"{CX}\" cy=\"{CY}\" r=\"{R}\" fill=\"none\" stroke=\"#888\" stroke-width=\"1\"/>\n"
    ));
    for &(v, i, j) in &chords {
        let (x1, y1) = endpoint(i, total);
        let (x2, y2) = endpoint(j, total);
        s.push_str(&format!(
            "  <line x1=\"{x1:.2}\" y1=\"{y1:.2}\" x2=\"{x2:.2}\" y2=\"{y2:.2}\" stroke=\"#335\" stroke-width=\"1.5\"><title>{v}</title></line>\n"
        ));
    }
    for (i, &v) in word.iter().enumerate() {
        let (x, y) = endpoint(i, total);
        let (lx, ly) = {
            let theta = 2.0 * std::f64::consts::PI * i as f64 / total as f64
                - std::f64::consts::FRAC_PI_2;
            (CX + (R + 14.0) * theta.cos(), CY + (R + 14.0) * theta.sin())
        };
        s.push_str(&format!(
            "  <circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"2.5\" fill=\"#c33\"/>\n"
        ));
        s.push_str(&format!(
            "  <text x=\"{lx:.2}\" y=\"{ly:.2}\" font-size=\"10\" text-anchor=\"middle\" dominant-baseline=\"middle\">{v}</text>\n"
        ));
    }
    // arc annotations: label at the midpoint of each span
    for arc in &model.arcs {
        if arc.len == 0 {
            continue;
        }
        let mid = arc.start as f64 + arc.len as f64 / 2.0;
        let theta = 2.0 * std::f64::consts::PI * mid / total as f64 - std::f64::consts::FRAC_PI_2;
        let (x, y) = (CX + (R + 30.0) * theta.cos(), CY + (R + 30.0) * theta.sin());
        s.push_str(&format!(
            "  <text x=\"{x:.2}\" y=\"{y:.2}\" font-size=\"12\" fill=\"#070\" text-anchor=\"middle\" dominant-baseline=\"middle\">{}</text>\n",
            arc.name
        ));
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_crossing_chords() {
        let m = ChordModel::new(vec![0, 1, 0, 1]).unwrap();
        let svg = render_svg(&m);
        assert_eq!(svg.matches("<line").count(), 2);
        assert!(svg.starts_with("<svg"));
    }

    #[test]
    fn deterministic_output() {
        let m = ChordModel::new(vec![0, 1, 2, 0, 1, 2]).unwrap();
        assert_eq!(render_svg(&m), render_svg(&m));
    }
}
