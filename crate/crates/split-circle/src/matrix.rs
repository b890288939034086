//! 0/1 matrices and enriched matrices (rows labelled U/L/R/LR, optionally
//! coloured red or blue), plus nestedness via 0-gem detection.

use std::fmt;

use crate::error::MatrixError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RowLabel {
    U,
    L,
    R,
    LR,
}

impl fmt::Display for RowLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RowLabel::U => "U",
            RowLabel::L => "L",
            RowLabel::R => "R",
            RowLabel::LR => "LR",
        };
        write!(f, "{s}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    Red,
    Blue,
}

impl Color {
    pub fn flip(self) -> Color {
        match self {
            Color::Red => Color::Blue,
            Color::Blue => Color::Red,
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", if *self == Color::Red { "red" } else { "blue" })
    }
}

/// A plain 0/1 matrix with rows as bitmasks (at most 128 columns).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    pub ncols: usize,
    pub rows: Vec<u128>,
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}:", self.rows.len(), self.ncols)?;
        for r in &self.rows {
            for c in 0..self.ncols {
                write!(f, "{}", (r >> c) & 1)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl BitMatrix {
    pub fn new(ncols: usize) -> BitMatrix {
        assert!(ncols <= 128);
        BitMatrix { ncols, rows: Vec::new() }
    }

    pub fn from_rows(ncols: usize, rows: Vec<u128>) -> BitMatrix {
        BitMatrix { ncols, rows }
    }

    pub fn from_bools(data: &[&[u8]]) -> BitMatrix {
        let ncols = data.first().map_or(0, |r| r.len());
        let rows = data
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(_, &b)| b != 0)
                    .map(|(i, _)| 1u128 << i)
                    .sum()
            })
            .collect();
        BitMatrix { ncols, rows }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r] >> c & 1 == 1
    }

    pub fn col_mask(&self) -> u128 {
        if self.ncols == 128 {
            !0
        } else {
            (1u128 << self.ncols) - 1
        }
    }

    /// First 0-gem as (row pair, column triple), if any. Columns are
    /// (only-in-first, shared, only-in-second). A 0-gem is two rows that
    /// overlap: non-disjoint and non-nested.
    pub fn find_zero_gem(&self) -> Option<((usize, usize), (usize, usize, usize))> {
        for i in 0..self.rows.len() {
            for j in i + 1..self.rows.len() {
                let a = self.rows[i];
                let b = self.rows[j];
                let shared = a & b;
                if shared != 0 && a & !b != 0 && b & !a != 0 {
                    let c1 = (a & !b).trailing_zeros() as usize;
                    let c2 = shared.trailing_zeros() as usize;
                    let c3 = (b & !a).trailing_zeros() as usize;
                    return Some(((i, j), (c1, c2, c3)));
                }
            }
        }
        None
    }

    /// Nested: some consecutive-ones ordering exists in which all row pairs
    /// are disjoint or nested; equivalently, no 0-gem.
    pub fn is_nested(&self) -> bool {
        self.find_zero_gem().is_none()
    }

    pub fn permuted_columns(&self, perm: &[usize]) -> BitMatrix {
        // column c of the result is column perm[c] of self
        let rows = self
            .rows
            .iter()
            .map(|&r| {
                let mut out = 0u128;
                for (c, &p) in perm.iter().enumerate() {
                    if r >> p & 1 == 1 {
                        out |= 1 << c;
                    }
                }
                out
            })
            .collect();
        BitMatrix { ncols: self.ncols, rows }
    }
}

/// An enriched 0/1 matrix: per-row label and optional colour. Invariants
/// (checked by [`EnrichedMatrix::validate`]):
/// only L-rows, R-rows and all-zero LR-rows may be coloured, and all
/// all-zero LR-rows carry the same colour.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EnrichedMatrix {
    pub mat: BitMatrix,
    pub labels: Vec<RowLabel>,
    pub colors: Vec<Option<Color>>,
}

impl EnrichedMatrix {
    pub fn new(mat: BitMatrix, labels: Vec<RowLabel>, colors: Vec<Option<Color>>) -> EnrichedMatrix {
        EnrichedMatrix { mat, labels, colors }
    }

    pub fn uncolored(mat: BitMatrix, labels: Vec<RowLabel>) -> EnrichedMatrix {
        let colors = vec![None; mat.nrows()];
        EnrichedMatrix { mat, labels, colors }
    }

    pub fn plain(mat: BitMatrix) -> EnrichedMatrix {
        let n = mat.nrows();
        EnrichedMatrix {
            mat,
            labels: vec![RowLabel::U; n],
            colors: vec![None; n],
        }
    }

    pub fn nrows(&self) -> usize {
        self.mat.nrows()
    }

    pub fn ncols(&self) -> usize {
        self.mat.ncols
    }

    pub fn row_is_empty(&self, r: usize) -> bool {
        self.mat.rows[r] == 0
    }

    pub fn validate(&self) -> Result<(), MatrixError> {
        if self.labels.len() != self.nrows() || self.colors.len() != self.nrows() {
            return Err(MatrixError::Invalid("row metadata length mismatch".into()));
        }
        let mut empty_lr_color: Option<Color> = None;
        for r in 0..self.nrows() {
            if let Some(c) = self.colors[r] {
                let allowed = match self.labels[r] {
                    RowLabel::L | RowLabel::R => true,
                    RowLabel::LR => self.row_is_empty(r),
                    RowLabel::U => false,
                };
                if !allowed {
                    return Err(MatrixError::Invalid(format!(
                        "row {r} may not be colored"
                    )));
                }
                if self.labels[r] == RowLabel::LR && self.row_is_empty(r) {
                    match empty_lr_color {
                        None => empty_lr_color = Some(c),
                        Some(c0) if c0 != c => {
                            return Err(MatrixError::Invalid(
                                "all-zero LR-rows must share one color".into(),
                            ))
                        }
                        _ => {}
                    }
                }
            }
        }
        // uncolored empty LR-rows are fine (color left free), but mixing a
        // colored one with an uncolored one is still one shared color choice,
        // so accept it
        Ok(())
    }

    /// `A*`: LR-rows complemented, plus two all-ones distinguished rows
    /// labelled L and R.
    pub fn star(&self) -> EnrichedMatrix {
        let full = self.mat.col_mask();
        let mut rows = Vec::with_capacity(self.nrows() + 2);
        let mut labels = Vec::with_capacity(self.nrows() + 2);
        let mut colors = Vec::with_capacity(self.nrows() + 2);
        for r in 0..self.nrows() {
            let bits = if self.labels[r] == RowLabel::LR {
                !self.mat.rows[r] & full
            } else {
                self.mat.rows[r]
            };
            rows.push(bits);
            labels.push(self.labels[r]);
            colors.push(self.colors[r]);
        }
        rows.push(full);
        labels.push(RowLabel::L);
        colors.push(None);
        rows.push(full);
        labels.push(RowLabel::R);
        colors.push(None);
        EnrichedMatrix {
            mat: BitMatrix::from_rows(self.mat.ncols, rows),
            labels,
            colors,
        }
    }

    /// The tagged matrix: two extra columns `c_L` (first) and `c_R` (last)
    /// encoding the labels. Returns the matrix and the (c_L, c_R) indices.
    pub fn tagged(&self) -> (BitMatrix, usize, usize) {
        let m = self.mat.ncols;
        // layout: c_L at index 0, original columns shifted by one, c_R last
        let mut rows = Vec::with_capacity(self.nrows());
        for r in 0..self.nrows() {
            let mut bits = self.mat.rows[r] << 1;
            match self.labels[r] {
                RowLabel::L => bits |= 1,
                RowLabel::R => bits |= 1 << (m + 1),
                RowLabel::LR => bits |= 1 | 1 << (m + 1),
                RowLabel::U => {}
            }
            rows.push(bits);
        }
        (BitMatrix::from_rows(m + 2, rows), 0, m + 1)
    }

    /// `A*` with tag columns.
    pub fn star_tagged(&self) -> (BitMatrix, usize, usize) {
        self.star().tagged()
    }

    /// Text format: `n m`, then rows `LABEL COLOR bits`.
    pub fn parse(text: &str) -> Result<EnrichedMatrix, MatrixError> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| MatrixError::Parse("empty".into()))?;
        let mut it = header.split_whitespace();
        let n: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| MatrixError::Parse("bad header".into()))?;
        let m: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| MatrixError::Parse("bad header".into()))?;
        let mut mat = BitMatrix::new(m);
        let mut labels = Vec::new();
        let mut colors = Vec::new();
        for line in lines.take(n) {
            let mut it = line.split_whitespace();
            let label = match it.next() {
                Some("U") => RowLabel::U,
                Some("L") => RowLabel::L,
                Some("R") => RowLabel::R,
                Some("LR") => RowLabel::LR,
                other => return Err(MatrixError::Parse(format!("bad label {other:?}"))),
            };
            let color = match it.next() {
                Some("-") => None,
                Some("red") => Some(Color::Red),
                Some("blue") => Some(Color::Blue),
                other => return Err(MatrixError::Parse(format!("bad color {other:?}"))),
            };
            let bits = it
                .next()
                .ok_or_else(|| MatrixError::Parse("missing bits".into()))?;
            if bits.len() != m {
                return Err(MatrixError::Parse(format!("expected {m} bits")));
            }
            let mut row = 0u128;
            for (i, ch) in bits.chars().enumerate() {
                match ch {
                    '0' => {}
                    '1' => row |= 1 << i,
                    _ => return Err(MatrixError::Parse(format!("bad bit {ch}"))),
                }
            }
            mat.rows.push(row);
            labels.push(label);
            colors.push(color);
        }
        if mat.nrows() != n {
            return Err(MatrixError::Parse(format!("expected {n} rows")));
        }
        let em = EnrichedMatrix { mat, labels, colors };
        em.validate()?;
        Ok(em)
    }

    pub fn emit(&self) -> String {
        let mut s = format!("{} {}\n", self.nrows(), self.ncols());
        for r in 0..self.nrows() {
            let color = match self.colors[r] {
                None => "-".to_string(),
                Some(c) => c.to_string(),
            };
            let bits: String = (0..self.ncols())
                .map(|c| if self.mat.get(r, c) { '1' } else { '0' })
                .collect();
            s.push_str(&format!("{} {} {}\n", self.labels[r], color, bits));
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_gem_detection() {
        let m = BitMatrix::from_bools(&[&[1, 1, 0], &[0, 1, 1]]);
        let ((i, j), (a, b, c)) = m.find_zero_gem().unwrap();
        assert_eq!((i, j), (0, 1));
        assert!(m.get(i, a) && !m.get(j, a));
        assert!(m.get(i, b) && m.get(j, b));
        assert!(!m.get(i, c) && m.get(j, c));

        let disjoint = BitMatrix::from_bools(&[&[1, 0], &[0, 1]]);
        assert!(disjoint.is_nested());
        let equal = BitMatrix::from_bools(&[&[1, 1], &[1, 1]]);
        assert!(equal.is_nested());
    }

    #[test]
    fn star_tagged_shapes() {
        // single U-row [1,0]: A* has 3 rows; tagged has 4 columns
        let em = EnrichedMatrix::plain(BitMatrix::from_bools(&[&[1, 0]]));
        let star = em.star();
        assert_eq!(star.nrows(), 3);
        let (tagged, cl, cr) = em.star_tagged();
        assert_eq!(tagged.ncols, 4);
        assert_eq!((cl, cr), (0, 3));
        // the two distinguished rows carry tags L and R respectively
        assert!(tagged.get(1, cl) && !tagged.get(1, cr));
        assert!(!tagged.get(2, cl) && tagged.get(2, cr));
    }

    #[test]
    fn empty_lr_row_complements_to_ones() {
        let em = EnrichedMatrix::new(
            BitMatrix::from_bools(&[&[0, 0, 0]]),
            vec![RowLabel::LR],
            vec![Some(Color::Blue)],
        );
        let star = em.star();
        assert_eq!(star.mat.rows[0], 0b111);
        let (tagged, cl, cr) = em.star_tagged();
        assert!(tagged.get(0, cl) && tagged.get(0, cr));
    }

    #[test]
    fn validate_rules() {
        // colored U-row is invalid
        let em = EnrichedMatrix::new(
            BitMatrix::from_bools(&[&[1]]),
            vec![RowLabel::U],
            vec![Some(Color::Red)],
        );
        assert!(em.validate().is_err());
        // two empty LR-rows with different colors are invalid
        let em = EnrichedMatrix::new(
            BitMatrix::from_bools(&[&[0], &[0]]),
            vec![RowLabel::LR, RowLabel::LR],
            vec![Some(Color::Red), Some(Color::Blue)],
        );
        assert!(em.validate().is_err());
        // colored nonempty LR-row is invalid
        let em = EnrichedMatrix::new(
            BitMatrix::from_bools(&[&[1]]),
            vec![RowLabel::LR],
            vec![Some(Color::Red)],
        );
        assert!(em.validate().is_err());
    }

    #[test]
    fn text_format_round_trip() {
        let text = "3 4\nL red 1100\nU - 0110\nLR - 1001\n";
        let em = EnrichedMatrix::parse(text).unwrap();
        assert_eq!(em.emit(), text);
    }
}
