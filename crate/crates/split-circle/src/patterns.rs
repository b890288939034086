//! Subconfiguration patterns over enriched matrices and a matching engine.
//!
//! A pattern matches a host when an injective row map and an injective
//! column map make the 0/1 entries equal, row labels compatible, and row
//! colors consistent with an injective assignment of the pattern's color
//! groups to {red, blue}.

use crate::matrix::{BitMatrix, Color, EnrichedMatrix, RowLabel};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LabelSpec {
    Exact(RowLabel),
    LOrLr,
    ROrLr,
    NotLr,
    Any,
}

impl LabelSpec {
    fn admits(&self, l: RowLabel) -> bool {
        match self {
            LabelSpec::Exact(x) => *x == l,
            LabelSpec::LOrLr => l == RowLabel::L || l == RowLabel::LR,
            LabelSpec::ROrLr => l == RowLabel::R || l == RowLabel::LR,
            LabelSpec::NotLr => l != RowLabel::LR,
            LabelSpec::Any => true,
        }
    }

    fn dual(&self) -> LabelSpec {
        match self {
            LabelSpec::Exact(RowLabel::L) => LabelSpec::Exact(RowLabel::R),
            LabelSpec::Exact(RowLabel::R) => LabelSpec::Exact(RowLabel::L),
            LabelSpec::LOrLr => LabelSpec::ROrLr,
            LabelSpec::ROrLr => LabelSpec::LOrLr,
            other => *other,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ColorSpec {
    Any,
    /// Group 0 or 1; groups map injectively to {red, blue}.
    Group(u8),
}

#[derive(Clone, Debug)]
pub struct PatternRow {
    pub bits: u128,
    pub label: LabelSpec,
    pub color: ColorSpec,
}

#[derive(Clone, Debug)]
pub struct Pattern {
    pub tag: String,
    pub ncols: usize,
    pub rows: Vec<PatternRow>,
}

impl Pattern {
    pub fn new(tag: &str, ncols: usize, rows: Vec<PatternRow>) -> Pattern {
        Pattern { tag: tag.to_string(), ncols, rows }
    }

    pub fn from_bits(tag: &str, rows: &[(&[u8], LabelSpec, ColorSpec)]) -> Pattern {
        let ncols = rows.first().map_or(0, |(b, _, _)| b.len());
        let rows = rows
            .iter()
            .map(|(b, l, c)| PatternRow {
                bits: b
                    .iter()
                    .enumerate()
                    .filter(|(_, &x)| x != 0)
                    .map(|(i, _)| 1u128 << i)
                    .sum(),
                label: *l,
                color: *c,
            })
            .collect();
        Pattern { tag: tag.to_string(), ncols, rows }
    }

    /// Swap L and R in every label spec. Column order is irrelevant for
    /// subconfiguration search, so mirroring columns is not needed.
    pub fn dual(&self) -> Pattern {
        Pattern {
            tag: format!("{}'", self.tag),
            ncols: self.ncols,
            rows: self
                .rows
                .iter()
                .map(|r| PatternRow { bits: r.bits, label: r.label.dual(), color: r.color })
                .collect(),
        }
    }

    pub fn is_self_dual_shape(&self) -> bool {
        self.rows.iter().all(|r| matches!(r.label, LabelSpec::Any | LabelSpec::Exact(RowLabel::U) | LabelSpec::Exact(RowLabel::LR)))
    }

    /// Concrete enriched matrix displaying this pattern (group 0 = red,
    /// group 1 = blue, flexible labels resolved to their base letter).
    pub fn concretize(&self) -> EnrichedMatrix {
        let rows = self.rows.iter().map(|r| r.bits).collect();
        let labels = self
            .rows
            .iter()
            .map(|r| match r.label {
                LabelSpec::Exact(l) => l,
                LabelSpec::LOrLr => RowLabel::L,
                LabelSpec::ROrLr => RowLabel::R,
                LabelSpec::NotLr | LabelSpec::Any => RowLabel::U,
            })
            .collect();
        let colors = self
            .rows
            .iter()
            .map(|r| match r.color {
                ColorSpec::Any => None,
                ColorSpec::Group(0) => Some(Color::Red),
                ColorSpec::Group(_) => Some(Color::Blue),
            })
            .collect();
        EnrichedMatrix::new(BitMatrix::from_rows(self.ncols, rows), labels, colors)
    }
}

/// A found occurrence: host rows (in pattern-row order); host columns are
/// implied and not reported individually.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Occurrence {
    pub tag: String,
    pub rows: Vec<usize>,
}

/// Match a pattern against an enriched host matrix.
pub fn find_pattern(host: &EnrichedMatrix, pat: &Pattern) -> Option<Occurrence> {
    if pat.rows.len() > host.nrows() || pat.ncols > host.ncols() {
        return None;
    }
    let groups_used: Vec<u8> = {
        let mut g: Vec<u8> = pat
            .rows
            .iter()
            .filter_map(|r| match r.color {
                ColorSpec::Group(x) => Some(x),
                ColorSpec::Any => None,
            })
            .collect();
        g.sort_unstable();
        g.dedup();
        g
    };
    let assignments: Vec<[Color; 2]> = if groups_used.is_empty() {
        vec![[Color::Red, Color::Blue]]
    } else {
        vec![[Color::Red, Color::Blue], [Color::Blue, Color::Red]]
    };
    for assign in assignments {
        if let Some(rows) = match_rows(host, pat, &assign) {
            return Some(Occurrence { tag: pat.tag.clone(), rows });
        }
    }
    None
}

fn match_rows(host: &EnrichedMatrix, pat: &Pattern, assign: &[Color; 2]) -> Option<Vec<usize>> {
    let pr = pat.rows.len();
    let mut chosen: Vec<usize> = Vec::with_capacity(pr);
    let mut used = vec![false; host.nrows()];

    fn feasible_columns(host: &EnrichedMatrix, pat: &Pattern, chosen: &[usize]) -> bool {
        // group pattern columns and host columns by their bit signature over
        // the currently chosen rows; require host multiplicity >= pattern's
        let d = chosen.len();
        let mut pat_sig: std::collections::HashMap<u64, usize> = std::collections::HashMap::new();
        for c in 0..pat.ncols {
            let mut sig = 0u64;
            for (i, row) in pat.rows[..d].iter().enumerate() {
                if row.bits >> c & 1 == 1 {
                    sig |= 1 << i;
                }
            }
            *pat_sig.entry(sig).or_insert(0) += 1;
        }
        let mut host_sig: std::collections::HashMap<u64, usize> = std::collections::HashMap::new();
        for c in 0..host.ncols() {
            let mut sig = 0u64;
            for (i, &hr) in chosen.iter().enumerate() {
                if host.mat.rows[hr] >> c & 1 == 1 {
                    sig |= 1 << i;
                }
            }
            *host_sig.entry(sig).or_insert(0) += 1;
        }
        // every pattern signature class needs enough host columns whose
        // signature restricted to the pattern's support can match; since
        // bits must be equal exactly, signatures must be identical
        pat_sig.iter().all(|(sig, cnt)| host_sig.get(sig).copied().unwrap_or(0) >= *cnt)
    }

    fn rec(
        host: &EnrichedMatrix,
        pat: &Pattern,
        assign: &[Color; 2],
        depth: usize,
        chosen: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if depth == pat.rows.len() {
            return true;
        }
        let prow = &pat.rows[depth];
        for hr in 0..host.nrows() {
            if used[hr] || !prow.label.admits(host.labels[hr]) {
                continue;
            }
            // an all-zero LR pattern row stands for a globally empty LR-row
            if prow.bits == 0
                && prow.label == LabelSpec::Exact(RowLabel::LR)
                && host.mat.rows[hr] != 0
            {
                continue;
            }
            match prow.color {
                ColorSpec::Any => {}
                ColorSpec::Group(gidx) => {
                    let want = assign[gidx as usize & 1];
                    if host.colors[hr] != Some(want) {
                        continue;
                    }
                }
            }
            if (host.mat.rows[hr].count_ones() as usize) < prow.bits.count_ones() as usize {
                continue;
            }
            chosen.push(hr);
            used[hr] = true;
            if feasible_columns(host, pat, chosen)
                && rec(host, pat, assign, depth + 1, chosen, used)
            {
                return true;
            }
            used[hr] = false;
            chosen.pop();
        }
        false
    }

    if rec(host, pat, assign, 0, &mut chosen, &mut used, ) {
        Some(chosen)
    } else {
        None
    }
}

/// Plain 0/1 subconfiguration search (labels and colors ignored).
pub fn find_plain(host: &BitMatrix, pat: &BitMatrix) -> Option<Vec<usize>> {
    let wrapped = EnrichedMatrix::plain(host.clone());
    let p = Pattern {
        tag: String::new(),
        ncols: pat.ncols,
        rows: pat
            .rows
            .iter()
            .map(|&bits| PatternRow { bits, label: LabelSpec::Any, color: ColorSpec::Any })
            .collect(),
    };
    find_pattern(&wrapped, &p).map(|o| o.rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::BitMatrix;

    fn host(rows: &[(&[u8], RowLabel, Option<Color>)]) -> EnrichedMatrix {
        let bits: Vec<&[u8]> = rows.iter().map(|(b, _, _)| *b).collect();
        let labels = rows.iter().map(|(_, l, _)| *l).collect();
        let colors = rows.iter().map(|(_, _, c)| *c).collect();
        EnrichedMatrix::new(BitMatrix::from_bools(&bits), labels, colors)
    }

    #[test]
    fn plain_subconfiguration() {
        let h = BitMatrix::from_bools(&[&[1, 0, 1, 1], &[0, 1, 1, 0], &[1, 1, 0, 0]]);
        // 0-gem [110 / 011] appears (rows 2,1 with columns 0,1,2)
        let gem = BitMatrix::from_bools(&[&[1, 1, 0], &[0, 1, 1]]);
        assert!(find_plain(&h, &gem).is_some());
        // no 3x3 identity: no column hits row 1 alone
        let id3 = BitMatrix::from_bools(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert!(find_plain(&h, &id3).is_none());
        let id2 = BitMatrix::from_bools(&[&[1, 0], &[0, 1]]);
        assert!(find_plain(&h, &id2).is_some());
        let k4row = BitMatrix::from_bools(&[&[1, 1, 1, 1, 1]]);
        assert!(find_plain(&h, &k4row).is_none());
    }

    #[test]
    fn label_and_color_matching() {
        let h = host(&[
            (&[1, 0], RowLabel::L, Some(Color::Red)),
            (&[0, 1], RowLabel::R, Some(Color::Red)),
            (&[1, 1], RowLabel::U, None),
        ]);
        // L and R rows, same color group, sharing no column: needs a shared 1
        let d1 = Pattern::from_bits(
            "D1",
            &[
                (&[1], LabelSpec::Exact(RowLabel::L), ColorSpec::Group(0)),
                (&[1], LabelSpec::Exact(RowLabel::R), ColorSpec::Group(0)),
            ],
        );
        assert!(find_pattern(&h, &d1).is_none());
        let h2 = host(&[
            (&[1, 0], RowLabel::L, Some(Color::Blue)),
            (&[1, 1], RowLabel::R, Some(Color::Blue)),
        ]);
        assert!(find_pattern(&h2, &d1).is_some());
        // distinct groups must map to distinct colors
        let d1_distinct = Pattern::from_bits(
            "X",
            &[
                (&[1], LabelSpec::Exact(RowLabel::L), ColorSpec::Group(0)),
                (&[1], LabelSpec::Exact(RowLabel::R), ColorSpec::Group(1)),
            ],
        );
        assert!(find_pattern(&h2, &d1_distinct).is_none());
    }

    #[test]
    fn flexible_labels() {
        let h = host(&[(&[1, 1, 0], RowLabel::LR, None), (&[0, 1, 1], RowLabel::U, None)]);
        let p = Pattern::from_bits(
            "F",
            &[
                (&[1, 1, 0], LabelSpec::LOrLr, ColorSpec::Any),
                (&[0, 1, 1], LabelSpec::Exact(RowLabel::U), ColorSpec::Any),
            ],
        );
        assert!(find_pattern(&h, &p).is_some());
        let pd = p.dual();
        assert!(find_pattern(&h, &pd).is_some()); // LR admits both sides
    }

    #[test]
    fn column_injectivity() {
        // pattern needs two distinct all-ones columns, host has one
        let h = host(&[(&[1, 0], RowLabel::U, None), (&[1, 0], RowLabel::U, None)]);
        let p = Pattern::from_bits(
            "two-cols",
            &[
                (&[1, 1], LabelSpec::Any, ColorSpec::Any),
                (&[1, 1], LabelSpec::Any, ColorSpec::Any),
            ],
        );
        assert!(find_pattern(&h, &p).is_none());
    }
}
