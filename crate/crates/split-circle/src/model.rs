//! Chord-model synthesis from case certificates.
//!
//! The circle is divided into 2N arcs: K_1^+ ... K_N^+ followed by
//! K_1^- ... K_N^- (engine class order, clockwise), each listing its
//! class's chord endpoints in the suitable ordering of that class. Every
//! K-chord runs from its + copy to its - copy, so K is realized as a
//! clique. An S-chord covers a circularly contiguous run of K-endpoints
//! (exactly one endpoint per neighbor); its two endpoints are placed in
//! the boundary gaps of that run, and same-gap endpoints are nested by
//! span so that chords of S never cross each other.

use crate::cases::ChordSpec;
use crate::chord::{ArcSpan, ChordModel};
use crate::error::CaseError;
use crate::graph::Graph;

/// One endpoint: the gap before global K-endpoint position `gap`
/// (gaps are numbered 0..=total, where total wraps to 0).
#[derive(Clone, Copy, Debug)]
struct Endpoint {
    gap: usize,
}

struct ChordPlacement {
    vertex: usize,
    open: Endpoint,
    close: Endpoint,
    /// K-endpoint positions covered (clockwise from open to close).
    span: usize,
}

/// Inputs: per engine class (1-based), the ordered K-vertex list; per
/// S-vertex, its chord spec plus per-class neighbor sets are read from g.
pub struct ModelInput<'a> {
    pub g: &'a Graph,
    /// orderings[e-1] = K vertices of engine class e, in arc order.
    pub orderings: Vec<Vec<usize>>,
    pub specs: Vec<(usize, ChordSpec)>,
    /// Arc display names, + arcs then - arcs (for annotations).
    pub arc_names: Vec<String>,
    /// Engine class of the LR rows (unused when the case has none).
    pub lr_engine: usize,
}

pub fn build_word(input: &ModelInput) -> Result<ChordModel, CaseError> {
    let n_cls = input.orderings.len();
    let ksizes: Vec<usize> = input.orderings.iter().map(|o| o.len()).collect();
    let half: usize = ksizes.iter().sum();
    let total = 2 * half;
    // global positions: plus arcs then minus arcs
    let mut offset_plus = vec![0usize; n_cls];
    let mut acc = 0;
    for e in 0..n_cls {
        offset_plus[e] = acc;
        acc += ksizes[e];
    }
    let pos_of = |e: usize, side_plus: bool, idx: usize| -> usize {
        let base = offset_plus[e - 1] + if side_plus { 0 } else { half };
        base + idx
    };
    // K-vertex at each global position
    let mut k_at = vec![usize::MAX; total];
    for e in 1..=n_cls {
        for (i, &v) in input.orderings[e - 1].iter().enumerate() {
            k_at[pos_of(e, true, i)] = v;
            k_at[pos_of(e, false, i)] = v;
        }
    }

    // class-local neighbor positions of an S-vertex
    let nbr_positions = |v: usize, e: usize| -> Vec<usize> {
        input.orderings[e - 1]
            .iter()
            .enumerate()
            .filter(|(_, &u)| input.g.has_edge(v, u))
            .map(|(i, _)| i)
            .collect()
    };

    let mut chords: Vec<ChordPlacement> = Vec::new();
    for &(v, ref spec) in &input.specs {
        let (open, close) = match spec {
            ChordSpec::Isolated => {
                // both endpoints in the first gap; covers nothing
                (Endpoint { gap: 0 }, Endpoint { gap: 0 })
            }
            ChordSpec::Interval { class, plus } => {
                let posns = nbr_positions(v, *class);
                if posns.is_empty() {
                    let gap = pos_of(*class, *plus, 0);
                    (Endpoint { gap }, Endpoint { gap })
                } else {
                    let lo = posns[0];
                    let hi = posns[posns.len() - 1];
                    if hi - lo + 1 != posns.len() {
                        return Err(CaseError::InternalInconsistency(format!(
                            "interval row of vertex {v} not contiguous"
                        )));
                    }
                    (
                        Endpoint { gap: pos_of(*class, *plus, lo) },
                        Endpoint { gap: pos_of(*class, *plus, hi) + 1 },
                    )
                }
            }
            ChordSpec::Zone { a, plus_at_a, wrap, b } => {
                let pa = nbr_positions(v, *a);
                let pb = nbr_positions(v, *b);
                // class-a support must be a suffix, class-b a prefix
                let a_len = ksizes[*a - 1];
                let first_a = if pa.is_empty() { a_len } else { pa[0] };
                if !pa.is_empty() && (pa[pa.len() - 1] != a_len - 1 || pa.len() != a_len - first_a)
                {
                    return Err(CaseError::InternalInconsistency(format!(
                        "zone row of vertex {v} not a suffix in class {a}"
                    )));
                }
                let last_b = if pb.is_empty() { 0 } else { pb[pb.len() - 1] + 1 };
                if !pb.is_empty() && (pb[0] != 0 || pb.len() != last_b) {
                    return Err(CaseError::InternalInconsistency(format!(
                        "zone row of vertex {v} not a prefix in class {b}"
                    )));
                }
                let side_b = if *wrap { !*plus_at_a } else { *plus_at_a };
                (
                    Endpoint { gap: pos_of(*a, *plus_at_a, first_a) },
                    Endpoint { gap: pos_of(*b, side_b, 0) + last_b },
                )
            }
            ChordSpec::Lr { lblock, rblock, lblock_plus } => {
                let e = input.lr_engine;
                let m = ksizes[e - 1];
                let l_len = lblock.count_ones() as usize;
                let r_start = if *rblock == 0 {
                    m
                } else {
                    rblock.trailing_zeros() as usize
                };
                // the L-block is covered from its ring side as a prefix of
                // the arc; the R-block from the other side as a suffix
                let l_side = *lblock_plus;
                let open = Endpoint { gap: pos_of(e, !l_side, r_start) };
                let close = Endpoint { gap: pos_of(e, l_side, 0) + l_len };
                (open, close)
            }
            ChordSpec::EmptyLr { plus_variant } => {
                let e = input.lr_engine;
                let m = ksizes[e - 1];
                if *plus_variant {
                    // covers everything on the plus ring outside class e
                    (
                        Endpoint { gap: pos_of(e, false, 0) + m },
                        Endpoint { gap: pos_of(e, true, 0) },
                    )
                } else {
                    (
                        Endpoint { gap: pos_of(e, true, 0) + m },
                        Endpoint { gap: pos_of(e, false, 0) },
                    )
                }
            }
        };
        let span = if total == 0 { 0 } else { (close.gap + total - open.gap) % total };
        chords.push(ChordPlacement { vertex: v, open, close, span });
    }

    // verify the K-crossings of every chord: exactly one endpoint of each
    // neighbor inside [open, close)
    for ch in &chords {
        for e in 1..=n_cls {
            for (i, &u) in input.orderings[e - 1].iter().enumerate() {
                let p_plus = pos_of(e, true, i);
                let p_minus = pos_of(e, false, i);
                let inside = |p: usize| -> bool {
                    ((p + total - ch.open.gap) % total) < ch.span
                };
                let crossings = inside(p_plus) as u8 + inside(p_minus) as u8;
                let adjacent = input.g.has_edge(ch.vertex, u);
                if (crossings == 1) != adjacent {
                    return Err(CaseError::InternalInconsistency(format!(
                        "chord of {} covers K-vertex {u} wrongly",
                        ch.vertex
                    )));
                }
            }
        }
    }

    // gap contents: closes (inner first), then empty pairs, then opens
    // (outer first)
    #[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
    enum Slot {
        Close { span: usize, neg_id: std::cmp::Reverse<usize> },
        Pair { id: usize, second: bool },
        Open { neg_span: std::cmp::Reverse<usize>, id: usize },
    }
    let mut gaps: Vec<Vec<(Slot, usize)>> = vec![Vec::new(); total.max(1)];
    for (idx, ch) in chords.iter().enumerate() {
        if ch.span == 0 {
            gaps[ch.open.gap % total.max(1)].push((Slot::Pair { id: idx, second: false }, idx));
            gaps[ch.open.gap % total.max(1)].push((Slot::Pair { id: idx, second: true }, idx));
        } else {
            gaps[ch.open.gap % total].push((
                Slot::Open { neg_span: std::cmp::Reverse(ch.span), id: idx },
                idx,
            ));
            gaps[ch.close.gap % total].push((
                Slot::Close { span: ch.span, neg_id: std::cmp::Reverse(idx) },
                idx,
            ));
        }
    }
    for g in gaps.iter_mut() {
        g.sort();
    }

    // emit the word arc by arc so that every named arc (even an empty one)
    // gets an annotation span
    let mut word: Vec<usize> = Vec::with_capacity(2 * (half + input.specs.len()));
    let mut arcs: Vec<ArcSpan> = Vec::new();
    if total == 0 {
        for (_, idx) in &gaps[0] {
            word.push(chords[*idx].vertex);
        }
    } else {
        let mut p = 0usize;
        for arc in 0..2 * n_cls {
            let e = arc % n_cls;
            let start = word.len();
            for _ in 0..ksizes[e] {
                for (_, idx) in &gaps[p] {
                    word.push(chords[*idx].vertex);
                }
                word.push(k_at[p]);
                p += 1;
            }
            arcs.push(ArcSpan {
                name: input.arc_names.get(arc).cloned().unwrap_or_default(),
                start,
                len: word.len() - start,
            });
        }
    }
    ChordModel::with_arcs(word, arcs)
        .map_err(|e| CaseError::InternalInconsistency(format!("bad word: {e}")))
}


