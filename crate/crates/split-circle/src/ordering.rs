//! Enumeration of LR-orderings and suitable LR-orderings of an enriched
//! matrix (Defs 3.5/3.6 style): column orderings under which every non-LR
//! row is consecutive, nonempty L-rows start at the first column, nonempty
//! R-rows end at the last column, and the complements of LR-rows are
//! consecutive.

use crate::matrix::{EnrichedMatrix, RowLabel};

/// Effective row constraints for ordering generation.
struct RowReq {
    bits: u128,
    anchored_left: bool,  // ones must form a prefix of the ordering
    anchored_right: bool, // ones must form a suffix
}

fn row_requirements(em: &EnrichedMatrix) -> Vec<RowReq> {
    let full = em.mat.col_mask();
    (0..em.nrows())
        .filter_map(|r| {
            let bits = match em.labels[r] {
                RowLabel::LR => !em.mat.rows[r] & full,
                _ => em.mat.rows[r],
            };
            if bits == 0 {
                return None;
            }
            Some(RowReq {
                bits,
                anchored_left: em.labels[r] == RowLabel::L,
                anchored_right: em.labels[r] == RowLabel::R,
            })
        })
        .collect()
}

/// Visit orderings (as column sequences) satisfying the LR-ordering rules.
/// With `dedup_equal`, equal columns are only emitted in ascending index
/// order, which cuts duplicates that differ by swapping identical columns.
/// The visitor returns `false` to stop early; `for_each_lr_ordering`
/// returns `false` if stopped.
pub fn for_each_lr_ordering(
    em: &EnrichedMatrix,
    dedup_equal: bool,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    let m = em.ncols();
    if m == 0 {
        return visit(&[]);
    }
    let reqs = row_requirements(em);
    // column signature for dedup: the full column bit-vector over all rows
    let col_sig: Vec<u128> = (0..m)
        .map(|c| {
            let mut sig = 0u128;
            for r in 0..em.nrows() {
                if em.mat.get(r, c) {
                    sig |= 1 << r;
                }
            }
            sig
        })
        .collect();

    struct State<'a> {
        reqs: &'a [RowReq],
        col_sig: &'a [u128],
        dedup: bool,
        m: usize,
        perm: Vec<usize>,
        used: u128,
        started: Vec<bool>,
        finished: Vec<bool>,
    }

    fn rec(st: &mut State, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        let pos = st.perm.len();
        if pos == st.m {
            return visit(&st.perm);
        }
        'cols: for c in 0..st.m {
            if st.used >> c & 1 == 1 {
                continue;
            }
            if st.dedup {
                // among equal columns, place the smallest unused index first
                for d in 0..c {
                    if st.used >> d & 1 == 0 && st.col_sig[d] == st.col_sig[c] {
                        continue 'cols;
                    }
                }
            }
            // feasibility of placing column c at position pos
            let mut delta_started = Vec::new();
            let mut delta_finished = Vec::new();
            for (i, rq) in st.reqs.iter().enumerate() {
                let one = rq.bits >> c & 1 == 1;
                if one {
                    if st.finished[i] {
                        for &j in &delta_started {
                            st.started[j] = false;
                        }
                        for &j in &delta_finished {
                            st.finished[j] = false;
                        }
                        continue 'cols;
                    }
                    if rq.anchored_left && pos > 0 && !st.started[i] {
                        // an L-row starting after position 0 is broken
                        for &j in &delta_started {
                            st.started[j] = false;
                        }
                        for &j in &delta_finished {
                            st.finished[j] = false;
                        }
                        continue 'cols;
                    }
                    if !st.started[i] {
                        st.started[i] = true;
                        delta_started.push(i);
                    }
                } else if st.started[i] && !st.finished[i] {
                    if rq.anchored_right {
                        // an R-row must run through the last column
                        for &j in &delta_started {
                            st.started[j] = false;
                        }
                        for &j in &delta_finished {
                            st.finished[j] = false;
                        }
                        continue 'cols;
                    }
                    st.finished[i] = true;
                    delta_finished.push(i);
                }
            }
            st.perm.push(c);
            st.used |= 1 << c;
            let keep_going = rec(st, visit);
            st.used &= !(1u128 << c);
            st.perm.pop();
            for &j in &delta_started {
                st.started[j] = false;
            }
            for &j in &delta_finished {
                st.finished[j] = false;
            }
            if !keep_going {
                return false;
            }
        }
        true
    }

    let mut st = State {
        reqs: &reqs,
        col_sig: &col_sig,
        dedup: dedup_equal,
        m,
        perm: Vec::with_capacity(m),
        used: 0,
        started: vec![false; reqs.len()],
        finished: vec![false; reqs.len()],
    };
    rec(&mut st, visit)
}

/// All LR-orderings, eagerly collected.
pub fn lr_orderings(em: &EnrichedMatrix) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for_each_lr_ordering(em, false, &mut |perm| {
        out.push(perm.to_vec());
        true
    });
    out
}

/// Suitability (Def 3.6): the L-blocks of LR-rows with two blocks are
/// disjoint from every R-block, symmetrically for R-blocks, and every
/// LR-row meets each U-block in at most one of its own blocks.
pub fn is_suitable(em: &EnrichedMatrix, perm: &[usize]) -> bool {
    let m = perm.len();
    let pos_of = |bits: u128| -> Vec<usize> {
        // positions (in perm order) where the row has a 1
        (0..m).filter(|&p| bits >> perm[p] & 1 == 1).collect()
    };
    // collect blocks as position intervals
    let mut l_blocks: Vec<(usize, u128)> = Vec::new(); // non-LR L
    let mut r_blocks: Vec<(usize, u128)> = Vec::new();
    let mut u_blocks: Vec<u128> = Vec::new();
    let mut lr_rows: Vec<(u128, u128)> = Vec::new(); // (L-block mask, R-block mask) in position space
    for r in 0..em.nrows() {
        let posns = pos_of(em.mat.rows[r]);
        let mask: u128 = posns.iter().map(|&p| 1u128 << p).sum();
        match em.labels[r] {
            RowLabel::L => {
                if mask != 0 {
                    l_blocks.push((r, mask));
                }
            }
            RowLabel::R => {
                if mask != 0 {
                    r_blocks.push((r, mask));
                }
            }
            RowLabel::U => u_blocks.push(mask),
            RowLabel::LR => {
                let mut lmask = 0u128;
                let mut p = 0;
                while p < m && em.mat.rows[r] >> perm[p] & 1 == 1 {
                    lmask |= 1 << p;
                    p += 1;
                }
                let mut rmask = 0u128;
                if lmask.count_ones() as usize != m {
                    let mut p = m;
                    while p > 0 && em.mat.rows[r] >> perm[p - 1] & 1 == 1 {
                        rmask |= 1 << (p - 1);
                        p -= 1;
                    }
                }
                lr_rows.push((lmask, rmask));
            }
        }
    }
    for &(lmask, rmask) in &lr_rows {
        let two_blocks = lmask != 0 && rmask != 0;
        if two_blocks {
            for &(_, rb) in &r_blocks {
                if lmask & rb != 0 {
                    return false;
                }
            }
            for &(_, lb) in &l_blocks {
                if rmask & lb != 0 {
                    return false;
                }
            }
        }
        for &ub in &u_blocks {
            if lmask & ub != 0 && rmask & ub != 0 {
                return false;
            }
        }
    }
    true
}

/// Suitable LR-orderings.
pub fn suitable_orderings(em: &EnrichedMatrix) -> Vec<Vec<usize>> {
    lr_orderings(em)
        .into_iter()
        .filter(|perm| is_suitable(em, perm))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{BitMatrix, Color};

    fn em(rows: &[(&[u8], RowLabel)]) -> EnrichedMatrix {
        let bits: Vec<&[u8]> = rows.iter().map(|(b, _)| *b).collect();
        let labels = rows.iter().map(|(_, l)| *l).collect();
        EnrichedMatrix::uncolored(BitMatrix::from_bools(&bits), labels)
    }

    /// Plain permutation filter used as an independent oracle.
    fn brute_lr_orderings(e: &EnrichedMatrix) -> Vec<Vec<usize>> {
        let m = e.ncols();
        let mut perm: Vec<usize> = (0..m).collect();
        let mut out = Vec::new();
        loop {
            if check(e, &perm) {
                out.push(perm.clone());
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
        out.sort();
        out
    }

    fn check(e: &EnrichedMatrix, perm: &[usize]) -> bool {
        let m = perm.len();
        let full = e.mat.col_mask();
        for r in 0..e.nrows() {
            let bits = if e.labels[r] == RowLabel::LR {
                !e.mat.rows[r] & full
            } else {
                e.mat.rows[r]
            };
            if bits == 0 {
                continue;
            }
            let posns: Vec<usize> = (0..m).filter(|&p| bits >> perm[p] & 1 == 1).collect();
            let lo = posns[0];
            let hi = *posns.last().unwrap();
            if hi - lo + 1 != posns.len() {
                return false;
            }
            match e.labels[r] {
                RowLabel::L => {
                    if lo != 0 {
                        return false;
                    }
                }
                RowLabel::R => {
                    if hi != m - 1 {
                        return false;
                    }
                }
                _ => {}
            }
        }
        true
    }

    fn next_permutation(v: &mut [usize]) -> bool {
        if v.len() < 2 {
            return false;
        }
        let mut i = v.len() - 1;
        while i > 0 && v[i - 1] >= v[i] {
            i -= 1;
        }
        if i == 0 {
            return false;
        }
        let mut j = v.len() - 1;
        while v[j] <= v[i - 1] {
            j -= 1;
        }
        v.swap(i - 1, j);
        v[i..].reverse();
        true
    }

    #[test]
    fn single_l_row_forces_start() {
        // L-row [0,1]: the only valid ordering puts column 1 first
        let e = em(&[(&[0, 1], RowLabel::L)]);
        let ords = lr_orderings(&e);
        assert_eq!(ords, vec![vec![1, 0]]);
    }

    #[test]
    fn tucker_m1_3_has_no_ordering() {
        let e = em(&[
            (&[1, 1, 0], RowLabel::U),
            (&[0, 1, 1], RowLabel::U),
            (&[1, 0, 1], RowLabel::U),
        ]);
        assert!(lr_orderings(&e).is_empty());
    }

    #[test]
    fn matches_permutation_filter() {
        // a batch of deterministic pseudo-random 4-column matrices
        let mut x: u64 = 7;
        for _ in 0..60 {
            let mut rows = Vec::new();
            let mut labels = Vec::new();
            for r in 0..3 {
                x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                rows.push((x >> 17 & 0xf) as u128);
                labels.push(match x >> 33 & 3 {
                    0 => RowLabel::U,
                    1 => RowLabel::L,
                    2 => RowLabel::R,
                    _ => RowLabel::LR,
                });
                let _ = r;
            }
            let e = EnrichedMatrix::uncolored(BitMatrix::from_rows(4, rows), labels);
            let mut fast = lr_orderings(&e);
            fast.sort();
            assert_eq!(fast, brute_lr_orderings(&e));
        }
    }

    #[test]
    fn suitable_subset_of_lr() {
        // no LR-rows: suitable == LR-orderable
        let e = em(&[(&[1, 1, 0], RowLabel::U), (&[0, 1, 1], RowLabel::R)]);
        let all = lr_orderings(&e);
        let suit = suitable_orderings(&e);
        assert_eq!(all, suit);
        assert!(!all.is_empty());
    }

    #[test]
    fn empty_lr_rows_do_not_constrain() {
        let e = EnrichedMatrix::new(
            BitMatrix::from_bools(&[&[0, 0], &[1, 0]]),
            vec![RowLabel::LR, RowLabel::U],
            vec![Some(Color::Blue), None],
        );
        assert_eq!(lr_orderings(&e).len(), 2);
    }
}
