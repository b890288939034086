//! Canonical forms for small graphs via colour refinement with
//! individualisation, good enough for n ≤ 12.

use std::collections::BTreeMap;

use crate::graph::{BitIter, Graph};

/// Upper-triangle adjacency bits of `g` under `order`, packed big-endian.
fn code_bits(g: &Graph, order: &[usize]) -> Vec<u64> {
    let n = order.len();
    let nbits = n * (n - 1) / 2;
    let mut words = vec![0u64; (nbits + 63) / 64];
    let mut idx = 0;
    for i in 0..n {
        for j in i + 1..n {
            if g.has_edge(order[i], order[j]) {
                words[idx / 64] |= 1u64 << (63 - idx % 64);
            }
            idx += 1;
        }
    }
    words
}

/// Stable colour refinement (1-WL). Colours are dense integers whose order
/// is isomorphism-invariant because it derives from sorted signatures.
fn refine(g: &Graph, colors: &mut Vec<usize>) {
    let n = g.n();
    loop {
        let mut sig: Vec<(usize, Vec<usize>)> = Vec::with_capacity(n);
        for v in 0..n {
            let mut nb: Vec<usize> = g.neighbors(v).map(|u| colors[u]).collect();
            nb.sort_unstable();
            sig.push((colors[v], nb));
        }
        let mut map: BTreeMap<&(usize, Vec<usize>), usize> = BTreeMap::new();
        for s in &sig {
            let next = map.len();
            map.entry(s).or_insert(next);
        }
        // renumber by sorted signature order for invariance
        let mut keys: Vec<&(usize, Vec<usize>)> = map.keys().copied().collect();
        keys.sort();
        let rank: BTreeMap<&(usize, Vec<usize>), usize> =
            keys.iter().enumerate().map(|(i, k)| (*k, i)).collect();
        let new_colors: Vec<usize> = sig.iter().map(|s| rank[s]).collect();
        let stable = new_colors
            .iter()
            .zip(colors.iter())
            .all(|(a, b)| *a == *b)
            && rank.len() == count_distinct(colors);
        let class_count = rank.len();
        *colors = new_colors;
        if stable || class_count == n {
            break;
        }
    }
}

fn count_distinct(colors: &[usize]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

fn ordering_from_discrete(colors: &[usize]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..colors.len()).collect();
    order.sort_by_key(|&v| colors[v]);
    order
}

fn search(g: &Graph, colors: Vec<usize>, best: &mut Option<Vec<u64>>) {
    let n = g.n();
    let distinct = count_distinct(&colors);
    if distinct == n {
        let order = ordering_from_discrete(&colors);
        let code = code_bits(g, &order);
        if best.as_ref().map_or(true, |b| code > *b) {
            *best = Some(code);
        }
        return;
    }
    // first non-singleton colour class
    let target = (0..n)
        .map(|v| colors[v])
        .filter(|&c| colors.iter().filter(|&&x| x == c).count() > 1)
        .min()
        .unwrap();
    let cell: Vec<usize> = (0..n).filter(|&v| colors[v] == target).collect();
    // skip true/false twins within the cell: interchangeable by an
    // automorphism, so one branch suffices
    let mut seen: Vec<(u128, u128)> = Vec::new();
    for &v in &cell {
        let open = g.nb(v);
        let closed = open | (1u128 << v);
        if seen.iter().any(|&(o, c)| o == open || c == closed) {
            continue;
        }
        seen.push((open, closed));
        let mut next = colors.clone();
        // individualise v: give it a colour just below its cell
        for x in 0..n {
            if next[x] >= target {
                next[x] += 1;
            }
        }
        next[v] = target;
        refine(g, &mut next);
        search(g, next, best);
    }
}

pub fn canonical_code(g: &Graph) -> Vec<u64> {
    let n = g.n();
    if n <= 1 {
        return vec![n as u64];
    }
    let mut colors: Vec<usize> = vec![0; n];
    refine(g, &mut colors);
    let mut best = None;
    search(g, colors, &mut best);
    let mut code = best.unwrap();
    code.insert(0, n as u64);
    code
}

/// A canonical relabelling: `perm[v]` is the canonical position of `v`.
pub fn canonical_order(g: &Graph) -> Vec<usize> {
    let n = g.n();
    if n <= 1 {
        return (0..n).collect();
    }
    // recompute like canonical_code but remember the best order
    fn search_order(g: &Graph, colors: Vec<usize>, best: &mut Option<(Vec<u64>, Vec<usize>)>) {
        let n = g.n();
        if count_distinct(&colors) == n {
            let order = ordering_from_discrete(&colors);
            let code = code_bits(g, &order);
            if best.as_ref().map_or(true, |(b, _)| code > *b) {
                *best = Some((code, order));
            }
            return;
        }
        let target = (0..n)
            .map(|v| colors[v])
            .filter(|&c| colors.iter().filter(|&&x| x == c).count() > 1)
            .min()
            .unwrap();
        let cell: Vec<usize> = (0..n).filter(|&v| colors[v] == target).collect();
        let mut seen: Vec<(u128, u128)> = Vec::new();
        for &v in &cell {
            let open = g.nb(v);
            let closed = open | (1u128 << v);
            if seen.iter().any(|&(o, c)| o == open || c == closed) {
                continue;
            }
            seen.push((open, closed));
            let mut next = colors.clone();
            for x in 0..n {
                if next[x] >= target {
                    next[x] += 1;
                }
            }
            next[v] = target;
            refine(g, &mut next);
            search_order(g, next, best);
        }
    }
    let mut colors = vec![0; n];
    refine(g, &mut colors);
    let mut best = None;
    search_order(g, colors, &mut best);
    let order = best.unwrap().1;
    let mut perm = vec![0; n];
    for (pos, &v) in order.iter().enumerate() {
        perm[v] = pos;
    }
    perm
}

pub fn bit_iter_vec(mask: u128) -> Vec<usize> {
    BitIter(mask).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_identifies_relabelings() {
        let g = Graph::from_edges(7, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 0), (0, 3)]);
        let h = g.relabel(&[4, 2, 0, 6, 1, 3, 5]);
        assert_eq!(canonical_code(&g), canonical_code(&h));
    }

    #[test]
    fn canonical_separates_nonisomorphic() {
        let p4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]);
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]);
        assert_ne!(canonical_code(&p4), canonical_code(&star));
    }

    #[test]
    fn canonical_handles_regular_graphs() {
        // C6 vs 2K3: both 2-regular on 6 vertices
        let c6 = Graph::cycle(6);
        let two_k3 = Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]);
        assert_ne!(canonical_code(&c6), canonical_code(&two_k3));
        let c6b = c6.relabel(&[3, 0, 5, 1, 4, 2]);
        assert_eq!(canonical_code(&c6), canonical_code(&c6b));
    }

    #[test]
    fn exhaustive_small_classes() {
        // all graphs on 4 vertices: 11 isomorphism classes
        let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        let mut codes = std::collections::HashSet::new();
        for code in 0u32..64 {
            let mut g = Graph::new(4);
            for (b, &(u, v)) in pairs.iter().enumerate() {
                if code >> b & 1 == 1 {
                    g.add_edge(u, v);
                }
            }
            codes.insert(canonical_code(&g));
        }
        assert_eq!(codes.len(), 11);
    }

    #[test]
    fn canonical_order_is_consistent() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]);
        let perm = canonical_order(&g);
        let gc = g.relabel(&perm);
        assert_eq!(canonical_code(&gc), canonical_code(&g));
    }
}
