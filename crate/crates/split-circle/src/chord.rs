//! Chord diagrams as double occurrence words, their interlacement graphs,
//! and an exhaustive model search for small graphs.

use crate::error::ModelError;
use crate::graph::Graph;

/// A named contiguous run of word positions (used to annotate the arcs of
/// the structured models).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArcSpan {
    pub name: String,
    pub start: usize,
    pub len: usize,
}

/// A chord diagram over vertex ids `0..n`: every id occurs exactly twice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChordModel {
    pub word: Vec<usize>,
    pub arcs: Vec<ArcSpan>,
}

impl ChordModel {
    pub fn new(word: Vec<usize>) -> Result<ChordModel, ModelError> {
        validate_word(&word)?;
        Ok(ChordModel { word, arcs: Vec::new() })
    }

    pub fn with_arcs(word: Vec<usize>, arcs: Vec<ArcSpan>) -> Result<ChordModel, ModelError> {
        validate_word(&word)?;
        Ok(ChordModel { word, arcs })
    }

    pub fn n(&self) -> usize {
        self.word.len() / 2
    }

    /// The interlacement graph: u ~ v iff their occurrences alternate.
    pub fn interlacement(&self) -> Graph {
        interlacement(&self.word).expect("validated at construction")
    }

    pub fn parse(text: &str) -> Result<ChordModel, ModelError> {
        let word: Result<Vec<usize>, _> = text
            .split_whitespace()
            .map(|t| t.parse::<usize>())
            .collect();
        let word = word.map_err(|e| ModelError::Parse(e.to_string()))?;
        ChordModel::new(word)
    }

    pub fn emit(&self) -> String {
        let strs: Vec<String> = self.word.iter().map(|v| v.to_string()).collect();
        strs.join(" ") + "\n"
    }
}

fn validate_word(word: &[usize]) -> Result<(), ModelError> {
    if word.len() % 2 != 0 {
        return Err(ModelError::NotDoubleOccurrence);
    }
    let n = word.len() / 2;
    let mut count = vec![0usize; n];
    for &v in word {
        if v >= n {
            return Err(ModelError::NotDoubleOccurrence);
        }
        count[v] += 1;
    }
    if count.iter().any(|&c| c != 2) {
        return Err(ModelError::NotDoubleOccurrence);
    }
    Ok(())
}

/// Interlacement graph of a double occurrence word.
pub fn interlacement(word: &[usize]) -> Result<Graph, ModelError> {
    validate_word(word)?;
    let n = word.len() / 2;
    let mut first = vec![usize::MAX; n];
    let mut span = vec![(0usize, 0usize); n];
    for (i, &v) in word.iter().enumerate() {
        if first[v] == usize::MAX {
            first[v] = i;
        } else {
            span[v] = (first[v], i);
        }
    }
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            let (a, b) = span[u];
            let (c, d) = span[v];
            let inside_c = a < c && c < b;
            let inside_d = a < d && d < b;
            if inside_c != inside_d {
                g.add_edge(u, v);
            }
        }
    }
    Ok(g)
}

/// Exhaustive search for a double occurrence word whose interlacement is
/// exactly `g`. Position 0 is fixed to the first occurrence of vertex 0
/// (every realizable word has such a rotation). Deterministic: the first
/// word in the search order is returned.
pub fn search_model(g: &Graph) -> Option<ChordModel> {
    let n = g.n();
    if n == 0 {
        return Some(ChordModel { word: Vec::new(), arcs: Vec::new() });
    }
    let mut word: Vec<usize> = Vec::with_capacity(2 * n);
    // open chords in opening order: (vertex, open position)
    let mut open: Vec<usize> = Vec::new();
    let mut used: u128 = 0;
    let mut closed: u128 = 0;

    fn rec(
        g: &Graph,
        word: &mut Vec<usize>,
        open: &mut Vec<usize>,
        used: &mut u128,
        closed: &mut u128,
    ) -> bool {
        let n = g.n();
        if word.len() == 2 * n {
            return true;
        }
        // try closing each open chord, oldest first
        for i in 0..open.len() {
            let u = open[i];
            // every still-open v must cross u exactly when it opened later
            let mut ok = g.nb(u) & !(*used) == 0;
            if ok {
                for (j, &v) in open.iter().enumerate() {
                    if v != u && g.has_edge(u, v) != (j > i) {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                let saved = open.remove(i);
                word.push(u);
                *closed |= 1 << u;
                if rec(g, word, open, used, closed) {
                    return true;
                }
                *closed &= !(1 << u);
                word.pop();
                open.insert(i, saved);
            }
        }
        // try opening an unused vertex
        for w in 0..n {
            if *used & (1 << w) != 0 {
                continue;
            }
            *used |= 1 << w;
            open.push(w);
            word.push(w);
            if rec(g, word, open, used, closed) {
                return true;
            }
            word.pop();
            open.pop();
            *used &= !(1 << w);
        }
        false
    }

    // fix the start: open vertex 0 at position 0
    used |= 1;
    open.push(0);
    word.push(0);
    if rec(g, &mut word, &mut open, &mut used, &mut closed) {
        Some(ChordModel { word, arcs: Vec::new() })
    } else {
        None
    }
}

/// Model for a split composition `g1 *_{(m1, m2)} g2`, built from factor
/// models. `relabel1[v]` / `relabel2[v]` give the composed id of non-marker
/// vertex `v`; the marker entries are ignored.
pub fn compose_models(
    w1: &[usize],
    m1: usize,
    relabel1: &[usize],
    w2: &[usize],
    m2: usize,
    relabel2: &[usize],
    n_out: usize,
) -> ChordModel {
    // split w2 circularly at the two occurrences of m2
    let p = w2.iter().position(|&v| v == m2).unwrap();
    let q = w2.iter().rposition(|&v| v == m2).unwrap();
    let seg_x: Vec<usize> = w2[p + 1..q].to_vec();
    let seg_y: Vec<usize> = w2[q + 1..].iter().chain(w2[..p].iter()).copied().collect();

    let mut word: Vec<usize> = Vec::with_capacity(2 * n_out);
    let mut seen_m1 = false;
    for &v in w1 {
        if v == m1 {
            let seg = if seen_m1 { &seg_y } else { &seg_x };
            seen_m1 = true;
            word.extend(seg.iter().map(|&x| relabel2[x]));
        } else {
            word.push(relabel1[v]);
        }
    }
    debug_assert_eq!(word.len(), 2 * n_out);
    ChordModel { word, arcs: Vec::new() }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interlacement_basics() {
        // a b a b -> K2
        let g = interlacement(&[0, 1, 0, 1]).unwrap();
        assert!(g.has_edge(0, 1));
        // a a b b -> 2 isolated vertices
        let g = interlacement(&[0, 0, 1, 1]).unwrap();
        assert_eq!(g.edge_count(), 0);
        // a b c a b c -> K3
        let g = interlacement(&[0, 1, 2, 0, 1, 2]).unwrap();
        assert_eq!(g.edge_count(), 3);
    }

    #[test]
    fn interlacement_rejects_bad_words() {
        assert!(interlacement(&[0, 1, 0]).is_err());
        assert!(interlacement(&[0, 0, 0, 0]).is_err());
        assert!(interlacement(&[0, 1, 2, 0, 1, 1]).is_err());
    }

    #[test]
    fn interlacement_rotation_reflection_invariant() {
        let w = [0usize, 1, 2, 0, 3, 1, 2, 3];
        let g = interlacement(&w).unwrap();
        for r in 0..w.len() {
            let rot: Vec<usize> = (0..w.len()).map(|i| w[(i + r) % w.len()]).collect();
            assert_eq!(interlacement(&rot).unwrap(), g);
        }
        let refl: Vec<usize> = w.iter().rev().copied().collect();
        assert_eq!(interlacement(&refl).unwrap(), g);
    }

    #[test]
    fn search_finds_models_for_small_graphs() {
        let c5 = Graph::cycle(5);
        let m = search_model(&c5).expect("C5 is a circle graph");
        assert_eq!(m.interlacement(), c5);

        let k4 = Graph::complete(4);
        let m = search_model(&k4).expect("cliques are circle graphs");
        assert_eq!(m.interlacement(), k4);
    }

    #[test]
    fn search_rejects_w5() {
        // W5: C5 plus a hub adjacent to all, the smallest non-circle graph
        let mut w5 = Graph::cycle(5);
        let mut g = Graph::new(6);
        for (u, v) in w5.edges() {
            g.add_edge(u, v);
        }
        for u in 0..5 {
            g.add_edge(u, 5);
        }
        w5 = g;
        assert!(search_model(&w5).is_none());
    }

    #[test]
    fn canonical_search_completeness_small() {
        // against fully unrestricted enumeration for n <= 4
        fn unrestricted(g: &Graph) -> bool {
            let n = g.n();
            let mut word: Vec<usize> = (0..n).flat_map(|v| [v, v]).collect();
            // enumerate all permutations of the multiset via sorting + next_permutation
            word.sort_unstable();
            loop {
                if interlacement(&word).map(|h| h == *g).unwrap_or(false) {
                    return true;
                }
                if !next_permutation(&mut word) {
                    return false;
                }
            }
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
        let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        for code in 0u32..64 {
            let mut g = Graph::new(4);
            for (b, &(u, v)) in pairs.iter().enumerate() {
                if code >> b & 1 == 1 {
                    g.add_edge(u, v);
                }
            }
            assert_eq!(search_model(&g).is_some(), unrestricted(&g), "code {code}");
        }
        // spot-check n = 5 (every 5-vertex graph is a circle graph except
        // none; the point is exact-equality completeness)
        let pairs5: Vec<(usize, usize)> =
            (0..5).flat_map(|u| (u + 1..5).map(move |v| (u, v))).collect();
        let mut x: u64 = 0xabcdef;
        for _ in 0..12 {
            x = x.wrapping_mul(6364136223846793005).wrapping_add(1);
            let code = (x >> 20) as u32 & 0x3ff;
            let mut g = Graph::new(5);
            for (b, &(u, v)) in pairs5.iter().enumerate() {
                if code >> b & 1 == 1 {
                    g.add_edge(u, v);
                }
            }
            assert_eq!(search_model(&g).is_some(), unrestricted(&g), "code {code}");
        }
    }

    #[test]
    fn model_format_round_trip() {
        let m = ChordModel::new(vec![0, 1, 2, 0, 1, 2]).unwrap();
        let text = m.emit();
        let m2 = ChordModel::parse(&text).unwrap();
        assert_eq!(m, m2);
    }

    #[test]
    fn compose_models_yields_composed_graph() {
        // g1 = P3 (0-1-2) with marker 2; g2 = star center 0 with marker 1
        let g1 = Graph::from_edges(3, &[(0, 1), (1, 2)]);
        let g2 = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]);
        let composed = Graph::split_composition(&g1, 2, &g2, 1).unwrap();
        let w1 = search_model(&g1).unwrap();
        let w2 = search_model(&g2).unwrap();
        // relabel: g1 keeps {0,1} -> {0,1}; g2 keeps {0,2,3} -> {2,3,4}
        let relabel1 = vec![0, 1, usize::MAX];
        let relabel2 = vec![2, usize::MAX, 3, 4];
        let m = compose_models(&w1.word, 2, &relabel1, &w2.word, 1, &relabel2, 5);
        assert_eq!(m.interlacement(), composed);
    }
}
