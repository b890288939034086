//! Split partitions and detection of the four anchor subgraphs
//! (tent, 4-tent, co-4-tent, net).

use crate::graph::{Embedding, Graph};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitPartition {
    pub k: Vec<usize>,
    pub s: Vec<usize>,
}

impl SplitPartition {
    pub fn k_mask(&self) -> u128 {
        self.k.iter().map(|&v| 1u128 << v).sum()
    }
    pub fn s_mask(&self) -> u128 {
        self.s.iter().map(|&v| 1u128 << v).sum()
    }

    pub fn is_valid(&self, g: &Graph) -> bool {
        let mut all: Vec<usize> = self.k.iter().chain(self.s.iter()).copied().collect();
        all.sort_unstable();
        if all != (0..g.n()).collect::<Vec<_>>() {
            return false;
        }
        is_clique(g, &self.k) && is_stable_mask(g, self.s_mask())
    }
}

fn is_clique(g: &Graph, vs: &[usize]) -> bool {
    vs.iter().enumerate().all(|(i, &u)| vs[i + 1..].iter().all(|&v| g.has_edge(u, v)))
}

fn is_stable_mask(g: &Graph, mask: u128) -> bool {
    crate::graph::BitIter(mask).all(|u| g.nb(u) & mask == 0)
}

/// Split partition maximizing |K|; ties broken by the lexicographically
/// least K (as a sorted vertex list). Exact search for n <= 16, else the
/// Hammer-Simeone degree construction.
pub fn split_partition(g: &Graph) -> Option<SplitPartition> {
    let n = g.n();
    if n == 0 {
        return Some(SplitPartition { k: vec![], s: vec![] });
    }
    // splittance test on the degree sequence
    let mut deg: Vec<usize> = (0..n).map(|u| g.degree(u)).collect();
    deg.sort_unstable_by(|a, b| b.cmp(a));
    let m = (1..=n).filter(|&i| deg[i - 1] >= i - 1).max().unwrap_or(0);
    let lhs: usize = deg[..m].iter().sum();
    let rhs: usize = m * (m - 1) + deg[m..].iter().sum::<usize>();
    if lhs != rhs {
        return None;
    }
    if n <= 16 {
        // the clique side has size m or m-1; search larger size first,
        // lexicographically smallest subset first
        for size in [m, m.saturating_sub(1)] {
            let mut best: Option<Vec<usize>> = None;
            let mut cur = Vec::new();
            rec_clique(g, 0, size, &mut cur, &mut best);
            if let Some(k) = best {
                let k_mask: u128 = k.iter().map(|&v| 1u128 << v).sum();
                let s = (0..n).filter(|&v| k_mask >> v & 1 == 0).collect();
                return Some(SplitPartition { k, s });
            }
        }
        None
    } else {
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&u| (std::cmp::Reverse(g.degree(u)), u));
        for size in [m, m.saturating_sub(1)] {
            let mut k = order[..size].to_vec();
            k.sort_unstable();
            let k_mask: u128 = k.iter().map(|&v| 1u128 << v).sum();
            let s: Vec<usize> = (0..n).filter(|&v| k_mask >> v & 1 == 0).collect();
            let sp = SplitPartition { k, s };
            if is_clique(g, &sp.k) && is_stable_mask(g, sp.s_mask()) {
                return Some(sp);
            }
        }
        None
    }
}

fn rec_clique(g: &Graph, start: usize, size: usize, cur: &mut Vec<usize>, best: &mut Option<Vec<usize>>) {
    if best.is_some() {
        return;
    }
    if cur.len() == size {
        let mask: u128 = cur.iter().map(|&v| 1u128 << v).sum();
        let full = if g.n() == 128 { !0u128 } else { (1u128 << g.n()) - 1 };
        if is_stable_mask(g, full & !mask) {
            *best = Some(cur.clone());
        }
        return;
    }
    for v in start..g.n() {
        if g.n() - v < size - cur.len() {
            break;
        }
        if cur.iter().all(|&u| g.has_edge(u, v)) {
            cur.push(v);
            rec_clique(g, v + 1, size, cur, best);
            cur.pop();
            if best.is_some() {
                return;
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum CaseKind {
    Tent,
    FourTent,
    CoFourTent,
    Net,
    None,
}

/// Anchor embedding: maps the anchor's named vertices to host vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseWitness {
    pub kind: CaseKind,
    pub embedding: Embedding,
}

/// The tent: clique k1,k3,k5 = 0,1,2; s13=3 ~ {0,1}, s35=4 ~ {1,2},
/// s51=5 ~ {2,0}.
pub fn tent() -> Graph {
    Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 0), (3, 1), (4, 1), (4, 2), (5, 2), (5, 0)])
}

/// The 4-tent: clique k1,k2,k4,k5 = 0,1,2,3; s12=4 ~ {0,1}, s24=5 ~ {1,2},
/// s45=6 ~ {2,3}.
pub fn four_tent() -> Graph {
    Graph::from_edges(
        7,
        &[
            (0, 1),
            (0, 2),
            (0, 3),
            (1, 2),
            (1, 3),
            (2, 3),
            (4, 0),
            (4, 1),
            (5, 1),
            (5, 2),
            (6, 2),
            (6, 3),
        ],
    )
}

/// The co-4-tent: clique k1,k3,k5 = 0,1,2; s13=3 ~ {0,1}, s35=4 ~ {1,2},
/// s1=5 ~ {0}, s5=6 ~ {2}.
pub fn co_four_tent() -> Graph {
    Graph::from_edges(
        7,
        &[(0, 1), (1, 2), (0, 2), (3, 0), (3, 1), (4, 1), (4, 2), (5, 0), (6, 2)],
    )
}

/// The net: triangle 0,1,2 with pendants 3 ~ 0, 4 ~ 1, 5 ~ 2.
pub fn net() -> Graph {
    Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 0), (4, 1), (5, 2)])
}

fn anchor_clique_count(kind: CaseKind) -> usize {
    match kind {
        CaseKind::Tent => 3,
        CaseKind::FourTent => 4,
        CaseKind::CoFourTent => 3,
        CaseKind::Net => 3,
        CaseKind::None => 0,
    }
}

pub fn anchor_graph(kind: CaseKind) -> Graph {
    match kind {
        CaseKind::Tent => tent(),
        CaseKind::FourTent => four_tent(),
        CaseKind::CoFourTent => co_four_tent(),
        CaseKind::Net => net(),
        CaseKind::None => Graph::new(0),
    }
}

/// Lexicographically least typed embedding of the anchor into `g`, mapping
/// anchor vertices in index order, clique-side vertices restricted to K
/// and the rest to S.
fn find_typed_lex(g: &Graph, sp: &SplitPartition, kind: CaseKind) -> Option<Embedding> {
    let pattern = anchor_graph(kind);
    let kc = anchor_clique_count(kind);
    let kmask = sp.k_mask();
    let smask = sp.s_mask();
    let np = pattern.n();
    let mut assign = vec![usize::MAX; np];
    let mut used = 0u128;
    fn rec(
        g: &Graph,
        pattern: &Graph,
        kc: usize,
        kmask: u128,
        smask: u128,
        depth: usize,
        assign: &mut Vec<usize>,
        used: &mut u128,
    ) -> bool {
        if depth == pattern.n() {
            return true;
        }
        let mut cand = if depth < kc { kmask } else { smask };
        cand &= !*used;
        for d in 0..depth {
            if pattern.has_edge(depth, d) {
                cand &= g.nb(assign[d]);
            } else {
                cand &= !g.nb(assign[d]);
            }
        }
        for hu in crate::graph::BitIter(cand) {
            assign[depth] = hu;
            *used |= 1 << hu;
            if rec(g, pattern, kc, kmask, smask, depth + 1, assign, used) {
                return true;
            }
            *used &= !(1u128 << hu);
            assign[depth] = usize::MAX;
        }
        false
    }
    rec(g, &pattern, kc, kmask, smask, 0, &mut assign, &mut used).then_some(assign)
}

/// Case detection in the fixed priority order tent > 4-tent > co-4-tent >
/// net. In a split graph every induced copy of these anchors is typed
/// (clique part inside K, the rest inside S), so the typed search is
/// complete.
pub fn detect_case(g: &Graph, sp: &SplitPartition) -> CaseWitness {
    for kind in [CaseKind::Tent, CaseKind::FourTent, CaseKind::CoFourTent, CaseKind::Net] {
        if let Some(embedding) = find_typed_lex(g, sp, kind) {
            return CaseWitness { kind, embedding };
        }
    }
    CaseWitness { kind: CaseKind::None, embedding: Vec::new() }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_partition_examples() {
        let sp = split_partition(&tent()).unwrap();
        assert_eq!(sp.k, vec![0, 1, 2]);
        assert!(sp.is_valid(&tent()));
        let k5 = Graph::complete(5);
        let sp = split_partition(&k5).unwrap();
        assert_eq!(sp.k.len(), 5);
        assert!(split_partition(&Graph::cycle(4)).is_none());
        assert!(split_partition(&Graph::cycle(5)).is_none());
    }

    #[test]
    fn split_partition_matches_exhaustive_small() {
        for n in 1..=6usize {
            let pairs: Vec<(usize, usize)> =
                (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            let step = if n < 6 { 1 } else { 7 };
            let mut code = 0u64;
            while code < 1 << pairs.len() {
                let mut g = Graph::new(n);
                for (b, &(u, v)) in pairs.iter().enumerate() {
                    if code >> b & 1 == 1 {
                        g.add_edge(u, v);
                    }
                }
                let brute = (0u64..1 << n).any(|km| {
                    let kmask = km as u128;
                    let smask = !kmask & ((1u128 << n) - 1);
                    is_clique(&g, &crate::graph::mask_to_vec(kmask))
                        && is_stable_mask(&g, smask)
                });
                assert_eq!(split_partition(&g).is_some(), brute, "n={n} code={code}");
                if let Some(sp) = split_partition(&g) {
                    assert!(sp.is_valid(&g));
                }
                code += step;
            }
        }
    }

    #[test]
    fn anchors_are_split_and_detected() {
        for (g, kind) in [
            (tent(), CaseKind::Tent),
            (four_tent(), CaseKind::FourTent),
            (co_four_tent(), CaseKind::CoFourTent),
            (net(), CaseKind::Net),
        ] {
            let sp = split_partition(&g).unwrap();
            let cw = detect_case(&g, &sp);
            assert_eq!(cw.kind, kind);
            let pat = anchor_graph(kind);
            for i in 0..pat.n() {
                for j in 0..pat.n() {
                    if i != j {
                        assert_eq!(
                            pat.has_edge(i, j),
                            g.has_edge(cw.embedding[i], cw.embedding[j])
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn no_anchor_cases() {
        // K3 with one pendant stable vertex
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (0, 2), (3, 0)]);
        let sp = split_partition(&g).unwrap();
        assert_eq!(detect_case(&g, &sp).kind, CaseKind::None);
    }

    #[test]
    fn typed_search_matches_untyped_on_split_graphs() {
        for g in crate::oracle::enumerate_split_graphs(7) {
            let sp = split_partition(&g).unwrap();
            for kind in [CaseKind::Tent, CaseKind::FourTent, CaseKind::CoFourTent, CaseKind::Net] {
                let typed = find_typed_lex(&g, &sp, kind).is_some();
                let untyped = g.find_induced(&anchor_graph(kind), None).is_some();
                assert_eq!(typed, untyped, "kind {kind:?} on {g:?}");
            }
        }
    }
}
