//! Simple undirected graphs on at most 128 vertices.
//!
//! Adjacency is stored as one `u128` bitmask per vertex, so induced
//! subgraphs, complements and local complements are word-parallel
//! set operations.

use std::fmt;

use crate::error::GraphError;

pub const MAX_VERTICES: usize = 128;

/// An injective map from pattern vertices to host vertices that preserves
/// both adjacency and non-adjacency.
pub type Embedding = Vec<usize>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u128>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

fn bit(u: usize) -> u128 {
    1u128 << u
}

impl Graph {
    pub fn new(n: usize) -> Self {
        assert!(n <= MAX_VERTICES, "graph too large");
        Graph { n, adj: vec![0; n] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::new(n);
        for u in 0..n {
            g.add_edge(u, (u + 1) % n);
        }
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.n && v < self.n && u != v, "bad edge ({u},{v})");
        self.adj[u] |= bit(v);
        self.adj[v] |= bit(u);
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u] &= !bit(v);
        self.adj[v] &= !bit(u);
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.adj[u] & bit(v) != 0
    }

    /// Neighbourhood of `u` as a bitmask.
    pub fn nb(&self, u: usize) -> u128 {
        self.adj[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].count_ones() as usize
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        BitIter(self.adj[u])
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in self.neighbors(u) {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2
    }

    /// Induced subgraph on `vs`; vertex `i` of the result is `vs[i]`.
    pub fn induced(&self, vs: &[usize]) -> Result<Graph, GraphError> {
        let mut seen = 0u128;
        for &v in vs {
            if v >= self.n {
                return Err(GraphError::InvalidVertex(v));
            }
            if seen & bit(v) != 0 {
                return Err(GraphError::DuplicateVertex(v));
            }
            seen |= bit(v);
        }
        let mut g = Graph::new(vs.len());
        for (i, &u) in vs.iter().enumerate() {
            for (j, &v) in vs.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        Ok(g)
    }

    pub fn complement(&self) -> Graph {
        let full = if self.n == MAX_VERTICES {
            !0u128
        } else {
            bit(self.n) - 1
        };
        let adj = (0..self.n)
            .map(|u| (!self.adj[u] & full) & !bit(u))
            .collect();
        Graph { n: self.n, adj }
    }

    /// Local complement `G * u`: toggle all edges inside N(u).
    pub fn local_complement(&self, u: usize) -> Result<Graph, GraphError> {
        if u >= self.n {
            return Err(GraphError::InvalidVertex(u));
        }
        let nbu = self.adj[u];
        let mut g = self.clone();
        for v in BitIter(nbu) {
            // toggle v's adjacency inside N(u), keeping v itself out
            g.adj[v] ^= nbu & !bit(v);
        }
        Ok(g)
    }

    /// Pivot `G × uv = G * u * v * u`; requires `uv` to be an edge.
    pub fn pivot(&self, u: usize, v: usize) -> Result<Graph, GraphError> {
        if !self.has_edge(u, v) {
            return Err(GraphError::NotAnEdge(u, v));
        }
        Ok(self
            .local_complement(u)?
            .local_complement(v)?
            .local_complement(u)?)
    }

    /// Split composition of `g1` and `g2` at marker vertices `v1`, `v2`.
    /// The result keeps `g1`'s non-marker vertices first (original order),
    /// then `g2`'s.
    pub fn split_composition(
        g1: &Graph,
        v1: usize,
        g2: &Graph,
        v2: usize,
    ) -> Result<Graph, GraphError> {
        if g1.n < 3 || g2.n < 3 {
            return Err(GraphError::FactorTooSmall);
        }
        if v1 >= g1.n {
            return Err(GraphError::InvalidVertex(v1));
        }
        if v2 >= g2.n {
            return Err(GraphError::InvalidVertex(v2));
        }
        let m1: Vec<usize> = (0..g1.n).filter(|&x| x != v1).collect();
        let m2: Vec<usize> = (0..g2.n).filter(|&x| x != v2).collect();
        let mut g = Graph::new(m1.len() + m2.len());
        for i in 0..m1.len() {
            for j in i + 1..m1.len() {
                if g1.has_edge(m1[i], m1[j]) {
                    g.add_edge(i, j);
                }
            }
        }
        for i in 0..m2.len() {
            for j in i + 1..m2.len() {
                if g2.has_edge(m2[i], m2[j]) {
                    g.add_edge(m1.len() + i, m1.len() + j);
                }
            }
        }
        for (i, &a) in m1.iter().enumerate() {
            if !g1.has_edge(a, v1) {
                continue;
            }
            for (j, &b) in m2.iter().enumerate() {
                if g2.has_edge(b, v2) {
                    g.add_edge(i, m1.len() + j);
                }
            }
        }
        Ok(g)
    }

    /// Parse the graph text format: first line `n m`, then `m` lines `u v`.
    /// Lines starting with `#` are ignored.
    pub fn parse(text: &str) -> Result<Graph, GraphError> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or(GraphError::Empty)?;
        let mut it = header.split_whitespace();
        let n: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| GraphError::Parse("bad header".into()))?;
        let m: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| GraphError::Parse("bad header".into()))?;
        if n > MAX_VERTICES {
            return Err(GraphError::Parse(format!("n={n} too large")));
        }
        let mut g = Graph::new(n);
        let mut count = 0;
        for line in lines {
            let mut it = line.split_whitespace();
            let u: usize = it
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| GraphError::Parse(format!("bad edge line: {line}")))?;
            let v: usize = it
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| GraphError::Parse(format!("bad edge line: {line}")))?;
            if u >= n || v >= n || u == v {
                return Err(GraphError::Parse(format!("bad edge {u} {v}")));
            }
            g.add_edge(u, v);
            count += 1;
        }
        if count != m {
            return Err(GraphError::Parse(format!(
                "header says {m} edges, found {count}"
            )));
        }
        Ok(g)
    }

    /// Emit the text format with edges in lexicographic order, `u < v`.
    pub fn emit(&self) -> String {
        let edges = self.edges();
        let mut s = format!("{} {}\n", self.n, edges.len());
        for (u, v) in edges {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.n).map(|u| self.degree(u)).collect();
        d.sort_unstable();
        d
    }

    /// Canonical form: the lexicographically greatest upper-triangle
    /// adjacency bitstring over all vertex orderings. Intended for n ≤ 12.
    pub fn canonical_code(&self) -> Vec<u64> {
        crate::canon::canonical_code(self)
    }

    pub fn is_isomorphic(&self, other: &Graph) -> bool {
        self.n == other.n
            && self.degree_sequence() == other.degree_sequence()
            && self.canonical_code() == other.canonical_code()
    }

    /// First induced-subgraph embedding of `pattern` into `self`, if any.
    /// `restrict`, when given, limits the host candidates of each pattern
    /// vertex.
    pub fn find_induced(&self, pattern: &Graph, restrict: Option<&[u128]>) -> Option<Embedding> {
        find_induced(self, pattern, restrict)
    }

    /// Relabel vertices: vertex `v` of self becomes `perm[v]` in the result.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        let mut g = Graph::new(self.n);
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]);
        }
        g
    }
}

pub struct BitIter(pub u128);

impl Iterator for BitIter {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let i = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(i)
        }
    }
}

/// Iterate the vertices of a bitmask into a vector.
pub fn mask_to_vec(mask: u128) -> Vec<usize> {
    BitIter(mask).collect()
}

fn find_induced(host: &Graph, pattern: &Graph, restrict: Option<&[u128]>) -> Option<Embedding> {
    let np = pattern.n();
    let nh = host.n();
    if np > nh {
        return None;
    }
    if np == 0 {
        return Some(Vec::new());
    }
    // order pattern vertices: highest degree first, then by connectivity to
    // already-ordered vertices
    let mut porder: Vec<usize> = Vec::with_capacity(np);
    let mut left: Vec<usize> = (0..np).collect();
    left.sort_by_key(|&u| std::cmp::Reverse(pattern.degree(u)));
    while !left.is_empty() {
        let placed: u128 = porder.iter().map(|&u| 1u128 << u).sum();
        let pos = left
            .iter()
            .position(|&u| (pattern.nb(u) & placed) != 0)
            .unwrap_or(0);
        porder.push(left.remove(pos));
    }

    let full_host = if nh == MAX_VERTICES { !0u128 } else { (1u128 << nh) - 1 };
    let mut assign: Vec<usize> = vec![usize::MAX; np];
    let mut used_host = 0u128;

    fn rec(
        host: &Graph,
        pattern: &Graph,
        porder: &[usize],
        depth: usize,
        assign: &mut Vec<usize>,
        used_host: &mut u128,
        restrict: Option<&[u128]>,
        full_host: u128,
    ) -> bool {
        if depth == porder.len() {
            return true;
        }
        let pu = porder[depth];
        // candidates: intersect adjacency constraints against placed vertices
        let mut cand = full_host & !*used_host;
        if let Some(r) = restrict {
            cand &= r[pu];
        }
        for d in 0..depth {
            let pv = porder[d];
            let hv = assign[pv];
            if pattern.has_edge(pu, pv) {
                cand &= host.nb(hv);
            } else {
                cand &= !host.nb(hv);
            }
            if cand == 0 {
                return false;
            }
        }
        for hu in BitIter(cand) {
            if host.degree(hu) < pattern.degree(pu) {
                continue;
            }
            assign[pu] = hu;
            *used_host |= 1u128 << hu;
            if rec(host, pattern, porder, depth + 1, assign, used_host, restrict, full_host) {
                return true;
            }
            *used_host &= !(1u128 << hu);
            assign[pu] = usize::MAX;
        }
        false
    }

    if rec(
        host,
        pattern,
        &porder,
        0,
        &mut assign,
        &mut used_host,
        restrict,
        full_host,
    ) {
        Some(assign)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn format_round_trip() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        let text = g.emit();
        let h = Graph::parse(&text).unwrap();
        assert_eq!(g, h);
        assert_eq!(h.emit(), text);
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert!(Graph::parse("").is_err());
        assert!(Graph::parse("2 1\n0 0\n").is_err());
        assert!(Graph::parse("2 2\n0 1\n").is_err());
    }

    #[test]
    fn complement_involution() {
        let g = Graph::from_edges(6, &[(0, 1), (2, 3), (4, 5), (0, 5)]);
        assert_eq!(g.complement().complement(), g);
    }

    #[test]
    fn complement_of_k4_is_empty() {
        let g = Graph::complete(4);
        assert_eq!(g.complement().edge_count(), 0);
    }

    #[test]
    fn c5_self_complementary() {
        let c5 = Graph::cycle(5);
        assert!(c5.is_isomorphic(&c5.complement()));
    }

    #[test]
    fn local_complement_involution() {
        let g = Graph::from_edges(6, &[(0, 1), (0, 2), (0, 3), (1, 2), (3, 4), (4, 5)]);
        for u in 0..6 {
            let h = g.local_complement(u).unwrap().local_complement(u).unwrap();
            assert_eq!(h, g);
        }
    }

    #[test]
    fn pivot_matches_definition() {
        // path a-b-c: pivoting on (a,b) must equal the three-step expansion
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]);
        let p = g.pivot(0, 1).unwrap();
        let q = g
            .local_complement(0)
            .unwrap()
            .local_complement(1)
            .unwrap()
            .local_complement(0)
            .unwrap();
        assert_eq!(p, q);
        assert!(g.pivot(0, 2).is_err());
    }

    #[test]
    fn pivot_twice_restores_c4() {
        let c4 = Graph::cycle(4);
        let p = c4.pivot(0, 1).unwrap().pivot(0, 1).unwrap();
        assert_eq!(p, c4);
    }

    #[test]
    fn split_composition_of_stars_is_c4() {
        // two K_{1,2} composed at their centers: the leaf sets become
        // completely joined, giving C4
        let star = Graph::from_edges(3, &[(0, 1), (0, 2)]);
        let g = Graph::split_composition(&star, 0, &star, 0).unwrap();
        assert_eq!(g.n(), 4);
        assert!(g.is_isomorphic(&Graph::cycle(4)));
    }

    #[test]
    fn split_composition_size() {
        let g1 = Graph::complete(4);
        let g2 = Graph::cycle(5);
        let g = Graph::split_composition(&g1, 0, &g2, 2).unwrap();
        assert_eq!(g.n(), 4 + 5 - 2);
        assert!(Graph::split_composition(&g1, 0, &Graph::complete(2), 0).is_err());
    }

    #[test]
    fn induced_subgraph_examples() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]);
        let h = g.induced(&[0, 1, 2]).unwrap();
        assert_eq!(h.edges(), vec![(0, 1), (1, 2)]);
        assert_eq!(g.induced(&[]).unwrap().n(), 0);
        assert!(g.induced(&[0, 0]).is_err());
        assert!(g.induced(&[5]).is_err());
    }

    #[test]
    fn induced_matches_edge_filter_oracle() {
        // deterministic "random" 8-vertex graph
        let mut g = Graph::new(8);
        let mut x: u64 = 0x9e3779b97f4a7c15;
        for u in 0..8 {
            for v in u + 1..8 {
                x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                if x >> 63 == 1 {
                    g.add_edge(u, v);
                }
            }
        }
        let vs = [7, 2, 4, 0, 5];
        let h = g.induced(&vs).unwrap();
        for i in 0..vs.len() {
            for j in 0..vs.len() {
                if i != j {
                    assert_eq!(h.has_edge(i, j), g.has_edge(vs[i], vs[j]));
                }
            }
        }
    }

    #[test]
    fn isomorphism_basics() {
        let c5 = Graph::cycle(5);
        let relabeled = c5.relabel(&[3, 1, 4, 0, 2]);
        assert!(c5.is_isomorphic(&relabeled));
        // K3 + isolated vs paw differ
        let k3_k1 = Graph::from_edges(4, &[(0, 1), (1, 2), (0, 2)]);
        let paw = Graph::from_edges(4, &[(0, 1), (1, 2), (0, 2), (2, 3)]);
        assert!(!k3_k1.is_isomorphic(&paw));
    }

    #[test]
    fn find_induced_basics() {
        let host = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]);
        let emb = host.find_induced(&p3, None).unwrap();
        assert!(host.has_edge(emb[0], emb[1]) && host.has_edge(emb[1], emb[2]));
        assert!(!host.has_edge(emb[0], emb[2]));
        let k4 = Graph::complete(4);
        assert!(host.find_induced(&k4, None).is_none());
    }

    #[test]
    fn find_induced_agrees_with_subset_enumeration() {
        // host: deterministic 8-vertex graph; pattern: all graphs on 4 vertices
        let mut g = Graph::new(8);
        let mut x: u64 = 42;
        for u in 0..8 {
            for v in u + 1..8 {
                x = x.wrapping_mul(6364136223846793005).wrapping_add(1);
                if x >> 62 & 1 == 1 {
                    g.add_edge(u, v);
                }
            }
        }
        for code in 0u32..64 {
            let mut pat = Graph::new(4);
            let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
            for (b, &(u, v)) in pairs.iter().enumerate() {
                if code >> b & 1 == 1 {
                    pat.add_edge(u, v);
                }
            }
            let found = g.find_induced(&pat, None).is_some();
            let mut brute = false;
            'outer: for a in 0..8 {
                for b in 0..8 {
                    for c in 0..8 {
                        for d in 0..8 {
                            let vs = [a, b, c, d];
                            let mut distinct = true;
                            for i in 0..4 {
                                for j in i + 1..4 {
                                    if vs[i] == vs[j] {
                                        distinct = false;
                                    }
                                }
                            }
                            if !distinct {
                                continue;
                            }
                            let mut ok = true;
                            for i in 0..4 {
                                for j in i + 1..4 {
                                    if g.has_edge(vs[i], vs[j]) != pat.has_edge(i, j) {
                                        ok = false;
                                    }
                                }
                            }
                            if ok {
                                brute = true;
                                break 'outer;
                            }
                        }
                    }
                }
            }
            assert_eq!(found, brute, "pattern code {code}");
        }
    }
}
