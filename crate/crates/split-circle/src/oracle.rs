//! Ground-truth engines: circle recognition by exhaustive chord search
//! (memoized by canonical form), and enumeration of split graphs.

use std::collections::HashMap;
use std::sync::Mutex;

use crate::chord::search_model;
use crate::error::OracleError;
use crate::graph::Graph;

#[derive(Clone, Debug)]
pub struct OracleConfig {
    /// Max vertices for the chord-model search.
    pub circle_cap: usize,
    /// Max columns for permutation-based matrix oracles.
    pub matrix_cap: usize,
    /// Seed for sampled suites.
    pub seed: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { circle_cap: 9, matrix_cap: 8, seed: 0x5eed }
    }
}

/// Circle oracle with a canonical-form memo shared across queries.
pub struct CircleOracle {
    pub cfg: OracleConfig,
    memo: Mutex<HashMap<Vec<u64>, bool>>,
}

impl CircleOracle {
    pub fn new(cfg: OracleConfig) -> CircleOracle {
        CircleOracle { cfg, memo: Mutex::new(HashMap::new()) }
    }

    pub fn is_circle(&self, g: &Graph) -> Result<bool, OracleError> {
        if g.n() > self.cfg.circle_cap {
            return Err(OracleError::TooLarge { size: g.n(), cap: self.cfg.circle_cap });
        }
        let key = g.canonical_code();
        if let Some(&v) = self.memo.lock().unwrap().get(&key) {
            return Ok(v);
        }
        let v = search_model(g).is_some();
        self.memo.lock().unwrap().insert(key, v);
        Ok(v)
    }
}

/// One representative per isomorphism class of split graphs on `n`
/// vertices, by enumerating (clique size, bipartite attachment) pairs and
/// deduplicating canonically.
pub fn enumerate_split_graphs(n: usize) -> Vec<Graph> {
    assert!(n <= 8, "enumeration intended for n <= 8");
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for k in 0..=n {
        let s = n - k;
        let bits = k * s;
        for code in 0u64..1 << bits {
            let mut g = Graph::new(n);
            for u in 0..k {
                for v in u + 1..k {
                    g.add_edge(u, v);
                }
            }
            for u in 0..k {
                for w in 0..s {
                    if code >> (u * s + w) & 1 == 1 {
                        g.add_edge(u, k + w);
                    }
                }
            }
            let key = g.canonical_code();
            if seen.insert(key) {
                out.push(g);
            }
        }
    }
    out
}

/// Deterministic random split graph on `n` vertices.
pub fn random_split_graph(n: usize, rng: &mut impl rand::Rng) -> Graph {
    let k = rng.gen_range(1..n);
    let mut g = Graph::new(n);
    for u in 0..k {
        for v in u + 1..k {
            g.add_edge(u, v);
        }
    }
    for u in 0..k {
        for w in k..n {
            if rng.gen_bool(0.5) {
                g.add_edge(u, w);
            }
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_graph_counts() {
        assert_eq!(enumerate_split_graphs(1).len(), 1);
        assert_eq!(enumerate_split_graphs(2).len(), 2);
        assert_eq!(enumerate_split_graphs(3).len(), 4);
        assert_eq!(enumerate_split_graphs(4).len(), 9);
        assert_eq!(enumerate_split_graphs(5).len(), 21);
    }

    #[test]
    fn oracle_on_known_graphs() {
        let oracle = CircleOracle::new(OracleConfig::default());
        assert!(oracle.is_circle(&Graph::cycle(5)).unwrap());
        assert!(oracle.is_circle(&Graph::complete(6)).unwrap());
        // W5
        let mut w5 = Graph::cycle(5);
        let mut g = Graph::new(6);
        for (u, v) in w5.edges() {
            g.add_edge(u, v);
        }
        for u in 0..5 {
            g.add_edge(u, 5);
        }
        w5 = g;
        assert!(!oracle.is_circle(&w5).unwrap());
        assert!(oracle.is_circle(&Graph::complete(12)).is_err());
    }

    #[test]
    fn oracle_is_isomorphism_invariant() {
        let oracle = CircleOracle::new(OracleConfig::default());
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)]);
        let h = g.relabel(&[5, 3, 1, 0, 2, 4]);
        assert_eq!(oracle.is_circle(&g).unwrap(), oracle.is_circle(&h).unwrap());
    }
}
