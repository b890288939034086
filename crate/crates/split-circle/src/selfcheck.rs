//! The acceptance suite: every criterion is pinned here with its stated
//! tolerance and can be run via the CLI (`splitcircle selfcheck`) or the
//! `acceptance` integration test.

use rand::SeedableRng;
use rayon::prelude::*;

use crate::catalog::{apply_script, make_fsc, members_up_to, reduction_script, Family};
use crate::families::{d_patterns, f_patterns, mined_patterns, p_patterns, plain_patterns, s_patterns};
use crate::graph::Graph;
use crate::matrix::BitMatrix;
use crate::oracle::{enumerate_split_graphs, random_split_graph, CircleOracle, OracleConfig};
use crate::patterns::find_plain;
use crate::recognize::{recognize, VerdictStatus};
use crate::twonested::{is_2nested, oracle_is_2nested, oracle_is_nested};

pub struct CriterionResult {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

fn random_enriched(
    rng: &mut impl rand::Rng,
    max_r: usize,
    max_c: usize,
) -> crate::matrix::EnrichedMatrix {
    use crate::matrix::{Color, EnrichedMatrix, RowLabel};
    let nr = rng.gen_range(1..=max_r);
    let nc = rng.gen_range(1..=max_c);
    let mut rows = Vec::new();
    let mut labels = Vec::new();
    let mut colors = Vec::new();
    let mut empty_lr_color: Option<Option<Color>> = None;
    for _ in 0..nr {
        let bits: u128 = rng.gen_range(0..(1u128 << nc));
        let label = match rng.gen_range(0..8) {
            0 | 1 => RowLabel::L,
            2 | 3 => RowLabel::R,
            4 => RowLabel::LR,
            _ => RowLabel::U,
        };
        let color = match label {
            RowLabel::L | RowLabel::R => match rng.gen_range(0..3) {
                0 => Some(Color::Red),
                1 => Some(Color::Blue),
                _ => None,
            },
            RowLabel::LR if bits == 0 => *empty_lr_color.get_or_insert_with(|| {
                match rng.gen_range(0..3) {
                    0 => Some(Color::Red),
                    1 => Some(Color::Blue),
                    _ => None,
                }
            }),
            _ => None,
        };
        rows.push(bits);
        labels.push(label);
        colors.push(color);
    }
    EnrichedMatrix::new(BitMatrix::from_rows(nc, rows), labels, colors)
}

/// Criteria 1 and 6: recognition agrees with the oracle on every split
/// graph with <= 7 vertices (exhaustive) and 500 seeded random graphs on
/// 8-9 vertices; every CircleOK model interlaces back to the input
/// exactly.
pub fn characterization_and_models(cfg: &OracleConfig) -> (CriterionResult, CriterionResult) {
    let oracle = CircleOracle::new(cfg.clone());
    let mut suite: Vec<Graph> = Vec::new();
    for n in 1..=7 {
        suite.extend(enumerate_split_graphs(n));
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(cfg.seed);
    for i in 0..500 {
        let n = if i % 2 == 0 { 8 } else { 9 };
        suite.push(random_split_graph(n, &mut rng));
    }
    let results: Vec<(bool, bool)> = suite
        .par_iter()
        .map(|g| {
            let want = oracle.is_circle(g).unwrap();
            let out = match recognize(g, cfg) {
                Ok(o) => o,
                Err(_) => return (false, false),
            };
            let got = out.verdict.status == VerdictStatus::Circle;
            let verdict_ok = got == want;
            let model_ok = if got {
                out.model.as_ref().map_or(false, |m| m.interlacement() == *g)
            } else {
                true
            };
            (verdict_ok, model_ok)
        })
        .collect();
    let total = results.len();
    let verdict_bad = results.iter().filter(|r| !r.0).count();
    let model_bad = results.iter().filter(|r| !r.1).count();
    (
        CriterionResult {
            name: "1 characterization equivalence",
            pass: verdict_bad == 0,
            detail: format!("{}/{} agree with the oracle", total - verdict_bad, total),
        },
        CriterionResult {
            name: "6 model soundness",
            pass: model_bad == 0,
            detail: format!("{}/{} models interlace exactly", total - model_bad, total),
        },
    )
}

/// Criterion 2: every catalog member with <= 9 vertices is oracle
/// non-circle; the sun reduction scripts for k <= 10 land on a graph
/// containing their target.
pub fn obstruction_soundness(cfg: &OracleConfig) -> CriterionResult {
    let oracle = CircleOracle::new(cfg.clone());
    let mut checked = 0;
    let mut bad = Vec::new();
    for m in members_up_to(9) {
        checked += 1;
        if oracle.is_circle(&m.graph).unwrap() {
            bad.push(format!("{}({}) circle", m.family.name(), m.k));
        }
    }
    for (family, ks) in [
        (Family::OddSunCenter, vec![3usize, 5, 7, 9]),
        (Family::EvenSun, vec![4, 6, 8, 10]),
    ] {
        for k in ks {
            checked += 1;
            let member = make_fsc(family, k).unwrap();
            let (seq, target) = reduction_script(&member).unwrap();
            let reduced = apply_script(&member.graph, &seq);
            if reduced.find_induced(&target.graph(), None).is_none() {
                bad.push(format!("{}({}) script misses {:?}", family.name(), k, target));
            }
        }
    }
    CriterionResult {
        name: "2 obstruction soundness",
        pass: bad.is_empty(),
        detail: if bad.is_empty() {
            format!("{checked} members/scripts verified")
        } else {
            bad.join("; ")
        },
    }
}

/// Criterion 3: minimality of the catalog members (every vertex-deleted
/// subgraph is circle) plus pairwise subconfiguration-freeness of their
/// adjacency matrices at parameters <= 8.
pub fn minimality(cfg: &OracleConfig) -> CriterionResult {
    let oracle = CircleOracle::new(cfg.clone());
    let mut bad = Vec::new();
    let mut checked = 0;
    for m in members_up_to(9) {
        for v in 0..m.graph.n() {
            checked += 1;
            let vs: Vec<usize> = (0..m.graph.n()).filter(|&x| x != v).collect();
            let h = m.graph.induced(&vs).unwrap();
            if !oracle.is_circle(&h).unwrap() {
                bad.push(format!("{}({}) - {v} non-circle", m.family.name(), m.k));
            }
        }
    }
    // pairwise subconfiguration-freeness of the A(S,K) matrices
    let members: Vec<_> = members_up_to(17)
        .into_iter()
        .filter(|m| m.k <= 8)
        .collect();
    for a in &members {
        for b in &members {
            if a.family == b.family && a.k == b.k {
                continue;
            }
            checked += 1;
            let ma = crate::catalog::member_matrix(a.family, a.k).unwrap();
            let mb = crate::catalog::member_matrix(b.family, b.k).unwrap();
            if find_plain(&mb, &ma).is_some() {
                bad.push(format!(
                    "A(S,K) of {}({}) inside {}({})",
                    a.family.name(),
                    a.k,
                    b.family.name(),
                    b.k
                ));
            }
        }
    }
    CriterionResult {
        name: "3 minimality",
        pass: bad.is_empty(),
        detail: if bad.is_empty() { format!("{checked} checks") } else { bad.join("; ") },
    }
}

/// Criterion 4: the 2-nested engine agrees with its brute-force oracle on
/// every catalog matrix at desk parameters (all must fail) and on 500
/// seeded random enriched matrices with <= 4 rows and <= 5 columns.
pub fn two_nested_equivalence(cfg: &OracleConfig) -> CriterionResult {
    let mut bad = Vec::new();
    let mut checked = 0;
    let mut pats = Vec::new();
    pats.extend(plain_patterns(7, 7));
    pats.extend(d_patterns());
    pats.extend(f_patterns(7, 7));
    pats.extend(s_patterns(7, 7));
    pats.extend(p_patterns(7, 7));
    pats.extend(mined_patterns());
    for p in pats {
        let em = p.concretize();
        if em.ncols() > cfg.matrix_cap || em.validate().is_err() {
            continue;
        }
        checked += 1;
        let fast = is_2nested(&em).is_ok();
        let slow = oracle_is_2nested(&em, cfg.matrix_cap).unwrap().is_some();
        if fast || slow {
            bad.push(format!("{} not rejected (fast={fast} slow={slow})", p.tag));
        }
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x2ae57ed);
    let mut sampled = 0;
    while sampled < 500 {
        let em = random_enriched(&mut rng, 4, 5);
        if em.validate().is_err() {
            continue;
        }
        sampled += 1;
        checked += 1;
        let fast = is_2nested(&em).is_ok();
        let slow = oracle_is_2nested(&em, cfg.matrix_cap).unwrap().is_some();
        if fast != slow {
            bad.push(format!("random #{sampled} disagreement"));
        }
    }
    CriterionResult {
        name: "4 2-nested engine equivalence",
        pass: bad.is_empty(),
        detail: if bad.is_empty() { format!("{checked} matrices") } else { bad.join("; ") },
    }
}

/// Criterion 5: the nested engine agrees with the permutation oracle on
/// 500 random matrices <= 5x6, and 0-gem witnesses are real 0-gems.
pub fn nested_engine(cfg: &OracleConfig) -> CriterionResult {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(cfg.seed ^ 0xe57ed);
    let mut bad = 0;
    for _ in 0..500 {
        use rand::Rng;
        let nr = rng.gen_range(1..=5);
        let nc = rng.gen_range(1..=6);
        let rows: Vec<u128> = (0..nr).map(|_| rng.gen_range(0..(1u128 << nc))).collect();
        let m = BitMatrix::from_rows(nc, rows);
        let fast = m.is_nested();
        let slow = oracle_is_nested(&m, 8).unwrap();
        if fast != slow {
            bad += 1;
        }
        if let Some(((r1, r2), (c1, c2, c3))) = m.find_zero_gem() {
            let ok = m.get(r1, c1)
                && !m.get(r2, c1)
                && m.get(r1, c2)
                && m.get(r2, c2)
                && !m.get(r1, c3)
                && m.get(r2, c3);
            if !ok {
                bad += 1;
            }
        }
    }
    CriterionResult {
        name: "5 nested engine",
        pass: bad == 0,
        detail: format!("{bad} failures over 500 matrices"),
    }
}

/// Criterion 7: the oracle circle verdict is invariant under local
/// complementation for every graph on <= 6 vertices and every vertex.
pub fn local_complement_invariance(cfg: &OracleConfig) -> CriterionResult {
    let oracle = CircleOracle::new(cfg.clone());
    let mut reps: Vec<Graph> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for n in 1..=6usize {
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        for code in 0u64..1 << pairs.len() {
            let mut g = Graph::new(n);
            for (b, &(u, v)) in pairs.iter().enumerate() {
                if code >> b & 1 == 1 {
                    g.add_edge(u, v);
                }
            }
            if seen.insert(g.canonical_code()) {
                reps.push(g);
            }
        }
    }
    let bad: usize = reps
        .par_iter()
        .map(|g| {
            let base = oracle.is_circle(g).unwrap();
            (0..g.n())
                .filter(|&u| {
                    let h = g.local_complement(u).unwrap();
                    oracle.is_circle(&h).unwrap() != base
                })
                .count()
        })
        .sum();
    CriterionResult {
        name: "7 local-complementation invariance",
        pass: bad == 0,
        detail: format!("{} graph classes, {bad} violations", reps.len()),
    }
}

/// Criterion 8: produced decompositions recompose to the input, and the
/// circle verdict distributes over the factors.
pub fn decomposition_consistency(cfg: &OracleConfig) -> CriterionResult {
    use crate::cases::partition_k;
    use crate::recognize::{class_decomposition, reduce_co4tent_prime};
    use crate::split::{detect_case, split_partition, CaseKind};
    let oracle = CircleOracle::new(cfg.clone());
    let mut suite: Vec<Graph> = Vec::new();
    for n in 4..=8 {
        suite.extend(enumerate_split_graphs(n));
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(cfg.seed ^ 0xdec);
    for _ in 0..200 {
        suite.push(random_split_graph(9, &mut rng));
    }
    let mut checked = 0;
    let mut bad = Vec::new();
    for g in &suite {
        let Some(sp) = split_partition(g) else { continue };
        let cw = detect_case(g, &sp);
        let decs: Vec<crate::recognize::Decomposition> = match cw.kind {
            CaseKind::CoFourTent => {
                let Ok(kp) = partition_k(g, &sp, &cw) else { continue };
                match reduce_co4tent_prime(g, &sp, &kp) {
                    Ok(d) => vec![d],
                    Err(_) => vec![],
                }
            }
            CaseKind::Net => {
                let Ok(kp) = partition_k(g, &sp, &cw) else { continue };
                [0usize, 2, 4]
                    .iter()
                    .filter_map(|&i| class_decomposition(g, &sp, &kp.classes[i]))
                    .collect()
            }
            _ => vec![],
        };
        for dec in decs {
            checked += 1;
            let composed =
                Graph::split_composition(&dec.g1, dec.m1, &dec.g2, dec.m2).unwrap();
            if !composed.is_isomorphic(g) {
                bad.push("recomposition differs".to_string());
                continue;
            }
            if dec.g1.n() <= cfg.circle_cap.min(9) && dec.g2.n() <= cfg.circle_cap.min(9) {
                let whole = oracle.is_circle(g).unwrap();
                let f1 = oracle.is_circle(&dec.g1).unwrap();
                let f2 = oracle.is_circle(&dec.g2).unwrap();
                if whole != (f1 && f2) {
                    bad.push("verdict does not distribute".to_string());
                }
            }
        }
    }
    CriterionResult {
        name: "8 decomposition consistency",
        pass: bad.is_empty(),
        detail: if bad.is_empty() {
            format!("{checked} decompositions verified")
        } else {
            bad.join("; ")
        },
    }
}

pub fn run_all(cfg: &OracleConfig) -> Vec<CriterionResult> {
    let (c1, c6) = characterization_and_models(cfg);
    vec![
        c1,
        obstruction_soundness(cfg),
        minimality(cfg),
        two_nested_equivalence(cfg),
        nested_engine(cfg),
        c6,
        local_complement_invariance(cfg),
        decomposition_consistency(cfg),
    ]
}

pub fn report(results: &[CriterionResult]) -> String {
    let mut s = String::new();
    for r in results {
        s.push_str(&format!(
            "[{}] {:40} {}\n",
            if r.pass { "PASS" } else { "FAIL" },
            r.name,
            r.detail
        ));
    }
    s
}
