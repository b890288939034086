//! Cross-module invariants beyond the acceptance criteria.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use split_circle::cases::{build_case_matrices, case_verdict, partition_k, partition_s, CaseVerdict};
use split_circle::families::detect_forbidden;
use split_circle::graph::Graph;
use split_circle::matrix::{BitMatrix, Color, EnrichedMatrix, RowLabel};
use split_circle::oracle::{CircleOracle, OracleConfig};
use split_circle::recognize::{recognize, VerdictStatus};
use split_circle::split::{detect_case, split_partition, tent, CaseKind};
use split_circle::twonested::{is_2nested, oracle_is_2nested};

fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

#[test]
fn oracle_invariant_under_local_complement_on_random_n7() {
    let oracle = CircleOracle::new(OracleConfig::default());
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..200 {
        let g = random_graph(&mut rng, 7, 0.4);
        let base = oracle.is_circle(&g).unwrap();
        for u in 0..7 {
            let h = g.local_complement(u).unwrap();
            assert_eq!(oracle.is_circle(&h).unwrap(), base);
        }
    }
}

#[test]
fn tent_case_verdict_matches_oracle_on_random_hosts() {
    // random split hosts built around a tent
    let oracle = CircleOracle::new(OracleConfig::default());
    let cfg = OracleConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0x7e07);
    let mut tested = 0;
    for _ in 0..400 {
        let mut g = Graph::new(9);
        for (u, v) in tent().edges() {
            g.add_edge(u, v);
        }
        // grow the clique and attach the stable extras randomly
        g.add_edge(6, 0);
        g.add_edge(6, 1);
        g.add_edge(6, 2);
        for s in 7..9 {
            for k in [0, 1, 2, 6] {
                if rng.gen_bool(0.5) {
                    g.add_edge(s, k);
                }
            }
        }
        let Some(sp) = split_partition(&g) else { continue };
        if detect_case(&g, &sp).kind != CaseKind::Tent {
            continue;
        }
        tested += 1;
        let got = recognize(&g, &cfg).unwrap().verdict.status == VerdictStatus::Circle;
        let want = oracle.is_circle(&g).unwrap();
        assert_eq!(got, want, "{}", g.emit());
    }
    assert!(tested > 100, "suite should exercise the tent case, got {tested}");
}

#[test]
fn partition_classes_cover_and_are_disjoint() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xc0de);
    for _ in 0..300 {
        let n = rng.gen_range(5..=9);
        let g = crate_random_split(&mut rng, n);
        let Some(sp) = split_partition(&g) else { continue };
        let cw = detect_case(&g, &sp);
        if !matches!(cw.kind, CaseKind::Tent | CaseKind::FourTent | CaseKind::CoFourTent) {
            continue;
        }
        let Ok(kp) = partition_k(&g, &sp, &cw) else { continue };
        let mut seen = std::collections::HashSet::new();
        for c in &kp.classes {
            for &v in c {
                assert!(seen.insert(v), "class overlap at {v}");
            }
        }
        assert_eq!(seen.len(), sp.k.len(), "classes must cover K");
        if let Ok(spart) = partition_s(&g, &sp, &kp) {
            assert_eq!(spart.assign.len(), sp.s.len());
        }
    }
}

fn crate_random_split(rng: &mut impl Rng, n: usize) -> Graph {
    split_circle::oracle::random_split_graph(n, rng)
}

#[test]
fn forbidden_found_vertices_yield_noncircle_witnesses() {
    // whenever the pipeline says NotCircle, the witness is an induced copy
    // of a catalog member and (under the cap) oracle-non-circle
    let oracle = CircleOracle::new(OracleConfig::default());
    let cfg = OracleConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0xfee1);
    let mut bads = 0;
    for _ in 0..400 {
        let g = crate_random_split(&mut rng, 9);
        let out = recognize(&g, &cfg).unwrap();
        if out.verdict.status != VerdictStatus::NotCircle {
            continue;
        }
        bads += 1;
        let (family, k, emb) = out.witness.expect("witness present");
        let member = split_circle::catalog::make_fsc(family, k).unwrap().graph;
        for i in 0..member.n() {
            for j in 0..member.n() {
                if i != j {
                    assert_eq!(member.has_edge(i, j), g.has_edge(emb[i], emb[j]));
                }
            }
        }
        if member.n() <= cfg.circle_cap {
            assert!(!oracle.is_circle(&member).unwrap());
        }
    }
    assert!(bads > 20, "suite should include non-circle graphs, got {bads}");
}

#[test]
fn detect_forbidden_is_permutation_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x9e9);
    for _ in 0..150 {
        let nr = rng.gen_range(1..=4);
        let nc = rng.gen_range(1..=5);
        let rows: Vec<u128> = (0..nr).map(|_| rng.gen_range(0..(1u128 << nc))).collect();
        let labels: Vec<RowLabel> = (0..nr)
            .map(|_| match rng.gen_range(0..4) {
                0 => RowLabel::L,
                1 => RowLabel::R,
                2 => RowLabel::LR,
                _ => RowLabel::U,
            })
            .collect();
        let colors: Vec<Option<Color>> = labels
            .iter()
            .zip(rows.iter())
            .map(|(l, &b)| match l {
                RowLabel::L | RowLabel::R => Some(if rng.gen_bool(0.5) { Color::Red } else { Color::Blue }),
                RowLabel::LR if b == 0 => Some(Color::Blue),
                _ => None,
            })
            .collect();
        let em = EnrichedMatrix::new(BitMatrix::from_rows(nc, rows.clone()), labels.clone(), colors.clone());
        if em.validate().is_err() {
            continue;
        }
        // permute rows and columns
        let mut rperm: Vec<usize> = (0..nr).collect();
        for i in (1..nr).rev() {
            rperm.swap(i, rng.gen_range(0..=i));
        }
        let mut cperm: Vec<usize> = (0..nc).collect();
        for i in (1..nc).rev() {
            cperm.swap(i, rng.gen_range(0..=i));
        }
        let prows: Vec<u128> = rperm
            .iter()
            .map(|&r| {
                let mut out = 0u128;
                for (newc, &oldc) in cperm.iter().enumerate() {
                    if rows[r] >> oldc & 1 == 1 {
                        out |= 1 << newc;
                    }
                }
                out
            })
            .collect();
        let pem = EnrichedMatrix::new(
            BitMatrix::from_rows(nc, prows),
            rperm.iter().map(|&r| labels[r]).collect(),
            rperm.iter().map(|&r| colors[r]).collect(),
        );
        let mut tags_a: Vec<String> =
            detect_forbidden(&em, false).into_iter().map(|d| d.tag).collect();
        let mut tags_b: Vec<String> =
            detect_forbidden(&pem, false).into_iter().map(|d| d.tag).collect();
        tags_a.sort();
        tags_b.sort();
        assert_eq!(tags_a, tags_b, "{}\nvs\n{}", em.emit(), pem.emit());
    }
}

#[test]
fn theorem_directions_on_randoms() {
    // forward: oracle-2-nested matrices are detection-free;
    // reverse: detection-free matrices are oracle-2-nested
    let mut rng = ChaCha8Rng::seed_from_u64(0x0123);
    let mut checked = 0;
    while checked < 400 {
        let nr = rng.gen_range(1..=4);
        let nc = rng.gen_range(1..=5);
        let rows: Vec<u128> = (0..nr).map(|_| rng.gen_range(0..(1u128 << nc))).collect();
        let labels: Vec<RowLabel> = (0..nr)
            .map(|_| match rng.gen_range(0..8) {
                0 | 1 => RowLabel::L,
                2 | 3 => RowLabel::R,
                4 => RowLabel::LR,
                _ => RowLabel::U,
            })
            .collect();
        let mut empty_lr: Option<Option<Color>> = None;
        let colors: Vec<Option<Color>> = labels
            .iter()
            .zip(rows.iter())
            .map(|(l, &b)| match l {
                RowLabel::L | RowLabel::R => match rng.gen_range(0..3) {
                    0 => Some(Color::Red),
                    1 => Some(Color::Blue),
                    _ => None,
                },
                RowLabel::LR if b == 0 => *empty_lr.get_or_insert_with(|| {
                    match rng.gen_range(0..3) {
                        0 => Some(Color::Red),
                        1 => Some(Color::Blue),
                        _ => None,
                    }
                }),
                _ => None,
            })
            .collect();
        let em = EnrichedMatrix::new(BitMatrix::from_rows(nc, rows), labels, colors);
        if em.validate().is_err() {
            continue;
        }
        checked += 1;
        let ok = oracle_is_2nested(&em, 8).unwrap().is_some();
        let clean = detect_forbidden(&em, true).is_empty();
        assert_eq!(ok, clean, "theorem direction failed on\n{}", em.emit());
        assert_eq!(is_2nested(&em).is_ok(), ok);
    }
}

#[test]
fn tent_case_matrices_expose_expected_labels() {
    // the anchor tent: S13 is an R-row of A1 and an L-row of A3, colored
    // per the displayed scheme
    let g = tent();
    let sp = split_partition(&g).unwrap();
    let cw = detect_case(&g, &sp);
    let kp = partition_k(&g, &sp, &cw).unwrap();
    let spart = partition_s(&g, &sp, &kp).unwrap();
    let mut cm = build_case_matrices(&g, &sp, &kp, &spart);
    let (name, a1, verts) = &cm.class_mats[0];
    assert_eq!(name, "A1");
    let s13 = cw.embedding[3];
    let row = verts.iter().position(|&v| v == s13).unwrap();
    assert_eq!(a1.labels[row], RowLabel::R);
    assert_eq!(a1.colors[row], Some(Color::Red));
    let (_, a3, verts3) = &cm.class_mats[2];
    let row3 = verts3.iter().position(|&v| v == s13).unwrap();
    assert_eq!(a3.labels[row3], RowLabel::L);
    assert_eq!(a3.colors[row3], Some(Color::Blue));
    match case_verdict(&mut cm).unwrap() {
        CaseVerdict::CircleOk(_) => {}
        CaseVerdict::Failed { name, reason } => panic!("{name}: {reason}"),
    }
}

#[test]
fn tent_join_k1_reduces_to_bw3_at_center() {
    // the 3-sun-with-center locally complemented at its center is BW3
    let member = split_circle::catalog::make_fsc(
        split_circle::catalog::Family::OddSunCenter,
        3,
    )
    .unwrap();
    let center = member.graph.n() - 1;
    let reduced = member.graph.local_complement(center).unwrap();
    assert!(reduced.is_isomorphic(&split_circle::catalog::bw3()));
}

#[test]
fn co4tent_prime_reduction_contract() {
    use split_circle::recognize::reduce_co4tent_prime;
    // co-4-tent plus a private S-vertex on k5: K4 is empty, so the K5 side
    // splits off together with that vertex
    let mut g = Graph::new(8);
    for (u, v) in split_circle::split::co_four_tent().edges() {
        g.add_edge(u, v);
    }
    g.add_edge(7, 2); // private stable neighbor of k5
    let sp = split_partition(&g).unwrap();
    let cw = detect_case(&g, &sp);
    assert_eq!(cw.kind, CaseKind::CoFourTent);
    let kp = partition_k(&g, &sp, &cw).unwrap();
    assert!(kp.classes[3].is_empty(), "K4 empty");
    let dec = reduce_co4tent_prime(&g, &sp, &kp).unwrap();
    // the split-off side holds k5 with its private stable vertices
    assert!(dec.map2.contains(&7));
    assert!(!dec.map1.contains(&7));
    // recomposition reproduces g
    let composed = Graph::split_composition(&dec.g1, dec.m1, &dec.g2, dec.m2).unwrap();
    assert!(composed.is_isomorphic(&g));
    // with K2 and K4 both nonempty the reduction refuses
    let mut h = Graph::new(9);
    for (u, v) in split_circle::split::co_four_tent().edges() {
        h.add_edge(u, v);
    }
    // vertex 7: a K2-class member (in the clique, adjacent s1, s13, s35)
    // vertex 8: a K4-class member (in the clique, adjacent s5, s13, s35)
    for k in [0, 1, 2, 8] {
        h.add_edge(7, k);
    }
    for k in [0, 1, 2] {
        h.add_edge(8, k);
    }
    h.add_edge(7, 3);
    h.add_edge(7, 4);
    h.add_edge(7, 5);
    h.add_edge(8, 3);
    h.add_edge(8, 4);
    h.add_edge(8, 6);
    let sp = split_partition(&h).unwrap();
    let cw = detect_case(&h, &sp);
    assert_eq!(cw.kind, CaseKind::CoFourTent);
    let kp = partition_k(&h, &sp, &cw).unwrap();
    assert!(!kp.classes[1].is_empty() && !kp.classes[3].is_empty());
    assert!(reduce_co4tent_prime(&h, &sp, &kp).is_err());
}

#[test]
fn matrix_pattern_lookup() {
    use split_circle::catalog::make_matrix_pattern;
    let d0 = make_matrix_pattern("D0", false).unwrap();
    assert_eq!(d0.matrix.nrows(), 2);
    assert_eq!(d0.matrix.labels, vec![RowLabel::L, RowLabel::L]);
    let d0d = make_matrix_pattern("D0", true).unwrap();
    assert_eq!(d0d.matrix.labels, vec![RowLabel::R, RowLabel::R]);
    let s0 = make_matrix_pattern("S0(4)", false).unwrap();
    assert_eq!(s0.matrix.nrows(), 5);
    assert_eq!(s0.matrix.ncols(), 4);
    let m0 = make_matrix_pattern("M0", false).unwrap();
    assert_eq!((m0.matrix.nrows(), m0.matrix.ncols()), (3, 4));
    assert!(make_matrix_pattern("nonsense", false).is_err());
    // every looked-up pattern instance fails the 2-nested engine
    for tag in ["D1", "D5", "S2(4)", "S3(3)", "P0(4,0)", "MII(4)"] {
        let p = make_matrix_pattern(tag, false).unwrap();
        if p.matrix.validate().is_ok() {
            assert!(is_2nested(&p.matrix).is_err(), "{tag} should fail");
        }
    }
}

#[test]
fn case_dump_json_shape() {
    let g = tent();
    let sp = split_partition(&g).unwrap();
    let cw = detect_case(&g, &sp);
    let kp = partition_k(&g, &sp, &cw).unwrap();
    let spart = partition_s(&g, &sp, &kp).unwrap();
    let cm = build_case_matrices(&g, &sp, &kp, &spart);
    let v = split_circle::cases::dump_json(&kp, &spart, &cm);
    assert_eq!(v["case"], "Tent");
    assert_eq!(v["kClasses"].as_array().unwrap().len(), 6);
    assert_eq!(v["matrices"].as_array().unwrap().len(), 6);
}
