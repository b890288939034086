// targeted cell coverage: construct hosts with vertices in chosen cells of
// each case and self-validate (exact models / verified witnesses); compare
// with the oracle when small enough
use rand::{Rng, SeedableRng};
use split_circle::cases::{partition_k, partition_s, SCell};
use split_circle::graph::Graph;
use split_circle::oracle::{CircleOracle, OracleConfig};
use split_circle::recognize::{recognize, VerdictStatus};
use split_circle::split::{co_four_tent, detect_case, four_tent, split_partition, tent, CaseKind};

struct CaseSetup {
    kind: CaseKind,
    ncls: usize,
    anchor: Graph,
    // anchor-S adjacency pattern per class (which anchor S vertices a
    // K-vertex of this class is adjacent to), indices into the anchor's
    // stable part
    class_pattern: Vec<Vec<usize>>,
    anchor_s_base: usize,
}

fn setups() -> Vec<CaseSetup> {
    vec![
        CaseSetup {
            kind: CaseKind::Tent,
            ncls: 6,
            anchor: tent(),
            class_pattern: vec![vec![0, 2], vec![0], vec![0, 1], vec![1], vec![1, 2], vec![2]],
            anchor_s_base: 3,
        },
        CaseSetup {
            kind: CaseKind::FourTent,
            ncls: 6,
            anchor: four_tent(),
            class_pattern: vec![vec![0], vec![0, 1], vec![1], vec![1, 2], vec![2], vec![]],
            anchor_s_base: 4,
        },
        CaseSetup {
            kind: CaseKind::CoFourTent,
            ncls: 8,
            anchor: co_four_tent(),
            class_pattern: vec![
                vec![2, 0],
                vec![2, 0, 1],
                vec![0, 1],
                vec![3, 0, 1],
                vec![3, 1],
                vec![1],
                vec![],
                vec![0],
            ],
            anchor_s_base: 3,
        },
    ]
}

fn main() {
    let cfg = OracleConfig::default();
    let mut cfg10 = OracleConfig::default();
    cfg10.circle_cap = 10;
    let oracle = CircleOracle::new(cfg10);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xce11);
    let mut stats = std::collections::BTreeMap::new();
    let mut errors = 0;
    let mut oracle_mism = 0;
    let mut built = 0;
    for trial in 0..60000 {
        let setup = &setups()[trial % 3];
        let ncls = setup.ncls;
        // class sizes: anchor provides some members; add extras
        let mut extra_k: Vec<usize> = (0..ncls).map(|_| rng.gen_range(0..=1)).collect();
        if rng.gen_bool(0.3) {
            extra_k[rng.gen_range(0..ncls)] = 2;
        }
        if setup.kind == CaseKind::CoFourTent {
            // keep the prime regime reachable most of the time
            if rng.gen_bool(0.8) {
                extra_k[1] = extra_k[1].max(1);
                extra_k[3] = extra_k[3].max(1);
            }
        }
        let n_extra_k: usize = extra_k.iter().sum();
        let n_s_extra = rng.gen_range(1..=3);
        let n = setup.anchor.n() + n_extra_k + n_s_extra;
        if n > 16 {
            continue;
        }
        let mut g = Graph::new(n);
        for (u, v) in setup.anchor.edges() {
            g.add_edge(u, v);
        }
        let clique_size = setup.anchor_s_base;
        // add extra K vertices: clique among themselves and the anchor clique
        let mut kmembers: Vec<Vec<usize>> = vec![Vec::new(); ncls];
        // anchor clique members (their classes are determined by pattern)
        // tent: anchor k's are classes 1,3,5; 4-tent: 1,2,4,5; co: 1,3,5
        let anchor_classes: Vec<usize> = match setup.kind {
            CaseKind::Tent => vec![1, 3, 5],
            CaseKind::FourTent => vec![1, 2, 4, 5],
            CaseKind::CoFourTent => vec![1, 3, 5],
            _ => unreachable!(),
        };
        for (pos, &c) in anchor_classes.iter().enumerate() {
            kmembers[c - 1].push(pos);
        }
        let mut next = setup.anchor.n();
        let mut all_k: Vec<usize> = (0..clique_size).collect();
        for c in 0..ncls {
            for _ in 0..extra_k[c] {
                let v = next;
                next += 1;
                for &u in &all_k {
                    g.add_edge(v, u);
                }
                all_k.push(v);
                for &s in &setup.class_pattern[c] {
                    g.add_edge(v, setup.anchor_s_base + s);
                }
                kmembers[c].push(v);
            }
        }
        // extra S vertices with random per-class attachment: anti /
        // partial / complete
        for _ in 0..n_s_extra {
            let v = next;
            next += 1;
            for c in 0..ncls {
                if kmembers[c].is_empty() {
                    continue;
                }
                match rng.gen_range(0..4) {
                    0 | 1 => {} // anti
                    2 => {
                        // partial-ish: each member independently
                        for &u in &kmembers[c] {
                            if rng.gen_bool(0.5) {
                                g.add_edge(v, u);
                            }
                        }
                    }
                    _ => {
                        for &u in &kmembers[c] {
                            g.add_edge(v, u);
                        }
                    }
                }
            }
        }
        let Some(sp) = split_partition(&g) else { continue };
        let cw = detect_case(&g, &sp);
        if cw.kind != setup.kind {
            continue;
        }
        built += 1;
        // record which cells appear (for coverage reporting)
        if let Ok(kp) = partition_k(&g, &sp, &cw) {
            if let Ok(spart) = partition_s(&g, &sp, &kp) {
                for (_, cell) in &spart.assign {
                    let name = match cell {
                        SCell::Cell { i, j } => format!("{:?}:{i},{j}", setup.kind),
                        SCell::LrRow => format!("{:?}:LR", setup.kind),
                        SCell::EmptyLr => format!("{:?}:LR0", setup.kind),
                        SCell::Isolated => format!("{:?}:iso", setup.kind),
                    };
                    *stats.entry(name).or_insert(0usize) += 1;
                }
            }
        }
        match recognize(&g, &cfg) {
            Err(e) => {
                errors += 1;
                if errors <= 5 {
                    println!("ERROR {e:?} on {}", g.emit().replace('\n', ";"));
                }
            }
            Ok(out) => {
                match out.verdict.status {
                    VerdictStatus::Circle => {
                        if let Some(m) = &out.model {
                            assert_eq!(m.interlacement(), g, "model mismatch");
                        }
                    }
                    VerdictStatus::NotCircle => {
                        let (f, k, emb) = out.witness.clone().expect("witness");
                        let member = split_circle::catalog::make_fsc(f, k).unwrap().graph;
                        for a in 0..member.n() {
                            for b in 0..member.n() {
                                if a != b {
                                    assert_eq!(
                                        member.has_edge(a, b),
                                        g.has_edge(emb[a], emb[b])
                                    );
                                }
                            }
                        }
                    }
                    VerdictStatus::NotSplit => unreachable!(),
                }
                if g.n() <= 10 {
                    let want = oracle.is_circle(&g).unwrap();
                    let got = out.verdict.status == VerdictStatus::Circle;
                    if got != want {
                        oracle_mism += 1;
                        if oracle_mism <= 5 {
                            println!(
                                "ORACLE MISMATCH want={want} got={got} case={} {}",
                                out.verdict.trace.case,
                                g.emit().replace('\n', ";")
                            );
                        }
                    }
                }
            }
        }
    }
    println!("built={built} errors={errors} oracle_mism={oracle_mism}");
    let mut v: Vec<_> = stats.iter().collect();
    v.sort();
    for (k, c) in v {
        println!("  {k}: {c}");
    }
}
