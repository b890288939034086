use split_circle::cases::*;
use split_circle::graph::Graph;
use split_circle::split::{detect_case, split_partition};

fn main() {
    let text = "13 39
0 1
0 2
0 3
0 5
0 7
0 8
0 9
0 10
0 12
1 2
1 3
1 4
1 7
1 8
1 9
1 10
1 12
2 4
2 6
2 7
2 8
2 9
2 11
2 12
3 7
3 8
3 9
4 7
4 8
5 7
6 8
7 8
7 9
7 10
7 12
8 9
8 11
8 12
9 10
";
    let g = Graph::parse(text).unwrap();
    let sp = split_partition(&g).unwrap();
    println!("K = {:?}, S = {:?}", sp.k, sp.s);
    let cw = detect_case(&g, &sp);
    println!("case {:?} anchor {:?}", cw.kind, cw.embedding);
    let kp = partition_k(&g, &sp, &cw).unwrap();
    println!("K classes: {:?}", kp.classes);
    let spart = partition_s(&g, &sp, &kp).unwrap();
    for (v, c) in &spart.assign {
        let nbrs: Vec<usize> = g.neighbors(*v).collect();
        println!("  s {v} ~ {nbrs:?} -> {c:?}");
    }
    let mut cm = build_case_matrices(&g, &sp, &kp, &spart);
    for (name, em, verts) in &cm.class_mats {
        if em.nrows() > 0 {
            println!("--- {name} rows {verts:?}\n{}", em.emit());
        }
    }
    match case_verdict(&mut cm).unwrap() {
        CaseVerdict::CircleOk(_) => println!("CircleOk"),
        CaseVerdict::Failed { name, reason } => println!("FAILED {name}: {reason}"),
    }
    for (name, m) in &cm.union_mats {
        if m.nrows() > 0 {
            println!("union {name}:\n{:?}", m);
        }
    }
}
