// Scratch driver for timing the heavy verification and synthesis workloads.

use std::time::Instant;

use colorwalk::adversary::{verify_all, VerifyCaps};
use colorwalk::algorithms::*;
use colorwalk::corpus::CorpusSpec;
use colorwalk::families::*;
use colorwalk::synthesis::{refute_with_pruning, synthesize, SynthesisCaps, SynthesisResult};

fn verify_corpus(spec: &str, strategy: &dyn colorwalk::Strategy, max_colors: usize) {
    let t = Instant::now();
    let members = CorpusSpec::parse(spec).unwrap().members().unwrap();
    let mut worst = 0usize;
    let mut fail = 0usize;
    for (id, g) in &members {
        let v = verify_all(g, strategy);
        if !v.all_succeed() {
            if fail < 3 {
                println!("  FAIL {id} -> {:?}", v.overall());
            }
            fail += 1;
        }
        worst = worst.max(v.max_colors);
    }
    println!(
        "{spec} x {}: members={} failures={fail} worst_colors={worst} (bound {max_colors}) in {:?}",
        strategy.name(),
        members.len(),
        t.elapsed()
    );
}

fn main() {
    let which = std::env::args().nth(1).unwrap_or_default();
    match which.as_str() {
        "trees" => verify_corpus("trees:n<=7", &TreeExploration, 3),
        "dfs" => verify_corpus("connected:n<=6", &DepthFirstSearch, 5),
        "dfsn" => verify_corpus("connected:n==6", &SizedDfs::new(6).unwrap(), 4),
        "small3" => verify_corpus("connected:n<=7:circ<=3", &SmallDfs::new(3).unwrap(), 5),
        "small4" => verify_corpus("connected:n<=7:circ<=4", &SmallDfs::new(4).unwrap(), 7),
        "square" => verify_corpus("squarepath:2..14", &SquarePathExploration, 4),
        "recolor" => verify_corpus("connected:n<=6", &Recolorer, 7),
        "recolor5" => verify_corpus("connected:n<=5", &Recolorer, 7),
        "pathrec" => {
            for n in 1..=8 {
                let g = build_path(n).unwrap();
                let v = verify_all(&g, &PathRecolorer);
                for (s, sv) in &v.per_start {
                    let is_leaf = g.degree(*s) <= 1;
                    println!("P{n} start {s} leaf={is_leaf}: {sv:?}");
                }
            }
        }
        "fans" => {
            for n in [5, 6, 7] {
                let g = build_fan(n - 1).unwrap();
                let t = Instant::now();
                let v = verify_all(&g, &DepthFirstSearch);
                println!(
                    "fan({}) worst={} expect={} ok={} in {:?}",
                    n - 1,
                    v.max_colors,
                    n - 1,
                    v.all_succeed(),
                    t.elapsed()
                );
            }
        }
        "p7" => {
            let p7 = build_path(7).unwrap();
            for budget in [2u8, 3] {
                let t = Instant::now();
                let r = synthesize(
                    std::slice::from_ref(&p7),
                    budget,
                    false,
                    SynthesisCaps::default(),
                );
                println!(
                    "p7 budget {budget}: {} nodes={} in {:?}",
                    tag(&r),
                    r.nodes_explored(),
                    t.elapsed()
                );
            }
        }
        "p7prune" => {
            let p7 = build_path(7).unwrap();
            for pruning in [false, true] {
                let t = Instant::now();
                let r = refute_with_pruning(
                    std::slice::from_ref(&p7),
                    2,
                    pruning,
                    SynthesisCaps::default(),
                );
                println!(
                    "p7 budget 2 pruning={pruning}: {} nodes={} in {:?}",
                    tag(&r),
                    r.nodes_explored(),
                    t.elapsed()
                );
            }
        }
        "pair" => {
            let (g1, g2) = build_circumference_pair(3).unwrap();
            let t = Instant::now();
            let r = synthesize(&[g1, g2], 2, false, SynthesisCaps::default());
            println!(
                "pair k=3 budget 2: {} nodes={} in {:?}",
                tag(&r),
                r.nodes_explored(),
                t.elapsed()
            );
        }
        "caps" => {
            let g = build_complete(4).unwrap();
            let v = verify_all(&g, &DepthFirstSearch);
            println!("k4 dfs: states={} colors={}", v.states_explored, v.max_colors);
            let _ = VerifyCaps::default();
        }
        other => println!("unknown probe `{other}`"),
    }
}

fn tag(r: &SynthesisResult) -> &'static str {
    match r {
        SynthesisResult::Realizable { .. } => "realizable",
        SynthesisResult::Unrealizable { .. } => "unrealizable",
        SynthesisResult::Unknown { .. } => "unknown",
    }
}
