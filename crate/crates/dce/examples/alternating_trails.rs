//! Alternating trails inside edit sets, and reconnecting by swapping edges.
//!
//! ```bash
//! cargo run --example alternating_trails
//! ```
//!
//! Every edit set that fixes all degrees decomposes into trails that
//! alternate additions and deletions: an addition raises a degree, so the
//! next touch of that vertex must be a deletion, and so on. Open trails end
//! in deviant vertices; around balanced vertices the trails close up. When a
//! degree-correct edit set leaves the graph disconnected but has additions to
//! spare, swapping additions between components reconnects it without
//! touching any degree — the move behind the solver's existence arguments.

use std::collections::BTreeSet;

use dce::costs::{brute_force_solve, SearchLimits};
use dce::reconnect::rearrange_to_connect;
use dce::trails::decompose_alternating_trails;
use dce::{apply_edits, deviant_report, verify_solution, Edge, EditInstance, EditSet, Graph};

fn show_trails(name: &str, inst: &EditInstance, edits: &EditSet) {
    let z: BTreeSet<u32> = deviant_report(inst).z.into_iter().collect();
    let cover = decompose_alternating_trails(edits, &z).unwrap();
    println!("{name}: deviant set {z:?}, {} trail(s)", cover.trails.len());
    for t in &cover.trails {
        let kinds: Vec<&str> = t
            .edges
            .iter()
            .map(|&(_, k)| if k == dce::EditKind::Add { "add" } else { "del" })
            .collect();
        println!(
            "  {} trail {:?} ({})",
            if t.closed { "closed" } else { "open" },
            t.vertices,
            kinds.join(", ")
        );
    }
    println!("  cover checks out: {}", cover.check(edits, &z));
}

fn main() {
    // open trail: the endpoints of a path are the deviant vertices
    let p5 = EditInstance::regular(Graph::from_edges(5, &[(1, 2), (2, 3), (3, 4), (4, 5)]), 2, 1);
    let sol = brute_force_solve(&p5, &SearchLimits::default())
        .unwrap()
        .unwrap();
    show_trails("P5, d=2, k=1", &p5, &sol);

    // closed trail: all degrees already correct, the edits form a cycle
    let triangles = Graph::from_edges(6, &[(1, 2), (1, 3), (2, 3), (4, 5), (4, 6), (5, 6)]);
    let tri = EditInstance::regular(triangles, 2, 4);
    let sol = brute_force_solve(&tri, &SearchLimits::default())
        .unwrap()
        .unwrap();
    show_trails("two triangles, d=2, k=4", &tri, &sol);

    // degree-correct but disconnected: swap additions to reconnect
    let paths = Graph::from_edges(6, &[(1, 2), (2, 3), (4, 5), (5, 6)]);
    let inst = EditInstance::regular(paths, 2, 2);
    let mut naive = EditSet::empty();
    naive.added.insert(Edge::new(1, 3));
    naive.added.insert(Edge::new(4, 6));
    let before = apply_edits(&inst.graph, &naive).unwrap();
    println!(
        "naive edits close each path into its own triangle: {} components",
        before.components().len()
    );
    let fixed = rearrange_to_connect(&inst, &naive).unwrap();
    println!("rearranged additions:");
    for e in &fixed.added {
        println!("  add {}-{}", e.u, e.v);
    }
    println!(
        "now verified end to end: {}",
        verify_solution(&inst, &fixed).unwrap().all()
    );
}
