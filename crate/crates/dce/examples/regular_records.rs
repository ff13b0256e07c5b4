//! The record-enumeration solver on a dense regular-target instance.
//!
//! ```bash
//! cargo run --example regular_records
//! ```
//!
//! Two disjoint copies of K9 minus an edge, target degree 8, budget 2. A
//! brute-force search over edit subsets would wade through C(153,2) pairs of
//! candidate edits; the record solver instead enumerates bounded summaries of
//! how an edit set can touch the four deviant vertices and solves a small
//! assignment problem per record. The optimal repair wires two edges across
//! the cliques between the endpoints of the missing ones, which both fixes
//! every degree and connects the graph. A tiny `max_records` budget aborts
//! with a guard error instead of running long: the first viable record
//! re-adds the missing edge inside each clique, which leaves the graph
//! disconnected, and the guard trips before the second.

use dce::{solve_regular, verify_solution, EditInstance, Graph, SolveOptions};

fn two_broken_k9s() -> EditInstance {
    let mut edges = Vec::new();
    for base in [0u32, 9] {
        for u in 1..=9 {
            for v in u + 1..=9 {
                if base == 0 && (u, v) == (1, 2) || base == 9 && (u, v) == (1, 2) {
                    continue; // drop 1-2 and 10-11
                }
                edges.push((base + u, base + v));
            }
        }
    }
    EditInstance::regular(Graph::from_edges(18, &edges), 8, 2)
}

fn main() {
    let inst = two_broken_k9s();
    println!(
        "instance: n = {}, m = {}, d = {}, k = {}",
        inst.n(),
        inst.graph.edges().len(),
        inst.d,
        inst.k
    );

    let sol = solve_regular(&inst, &SolveOptions::default())
        .unwrap()
        .expect("YES instance");
    println!("solution ({} edits):", sol.cost());
    for e in &sol.deleted {
        println!("  delete {}-{}", e.u, e.v);
    }
    for e in &sol.added {
        println!("  add    {}-{}", e.u, e.v);
    }
    println!("verified: {}", verify_solution(&inst, &sol).unwrap().all());

    let tight = SolveOptions {
        max_records: 1,
        ..SolveOptions::default()
    };
    match solve_regular(&inst, &tight) {
        Err(e) => println!("with max_records = 1: {e}"),
        Ok(_) => unreachable!("the guard must trip first"),
    }
}
