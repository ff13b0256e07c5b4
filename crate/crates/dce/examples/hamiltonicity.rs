//! NP-hardness in action: Hamiltonian Cycle as a degree-editing instance.
//!
//! ```bash
//! cargo run --example hamiltonicity
//! ```
//!
//! A graph with n vertices and m ≥ n edges has a Hamiltonian cycle exactly
//! when it can be edited into a connected 2-regular graph — a single spanning
//! cycle — using at most m − n edits. The budget rules out additions: every
//! added edge would force an extra deletion beyond the budget, so a YES
//! certificate can only delete down to a cycle that was already there.

use dce::costs::{brute_force_solve, SearchLimits};
use dce::gen::reduce_hamiltonicity;
use dce::Graph;

fn main() {
    let cases = [
        (
            "K4",
            Graph::from_edges(4, &[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]),
        ),
        (
            "K_{2,3}",
            Graph::from_edges(5, &[(1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)]),
        ),
        (
            "C5",
            Graph::from_edges(5, &[(1, 2), (2, 3), (3, 4), (4, 5), (1, 5)]),
        ),
    ];
    for (name, g) in cases {
        let inst = reduce_hamiltonicity(&g).unwrap();
        let sol = brute_force_solve(&inst, &SearchLimits::default()).unwrap();
        println!(
            "{name}: n = {}, m = {}, budget k = {} → {}",
            inst.n(),
            inst.graph.edges().len(),
            inst.k,
            if sol.is_some() {
                "Hamiltonian"
            } else {
                "not Hamiltonian"
            }
        );
        if let Some(edits) = sol {
            let cycle: Vec<String> = inst
                .graph
                .edges()
                .into_iter()
                .filter(|e| !edits.deleted.contains(e))
                .map(|e| format!("{}-{}", e.u, e.v))
                .collect();
            println!("  spanning cycle: {}", cycle.join(" "));
        }
    }
}
