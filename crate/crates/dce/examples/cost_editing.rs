//! Degree editing with per-pair costs, without the connectivity requirement.
//!
//! ```bash
//! cargo run --example cost_editing
//! ```
//!
//! The instance is the path 1-2-3-4 where the endpoints should gain a degree
//! and the middle should stay put. With uniform costs the cheapest fix adds
//! the edge 1-4. Charging a premium on every pair inside {1, 4} makes that
//! edge expensive, so the solver reroutes through costlier but allowed
//! edits. Both backends — bounded exhaustive search and the reduction to
//! minimum-weight perfect matching — must agree on the optimal cost.

use std::collections::BTreeMap;

use dce::costs::{solve_with_costs, CostBackend, CostInstance, PairCosts};
use dce::Graph;

fn show(name: &str, ci: &CostInstance) {
    let exhaustive = solve_with_costs(ci, CostBackend::Exhaustive);
    let matching = solve_with_costs(ci, CostBackend::Matching);
    match (&exhaustive, &matching) {
        (None, None) => println!("{name}: NO (both backends)"),
        (Some((edits, cost)), Some((_, mcost))) => {
            println!("{name}: optimal cost {cost} (matching backend agrees: {})", cost == mcost);
            for e in &edits.deleted {
                println!("  delete {}-{} (cost {})", e.u, e.v, ci.costs.get(*e));
            }
            for e in &edits.added {
                println!("  add    {}-{} (cost {})", e.u, e.v, ci.costs.get(*e));
            }
        }
        _ => unreachable!("backends disagree"),
    }
}

fn main() {
    let graph = Graph::from_edges(4, &[(1, 2), (2, 3), (3, 4)]);
    let delta: BTreeMap<u32, u32> = [(1, 2), (2, 2), (3, 2), (4, 2)].into_iter().collect();

    let uniform = CostInstance {
        graph: graph.clone(),
        delta: delta.clone(),
        costs: PairCosts::uniform(1),
        budget: 4,
    };
    show("uniform costs", &uniform);

    let ends = [1u32, 4].into_iter().collect();
    let premium = CostInstance {
        graph,
        delta,
        costs: PairCosts::premium_within(&ends, 5),
        budget: 4,
    };
    show("premium on pairs within {1,4}", &premium);
}
