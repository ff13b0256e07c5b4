//! Solve two tiny instances end to end and print the edits.
//!
//! ```bash
//! cargo run --example solve_small
//! ```
//!
//! The first instance is the path 1-2-3 with target degree 2 everywhere and
//! budget 1: the only fix is adding the edge 1-3, closing the triangle. The
//! second is two disjoint triangles with the same targets: degrees are
//! already correct, so edits must come in degree-neutral closed trails, and
//! the cheapest way to connect the triangles is a four-edit exchange — two
//! deletions paired with two crossing additions.

use dce::costs::{brute_force_solve, SearchLimits};
use dce::{verify_solution, EditInstance, Graph};

fn report(name: &str, inst: &EditInstance) {
    let sol = brute_force_solve(inst, &SearchLimits::default()).expect("within search limits");
    match sol {
        None => println!("{name}: NO"),
        Some(edits) => {
            let check = verify_solution(inst, &edits).unwrap();
            println!(
                "{name}: YES with {} edit(s), verified = {}",
                edits.cost(),
                check.all()
            );
            for e in &edits.deleted {
                println!("  delete {}-{}", e.u, e.v);
            }
            for e in &edits.added {
                println!("  add    {}-{}", e.u, e.v);
            }
        }
    }
}

fn main() {
    let p3 = EditInstance::regular(Graph::from_edges(3, &[(1, 2), (2, 3)]), 2, 1);
    report("P3, d=2, k=1", &p3);

    let triangles = Graph::from_edges(6, &[(1, 2), (1, 3), (2, 3), (4, 5), (4, 6), (5, 6)]);
    report(
        "two triangles, d=2, k=2",
        &EditInstance::regular(triangles.clone(), 2, 2),
    );
    report(
        "two triangles, d=2, k=4",
        &EditInstance::regular(triangles, 2, 4),
    );
}
