//! Kernelize an instance, print the rule-by-rule trace, and replay it.
//!
//! ```bash
//! cargo run --example kernelize_trace
//! ```
//!
//! The instance has a path component on vertices 1..=8 whose internal targets
//! are already met, far from the only deviant vertices 9 and 10. The tree
//! component is remote enough for the tree-replacement rule to swap it for a
//! small gadget with the same editing behaviour, shrinking the instance
//! without changing its answer. The trace is enough to replay the entire run.

use std::collections::BTreeMap;

use dce::io::write_instance;
use dce::kernel::{kernelize, replay_trace, KernelOutcome};
use dce::{EditInstance, Graph};

fn main() {
    let mut g = Graph::new();
    let mut delta = BTreeMap::new();
    for v in 1..=8 {
        g.add_vertex(v);
        delta.insert(v, if v == 1 || v == 8 { 1 } else { 2 });
    }
    for v in 1..8 {
        g.add_edge(v, v + 1);
    }
    for v in [9, 10] {
        g.add_vertex(v);
        delta.insert(v, 2);
    }
    g.add_edge(9, 10);
    let inst = EditInstance::new(g, delta, 3, 3).unwrap();

    let res = kernelize(&inst).unwrap();
    println!("trace:");
    print!("{}", res.trace.render());
    match &res.outcome {
        KernelOutcome::No => println!("outcome: NO"),
        KernelOutcome::Kernel(kern) => {
            println!(
                "outcome: kernel with {} vertices (down from {})",
                kern.n(),
                inst.n()
            );
            print!("{}", write_instance(kern));
        }
    }

    let replayed = replay_trace(&inst, &res.trace).unwrap();
    println!("replay reproduces the outcome: {}", replayed == res.outcome);
}
