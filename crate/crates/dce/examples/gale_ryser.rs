//! Decide bipartite degree-sequence realizability and build a witness.
//!
//! ```bash
//! cargo run --example gale_ryser
//! ```
//!
//! A pair of partitions (a, b) is bipartite graphic when some simple
//! bipartite graph has exactly these degree sequences on its two sides. The
//! classical criterion compares prefix sums of `a` against the conjugate of
//! `b`; `realize_bipartite` then constructs an explicit witness via maximum
//! flow and `audit` re-checks it against the sequences.

use dce::bipartite::realize_bipartite;
use dce::partitions::{is_bipartite_graphic, Partition};

fn main() {
    let cases = [
        (vec![3, 2, 1], vec![2, 2, 2]),
        (vec![3, 3, 3], vec![3, 3, 3]),
        (vec![4, 1], vec![2, 2, 1]),
        (vec![2], vec![2]),
        (vec![3, 1], vec![1, 1, 1, 1]),
    ];
    for (a, b) in cases {
        let pa = Partition::from_unsorted(a.clone());
        let pb = Partition::from_unsorted(b.clone());
        let graphic = is_bipartite_graphic(&pa, &pb);
        println!("a = {a:?}, b = {b:?}: graphic = {graphic}");
        println!(
            "  conjugate(b) = {:?}, dominated by it: {}",
            pb.conjugate().parts(),
            pb.conjugate().dominates(&pa)
        );
        if graphic {
            let g = realize_bipartite(&pa, &pb).unwrap();
            println!(
                "  witness edges: {:?}, audit = {}",
                g.edges,
                g.audit(pa.parts(), pb.parts())
            );
        }
    }
}
