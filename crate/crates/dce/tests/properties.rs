//! Randomized invariants over the core data types: format round trips, edit
//! application arithmetic, partition algebra, and bipartite realization.

use std::collections::BTreeMap;

use proptest::prelude::*;

use dce::bipartite::realize_bipartite;
use dce::io::{parse_instance, parse_solution, write_instance, write_solution};
use dce::partitions::{is_bipartite_graphic, Partition};
use dce::{apply_edits, Edge, EditInstance, EditSet, Graph};

/// All unordered pairs over 1..=n.
fn pairs(n: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for u in 1..=n {
        for v in (u + 1)..=n {
            out.push((u, v));
        }
    }
    out
}

/// A random instance: n vertices, an edge subset, targets within 0..=d.
fn instances() -> impl Strategy<Value = EditInstance> {
    (1..=9u32, 1..=5u32, 0..=5u32).prop_flat_map(|(n, d, k)| {
        let np = pairs(n).len();
        (
            prop::collection::vec(any::<bool>(), np),
            prop::collection::vec(0..=d, n as usize),
            Just((n, d, k)),
        )
            .prop_map(|(mask, targets, (n, d, k))| {
                let mut g = Graph::new();
                for v in 1..=n {
                    g.add_vertex(v);
                }
                for (&(u, v), &keep) in pairs(n).iter().zip(&mask) {
                    if keep {
                        g.add_edge(u, v);
                    }
                }
                let delta: BTreeMap<u32, u32> =
                    (1..=n).zip(targets.iter().copied()).collect();
                EditInstance::new(g, delta, d, k).expect("targets stay within 0..=d")
            })
    })
}

/// A random graph plus an edit set that deletes present edges and adds
/// absent ones, so application never fails.
fn graphs_with_edits() -> impl Strategy<Value = (Graph, EditSet)> {
    (2..=9u32).prop_flat_map(|n| {
        let np = pairs(n).len();
        (
            prop::collection::vec(any::<bool>(), np),
            prop::collection::vec(0..=2u8, np),
            Just(n),
        )
            .prop_map(|(mask, action, n)| {
                let mut g = Graph::new();
                for v in 1..=n {
                    g.add_vertex(v);
                }
                let mut edits = EditSet::empty();
                for ((&(u, v), &present), &act) in pairs(n).iter().zip(&mask).zip(&action) {
                    if present {
                        g.add_edge(u, v);
                    }
                    // act: 0 = leave alone, 1 = edit this pair, 2 = leave alone.
                    if act == 1 {
                        if present {
                            edits.deleted.insert(Edge::new(u, v));
                        } else {
                            edits.added.insert(Edge::new(u, v));
                        }
                    }
                }
                (g, edits)
            })
    })
}

fn small_partitions() -> impl Strategy<Value = Partition> {
    prop::collection::vec(0..=6u32, 0..=6).prop_map(Partition::from_unsorted)
}

/// Exhaustive check that `b` can absorb the left degrees `a`.
fn bipartite_exists(a: &[u32], b: &[u32]) -> bool {
    if a.iter().map(|&x| u64::from(x)).sum::<u64>()
        != b.iter().map(|&x| u64::from(x)).sum::<u64>()
    {
        return false;
    }
    fn place(i: usize, a: &[u32], caps: &mut Vec<u32>) -> bool {
        if i == a.len() {
            return caps.iter().all(|&c| c == 0);
        }
        fn choose(j: usize, left: u32, caps: &mut Vec<u32>, i: usize, a: &[u32]) -> bool {
            if left == 0 {
                return place(i + 1, a, caps);
            }
            if j >= caps.len() || (caps.len() - j) < left as usize {
                return false;
            }
            if caps[j] > 0 {
                caps[j] -= 1;
                if choose(j + 1, left - 1, caps, i, a) {
                    caps[j] += 1;
                    return true;
                }
                caps[j] += 1;
            }
            choose(j + 1, left, caps, i, a)
        }
        choose(0, a[i], caps, i, a)
    }
    let mut caps = b.to_vec();
    place(0, a, &mut caps)
}

proptest! {
    /// Writing an instance canonicalizes it; the canonical form is a fixed
    /// point of parse-then-write.
    #[test]
    fn instance_write_parse_write_is_stable(inst in instances()) {
        let once = write_instance(&inst);
        let reparsed = parse_instance(&once).expect("own output parses");
        prop_assert_eq!(&write_instance(&reparsed), &once);
        // Canonicalization preserves the instance parameters.
        prop_assert_eq!(reparsed.n(), inst.n());
        prop_assert_eq!(reparsed.graph.edge_count(), inst.graph.edge_count());
        prop_assert_eq!(reparsed.d, inst.d);
        prop_assert_eq!(reparsed.k, inst.k);
    }

    /// A solution file survives a parse/write cycle byte for byte.
    #[test]
    fn solution_write_parse_round_trips((_, edits) in graphs_with_edits(), yes in any::<bool>()) {
        let sol = if yes { Some(&edits) } else { None };
        let text = write_solution(sol);
        let parsed = parse_solution(&text).expect("own output parses");
        prop_assert_eq!(parsed.yes, yes);
        if yes {
            prop_assert_eq!(&parsed.edits, &edits);
        }
        prop_assert_eq!(
            write_solution(parsed.yes.then_some(&parsed.edits)),
            text
        );
    }

    /// Applying an edit set shifts each degree by exactly the number of
    /// incident additions minus incident deletions, and applying the
    /// reversed edit set undoes it.
    #[test]
    fn apply_edits_obeys_degree_arithmetic((g, edits) in graphs_with_edits()) {
        let edited = apply_edits(&g, &edits).expect("edits fit the graph");
        for v in g.vertices() {
            let del = edits.deleted.iter().filter(|e| e.touches(v)).count() as i64;
            let add = edits.added.iter().filter(|e| e.touches(v)).count() as i64;
            prop_assert_eq!(i64::from(edited.degree(v)), i64::from(g.degree(v)) - del + add);
        }
        let reversed = EditSet {
            deleted: edits.added.clone(),
            added: edits.deleted.clone(),
        };
        let restored = apply_edits(&edited, &reversed).expect("reverse edits fit");
        prop_assert_eq!(restored.edges(), g.edges());
    }

    /// Conjugation is an involution and reverses dominance between
    /// equal-sum partitions.
    #[test]
    fn conjugate_involution_and_dominance_flip(a in small_partitions(), b in small_partitions()) {
        prop_assert_eq!(&a.conjugate().conjugate(), &a);
        prop_assert_eq!(a.conjugate().sum(), a.sum());
        if a.sum() == b.sum() {
            prop_assert_eq!(a.dominates(&b), b.conjugate().dominates(&a.conjugate()));
        }
    }

    /// The feasibility test, the flow-based realization, and a brute-force
    /// placement all agree on small bidegree sequences.
    #[test]
    fn bidegree_test_matches_realization(a in small_partitions(), b in small_partitions()) {
        let feasible = is_bipartite_graphic(&a, &b);
        prop_assert_eq!(feasible, bipartite_exists(a.parts(), b.parts()));
        match realize_bipartite(&a, &b) {
            Ok(g) => {
                prop_assert!(feasible);
                prop_assert!(g.audit(a.parts(), b.parts()));
            }
            Err(_) => prop_assert!(!feasible),
        }
    }

    /// Components partition the vertex set, every edge stays inside one
    /// component, and connectivity means at most one component.
    #[test]
    fn components_partition_the_vertices((g, _) in graphs_with_edits()) {
        let comps = g.components();
        let mut seen = std::collections::BTreeSet::new();
        for c in &comps {
            prop_assert!(!c.is_empty());
            for &v in c {
                prop_assert!(seen.insert(v), "vertex {} in two components", v);
            }
        }
        prop_assert_eq!(seen, g.vertices().collect());
        for e in g.edges() {
            prop_assert!(comps.iter().any(|c| c.contains(&e.u) && c.contains(&e.v)));
        }
        prop_assert_eq!(g.is_connected(), comps.len() <= 1);
    }
}
