//! Problem instances and edit sets.
//!
//! An instance asks: can `graph` be turned into a connected graph realizing
//! the target degrees `delta` with at most `budget` edge deletions plus
//! additions? `d` caps the target degrees and parameterizes the kernel.

use std::collections::{BTreeMap, BTreeSet};

use crate::graph::{Edge, Graph};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum InstanceError {
    #[error("delta missing for vertex {0}")]
    DeltaMissing(u32),
    #[error("delta({v}) = {val} exceeds d = {d}")]
    DeltaTooLarge { v: u32, val: u32, d: u32 },
    #[error("instance has no vertices")]
    Empty,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum EditError {
    #[error("deleted edge {0:?} is not in the graph")]
    DeleteMissing(Edge),
    #[error("added edge {0:?} is already in the graph")]
    AddPresent(Edge),
    #[error("edge {0:?} is both deleted and added")]
    Overlap(Edge),
    #[error("edit touches unknown vertex {0}")]
    UnknownVertex(u32),
}

/// Instance of the editing problem.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EditInstance {
    pub graph: Graph,
    /// Target degree for every vertex; always `0 ..= d`.
    pub delta: BTreeMap<u32, u32>,
    /// Upper bound on target degrees.
    pub d: u32,
    /// Edit budget.
    pub k: u32,
}

impl EditInstance {
    pub fn new(graph: Graph, delta: BTreeMap<u32, u32>, d: u32, k: u32) -> Result<Self, InstanceError> {
        if graph.vertex_count() == 0 {
            return Err(InstanceError::Empty);
        }
        for v in graph.vertices() {
            match delta.get(&v) {
                None => return Err(InstanceError::DeltaMissing(v)),
                Some(&val) if val > d => {
                    return Err(InstanceError::DeltaTooLarge { v, val, d })
                }
                _ => {}
            }
        }
        Ok(EditInstance { graph, delta, d, k })
    }

    /// Instance with uniform target degree `d` (the regular case).
    pub fn regular(graph: Graph, d: u32, k: u32) -> Self {
        let delta = graph.vertices().map(|v| (v, d)).collect();
        EditInstance::new(graph, delta, d, k).expect("regular instance is always well-formed")
    }

    pub fn n(&self) -> usize {
        self.graph.vertex_count()
    }
}

/// A set of edits: edges to delete from the graph and edges to add.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct EditSet {
    pub deleted: BTreeSet<Edge>,
    pub added: BTreeSet<Edge>,
}

impl EditSet {
    pub fn empty() -> EditSet {
        EditSet::default()
    }

    pub fn cost(&self) -> usize {
        self.deleted.len() + self.added.len()
    }

    pub fn is_empty(&self) -> bool {
        self.deleted.is_empty() && self.added.is_empty()
    }

    /// All edited edges with their kind, ascending by edge.
    pub fn labeled(&self) -> Vec<(Edge, EditKind)> {
        let mut out: Vec<(Edge, EditKind)> = self
            .deleted
            .iter()
            .map(|&e| (e, EditKind::Delete))
            .chain(self.added.iter().map(|&e| (e, EditKind::Add)))
            .collect();
        out.sort();
        out
    }

    /// Check well-formedness against a graph: deletions are present edges,
    /// additions are absent, the two sets are disjoint, endpoints exist.
    pub fn check_against(&self, g: &Graph) -> Result<(), EditError> {
        for &e in self.deleted.iter().chain(self.added.iter()) {
            for x in [e.u, e.v] {
                if !g.has_vertex(x) {
                    return Err(EditError::UnknownVertex(x));
                }
            }
        }
        if let Some(&e) = self.deleted.intersection(&self.added).next() {
            return Err(EditError::Overlap(e));
        }
        for &e in &self.deleted {
            if !g.has_edge(e.u, e.v) {
                return Err(EditError::DeleteMissing(e));
            }
        }
        for &e in &self.added {
            if g.has_edge(e.u, e.v) {
                return Err(EditError::AddPresent(e));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum EditKind {
    Delete,
    Add,
}

/// Apply an edit set, returning the edited graph.
pub fn apply_edits(g: &Graph, edits: &EditSet) -> Result<Graph, EditError> {
    edits.check_against(g)?;
    let mut out = g.clone();
    for &e in &edits.deleted {
        out.remove_edge(e.u, e.v);
    }
    for &e in &edits.added {
        out.add_edge(e.u, e.v);
    }
    Ok(out)
}

/// Outcome of checking a proposed solution.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct VerifyReport {
    pub degrees_ok: bool,
    pub connected: bool,
    pub within_budget: bool,
}

impl VerifyReport {
    pub fn all(&self) -> bool {
        self.degrees_ok && self.connected && self.within_budget
    }
}

/// Verify a solution: edited graph realizes `delta`, is connected, and the
/// edit count respects the budget. Malformed edit sets are an error, not a
/// failed report.
pub fn verify_solution(inst: &EditInstance, edits: &EditSet) -> Result<VerifyReport, EditError> {
    let edited = apply_edits(&inst.graph, edits)?;
    let degrees_ok = edited
        .vertices()
        .all(|v| edited.degree(v) == inst.delta[&v]);
    Ok(VerifyReport {
        degrees_ok,
        connected: edited.is_connected(),
        within_budget: edits.cost() <= inst.k as usize,
    })
}

/// The deviant set and deviance mass of an instance.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DeviantReport {
    /// Vertices whose current degree differs from the target.
    pub z: BTreeSet<u32>,
    /// Total deviance `s = Σ |d_G(v) − δ(v)|`.
    pub s: u64,
    /// Positive deficits `δ(v) − d_G(v)` where the degree is too low.
    pub deficits: BTreeMap<u32, u32>,
}

pub fn deviant_report(inst: &EditInstance) -> DeviantReport {
    let mut z = BTreeSet::new();
    let mut s = 0u64;
    let mut deficits = BTreeMap::new();
    for v in inst.graph.vertices() {
        let have = inst.graph.degree(v);
        let want = inst.delta[&v];
        if have != want {
            z.insert(v);
            s += u64::from(have.abs_diff(want));
            if want > have {
                deficits.insert(v, want - have);
            }
        }
    }
    DeviantReport { z, s, deficits }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3_delta2() -> EditInstance {
        // path 1-2-3, target degree 2 everywhere, d=2, k=1
        EditInstance::regular(Graph::from_edges(3, &[(1, 2), (2, 3)]), 2, 1)
    }

    #[test]
    fn apply_and_verify_triangle_completion() {
        let inst = p3_delta2();
        let edits = EditSet {
            deleted: BTreeSet::new(),
            added: BTreeSet::from([Edge::new(1, 3)]),
        };
        let report = verify_solution(&inst, &edits).unwrap();
        assert!(report.all());
        let edited = apply_edits(&inst.graph, &edits).unwrap();
        assert_eq!(edited.degree(1), 2);
        assert_eq!(edited.edge_count(), 3);
    }

    #[test]
    fn verify_flags_each_failure_mode() {
        let inst = p3_delta2();
        // empty edit: degrees wrong (ends have degree 1), connected, in budget
        let r = verify_solution(&inst, &EditSet::empty()).unwrap();
        assert!(!r.degrees_ok && r.connected && r.within_budget);
        // deleting 1-2 disconnects and breaks degrees
        let r = verify_solution(
            &inst,
            &EditSet {
                deleted: BTreeSet::from([Edge::new(1, 2)]),
                added: BTreeSet::new(),
            },
        )
        .unwrap();
        assert!(!r.degrees_ok && !r.connected);
        // over budget: two edits with k=1
        let r = verify_solution(
            &inst,
            &EditSet {
                deleted: BTreeSet::from([Edge::new(1, 2)]),
                added: BTreeSet::from([Edge::new(1, 3)]),
            },
        )
        .unwrap();
        assert!(!r.within_budget);
    }

    #[test]
    fn malformed_edits_are_errors() {
        let inst = p3_delta2();
        let bad_delete = EditSet {
            deleted: BTreeSet::from([Edge::new(1, 3)]),
            added: BTreeSet::new(),
        };
        assert_eq!(
            verify_solution(&inst, &bad_delete).unwrap_err(),
            EditError::DeleteMissing(Edge::new(1, 3))
        );
        let bad_add = EditSet {
            deleted: BTreeSet::new(),
            added: BTreeSet::from([Edge::new(1, 2)]),
        };
        assert_eq!(
            verify_solution(&inst, &bad_add).unwrap_err(),
            EditError::AddPresent(Edge::new(1, 2))
        );
    }

    #[test]
    fn deviants_of_p3() {
        let rep = deviant_report(&p3_delta2());
        assert_eq!(rep.z, BTreeSet::from([1, 3]));
        assert_eq!(rep.s, 2);
        assert_eq!(rep.deficits, BTreeMap::from([(1, 1), (3, 1)]));
    }

    #[test]
    fn instance_validation() {
        let g = Graph::from_edges(2, &[(1, 2)]);
        let err = EditInstance::new(g.clone(), BTreeMap::from([(1, 1)]), 2, 0).unwrap_err();
        assert_eq!(err, InstanceError::DeltaMissing(2));
        let err =
            EditInstance::new(g, BTreeMap::from([(1, 3), (2, 1)]), 2, 0).unwrap_err();
        assert_eq!(
            err,
            InstanceError::DeltaTooLarge { v: 1, val: 3, d: 2 }
        );
    }
}
