//! Reconnecting a degree-correct solution by swapping added edges.
//!
//! If (D, A) realizes the target degrees but G − D + A is disconnected, and
//! every component of G − D still has positive deficit, then pairs of added
//! edges {u1v1, u2v2} lying in different components can be swapped for
//! {u1u2, v1v2}. Each swap keeps every vertex's added-degree intact and
//! strictly decreases the number of components, so the loop reconnects the
//! solution in at most |A| rounds.

use std::collections::BTreeSet;

use crate::graph::Edge;
use crate::instance::{apply_edits, EditInstance, EditSet};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ReconnectError {
    #[error("edit set malformed: {0}")]
    Malformed(#[from] crate::instance::EditError),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("no eligible swap found although the graph is disconnected")]
    NoSwap,
}

fn check_preconditions(inst: &EditInstance, edits: &EditSet) -> Result<(), ReconnectError> {
    // degree-correct after editing
    let edited = apply_edits(&inst.graph, edits)?;
    for v in edited.vertices() {
        if edited.degree(v) != inst.delta[&v] {
            return Err(ReconnectError::Precondition(format!(
                "vertex {v} has degree {} but target {}",
                edited.degree(v),
                inst.delta[&v]
            )));
        }
    }
    if edits.cost() > inst.k as usize {
        return Err(ReconnectError::Precondition(format!(
            "cost {} exceeds budget {}",
            edits.cost(),
            inst.k
        )));
    }
    // every component of G − D has positive deficit, and |A| ≥ components − 1
    let stripped = apply_edits(
        &inst.graph,
        &EditSet {
            deleted: edits.deleted.clone(),
            added: BTreeSet::new(),
        },
    )?;
    let comps = stripped.components();
    if edits.added.len() + 1 < comps.len() {
        return Err(ReconnectError::Precondition(format!(
            "{} additions cannot join {} deletion components",
            edits.added.len(),
            comps.len()
        )));
    }
    for comp in &comps {
        let deficit: i64 = comp
            .iter()
            .map(|&v| i64::from(inst.delta[&v]) - i64::from(stripped.degree(v)))
            .filter(|&x| x > 0)
            .sum();
        if deficit <= 0 {
            return Err(ReconnectError::Precondition(format!(
                "component containing {} has no deficit",
                comp.iter().next().unwrap()
            )));
        }
    }
    Ok(())
}

fn component_of(comps: &[BTreeSet<u32>], v: u32) -> usize {
    comps
        .iter()
        .position(|c| c.contains(&v))
        .expect("vertex in some component")
}

/// Swap added edges until the edited graph is connected.
///
/// Preconditions (checked): the edits realize `delta` exactly, fit the
/// budget, every component of G − D has positive deficit, and |A| is at least
/// the number of such components minus one. An already-connected input is
/// returned unchanged without precondition checks.
pub fn rearrange_to_connect(
    inst: &EditInstance,
    edits: &EditSet,
) -> Result<EditSet, ReconnectError> {
    let edited = apply_edits(&inst.graph, edits)?;
    if edited.is_connected() {
        return Ok(edits.clone());
    }
    check_preconditions(inst, edits)?;

    let mut current = edits.clone();
    let mut graph = edited;
    let mut comp_count = graph.components().len();
    while comp_count > 1 {
        let comps = graph.components();
        let bridges: BTreeSet<Edge> = graph.bridges().into_iter().collect();
        // lexicographically smallest added edge that is not a bridge of its
        // component and coexists with an added edge in another component
        let added: Vec<Edge> = current.added.iter().copied().collect();
        let mut swap: Option<(Edge, Edge)> = None;
        'outer: for &e1 in &added {
            if bridges.contains(&e1) {
                continue;
            }
            let c1 = component_of(&comps, e1.u);
            for &e2 in &added {
                if component_of(&comps, e2.u) != c1 {
                    swap = Some((e1, e2));
                    break 'outer;
                }
            }
        }
        let Some((e1, e2)) = swap else {
            return Err(ReconnectError::NoSwap);
        };
        // replace {u1v1, u2v2} with {u1u2, v1v2}; the new pairs run between
        // different components, so they are loops-free non-edges
        let (u1, v1) = (e1.u, e1.v);
        let (u2, v2) = (e2.u, e2.v);
        let f1 = Edge::new(u1, u2);
        let f2 = Edge::new(v1, v2);
        debug_assert!(!graph.has_edge(f1.u, f1.v) && !graph.has_edge(f2.u, f2.v));
        current.added.remove(&e1);
        current.added.remove(&e2);
        current.added.insert(f1);
        current.added.insert(f2);
        graph.remove_edge(e1.u, e1.v);
        graph.remove_edge(e2.u, e2.v);
        graph.add_edge(f1.u, f1.v);
        graph.add_edge(f2.u, f2.v);
        let new_count = graph.components().len();
        if new_count >= comp_count {
            return Err(ReconnectError::Precondition(format!(
                "swap failed to make progress ({comp_count} -> {new_count} components)"
            )));
        }
        comp_count = new_count;
    }
    Ok(current)
}
