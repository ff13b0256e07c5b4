//! Exact solvers over edge edits.
//!
//! Two distinct problems live here. `brute_force_solve` is the reference
//! oracle for the full problem (degrees + connectivity, unit costs, budget k):
//! exhaustive over edit subsets in (size, lexicographic) order, so the result
//! is the lexicographically least minimum solution. `solve_with_costs` is the
//! degree-only variant with pair costs ρ and no connectivity requirement; it
//! has a bounded-exhaustive backend and a polynomial backend that reduces to
//! minimum-weight perfect matching through a per-vertex copy gadget. The two
//! backends are held against each other in tests.

use std::collections::{BTreeMap, BTreeSet};

use crate::graph::{Edge, Graph};
use crate::instance::{EditInstance, EditSet};
use crate::matching::min_weight_perfect_matching;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum SearchError {
    #[error("search space of {candidates} candidates exceeds the limit {limit}")]
    Guard { candidates: u128, limit: u128 },
}

/// Resource guard for exhaustive searches.
#[derive(Clone, Copy, Debug)]
pub struct SearchLimits {
    pub max_candidates: u128,
}

impl Default for SearchLimits {
    fn default() -> Self {
        // a few seconds of work at most in a debug build
        SearchLimits {
            max_candidates: 20_000_000,
        }
    }
}

fn binomial_sum(pool: usize, max_take: usize) -> u128 {
    let mut total: u128 = 0;
    let mut term: u128 = 1;
    for j in 0..=max_take.min(pool) {
        if j > 0 {
            term = term.saturating_mul((pool - j + 1) as u128) / j as u128;
        }
        total = total.saturating_add(term);
    }
    total
}

/// Every unordered vertex pair of the graph, ascending; existing edges become
/// deletion candidates, absent pairs addition candidates.
fn pair_universe(g: &Graph) -> Vec<(Edge, bool)> {
    let vs: Vec<u32> = g.vertices().collect();
    let mut out = Vec::new();
    for (i, &u) in vs.iter().enumerate() {
        for &v in &vs[i + 1..] {
            out.push((Edge::new(u, v), g.has_edge(u, v)));
        }
    }
    out
}

/// Exhaustive minimum-edit solver for the full problem. Candidates are
/// visited in (size, lexicographic) order and the first success is returned,
/// which is the lexicographically least minimum-cost solution.
pub fn brute_force_solve(
    inst: &EditInstance,
    limits: &SearchLimits,
) -> Result<Option<EditSet>, SearchError> {
    let pairs = pair_universe(&inst.graph);
    let k = inst.k as usize;
    let candidates = binomial_sum(pairs.len(), k);
    if candidates > limits.max_candidates {
        return Err(SearchError::Guard {
            candidates,
            limit: limits.max_candidates,
        });
    }

    // degree slack per vertex; a candidate passes the cheap check when all
    // slacks reach zero, and only then pays for the connectivity test
    let vs: Vec<u32> = inst.graph.vertices().collect();
    let index: BTreeMap<u32, usize> = vs.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let base_slack: Vec<i32> = vs
        .iter()
        .map(|&v| i32::try_from(inst.delta[&v]).unwrap() - inst.graph.degree(v) as i32)
        .collect();

    let mut chosen: Vec<usize> = Vec::new();
    let mut slack = base_slack.clone();

    fn rec(
        size: usize,
        start: usize,
        pairs: &[(Edge, bool)],
        index: &BTreeMap<u32, usize>,
        slack: &mut Vec<i32>,
        chosen: &mut Vec<usize>,
        inst: &EditInstance,
    ) -> Option<EditSet> {
        if chosen.len() == size {
            if slack.iter().any(|&s| s != 0) {
                return None;
            }
            let mut edits = EditSet::empty();
            for &i in chosen.iter() {
                let (e, existing) = pairs[i];
                if existing {
                    edits.deleted.insert(e);
                } else {
                    edits.added.insert(e);
                }
            }
            let edited = crate::instance::apply_edits(&inst.graph, &edits).expect("well-formed");
            if edited.is_connected() {
                return Some(edits);
            }
            return None;
        }
        let remaining = size - chosen.len();
        for i in start..pairs.len() {
            if pairs.len() - i < remaining {
                break;
            }
            let (e, existing) = pairs[i];
            let du = if existing { 1 } else { -1 };
            slack[index[&e.u]] += du;
            slack[index[&e.v]] += du;
            chosen.push(i);
            let found = rec(size, i + 1, pairs, index, slack, chosen, inst);
            chosen.pop();
            slack[index[&e.u]] -= du;
            slack[index[&e.v]] -= du;
            if found.is_some() {
                return found;
            }
        }
        None
    }

    for size in 0..=k {
        if let Some(sol) = rec(size, 0, &pairs, &index, &mut slack, &mut chosen, inst) {
            return Ok(Some(sol));
        }
    }
    Ok(None)
}

/// Symmetric positive costs over all vertex pairs: a base cost with sparse
/// overrides.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PairCosts {
    base: u64,
    overrides: BTreeMap<Edge, u64>,
}

impl PairCosts {
    pub fn uniform(base: u64) -> PairCosts {
        assert!(base > 0, "costs must be positive");
        PairCosts {
            base,
            overrides: BTreeMap::new(),
        }
    }

    /// Unit base cost, `premium` on every pair inside `set`.
    pub fn premium_within(set: &BTreeSet<u32>, premium: u64) -> PairCosts {
        assert!(premium > 0, "costs must be positive");
        let mut overrides = BTreeMap::new();
        let vs: Vec<u32> = set.iter().copied().collect();
        for (i, &u) in vs.iter().enumerate() {
            for &v in &vs[i + 1..] {
                overrides.insert(Edge::new(u, v), premium);
            }
        }
        PairCosts { base: 1, overrides }
    }

    pub fn set(&mut self, e: Edge, cost: u64) {
        assert!(cost > 0, "costs must be positive");
        self.overrides.insert(e, cost);
    }

    pub fn get(&self, e: Edge) -> u64 {
        self.overrides.get(&e).copied().unwrap_or(self.base)
    }
}

/// Degree-editing-with-costs instance: no connectivity requirement.
#[derive(Clone, Debug)]
pub struct CostInstance {
    pub graph: Graph,
    pub delta: BTreeMap<u32, u32>,
    pub costs: PairCosts,
    /// Solutions must cost at most this much.
    pub budget: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CostBackend {
    /// Bounded exhaustive search; exact but exponential.
    Exhaustive,
    /// Gadget reduction to minimum-weight perfect matching; polynomial.
    Matching,
    /// Exhaustive when the candidate space is small, matching otherwise.
    Auto,
}

/// Minimum-cost degree-correct edit of total cost ≤ budget, or None.
pub fn solve_with_costs(ci: &CostInstance, backend: CostBackend) -> Option<(EditSet, u64)> {
    let result = match backend {
        CostBackend::Exhaustive => solve_costs_exhaustive(ci),
        CostBackend::Matching => solve_costs_matching(ci),
        CostBackend::Auto => {
            let pairs = ci.graph.vertex_count() * (ci.graph.vertex_count() - 1) / 2;
            if binomial_sum(pairs, ci.budget as usize) <= 200_000 {
                solve_costs_exhaustive(ci)
            } else {
                solve_costs_matching(ci)
            }
        }
    };
    if let Some((edits, cost)) = &result {
        debug_assert!(edit_cost(ci, edits) == *cost && *cost <= ci.budget);
        debug_assert!(degrees_match(ci, edits));
    }
    result
}

fn edit_cost(ci: &CostInstance, edits: &EditSet) -> u64 {
    edits
        .deleted
        .iter()
        .chain(edits.added.iter())
        .map(|&e| ci.costs.get(e))
        .sum()
}

fn degrees_match(ci: &CostInstance, edits: &EditSet) -> bool {
    let edited = crate::instance::apply_edits(&ci.graph, edits).expect("well-formed");
    let vs: Vec<u32> = edited.vertices().collect();
    vs.into_iter().all(|v| edited.degree(v) == ci.delta[&v])
}

fn solve_costs_exhaustive(ci: &CostInstance) -> Option<(EditSet, u64)> {
    let pairs = pair_universe(&ci.graph);
    let vs: Vec<u32> = ci.graph.vertices().collect();
    let index: BTreeMap<u32, usize> = vs.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut slack: Vec<i32> = vs
        .iter()
        .map(|&v| i32::try_from(ci.delta[&v]).unwrap() - ci.graph.degree(v) as i32)
        .collect();

    struct Search<'a> {
        pairs: &'a [(Edge, bool)],
        costs: Vec<u64>,
        index: &'a BTreeMap<u32, usize>,
        budget: u64,
        best: Option<(EditSet, u64)>,
    }

    impl Search<'_> {
        // visits subsets in lexicographic order of their pair-index sequence;
        // the first subset achieving each cost is kept, so the final answer
        // is the lexicographically least minimum
        fn rec(&mut self, start: usize, acc: u64, slack: &mut Vec<i32>, chosen: &mut Vec<usize>) {
            if slack.iter().all(|&s| s == 0) {
                let better = match &self.best {
                    None => true,
                    Some((_, c)) => acc < *c,
                };
                if better {
                    let mut edits = EditSet::empty();
                    for &i in chosen.iter() {
                        let (e, existing) = self.pairs[i];
                        if existing {
                            edits.deleted.insert(e);
                        } else {
                            edits.added.insert(e);
                        }
                    }
                    self.best = Some((edits, acc));
                }
            }
            if let Some((_, c)) = &self.best {
                if acc >= *c {
                    return;
                }
            }
            for i in start..self.pairs.len() {
                let next = acc + self.costs[i];
                if next > self.budget {
                    continue;
                }
                let (e, existing) = self.pairs[i];
                let du = if existing { 1 } else { -1 };
                slack[self.index[&e.u]] += du;
                slack[self.index[&e.v]] += du;
                chosen.push(i);
                self.rec(i + 1, next, slack, chosen);
                chosen.pop();
                slack[self.index[&e.u]] -= du;
                slack[self.index[&e.v]] -= du;
            }
        }
    }

    let costs: Vec<u64> = pairs.iter().map(|&(e, _)| ci.costs.get(e)).collect();
    let mut search = Search {
        pairs: &pairs,
        costs,
        index: &index,
        budget: ci.budget,
        best: None,
    };
    search.rec(0, 0, &mut slack, &mut Vec::new());
    search.best
}

/// Gadget reduction. Every vertex becomes δ(v) copies; every vertex pair
/// becomes a two-node widget whose internal edge means "leave the pair as it
/// is". Selecting a pair (keeping an existing edge or adding a missing one)
/// matches the widget nodes outward to one copy of each endpoint, so a perfect
/// matching corresponds exactly to an edge set realizing δ. Weights make the
/// minimum perfect matching the minimum editing cost: an existing pair not
/// selected pays its deletion, an absent pair selected pays its addition.
fn solve_costs_matching(ci: &CostInstance) -> Option<(EditSet, u64)> {
    let vs: Vec<u32> = ci.graph.vertices().collect();
    let mut copy_base: BTreeMap<u32, usize> = BTreeMap::new();
    let mut next_node = 0usize;
    for &v in &vs {
        copy_base.insert(v, next_node);
        next_node += ci.delta[&v] as usize;
    }
    let pairs = pair_universe(&ci.graph);
    let pair_base = next_node;
    next_node += 2 * pairs.len();

    let mut edges: Vec<(usize, usize, i64)> = Vec::new();
    let mut base_cost = 0u64;
    for (idx, &(e, existing)) in pairs.iter().enumerate() {
        let node_u = pair_base + 2 * idx;
        let node_v = node_u + 1;
        let rho = i64::try_from(ci.costs.get(e)).expect("cost fits i64");
        // selecting the pair costs +ρ if absent, saves ρ if present
        let select_weight = if existing {
            base_cost += rho as u64;
            -rho
        } else {
            rho
        };
        edges.push((node_u, node_v, 0));
        for c in 0..ci.delta[&e.u] as usize {
            edges.push((node_u, copy_base[&e.u] + c, select_weight));
        }
        for c in 0..ci.delta[&e.v] as usize {
            edges.push((node_v, copy_base[&e.v] + c, 0));
        }
    }

    let (weight, mates) = min_weight_perfect_matching(next_node, &edges)?;
    let total = base_cost as i64 + weight;
    debug_assert!(total >= 0);
    let total = total as u64;
    if total > ci.budget {
        return None;
    }
    let mut edits = EditSet::empty();
    for (idx, &(e, existing)) in pairs.iter().enumerate() {
        let node_u = pair_base + 2 * idx;
        let selected = mates[node_u] != node_u + 1;
        match (existing, selected) {
            (true, false) => {
                edits.deleted.insert(e);
            }
            (false, true) => {
                edits.added.insert(e);
            }
            _ => {}
        }
    }
    debug_assert_eq!(edit_cost(ci, &edits), total);
    Some((edits, total))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::verify_solution;

    fn edges(list: &[(u32, u32)]) -> BTreeSet<Edge> {
        list.iter().map(|&(a, b)| Edge::new(a, b)).collect()
    }

    #[test]
    fn oracle_completes_p3() {
        // P3 with target degree 2: unique minimum is adding 1-3
        let inst = EditInstance::regular(Graph::from_edges(3, &[(1, 2), (2, 3)]), 2, 1);
        let sol = brute_force_solve(&inst, &SearchLimits::default())
            .unwrap()
            .unwrap();
        assert!(sol.deleted.is_empty());
        assert_eq!(sol.added, edges(&[(1, 3)]));
        assert!(verify_solution(&inst, &sol).unwrap().all());
    }

    #[test]
    fn oracle_reduces_k4_to_cycle() {
        // K4 with target degree 2, k=2: delete a perfect matching;
        // lexicographically least deletes 1-2 and 3-4... but that disconnects
        // pairs? no: K4 minus a perfect matching is C4
        let g = Graph::from_edges(4, &[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]);
        let inst = EditInstance::regular(g, 2, 2);
        let sol = brute_force_solve(&inst, &SearchLimits::default())
            .unwrap()
            .unwrap();
        assert_eq!(sol.cost(), 2);
        assert_eq!(sol.deleted, edges(&[(1, 2), (3, 4)]));
        assert!(verify_solution(&inst, &sol).unwrap().all());
    }

    #[test]
    fn oracle_rejects_parity_impossible() {
        // two disjoint edges wanting degree 1 each but must connect: any
        // connecting addition breaks a degree, so NO
        let g = Graph::from_edges(4, &[(1, 2), (3, 4)]);
        let inst = EditInstance::regular(g, 1, 2);
        assert_eq!(brute_force_solve(&inst, &SearchLimits::default()).unwrap(), None);
    }

    #[test]
    fn oracle_guard_fires() {
        let g = Graph::from_edges(12, &[]);
        let inst = EditInstance::regular(g, 3, 11);
        let tiny = SearchLimits { max_candidates: 10 };
        assert!(matches!(
            brute_force_solve(&inst, &tiny),
            Err(SearchError::Guard { .. })
        ));
    }

    #[test]
    fn cost_solver_ignores_connectivity() {
        // two paths, target degree 2 everywhere: degree-only optimum closes
        // each path separately at cost 2
        let g = Graph::from_edges(6, &[(1, 2), (2, 3), (4, 5), (5, 6)]);
        let ci = CostInstance {
            graph: g,
            delta: (1..=6).map(|v| (v, 2)).collect(),
            costs: PairCosts::uniform(1),
            budget: 4,
        };
        for backend in [CostBackend::Exhaustive, CostBackend::Matching] {
            let (sol, cost) = solve_with_costs(&ci, backend).unwrap();
            assert_eq!(cost, 2, "{backend:?}");
            assert_eq!(sol.added, edges(&[(1, 3), (4, 6)]));
        }
    }

    #[test]
    fn premium_costs_steer_the_solution() {
        // star 1-2, 1-3 with targets: 1 wants 1, 2 wants 1, 3 wants 0;
        // deleting 1-3 is the only optimum; make it premium and the optimum
        // still picks it (no alternative) at the premium price
        let g = Graph::from_edges(3, &[(1, 2), (1, 3)]);
        let mut costs = PairCosts::uniform(1);
        costs.set(Edge::new(1, 3), 5);
        let ci = CostInstance {
            graph: g,
            delta: BTreeMap::from([(1, 1), (2, 1), (3, 0)]),
            costs,
            budget: 10,
        };
        for backend in [CostBackend::Exhaustive, CostBackend::Matching] {
            let (sol, cost) = solve_with_costs(&ci, backend).unwrap();
            assert_eq!(sol.deleted, edges(&[(1, 3)]), "{backend:?}");
            assert_eq!(cost, 5);
        }
        // with a budget below the premium, no solution
        let ci2 = CostInstance { budget: 4, ..ci };
        assert!(solve_with_costs(&ci2, CostBackend::Exhaustive).is_none());
        assert!(solve_with_costs(&ci2, CostBackend::Matching).is_none());
    }

    #[test]
    fn infeasible_degrees_yield_none() {
        // single vertex wanting degree 1: no pairs at all
        let mut g = Graph::new();
        g.add_vertex(1);
        let ci = CostInstance {
            graph: g,
            delta: BTreeMap::from([(1, 1)]),
            costs: PairCosts::uniform(1),
            budget: 5,
        };
        assert!(solve_with_costs(&ci, CostBackend::Exhaustive).is_none());
        assert!(solve_with_costs(&ci, CostBackend::Matching).is_none());
        // odd total degree is impossible
        let g = Graph::from_edges(3, &[]);
        let ci = CostInstance {
            graph: g,
            delta: BTreeMap::from([(1, 1), (2, 1), (3, 1)]),
            costs: PairCosts::uniform(1),
            budget: 5,
        };
        assert!(solve_with_costs(&ci, CostBackend::Auto).is_none());
    }

    #[test]
    fn backends_agree_on_zero_edit_instances() {
        let g = Graph::from_edges(3, &[(1, 2), (2, 3), (1, 3)]);
        let ci = CostInstance {
            graph: g,
            delta: (1..=3).map(|v| (v, 2)).collect(),
            costs: PairCosts::uniform(1),
            budget: 0,
        };
        for backend in [CostBackend::Exhaustive, CostBackend::Matching] {
            let (sol, cost) = solve_with_costs(&ci, backend).unwrap();
            assert!(sol.is_empty());
            assert_eq!(cost, 0);
        }
    }
}
