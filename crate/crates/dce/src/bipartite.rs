//! Constructive bipartite realization of a degree-sequence pair.
//!
//! `realize_bipartite` builds the flow network source → X → Y → sink with
//! unit capacities on the X×Y pairs and runs a deterministic max-flow; the
//! saturated middle arcs are the edges of the realization. Feasibility
//! therefore never disagrees with `is_bipartite_graphic` — the tests hold the
//! two routes against each other.

use crate::partitions::Partition;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum RealizeError {
    #[error("degree pair is not bipartite graphic")]
    Infeasible,
}

/// A realized bipartite graph on index sets X = 0..p, Y = 0..q.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BipartiteGraph {
    pub p: usize,
    pub q: usize,
    /// Edges (x index, y index), ascending.
    pub edges: Vec<(usize, usize)>,
}

impl BipartiteGraph {
    pub fn degree_x(&self, i: usize) -> usize {
        self.edges.iter().filter(|&&(x, _)| x == i).count()
    }

    pub fn degree_y(&self, j: usize) -> usize {
        self.edges.iter().filter(|&&(_, y)| y == j).count()
    }

    /// Degree + simplicity audit against the prescribed sequences.
    pub fn audit(&self, a: &[u32], b: &[u32]) -> bool {
        let mut seen = std::collections::BTreeSet::new();
        for &(x, y) in &self.edges {
            if x >= self.p || y >= self.q || !seen.insert((x, y)) {
                return false;
            }
        }
        (0..self.p).all(|i| self.degree_x(i) == a[i] as usize)
            && (0..self.q).all(|j| self.degree_y(j) == b[j] as usize)
    }
}

/// Dense arc-list Dinic. Small and deterministic: arcs are scanned in
/// insertion order, so identical inputs yield identical flows.
struct Dinic {
    // arcs stored as (to, capacity); arc i^1 is the reverse of arc i
    to: Vec<usize>,
    cap: Vec<i64>,
    head: Vec<Vec<usize>>,
}

impl Dinic {
    fn new(nodes: usize) -> Dinic {
        Dinic {
            to: Vec::new(),
            cap: Vec::new(),
            head: vec![Vec::new(); nodes],
        }
    }

    fn arc(&mut self, from: usize, to: usize, cap: i64) -> usize {
        let id = self.to.len();
        self.to.push(to);
        self.cap.push(cap);
        self.head[from].push(id);
        self.to.push(from);
        self.cap.push(0);
        self.head[to].push(id + 1);
        id
    }

    fn bfs(&self, s: usize, t: usize) -> Option<Vec<u32>> {
        let mut level = vec![u32::MAX; self.head.len()];
        level[s] = 0;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &a in &self.head[u] {
                let v = self.to[a];
                if self.cap[a] > 0 && level[v] == u32::MAX {
                    level[v] = level[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        (level[t] != u32::MAX).then_some(level)
    }

    fn dfs(&mut self, u: usize, t: usize, pushed: i64, level: &[u32], it: &mut [usize]) -> i64 {
        if u == t {
            return pushed;
        }
        while it[u] < self.head[u].len() {
            let a = self.head[u][it[u]];
            let v = self.to[a];
            if self.cap[a] > 0 && level[v] == level[u] + 1 {
                let got = self.dfs(v, t, pushed.min(self.cap[a]), level, it);
                if got > 0 {
                    self.cap[a] -= got;
                    self.cap[a ^ 1] += got;
                    return got;
                }
            }
            it[u] += 1;
        }
        0
    }

    fn max_flow(&mut self, s: usize, t: usize) -> i64 {
        let mut total = 0;
        while let Some(level) = self.bfs(s, t) {
            let mut it = vec![0usize; self.head.len()];
            loop {
                let pushed = self.dfs(s, t, i64::MAX, &level, &mut it);
                if pushed == 0 {
                    break;
                }
                total += pushed;
            }
        }
        total
    }
}

/// Realize (a, b) as a simple bipartite graph, or report infeasibility.
pub fn realize_bipartite(a: &Partition, b: &Partition) -> Result<BipartiteGraph, RealizeError> {
    let p = a.len();
    let q = b.len();
    let total: i64 = a.sum() as i64;
    if total != b.sum() as i64 {
        return Err(RealizeError::Infeasible);
    }
    // nodes: source, X (1..=p), Y (p+1..=p+q), sink
    let source = 0;
    let sink = p + q + 1;
    let mut net = Dinic::new(p + q + 2);
    for (i, &ai) in a.parts().iter().enumerate() {
        net.arc(source, 1 + i, i64::from(ai));
    }
    let mut middle = Vec::with_capacity(p * q);
    for i in 0..p {
        for j in 0..q {
            middle.push(net.arc(1 + i, 1 + p + j, 1));
        }
    }
    for (j, &bj) in b.parts().iter().enumerate() {
        net.arc(1 + p + j, sink, i64::from(bj));
    }
    if net.max_flow(source, sink) != total {
        return Err(RealizeError::Infeasible);
    }
    let mut edges = Vec::new();
    for (idx, &arc) in middle.iter().enumerate() {
        if net.cap[arc] == 0 {
            edges.push((idx / q, idx % q));
        }
    }
    Ok(BipartiteGraph { p, q, edges })
}

/// Realize prescribed per-vertex counts between two concrete vertex lists.
///
/// Each side is a list of (vertex id, required incident count); zero counts
/// are allowed. Returns the chosen vertex-id pairs. Used when gluing
/// per-component solutions: the degree sequences come from partitions, but the
/// edges must land on specific vertices.
pub fn realize_bipartite_on(
    left: &[(u32, u32)],
    right: &[(u32, u32)],
) -> Result<Vec<(u32, u32)>, RealizeError> {
    // sort each side by descending count (stable on vertex id) so the
    // partition positions map back to vertices deterministically
    let mut ls: Vec<(u32, u32)> = left.iter().copied().filter(|&(_, c)| c > 0).collect();
    let mut rs: Vec<(u32, u32)> = right.iter().copied().filter(|&(_, c)| c > 0).collect();
    ls.sort_by(|x, y| y.1.cmp(&x.1).then(x.0.cmp(&y.0)));
    rs.sort_by(|x, y| y.1.cmp(&x.1).then(x.0.cmp(&y.0)));
    let a = Partition::new(ls.iter().map(|&(_, c)| c).collect()).expect("sorted by construction");
    let b = Partition::new(rs.iter().map(|&(_, c)| c).collect()).expect("sorted by construction");
    let g = realize_bipartite(&a, &b)?;
    let mut out: Vec<(u32, u32)> = g
        .edges
        .iter()
        .map(|&(i, j)| (ls[i].0, rs[j].0))
        .collect();
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::{is_bipartite_graphic, partitions_of};

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn realizes_complete_bipartite() {
        let g = realize_bipartite(&p(&[2, 2]), &p(&[2, 2])).unwrap();
        assert!(g.audit(&[2, 2], &[2, 2]));
        assert_eq!(g.edges.len(), 4);
    }

    #[test]
    fn star_and_infeasible() {
        let g = realize_bipartite(&p(&[3]), &p(&[1, 1, 1])).unwrap();
        assert!(g.audit(&[3], &[1, 1, 1]));
        assert_eq!(
            realize_bipartite(&p(&[3]), &p(&[2, 1])).unwrap_err(),
            RealizeError::Infeasible
        );
        assert_eq!(
            realize_bipartite(&p(&[2]), &p(&[1])).unwrap_err(),
            RealizeError::Infeasible
        );
    }

    #[test]
    fn empty_pair_realizes_empty_graph() {
        let g = realize_bipartite(&Partition::empty(), &Partition::empty()).unwrap();
        assert!(g.edges.is_empty());
    }

    #[test]
    fn flow_route_matches_gale_ryser_route() {
        // dual-route check on all pairs with entries ≤ 3 and ≤ 4 parts
        for n in 0..=6u32 {
            for a in partitions_of(n, 3, 4) {
                for b in partitions_of(n, 3, 4) {
                    let formula = is_bipartite_graphic(&a, &b);
                    let construct = realize_bipartite(&a, &b);
                    assert_eq!(
                        formula,
                        construct.is_ok(),
                        "routes disagree on {a:?} / {b:?}"
                    );
                    if let Ok(g) = construct {
                        assert!(g.audit(a.parts(), b.parts()));
                    }
                }
            }
        }
    }

    #[test]
    fn vertex_mapped_realization() {
        // left: vertex 10 needs 2 edges, vertex 11 needs 1; right: 20 needs 2, 21 needs 1
        let edges = realize_bipartite_on(&[(10, 2), (11, 1)], &[(20, 2), (21, 1)]).unwrap();
        assert_eq!(edges.len(), 3);
        let count = |v: u32| edges.iter().filter(|&&(a, b)| a == v || b == v).count();
        assert_eq!(count(10), 2);
        assert_eq!(count(11), 1);
        assert_eq!(count(20), 2);
        assert_eq!(count(21), 1);
        // zero-count vertices are fine and get no edges
        let e2 = realize_bipartite_on(&[(1, 1), (2, 0)], &[(3, 1)]).unwrap();
        assert_eq!(e2, vec![(1, 3)]);
    }
}
