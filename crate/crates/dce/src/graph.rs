//! Simple undirected graphs with dense `u32` vertex ids.
//!
//! Everything downstream (kernel rules, record enumeration, serialization)
//! assumes deterministic iteration, so adjacency lives in ordered maps and all
//! neighbor/component listings come out sorted.

use std::collections::{BTreeMap, BTreeSet};

/// An undirected edge, stored with `u < v`.
///
/// `Edge::new` normalizes the orientation and rejects loops, so a `BTreeSet<Edge>`
/// is automatically free of duplicates and self-loops.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub u: u32,
    pub v: u32,
}

impl Edge {
    /// Normalized edge between two distinct vertices.
    ///
    /// Panics on a loop: every call site constructs edges between vertices it
    /// already knows to be distinct, so a loop is a programming error.
    pub fn new(a: u32, b: u32) -> Edge {
        assert!(a != b, "loop edge {a}-{b}");
        Edge {
            u: a.min(b),
            v: a.max(b),
        }
    }

    /// The endpoint that is not `x`. Panics if `x` is not an endpoint.
    pub fn other(&self, x: u32) -> u32 {
        if x == self.u {
            self.v
        } else {
            assert_eq!(x, self.v, "vertex {x} not on edge {self:?}");
            self.u
        }
    }

    pub fn touches(&self, x: u32) -> bool {
        self.u == x || self.v == x
    }
}

impl std::fmt::Debug for Edge {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}-{}", self.u, self.v)
    }
}

/// Simple undirected graph. Vertices are explicit: a vertex can exist with no
/// incident edges, and edges may only join existing vertices.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Graph {
    adj: BTreeMap<u32, BTreeSet<u32>>,
}

impl Graph {
    pub fn new() -> Graph {
        Graph::default()
    }

    /// Graph on vertices `1..=n` with the given edges.
    pub fn from_edges(n: u32, edges: &[(u32, u32)]) -> Graph {
        let mut g = Graph::new();
        for v in 1..=n {
            g.add_vertex(v);
        }
        for &(a, b) in edges {
            g.add_edge(a, b);
        }
        g
    }

    pub fn add_vertex(&mut self, v: u32) {
        self.adj.entry(v).or_default();
    }

    pub fn has_vertex(&self, v: u32) -> bool {
        self.adj.contains_key(&v)
    }

    /// Insert edge `a-b`; both endpoints must exist. Idempotent.
    pub fn add_edge(&mut self, a: u32, b: u32) {
        assert!(a != b, "loop edge {a}-{b}");
        assert!(
            self.adj.contains_key(&a) && self.adj.contains_key(&b),
            "edge {a}-{b} joins a missing vertex"
        );
        self.adj.get_mut(&a).unwrap().insert(b);
        self.adj.get_mut(&b).unwrap().insert(a);
    }

    /// Remove edge `a-b` if present; returns whether it was present.
    pub fn remove_edge(&mut self, a: u32, b: u32) -> bool {
        let there = self
            .adj
            .get_mut(&a)
            .map(|s| s.remove(&b))
            .unwrap_or(false);
        if there {
            self.adj.get_mut(&b).unwrap().remove(&a);
        }
        there
    }

    /// Remove a vertex together with its incident edges.
    pub fn remove_vertex(&mut self, v: u32) {
        if let Some(nbrs) = self.adj.remove(&v) {
            for w in nbrs {
                self.adj.get_mut(&w).unwrap().remove(&v);
            }
        }
    }

    pub fn has_edge(&self, a: u32, b: u32) -> bool {
        self.adj.get(&a).map(|s| s.contains(&b)).unwrap_or(false)
    }

    pub fn degree(&self, v: u32) -> u32 {
        self.adj[&v].len() as u32
    }

    pub fn neighbors(&self, v: u32) -> impl Iterator<Item = u32> + '_ {
        self.adj[&v].iter().copied()
    }

    pub fn vertices(&self) -> impl Iterator<Item = u32> + '_ {
        self.adj.keys().copied()
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.values().map(|s| s.len()).sum::<usize>() / 2
    }

    /// All edges, ascending by `(u, v)`.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (&u, nbrs) in &self.adj {
            for &v in nbrs.range(u + 1..) {
                out.push(Edge { u, v });
            }
        }
        out
    }

    pub fn max_vertex_id(&self) -> u32 {
        self.adj.keys().next_back().copied().unwrap_or(0)
    }

    /// Connected components as sorted vertex sets, ordered by smallest member.
    pub fn components(&self) -> Vec<BTreeSet<u32>> {
        let mut seen: BTreeSet<u32> = BTreeSet::new();
        let mut out = Vec::new();
        for &start in self.adj.keys() {
            if seen.contains(&start) {
                continue;
            }
            let mut comp = BTreeSet::new();
            let mut queue = std::collections::VecDeque::from([start]);
            seen.insert(start);
            comp.insert(start);
            while let Some(u) = queue.pop_front() {
                for w in self.neighbors(u) {
                    if seen.insert(w) {
                        comp.insert(w);
                        queue.push_back(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Induced subgraph on `keep`.
    pub fn induced(&self, keep: &BTreeSet<u32>) -> Graph {
        let mut g = Graph::new();
        for &v in keep {
            assert!(self.has_vertex(v), "induced: missing vertex {v}");
            g.add_vertex(v);
        }
        for &v in keep {
            for w in self.neighbors(v) {
                if w > v && keep.contains(&w) {
                    g.add_edge(v, w);
                }
            }
        }
        g
    }

    /// Graph with the vertices in `drop` (and incident edges) removed.
    pub fn without_vertices(&self, drop: &BTreeSet<u32>) -> Graph {
        let keep: BTreeSet<u32> = self.vertices().filter(|v| !drop.contains(v)).collect();
        self.induced(&keep)
    }

    /// Closed r-th neighborhood of a vertex set: all vertices within distance
    /// `r` of `set` (including `set` itself).
    pub fn closed_neighborhood(&self, set: &BTreeSet<u32>, r: u32) -> BTreeSet<u32> {
        let mut reach: BTreeSet<u32> = set.clone();
        let mut frontier: Vec<u32> = set.iter().copied().collect();
        for _ in 0..r {
            let mut next = Vec::new();
            for &u in &frontier {
                for w in self.neighbors(u) {
                    if reach.insert(w) {
                        next.push(w);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            frontier = next;
        }
        reach
    }

    /// Bridges (cut edges), ascending. Classic DFS lowpoint computation, made
    /// iterative so deep paths (long kernel gadgets) cannot overflow the stack.
    pub fn bridges(&self) -> Vec<Edge> {
        let ids: Vec<u32> = self.vertices().collect();
        let index: BTreeMap<u32, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let n = ids.len();
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut timer = 0usize;
        let mut out = Vec::new();
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            // stack entries: (vertex index, parent index or MAX, neighbor iterator position)
            let mut stack: Vec<(usize, usize, Vec<usize>, usize)> = Vec::new();
            let nbrs: Vec<usize> = self.neighbors(ids[root]).map(|w| index[&w]).collect();
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            stack.push((root, usize::MAX, nbrs, 0));
            while let Some(&mut (u, parent, ref nbrs, ref mut pos)) = stack.last_mut() {
                if *pos < nbrs.len() {
                    let w = nbrs[*pos];
                    *pos += 1;
                    if disc[w] == usize::MAX {
                        disc[w] = timer;
                        low[w] = timer;
                        timer += 1;
                        let wn: Vec<usize> = self.neighbors(ids[w]).map(|x| index[&x]).collect();
                        stack.push((w, u, wn, 0));
                    } else if w != parent {
                        low[u] = low[u].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let Some(&mut (p, _, _, _)) = stack.last_mut() {
                        low[p] = low[p].min(low[u]);
                        if low[u] > disc[p] {
                            out.push(Edge::new(ids[p], ids[u]));
                        }
                    }
                }
            }
        }
        out.sort();
        out
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Graph(n={}, edges={:?})",
            self.vertex_count(),
            self.edges()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_normalizes() {
        assert_eq!(Edge::new(5, 2), Edge { u: 2, v: 5 });
        assert_eq!(Edge::new(2, 5).other(2), 5);
        assert_eq!(Edge::new(2, 5).other(5), 2);
    }

    #[test]
    #[should_panic(expected = "loop")]
    fn edge_rejects_loop() {
        Edge::new(3, 3);
    }

    #[test]
    fn components_and_connectivity() {
        // P3 plus an isolated vertex
        let g = Graph::from_edges(4, &[(1, 2), (2, 3)]);
        let comps = g.components();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0], BTreeSet::from([1, 2, 3]));
        assert_eq!(comps[1], BTreeSet::from([4]));
        assert!(!g.is_connected());
        assert!(Graph::from_edges(1, &[]).is_connected());
    }

    #[test]
    fn neighborhood_radii() {
        // path 1-2-3-4-5
        let g = Graph::from_edges(5, &[(1, 2), (2, 3), (3, 4), (4, 5)]);
        let z = BTreeSet::from([1]);
        assert_eq!(g.closed_neighborhood(&z, 0), BTreeSet::from([1]));
        assert_eq!(g.closed_neighborhood(&z, 1), BTreeSet::from([1, 2]));
        assert_eq!(g.closed_neighborhood(&z, 2), BTreeSet::from([1, 2, 3]));
    }

    #[test]
    fn bridge_detection() {
        // triangle 1-2-3 with a pendant 3-4: only 3-4 is a bridge
        let g = Graph::from_edges(4, &[(1, 2), (2, 3), (1, 3), (3, 4)]);
        assert_eq!(g.bridges(), vec![Edge::new(3, 4)]);
        // a path is all bridges
        let p = Graph::from_edges(3, &[(1, 2), (2, 3)]);
        assert_eq!(p.bridges(), vec![Edge::new(1, 2), Edge::new(2, 3)]);
    }

    #[test]
    fn induced_and_removal() {
        let g = Graph::from_edges(4, &[(1, 2), (2, 3), (3, 4), (1, 4)]);
        let h = g.induced(&BTreeSet::from([1, 2, 3]));
        assert_eq!(h.edges(), vec![Edge::new(1, 2), Edge::new(2, 3)]);
        let w = g.without_vertices(&BTreeSet::from([2]));
        assert_eq!(w.edges(), vec![Edge::new(1, 4), Edge::new(3, 4)]);
    }
}
