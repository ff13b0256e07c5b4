//! Seeded instance generators and the Hamiltonicity reduction.
//!
//! Three models. `planted` builds a random connected base graph with maximum
//! degree ≤ d, takes δ to be its degree sequence, and applies up to k reverse
//! edits, so the instance is YES with a known witness. `regular-planted` does
//! the same from a randomized connected d-regular base (δ ≡ d).  `random`
//! emits a seeded random graph with uniform targets δ(v) ∈ {0..d}; its answer
//! is unknown.  A fixed seed determines the output completely.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Edge, Graph};
use crate::instance::{verify_solution, EditInstance, EditSet};

/// Which generator to run.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum GenModel {
    Random,
    Planted,
    RegularPlanted,
}

impl std::str::FromStr for GenModel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "random" => Ok(GenModel::Random),
            "planted" => Ok(GenModel::Planted),
            "regular-planted" => Ok(GenModel::RegularPlanted),
            other => Err(format!(
                "unknown model '{other}' (expected random, planted, or regular-planted)"
            )),
        }
    }
}

/// Generator parameters; `seed` fully determines the output.
#[derive(Copy, Clone, Debug)]
pub struct GenParams {
    pub n: u32,
    pub d: u32,
    pub k: u32,
    pub seed: u64,
    pub model: GenModel,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum GenError {
    #[error("no connected base graph exists: {0}")]
    NoBase(String),
    #[error("Hamiltonicity reduction needs m ≥ n, got n = {n}, m = {m}")]
    TooFewEdges { n: usize, m: usize },
}

/// All vertex pairs of 1..=n in lexicographic order.
fn all_pairs(n: u32) -> Vec<Edge> {
    let mut pairs = Vec::new();
    for u in 1..=n {
        for v in u + 1..=n {
            pairs.push(Edge::new(u, v));
        }
    }
    pairs
}

/// A random connected graph on 1..=n with every degree ≤ d: random tree with
/// a degree cap, then extra random edges while the cap allows.
fn random_capped_base(n: u32, d: u32, rng: &mut ChaCha8Rng) -> Result<Graph, GenError> {
    if n >= 3 && d < 2 || n == 2 && d < 1 {
        return Err(GenError::NoBase(format!(
            "connected graphs on {n} vertices need max degree ≥ {}",
            if n == 2 { 1 } else { 2 }
        )));
    }
    let mut g = Graph::new();
    let mut order: Vec<u32> = (1..=n).collect();
    order.shuffle(rng);
    g.add_vertex(order[0]);
    let mut placed = vec![order[0]];
    for &v in &order[1..] {
        g.add_vertex(v);
        let open: Vec<u32> = placed
            .iter()
            .copied()
            .filter(|&u| g.degree(u) < d)
            .collect();
        let &u = open.choose(rng).expect("d ≥ 2 keeps a leaf open");
        g.add_edge(u, v);
        placed.push(v);
    }
    let mut extra = all_pairs(n);
    extra.shuffle(rng);
    let budget = rng.gen_range(0..=n as usize);
    let mut used = 0;
    for e in extra {
        if used >= budget {
            break;
        }
        if !g.has_edge(e.u, e.v) && g.degree(e.u) < d && g.degree(e.v) < d {
            g.add_edge(e.u, e.v);
            used += 1;
        }
    }
    Ok(g)
}

/// A connected d-regular graph on 1..=n: circulant base, then random
/// connectivity-preserving double edge swaps.
fn random_regular_base(n: u32, d: u32, rng: &mut ChaCha8Rng) -> Result<Graph, GenError> {
    if (n as u64 * d as u64) % 2 == 1 {
        return Err(GenError::NoBase(format!("n·d = {}·{} is odd", n, d)));
    }
    if n < d + 1 {
        return Err(GenError::NoBase(format!("{d}-regular needs n ≥ {}", d + 1)));
    }
    if d == 0 && n > 1 || d == 1 && n > 2 {
        return Err(GenError::NoBase(format!(
            "{d}-regular graphs on {n} vertices are disconnected"
        )));
    }
    let mut g = Graph::new();
    for v in 1..=n {
        g.add_vertex(v);
    }
    // Circulant: offsets 1..=d/2, plus the antipode when d is odd (n even).
    for v in 0..n {
        for off in 1..=d / 2 {
            let u = (v + off) % n;
            if !g.has_edge(v + 1, u + 1) {
                g.add_edge(v + 1, u + 1);
            }
        }
        if d % 2 == 1 {
            let u = (v + n / 2) % n;
            if !g.has_edge(v + 1, u + 1) {
                g.add_edge(v + 1, u + 1);
            }
        }
    }
    debug_assert!((1..=n).all(|v| g.degree(v) == d));
    for _ in 0..(2 * n as usize * d as usize) {
        let edges = g.edges();
        let a = *edges.choose(rng).unwrap();
        let b = *edges.choose(rng).unwrap();
        let (p, q) = if rng.gen() { (b.u, b.v) } else { (b.v, b.u) };
        if [a.u, a.v].contains(&p) || [a.u, a.v].contains(&q) {
            continue;
        }
        if g.has_edge(a.u, p) || g.has_edge(a.v, q) {
            continue;
        }
        g.remove_edge(a.u, a.v);
        g.remove_edge(p, q);
        g.add_edge(a.u, p);
        g.add_edge(a.v, q);
        if g.components().len() != 1 {
            g.remove_edge(a.u, p);
            g.remove_edge(a.v, q);
            g.add_edge(a.u, a.v);
            g.add_edge(p, q);
        }
    }
    Ok(g)
}

/// Apply j ≤ k reverse edits to the base: each sampled pair is removed if it
/// is a base edge (the witness re-adds it) and inserted otherwise (the
/// witness deletes it).
fn reverse_edits(base: &Graph, k: u32, rng: &mut ChaCha8Rng) -> (Graph, EditSet) {
    let n = base.vertices().count() as u32;
    let mut pairs = all_pairs(n);
    pairs.shuffle(rng);
    let j = rng.gen_range(0..=k as usize);
    let mut g = base.clone();
    let mut witness = EditSet::empty();
    for e in pairs.into_iter().take(j) {
        if g.has_edge(e.u, e.v) {
            g.remove_edge(e.u, e.v);
            witness.added.insert(e);
        } else {
            g.add_edge(e.u, e.v);
            witness.deleted.insert(e);
        }
    }
    (g, witness)
}

/// Generate an instance; planted models also return the witness that
/// [`verify_solution`] accepts.
pub fn generate(p: &GenParams) -> Result<(EditInstance, Option<EditSet>), GenError> {
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    match p.model {
        GenModel::Random => {
            let mut g = Graph::new();
            for v in 1..=p.n {
                g.add_vertex(v);
            }
            let mut pairs = all_pairs(p.n);
            pairs.shuffle(&mut rng);
            let m = rng.gen_range(0..=pairs.len());
            for e in pairs.into_iter().take(m) {
                g.add_edge(e.u, e.v);
            }
            let delta: BTreeMap<u32, u32> =
                (1..=p.n).map(|v| (v, rng.gen_range(0..=p.d))).collect();
            let inst = EditInstance::new(g, delta, p.d, p.k).expect("targets stay within d");
            Ok((inst, None))
        }
        GenModel::Planted => {
            let base = random_capped_base(p.n, p.d, &mut rng)?;
            let delta: BTreeMap<u32, u32> =
                base.vertices().map(|v| (v, base.degree(v))).collect();
            let (g, witness) = reverse_edits(&base, p.k, &mut rng);
            let inst = EditInstance::new(g, delta, p.d, p.k).expect("base degrees stay within d");
            debug_assert!(verify_solution(&inst, &witness).unwrap().all());
            Ok((inst, Some(witness)))
        }
        GenModel::RegularPlanted => {
            let base = random_regular_base(p.n, p.d, &mut rng)?;
            let (g, witness) = reverse_edits(&base, p.k, &mut rng);
            let inst = EditInstance::regular(g, p.d, p.k);
            debug_assert!(verify_solution(&inst, &witness).unwrap().all());
            Ok((inst, Some(witness)))
        }
    }
}

/// Planted-model convenience wrapper: the instance is YES by construction and
/// the witness passes verification.
pub fn generate_planted(p: &GenParams) -> Result<(EditInstance, EditSet), GenError> {
    assert!(
        matches!(p.model, GenModel::Planted | GenModel::RegularPlanted),
        "generate_planted needs a planted model"
    );
    let (inst, witness) = generate(p)?;
    Ok((inst, witness.expect("planted models carry a witness")))
}

/// Reduce Hamiltonian Cycle on G (n vertices, m ≥ n edges) to this problem:
/// ask for a connected 2-regular graph within m − n edits. Deleting down to a
/// Hamiltonian cycle costs exactly m − n, and any YES certificate must be
/// addition-free, so the instance is YES iff G is Hamiltonian.
pub fn reduce_hamiltonicity(g: &Graph) -> Result<EditInstance, GenError> {
    let n = g.vertices().count();
    let m = g.edges().len();
    if m < n {
        return Err(GenError::TooFewEdges { n, m });
    }
    Ok(EditInstance::regular(g.clone(), 2, (m - n) as u32))
}
