//! Tools for editing a graph into a connected graph with prescribed degrees
//! using a bounded number of edge additions and deletions.
//!
//! An instance is a graph G, a target degree δ(v) ≤ d for every vertex, and a
//! budget k. The question is whether at most k edge deletions and additions
//! can turn G into a connected graph in which every vertex v has degree
//! exactly δ(v).
//!
//! The crate provides:
//!
//! - [`instance`]: instances, edit sets, and solution verification;
//! - [`kernel`]: a polynomial kernelization that shrinks any instance to an
//!   equivalent one of size bounded in k and d, with a replayable trace;
//! - [`regular`]: a solver for the connected d-regular target case (δ ≡ d)
//!   that is fixed-parameter tractable in k, based on enumerating bounded
//!   records of how an edit set interacts with the deviant vertices;
//! - [`costs`]: a polynomial-time solver for the degree-constrained editing
//!   problem without the connectivity requirement, with per-pair costs, via
//!   a degree-constrained-subgraph gadget and maximum-weight matching;
//! - [`trails`]: decomposition of edit sets into alternating trails, the
//!   combinatorial backbone of the record argument;
//! - [`reconnect`]: rearranging a degree-correct edit set into one that also
//!   connects the graph, when enough additions are available;
//! - [`partitions`], [`bipartite`]: bidegree sequences (Gale–Ryser) and
//!   explicit realizations via maximum flow;
//! - [`gen`]: instance generators with planted solutions, and a reduction
//!   from Hamiltonicity showing the problem is NP-hard even for d = 2;
//! - [`io`]: plain-text and JSON formats for instances and solutions.

pub mod bipartite;
pub mod cli;
pub mod costs;
pub mod gen;
pub mod graph;
pub mod instance;
pub mod io;
pub mod kernel;
pub mod matching;
pub mod partitions;
pub mod reconnect;
pub mod regular;
pub mod trails;

pub use graph::{Edge, Graph};
pub use instance::{
    apply_edits, deviant_report, verify_solution, DeviantReport, EditInstance, EditKind, EditSet,
    VerifyReport,
};
pub use kernel::{kernel_bound, kernelize, KernelOutcome, KernelResult, KernelTrace};
pub use regular::{solve_regular, SolveError, SolveOptions};
