//! Exact vertex separator toolkit.
//!
//! Given a connected undirected graph `G = (V, E)` with vertex costs and a
//! balance bound `beta`, the vertex separator problem asks for a partition of
//! `V` into nonempty classes `A`, `B`, `C` such that no edge joins `A` and
//! `B`, `max(|A|, |B|) <= beta`, and the cost of `C` is minimum.
//!
//! This crate is the algorithmic core: graph and partition types, a
//! push-relabel maximum-flow engine for vertex-disjoint path counts, the
//! separator MILP models and their valid inequalities, a bounded-variable
//! primal simplex, an exact branch-and-cut solver, and an enumeration lab
//! that verifies the polyhedral facts on tiny graphs.
//!
//! The crate is `no_std` (with `alloc`). File formats, the CLI, timing and
//! parallel drivers live in the companion `vsp-cli` crate.

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod alpha;
pub mod flow;
pub mod graph;
pub mod lab;
pub mod lp;
pub mod model;
pub mod reference;
pub mod solver;

pub use graph::{default_beta, Cost, Graph, InstanceMeta, VertexPartition};
