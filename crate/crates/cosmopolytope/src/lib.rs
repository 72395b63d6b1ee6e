//! Edge statistics of cosmological polytopes built from finite graphs.
//!
//! A graph `G` on nodes `[n]` with arc set `E` induces a lattice polytope in
//! `R^{V ∪ E}` spanned, for each arc `f = {i,j}`, by the three points
//! `e_i + e_j - e_f`, `e_i - e_j + e_f` and `-e_i + e_j + e_f`. This crate
//! computes the edge count of that polytope and of the edge set of its
//! unimodular triangulation, both exactly (rational arithmetic, an LP-based
//! vertex-adjacency oracle, exhaustive enumeration over all graphs at small
//! `n`) and by large-scale Monte Carlo over Erdős–Rényi random graphs, and it
//! verifies a normal-approximation bound built from discrete gradients.
//!
//! Modules:
//! - [`graph`]: graphs on labeled nodes, arc indexing, Erdős–Rényi samplers,
//!   exhaustive enumeration, product-Bernoulli weights.
//! - [`geometry`]: exact polytope vertices, the supporting-functional edge
//!   oracle, rule-based edge sets, affine dimension by rank.
//! - [`formulas`]: closed-form counts and exact moments.
//! - [`functional`]: the graph functionals whose fluctuations are studied.
//! - [`stein`]: discrete gradients, exact distributions, the five-term
//!   normal-approximation bound, exact Kolmogorov distance.
//! - [`sim`]: streaming Monte Carlo experiments and rate sweeps.
//! - [`report`]: CSV/JSON result tables.
//! - [`cli`]: the command-line front end (see the `cosmopolytope` binary).

pub mod cli;
pub mod error;
pub mod formulas;
pub mod functional;
pub mod geometry;
pub mod graph;
pub mod ratio;
pub mod report;
pub mod sim;
pub mod stein;

pub use error::{Error, Result};
