//! Exact tools for matchings in 3-uniform hypergraphs under degree-sum
//! conditions: the extremal families `H^ℓ_{n,s}`, `σ₂`/`δ_ℓ`, an exact
//! maximum-matching solver, family-membership certificates, the constructive
//! matching pipeline driven by a degree split, brute-force lemma checkers,
//! and enumeration/sampling campaigns with deterministic reports.

pub mod constructions;
pub mod error;
pub mod exec;
pub mod format;
pub mod harness;
pub mod hypergraph;
pub mod lemmas;
pub mod matcher;
pub mod matching;
pub mod recognize;
pub mod solver;
pub mod vertex_set;

pub use constructions::{build_extremal, sigma2_closed_form, ExtremalSpec};
pub use error::{Error, Result};
pub use exec::Execution;
pub use hypergraph::{Hypergraph3, LinkGraph, Sigma2, Triple};
pub use matching::Matching;
pub use recognize::PartitionCertificate;
pub use solver::{has_matching_of_size, max_matching_exact, SolverConfig, SolverResult};
pub use vertex_set::VertexSet;
