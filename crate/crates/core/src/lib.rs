//! Exact-arithmetic computation of generalized Hermite invariants.
//!
//! The library computes, for a positive definite quadratic form over ℚ and an
//! irreducible polynomial representation of GL_n indexed by a partition λ, the
//! minimum of the twisted height over flag vectors, the associated Hermite
//! invariant, and the Voronoï-type perfection / eutaxy / extremality verdicts.
//! All decision paths run over exact rationals; floating point only appears in
//! enumeration pruning (with safety margins, every candidate re-verified
//! exactly) and in report rendering.
//!
//! Module layout:
//! - [`partitions`]: partitions, conjugates, complements, semistandard tableaux
//! - [`schur`]: Schur modules, straightening, bideterminants, apolar product
//! - [`forms`]: Gram/Humbert forms, flag vectors, evaluation, heights
//! - [`enumeration`]: certified minima via short vectors on exterior powers
//! - [`voronoi`]: gradients, minimal sets, perfection and eutaxy
//! - [`bounds`]: duality, Mordell, Minkowski, Bergé–Martinet inequalities
//! - [`catalog`]: the classical lattice catalog (Zn, An, An*, Dn, Dn*, E8)

pub mod bounds;
pub mod catalog;
pub mod enumeration;
pub mod forms;
pub mod lattice;
pub mod matrix;
pub mod partitions;
pub mod rat;
pub mod schur;
pub mod simplex;
pub mod voronoi;

use thiserror::Error;

/// Library-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("matrix is not positive definite")]
    NotPositiveDefinite,
    #[error("degenerate flag: rank-deficient flag matrix")]
    DegenerateFlag,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("singular matrix")]
    Singular,
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("certified mode limit exceeded: {0} (rerun with heuristic mode for a best-effort bound)")]
    CertifiedLimit(String),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Caps the global worker pool used by the enumeration fan-out. Call once,
/// before any parallel work; later calls are ignored.
pub fn configure_threads(n: usize) {
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
}

pub use forms::{FlagVector, GramForm, HumbertForm, InvariantValue};
pub use partitions::{Partition, SemistandardTableau};
pub use schur::SchurVector;
