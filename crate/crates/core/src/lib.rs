//! A_α spectral radius of strongly connected digraphs.
//!
//! For a digraph `G` with outdegree matrix `D` and adjacency matrix `A`, the
//! matrix `A_α(G) = αD + (1−α)A` interpolates between the adjacency matrix
//! (`α = 0`) and half the signless Laplacian (`α = 1/2`). This crate computes
//! its Perron root with a Collatz–Wielandt enclosure, evaluates the known
//! upper bounds and ordering statements for `λ_α`, and sweeps them over
//! exhaustive and random populations of strongly connected digraphs.
//!
//! The numeric core is generic over [`Scalar`] (`f32` or `f64`); per-vertex
//! average 2-outdegrees are exact rationals. Aliases for the common `f64`
//! instantiation live at the crate root.

pub mod bounds;
pub mod digraph;
pub mod enumerate;
pub mod error;
pub mod ordering;
pub mod scalar;
pub mod scc;
pub mod spectral;
pub mod verify;

pub use bounds::{
    best_k, corollary31_bound, corollary41_bound, theorem31_bound, theorem41_bound, BestK,
    BoundKind, BoundReport,
};
pub use digraph::{parse_edge_list, Digraph, VertexStats};
pub use enumerate::{enumerate_strong_digraphs, random_strong_digraph, strong_population};
pub use error::{Error, Result};
pub use ordering::{
    corollary42_compare, remark_search, theorem11_compare, theorem12_compare,
    thm12_satisfiability_probe, Condition, Enclosure, OrderingVerdict, ProbeReport, RemarkReport,
};
pub use scalar::{inv_sqrt2, Field, Scalar};
pub use spectral::{
    build_alpha_matrix, lemma21_check, lemma22_bounds, perron_root, signless_laplacian_radius,
    AlphaMatrix, Lemma22Bounds, PerronOptions, SpectralResult,
};
pub use verify::{verify, EnumerationSpec, Mode, Theorem, VerificationReport, VerifyOptions};

/// Threshold below which a strict inequality counts as violated.
pub const EPSILON: f64 = 1e-9;

/// Default Collatz–Wielandt enclosure width for `f64`.
pub const DEFAULT_TOL: f64 = 1e-10;

pub type AlphaMatrix64 = AlphaMatrix<f64>;
pub type SpectralResult64 = SpectralResult<f64>;
pub type BoundReport64 = BoundReport<f64>;
pub type OrderingVerdict64 = OrderingVerdict<f64>;
pub type VerificationReport64 = VerificationReport<f64>;
pub type RemarkReport64 = RemarkReport<f64>;

pub type AlphaMatrix32 = AlphaMatrix<f32>;
pub type SpectralResult32 = SpectralResult<f32>;
