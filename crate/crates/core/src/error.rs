//! Error type shared by every module in the crate.

use thiserror::Error;

/// Everything that can go wrong when building states, decompositions, or
/// running verification sweeps. Variant names are stable; the CLI maps
/// them onto its exit-code contract.
#[derive(Debug, Clone, Error)]
pub enum CoreError {
    #[error("NonSquare: got a {rows}x{cols} matrix where a square matrix is required")]
    NonSquare { rows: usize, cols: usize },

    #[error("NonFinite: matrix contains NaN or infinite entries")]
    NonFinite,

    #[error("NonHermitian: max |A_ij - conj(A_ji)| = {defect:.3e} exceeds {tol:.1e}")]
    NonHermitian { defect: f64, tol: f64 },

    #[error("DimensionMismatch: {context}")]
    DimensionMismatch { context: String },

    #[error("NonUnitTrace: trace = {trace} differs from 1 by more than {tol:.1e}")]
    NonUnitTrace { trace: f64, tol: f64 },

    #[error("NotPSD: eigenvalue {eigenvalue:.6e} lies below the -{tol:.1e} floor")]
    NotPSD { eigenvalue: f64, tol: f64 },

    #[error("NotNormalized: vector norm = {norm} differs from 1 by more than {tol:.1e}")]
    NotNormalized { norm: f64, tol: f64 },

    #[error("BadSplit: split {n1}x{n2} does not factor dimension {dim}")]
    BadSplit { n1: usize, n2: usize, dim: usize },

    #[error("BadWeights: {context}")]
    BadWeights { context: String },

    #[error("BadRank: rank {rank} not in 1..={dim}")]
    BadRank { rank: usize, dim: usize },

    #[error("NotIsometry: max |U^dag U - I| = {defect:.3e} exceeds {tol:.1e}")]
    NotIsometry { defect: f64, tol: f64 },

    #[error("RankMismatch: U has {cols} columns but the state has rank {rank}")]
    RankMismatch { cols: usize, rank: usize },

    #[error("MissingSplit: pure state carries no bipartite split")]
    MissingSplit,

    #[error("WrongDimension: {context}")]
    WrongDimension { context: String },

    #[error("BadDimension: {context}")]
    BadDimension { context: String },

    #[error("BadEnsembleSize: {context}")]
    BadEnsembleSize { context: String },
}

pub type Result<T> = std::result::Result<T, CoreError>;
