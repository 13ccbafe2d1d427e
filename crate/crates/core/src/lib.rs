//! Coherence-localization toolkit.
//!
//! Computes basis-coherence measures of density matrices (entrywise and
//! Frobenius flavors, qubit and qudit), ensemble-averaged coherence and
//! its closed-form extremes over all pure-state decompositions, bipartite
//! concurrence and the identities tying the two together, plus a
//! brute-force decomposition-search oracle that confirms the closed forms
//! numerically.
//!
//! Layering, bottom up:
//!
//! * [`numerics`] — dense complex matrices, Hermitian eigendecomposition,
//!   singular values, Kronecker product, partial trace.
//! * [`states`] — validated density matrices, pure states, ensembles,
//!   decomposition-from-isometry, purification, seeded random generation.
//! * [`coherence`] — the coherence functionals and their closed-form
//!   decomposition extremes.
//! * [`entanglement`] — pure-state concurrence, the concurrence vs.
//!   coherence identities, mixed-state bounds, and the two-qubit
//!   mixed-state concurrence used as an oracle.
//! * [`oracle`] — randomized search over pure-state decompositions that
//!   brackets and reaches the closed-form extremes.
//! * [`io`] — the JSON exchange format for matrices and vectors.

pub mod coherence;
pub mod entanglement;
pub mod error;
pub mod io;
pub mod numerics;
pub mod oracle;
pub mod states;
pub mod tol;

pub use coherence::{CoherenceMeasure, CoherenceVectors, LambdaPair, PairProjector};
pub use entanglement::{CheckKind, Theorem5Report, TheoremId, TheoremReport};
pub use error::{CoreError, Result};
pub use numerics::{hermitian_eig, kron, partial_trace, singular_values, ComplexMatrix, HermitianEigen, Side};
pub use oracle::{CoherenceObjective, ExtremeSearchResult, ThompsonConfig};
pub use states::{DensityMatrix, Ensemble, PureState};
