//! Shared fixtures for the benchmarks.

use cohloc_core::states::random_density;
use cohloc_core::{ComplexMatrix, DensityMatrix};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Deterministic full-rank state of the given dimension.
pub fn bench_state(dim: usize) -> DensityMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(dim as u64);
    random_density(dim, dim, &mut rng).unwrap()
}

/// Deterministic Hermitian matrix of the given dimension.
pub fn bench_hermitian(dim: usize) -> ComplexMatrix {
    bench_state(dim).mat().clone()
}
