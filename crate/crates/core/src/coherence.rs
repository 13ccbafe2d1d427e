//! Coherence functionals in a fixed basis.
//!
//! The base measures collect off-diagonal weight: `d_l1` is the entrywise
//! sum `sum_{i != j} |rho_ij|`, `d_frob` the Frobenius flavor
//! `sqrt(sum_{i != j} |rho_ij|^2)`. On top of those sit the ensemble
//! average, the qubit closed forms for its extremes over all pure-state
//! realizations (`lambda_1 -+ lambda_2`, with `lambda` the singular values
//! of `M^{1/2} Phi^T sigma_x Phi M^{1/2}`), and the qudit pair-subspace
//! generalizations `d_f` / `d_fl`.
//!
//! Everything here is a pure function of its arguments.

use num_complex::Complex64;

use crate::error::{CoreError, Result};
use crate::numerics::ComplexMatrix;
use crate::states::{DensityMatrix, Ensemble, PureState};
use crate::tol;

/// Which norm the entrywise measures use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoherenceMeasure {
    L1,
    Frobenius,
}

/// Entrywise coherence `sum_{i != j} |rho_ij|`: the entrywise-norm
/// distance to the nearest incoherent (diagonal) state.
pub fn d_l1(rho: &DensityMatrix) -> f64 {
    let n = rho.dim();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += rho.entry(i, j).norm();
            }
        }
    }
    acc
}

/// Frobenius coherence `sqrt(sum_{i != j} |rho_ij|^2)`.
pub fn d_frob(rho: &DensityMatrix) -> f64 {
    let n = rho.dim();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += rho.entry(i, j).norm_sqr();
            }
        }
    }
    acc.sqrt()
}

fn measure_of(rho: &DensityMatrix, measure: CoherenceMeasure) -> f64 {
    match measure {
        CoherenceMeasure::L1 => d_l1(rho),
        CoherenceMeasure::Frobenius => d_frob(rho),
    }
}

fn measure_of_pure(psi: &PureState, measure: CoherenceMeasure) -> f64 {
    measure_of(&psi.projector(), measure)
}

/// Ensemble-averaged coherence `sum_i p_i D(|psi_i>)`.
pub fn avg_coherence(ens: &Ensemble, measure: CoherenceMeasure) -> f64 {
    ens.members()
        .iter()
        .map(|(w, psi)| w * measure_of_pure(psi, measure))
        .sum()
}

/// The two singular values of `M^{1/2} Phi^T sigma_x Phi M^{1/2}` for a
/// qubit state, ordered `lambda1 >= lambda2 >= 0`. Their difference is the
/// minimal and their sum the maximal average coherence over all
/// pure-state realizations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambdaPair {
    pub lambda1: f64,
    pub lambda2: f64,
}

impl LambdaPair {
    pub fn new(a: f64, b: f64) -> Self {
        let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
        Self { lambda1: hi.max(0.0), lambda2: lo.max(0.0) }
    }

    pub fn difference(&self) -> f64 {
        self.lambda1 - self.lambda2
    }

    pub fn sum(&self) -> f64 {
        self.lambda1 + self.lambda2
    }
}

/// Closed-form lambda pair of a qubit state `[[a, b*], [b, c]]`:
/// `lambda_{1,2} = sqrt(ac) +- |b|`. Panics unless `dim == 2`.
pub fn qubit_lambda(rho: &DensityMatrix) -> LambdaPair {
    assert_eq!(rho.dim(), 2, "qubit_lambda needs a 2x2 state");
    let a = rho.diag(0);
    let c = rho.diag(1);
    let b = rho.entry(1, 0).norm();
    let root = (a * c).max(0.0).sqrt();
    LambdaPair::new(root + b, root - b)
}

/// Minimal average coherence of a qubit over all pure-state realizations:
/// `lambda1 - lambda2 = 2|b|`, which coincides with [`d_l1`].
pub fn min_avg_coherence_qubit(rho: &DensityMatrix) -> f64 {
    qubit_lambda(rho).difference()
}

/// Localizable coherence of a qubit: the maximal average coherence
/// `lambda1 + lambda2 = 2 sqrt(rho_00 rho_11)`; depends only on the
/// diagonal.
pub fn localizable_coherence_qubit(rho: &DensityMatrix) -> f64 {
    assert_eq!(rho.dim(), 2, "localizable_coherence_qubit needs a 2x2 state");
    2.0 * (rho.diag(0) * rho.diag(1)).max(0.0).sqrt()
}

/// Row selector onto the two-dimensional subspace spanned by basis states
/// `k < l`: the 2 x n matrix with rows `e_k`, `e_l`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairProjector {
    n: usize,
    pair: (usize, usize),
}

impl PairProjector {
    pub fn new(n: usize, k: usize, l: usize) -> Result<Self> {
        if n < 2 {
            return Err(CoreError::BadDimension {
                context: format!("pair subspaces need n >= 2, got {n}"),
            });
        }
        if !(k < l && l < n) {
            return Err(CoreError::BadDimension {
                context: format!("invalid pair ({k}, {l}) for n = {n}"),
            });
        }
        Ok(Self { n, pair: (k, l) })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn pair(&self) -> (usize, usize) {
        self.pair
    }

    /// The 2 x n selector matrix L.
    pub fn selector(&self) -> ComplexMatrix {
        let (k, l) = self.pair;
        let mut m = ComplexMatrix::zeros(2, self.n);
        m[(0, k)] = Complex64::new(1.0, 0.0);
        m[(1, l)] = Complex64::new(1.0, 0.0);
        m
    }

    /// The n x n symmetric 0/1 matrix |S| with ones at (k, l) and (l, k);
    /// the generator pattern the selector is cut from.
    pub fn abs_generator(&self) -> ComplexMatrix {
        let (k, l) = self.pair;
        let mut m = ComplexMatrix::zeros(self.n, self.n);
        m[(k, l)] = Complex64::new(1.0, 0.0);
        m[(l, k)] = Complex64::new(1.0, 0.0);
        m
    }
}

/// All `n(n-1)/2` pair projectors in lexicographic order.
pub fn pair_projectors(n: usize) -> Result<Vec<PairProjector>> {
    if n < 2 {
        return Err(CoreError::BadDimension {
            context: format!("pair subspaces need n >= 2, got {n}"),
        });
    }
    let mut out = Vec::with_capacity(n * (n - 1) / 2);
    for k in 0..n - 1 {
        for l in k + 1..n {
            out.push(PairProjector::new(n, k, l)?);
        }
    }
    Ok(out)
}

/// Normalized 2x2 state in one pair subspace, with its weight
/// `Tr(L rho L^dag) = rho_kk + rho_ll`. A weight below the floor flags
/// the subspace degenerate and substitutes the maximally mixed 2x2 state.
#[derive(Debug, Clone)]
pub struct SubspaceState {
    pub weight: f64,
    pub state: DensityMatrix,
    pub degenerate: bool,
}

pub fn subspace_state(rho: &DensityMatrix, proj: &PairProjector) -> SubspaceState {
    assert_eq!(proj.n(), rho.dim(), "projector dimension must match the state");
    let (k, l) = proj.pair();
    let weight = rho.diag(k) + rho.diag(l);
    if weight < tol::WEIGHT_FLOOR {
        return SubspaceState {
            weight: 0.0,
            state: DensityMatrix::maximally_mixed(2),
            degenerate: true,
        };
    }
    let inv = Complex64::new(1.0 / weight, 0.0);
    let block = ComplexMatrix::new(
        2,
        2,
        vec![
            rho.entry(k, k) * inv,
            rho.entry(k, l) * inv,
            rho.entry(l, k) * inv,
            rho.entry(l, l) * inv,
        ],
    )
    .expect("2x2 block");
    SubspaceState { weight, state: DensityMatrix::from_trusted(block), degenerate: false }
}

/// Per-pair weights and normalized coherence extremes of a qudit state.
///
/// For pair `j = (k, l)`: `weights[j] = rho_kk + rho_ll`, and the weighted
/// extremes are the pair lambda values,
/// `weights[j] * d_min[j] = 2 |rho_kl|` and
/// `weights[j] * d_max[j] = 2 sqrt(rho_kk rho_ll)`.
/// Degenerate pairs (zero weight) contribute zero to every norm.
#[derive(Debug, Clone, PartialEq)]
pub struct CoherenceVectors {
    pub n: usize,
    pub pairs: Vec<(usize, usize)>,
    pub weights: Vec<f64>,
    pub d_min: Vec<f64>,
    pub d_max: Vec<f64>,
}

impl CoherenceVectors {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Weighted minimal vector `P o min D`, entries `2 |rho_kl|`.
    pub fn weighted_min(&self) -> Vec<f64> {
        self.weights.iter().zip(&self.d_min).map(|(w, d)| w * d).collect()
    }

    /// Weighted maximal vector `P o max D`, entries `2 sqrt(rho_kk rho_ll)`.
    pub fn weighted_max(&self) -> Vec<f64> {
        self.weights.iter().zip(&self.d_max).map(|(w, d)| w * d).collect()
    }
}

pub fn coherence_vectors(rho: &DensityMatrix) -> CoherenceVectors {
    let n = rho.dim();
    assert!(n >= 2, "coherence vectors need dim >= 2");
    let projectors = pair_projectors(n).expect("n >= 2");
    let mut pairs = Vec::with_capacity(projectors.len());
    let mut weights = Vec::with_capacity(projectors.len());
    let mut d_min = Vec::with_capacity(projectors.len());
    let mut d_max = Vec::with_capacity(projectors.len());
    for proj in &projectors {
        let (k, l) = proj.pair();
        let w = rho.diag(k) + rho.diag(l);
        let wmin = 2.0 * rho.entry(k, l).norm();
        let wmax = 2.0 * (rho.diag(k) * rho.diag(l)).max(0.0).sqrt();
        pairs.push((k, l));
        if w < tol::WEIGHT_FLOOR {
            weights.push(0.0);
            d_min.push(0.0);
            d_max.push(0.0);
        } else {
            weights.push(w);
            d_min.push(wmin / w);
            d_max.push(wmax / w);
        }
    }
    CoherenceVectors { n, pairs, weights, d_min, d_max }
}

/// Length of the weighted minimal coherence vector:
/// `sqrt(sum_pairs 4 |rho_kl|^2)`. This is the lambda-based reading, which
/// makes the concurrence identity exact; it equals `sqrt(2) * d_frob`.
pub fn d_f(rho: &DensityMatrix) -> f64 {
    let n = rho.dim();
    let mut acc = 0.0;
    for k in 0..n {
        for l in k + 1..n {
            acc += 4.0 * rho.entry(k, l).norm_sqr();
        }
    }
    acc.sqrt()
}

/// Length of the weighted maximal coherence vector:
/// `sqrt(sum_pairs 4 rho_kk rho_ll)`; depends only on the diagonal.
pub fn d_fl(rho: &DensityMatrix) -> f64 {
    let n = rho.dim();
    let mut acc = 0.0;
    for k in 0..n {
        for l in k + 1..n {
            acc += 4.0 * (rho.diag(k) * rho.diag(l)).max(0.0);
        }
    }
    acc.sqrt()
}
