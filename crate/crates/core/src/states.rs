//! Validated quantum-state types and the decomposition machinery built on
//! them: density matrices, pure states with optional bipartite splits,
//! weighted ensembles, ensembles-from-isometries, purification, and
//! seeded random generation.
//!
//! Random generation takes an explicit `Rng` so that parallel drivers can
//! hand each worker an independent stream; nothing here holds global
//! state.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{CoreError, Result};
use crate::numerics::{hermitian_eig, partial_trace, ComplexMatrix, HermitianEigen, Side};
use crate::tol;

/// Hermitian, positive-semidefinite, unit-trace complex matrix.
///
/// Construction goes through [`DensityMatrix::new`], which symmetrizes,
/// renormalizes the trace, and clamps eigenvalues in `[-PSD_FLOOR, 0)` to
/// zero; anything below the floor is rejected.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    dim: usize,
    mat: ComplexMatrix,
}

impl DensityMatrix {
    /// Validate an arbitrary complex matrix as a quantum state.
    pub fn new(mat: &ComplexMatrix) -> Result<Self> {
        if !mat.is_square() {
            return Err(CoreError::NonSquare { rows: mat.rows(), cols: mat.cols() });
        }
        if !mat.all_finite() {
            return Err(CoreError::NonFinite);
        }
        let defect = mat.hermiticity_defect();
        if defect > tol::HERMITICITY {
            return Err(CoreError::NonHermitian { defect, tol: tol::HERMITICITY });
        }
        let mut a = mat.hermitized();
        let trace = a.trace().re;
        if (trace - 1.0).abs() > tol::UNIT_TRACE {
            return Err(CoreError::NonUnitTrace { trace, tol: tol::UNIT_TRACE });
        }
        a = a.scale(Complex64::new(1.0 / trace, 0.0));

        let eig = hermitian_eig(&a)?;
        let smallest = *eig.values.last().expect("non-empty spectrum");
        if smallest < -tol::PSD_FLOOR {
            return Err(CoreError::NotPSD { eigenvalue: smallest, tol: tol::PSD_FLOOR });
        }
        if smallest < 0.0 {
            // Clamp the noise band to zero and renormalize.
            let clamped: Vec<f64> = eig.values.iter().map(|&v| v.max(0.0)).collect();
            let total: f64 = clamped.iter().sum();
            let n = a.rows();
            let mut rebuilt = ComplexMatrix::zeros(n, n);
            for (j, &w) in clamped.iter().enumerate() {
                if w == 0.0 {
                    continue;
                }
                let col = eig.vectors.col(j);
                rebuilt = rebuilt.add(&ComplexMatrix::outer(&col, &col).scale(Complex64::new(w / total, 0.0)));
            }
            a = rebuilt.hermitized();
        }
        Ok(Self { dim: a.rows(), mat: a })
    }

    /// Wrap a matrix already known to satisfy the invariants (internal
    /// constructions such as projectors and partial traces).
    pub fn from_trusted(mat: ComplexMatrix) -> Self {
        debug_assert!(mat.is_square());
        let mat = mat.hermitized();
        Self { dim: mat.rows(), mat }
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        let scale = Complex64::new(1.0 / dim as f64, 0.0);
        Self::from_trusted(ComplexMatrix::identity(dim).scale(scale))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mat(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.mat[(i, j)]
    }

    /// Real diagonal entry (the population of basis state `i`).
    pub fn diag(&self, i: usize) -> f64 {
        self.mat[(i, i)].re
    }

    /// Tr rho^2 as a real number.
    pub fn purity(&self) -> f64 {
        let mut p = 0.0;
        for i in 0..self.dim {
            for j in 0..self.dim {
                p += (self.mat[(i, j)] * self.mat[(j, i)]).re;
            }
        }
        p
    }

    pub fn eigen(&self) -> HermitianEigen {
        hermitian_eig(&self.mat).expect("validated state is Hermitian")
    }

    /// Number of eigenvalues at or above the rank cutoff.
    pub fn rank(&self) -> usize {
        self.eigen().values.iter().filter(|&&v| v >= tol::RANK_CUTOFF).count()
    }

    /// Copy with every off-diagonal entry zeroed (the nearest incoherent
    /// state).
    pub fn dephased(&self) -> Self {
        let mat = ComplexMatrix::from_fn(self.dim, self.dim, |i, j| {
            if i == j {
                self.mat[(i, j)]
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        Self { dim: self.dim, mat }
    }
}

/// Unit-norm complex vector, optionally tagged with a bipartite
/// factorization `n1 * n2 = dim` (the A index is slow).
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    dim: usize,
    vec: Vec<Complex64>,
    split: Option<(usize, usize)>,
}

impl PureState {
    pub fn new(vec: Vec<Complex64>, split: Option<(usize, usize)>) -> Result<Self> {
        let dim = vec.len();
        if dim == 0 || vec.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(CoreError::NonFinite);
        }
        let norm = norm2(&vec);
        if (norm - 1.0).abs() > tol::STATE_NORM {
            return Err(CoreError::NotNormalized { norm, tol: tol::STATE_NORM });
        }
        let state = Self { dim, vec, split: None };
        match split {
            Some(s) => state.with_split(s),
            None => Ok(state),
        }
    }

    /// Normalize an arbitrary nonzero vector and wrap it.
    pub fn from_unnormalized(vec: Vec<Complex64>, split: Option<(usize, usize)>) -> Result<Self> {
        let norm = norm2(&vec);
        if norm <= 0.0 || !norm.is_finite() {
            return Err(CoreError::NotNormalized { norm, tol: tol::STATE_NORM });
        }
        let scaled = vec.into_iter().map(|z| z / norm).collect();
        Self::new(scaled, split)
    }

    /// Computational basis vector `|k>`.
    pub fn basis(dim: usize, k: usize) -> Self {
        assert!(k < dim);
        let mut vec = vec![Complex64::new(0.0, 0.0); dim];
        vec[k] = Complex64::new(1.0, 0.0);
        Self { dim, vec, split: None }
    }

    /// Same amplitudes with a (possibly different) bipartite split.
    pub fn with_split(self, (n1, n2): (usize, usize)) -> Result<Self> {
        if n1 * n2 != self.dim {
            return Err(CoreError::BadSplit { n1, n2, dim: self.dim });
        }
        Ok(Self { split: Some((n1, n2)), ..self })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.vec
    }

    pub fn split(&self) -> Option<(usize, usize)> {
        self.split
    }

    /// |psi><psi| as a density matrix.
    pub fn projector(&self) -> DensityMatrix {
        DensityMatrix::from_trusted(ComplexMatrix::outer(&self.vec, &self.vec))
    }

    /// Reduced state of one side of the split.
    pub fn reduced(&self, keep: Side) -> Result<DensityMatrix> {
        let dims = self.split.ok_or(CoreError::MissingSplit)?;
        let traced = partial_trace(self.projector().mat(), dims, keep)?;
        DensityMatrix::new(&traced)
    }
}

fn norm2(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Weighted list of pure states realizing a density matrix.
#[derive(Debug, Clone)]
pub struct Ensemble {
    members: Vec<(f64, PureState)>,
}

impl Ensemble {
    pub fn new(members: Vec<(f64, PureState)>) -> Result<Self> {
        if members.is_empty() {
            return Err(CoreError::BadWeights { context: "empty ensemble".into() });
        }
        let dim = members[0].1.dim();
        let mut sum = 0.0;
        for (w, psi) in &members {
            if *w < 0.0 {
                return Err(CoreError::BadWeights { context: format!("negative weight {w}") });
            }
            if psi.dim() != dim {
                return Err(CoreError::DimensionMismatch {
                    context: format!("ensemble mixes dims {} and {}", dim, psi.dim()),
                });
            }
            sum += w;
        }
        if (sum - 1.0).abs() > tol::WEIGHT_SUM {
            return Err(CoreError::BadWeights { context: format!("weights sum to {sum}") });
        }
        Ok(Self { members })
    }

    pub fn members(&self) -> &[(f64, PureState)] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.members[0].1.dim()
    }

    /// Sum p_i |psi_i><psi_i|, validated as a density matrix.
    pub fn mix(&self) -> Result<DensityMatrix> {
        let dim = self.dim();
        let mut acc = ComplexMatrix::zeros(dim, dim);
        for (w, psi) in &self.members {
            let v = psi.amplitudes();
            acc = acc.add(&ComplexMatrix::outer(v, v).scale(Complex64::new(*w, 0.0)));
        }
        DensityMatrix::new(&acc)
    }
}

/// Haar-random pure state: a vector of independent standard complex
/// Gaussians, normalized.
pub fn random_pure<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> PureState {
    assert!(dim >= 1, "random_pure needs dim >= 1");
    loop {
        let vec: Vec<Complex64> = (0..dim).map(|_| gaussian(rng)).collect();
        if let Ok(psi) = PureState::from_unnormalized(vec, None) {
            return psi;
        }
    }
}

/// Random density matrix of prescribed rank: the reduced state of a
/// Haar-random pure state on `dim * rank`, traced over the rank-sized
/// side (the induced measure).
pub fn random_density<R: Rng + ?Sized>(dim: usize, rank: usize, rng: &mut R) -> Result<DensityMatrix> {
    if rank == 0 || rank > dim {
        return Err(CoreError::BadRank { rank, dim });
    }
    let psi = random_pure(dim * rank, rng).with_split((dim, rank))?;
    psi.reduced(Side::A)
}

/// Haar-random n x n unitary.
pub fn haar_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    haar_isometry(n, n, rng)
}

/// Haar-random m x r isometry (orthonormal columns, `m >= r`), via
/// Gram-Schmidt on Gaussian columns; normalizing against real positive
/// pivots keeps the column distribution Haar.
pub fn haar_isometry<R: Rng + ?Sized>(m: usize, r: usize, rng: &mut R) -> ComplexMatrix {
    assert!(m >= r, "isometry needs at least as many rows as columns");
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(r);
    while cols.len() < r {
        let mut v: Vec<Complex64> = (0..m).map(|_| gaussian(rng)).collect();
        // Two orthogonalization passes keep orthonormality at machine
        // precision even for nearly dependent draws.
        for _ in 0..2 {
            for q in &cols {
                let overlap: Complex64 = q.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (vi, qi) in v.iter_mut().zip(q) {
                    *vi -= overlap * qi;
                }
            }
        }
        let norm = norm2(&v);
        if norm < 1e-8 {
            continue; // essentially impossible; redraw
        }
        for vi in v.iter_mut() {
            *vi /= norm;
        }
        cols.push(v);
    }
    ComplexMatrix::from_fn(m, r, |i, j| cols[j][i])
}

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im)
}

/// Spectral data of a state restricted to its numerical rank: eigenvalues
/// at or above [`tol::RANK_CUTOFF`] with their eigenvector columns.
pub(crate) struct RankedSpectrum {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix, // dim x rank
}

pub(crate) fn ranked_spectrum(rho: &DensityMatrix) -> RankedSpectrum {
    let eig = rho.eigen();
    let rank = eig.values.iter().filter(|&&v| v >= tol::RANK_CUTOFF).count().max(1);
    let vectors = ComplexMatrix::from_fn(rho.dim(), rank, |i, j| eig.vectors[(i, j)]);
    RankedSpectrum { values: eig.values[..rank].to_vec(), vectors }
}

/// Realize `rho` as the ensemble selected by an isometry.
///
/// With the spectral decomposition `rho = sum_j M_j |phi_j><phi_j|`
/// restricted to rank `r`, and `U` an m x r matrix with `U^dag U = I_r`,
/// member `i` carries the unnormalized vector
/// `v_i = sum_j U_ij sqrt(M_j) |phi_j>` and weight `p_i = |v_i|^2`.
/// Members below [`tol::WEIGHT_FLOOR`] are dropped. Mixing the result
/// reproduces `rho`.
pub fn ensemble_from_unitary(rho: &DensityMatrix, u: &ComplexMatrix) -> Result<Ensemble> {
    let spectrum = ranked_spectrum(rho);
    let r = spectrum.values.len();
    if u.cols() != r {
        return Err(CoreError::RankMismatch { cols: u.cols(), rank: r });
    }
    let gram = u.adjoint().mul(u);
    let defect = gram.max_abs_diff(&ComplexMatrix::identity(r));
    if defect > tol::ISOMETRY {
        return Err(CoreError::NotIsometry { defect, tol: tol::ISOMETRY });
    }

    let dim = rho.dim();
    let m = u.rows();
    let mut members = Vec::with_capacity(m);
    for i in 0..m {
        let mut v = vec![Complex64::new(0.0, 0.0); dim];
        for j in 0..r {
            let coeff = u[(i, j)] * spectrum.values[j].sqrt();
            if coeff.norm_sqr() == 0.0 {
                continue;
            }
            for (vk, phik) in v.iter_mut().zip(spectrum.vectors.col(j)) {
                *vk += coeff * phik;
            }
        }
        let weight = v.iter().map(|z| z.norm_sqr()).sum::<f64>();
        if weight < tol::WEIGHT_FLOOR {
            continue;
        }
        members.push((weight, PureState::from_unnormalized(v, None)?));
    }
    Ensemble::new(members)
}

/// Minimal purification: `|psi> = sum_j sqrt(M_j) |phi_j> (x) |j>` with the
/// ancilla dimension equal to the numerical rank, split `(dim, rank)`.
/// Tracing out the ancilla returns the input.
pub fn purify(rho: &DensityMatrix) -> PureState {
    let spectrum = ranked_spectrum(rho);
    let r = spectrum.values.len();
    let dim = rho.dim();
    let mut vec = vec![Complex64::new(0.0, 0.0); dim * r];
    for (j, &w) in spectrum.values.iter().enumerate() {
        let amp = w.max(0.0).sqrt();
        for i in 0..dim {
            vec[i * r + j] = amp * spectrum.vectors[(i, j)];
        }
    }
    PureState::from_unnormalized(vec, Some((dim, r))).expect("spectral weights sum to ~1")
}
