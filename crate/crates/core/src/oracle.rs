//! Brute-force search over pure-state decompositions.
//!
//! Independent cross-check of the closed-form coherence extremes: sample
//! Haar-random isometries, build the ensembles they select, evaluate the
//! average-coherence objective, and locally refine the best samples with
//! two-parameter rotations on member pairs. Every sampled value must land
//! inside the closed-form bracket `[lambda1 - lambda2, lambda1 + lambda2]`
//! (per subspace for qudits) — that containment is the falsifiable core —
//! and the refined extremes are expected to reach the closed forms within
//! [`tol::REACH`].

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use rand::Rng;

use crate::coherence::{d_f, d_fl, pair_projectors, qubit_lambda};
use crate::entanglement::{CheckKind, TheoremId, TheoremReport};
use crate::error::{CoreError, Result};
use crate::numerics::ComplexMatrix;
use crate::states::{haar_isometry, ranked_spectrum, DensityMatrix};
use crate::tol;

const MAX_REFINE_SWEEPS: usize = 200;

/// Objective evaluated on a decomposition.
///
/// * `QubitL1` — the qubit average entrywise coherence
///   `sum_i p_i D(|psi_i>)`; closed extremes `lambda1 -+ lambda2`.
/// * `Subspace(j)` — the weighted average coherence inside pair subspace
///   `j`; closed extremes `2 |rho_kl|` and `2 sqrt(rho_kk rho_ll)`.
/// * `WeightedVector` — the norm of the vector of all subspace
///   objectives for one shared ensemble. Its bracket `[d_f, d_fl]` is
///   sound, but no claim is made that a single ensemble attains the
///   componentwise extremes, so only the bracket is enforced for it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoherenceObjective {
    QubitL1,
    Subspace(usize),
    WeightedVector,
}

/// Outcome of one randomized extreme search.
#[derive(Debug, Clone)]
pub struct ExtremeSearchResult {
    /// Refined minimum / maximum of the objective.
    pub best_min: f64,
    pub best_max: f64,
    /// Extremes over the raw samples, before refinement.
    pub sampled_min: f64,
    pub sampled_max: f64,
    /// Closed-form extremes the search is checked against.
    pub closed_min: f64,
    pub closed_max: f64,
    pub samples: usize,
    /// Accepted improvement steps across both refinements.
    pub refine_steps: usize,
    pub argmin_isometry: ComplexMatrix,
    pub argmax_isometry: ComplexMatrix,
}

impl ExtremeSearchResult {
    /// Whether every sampled and refined value stayed inside the
    /// closed-form bracket (within `slack`).
    pub fn bracket_ok(&self, slack: f64) -> bool {
        self.sampled_min >= self.closed_min - slack
            && self.best_min >= self.closed_min - slack
            && self.sampled_max <= self.closed_max + slack
            && self.best_max <= self.closed_max + slack
    }

    /// Worst distance of the refined extremes from the closed forms.
    pub fn reach_error(&self) -> f64 {
        (self.best_min - self.closed_min).max(self.closed_max - self.best_max).max(0.0)
    }
}

/// Pairs the objective sums over.
enum Pairs {
    Single(usize, usize),
    Vector(Vec<(usize, usize)>),
}

fn resolve_objective(rho: &DensityMatrix, objective: CoherenceObjective) -> Result<Pairs> {
    let n = rho.dim();
    if n < 2 {
        return Err(CoreError::BadDimension { context: "objectives need dim >= 2".into() });
    }
    match objective {
        CoherenceObjective::QubitL1 => {
            if n != 2 {
                return Err(CoreError::WrongDimension {
                    context: format!("the qubit objective needs dim 2, got {n}"),
                });
            }
            Ok(Pairs::Single(0, 1))
        }
        CoherenceObjective::Subspace(j) => {
            let projectors = pair_projectors(n)?;
            let proj = projectors.get(j).ok_or_else(|| CoreError::BadDimension {
                context: format!("subspace index {j} out of range ({} pairs)", projectors.len()),
            })?;
            let (k, l) = proj.pair();
            Ok(Pairs::Single(k, l))
        }
        CoherenceObjective::WeightedVector => {
            let pairs = pair_projectors(n)?.iter().map(|p| p.pair()).collect();
            Ok(Pairs::Vector(pairs))
        }
    }
}

/// Closed-form (min, max) of an objective.
pub fn closed_extremes(rho: &DensityMatrix, objective: CoherenceObjective) -> Result<(f64, f64)> {
    match resolve_objective(rho, objective)? {
        Pairs::Single(k, l) => {
            if rho.dim() == 2 {
                let pair = qubit_lambda(rho);
                Ok((pair.difference(), pair.sum()))
            } else {
                let min = 2.0 * rho.entry(k, l).norm();
                let max = 2.0 * (rho.diag(k) * rho.diag(l)).max(0.0).sqrt();
                Ok((min, max))
            }
        }
        Pairs::Vector(_) => Ok((d_f(rho), d_fl(rho))),
    }
}

/// Per-pair weighted coherence sums of the member matrix `v` (rows are
/// unnormalized member vectors): `s_j = sum_i 2 |v_ik| |v_il|`.
fn pair_sums(v: &ComplexMatrix, pairs: &[(usize, usize)]) -> Vec<f64> {
    pairs
        .iter()
        .map(|&(k, l)| (0..v.rows()).map(|i| 2.0 * v[(i, k)].norm() * v[(i, l)].norm()).sum())
        .collect()
}

fn value_from_sums(sums: &[f64], vector_mode: bool) -> f64 {
    if vector_mode {
        sums.iter().map(|s| s * s).sum::<f64>().sqrt()
    } else {
        sums[0]
    }
}

fn objective_value(v: &ComplexMatrix, pairs: &Pairs) -> f64 {
    match pairs {
        Pairs::Single(k, l) => value_from_sums(&pair_sums(v, &[(*k, *l)]), false),
        Pairs::Vector(ps) => value_from_sums(&pair_sums(v, ps), true),
    }
}

/// Rotate rows p and q of `m` by the unitary
/// `[[c, s e^{i phi}], [-s e^{-i phi}, c]]`.
fn apply_rotation(m: &mut ComplexMatrix, p: usize, q: usize, theta: f64, phi: f64) {
    let (c, s) = (theta.cos(), theta.sin());
    let e = Complex64::new(phi.cos(), phi.sin());
    for j in 0..m.cols() {
        let a = m[(p, j)];
        let b = m[(q, j)];
        m[(p, j)] = c * a + s * e * b;
        m[(q, j)] = -s * e.conj() * a + c * b;
    }
}

/// Golden-section minimization of a one-dimensional function on [lo, hi],
/// stopping at interval width `width`.
fn golden_min(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, width: f64) -> (f64, f64) {
    const INVPHI: f64 = 0.618_033_988_749_894_8;
    let mut x1 = hi - INVPHI * (hi - lo);
    let mut x2 = lo + INVPHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > width {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INVPHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INVPHI * (hi - lo);
            f2 = f(x2);
        }
    }
    let mid = 0.5 * (lo + hi);
    (mid, f(mid))
}

struct Refined {
    isometry: ComplexMatrix,
    value: f64,
    steps: usize,
}

/// Cyclic two-row rotations with (angle, phase) golden-section line
/// searches; only improving steps are accepted, so the objective is
/// monotone along the refinement.
fn refine(
    mut u: ComplexMatrix,
    mut v: ComplexMatrix,
    pairs: &Pairs,
    maximize: bool,
) -> Refined {
    let m = u.rows();
    let sign = if maximize { -1.0 } else { 1.0 };
    let mut best = objective_value(&v, pairs);
    let mut steps = 0usize;
    if m >= 2 {
        for _ in 0..MAX_REFINE_SWEEPS {
            let sweep_start = best;
            for p in 0..m - 1 {
                for q in p + 1..m {
                    let eval = |theta: f64, phi: f64| {
                        let mut trial = v.clone();
                        apply_rotation(&mut trial, p, q, theta, phi);
                        sign * objective_value(&trial, pairs)
                    };
                    // Coarse phase grid, then line searches on each
                    // parameter in turn.
                    let mut theta = 0.0;
                    let mut phi = 0.0;
                    let mut val = sign * best;
                    for &phi0 in &[0.0, FRAC_PI_2, PI, 3.0 * FRAC_PI_2] {
                        let (t, fv) = golden_min(|t| eval(t, phi0), -FRAC_PI_2, FRAC_PI_2, tol::REFINE_FLOOR);
                        if fv < val {
                            val = fv;
                            theta = t;
                            phi = phi0;
                        }
                    }
                    let (p2, fv) = golden_min(|f| eval(theta, f), phi - FRAC_PI_2, phi + FRAC_PI_2, tol::REFINE_FLOOR);
                    if fv < val {
                        val = fv;
                        phi = p2;
                    }
                    let (t2, fv) = golden_min(|t| eval(t, phi), -FRAC_PI_2, FRAC_PI_2, tol::REFINE_FLOOR);
                    if fv < val {
                        val = fv;
                        theta = t2;
                    }

                    let candidate = sign * val;
                    let gain = if maximize { candidate - best } else { best - candidate };
                    if gain > 0.0 {
                        apply_rotation(&mut v, p, q, theta, phi);
                        apply_rotation(&mut u, p, q, theta, phi);
                        best = objective_value(&v, pairs);
                        steps += 1;
                    }
                }
            }
            let sweep_gain = if maximize { best - sweep_start } else { sweep_start - best };
            if sweep_gain < tol::REFINE_FLOOR {
                break;
            }
        }
    }
    Refined { isometry: u, value: best, steps }
}

/// Sample `n_samples` Haar-random m x r isometries, evaluate the
/// objective on the ensembles they select, track the extremes, and refine
/// each extreme by local rotations.
pub fn search_extremes<R: Rng + ?Sized>(
    rho: &DensityMatrix,
    objective: CoherenceObjective,
    m: usize,
    n_samples: usize,
    rng: &mut R,
) -> Result<ExtremeSearchResult> {
    let pairs = resolve_objective(rho, objective)?;
    let (closed_min, closed_max) = closed_extremes(rho, objective)?;

    let spectrum = ranked_spectrum(rho);
    let r = spectrum.values.len();
    if m < r {
        return Err(CoreError::BadEnsembleSize {
            context: format!("m = {m} below rank {r}"),
        });
    }
    if n_samples == 0 {
        return Err(CoreError::BadEnsembleSize { context: "n_samples must be >= 1".into() });
    }

    // Member matrix of the ensemble selected by U: rows of V = U B with
    // B = M^{1/2} Phi^T, so row i is the unnormalized member vector.
    let b = ComplexMatrix::from_fn(r, rho.dim(), |j, i| {
        Complex64::new(spectrum.values[j].max(0.0).sqrt(), 0.0) * spectrum.vectors[(i, j)]
    });

    let mut min_u = ComplexMatrix::identity(1);
    let mut max_u = ComplexMatrix::identity(1);
    let mut min_v = ComplexMatrix::identity(1);
    let mut max_v = ComplexMatrix::identity(1);
    let mut sampled_min = f64::INFINITY;
    let mut sampled_max = f64::NEG_INFINITY;
    for _ in 0..n_samples {
        let u = haar_isometry(m, r, rng);
        let v = u.mul(&b);
        let f = objective_value(&v, &pairs);
        if f < sampled_min {
            sampled_min = f;
            min_u = u.clone();
            min_v = v.clone();
        }
        if f > sampled_max {
            sampled_max = f;
            max_u = u;
            max_v = v;
        }
    }

    let lo = refine(min_u, min_v, &pairs, false);
    let hi = refine(max_u, max_v, &pairs, true);

    Ok(ExtremeSearchResult {
        best_min: lo.value,
        best_max: hi.value,
        sampled_min,
        sampled_max,
        closed_min,
        closed_max,
        samples: n_samples,
        refine_steps: lo.steps + hi.steps,
        argmin_isometry: lo.isometry,
        argmax_isometry: hi.isometry,
    })
}

/// Parameters for a closed-form-vs-search verification campaign.
#[derive(Debug, Clone)]
pub struct ThompsonConfig {
    /// Ensemble sizes to test; empty means `{r, r+1, 2r}`.
    pub m_values: Vec<usize>,
    pub n_samples: usize,
    pub reach_tol: f64,
    pub bracket_tol: f64,
}

impl Default for ThompsonConfig {
    fn default() -> Self {
        Self { m_values: vec![], n_samples: 500, reach_tol: tol::REACH, bracket_tol: tol::BOUND_SLACK }
    }
}

/// Run [`search_extremes`] for every applicable objective (the qubit
/// objective at dim 2, every pair subspace otherwise) over the configured
/// ensemble sizes, and compare against the closed forms.
///
/// Passes iff every sample stayed inside the closed-form bracket (within
/// `bracket_tol`) and every refined extreme reached its closed form within
/// `reach_tol`. The report carries the worst-reaching (extreme, closed)
/// pair and the reach error as its residual.
pub fn verify_thompson<R: Rng + ?Sized>(
    rho: &DensityMatrix,
    config: &ThompsonConfig,
    rng: &mut R,
) -> Result<TheoremReport> {
    let dim = rho.dim();
    let theorem = if dim == 2 { TheoremId::T1 } else { TheoremId::T3 };
    let objectives: Vec<CoherenceObjective> = if dim == 2 {
        vec![CoherenceObjective::QubitL1]
    } else {
        (0..dim * (dim - 1) / 2).map(CoherenceObjective::Subspace).collect()
    };
    let r = ranked_spectrum(rho).values.len();
    let m_values = if config.m_values.is_empty() {
        vec![r, r + 1, 2 * r]
    } else {
        config.m_values.clone()
    };

    let mut bracket_ok = true;
    let mut worst_reach = 0.0f64;
    let mut worst = (0.0f64, 0.0f64);
    for &m in &m_values {
        for &objective in &objectives {
            let res = search_extremes(rho, objective, m, config.n_samples, rng)?;
            bracket_ok &= res.bracket_ok(config.bracket_tol);
            let reach = res.reach_error();
            if reach >= worst_reach {
                worst_reach = reach;
                worst = if res.best_min - res.closed_min >= res.closed_max - res.best_max {
                    (res.best_min, res.closed_min)
                } else {
                    (res.best_max, res.closed_max)
                };
            }
        }
    }

    Ok(TheoremReport {
        theorem,
        kind: CheckKind::Identity,
        lhs: worst.0,
        rhs: worst.1,
        residual: worst_reach,
        tolerance: config.reach_tol,
        passed: bracket_ok && worst_reach <= config.reach_tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coherence::{avg_coherence, CoherenceMeasure};
    use crate::states::{ensemble_from_unitary, random_density};
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn fixture_qubit() -> DensityMatrix {
        let m = ComplexMatrix::from_real(2, 2, &[0.7, 0.2, 0.2, 0.3]).unwrap();
        DensityMatrix::new(&m).unwrap()
    }

    fn fixture_qutrit() -> DensityMatrix {
        let m = ComplexMatrix::from_real(3, 3, &[0.5, 0.1, 0.0, 0.1, 0.3, 0.1, 0.0, 0.1, 0.2]).unwrap();
        DensityMatrix::new(&m).unwrap()
    }

    #[test]
    fn objective_agrees_with_ensemble_route() {
        // The row-matrix objective is the same number as building the
        // ensemble and averaging the qubit coherence.
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let rho = fixture_qubit();
        for _ in 0..50 {
            let u = crate::states::haar_isometry(3, 2, &mut rng);
            let ens = ensemble_from_unitary(&rho, &u).unwrap();
            let via_ensemble = avg_coherence(&ens, CoherenceMeasure::L1);
            let spectrum = ranked_spectrum(&rho);
            let b = ComplexMatrix::from_fn(2, 2, |j, i| {
                Complex64::new(spectrum.values[j].max(0.0).sqrt(), 0.0) * spectrum.vectors[(i, j)]
            });
            let v = u.mul(&b);
            let direct = objective_value(&v, &Pairs::Single(0, 1));
            assert_abs_diff_eq!(via_ensemble, direct, epsilon = 1e-12);
        }
    }

    #[test]
    fn half_identity_reaches_unit_bracket() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let rho = DensityMatrix::maximally_mixed(2);
        let res = search_extremes(&rho, CoherenceObjective::QubitL1, 2, 500, &mut rng).unwrap();
        assert_abs_diff_eq!(res.closed_min, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(res.closed_max, 1.0, epsilon = 1e-12);
        assert!(res.best_min < 1e-6, "best_min {}", res.best_min);
        assert!(res.best_max > 1.0 - 1e-6, "best_max {}", res.best_max);
        assert!(res.bracket_ok(tol::BOUND_SLACK));
    }

    #[test]
    fn fixture_qubit_bracket() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        let rho = fixture_qubit();
        let res = search_extremes(&rho, CoherenceObjective::QubitL1, 2, 500, &mut rng).unwrap();
        assert_abs_diff_eq!(res.closed_min, 0.4, epsilon = 1e-12);
        assert_abs_diff_eq!(res.closed_max, 2.0 * 0.21f64.sqrt(), epsilon = 1e-12);
        assert!((res.best_min - res.closed_min).abs() < 1e-6);
        assert!((res.best_max - res.closed_max).abs() < 1e-6);
    }

    #[test]
    fn pure_state_bracket_degenerates() {
        let mut rng = ChaCha8Rng::seed_from_u64(44);
        let rho = random_density(2, 1, &mut rng).unwrap();
        let res = search_extremes(&rho, CoherenceObjective::QubitL1, 2, 50, &mut rng).unwrap();
        let d = crate::coherence::d_l1(&rho);
        assert_abs_diff_eq!(res.best_min, d, epsilon = 1e-9);
        assert_abs_diff_eq!(res.best_max, d, epsilon = 1e-9);
        assert_abs_diff_eq!(res.closed_min, res.closed_max, epsilon = 1e-9);
    }

    #[test]
    fn diagonal_state_minimum_is_eigen_ensemble() {
        // The eigen-ensemble of a diagonal state has zero average
        // coherence, so the closed minimum 0 is attained exactly at U = I.
        let rho = DensityMatrix::new(&ComplexMatrix::from_real(2, 2, &[0.6, 0.0, 0.0, 0.4]).unwrap())
            .unwrap();
        let ens = ensemble_from_unitary(&rho, &ComplexMatrix::identity(2)).unwrap();
        assert_eq!(avg_coherence(&ens, CoherenceMeasure::L1), 0.0);
        let (closed_min, _) = closed_extremes(&rho, CoherenceObjective::QubitL1).unwrap();
        assert_eq!(closed_min, 0.0);

        let mut rng = ChaCha8Rng::seed_from_u64(45);
        let res = search_extremes(&rho, CoherenceObjective::QubitL1, 2, 300, &mut rng).unwrap();
        assert!(res.best_min < 1e-6);
    }

    #[test]
    fn bad_inputs_are_rejected() {
        let mut rng = ChaCha8Rng::seed_from_u64(46);
        let rho = fixture_qubit();
        assert!(matches!(
            search_extremes(&rho, CoherenceObjective::QubitL1, 1, 10, &mut rng),
            Err(CoreError::BadEnsembleSize { .. })
        ));
        assert!(matches!(
            search_extremes(&rho, CoherenceObjective::QubitL1, 2, 0, &mut rng),
            Err(CoreError::BadEnsembleSize { .. })
        ));
        assert!(matches!(
            search_extremes(&fixture_qutrit(), CoherenceObjective::QubitL1, 3, 10, &mut rng),
            Err(CoreError::WrongDimension { .. })
        ));
        assert!(matches!(
            search_extremes(&fixture_qutrit(), CoherenceObjective::Subspace(9), 3, 10, &mut rng),
            Err(CoreError::BadDimension { .. })
        ));
    }

    #[test]
    fn refinement_never_worsens_the_sampled_extreme() {
        let mut rng = ChaCha8Rng::seed_from_u64(51);
        for _ in 0..30 {
            let rho = random_density(2, 2, &mut rng).unwrap();
            let res = search_extremes(&rho, CoherenceObjective::QubitL1, 3, 100, &mut rng).unwrap();
            assert!(res.best_min <= res.sampled_min + 1e-12);
            assert!(res.best_max >= res.sampled_max - 1e-12);
        }
    }

    #[test]
    fn larger_m_never_worse() {
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        for _ in 0..20 {
            let rho = random_density(2, 2, &mut rng).unwrap();
            let small = search_extremes(&rho, CoherenceObjective::QubitL1, 2, 300, &mut rng).unwrap();
            let large = search_extremes(&rho, CoherenceObjective::QubitL1, 4, 300, &mut rng).unwrap();
            assert!(large.best_min <= small.best_min + 1e-9);
            assert!(large.best_max >= small.best_max - 1e-9);
        }
    }

    #[test]
    fn qutrit_subspace_brackets_match_closed_forms() {
        let mut rng = ChaCha8Rng::seed_from_u64(48);
        let sigma = fixture_qutrit();
        let report = verify_thompson(&sigma, &ThompsonConfig::default(), &mut rng).unwrap();
        assert_eq!(report.theorem, TheoremId::T3);
        assert!(report.passed, "worst reach {}", report.residual);
    }

    #[test]
    fn qubit_campaign_passes() {
        let mut rng = ChaCha8Rng::seed_from_u64(49);
        let config = ThompsonConfig { n_samples: 200, ..ThompsonConfig::default() };
        for rank in [1usize, 2] {
            for _ in 0..10 {
                let rho = random_density(2, rank, &mut rng).unwrap();
                let report = verify_thompson(&rho, &config, &mut rng).unwrap();
                assert_eq!(report.theorem, TheoremId::T1);
                assert!(report.passed, "reach {}", report.residual);
            }
        }
    }

    #[test]
    fn weighted_vector_bracket_is_sound() {
        let mut rng = ChaCha8Rng::seed_from_u64(50);
        let sigma = fixture_qutrit();
        let res = search_extremes(&sigma, CoherenceObjective::WeightedVector, 3, 500, &mut rng).unwrap();
        assert_abs_diff_eq!(res.closed_min, crate::coherence::d_f(&sigma), epsilon = 1e-12);
        assert_abs_diff_eq!(res.closed_max, crate::coherence::d_fl(&sigma), epsilon = 1e-12);
        assert!(res.bracket_ok(tol::BOUND_SLACK));
    }
}
