//! Hermitian eigendecomposition and singular values by Jacobi iteration.
//!
//! Cyclic Jacobi converges quadratically and delivers near machine-epsilon
//! accuracy at the dimensions this crate handles, which matters because
//! several downstream identities are checked at 1e-9 in absolute terms.
//! The one-sided variant computes singular values directly from column
//! norms, so small singular values keep full absolute accuracy instead of
//! the half-precision loss of a sqrt-of-eigenvalue route.

use num_complex::Complex64;

use crate::error::{CoreError, Result};
use crate::tol;

use super::matrix::ComplexMatrix;

const MAX_SWEEPS: usize = 64;

/// Eigenvalues (descending) and eigenvector columns of a Hermitian matrix,
/// satisfying `H = V diag(values) V^dag`.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi.
///
/// The input must be Hermitian within [`tol::HERMITICITY`]; it is
/// symmetrized before iterating. Eigenvalues come back sorted descending,
/// ties keeping the order the sweep produced.
pub fn hermitian_eig(h: &ComplexMatrix) -> Result<HermitianEigen> {
    if !h.is_square() {
        return Err(CoreError::NonSquare { rows: h.rows(), cols: h.cols() });
    }
    if !h.all_finite() {
        return Err(CoreError::NonFinite);
    }
    let defect = h.hermiticity_defect();
    if defect > tol::HERMITICITY {
        return Err(CoreError::NonHermitian { defect, tol: tol::HERMITICITY });
    }

    let n = h.rows();
    let mut a = h.hermitized();
    let mut v = ComplexMatrix::identity(n);
    if n > 1 {
        let stop = f64::EPSILON * a.frob_norm().max(f64::MIN_POSITIVE);
        for _ in 0..MAX_SWEEPS {
            let mut worst = 0.0f64;
            for p in 0..n - 1 {
                for q in p + 1..n {
                    worst = worst.max(a[(p, q)].norm());
                    rotate_hermitian(&mut a, &mut v, p, q, stop);
                }
            }
            if worst <= stop {
                break;
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].re.partial_cmp(&a[(i, i)].re).unwrap());
    let values: Vec<f64> = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    Ok(HermitianEigen { values, vectors })
}

/// One Jacobi rotation annihilating the (p, q) entry of the Hermitian
/// working matrix `a`, accumulated into `v`.
fn rotate_hermitian(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize, stop: f64) {
    let apq = a[(p, q)];
    let abs_apq = apq.norm();
    if abs_apq <= stop * 1e-2 {
        // Already negligible; flush it so the sweep terminates cleanly.
        a[(p, q)] = Complex64::new(0.0, 0.0);
        a[(q, p)] = Complex64::new(0.0, 0.0);
        return;
    }
    let phase = apq / abs_apq;
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let tau = (aqq - app) / (2.0 * abs_apq);
    let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // Unitary J = [[c, s], [-s e^{-i phi}, c e^{-i phi}]] on the (p, q)
    // plane; A <- J^dag A J, V <- V J.
    let n = a.rows();
    let sp = s * phase.conj();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = c * akp - sp * akq;
        a[(k, q)] = s * akp + c * phase.conj() * akq;
    }
    let sp_row = s * phase;
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = c * apk - sp_row * aqk;
        a[(q, k)] = s * apk + c * phase * aqk;
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = c * vkp - sp * vkq;
        v[(k, q)] = s * vkp + c * phase.conj() * vkq;
    }
}

/// Singular values of an arbitrary complex matrix, descending, by
/// one-sided Jacobi; their squares are the eigenvalues of K^dag K.
pub fn singular_values(k: &ComplexMatrix) -> Result<Vec<f64>> {
    if !k.all_finite() {
        return Err(CoreError::NonFinite);
    }
    // Work on the taller orientation; transposition preserves the
    // singular values.
    let mut g = if k.rows() >= k.cols() { k.clone() } else { k.transpose() };
    let (m, n) = (g.rows(), g.cols());
    if n == 0 || m == 0 {
        return Ok(vec![]);
    }

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for i in 0..n.saturating_sub(1) {
            for j in i + 1..n {
                let mut aa = 0.0f64;
                let mut bb = 0.0f64;
                let mut d = Complex64::new(0.0, 0.0);
                for r in 0..m {
                    let gi = g[(r, i)];
                    let gj = g[(r, j)];
                    aa += gi.norm_sqr();
                    bb += gj.norm_sqr();
                    d += gi.conj() * gj;
                }
                let scale = (aa * bb).sqrt();
                if scale <= f64::MIN_POSITIVE || d.norm() <= f64::EPSILON * scale {
                    continue;
                }
                rotated = true;
                // Diagonalize the 2x2 Gram block [[aa, d], [conj(d), bb]].
                let abs_d = d.norm();
                let phase = d / abs_d;
                let tau = (bb - aa) / (2.0 * abs_d);
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let sp = s * phase.conj();
                for r in 0..m {
                    let gi = g[(r, i)];
                    let gj = g[(r, j)];
                    g[(r, i)] = c * gi - sp * gj;
                    g[(r, j)] = s * gi + c * phase.conj() * gj;
                }
            }
        }
        if !rotated {
            break;
        }
    }

    let mut sv: Vec<f64> = (0..n)
        .map(|j| (0..m).map(|r| g[(r, j)].norm_sqr()).sum::<f64>().sqrt())
        .collect();
    sv.sort_by(|a, b| b.partial_cmp(a).unwrap());
    Ok(sv)
}
