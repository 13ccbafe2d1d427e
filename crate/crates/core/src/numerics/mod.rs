//! Dense complex-matrix primitives: Hermitian eigendecomposition,
//! singular values, Kronecker product, partial trace.
//!
//! All operations are pure and safe to call from many threads.

mod decomp;
mod matrix;

pub use decomp::{hermitian_eig, singular_values, HermitianEigen};
pub use matrix::ComplexMatrix;

use num_complex::Complex64;

use crate::error::{CoreError, Result};

/// Which factor of a bipartite space survives a partial trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    A,
    B,
}

/// Kronecker product; the left factor is the slow index, so
/// `kron(a, b)[(ia*rb + ib, ja*cb + jb)] = a[(ia, ja)] * b[(ib, jb)]`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (ra, ca) = (a.rows(), a.cols());
    let (rb, cb) = (b.rows(), b.cols());
    let mut out = ComplexMatrix::zeros(ra * rb, ca * cb);
    for ia in 0..ra {
        for ja in 0..ca {
            let aij = a[(ia, ja)];
            if aij.norm_sqr() == 0.0 {
                continue;
            }
            for ib in 0..rb {
                for jb in 0..cb {
                    out[(ia * rb + ib, ja * cb + jb)] = aij * b[(ib, jb)];
                }
            }
        }
    }
    out
}

/// Partial trace of an (n1*n2)x(n1*n2) matrix over one factor, with the
/// A index slow: row = i_A * n2 + i_B.
pub fn partial_trace(m: &ComplexMatrix, dims: (usize, usize), keep: Side) -> Result<ComplexMatrix> {
    let (n1, n2) = dims;
    if !m.is_square() || m.rows() != n1 * n2 {
        return Err(CoreError::DimensionMismatch {
            context: format!(
                "partial trace needs a {0}x{0} matrix for dims {1}x{2}, got {3}x{4}",
                n1 * n2,
                n1,
                n2,
                m.rows(),
                m.cols()
            ),
        });
    }
    let out = match keep {
        Side::A => ComplexMatrix::from_fn(n1, n1, |ia, ja| {
            (0..n2).map(|ib| m[(ia * n2 + ib, ja * n2 + ib)]).sum::<Complex64>()
        }),
        Side::B => ComplexMatrix::from_fn(n2, n2, |ib, jb| {
            (0..n1).map(|ia| m[(ia * n2 + ib, ia * n2 + jb)]).sum::<Complex64>()
        }),
    };
    Ok(out)
}
