//! JSON exchange format for matrices and vectors.
//!
//! A matrix is `{"dim": n, "re": [[...]], "im": [[...]]}` with `im`
//! optional (zeros when absent); vectors are the same with flat arrays.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};
use crate::numerics::ComplexMatrix;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub dim: usize,
    pub re: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub im: Option<Vec<Vec<f64>>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VectorJson {
    pub dim: usize,
    pub re: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub im: Option<Vec<f64>>,
}

fn check_grid(name: &str, dim: usize, grid: &[Vec<f64>]) -> Result<()> {
    if grid.len() != dim || grid.iter().any(|row| row.len() != dim) {
        return Err(CoreError::DimensionMismatch {
            context: format!("\"{name}\" must be a {dim}x{dim} grid"),
        });
    }
    Ok(())
}

impl MatrixJson {
    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        let dim = m.rows();
        let re = (0..m.rows())
            .map(|i| (0..m.cols()).map(|j| m[(i, j)].re).collect())
            .collect();
        let im = (0..m.rows())
            .map(|i| (0..m.cols()).map(|j| m[(i, j)].im).collect())
            .collect();
        Self { dim, re, im: Some(im) }
    }

    pub fn to_matrix(&self) -> Result<ComplexMatrix> {
        check_grid("re", self.dim, &self.re)?;
        if let Some(im) = &self.im {
            check_grid("im", self.dim, im)?;
        }
        Ok(ComplexMatrix::from_fn(self.dim, self.dim, |i, j| {
            let re = self.re[i][j];
            let im = self.im.as_ref().map_or(0.0, |g| g[i][j]);
            Complex64::new(re, im)
        }))
    }
}

impl VectorJson {
    pub fn from_amplitudes(v: &[Complex64]) -> Self {
        Self {
            dim: v.len(),
            re: v.iter().map(|z| z.re).collect(),
            im: Some(v.iter().map(|z| z.im).collect()),
        }
    }

    pub fn to_amplitudes(&self) -> Result<Vec<Complex64>> {
        if self.re.len() != self.dim || self.im.as_ref().is_some_and(|im| im.len() != self.dim) {
            return Err(CoreError::DimensionMismatch {
                context: format!("vector arrays must have length {}", self.dim),
            });
        }
        Ok((0..self.dim)
            .map(|i| Complex64::new(self.re[i], self.im.as_ref().map_or(0.0, |im| im[i])))
            .collect())
    }
}
