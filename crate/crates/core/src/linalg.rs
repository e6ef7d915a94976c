//! Dense symmetric linear algebra: Cholesky with an explicit pivot guard and
//! a sorted symmetric eigendecomposition.
//!
//! Every linear system in this crate comes from a matrix that is provably
//! positive definite for valid inputs, so a Cholesky failure is a meaningful
//! diagnostic (degenerate data), not a numerical accident to be papered over
//! with a pivoted LU.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::error::{Error, Result};

/// Pivots at or below this value abort the factorization.
pub const CHOLESKY_PIVOT_TOL: f64 = 1e-12;

/// Lower-triangular factor `L` with `M = L * L^T`.
#[derive(Debug, Clone)]
pub struct CholeskyFactor {
    lower: DMatrix<f64>,
}

impl CholeskyFactor {
    pub fn new(matrix: &DMatrix<f64>) -> Result<Self> {
        assert_eq!(matrix.nrows(), matrix.ncols(), "matrix must be square");
        let n = matrix.nrows();
        let mut lower = DMatrix::zeros(n, n);
        for j in 0..n {
            let mut pivot = matrix[(j, j)];
            for p in 0..j {
                pivot -= lower[(j, p)] * lower[(j, p)];
            }
            if !(pivot > CHOLESKY_PIVOT_TOL) {
                return Err(Error::NotPositiveDefinite {
                    pivot,
                    threshold: CHOLESKY_PIVOT_TOL,
                });
            }
            let root = pivot.sqrt();
            lower[(j, j)] = root;
            for i in (j + 1)..n {
                let mut value = matrix[(i, j)];
                for p in 0..j {
                    value -= lower[(i, p)] * lower[(j, p)];
                }
                lower[(i, j)] = value / root;
            }
        }
        Ok(Self { lower })
    }

    pub fn lower(&self) -> &DMatrix<f64> {
        &self.lower
    }

    /// Solves `M x = rhs` by forward then backward substitution.
    pub fn solve(&self, rhs: &DVector<f64>) -> DVector<f64> {
        self.solve_lower_transpose(&self.solve_lower(rhs))
    }

    /// Solves `L x = rhs`.
    pub fn solve_lower(&self, rhs: &DVector<f64>) -> DVector<f64> {
        let n = self.lower.nrows();
        let mut x = rhs.clone();
        for i in 0..n {
            for j in 0..i {
                let step = self.lower[(i, j)] * x[j];
                x[i] -= step;
            }
            x[i] /= self.lower[(i, i)];
        }
        x
    }

    /// Solves `L^T x = rhs`.
    pub fn solve_lower_transpose(&self, rhs: &DVector<f64>) -> DVector<f64> {
        let n = self.lower.nrows();
        let mut x = rhs.clone();
        for i in (0..n).rev() {
            for j in (i + 1)..n {
                let step = self.lower[(j, i)] * x[j];
                x[i] -= step;
            }
            x[i] /= self.lower[(i, i)];
        }
        x
    }

    /// `L^{-1}` by forward substitution on the identity; lower triangular.
    pub fn inverse_lower(&self) -> DMatrix<f64> {
        let n = self.lower.nrows();
        let mut inv = DMatrix::zeros(n, n);
        for col in 0..n {
            let mut e = DVector::zeros(n);
            e[col] = 1.0;
            inv.set_column(col, &self.solve_lower(&e));
        }
        inv
    }
}

/// Eigenvalues (descending) and matching eigenvector columns of a symmetric
/// matrix.
pub fn symmetric_eigen_descending(matrix: DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let n = matrix.nrows();
    let eigen = SymmetricEigen::new(matrix);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        eigen.eigenvalues[j]
            .partial_cmp(&eigen.eigenvalues[i])
            .expect("symmetric eigenvalues are finite")
    });
    let mut values = Vec::with_capacity(n);
    let mut vectors = DMatrix::zeros(n, n);
    for (slot, &idx) in order.iter().enumerate() {
        values.push(eigen.eigenvalues[idx]);
        vectors.set_column(slot, &eigen.eigenvectors.column(idx));
    }
    (values, vectors)
}
