//! B-spline and Curry-Schoenberg M-spline evaluation, collocation and Gram
//! matrices, derivative-reduction matrices, and the closed-form spline
//! integral.
//!
//! Evaluation uses the Cox-de Boor triangle on the active knot span, which
//! keeps the partition of unity exact and handles coincident boundary knots
//! without 0/0 guards. The half-open support convention is closed at the
//! right endpoint, so evaluation at `b` returns the clamped boundary value.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::knots::KnotConfig;
use crate::linalg::CholeskyFactor;
use crate::quadrature;

/// Index of the knot span `[ext[mu], ext[mu+1])` containing `x`, with `x = b`
/// assigned to the last nonempty span.
fn find_span(knots: &KnotConfig, x: f64) -> Result<usize> {
    let domain = knots.domain();
    if !domain.contains(x) || x.is_nan() {
        return Err(Error::PointOutsideDomain {
            x,
            a: domain.lower(),
            b: domain.upper(),
        });
    }
    let k = knots.degree();
    let g = knots.num_interior();
    if x == domain.upper() {
        return Ok(k + g);
    }
    let ext = knots.extended();
    // Nonempty spans start at extended indices k..=k+g.
    let mut lo = k;
    let mut hi = k + g;
    while lo < hi {
        let mid = (lo + hi + 1) / 2;
        if ext[mid] <= x {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    Ok(lo)
}

/// The `k + 1` basis values that are nonzero on span `mu`; entry `r`
/// is basis function `mu - k + r`.
fn nonzero_basis(knots: &KnotConfig, mu: usize, x: f64) -> Vec<f64> {
    let k = knots.degree();
    let ext = knots.extended();
    let mut values = vec![0.0; k + 1];
    values[0] = 1.0;
    let mut left = vec![0.0; k + 1];
    let mut right = vec![0.0; k + 1];
    for j in 1..=k {
        left[j] = x - ext[mu + 1 - j];
        right[j] = ext[mu + j] - x;
        let mut saved = 0.0;
        for r in 0..j {
            // Never zero on a nonempty span: bounded below by its width.
            let denom = right[r + 1] + left[j - r];
            let temp = values[r] / denom;
            values[r] = saved + right[r + 1] * temp;
            saved = left[j - r] * temp;
        }
        values[j] = saved;
    }
    values
}

/// All `g + k + 1` B-spline basis values at `x`; nonnegative and summing
/// to one.
pub fn eval_b_basis(knots: &KnotConfig, x: f64) -> Result<DVector<f64>> {
    let mu = find_span(knots, x)?;
    let block = nonzero_basis(knots, mu, x);
    let mut values = DVector::zeros(knots.dim_spline());
    let start = mu - knots.degree();
    for (offset, v) in block.into_iter().enumerate() {
        values[start + offset] = v;
    }
    Ok(values)
}

/// Curry-Schoenberg basis values at `x`: each B-spline rescaled by
/// `(k + 1)` over its knot span so it integrates to one.
pub fn eval_m_basis(knots: &KnotConfig, x: f64) -> Result<DVector<f64>> {
    let mut values = eval_b_basis(knots, x)?;
    let scale = (knots.degree() + 1) as f64;
    for j in 0..values.len() {
        values[j] *= scale / knots.span(j);
    }
    Ok(values)
}

/// Collocation matrix: row `j` holds the basis values at `x[j]`.
pub fn collocation_matrix(knots: &KnotConfig, xs: &[f64]) -> Result<DMatrix<f64>> {
    let mut matrix = DMatrix::zeros(xs.len(), knots.dim_spline());
    for (row, &x) in xs.iter().enumerate() {
        matrix.set_row(row, &eval_b_basis(knots, x)?.transpose());
    }
    Ok(matrix)
}

/// Gram matrix of a B-spline basis, tagged with the `(degree, derivative)`
/// pair it was built for.
#[derive(Debug, Clone)]
pub struct GramMatrix {
    order: (usize, usize),
    matrix: DMatrix<f64>,
}

impl GramMatrix {
    pub fn order(&self) -> (usize, usize) {
        self.order
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn size(&self) -> usize {
        self.matrix.nrows()
    }

    pub(crate) fn from_parts(order: (usize, usize), matrix: DMatrix<f64>) -> Self {
        Self { order, matrix }
    }

    /// Cholesky factorization; fails only if the matrix is numerically
    /// degenerate, which valid knot configurations never produce.
    pub fn cholesky(&self) -> Result<CholeskyFactor> {
        CholeskyFactor::new(&self.matrix)
    }
}

/// Gram matrix of the degree `k - l` basis on the same breakpoints:
/// entries `intg B_i B_j` over the domain.
///
/// Per-interval Gauss-Legendre with `k - l + 2` nodes integrates the
/// piecewise degree-`2(k-l)` products exactly.
pub fn gram_matrix(knots: &KnotConfig, l: usize) -> Result<GramMatrix> {
    let k = knots.degree();
    if l > k {
        return Err(Error::InvalidDerivativeOrder { order: l, max: k });
    }
    let reduced = knots.reduced(l)?;
    let dim = reduced.dim_spline();
    let nodes = (k - l) + 2;
    let (xs, ws) = quadrature::gauss_legendre(nodes);
    let breaks = reduced.breakpoints();
    let mut matrix = DMatrix::zeros(dim, dim);
    for pair in breaks.windows(2) {
        let mid = 0.5 * (pair[0] + pair[1]);
        let half = 0.5 * (pair[1] - pair[0]);
        for (x, w) in xs.iter().zip(&ws) {
            let values =
                eval_b_basis(&reduced, mid + half * x).expect("quadrature node is inside domain");
            // accumulate the upper triangle only; mirrored below, so the
            // result is symmetric bitwise, not just up to rounding
            for i in 0..dim {
                if values[i] == 0.0 {
                    continue;
                }
                let scaled = w * half * values[i];
                for j in i..dim {
                    matrix[(i, j)] += scaled * values[j];
                }
            }
        }
    }
    for i in 1..dim {
        for j in 0..i {
            matrix[(i, j)] = matrix[(j, i)];
        }
    }
    Ok(GramMatrix::from_parts((k, l), matrix))
}

/// Derivative-reduction matrix `S_l`: maps degree-`k` coefficients `b` to the
/// degree-`(k-l)` coefficients of the `l`-th derivative.
///
/// Built as the product of one difference step per derivative order, each a
/// bidiagonal matrix scaled by inverse knot spans; full row rank,
/// `(g+k+1-l) x (g+k+1)`.
pub fn derivative_reduction(knots: &KnotConfig, l: usize) -> Result<DMatrix<f64>> {
    let k = knots.degree();
    if l == 0 || l + 1 > k {
        return Err(Error::InvalidDerivativeOrder {
            order: l,
            max: k.saturating_sub(1),
        });
    }
    let dim = knots.dim_spline();
    let ext = knots.extended();
    let mut reduction = DMatrix::identity(dim, dim);
    for j in 1..=l {
        let rows = dim - j;
        let mut step = DMatrix::zeros(rows, rows + 1);
        for r in 0..rows {
            let scale = (k + 1 - j) as f64 / (ext[r + k + 1] - ext[r + j]);
            step[(r, r)] = -scale;
            step[(r, r + 1)] = scale;
        }
        reduction = step * reduction;
    }
    Ok(reduction)
}

/// A spline in the standard B-basis: `g + k + 1` coefficients over a knot
/// configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct BSplineFn {
    knots: KnotConfig,
    coefficients: DVector<f64>,
}

impl BSplineFn {
    pub fn new(knots: KnotConfig, coefficients: DVector<f64>) -> Result<Self> {
        if coefficients.len() != knots.dim_spline() {
            return Err(Error::CoefficientLength {
                expected: knots.dim_spline(),
                found: coefficients.len(),
            });
        }
        Ok(Self {
            knots,
            coefficients,
        })
    }

    pub fn knots(&self) -> &KnotConfig {
        &self.knots
    }

    pub fn coefficients(&self) -> &DVector<f64> {
        &self.coefficients
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        // Only the active block contributes; skip the dense dot product.
        let mu = find_span(&self.knots, x)?;
        let block = nonzero_basis(&self.knots, mu, x);
        let start = mu - self.knots.degree();
        Ok(block
            .iter()
            .enumerate()
            .map(|(offset, v)| v * self.coefficients[start + offset])
            .sum())
    }

    /// Exact integral over the domain: each basis function contributes its
    /// knot span over `k + 1`.
    pub fn integral(&self) -> f64 {
        let scale = (self.knots.degree() + 1) as f64;
        (0..self.coefficients.len())
            .map(|j| self.coefficients[j] * self.knots.span(j) / scale)
            .sum()
    }

    /// Coefficients of the `l`-th derivative in the reduced-degree basis,
    /// paired with its knot configuration.
    pub fn derivative(&self, l: usize) -> Result<BSplineFn> {
        let reduction = derivative_reduction(&self.knots, l)?;
        BSplineFn::new(self.knots.reduced(l)?, reduction * &self.coefficients)
    }
}
