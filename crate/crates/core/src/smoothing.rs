//! Penalized least-squares smoothing of discrete clr data with zero-integral
//! splines.
//!
//! The fitted spline minimizes
//! `(1 - alpha) * intg (s^(l))^2 + alpha * sum_i w_i (y_i - s(t_i))^2`
//! over the zero-integral space. Expressed in ZB coefficients the problem is
//! an unconstrained quadratic; its normal matrix is positive definite
//! exactly when the abscissas interlace the knots (Schoenberg-Whitney), so
//! solvability is checked up front and solved by Cholesky.

use nalgebra::{DMatrix, DVector};

use crate::bspline::{collocation_matrix, derivative_reduction, gram_matrix};
use crate::error::{Error, Result};
use crate::knots::KnotConfig;
use crate::linalg::CholeskyFactor;
use crate::zbspline::{build_coeff_map, ZBSplineFn};

/// Discrete clr observations `(t_i, y_i)` with positive weights.
#[derive(Debug, Clone)]
pub struct ClrSample {
    abscissas: Vec<f64>,
    values: DVector<f64>,
    weights: DVector<f64>,
}

impl ClrSample {
    pub fn new(abscissas: Vec<f64>, values: Vec<f64>, weights: Vec<f64>) -> Result<Self> {
        let n = abscissas.len();
        if n == 0 {
            return Err(Error::EmptyInput);
        }
        if values.len() != n {
            return Err(Error::LengthMismatch {
                what: "values",
                expected: n,
                found: values.len(),
            });
        }
        if weights.len() != n {
            return Err(Error::LengthMismatch {
                what: "weights",
                expected: n,
                found: weights.len(),
            });
        }
        for (index, pair) in abscissas.windows(2).enumerate() {
            if pair[1] < pair[0] {
                return Err(Error::AbscissasNotAscending { index: index + 1 });
            }
        }
        for (index, &value) in weights.iter().enumerate() {
            if !(value > 0.0 && value.is_finite()) {
                return Err(Error::InvalidWeight { index, value });
            }
        }
        Ok(Self {
            abscissas,
            values: DVector::from_vec(values),
            weights: DVector::from_vec(weights),
        })
    }

    /// Unit weights, the default when none are recorded.
    pub fn with_unit_weights(abscissas: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        let weights = vec![1.0; abscissas.len()];
        Self::new(abscissas, values, weights)
    }

    pub fn len(&self) -> usize {
        self.abscissas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.abscissas.is_empty()
    }

    pub fn abscissas(&self) -> &[f64] {
        &self.abscissas
    }

    pub fn values(&self) -> &DVector<f64> {
        &self.values
    }

    pub fn weights(&self) -> &DVector<f64> {
        &self.weights
    }

    /// The weighted sum of squared values, the data term at the zero spline.
    fn weighted_square_sum(&self) -> f64 {
        self.values
            .iter()
            .zip(self.weights.iter())
            .map(|(y, w)| w * y * y)
            .sum()
    }
}

/// Penalty derivative order and the fit/smoothness trade-off.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmoothingParams {
    penalty_order: usize,
    alpha: f64,
}

impl SmoothingParams {
    /// `alpha` must lie strictly inside `(0, 1)`: a pure penalty is singular
    /// and pure interpolation is a different problem class.
    pub fn new(penalty_order: usize, alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::InvalidAlpha { alpha });
        }
        if penalty_order == 0 {
            return Err(Error::InvalidPenaltyOrder {
                order: penalty_order,
                max: 0,
                degree: 0,
            });
        }
        Ok(Self {
            penalty_order,
            alpha,
        })
    }

    pub fn penalty_order(&self) -> usize {
        self.penalty_order
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    fn validate_for(&self, knots: &KnotConfig) -> Result<()> {
        let k = knots.degree();
        if self.penalty_order + 1 > k {
            return Err(Error::InvalidPenaltyOrder {
                order: self.penalty_order,
                max: k.saturating_sub(1),
                degree: k,
            });
        }
        Ok(())
    }
}

/// Whether a strictly increasing subsequence `u_(-k) < .. < u_g` of the
/// abscissas exists with `lambda_i < u_i < lambda_(i+k+1)` for every basis
/// function; equivalent to the collocation matrix having full column rank.
///
/// Decided greedily left to right: the windows move right with `i`, so a
/// value too small for the current window stays unusable later and picking
/// the smallest admissible abscissa is optimal. Expects `t` ascending.
pub fn check_schoenberg_whitney(knots: &KnotConfig, t: &[f64]) -> bool {
    let dim = knots.dim_spline();
    if t.len() < dim {
        return false;
    }
    let ext = knots.extended();
    let k = knots.degree();
    let mut pos = 0;
    let mut prev = f64::NEG_INFINITY;
    for j in 0..dim {
        let bound = ext[j].max(prev);
        let upper = ext[j + k + 1];
        while pos < t.len() && t[pos] <= bound {
            pos += 1;
        }
        if pos >= t.len() || t[pos] >= upper {
            return false;
        }
        prev = t[pos];
        pos += 1;
    }
    true
}

/// Normal matrix and right-hand side of the penalized least-squares problem
/// in ZB coefficients.
pub fn assemble_normal_system(
    sample: &ClrSample,
    knots: &KnotConfig,
    params: &SmoothingParams,
) -> Result<(DMatrix<f64>, DVector<f64>)> {
    params.validate_for(knots)?;
    let alpha = params.alpha();
    let collocation = collocation_matrix(knots, sample.abscissas())?;
    let gram = gram_matrix(knots, params.penalty_order())?;
    let reduction = derivative_reduction(knots, params.penalty_order())?;
    let map = build_coeff_map(knots)?;

    let penalty = reduction.transpose() * gram.matrix() * &reduction;
    let weighted = {
        let mut scaled = collocation.clone();
        for (mut row, w) in scaled.row_iter_mut().zip(sample.weights().iter()) {
            row *= *w;
        }
        collocation.transpose() * scaled
    };
    let bracket = penalty * (1.0 - alpha) + weighted * alpha;
    let normal = map.matrix().transpose() * bracket * map.matrix();
    // the products are symmetric in exact arithmetic; pin it bitwise
    let normal = (&normal + normal.transpose()) * 0.5;

    let mut weighted_values = sample.values().clone();
    for (value, w) in weighted_values.iter_mut().zip(sample.weights().iter()) {
        *value *= w;
    }
    let rhs = map.matrix().transpose() * collocation.transpose() * weighted_values * alpha;
    Ok((normal, rhs))
}

/// Solves the penalized problem and returns the fitted zero-integral spline.
///
/// Fails with a named condition when the abscissas do not interlace the
/// knots, and with a degeneracy error if the normal matrix is numerically
/// singular despite the rank check.
pub fn fit_smoothing_spline(
    sample: &ClrSample,
    knots: &KnotConfig,
    params: &SmoothingParams,
) -> Result<ZBSplineFn> {
    params.validate_for(knots)?;
    if !check_schoenberg_whitney(knots, sample.abscissas()) {
        return Err(Error::SchoenbergWhitney);
    }
    let (normal, rhs) = assemble_normal_system(sample, knots, params)?;
    let factor = CholeskyFactor::new(&normal)?;
    ZBSplineFn::new(knots.clone(), factor.solve(&rhs))
}

/// The penalized objective at coefficients `z`, in its quadratic form
/// `z' G z - 2 z' g + alpha * y' W y`.
pub fn objective_value(
    sample: &ClrSample,
    knots: &KnotConfig,
    params: &SmoothingParams,
    z: &DVector<f64>,
) -> Result<f64> {
    let (normal, rhs) = assemble_normal_system(sample, knots, params)?;
    Ok((z.transpose() * normal * z)[(0, 0)] - 2.0 * z.dot(&rhs)
        + params.alpha() * sample.weighted_square_sum())
}
