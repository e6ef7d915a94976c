//! The zero-integral spline space: ZB-basis evaluation, the coefficient map
//! to the standard B-basis, and serialization of fitted splines.
//!
//! A ZB-spline basis function is the difference of two consecutive
//! unit-integral M-splines, so every linear combination integrates to zero
//! exactly. The space has dimension `g + k`; the canonical storage is the
//! ZB coefficient vector `z`, and the B-basis vector `b = D K z` is derived
//! on demand for evaluation and plotting.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::bspline::{self, BSplineFn};
use crate::error::{Error, Result};
use crate::knots::{Domain, KnotConfig};

/// The matrices behind `b = D K z`.
#[derive(Debug, Clone)]
pub struct CoeffMap {
    /// Diagonal M-spline normalization, entries `(k+1) / (lambda_(j+k+1) - lambda_j)`.
    scale: DMatrix<f64>,
    /// Lower-bidiagonal difference pattern, `+1` on the diagonal and `-1`
    /// below it; `(g+k+1) x (g+k)`.
    difference: DMatrix<f64>,
    /// The product `scale * difference`.
    product: DMatrix<f64>,
}

impl CoeffMap {
    pub fn scale(&self) -> &DMatrix<f64> {
        &self.scale
    }

    pub fn difference(&self) -> &DMatrix<f64> {
        &self.difference
    }

    /// The full map from ZB coefficients to B coefficients.
    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.product
    }
}

/// Builds the diagonal normalization, the bidiagonal difference matrix, and
/// their product for a degree `k >= 1` configuration.
pub fn build_coeff_map(knots: &KnotConfig) -> Result<CoeffMap> {
    if knots.degree() == 0 {
        return Err(Error::ZeroDegree);
    }
    let dim_b = knots.dim_spline();
    let dim_z = knots.dim_zero_integral();
    let factor = (knots.degree() + 1) as f64;
    let scale = DMatrix::from_diagonal(&DVector::from_fn(dim_b, |j, _| factor / knots.span(j)));
    let mut difference = DMatrix::zeros(dim_b, dim_z);
    for j in 0..dim_z {
        difference[(j, j)] = 1.0;
        difference[(j + 1, j)] = -1.0;
    }
    let product = &scale * &difference;
    Ok(CoeffMap {
        scale,
        difference,
        product,
    })
}

/// Dimension of the zero-integral spline space, `g + k`.
pub fn zspace_dimension(knots: &KnotConfig) -> usize {
    knots.dim_zero_integral()
}

/// All `g + k` ZB-basis values at `x`: differences of consecutive M-spline
/// values.
pub fn eval_zb_basis(knots: &KnotConfig, x: f64) -> Result<DVector<f64>> {
    let m = bspline::eval_m_basis(knots, x)?;
    Ok(DVector::from_fn(knots.dim_zero_integral(), |i, _| {
        m[i] - m[i + 1]
    }))
}

/// A spline with zero integral, stored by its ZB coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct ZBSplineFn {
    knots: KnotConfig,
    coefficients: DVector<f64>,
}

impl ZBSplineFn {
    pub fn new(knots: KnotConfig, coefficients: DVector<f64>) -> Result<Self> {
        if knots.degree() == 0 {
            return Err(Error::ZeroDegree);
        }
        if coefficients.len() != knots.dim_zero_integral() {
            return Err(Error::CoefficientLength {
                expected: knots.dim_zero_integral(),
                found: coefficients.len(),
            });
        }
        Ok(Self {
            knots,
            coefficients,
        })
    }

    pub fn zero(knots: KnotConfig) -> Result<Self> {
        let dim = knots.dim_zero_integral();
        Self::new(knots, DVector::zeros(dim))
    }

    pub fn knots(&self) -> &KnotConfig {
        &self.knots
    }

    pub fn coefficients(&self) -> &DVector<f64> {
        &self.coefficients
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        Ok(eval_zb_basis(&self.knots, x)?.dot(&self.coefficients))
    }

    /// The same spline in the standard B-basis via `b = D K z`; its closed
    ///-form integral vanishes.
    pub fn to_bspline(&self) -> BSplineFn {
        let map = build_coeff_map(&self.knots).expect("degree >= 1 held by construction");
        let b = map.matrix() * &self.coefficients;
        let spline = BSplineFn::new(self.knots.clone(), b).expect("dimensions match by construction");
        debug_assert!({
            let scale = self.coefficients.abs().sum() * self.knots.domain().length();
            spline.integral().abs() <= 1e-10 * scale.max(1.0)
        });
        spline
    }
}

/// Serializable form of a fitted spline, shared between the library and the
/// command-line output files.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SplineRecord {
    pub domain: [f64; 2],
    pub degree: usize,
    pub interior_knots: Vec<f64>,
    pub zb_coefficients: Vec<f64>,
    pub b_coefficients: Vec<f64>,
}

impl SplineRecord {
    pub fn from_spline(spline: &ZBSplineFn) -> Self {
        let knots = spline.knots();
        Self {
            domain: [knots.domain().lower(), knots.domain().upper()],
            degree: knots.degree(),
            interior_knots: knots.interior().to_vec(),
            zb_coefficients: spline.coefficients().iter().copied().collect(),
            b_coefficients: spline.to_bspline().coefficients().iter().copied().collect(),
        }
    }

    pub fn to_spline(&self) -> Result<ZBSplineFn> {
        let domain = Domain::new(self.domain[0], self.domain[1])?;
        let knots = KnotConfig::new(self.degree, self.interior_knots.clone(), domain)?;
        ZBSplineFn::new(knots, DVector::from_vec(self.zb_coefficients.clone()))
    }
}
