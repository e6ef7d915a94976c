//! The Bayes-space layer: clr transforms, perturbation, powering, the
//! log-ratio inner product, CB-spline basis densities, and compositional
//! spline densities.
//!
//! A density is stored only through its clr spline; the unit-integral
//! representative is materialized on evaluation by dividing out the
//! normalizer `intg exp(clr)`. The clr form is the lossless one: any
//! positive multiple of a density carries the same relative information.

use nalgebra::DVector;

use crate::error::{Error, Result};
use crate::knots::KnotConfig;
use crate::ortho::zb_gram;
use crate::quadrature;
use crate::zbspline::{eval_zb_basis, ZBSplineFn};

/// Gauss-Legendre nodes per knot interval for integrals of `exp(spline)`;
/// the integrand is not polynomial, and this fixed order carries the 1e-8
/// tolerances the density contracts state.
const EXP_QUAD_NODES: usize = 16;

/// A positive vector carrying relative information (proportions or raw
/// density values at histogram midpoints).
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteComposition {
    parts: Vec<f64>,
}

impl DiscreteComposition {
    pub fn new(parts: Vec<f64>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::EmptyInput);
        }
        for (index, &value) in parts.iter().enumerate() {
            if !(value > 0.0 && value.is_finite()) {
                return Err(Error::NonpositivePart { index, value });
            }
        }
        Ok(Self { parts })
    }

    pub fn parts(&self) -> &[f64] {
        &self.parts
    }

    /// Discrete centered log-ratio transform: logs shifted by their mean.
    /// The output sums to zero and is invariant under positive rescaling of
    /// the parts.
    pub fn clr(&self) -> Vec<f64> {
        let logs: Vec<f64> = self.parts.iter().map(|v| v.ln()).collect();
        let mean = logs.iter().sum::<f64>() / logs.len() as f64;
        logs.into_iter().map(|v| v - mean).collect()
    }
}

/// Convenience free function mirroring [`DiscreteComposition::clr`].
pub fn clr_discrete(parts: &[f64]) -> Result<Vec<f64>> {
    Ok(DiscreteComposition::new(parts.to_vec())?.clr())
}

/// A probability density on the knot domain whose clr transform is a
/// zero-integral spline.
#[derive(Debug, Clone, PartialEq)]
pub struct CompositionalSpline {
    clr: ZBSplineFn,
    /// `intg exp(clr)` over the domain, the unit-integral normalizer.
    normalizer: f64,
}

impl CompositionalSpline {
    pub fn from_clr(clr: ZBSplineFn) -> Self {
        let normalizer = quadrature::integrate_over_breaks(
            &clr.knots().breakpoints(),
            EXP_QUAD_NODES,
            |x| clr.eval(x).expect("quadrature node is inside domain").exp(),
        );
        Self { clr, normalizer }
    }

    /// The neutral element of perturbation: the uniform density `1/eta`.
    pub fn uniform(knots: &KnotConfig) -> Result<Self> {
        Ok(Self::from_clr(ZBSplineFn::zero(knots.clone())?))
    }

    pub fn clr_spline(&self) -> &ZBSplineFn {
        &self.clr
    }

    pub fn knots(&self) -> &KnotConfig {
        self.clr.knots()
    }

    /// The unit-integral density value at `x`; strictly positive.
    pub fn density(&self, x: f64) -> Result<f64> {
        Ok(self.clr.eval(x)?.exp() / self.normalizer)
    }

    /// Perturbation: densities multiply pointwise and renormalize, so clr
    /// coefficients add.
    pub fn perturb(&self, other: &CompositionalSpline) -> Result<CompositionalSpline> {
        if self.knots() != other.knots() {
            return Err(Error::ConfigMismatch);
        }
        let z = self.clr.coefficients() + other.clr.coefficients();
        Ok(Self::from_clr(ZBSplineFn::new(self.knots().clone(), z)?))
    }

    /// Perturbation by the reciprocal: `self (-) other`.
    pub fn perturb_inverse(&self, other: &CompositionalSpline) -> Result<CompositionalSpline> {
        self.perturb(&other.power(-1.0))
    }

    /// Powering: the density raised to `alpha` and renormalized, so clr
    /// coefficients scale.
    pub fn power(&self, alpha: f64) -> CompositionalSpline {
        let z = self.clr.coefficients() * alpha;
        Self::from_clr(
            ZBSplineFn::new(self.knots().clone(), z).expect("dimension preserved by scaling"),
        )
    }

    /// The Bayes-space inner product through clr isometry: the quadratic
    /// form of the ZB Gram matrix on the coefficient vectors.
    pub fn inner_product(&self, other: &CompositionalSpline) -> Result<f64> {
        if self.knots() != other.knots() {
            return Err(Error::ConfigMismatch);
        }
        let sigma = zb_gram(self.knots())?;
        Ok((self.clr.coefficients().transpose()
            * sigma.matrix()
            * other.clr.coefficients())[(0, 0)])
    }

    /// Squared Bayes-space norm; zero exactly for the uniform density.
    pub fn norm_squared(&self) -> f64 {
        self.inner_product(self)
            .expect("a spline always matches its own configuration")
    }
}

/// The CB-spline basis: each zero-integral basis function mapped to a
/// density by inverse clr. Components are strictly positive, have unit
/// integral, and their clr recovers the ZB-basis exactly. Normalizers are
/// computed once at construction.
#[derive(Debug, Clone)]
pub struct CbBasis {
    knots: KnotConfig,
    normalizers: Vec<f64>,
}

impl CbBasis {
    pub fn new(knots: &KnotConfig) -> Self {
        let breaks = knots.breakpoints();
        let normalizers = (0..knots.dim_zero_integral())
            .map(|i| {
                quadrature::integrate_over_breaks(&breaks, EXP_QUAD_NODES, |t| {
                    eval_zb_basis(knots, t).expect("quadrature node is inside domain")[i].exp()
                })
            })
            .collect();
        Self {
            knots: knots.clone(),
            normalizers,
        }
    }

    pub fn knots(&self) -> &KnotConfig {
        &self.knots
    }

    pub fn eval(&self, x: f64) -> Result<DVector<f64>> {
        let mut values = eval_zb_basis(&self.knots, x)?;
        for (value, normalizer) in values.iter_mut().zip(&self.normalizers) {
            *value = value.exp() / normalizer;
        }
        Ok(values)
    }
}

/// One-shot CB-spline basis values at `x`.
pub fn eval_cb_basis(knots: &KnotConfig, x: f64) -> Result<DVector<f64>> {
    CbBasis::new(knots).eval(x)
}
