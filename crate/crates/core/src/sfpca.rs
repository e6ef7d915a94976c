//! Simplicial functional principal component analysis on compositional
//! splines.
//!
//! Through clr isometry the problem becomes a finite eigenproblem: with
//! centered coefficient rows `C` and ZB Gram matrix `Sigma = L L'`, the
//! symmetric matrix `L' (C'C) L` carries the variance structure. Its
//! eigenvalues are the variances along the components; eigenvectors map
//! back through `L^{-T}` to Sigma-orthonormal coefficient vectors. The
//! objective is a plain sum over observations, so eigenvalues carry no `1/N`
//! divisor; explained-variance fractions are divisor-invariant anyway.

use nalgebra::{DMatrix, DVector};

use crate::bayes::CompositionalSpline;
use crate::error::{Error, Result};
use crate::knots::KnotConfig;
use crate::linalg::{symmetric_eigen_descending, CholeskyFactor};
use crate::ortho::zb_gram;
use crate::zbspline::ZBSplineFn;

/// A fitted model: Bayes-space mean, components with their variances, and
/// the score matrix.
#[derive(Debug, Clone)]
pub struct SfpcaModel {
    knots: KnotConfig,
    mean: DVector<f64>,
    /// Variances along the components, descending, clamped at zero.
    eigenvalues: Vec<f64>,
    /// Column `kappa` holds the ZB coefficients of component `kappa`;
    /// Sigma-orthonormal, sign-fixed so each column's largest-magnitude
    /// entry is positive.
    components: DMatrix<f64>,
    /// Row `i`, column `kappa`: the projection of observation `i` onto
    /// component `kappa`.
    scores: DMatrix<f64>,
    sigma: DMatrix<f64>,
}

/// Coefficient-wise arithmetic mean of the clr splines: the Bayes-space mean
/// density under clr isometry.
pub fn bayes_mean(observations: &[CompositionalSpline]) -> Result<CompositionalSpline> {
    let first = observations.first().ok_or(Error::EmptyInput)?;
    let knots = first.knots().clone();
    let mut total = DVector::zeros(knots.dim_zero_integral());
    for observation in observations {
        if observation.knots() != &knots {
            return Err(Error::ConfigMismatch);
        }
        total += observation.clr_spline().coefficients();
    }
    total /= observations.len() as f64;
    Ok(CompositionalSpline::from_clr(ZBSplineFn::new(knots, total)?))
}

impl SfpcaModel {
    /// Fits the model to at least two observations sharing one knot
    /// configuration. All `g + k` components are kept, including those with
    /// zero variance, so projections reconstruct the observations exactly.
    pub fn fit(observations: &[CompositionalSpline]) -> Result<Self> {
        if observations.len() < 2 {
            return Err(Error::TooFewObservations {
                required: 2,
                found: observations.len(),
            });
        }
        let mean_density = bayes_mean(observations)?;
        let knots = mean_density.knots().clone();
        let mean = mean_density.clr_spline().coefficients().clone();
        let dim = knots.dim_zero_integral();
        let n = observations.len();

        let mut centered = DMatrix::zeros(n, dim);
        for (row, observation) in observations.iter().enumerate() {
            let deviation = observation.clr_spline().coefficients() - &mean;
            centered.set_row(row, &deviation.transpose());
        }

        let sigma = zb_gram(&knots)?;
        let factor = CholeskyFactor::new(sigma.matrix())?;
        let lower = factor.lower();
        let whitened = &centered * lower;
        let cross = whitened.transpose() * &whitened;
        let cross = (&cross + cross.transpose()) * 0.5;
        let (raw_values, vectors) = symmetric_eigen_descending(cross);

        // components = L^{-T} vectors, columnwise; scores = whitened * vectors
        let mut components = DMatrix::zeros(dim, dim);
        for kappa in 0..dim {
            let column = factor.solve_lower_transpose(&vectors.column(kappa).into_owned());
            components.set_column(kappa, &column);
        }
        let mut scores = whitened * &vectors;

        // deterministic orientation: largest-magnitude coefficient positive
        for kappa in 0..dim {
            let column = components.column(kappa);
            let mut leading = 0.0f64;
            for &value in column.iter() {
                if value.abs() > leading.abs() {
                    leading = value;
                }
            }
            if leading < 0.0 {
                components.column_mut(kappa).neg_mut();
                scores.column_mut(kappa).neg_mut();
            }
        }

        let eigenvalues = raw_values.into_iter().map(|v| v.max(0.0)).collect();
        Ok(Self {
            knots,
            mean,
            eigenvalues,
            components,
            scores,
            sigma: sigma.matrix().clone(),
        })
    }

    pub fn knots(&self) -> &KnotConfig {
        &self.knots
    }

    pub fn mean_coefficients(&self) -> &DVector<f64> {
        &self.mean
    }

    /// The Bayes-space mean as a density.
    pub fn mean_density(&self) -> CompositionalSpline {
        CompositionalSpline::from_clr(
            ZBSplineFn::new(self.knots.clone(), self.mean.clone())
                .expect("mean length fixed at fit time"),
        )
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn num_components(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn scores(&self) -> &DMatrix<f64> {
        &self.scores
    }

    pub fn gram(&self) -> &DMatrix<f64> {
        &self.sigma
    }

    /// ZB coefficients of component `kappa`.
    pub fn component(&self, kappa: usize) -> Result<ZBSplineFn> {
        if kappa >= self.num_components() {
            return Err(Error::IndexOutOfRange {
                index: kappa,
                len: self.num_components(),
            });
        }
        ZBSplineFn::new(self.knots.clone(), self.components.column(kappa).into_owned())
    }

    /// Explained-variance fractions, descending and summing to one; empty
    /// when the spectrum is entirely zero (identical inputs) rather than NaN.
    pub fn explained_variance(&self) -> Vec<f64> {
        let total: f64 = self.eigenvalues.iter().sum();
        if total <= 0.0 {
            return Vec::new();
        }
        self.eigenvalues.iter().map(|v| v / total).collect()
    }

    /// The mean perturbed along component `kappa` by `factor * sqrt(variance)`
    /// in both directions; visualizes the variation the component carries.
    pub fn perturb_mean(
        &self,
        kappa: usize,
        factor: f64,
    ) -> Result<(CompositionalSpline, CompositionalSpline)> {
        let component = self.component(kappa)?;
        let step = factor * self.eigenvalues[kappa].sqrt();
        let offset = component.coefficients() * step;
        let plus = ZBSplineFn::new(self.knots.clone(), &self.mean + &offset)?;
        let minus = ZBSplineFn::new(self.knots.clone(), &self.mean - &offset)?;
        Ok((
            CompositionalSpline::from_clr(plus),
            CompositionalSpline::from_clr(minus),
        ))
    }

    /// The centered projection of observation `i` along component `kappa`:
    /// the component powered by the score.
    pub fn project(&self, i: usize, kappa: usize) -> Result<CompositionalSpline> {
        if i >= self.scores.nrows() {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: self.scores.nrows(),
            });
        }
        let component = self.component(kappa)?;
        let z = component.coefficients() * self.scores[(i, kappa)];
        Ok(CompositionalSpline::from_clr(ZBSplineFn::new(
            self.knots.clone(),
            z,
        )?))
    }
}
