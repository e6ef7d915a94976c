//! Orthonormalization of the oblique ZB-basis.
//!
//! The ZB Gram matrix factors as `Sigma = K' D M D K` through the
//! coefficient map, so no extra quadrature is needed. The transform is the
//! inverse lower Cholesky factor: with `Sigma = L L'`, the basis
//! `O(x) = L^{-1} Z(x)` has identity Gram and `Phi' Phi = Sigma^{-1}`.
//! Admissible transforms are not unique; fixing this one keeps outputs
//! reproducible across runs.

use nalgebra::{DMatrix, DVector};

use crate::bspline::{gram_matrix, GramMatrix};
use crate::error::{Error, Result};
use crate::knots::KnotConfig;
use crate::linalg::CholeskyFactor;
use crate::zbspline::{build_coeff_map, eval_zb_basis, ZBSplineFn};

/// Gram matrix of the ZB-basis, `Sigma = K' D M D K` with `M` the Gram of
/// the degree-`k` B-basis.
pub fn zb_gram(knots: &KnotConfig) -> Result<GramMatrix> {
    let gram = gram_matrix(knots, 0)?;
    let map = build_coeff_map(knots)?;
    let sigma = map.matrix().transpose() * gram.matrix() * map.matrix();
    let sigma = (&sigma + sigma.transpose()) * 0.5;
    Ok(GramMatrix::from_parts((knots.degree(), 0), sigma))
}

/// The canonical orthogonalizing transform for a positive definite Gram
/// matrix: the inverse of its lower Cholesky factor.
pub fn orthogonalizing_transform(sigma: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    Ok(CholeskyFactor::new(sigma)?.inverse_lower())
}

/// An orthonormal basis of the zero-integral spline space.
#[derive(Debug, Clone)]
pub struct OrthoBasis {
    knots: KnotConfig,
    sigma: GramMatrix,
    /// Lower-triangular transform with `phi * Sigma * phi' = I`.
    phi: DMatrix<f64>,
    /// Its inverse, the lower Cholesky factor of `Sigma`.
    phi_inverse: DMatrix<f64>,
}

impl OrthoBasis {
    pub fn new(knots: &KnotConfig) -> Result<Self> {
        let sigma = zb_gram(knots)?;
        let factor = sigma.cholesky()?;
        Ok(Self {
            knots: knots.clone(),
            sigma,
            phi: factor.inverse_lower(),
            phi_inverse: factor.lower().clone(),
        })
    }

    pub fn knots(&self) -> &KnotConfig {
        &self.knots
    }

    pub fn gram(&self) -> &GramMatrix {
        &self.sigma
    }

    pub fn transform(&self) -> &DMatrix<f64> {
        &self.phi
    }

    /// Values of the orthonormal basis functions at `x`; each is a linear
    /// combination of zero-integral splines, so all components integrate to
    /// zero and their Gram matrix is the identity.
    pub fn eval(&self, x: f64) -> Result<DVector<f64>> {
        Ok(&self.phi * eval_zb_basis(&self.knots, x)?)
    }

    /// Coefficients of a zero-integral spline in the orthonormal basis,
    /// `c = phi^{-T} z`; the squared coefficient norm equals the squared
    /// function norm.
    pub fn to_ortho_coefficients(&self, spline: &ZBSplineFn) -> Result<DVector<f64>> {
        if spline.knots() != &self.knots {
            return Err(Error::ConfigMismatch);
        }
        Ok(self.phi_inverse.transpose() * spline.coefficients())
    }

    /// Inverse of [`OrthoBasis::to_ortho_coefficients`].
    pub fn from_ortho_coefficients(&self, coefficients: &DVector<f64>) -> Result<ZBSplineFn> {
        ZBSplineFn::new(self.knots.clone(), self.phi.transpose() * coefficients)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knots::Domain;
    use crate::quadrature;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn linear_fig_config() -> KnotConfig {
        KnotConfig::new(1, vec![1.0, 2.0], Domain::new(0.0, 3.0).unwrap()).unwrap()
    }

    fn quadratic_fig_config() -> KnotConfig {
        KnotConfig::new(2, vec![1.0, 2.0, 3.0], Domain::new(0.0, 4.0).unwrap()).unwrap()
    }

    #[test]
    fn gram_matches_direct_quadrature() {
        let mut rng = StdRng::seed_from_u64(41);
        for _ in 0..10 {
            let k = rng.random_range(1..=3usize);
            let cfg = KnotConfig::new(
                k,
                vec![0.31, 0.67],
                Domain::new(0.0, 1.0).unwrap(),
            )
            .unwrap();
            let sigma = zb_gram(&cfg).unwrap();
            let dim = cfg.dim_zero_integral();
            for i in 0..dim {
                for j in 0..dim {
                    let direct = quadrature::integrate_over_breaks(&cfg.breakpoints(), k + 2, |x| {
                        let z = eval_zb_basis(&cfg, x).unwrap();
                        z[i] * z[j]
                    });
                    assert!((sigma.matrix()[(i, j)] - direct).abs() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn transform_of_identity_is_identity() {
        let phi = orthogonalizing_transform(&DMatrix::identity(3, 3)).unwrap();
        assert!((&phi - DMatrix::<f64>::identity(3, 3)).abs().max() < 1e-14);
    }

    #[test]
    fn diagonal_gram_inverts_square_roots() {
        let sigma = DMatrix::from_diagonal(&DVector::from_vec(vec![4.0, 9.0]));
        let phi = orthogonalizing_transform(&sigma).unwrap();
        assert!((phi[(0, 0)] - 0.5).abs() < 1e-15);
        assert!((phi[(1, 1)] - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(phi[(0, 1)], 0.0);
        assert_eq!(phi[(1, 0)], 0.0);
    }

    #[test]
    fn defining_identities_hold_on_random_gram_matrices() {
        let mut rng = StdRng::seed_from_u64(4);
        for _ in 0..50 {
            let n = rng.random_range(2..6usize);
            let seed = DMatrix::from_fn(n, n, |_, _| rng.random_range(-1.0..1.0));
            let sigma = &seed * seed.transpose() + DMatrix::identity(n, n) * 0.1;
            let phi = orthogonalizing_transform(&sigma).unwrap();
            let identity = DMatrix::<f64>::identity(n, n);
            assert!((&phi * &sigma * phi.transpose() - &identity).abs().max() < 1e-10);
            assert!((phi.transpose() * &phi * &sigma - &identity).abs().max() < 1e-10);
        }
    }

    #[test]
    fn basis_functions_are_orthonormal_with_zero_integral() {
        for cfg in [linear_fig_config(), quadratic_fig_config()] {
            let basis = OrthoBasis::new(&cfg).unwrap();
            let dim = cfg.dim_zero_integral();
            let nodes = cfg.degree() + 2;
            for i in 0..dim {
                let integral = quadrature::integrate_over_breaks(&cfg.breakpoints(), nodes, |x| {
                    basis.eval(x).unwrap()[i]
                });
                assert!(integral.abs() < 1e-12);
                for j in 0..dim {
                    let product =
                        quadrature::integrate_over_breaks(&cfg.breakpoints(), nodes, |x| {
                            let values = basis.eval(x).unwrap();
                            values[i] * values[j]
                        });
                    let expected = if i == j { 1.0 } else { 0.0 };
                    assert!((product - expected).abs() < 1e-10, "({i}, {j}): {product}");
                }
            }
        }
    }

    #[test]
    fn representations_agree_pointwise() {
        let cfg = quadratic_fig_config();
        let basis = OrthoBasis::new(&cfg).unwrap();
        let mut rng = StdRng::seed_from_u64(13);
        let z = DVector::from_fn(cfg.dim_zero_integral(), |_, _| rng.random_range(-4.0..4.0));
        let spline = ZBSplineFn::new(cfg.clone(), z).unwrap();
        let coeffs = basis.to_ortho_coefficients(&spline).unwrap();
        for _ in 0..100 {
            let x = rng.random_range(0.0..=4.0);
            let via_zb = spline.eval(x).unwrap();
            let via_ortho = basis.eval(x).unwrap().dot(&coeffs);
            assert!((via_zb - via_ortho).abs() < 1e-10);
        }
    }

    #[test]
    fn coefficient_round_trip_and_parseval() {
        let cfg = linear_fig_config();
        let basis = OrthoBasis::new(&cfg).unwrap();
        let mut rng = StdRng::seed_from_u64(8);
        for _ in 0..50 {
            let z = DVector::from_fn(cfg.dim_zero_integral(), |_, _| rng.random_range(-5.0..5.0));
            let spline = ZBSplineFn::new(cfg.clone(), z.clone()).unwrap();
            let coeffs = basis.to_ortho_coefficients(&spline).unwrap();
            let back = basis.from_ortho_coefficients(&coeffs).unwrap();
            assert!((back.coefficients() - &z).abs().max() < 1e-12);
            // squared coefficient norm against the quadrature norm of the spline
            let direct_norm =
                quadrature::integrate_over_breaks(&cfg.breakpoints(), cfg.degree() + 2, |x| {
                    spline.eval(x).unwrap().powi(2)
                });
            assert!((coeffs.norm_squared() - direct_norm).abs() < 1e-8 * direct_norm.max(1.0));
        }
        let zero = ZBSplineFn::zero(cfg.clone()).unwrap();
        assert!(basis.to_ortho_coefficients(&zero).unwrap().abs().max() == 0.0);
    }

    #[test]
    fn rejects_mismatched_configurations() {
        let basis = OrthoBasis::new(&linear_fig_config()).unwrap();
        let other = ZBSplineFn::zero(quadratic_fig_config()).unwrap();
        assert!(matches!(
            basis.to_ortho_coefficients(&other),
            Err(Error::ConfigMismatch)
        ));
    }
}
