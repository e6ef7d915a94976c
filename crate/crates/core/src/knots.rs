//! Knot sequences with coincident boundary knots.
//!
//! A spline space on `[a, b]` is described by its degree `k` and `g` strictly
//! increasing interior knots. The extended knot vector repeats each boundary
//! `k + 1` times, which clamps the basis at the endpoints and makes the
//! dimension bookkeeping (`g + k + 1` B-splines, `g + k` zero-integral
//! splines) uniform across modules.

use crate::error::{Error, Result};

/// Bounded support `[a, b]` of the densities and splines.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Domain {
    a: f64,
    b: f64,
}

impl Domain {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(Error::InvalidDomain { a, b });
        }
        Ok(Self { a, b })
    }

    pub fn lower(&self) -> f64 {
        self.a
    }

    pub fn upper(&self) -> f64 {
        self.b
    }

    /// Support length, the `eta` that scales the uniform density `1/eta`.
    pub fn length(&self) -> f64 {
        self.b - self.a
    }

    pub fn contains(&self, x: f64) -> bool {
        self.a <= x && x <= self.b
    }
}

/// A degree together with interior knots and the coincident extended knot
/// vector derived from them.
#[derive(Debug, Clone, PartialEq)]
pub struct KnotConfig {
    degree: usize,
    domain: Domain,
    interior: Vec<f64>,
    /// `a` repeated `degree + 1` times, the interior knots, then `b`
    /// repeated `degree + 1` times; length `g + 2k + 2`.
    extended: Vec<f64>,
}

impl KnotConfig {
    /// Builds the extended knot vector for a degree-`k` spline space, `k >= 1`.
    ///
    /// Interior knots must be strictly increasing and lie strictly inside the
    /// domain. Degree 0 is rejected here; reduced-degree views for derivative
    /// and Gram computations come from [`KnotConfig::reduced`].
    pub fn new(degree: usize, interior: Vec<f64>, domain: Domain) -> Result<Self> {
        if degree == 0 {
            return Err(Error::ZeroDegree);
        }
        Self::build(degree, interior, domain)
    }

    fn build(degree: usize, interior: Vec<f64>, domain: Domain) -> Result<Self> {
        for (index, value) in interior.iter().enumerate() {
            if !value.is_finite() || (index > 0 && interior[index - 1] >= *value) {
                return Err(Error::KnotsNotIncreasing { index });
            }
            if *value <= domain.lower() || *value >= domain.upper() {
                return Err(Error::KnotOutsideDomain {
                    value: *value,
                    a: domain.lower(),
                    b: domain.upper(),
                });
            }
        }
        let mut extended = Vec::with_capacity(interior.len() + 2 * degree + 2);
        extended.extend(std::iter::repeat(domain.lower()).take(degree + 1));
        extended.extend_from_slice(&interior);
        extended.extend(std::iter::repeat(domain.upper()).take(degree + 1));
        Ok(Self {
            degree,
            domain,
            interior,
            extended,
        })
    }

    /// The same breakpoints at degree `k - l`, as used by the `l`-th
    /// derivative of a degree-`k` spline. `l = k` yields the piecewise
    /// constant space.
    pub fn reduced(&self, l: usize) -> Result<Self> {
        if l > self.degree {
            return Err(Error::InvalidDerivativeOrder {
                order: l,
                max: self.degree,
            });
        }
        Self::build(self.degree - l, self.interior.clone(), self.domain)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    /// Number of interior knots `g`.
    pub fn num_interior(&self) -> usize {
        self.interior.len()
    }

    pub fn interior(&self) -> &[f64] {
        &self.interior
    }

    pub fn extended(&self) -> &[f64] {
        &self.extended
    }

    /// Dimension of the full spline space, `g + k + 1`.
    pub fn dim_spline(&self) -> usize {
        self.interior.len() + self.degree + 1
    }

    /// Dimension of the zero-integral subspace, `g + k`.
    pub fn dim_zero_integral(&self) -> usize {
        self.interior.len() + self.degree
    }

    /// Support length of basis function `j`, the knot span
    /// `lambda_(j+k+1) - lambda_j` in extended-vector indexing.
    pub fn span(&self, j: usize) -> f64 {
        self.extended[j + self.degree + 1] - self.extended[j]
    }

    /// Distinct knots `a, lambda_1, .., lambda_g, b`; the integration
    /// breakpoints between which every spline is a single polynomial.
    pub fn breakpoints(&self) -> Vec<f64> {
        let mut breaks = Vec::with_capacity(self.interior.len() + 2);
        breaks.push(self.domain.lower());
        breaks.extend_from_slice(&self.interior);
        breaks.push(self.domain.upper());
        breaks
    }
}
