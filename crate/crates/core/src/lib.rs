//! Compositional splines for probability density functions.
//!
//! Densities on a bounded interval carry relative information only, which
//! the centered log-ratio (clr) transform maps to ordinary square-integrable
//! functions constrained to integrate to zero. This crate builds spline
//! bases that live inside that constraint (ZB-splines, differences of
//! consecutive unit-integral M-splines), fits penalized smoothing splines to
//! discrete clr data, orthonormalizes the basis, maps results back to
//! densities (CB-splines), and runs simplicial functional PCA on collections
//! of fitted densities.
//!
//! Module map:
//! - [`knots`], [`bspline`]: knot handling, B/M-spline evaluation,
//!   collocation and Gram matrices, derivative reduction.
//! - [`zbspline`]: the zero-integral spline space, its basis, and the
//!   coefficient map back to the B-basis.
//! - [`smoothing`]: penalized least squares on clr data.
//! - [`ortho`]: Cholesky-based orthonormalization of the ZB-basis.
//! - [`bayes`]: clr transforms, perturbation/powering/inner product, and
//!   compositional spline densities.
//! - [`sfpca`]: simplicial functional principal component analysis.
//! - [`ingest`]: histogram construction, zero imputation, and tabular I/O.

pub mod bayes;
pub mod bspline;
pub mod error;
pub mod ingest;
pub mod knots;
pub mod linalg;
pub mod ortho;
pub mod quadrature;
pub mod sfpca;
pub mod smoothing;
pub mod zbspline;

pub use bayes::{CompositionalSpline, DiscreteComposition};
pub use bspline::{BSplineFn, GramMatrix};
pub use error::{Error, Result};
pub use ingest::HistogramData;
pub use knots::{Domain, KnotConfig};
pub use ortho::OrthoBasis;
pub use sfpca::SfpcaModel;
pub use smoothing::{ClrSample, SmoothingParams};
pub use zbspline::{CoeffMap, SplineRecord, ZBSplineFn};
