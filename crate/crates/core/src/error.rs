use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid domain: lower bound {a} must be strictly below upper bound {b}")]
    InvalidDomain { a: f64, b: f64 },

    #[error("spline degree must be at least 1 for this space")]
    ZeroDegree,

    #[error("interior knots must be strictly increasing and finite (knot {index} breaks the order)")]
    KnotsNotIncreasing { index: usize },

    #[error("interior knot {value} lies outside the open domain ({a}, {b})")]
    KnotOutsideDomain { value: f64, a: f64, b: f64 },

    #[error("evaluation point {x} lies outside the domain [{a}, {b}]")]
    PointOutsideDomain { x: f64, a: f64, b: f64 },

    #[error("derivative order {order} is out of range; expected 1..={max}")]
    InvalidDerivativeOrder { order: usize, max: usize },

    #[error("penalty derivative order {order} must satisfy 1 <= order <= {max} for degree {degree}")]
    InvalidPenaltyOrder {
        order: usize,
        max: usize,
        degree: usize,
    },

    #[error("smoothing parameter alpha = {alpha} must lie strictly inside (0, 1)")]
    InvalidAlpha { alpha: f64 },

    #[error(
        "Schoenberg-Whitney condition fails: no strictly increasing subsequence u_i of the \
         abscissas interlaces the knots with lambda_i < u_i < lambda_(i+k+1), so the \
         collocation matrix is column-rank deficient and the fit has no unique minimizer"
    )]
    SchoenbergWhitney,

    #[error(
        "matrix is numerically degenerate: Cholesky pivot {pivot:.3e} fell below the \
         positive-definiteness threshold {threshold:.0e}"
    )]
    NotPositiveDefinite { pivot: f64, threshold: f64 },

    #[error("operands use different knot configurations")]
    ConfigMismatch,

    #[error("coefficient vector has length {found}, expected {expected}")]
    CoefficientLength { expected: usize, found: usize },

    #[error("input collection is empty")]
    EmptyInput,

    #[error("vectors must share one length: {what} has {found} entries, expected {expected}")]
    LengthMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("abscissas must be ascending (entry {index} decreases)")]
    AbscissasNotAscending { index: usize },

    #[error("weights must be strictly positive and finite (entry {index} is {value})")]
    InvalidWeight { index: usize, value: f64 },

    #[error("component index {index} is out of range for {len} components")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("at least {required} observations are needed, found {found}")]
    TooFewObservations { required: usize, found: usize },

    #[error("compositional part {index} is {value}; all parts must be strictly positive")]
    NonpositivePart { index: usize, value: f64 },

    #[error("value {value} lies outside the histogram range [{a}, {b}]")]
    ValueOutOfRange { value: f64, a: f64, b: f64 },

    #[error("histogram needs at least one class")]
    ZeroClasses,

    #[error("sample size must be at least 1")]
    ZeroObservations,

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}:{line}: {message}")]
    Table {
        path: String,
        line: u64,
        message: String,
    },

    #[error("{path}: table holds no data rows")]
    EmptyTable { path: String },
}

pub type Result<T> = std::result::Result<T, Error>;
