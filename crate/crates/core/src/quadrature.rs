//! Fixed-order Gauss-Legendre quadrature over knot intervals.
//!
//! Every integrand in this crate is either a piecewise polynomial between
//! knots (Gram matrices, norms) or the exponential of one (density
//! normalizers). A fixed rule per interval therefore integrates the
//! polynomial case exactly and the exponential case to the tolerance the
//! contracts allow; no adaptive error control is involved, which keeps runs
//! bit-reproducible.

/// Nodes and weights of the n-point Gauss-Legendre rule on `[-1, 1]`.
///
/// Computed by Newton iteration on the Legendre recurrence; exact for
/// polynomials of degree `2n - 1`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "quadrature rule needs at least one node");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Tricomi-style initial guess for the i-th root (descending order).
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (value, derivative) = legendre_value_and_derivative(n, x);
            let step = value / derivative;
            x -= step;
            if step.abs() <= 1e-15 {
                break;
            }
        }
        // One clean evaluation at the converged node for the weight.
        let (_, slope) = legendre_value_and_derivative(n, x);
        let w = 2.0 / ((1.0 - x * x) * slope * slope);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

fn legendre_value_and_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p_prev = 1.0;
    let mut p = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for j in 2..=n {
        let jf = j as f64;
        let next = ((2.0 * jf - 1.0) * x * p - (jf - 1.0) * p_prev) / jf;
        p_prev = p;
        p = next;
    }
    let derivative = n as f64 * (x * p - p_prev) / (x * x - 1.0);
    (p, derivative)
}

/// Integrates `f` over `[lo, hi]` with an n-node rule.
pub fn integrate<F: FnMut(f64) -> f64>(lo: f64, hi: f64, nodes: usize, mut f: F) -> f64 {
    let (xs, ws) = gauss_legendre(nodes);
    let mid = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let mut acc = 0.0;
    for (x, w) in xs.iter().zip(&ws) {
        acc += w * f(mid + half * x);
    }
    acc * half
}

/// Integrates `f` over each consecutive pair of breakpoints and sums.
pub fn integrate_over_breaks<F: FnMut(f64) -> f64>(
    breaks: &[f64],
    nodes: usize,
    mut f: F,
) -> f64 {
    let (xs, ws) = gauss_legendre(nodes);
    let mut acc = 0.0;
    for pair in breaks.windows(2) {
        let mid = 0.5 * (pair[0] + pair[1]);
        let half = 0.5 * (pair[1] - pair[0]);
        let mut local = 0.0;
        for (x, w) in xs.iter().zip(&ws) {
            local += w * f(mid + half * x);
        }
        acc += local * half;
    }
    acc
}
