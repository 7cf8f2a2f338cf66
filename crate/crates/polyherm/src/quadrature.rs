//! Gauss–Hermite rules, exact plane integration of polynomial × Gaussian
//! integrands, and closed-form complex-shifted Gaussian moments.
//!
//! Everything orthogonality-related in this crate reduces to integrals of
//! polynomials against Gaussian weights. Those are computed by exact-degree
//! Gauss–Hermite quadrature — never adaptively — so a passing tolerance is a
//! statement about rounding, not about convergence. Non-polynomial entire
//! factors are deliberately out of scope here; the transform evaluators own
//! their convergence policy.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use thiserror::Error;

use crate::poly::TriPoly;

/// Errors from rule construction and plane integration.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum QuadError {
    /// Scale not positive, or order outside `1..=256`, or a non-damping
    /// plane weight.
    #[error("quadrature domain error: scale must be positive and order in 1..=256")]
    BadDomain,
    /// The requested order cannot integrate the integrand's degree exactly;
    /// the routine refuses rather than return an inexact value.
    #[error("order {order} cannot integrate degree {degree} exactly")]
    OrderTooLow { order: usize, degree: u32 },
}

/// Nodes and weights for `∫ f(t) e^{-tau t^2} dt ≈ Σ w_i f(t_i)`.
///
/// Exact for polynomials of degree ≤ `2·order - 1`. Nodes are symmetric
/// about 0 and sorted ascending.
#[derive(Debug, Clone)]
pub struct QuadratureRule {
    pub tau: f64,
    pub order: usize,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl QuadratureRule {
    /// `Σ w_i f(t_i)`.
    pub fn integrate<F: FnMut(f64) -> Complex64>(&self, mut f: F) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (&t, &w) in self.nodes.iter().zip(&self.weights) {
            acc += w * f(t);
        }
        acc
    }
}

/// Orthonormal Hermite values `p~_0(x) … p~_{n}(x)` for the weight
/// `e^{-x^2}`: `p~_0 = pi^{-1/4}`, `p~_{k+1} = x sqrt(2/(k+1)) p~_k -
/// sqrt(k/(k+1)) p~_{k-1}`.
fn orthonormal_values(n: usize, x: f64) -> Vec<f64> {
    let mut v = Vec::with_capacity(n + 1);
    v.push(std::f64::consts::PI.powf(-0.25));
    if n == 0 {
        return v;
    }
    v.push(x * (2.0f64).sqrt() * v[0]);
    for k in 1..n {
        let a = (2.0 / (k as f64 + 1.0)).sqrt();
        let b = (k as f64 / (k as f64 + 1.0)).sqrt();
        let next = x * a * v[k] - b * v[k - 1];
        v.push(next);
    }
    v
}

/// Nodes and weights for the standard weight `e^{-x^2}`.
///
/// Nodes come from the symmetric tridiagonal Jacobi matrix of the Hermite
/// recurrence (off-diagonal `sqrt(k/2)`), eigen-solved to machine precision,
/// then polished by one round of Newton iteration on the orthonormal
/// recurrence and symmetrized by averaging ± pairs.
fn standard_rule(n: usize) -> (Vec<f64>, Vec<f64>) {
    let jacobi = DMatrix::<f64>::from_fn(n, n, |r, c| {
        if r + 1 == c || c + 1 == r {
            (r.max(c) as f64 / 2.0).sqrt()
        } else {
            0.0
        }
    });
    let eigen = SymmetricEigen::new(jacobi);
    let mut nodes: Vec<f64> = eigen.eigenvalues.iter().copied().collect();
    nodes.sort_by(|a, b| a.partial_cmp(b).unwrap());

    // Newton polish: roots of p~_n, derivative p~_n' = sqrt(2n) p~_{n-1}.
    for x in nodes.iter_mut() {
        for _ in 0..3 {
            let v = orthonormal_values(n, *x);
            let deriv = (2.0 * n as f64).sqrt() * v[n - 1];
            if deriv != 0.0 {
                *x -= v[n] / deriv;
            }
        }
    }

    // Symmetrize: average ± pairs; odd order pins the middle node at 0.
    for i in 0..n / 2 {
        let m = 0.5 * (nodes[i] - nodes[n - 1 - i]);
        nodes[i] = m;
        nodes[n - 1 - i] = -m;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }

    // Golub–Welsch weights via the Christoffel identity
    // w_i = 1 / Σ_{k<n} p~_k(x_i)^2, then symmetrized the same way.
    let mut weights: Vec<f64> = nodes
        .iter()
        .map(|&x| {
            let v = orthonormal_values(n - 1, x);
            1.0 / v.iter().map(|p| p * p).sum::<f64>()
        })
        .collect();
    for i in 0..n / 2 {
        let m = 0.5 * (weights[i] + weights[n - 1 - i]);
        weights[i] = m;
        weights[n - 1 - i] = m;
    }
    (nodes, weights)
}

/// Build the Gauss–Hermite rule for the weight `e^{-tau t^2}`.
///
/// The standard-weight rule depends only on the order, and the eigensolve
/// behind it dominates the cost of every quadrature in this crate, so it is
/// memoized per thread; the scale is applied to a copy.
pub fn gauss_hermite(tau: f64, order: usize) -> Result<QuadratureRule, QuadError> {
    use std::cell::RefCell;
    use std::collections::HashMap;
    if !(tau > 0.0) || order == 0 || order > 256 {
        return Err(QuadError::BadDomain);
    }
    type Rule = (Vec<f64>, Vec<f64>);
    thread_local! {
        static RULES: RefCell<HashMap<usize, Rule>> = RefCell::new(HashMap::new());
    }
    let (mut nodes, mut weights) = RULES.with(|cache| {
        cache
            .borrow_mut()
            .entry(order)
            .or_insert_with(|| standard_rule(order))
            .clone()
    });

    // Rescale from e^{-x^2} to e^{-tau t^2}: t = x / sqrt(tau).
    let s = tau.sqrt();
    for x in nodes.iter_mut() {
        *x /= s;
    }
    for w in weights.iter_mut() {
        *w /= s;
    }
    Ok(QuadratureRule {
        tau,
        order,
        nodes,
        weights,
    })
}

/// Planar Gaussian weight `exp(-ax x^2 - by y^2 + cx x + cy y)` with
/// `ax, by > 0`. The linear terms are handled exactly by completing the
/// square, so the weight never needs to be evaluated.
#[derive(Debug, Clone, Copy)]
pub struct PlaneGaussianSpec {
    pub ax: f64,
    pub by: f64,
    pub cx: f64,
    pub cy: f64,
}

impl PlaneGaussianSpec {
    pub fn centered(ax: f64, by: f64) -> Self {
        Self {
            ax,
            by,
            cx: 0.0,
            cy: 0.0,
        }
    }
}

/// `∫∫ f(x,y) exp(-ax x^2 - by y^2 + cx x + cy y) dx dy` for a realified
/// polynomial `f`, by tensor-product Gauss–Hermite of exact degree.
///
/// Requires `order ≥ ceil((deg f + 1)/2) + 2`; refuses with
/// [`QuadError::OrderTooLow`] otherwise. Summation runs inner-x then
/// outer-y, ascending node index, so results are bit-reproducible.
pub fn integrate_plane_poly(
    f: &TriPoly,
    spec: &PlaneGaussianSpec,
    order: usize,
) -> Result<Complex64, QuadError> {
    if !(spec.ax > 0.0) || !(spec.by > 0.0) {
        return Err(QuadError::BadDomain);
    }
    let degree = f.total_degree().unwrap_or(0);
    let needed = (degree as usize + 1).div_ceil(2) + 2;
    if order < needed {
        return Err(QuadError::OrderTooLow { order, degree });
    }
    let rx = gauss_hermite(spec.ax, order)?;
    let ry = gauss_hermite(spec.by, order)?;
    let x0 = spec.cx / (2.0 * spec.ax);
    let y0 = spec.cy / (2.0 * spec.by);
    let scale = (spec.cx * spec.cx / (4.0 * spec.ax) + spec.cy * spec.cy / (4.0 * spec.by)).exp();
    let mut acc = Complex64::new(0.0, 0.0);
    for (yi, wy) in ry.nodes.iter().zip(&ry.weights) {
        let mut row = Complex64::new(0.0, 0.0);
        for (xj, wx) in rx.nodes.iter().zip(&rx.weights) {
            row += *wx * f.eval_xy(xj + x0, yi + y0);
        }
        acc += *wy * row;
    }
    Ok(acc * scale)
}

/// Closed-form moments `M_n = ∫ t^n exp(-(t-c)^2/(4 alpha)) dt` for a
/// complex shift `c`, by the recurrence `M_0 = 2 sqrt(pi alpha)`,
/// `M_1 = c M_0`, `M_n = c M_{n-1} + 2 alpha (n-1) M_{n-2}`.
///
/// Normalized by `M_0`, the moments reproduce the family's three-term
/// recurrence in the shift variable — evaluating at `c = I_1(z)` yields
/// `I_n(z)` exactly, which is what makes the real-line integral
/// representation a closed-form (quadrature-free) evaluator.
pub fn gaussian_moment(c: Complex64, alpha: f64, n: u32) -> Result<Complex64, QuadError> {
    if !(alpha > 0.0) {
        return Err(QuadError::BadDomain);
    }
    let m0 = Complex64::new(2.0 * (std::f64::consts::PI * alpha).sqrt(), 0.0);
    if n == 0 {
        return Ok(m0);
    }
    let mut prev = m0;
    let mut cur = c * m0;
    for k in 2..=n {
        let next = c * cur + 2.0 * alpha * (k - 1) as f64 * prev;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}
