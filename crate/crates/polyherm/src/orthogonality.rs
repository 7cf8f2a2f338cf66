//! Gram matrices of the polynomial families against their natural Gaussian
//! weights, checked against closed-form norms.
//!
//! Each `gram_*` function builds the basis symbolically, forms every pairwise
//! product `B_m · conj(B_n)` exactly, realifies, and integrates with a
//! Gauss–Hermite rule of exact degree. The outcome is a [`GramReport`]
//! comparing the computed diagonal to the closed-form norms and bounding the
//! off-diagonal mass. Because the quadrature is exact for polynomials, any
//! deviation is rounding noise: tolerances here are set barely above machine
//! precision, not as convergence allowances.

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::constructors::build_recurrence_all;
use crate::params::{factorial, ParamSet};
use crate::poly::TriPoly;
use crate::quadrature::{integrate_plane_poly, PlaneGaussianSpec, QuadError};

/// Largest basis index accepted by the Gram builders. Beyond this the
/// closed-form norms overflow the dynamic range where a relative comparison
/// is meaningful.
pub const GRAM_MAX_N: u32 = 12;

const TOL_DIAG: f64 = 1e-9;
const TOL_GENERAL: f64 = 1e-8;

/// Errors from Gram-matrix construction.
#[derive(Debug, Error)]
pub enum GramError {
    /// Parameters outside the regime where the weight decays and the
    /// closed-form norms hold.
    #[error("parameters outside the validity regime: {0}")]
    RegimeViolation(&'static str),
    /// The two-parameter weight only produces orthogonality on the curve
    /// `4 alpha a b = a - b`; off-curve requests are refused.
    #[error("weight constraint 4*alpha*a*b = a - b violated (residual {residual:.3e})")]
    ConstraintViolated { residual: f64 },
    #[error(transparent)]
    Quad(#[from] QuadError),
}

/// Result of a Gram-matrix check.
///
/// `diag_computed` holds the real parts of the computed diagonal (imaginary
/// parts are rounding noise and are folded into the pass decision),
/// `max_offdiag` is the largest off-diagonal magnitude scaled by the
/// geometric mean of the two adjacent expected diagonals, and
/// `max_diag_rel_err` the worst relative diagonal deviation.
#[derive(Debug, Clone, Serialize)]
pub struct GramReport {
    #[serde(rename = "N")]
    pub n_max: u32,
    pub diag_expected: Vec<f64>,
    pub diag_computed: Vec<f64>,
    pub max_offdiag: f64,
    pub pass: bool,
    #[serde(skip)]
    pub max_diag_rel_err: f64,
    #[serde(skip)]
    pub matrix: Vec<Vec<Complex64>>,
}

impl GramReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialization cannot fail")
    }
}

/// Two-parameter weight descriptor for the general orthogonality relation.
///
/// The pair `(a, b)` must satisfy `4 alpha a b = a - b` with both entries
/// positive. The redundant descriptors `big_a`, `big_b`, `big_c` give the
/// same weight in complex coordinates,
/// `exp(-A |z|^2 - B (z^2 + zb^2) + 2 Re(C z) - a (Re xi)^2 - b (Im xi)^2)`,
/// and are validated against the real form in the tests.
#[derive(Debug, Clone, Copy)]
pub struct WeightAB {
    pub a: f64,
    pub b: f64,
    /// `|4 alpha a b - (a - b)|` at construction time.
    pub constraint_residual: f64,
    pub big_a: f64,
    pub big_b: f64,
    pub big_c: Complex64,
}

impl WeightAB {
    /// Describe the weight `exp(-a [(nu-2a)x - Re xi]^2 - b [(nu+2a)y + Im xi]^2)`
    /// for the given parameters. The constraint residual is recorded but not
    /// enforced here; [`gram_general`] refuses when it exceeds `1e-12`.
    pub fn new(p: &ParamSet, a: f64, b: f64) -> Self {
        let sm = p.nu - 2.0 * p.alpha;
        let sp = p.nu + 2.0 * p.alpha;
        let residual = (4.0 * p.alpha * a * b - (a - b)).abs();
        WeightAB {
            a,
            b,
            constraint_residual: residual,
            big_a: (a * sm * sm + b * sp * sp) / 2.0,
            big_b: (a * sm * sm - b * sp * sp) / 4.0,
            big_c: Complex64::new(a * sm * p.xi.re, b * sp * p.xi.im),
        }
    }

    /// The distinguished solution `a = 1/(nu-2alpha)`, `b = 1/(nu+2alpha)`,
    /// which reduces the weight to the basic one.
    pub fn balanced(p: &ParamSet) -> Self {
        Self::new(
            p,
            1.0 / (p.nu - 2.0 * p.alpha),
            1.0 / (p.nu + 2.0 * p.alpha),
        )
    }

    /// Evaluate the weight from the complex-coordinate descriptors; used to
    /// cross-validate `big_a`/`big_b`/`big_c` against the real form.
    pub fn eval_descriptor_form(&self, p: &ParamSet, x: f64, y: f64) -> f64 {
        let z = Complex64::new(x, y);
        let quad = -self.big_a * z.norm_sqr() - self.big_b * (z * z + z.conj() * z.conj()).re;
        let lin = 2.0 * (self.big_c * z).re;
        let shift = -self.a * p.xi.re * p.xi.re - self.b * p.xi.im * p.xi.im;
        (quad + lin + shift).exp()
    }
}

/// Compute the full Gram matrix of a (xi-free) basis against a plane
/// Gaussian weight with an extra constant multiplier. Entries for `m <= n`
/// are integrated exactly; the lower triangle is the conjugate mirror.
fn gram_matrix(
    basis: &[TriPoly],
    spec: &PlaneGaussianSpec,
    scale: f64,
    order: usize,
) -> Result<Vec<Vec<Complex64>>, QuadError> {
    let k = basis.len();
    let mut m = vec![vec![Complex64::new(0.0, 0.0); k]; k];
    for i in 0..k {
        for j in i..k {
            let prod = &basis[i] * &basis[j].conj_function();
            let v = integrate_plane_poly(&prod.realify(), spec, order)? * scale;
            m[i][j] = v;
            m[j][i] = v.conj();
        }
    }
    Ok(m)
}

pub(crate) fn finish_report(
    n_max: u32,
    diag_expected: Vec<f64>,
    matrix: Vec<Vec<Complex64>>,
    tol_diag: f64,
    tol_offdiag: f64,
) -> GramReport {
    let k = matrix.len();
    let mut diag_computed = Vec::with_capacity(k);
    let mut max_diag_rel_err = 0.0f64;
    for (i, row) in matrix.iter().enumerate() {
        diag_computed.push(row[i].re);
        let expected = diag_expected[i];
        let dev = (row[i] - Complex64::new(expected, 0.0)).norm() / expected.abs();
        max_diag_rel_err = max_diag_rel_err.max(dev);
    }
    let mut max_offdiag = 0.0f64;
    for i in 0..k {
        for j in 0..k {
            if i != j {
                // sqrt before multiplying: the diagonals themselves can sit
                // near the top of the f64 range
                let scale = diag_expected[i].sqrt() * diag_expected[j].sqrt();
                max_offdiag = max_offdiag.max(matrix[i][j].norm() / scale);
            }
        }
    }
    let pass = max_diag_rel_err <= tol_diag && max_offdiag <= tol_offdiag;
    GramReport {
        n_max,
        diag_expected,
        diag_computed,
        max_offdiag,
        pass,
        max_diag_rel_err,
        matrix,
    }
}

/// Build the xi-free family `I_0 .. I_N` with xi substituted numerically.
fn substituted_basis(p: &ParamSet, n_max: u32) -> Vec<TriPoly> {
    build_recurrence_all(p, n_max)
        .into_iter()
        .map(|f| f.substitute_xi(p.xi))
        .collect()
}

/// Gram matrix of `I_0 .. I_N` (xi = 0) against the basic weight
/// `exp(-(nu-2alpha) x^2 - (nu+2alpha) y^2)`.
///
/// Requires `nu > 0` and `2|alpha| < nu`; the closed-form norms are
/// `pi nu^n n! / sqrt(nu^2 - 4 alpha^2)`.
pub fn gram_basic(nu: f64, alpha: f64, n_max: u32) -> Result<GramReport, GramError> {
    if !(nu > 0.0) || 2.0 * alpha.abs() >= nu {
        return Err(GramError::RegimeViolation("need nu > 0 and 2|alpha| < nu"));
    }
    if n_max > GRAM_MAX_N {
        return Err(GramError::RegimeViolation("basis index exceeds GRAM_MAX_N"));
    }
    let p = ParamSet::new(nu, alpha, Complex64::new(0.0, 0.0));
    let basis = substituted_basis(&p, n_max);
    let spec = PlaneGaussianSpec::centered(nu - 2.0 * alpha, nu + 2.0 * alpha);
    let order = 2 * n_max as usize + 8;
    let matrix = gram_matrix(&basis, &spec, 1.0, order)?;
    let disc = (nu * nu - 4.0 * alpha * alpha).sqrt();
    let diag: Vec<f64> = (0..=n_max)
        .map(|n| std::f64::consts::PI * nu.powi(n as i32) * factorial(n) / disc)
        .collect();
    Ok(finish_report(n_max, diag, matrix, TOL_DIAG, TOL_DIAG))
}

/// Gram matrix of `I_0 .. I_N` (arbitrary xi) against the two-parameter
/// weight `exp(-a [(nu-2alpha)x - Re xi]^2 - b [(nu+2alpha)y + Im xi]^2)`.
///
/// The pair must sit on the constraint curve `4 alpha a b = a - b` with
/// `a, b > 0`. The norms are xi-independent:
/// `pi / (sqrt(ab) |nu^2-4alpha^2|) * ((a+b)/(2ab))^n * n!`, and at the
/// balanced pair `a = 1/(nu-2alpha)`, `b = 1/(nu+2alpha)` they reduce to the
/// basic ones.
pub fn gram_general(p: &ParamSet, w: &WeightAB, n_max: u32) -> Result<GramReport, GramError> {
    let sm = p.nu - 2.0 * p.alpha;
    let sp = p.nu + 2.0 * p.alpha;
    if sm == 0.0 || sp == 0.0 {
        return Err(GramError::RegimeViolation("need nu != ±2 alpha"));
    }
    if !(w.a > 0.0) || !(w.b > 0.0) {
        return Err(GramError::RegimeViolation("need a > 0 and b > 0"));
    }
    if n_max > GRAM_MAX_N {
        return Err(GramError::RegimeViolation("basis index exceeds GRAM_MAX_N"));
    }
    if w.constraint_residual > 1e-12 {
        return Err(GramError::ConstraintViolated {
            residual: w.constraint_residual,
        });
    }
    let basis = substituted_basis(p, n_max);
    // Expand -a(sm x - Re xi)^2 - b(sp y + Im xi)^2 into quadratic, linear,
    // and constant parts; the constant rides along as an overall scale.
    let spec = PlaneGaussianSpec {
        ax: w.a * sm * sm,
        by: w.b * sp * sp,
        cx: 2.0 * w.a * sm * p.xi.re,
        cy: -2.0 * w.b * sp * p.xi.im,
    };
    let scale = (-w.a * p.xi.re * p.xi.re - w.b * p.xi.im * p.xi.im).exp();
    let order = 2 * n_max as usize + 8;
    let matrix = gram_matrix(&basis, &spec, scale, order)?;
    let disc = (p.nu * p.nu - 4.0 * p.alpha * p.alpha).abs();
    let ratio = (w.a + w.b) / (2.0 * w.a * w.b);
    let front = std::f64::consts::PI / ((w.a * w.b).sqrt() * disc);
    let diag: Vec<f64> = (0..=n_max)
        .map(|n| front * ratio.powi(n as i32) * factorial(n))
        .collect();
    Ok(finish_report(n_max, diag, matrix, TOL_GENERAL, TOL_GENERAL))
}

/// Gram matrix of the holomorphic Hermite family `H_n(z)` against the
/// anisotropic weight `exp(-(1-theta) x^2 - (1/theta - 1) y^2)`, for
/// `0 < theta < 1`.
///
/// Norms: `sqrt(theta) pi / (1-theta) * (2(1+theta)/(1-theta))^n * n!`.
pub fn gram_holomorphic(theta: f64, n_max: u32) -> Result<GramReport, GramError> {
    if !(theta > 0.0 && theta < 1.0) {
        return Err(GramError::RegimeViolation("need 0 < theta < 1"));
    }
    if n_max > GRAM_MAX_N {
        return Err(GramError::RegimeViolation("basis index exceeds GRAM_MAX_N"));
    }
    let basis: Vec<TriPoly> = (0..=n_max)
        .map(|n| crate::hermite::hermite_of_poly(n, &TriPoly::var_z()))
        .collect();
    let spec = PlaneGaussianSpec::centered(1.0 - theta, 1.0 / theta - 1.0);
    let order = 2 * n_max as usize + 8;
    let matrix = gram_matrix(&basis, &spec, 1.0, order)?;
    let front = theta.sqrt() * std::f64::consts::PI / (1.0 - theta);
    let ratio = 2.0 * (1.0 + theta) / (1.0 - theta);
    let diag: Vec<f64> = (0..=n_max)
        .map(|n| front * ratio.powi(n as i32) * factorial(n))
        .collect();
    Ok(finish_report(n_max, diag, matrix, TOL_DIAG, TOL_DIAG))
}

/// Gram matrix of the degenerate family `I_n` at `nu = 0` (equivalently
/// `(i sqrt(alpha))^n H_n(i sqrt(alpha) z)`) against
/// `exp(-alpha (1/theta - 1) x^2 - alpha (1 - theta) y^2)`, for `alpha > 0`
/// and `0 < theta < 1`.
///
/// Norms: `sqrt(theta) pi / (alpha (1-theta)) * (2 alpha (1+theta)/(1-theta))^n * n!`.
pub fn gram_i0alpha(alpha: f64, theta: f64, n_max: u32) -> Result<GramReport, GramError> {
    if !(alpha > 0.0) {
        return Err(GramError::RegimeViolation("need alpha > 0"));
    }
    if !(theta > 0.0 && theta < 1.0) {
        return Err(GramError::RegimeViolation("need 0 < theta < 1"));
    }
    if n_max > GRAM_MAX_N {
        return Err(GramError::RegimeViolation("basis index exceeds GRAM_MAX_N"));
    }
    let p = ParamSet::new(0.0, alpha, Complex64::new(0.0, 0.0));
    let basis = substituted_basis(&p, n_max);
    let spec = PlaneGaussianSpec::centered(alpha * (1.0 / theta - 1.0), alpha * (1.0 - theta));
    let order = 2 * n_max as usize + 8;
    let matrix = gram_matrix(&basis, &spec, 1.0, order)?;
    let front = theta.sqrt() * std::f64::consts::PI / (alpha * (1.0 - theta));
    let ratio = 2.0 * alpha * (1.0 + theta) / (1.0 - theta);
    let diag: Vec<f64> = (0..=n_max)
        .map(|n| front * ratio.powi(n as i32) * factorial(n))
        .collect();
    Ok(finish_report(n_max, diag, matrix, TOL_DIAG, TOL_DIAG))
}
