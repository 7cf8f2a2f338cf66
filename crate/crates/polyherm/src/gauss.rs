//! Polynomial-times-Gaussian symbolic calculus.
//!
//! A [`GaussPoly`] is an exact representation of `P(z, zb, xi) * exp(Q)`
//! where `P` is a [`TriPoly`] and `Q` a fixed quadratic exponent
//!
//! ```text
//! Q = c_zb*z*zb + c_zz*z^2 + c_bb*zb^2 + c_z*z + c_b*zb + c_xz*xi*z
//! ```
//!
//! Differentiation stays inside the class (`d(P e^Q) = (dP + P dQ) e^Q` with
//! `dQ` a polynomial), which is what makes iterated-derivative constructions
//! exact: no quadrature, no truncation, just coefficient arithmetic. Dividing
//! out the exponential factor recovers the polynomial part, and is only legal
//! against the identical exponent — anything else is a [`GaussError::QuadMismatch`].

use num_complex::Complex64;
use thiserror::Error;

use crate::poly::{TriPoly, Var};

/// Errors from kernel-carrying symbolic operations.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum GaussError {
    /// Attempt to divide by an exponential with a different exponent.
    #[error("exponential factors differ; cannot divide out the kernel")]
    QuadMismatch,
}

/// Quadratic exponent of a Gaussian factor, including a bilinear `xi*z` term
/// so shifts can stay formal through differentiation.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct QuadForm {
    /// coefficient of `z*zb`
    pub c_zb: Complex64,
    /// coefficient of `z^2`
    pub c_zz: Complex64,
    /// coefficient of `zb^2`
    pub c_bb: Complex64,
    /// coefficient of `z`
    pub c_z: Complex64,
    /// coefficient of `zb`
    pub c_b: Complex64,
    /// coefficient of `xi*z`
    pub c_xz: Complex64,
}

impl QuadForm {
    /// The kernel exponent `-nu*z*zb + alpha*z^2 + xi*z` that the whole
    /// family is built on (with `xi` formal).
    pub fn family_kernel(nu: f64, alpha: f64) -> Self {
        Self {
            c_zb: Complex64::new(-nu, 0.0),
            c_zz: Complex64::new(alpha, 0.0),
            c_xz: Complex64::new(1.0, 0.0),
            ..Self::default()
        }
    }

    /// Evaluate the exponent at numeric arguments (with `zb` free).
    pub fn eval_free(&self, z: Complex64, zb: Complex64, xi: Complex64) -> Complex64 {
        self.c_zb * z * zb
            + self.c_zz * z * z
            + self.c_bb * zb * zb
            + self.c_z * z
            + self.c_b * zb
            + self.c_xz * xi * z
    }

    /// `∂Q/∂z` as a polynomial.
    pub fn dz(&self) -> TriPoly {
        let mut p = TriPoly::monomial(0, 1, 0, self.c_zb);
        p = &p + &TriPoly::monomial(1, 0, 0, self.c_zz * 2.0);
        p = &p + &TriPoly::constant(self.c_z);
        &p + &TriPoly::monomial(0, 0, 1, self.c_xz)
    }

    /// `∂Q/∂zb` as a polynomial.
    pub fn dzb(&self) -> TriPoly {
        let mut p = TriPoly::monomial(1, 0, 0, self.c_zb);
        p = &p + &TriPoly::monomial(0, 1, 0, self.c_bb * 2.0);
        &p + &TriPoly::constant(self.c_b)
    }

    /// `∂Q/∂xi` as a polynomial.
    pub fn dxi(&self) -> TriPoly {
        TriPoly::monomial(1, 0, 0, self.c_xz)
    }
}

/// `P(z, zb, xi) * exp(Q)` with exact polynomial prefactor.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussPoly {
    pub pre: TriPoly,
    pub quad: QuadForm,
}

impl GaussPoly {
    /// The bare kernel `1 * exp(Q)`.
    pub fn kernel(quad: QuadForm) -> Self {
        Self {
            pre: TriPoly::one(),
            quad,
        }
    }

    pub fn new(pre: TriPoly, quad: QuadForm) -> Self {
        Self { pre, quad }
    }

    /// Exact partial derivative; the result shares the same exponent.
    pub fn diff(&self, v: Var) -> Self {
        let dq = match v {
            Var::Z => self.quad.dz(),
            Var::Zb => self.quad.dzb(),
            Var::Xi => self.quad.dxi(),
        };
        let pre = &self.pre.diff(v) + &(&self.pre * &dq);
        Self {
            pre,
            quad: self.quad,
        }
    }

    /// Multiply the prefactor by a polynomial.
    pub fn mul_poly(&self, p: &TriPoly) -> Self {
        Self {
            pre: &self.pre * p,
            quad: self.quad,
        }
    }

    /// Scale by a constant.
    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            pre: self.pre.scale(c),
            quad: self.quad,
        }
    }

    /// Subtract another object carrying the identical exponent.
    pub fn sub(&self, other: &Self) -> Result<Self, GaussError> {
        if self.quad != other.quad {
            return Err(GaussError::QuadMismatch);
        }
        Ok(Self {
            pre: &self.pre - &other.pre,
            quad: self.quad,
        })
    }

    /// Evaluate at a point of the plane (`zb` bound to `conj(z)`).
    pub fn eval(&self, z: Complex64, xi: Complex64) -> Complex64 {
        let zb = z.conj();
        self.pre.eval_free(z, zb, xi) * self.quad.eval_free(z, zb, xi).exp()
    }

    /// Divide out `exp(quad)`, recovering the polynomial prefactor. Errors
    /// unless the exponents match exactly.
    pub fn divide_kernel(&self, quad: &QuadForm) -> Result<TriPoly, GaussError> {
        if self.quad != *quad {
            return Err(GaussError::QuadMismatch);
        }
        Ok(self.pre.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn derivative_of_pure_kernel_brings_down_exponent_gradient() {
        // d/dz exp(-nu z zb) = (-nu zb) exp(-nu z zb)
        let quad = QuadForm {
            c_zb: c(-1.0, 0.0),
            ..QuadForm::default()
        };
        let g = GaussPoly::kernel(quad).diff(Var::Z);
        assert_eq!(g.quad, quad);
        assert_eq!(g.pre.num_terms(), 1);
        assert_eq!(g.pre.coeff(0, 1, 0), c(-1.0, 0.0));
    }

    #[test]
    fn first_iterate_on_family_kernel_gives_linear_form() {
        // -(d/dz) exp(-nu z zb + a z^2 + xi z) / kernel = nu zb - 2a z - xi
        let nu = 1.3;
        let a = -0.4;
        let quad = QuadForm::family_kernel(nu, a);
        let d = GaussPoly::kernel(quad).diff(Var::Z).scale(c(-1.0, 0.0));
        let p = d.divide_kernel(&quad).unwrap();
        assert_eq!(p.coeff(0, 1, 0), c(nu, 0.0));
        assert_eq!(p.coeff(1, 0, 0), c(2.0 * a, 0.0).scale(-1.0));
        assert_eq!(p.coeff(0, 0, 1), c(-1.0, 0.0));
        assert_eq!(p.num_terms(), 3);
    }

    #[test]
    fn divide_kernel_rejects_mismatched_exponent() {
        let a = GaussPoly::kernel(QuadForm::family_kernel(1.0, 0.5));
        let other = QuadForm::family_kernel(1.0, 0.25);
        assert_eq!(a.divide_kernel(&other), Err(GaussError::QuadMismatch));
    }

    #[test]
    fn symbolic_derivatives_match_numeric_directional_derivatives() {
        // For f(x, y) = g(z, zb) with z = x + iy:
        //   d/dx f = (d/dz + d/dzb) g,  d/dy f = i (d/dz - d/dzb) g.
        let quad = QuadForm {
            c_zb: c(-0.9, 0.0),
            c_zz: c(0.3, 0.1),
            c_bb: c(-0.05, 0.0),
            c_z: c(0.2, -0.4),
            c_b: c(-0.1, 0.0),
            c_xz: c(1.0, 0.0),
        };
        let mut pre = TriPoly::monomial(2, 1, 0, c(0.7, -0.2));
        pre = &pre + &TriPoly::monomial(0, 0, 1, c(1.1, 0.0));
        pre = &pre + &TriPoly::constant(c(-0.3, 0.5));
        let g = GaussPoly::new(pre, quad);

        let z0 = c(0.37, -0.61);
        let xi = c(0.15, 0.25);
        let h = 1e-6;
        let dz = g.diff(Var::Z);
        let dzb = g.diff(Var::Zb);

        let ddx = (g.eval(z0 + c(h, 0.0), xi) - g.eval(z0 - c(h, 0.0), xi)) / (2.0 * h);
        let sym_dx = dz.eval(z0, xi) + dzb.eval(z0, xi);
        assert!((ddx - sym_dx).norm() < 1e-7 * (1.0 + sym_dx.norm()));

        let ddy = (g.eval(z0 + c(0.0, h), xi) - g.eval(z0 - c(0.0, h), xi)) / (2.0 * h);
        let sym_dy = (dz.eval(z0, xi) - dzb.eval(z0, xi)) * c(0.0, 1.0);
        assert!((ddy - sym_dy).norm() < 1e-7 * (1.0 + sym_dy.norm()));

        let dxi = g.diff(Var::Xi);
        let ddxi = (g.eval(z0, xi + c(h, 0.0)) - g.eval(z0, xi - c(h, 0.0))) / (2.0 * h);
        let sym_dxi = dxi.eval(z0, xi);
        assert!((ddxi - sym_dxi).norm() < 1e-7 * (1.0 + sym_dxi.norm()));
    }
}
