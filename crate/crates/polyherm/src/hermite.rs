//! Classical Hermite polynomials, their rescalings, Hermite functions, and
//! the two-index complex Hermite family — the univariate/bivariate building
//! blocks that several constructions and checks lean on.
//!
//! Conventions:
//! * `hermite(n)` is the physicists' polynomial: `H_{n+1} = 2x H_n - 2n H_{n-1}`.
//! * `hermite_rescaled(tau, n)` satisfies `H^tau_{n+1} = 2 tau t H^tau_n -
//!   2 tau n H^tau_{n-1}`; for `tau > 0` this equals `tau^{n/2} H_n(sqrt(tau) t)`.
//! * `hermite_function(nu, n, t) = nu^{n/2} exp(-nu t^2/2) H_n(sqrt(nu) t)`.
//! * `complex_hermite(nu, m, n)` is the polynomial part of
//!   `(-1)^n exp(nu z zb) d^n/dz^n (z^m exp(-nu z zb))`; its leading term is
//!   `nu^n z^m zb^n` and `H_{1,1} = nu z zb - 1`.

use num_complex::Complex64;
use thiserror::Error;

use crate::gauss::{GaussPoly, QuadForm};
use crate::poly::{TriPoly, Var};

/// Errors from the univariate Hermite constructors.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum HermiteError {
    /// `hermite_rescaled` requires a strictly positive scale.
    #[error("rescaled Hermite polynomials require a strictly positive scale")]
    ScaleNotPositive,
}

/// Coefficients of the physicists' Hermite polynomial `H_n`, ascending powers.
pub fn hermite(n: u32) -> Vec<f64> {
    hermite_rescaled_any(1.0, n)
}

/// Coefficients of the rescaled polynomial `H^tau_n`, ascending powers.
/// Refuses `tau <= 0`: the rescaling is tied to the Gaussian weight
/// `exp(-tau t^2)` and the associated orthogonality, which need `tau > 0`.
pub fn hermite_rescaled(tau: f64, n: u32) -> Result<Vec<f64>, HermiteError> {
    if tau <= 0.0 {
        return Err(HermiteError::ScaleNotPositive);
    }
    Ok(hermite_rescaled_any(tau, n))
}

/// Same three-term recurrence without the sign restriction. The recurrence
/// produces a perfectly good polynomial for any real `tau`; only the weight
/// interpretation needs positivity. Internal constructions (the tensor
/// factorization over an indefinite direction) use this directly.
pub(crate) fn hermite_rescaled_any(tau: f64, n: u32) -> Vec<f64> {
    let mut prev = vec![1.0];
    if n == 0 {
        return prev;
    }
    let mut cur = vec![0.0, 2.0 * tau];
    for k in 1..n {
        // next = 2 tau t cur - 2 tau k prev
        let mut next = vec![0.0; k as usize + 2];
        for (p, &c) in cur.iter().enumerate() {
            next[p + 1] += 2.0 * tau * c;
        }
        for (p, &c) in prev.iter().enumerate() {
            next[p] -= 2.0 * tau * k as f64 * c;
        }
        prev = cur;
        cur = next;
    }
    cur
}

/// Evaluate `H_n(x)` at a complex point by the value recurrence (numerically
/// stabler than expanding coefficients for moderate `n`).
pub fn hermite_value(n: u32, x: Complex64) -> Complex64 {
    let mut prev = Complex64::new(1.0, 0.0);
    if n == 0 {
        return prev;
    }
    let mut cur = 2.0 * x;
    for k in 1..n {
        let next = 2.0 * x * cur - 2.0 * k as f64 * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `H_n` composed with a polynomial argument, via the same value recurrence
/// carried out on polynomials.
pub fn hermite_of_poly(n: u32, w: &TriPoly) -> TriPoly {
    let mut prev = TriPoly::one();
    if n == 0 {
        return prev;
    }
    let mut cur = w.scale(Complex64::new(2.0, 0.0));
    for k in 1..n {
        let next = &(w * &cur).scale(Complex64::new(2.0, 0.0))
            - &prev.scale(Complex64::new(2.0 * k as f64, 0.0));
        prev = cur;
        cur = next;
    }
    cur
}

/// The Hermite function `h^nu_n(t) = nu^{n/2} e^{-nu t^2 / 2} H_n(sqrt(nu) t)`.
pub fn hermite_function(nu: f64, n: u32, t: f64) -> Result<f64, HermiteError> {
    if nu <= 0.0 {
        return Err(HermiteError::ScaleNotPositive);
    }
    let s = nu.sqrt();
    let h = hermite_value(n, Complex64::new(s * t, 0.0)).re;
    Ok(s.powi(n as i32) * (-0.5 * nu * t * t).exp() * h)
}

/// Two-index complex Hermite polynomial `H_{m,n}` for the radial kernel
/// `exp(-nu z zb)`: the polynomial part of
/// `(-1)^n e^{nu z zb} d^n/dz^n (z^m e^{-nu z zb})`, computed exactly by
/// iterated symbolic differentiation.
pub fn complex_hermite(nu: f64, m: u32, n: u32) -> TriPoly {
    let quad = QuadForm {
        c_zb: Complex64::new(-nu, 0.0),
        ..QuadForm::default()
    };
    let mut g = GaussPoly::new(TriPoly::monomial(m, 0, 0, Complex64::new(1.0, 0.0)), quad);
    for _ in 0..n {
        g = g.diff(Var::Z);
    }
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    g.pre.scale(Complex64::new(sign, 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_hermite_polynomials_match_the_table() {
        assert_eq!(hermite(0), vec![1.0]);
        assert_eq!(hermite(1), vec![0.0, 2.0]);
        assert_eq!(hermite(2), vec![-2.0, 0.0, 4.0]);
        assert_eq!(hermite(3), vec![0.0, -12.0, 0.0, 8.0]);
    }

    #[test]
    fn rescaled_quadratic_and_scale_identity() {
        let tau = 0.7;
        let h2 = hermite_rescaled(tau, 2).unwrap();
        assert!((h2[0] - (-2.0 * tau)).abs() < 1e-15);
        assert_eq!(h2[1], 0.0);
        assert!((h2[2] - 4.0 * tau * tau).abs() < 1e-15);

        // H^tau_n(t) = tau^{n/2} H_n(sqrt(tau) t) for tau > 0
        let t: f64 = 0.83;
        for n in 0..8u32 {
            let coeffs = hermite_rescaled(tau, n).unwrap();
            let direct: f64 = coeffs
                .iter()
                .enumerate()
                .map(|(p, c)| c * t.powi(p as i32))
                .sum();
            let classical =
                tau.powf(n as f64 / 2.0) * hermite_value(n, Complex64::new(tau.sqrt() * t, 0.0)).re;
            assert!((direct - classical).abs() < 1e-10 * (1.0 + classical.abs()));
        }
    }

    #[test]
    fn rescaled_refuses_nonpositive_scale() {
        assert_eq!(
            hermite_rescaled(0.0, 3),
            Err(HermiteError::ScaleNotPositive)
        );
        assert_eq!(
            hermite_rescaled(-1.0, 3),
            Err(HermiteError::ScaleNotPositive)
        );
    }

    #[test]
    fn hermite_value_agrees_with_coefficients_at_complex_points() {
        let x = Complex64::new(0.3, -1.2);
        for n in 0..12u32 {
            let coeffs = hermite(n);
            let mut acc = Complex64::new(0.0, 0.0);
            let mut xp = Complex64::new(1.0, 0.0);
            for &c in &coeffs {
                acc += c * xp;
                xp *= x;
            }
            let v = hermite_value(n, x);
            assert!((acc - v).norm() < 1e-9 * (1.0 + v.norm()));
        }
    }

    #[test]
    fn hermite_of_poly_composes() {
        // H_2(z + 1) = 4(z+1)^2 - 2
        let w = &TriPoly::var_z() + &TriPoly::one();
        let h = hermite_of_poly(2, &w);
        assert_eq!(h.coeff(2, 0, 0), Complex64::new(4.0, 0.0));
        assert_eq!(h.coeff(1, 0, 0), Complex64::new(8.0, 0.0));
        assert_eq!(h.coeff(0, 0, 0), Complex64::new(2.0, 0.0));
    }

    #[test]
    fn hermite_function_normalization_points() {
        assert!((hermite_function(1.0, 0, 0.0).unwrap() - 1.0).abs() < 1e-15);
        // h^nu_1(t) = nu^{1/2} e^{-nu t^2/2} 2 sqrt(nu) t = 2 nu t e^{-nu t^2/2}
        let nu: f64 = 2.0;
        let t: f64 = 0.4;
        let expect = 2.0 * nu * t * (-0.5 * nu * t * t).exp();
        assert!((hermite_function(nu, 1, t).unwrap() - expect).abs() < 1e-14);
        assert_eq!(
            hermite_function(-1.0, 1, 0.5),
            Err(HermiteError::ScaleNotPositive)
        );
    }

    #[test]
    fn complex_hermite_base_cases() {
        let one = complex_hermite(1.7, 0, 0);
        assert_eq!(one.num_terms(), 1);
        assert_eq!(one.coeff(0, 0, 0), Complex64::new(1.0, 0.0));

        let zm = complex_hermite(0.9, 3, 0);
        assert_eq!(zm.num_terms(), 1);
        assert_eq!(zm.coeff(3, 0, 0), Complex64::new(1.0, 0.0));

        let nu = 1.3;
        let h11 = complex_hermite(nu, 1, 1);
        assert_eq!(h11.coeff(1, 1, 0), Complex64::new(nu, 0.0));
        assert_eq!(h11.coeff(0, 0, 0), Complex64::new(-1.0, 0.0));
        assert_eq!(h11.num_terms(), 2);
    }

    #[test]
    fn complex_hermite_leading_coefficient_is_nu_to_n() {
        let nu = 0.8;
        for (m, n) in [(2u32, 3u32), (4, 1), (0, 4), (3, 3)] {
            let h = complex_hermite(nu, m, n);
            let lead = h.coeff(m, n, 0);
            assert!((lead - Complex64::new(nu.powi(n as i32), 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn complex_hermite_diagonal_matches_laguerre_values() {
        // H_{n,n}(z, zb) at nu = 1 equals (-1)^n n! L_n(|z|^2); spot-check n = 2:
        // 2! * L_2(r) = r^2/1 - ... L_2(x) = (x^2 - 4x + 2)/2, so 2 L_2 = x^2 - 4x + 2.
        let h22 = complex_hermite(1.0, 2, 2);
        let z = Complex64::new(0.6, -0.3);
        let r = (z * z.conj()).re;
        let got = h22.eval(z, Complex64::new(0.0, 0.0)).re;
        let expect = r * r - 4.0 * r + 2.0;
        assert!((got - expect).abs() < 1e-12);
    }
}
