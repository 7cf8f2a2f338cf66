//! Parameter bundle shared by every construction and check.
//!
//! A family instance is fixed by the real pair `(nu, alpha)` of the Gaussian
//! kernel `exp(-nu*z*conj(z) + alpha*z^2 + xi*z)` together with the complex
//! shift `xi`. The polynomials themselves treat `xi` as a third formal
//! variable; the numeric `xi` stored here is used whenever a check needs a
//! concrete shift (substitution, quadrature, transforms).

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Parameters `(nu, alpha, xi)` of one polynomial family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParamSet {
    /// Coefficient of `-z*conj(z)` in the kernel exponent.
    pub nu: f64,
    /// Coefficient of `z^2` in the kernel exponent.
    pub alpha: f64,
    /// Numeric value substituted for the formal shift variable when needed.
    pub xi: Complex64,
}

impl ParamSet {
    /// Family with a concrete complex shift.
    pub fn new(nu: f64, alpha: f64, xi: Complex64) -> Self {
        Self { nu, alpha, xi }
    }

    /// Family with zero shift.
    pub fn unshifted(nu: f64, alpha: f64) -> Self {
        Self::new(nu, alpha, Complex64::new(0.0, 0.0))
    }

    /// True when `alpha != 0`; required by the constructions that divide by
    /// `alpha` or take its square root (explicit Hermite form, component
    /// expansion, real-line integral representation).
    pub fn is_alpha_nonzero(&self) -> bool {
        self.alpha != 0.0
    }

    /// True when `2|alpha| < nu`; the regime in which the planar Gaussian
    /// weight decays in every direction (orthogonality, plane transforms).
    pub fn is_subcritical(&self) -> bool {
        2.0 * self.alpha.abs() < self.nu
    }

    /// True when `nu != 2*alpha` and `nu != -2*alpha`; the tensor
    /// factorization needs both real directions non-degenerate.
    pub fn is_nondegenerate(&self) -> bool {
        self.nu != 2.0 * self.alpha && self.nu != -2.0 * self.alpha
    }
}

/// Square root of a real number as a complex value, with the branch used
/// everywhere in this crate for negative `alpha`: `sqrt(a) = i*sqrt(|a|)`
/// when `a < 0`.
pub fn real_sqrt_complex(a: f64) -> Complex64 {
    if a >= 0.0 {
        Complex64::new(a.sqrt(), 0.0)
    } else {
        Complex64::new(0.0, (-a).sqrt())
    }
}

/// `i^k` without rounding (cycle of four).
pub fn i_pow(k: u32) -> Complex64 {
    match k % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// `(-i)^k` without rounding.
pub fn neg_i_pow(k: u32) -> Complex64 {
    i_pow(k).conj()
}

/// `n!` as `f64`.
pub fn factorial(n: u32) -> f64 {
    (1..=n as u64).map(|k| k as f64).product()
}

/// Binomial coefficient `C(n, k)` as `f64`.
pub fn binomial(n: u32, k: u32) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0;
    for j in 0..k {
        acc = acc * (n - j) as f64 / (j + 1) as f64;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn predicates_split_parameter_space() {
        let p = ParamSet::unshifted(1.0, 0.2);
        assert!(p.is_alpha_nonzero());
        assert!(p.is_subcritical());
        assert!(p.is_nondegenerate());

        let q = ParamSet::unshifted(1.0, 0.5);
        assert!(!q.is_subcritical()); // 2*0.5 == 1 is not < 1
        assert!(!q.is_nondegenerate());

        let r = ParamSet::unshifted(1.0, 0.0);
        assert!(!r.is_alpha_nonzero());
        assert!(r.is_subcritical());
        assert!(r.is_nondegenerate());

        let s = ParamSet::unshifted(1.0, -0.5);
        assert!(!s.is_nondegenerate());
    }

    #[test]
    fn sqrt_branch_is_upper_half_plane() {
        assert_eq!(real_sqrt_complex(4.0), Complex64::new(2.0, 0.0));
        assert_eq!(real_sqrt_complex(-4.0), Complex64::new(0.0, 2.0));
        assert_eq!(real_sqrt_complex(0.0), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn i_powers_cycle() {
        assert_eq!(i_pow(0), Complex64::new(1.0, 0.0));
        assert_eq!(i_pow(1), Complex64::new(0.0, 1.0));
        assert_eq!(i_pow(2), Complex64::new(-1.0, 0.0));
        assert_eq!(i_pow(3), Complex64::new(0.0, -1.0));
        assert_eq!(i_pow(7), Complex64::new(0.0, -1.0));
        assert_eq!(neg_i_pow(1), Complex64::new(0.0, -1.0));
        assert_eq!(neg_i_pow(2), Complex64::new(-1.0, 0.0));
        assert_eq!(neg_i_pow(3), Complex64::new(0.0, 1.0));
    }

    #[test]
    fn small_factorials_and_binomials() {
        assert_eq!(factorial(0), 1.0);
        assert_eq!(factorial(5), 120.0);
        assert_eq!(binomial(6, 2), 15.0);
        assert_eq!(binomial(4, 0), 1.0);
        assert_eq!(binomial(3, 5), 0.0);
    }
}
