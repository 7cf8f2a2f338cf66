//! Six independent constructions of the polynomial family `I_n(z, zb | xi)`
//! attached to the Gaussian kernel `exp(-nu z zb + alpha z^2 + xi z)`.
//!
//! The family is defined by the Rodrigues-type formula
//!
//! ```text
//! I_n = (-1)^n exp(nu z zb - alpha z^2 - xi z) d^n/dz^n exp(-nu z zb + alpha z^2 + xi z)
//! ```
//!
//! and equivalently by the three-term recurrence `I_{n+1} = I_1 I_n + 2 alpha n
//! I_{n-1}` with `I_0 = 1`, `I_1 = nu zb - 2 alpha z - xi`. The recurrence
//! route is the canonical oracle: it is defined for every parameter choice
//! (including `alpha = 0` and `nu = 0`) and uses only exact ring operations.
//! Every other route is independently derived and must reproduce it — that
//! cross-agreement is the backbone of the test suite.
//!
//! Routes and their domains:
//!
//! | route                    | domain            |
//! |--------------------------|-------------------|
//! | [`build_recurrence`]     | all parameters    |
//! | [`build_operational`]    | all parameters    |
//! | [`build_rodrigues`]      | all parameters    |
//! | [`build_rodrigues_second`] | `alpha != 0`    |
//! | [`build_explicit_hermite`] | `alpha != 0`    |
//! | [`build_tensor`]         | `nu != ±2 alpha`, numeric shift |
//!
//! The polynomials keep the shift `xi` as a third formal variable except in
//! the tensor route, whose real-direction shifts `Re(xi)/(nu-2alpha)` are not
//! polynomial in `xi`; that route substitutes the numeric shift from the
//! parameter set and returns a polynomial in `(z, zb)` alone.

use num_complex::Complex64;
use thiserror::Error;

use crate::gauss::{GaussPoly, QuadForm};
use crate::hermite::{hermite_of_poly, hermite_rescaled_any};
use crate::params::{binomial, factorial, i_pow, neg_i_pow, real_sqrt_complex, ParamSet};
use crate::poly::{TriPoly, Var};

/// Errors raised by constructions whose formulas are singular at some
/// parameter values.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum BuildError {
    /// The requested route divides by `alpha` (or takes its square root).
    #[error("alpha must be nonzero for this construction")]
    AlphaZero,
    /// The tensor factorization needs `nu != 2 alpha` and `nu != -2 alpha`.
    #[error("nu = ±2 alpha is degenerate for the tensor construction")]
    DegenerateParams,
}

fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// The degree-one member `I_1 = nu zb - 2 alpha z - xi` with `xi` formal.
pub fn linear_form(p: &ParamSet) -> TriPoly {
    let mut q = TriPoly::monomial(0, 1, 0, re(p.nu));
    q = &q + &TriPoly::monomial(1, 0, 0, re(-2.0 * p.alpha));
    &q + &TriPoly::monomial(0, 0, 1, re(-1.0))
}

/// All of `I_0 … I_n` by the three-term recurrence (the canonical oracle).
pub fn build_recurrence_all(p: &ParamSet, n: u32) -> Vec<TriPoly> {
    let mut out = Vec::with_capacity(n as usize + 1);
    out.push(TriPoly::one());
    if n == 0 {
        return out;
    }
    let i1 = linear_form(p);
    out.push(i1.clone());
    for k in 1..n {
        let next =
            &(&i1 * &out[k as usize]) + &out[k as usize - 1].scale(re(2.0 * p.alpha * k as f64));
        out.push(next);
    }
    out
}

/// `I_n` by the three-term recurrence (the canonical oracle).
pub fn build_recurrence(p: &ParamSet, n: u32) -> TriPoly {
    build_recurrence_all(p, n).pop().unwrap()
}

/// `I_n` as the n-fold application of the first-order operator
/// `-d/dz + I_1` to the constant 1.
pub fn build_operational(p: &ParamSet, n: u32) -> TriPoly {
    let i1 = linear_form(p);
    let mut acc = TriPoly::one();
    for _ in 0..n {
        acc = &(&i1 * &acc) - &acc.diff(Var::Z);
    }
    acc
}

/// `I_n` by exact symbolic differentiation of the Gaussian kernel: apply
/// `d/dz` n times to `exp(-nu z zb + alpha z^2 + xi z)` (with `xi` formal —
/// the product rule turns the exponent's `xi z` term into the polynomial
/// term `xi`), multiply by `(-1)^n`, and divide the kernel back off.
pub fn build_rodrigues(p: &ParamSet, n: u32) -> TriPoly {
    let quad = QuadForm::family_kernel(p.nu, p.alpha);
    let mut g = GaussPoly::kernel(quad);
    for _ in 0..n {
        g = g.diff(Var::Z);
    }
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    g.scale(re(sign))
        .divide_kernel(&quad)
        .expect("kernel is preserved by differentiation")
}

/// `I_n` by the second Rodrigues form `(-1)^n e^{-I_1^2/(4 alpha)} d^n/dz^n
/// e^{I_1^2/(4 alpha)}`: since `dI_1/dz = -2 alpha`, the state after each
/// differentiation is `P(w) e^{w^2/(4 alpha)}` with `w = I_1`, and one step
/// maps `P` to `-2 alpha P' - w P`. The final univariate polynomial is
/// composed with `I_1` and signed by `(-1)^n`.
pub fn build_rodrigues_second(p: &ParamSet, n: u32) -> Result<TriPoly, BuildError> {
    if p.alpha == 0.0 {
        return Err(BuildError::AlphaZero);
    }
    // coefficients of P in ascending powers of w
    let mut coeffs = vec![1.0f64];
    for _ in 0..n {
        let mut next = vec![0.0; coeffs.len() + 1];
        for (j, &c) in coeffs.iter().enumerate() {
            next[j + 1] -= c; // -w P
            if j >= 1 {
                next[j - 1] -= 2.0 * p.alpha * j as f64 * c; // -2 alpha P'
            }
        }
        coeffs = next;
    }
    let i1 = linear_form(p);
    let mut pow = TriPoly::one();
    let mut acc = TriPoly::zero();
    for &c in &coeffs {
        if c != 0.0 {
            acc = &acc + &pow.scale(re(c));
        }
        pow = &pow * &i1;
    }
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok(acc.scale(re(sign)))
}

/// `I_n` in closed Hermite form: `(-i)^n alpha^{n/2} H_n((2 alpha z - nu zb
/// + xi) / (2 i alpha^{1/2}))`, with the branch `alpha^{1/2} = i sqrt(|alpha|)`
/// for negative `alpha`.
pub fn build_explicit_hermite(p: &ParamSet, n: u32) -> Result<TriPoly, BuildError> {
    if p.alpha == 0.0 {
        return Err(BuildError::AlphaZero);
    }
    let s = real_sqrt_complex(p.alpha);
    let scale = one() / (Complex64::new(0.0, 2.0) * s);
    let mut arg = TriPoly::monomial(1, 0, 0, re(2.0 * p.alpha) * scale);
    arg = &arg + &TriPoly::monomial(0, 1, 0, re(-p.nu) * scale);
    arg = &arg + &TriPoly::monomial(0, 0, 1, scale);
    let h = hermite_of_poly(n, &arg);
    Ok(h.scale(neg_i_pow(n) * s.powi(n as i32)))
}

/// `I_n` as a tensor combination of rescaled real Hermite polynomials over
/// the two real directions,
///
/// ```text
/// I_n = 2^{-n} Σ_k (-i)^k C(n,k) H^{nu-2a}_{n-k}(x - Re(xi)/(nu-2a))
///                              · H^{nu+2a}_k(y + Im(xi)/(nu+2a)),
/// ```
///
/// rewritten back into `(z, zb)` via `x = (z+zb)/2`, `y = (z-zb)/(2i)`. The
/// shift from the parameter set is substituted numerically (the shifts are
/// not polynomial in `xi`), so the result is compared to the oracle after
/// `xi`-substitution.
pub fn build_tensor(p: &ParamSet, n: u32) -> Result<TriPoly, BuildError> {
    if !p.is_nondegenerate() {
        return Err(BuildError::DegenerateParams);
    }
    let t1 = p.nu - 2.0 * p.alpha;
    let t2 = p.nu + 2.0 * p.alpha;
    // x - Re(xi)/t1 and y + Im(xi)/t2 as polynomials in (z, zb)
    let half = re(0.5);
    let mut xt = TriPoly::monomial(1, 0, 0, half);
    xt = &xt + &TriPoly::monomial(0, 1, 0, half);
    xt = &xt + &TriPoly::constant(re(-p.xi.re / t1));
    let mhalf_i = Complex64::new(0.0, -0.5);
    let mut yt = TriPoly::monomial(1, 0, 0, mhalf_i);
    yt = &yt + &TriPoly::monomial(0, 1, 0, -mhalf_i);
    yt = &yt + &TriPoly::constant(re(p.xi.im / t2));

    let xpow = poly_powers(&xt, n as usize);
    let ypow = poly_powers(&yt, n as usize);
    let scale = 0.5f64.powi(n as i32);

    let mut acc = TriPoly::zero();
    for k in 0..=n {
        let hx = hermite_rescaled_any(t1, n - k);
        let hy = hermite_rescaled_any(t2, k);
        let px = compose_coeffs(&hx, &xpow);
        let py = compose_coeffs(&hy, &ypow);
        let c = neg_i_pow(k) * re(binomial(n, k) * scale);
        acc = &acc + &(&px * &py).scale(c);
    }
    Ok(acc)
}

/// The holomorphic components `h_0 … h_n` of `I_n`: polynomials in `(z, xi)`
/// only, such that `I_n = Σ_k h_k zb^k`. Explicitly
///
/// ```text
/// h_k = n! (nu^k / k!) (i^{n-k} alpha^{(n-k)/2} / (n-k)!)
///       · H_{n-k}(i alpha^{1/2} z + i xi / (2 alpha^{1/2})).
/// ```
pub fn build_holo_components(p: &ParamSet, n: u32) -> Result<Vec<TriPoly>, BuildError> {
    if p.alpha == 0.0 {
        return Err(BuildError::AlphaZero);
    }
    let s = real_sqrt_complex(p.alpha);
    let i_unit = Complex64::new(0.0, 1.0);
    let mut arg = TriPoly::monomial(1, 0, 0, i_unit * s);
    arg = &arg + &TriPoly::monomial(0, 0, 1, i_unit / (2.0 * s));
    let nf = factorial(n);
    let mut out = Vec::with_capacity(n as usize + 1);
    for k in 0..=n {
        let c = re(nf * p.nu.powi(k as i32) / (factorial(k) * factorial(n - k)))
            * i_pow(n - k)
            * s.powi((n - k) as i32);
        out.push(hermite_of_poly(n - k, &arg).scale(c));
    }
    Ok(out)
}

/// Reassemble a component list into the full polynomial `Σ_k h_k zb^k`.
pub fn assemble_components(components: &[TriPoly]) -> TriPoly {
    let mut acc = TriPoly::zero();
    for (k, h) in components.iter().enumerate() {
        acc = &acc + &h.mul_monomial(0, k as u32, 0, one());
    }
    acc
}

/// Values `I_0(z) … I_n(z)` at a point, with the numeric shift from the
/// parameter set, by the value recurrence. This is the cheap evaluation path
/// used by series checks and transform oracles.
pub fn eval_sequence(p: &ParamSet, n: u32, z: Complex64) -> Vec<Complex64> {
    let w = re(p.nu) * z.conj() - re(2.0 * p.alpha) * z - p.xi;
    let mut out = Vec::with_capacity(n as usize + 1);
    out.push(one());
    if n == 0 {
        return out;
    }
    out.push(w);
    for k in 1..n {
        let next = w * out[k as usize] + re(2.0 * p.alpha * k as f64) * out[k as usize - 1];
        out.push(next);
    }
    out
}

/// `I_n(z)` at a point (numeric shift from the parameter set).
pub fn eval_at(p: &ParamSet, n: u32, z: Complex64) -> Complex64 {
    *eval_sequence(p, n, z).last().unwrap()
}

fn poly_powers(base: &TriPoly, max: usize) -> Vec<TriPoly> {
    let mut v = Vec::with_capacity(max + 1);
    v.push(TriPoly::one());
    for _ in 0..max {
        let last = v.last().unwrap();
        v.push(last * base);
    }
    v
}

fn compose_coeffs(coeffs: &[f64], pows: &[TriPoly]) -> TriPoly {
    let mut acc = TriPoly::zero();
    for (p, &c) in coeffs.iter().enumerate() {
        if c != 0.0 {
            acc = &acc + &pows[p].scale(re(c));
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::poly_equal;

    const TOL_ABS: f64 = 1e-12;
    const TOL_REL: f64 = 1e-10;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn generic() -> ParamSet {
        ParamSet::unshifted(1.3, -0.7)
    }

    #[test]
    fn recurrence_degree_zero_and_one() {
        let p = generic();
        assert_eq!(build_recurrence(&p, 0), TriPoly::one());
        let i1 = build_recurrence(&p, 1);
        assert_eq!(i1.coeff(0, 1, 0), c(p.nu, 0.0));
        assert_eq!(i1.coeff(1, 0, 0), c(-2.0 * p.alpha, 0.0));
        assert_eq!(i1.coeff(0, 0, 1), c(-1.0, 0.0));
        assert_eq!(i1.num_terms(), 3);
    }

    #[test]
    fn recurrence_degree_two_expansion() {
        // I_2 = nu^2 zb^2 + 4a^2 z^2 + xi^2 - 4 a nu z zb - 2 nu xi zb + 4 a xi z + 2a
        let p = generic();
        let (nu, a) = (p.nu, p.alpha);
        let i2 = build_recurrence(&p, 2);
        assert_eq!(i2.coeff(0, 2, 0), c(nu * nu, 0.0));
        assert_eq!(i2.coeff(2, 0, 0), c(4.0 * a * a, 0.0));
        assert_eq!(i2.coeff(0, 0, 2), c(1.0, 0.0));
        assert_eq!(i2.coeff(1, 1, 0), c(-4.0 * a * nu, 0.0));
        assert_eq!(i2.coeff(0, 1, 1), c(-2.0 * nu, 0.0));
        assert_eq!(i2.coeff(1, 0, 1), c(4.0 * a, 0.0));
        assert_eq!(i2.coeff(0, 0, 0), c(2.0 * a, 0.0));
        assert_eq!(i2.num_terms(), 7);
    }

    #[test]
    fn radial_kernel_gives_conjugate_monomials() {
        // nu=1, alpha=0, xi -> 0: I_3 = zb^3
        let p = ParamSet::unshifted(1.0, 0.0);
        let i3 = build_recurrence(&p, 3).substitute_xi(c(0.0, 0.0));
        assert_eq!(i3.num_terms(), 1);
        assert_eq!(i3.coeff(0, 3, 0), c(1.0, 0.0));
    }

    #[test]
    fn operational_route_matches_oracle() {
        for p in [
            generic(),
            ParamSet::unshifted(0.0, 0.9),
            ParamSet::unshifted(2.4, 0.0),
        ] {
            for n in 0..=12u32 {
                let a = build_operational(&p, n);
                let b = build_recurrence(&p, n);
                assert!(poly_equal(&a, &b, TOL_ABS, TOL_REL), "n={n} p={p:?}");
            }
        }
    }

    #[test]
    fn rodrigues_route_matches_oracle() {
        let p = ParamSet::unshifted(1.0, 0.3);
        for n in [0u32, 1, 4, 9, 20] {
            let a = build_rodrigues(&p, n);
            let b = build_recurrence(&p, n);
            assert!(poly_equal(&a, &b, TOL_ABS, TOL_REL), "n={n}");
        }
    }

    #[test]
    fn second_rodrigues_route_matches_oracle() {
        let p = generic();
        let i1 = build_rodrigues_second(&p, 1).unwrap();
        assert!(poly_equal(&i1, &linear_form(&p), TOL_ABS, TOL_REL));
        for n in [2u32, 5, 11] {
            let a = build_rodrigues_second(&p, n).unwrap();
            let b = build_recurrence(&p, n);
            assert!(poly_equal(&a, &b, TOL_ABS, TOL_REL), "n={n}");
        }
        let degenerate = ParamSet::unshifted(1.0, 0.0);
        assert_eq!(
            build_rodrigues_second(&degenerate, 2),
            Err(BuildError::AlphaZero)
        );
    }

    #[test]
    fn explicit_hermite_route_matches_oracle_both_branches() {
        let p = ParamSet::unshifted(1.3, 0.6);
        let i1 = build_explicit_hermite(&p, 1).unwrap();
        assert!(poly_equal(&i1, &linear_form(&p), TOL_ABS, TOL_REL));

        // negative alpha exercises the sqrt branch alpha^{1/2} = i sqrt(|alpha|)
        let m = ParamSet::unshifted(2.0, -0.5);
        for n in [2u32, 3, 7] {
            let a = build_explicit_hermite(&m, n).unwrap();
            let b = build_recurrence(&m, n);
            assert!(poly_equal(&a, &b, TOL_ABS, TOL_REL), "n={n}");
        }
        assert_eq!(
            build_explicit_hermite(&ParamSet::unshifted(1.0, 0.0), 2),
            Err(BuildError::AlphaZero)
        );
    }

    #[test]
    fn self_dual_case_depends_only_on_imaginary_part() {
        // nu = 2 alpha, xi = 0: I_n is a polynomial in Im(z) alone, so it is
        // invariant under real translations and picks up (-1)^n when z and zb
        // swap roles.
        let p = ParamSet::unshifted(1.6, 0.8);
        for n in 0..=6u32 {
            let i_n = build_recurrence(&p, n).substitute_xi(c(0.0, 0.0));
            let z = c(0.37, -0.81);
            let v = i_n.eval(z, c(0.0, 0.0));
            for t in [0.5, -1.25, 3.0] {
                let shifted = i_n.eval(z + c(t, 0.0), c(0.0, 0.0));
                assert!(
                    (v - shifted).norm() < 1e-10 * (1.0 + v.norm()),
                    "n={n} t={t}"
                );
            }
            let swapped = i_n.eval_free(z.conj(), z, c(0.0, 0.0));
            let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
            assert!(
                (swapped - v * sign).norm() < 1e-10 * (1.0 + v.norm()),
                "n={n}"
            );
        }
    }

    #[test]
    fn tensor_route_linear_case() {
        let p = ParamSet::unshifted(1.1, 0.25);
        let t = build_tensor(&p, 1).unwrap();
        assert!((t.coeff(0, 1, 0) - c(p.nu, 0.0)).norm() < 1e-12);
        assert!((t.coeff(1, 0, 0) - c(-2.0 * p.alpha, 0.0)).norm() < 1e-12);
        assert!(t.coeff(0, 0, 0).norm() < 1e-12);
    }

    #[test]
    fn tensor_route_matches_oracle_pointwise() {
        let p = ParamSet::new(1.0, 0.2, c(1.0, 1.0));
        for n in [2u32, 5, 9] {
            let t = build_tensor(&p, n).unwrap();
            let oracle = build_recurrence(&p, n).substitute_xi(p.xi);
            // fixed spread of sample points covering all quadrants
            for idx in 0..20 {
                let th = idx as f64 * 0.31415;
                let r = 0.2 + 0.09 * idx as f64;
                let z = c(r * th.cos(), r * th.sin());
                let a = t.eval(z, c(0.0, 0.0));
                let b = oracle.eval(z, c(0.0, 0.0));
                assert!(
                    (a - b).norm() <= 1e-9 * (1.0 + b.norm()),
                    "n={n} z={z} a={a} b={b}"
                );
            }
        }
        assert_eq!(
            build_tensor(&ParamSet::unshifted(1.0, 0.5), 2),
            Err(BuildError::DegenerateParams)
        );
    }

    #[test]
    fn tensor_route_matches_oracle_symbolically() {
        // the (z, zb) rewrite is itself polynomial-exact, so coefficients match too
        let p = ParamSet::new(1.7, -0.35, c(0.4, -0.2));
        for n in 0..=8u32 {
            let t = build_tensor(&p, n).unwrap();
            let oracle = build_recurrence(&p, n).substitute_xi(p.xi);
            assert!(poly_equal(&t, &oracle, 1e-10, 1e-9), "n={n}");
        }
    }

    #[test]
    fn holomorphic_components_linear_case_and_reassembly() {
        let p = ParamSet::unshifted(1.2, 0.45);
        let comps = build_holo_components(&p, 1).unwrap();
        assert_eq!(comps.len(), 2);
        assert!((comps[0].coeff(1, 0, 0) - c(-2.0 * p.alpha, 0.0)).norm() < 1e-12);
        assert!((comps[0].coeff(0, 0, 1) - c(-1.0, 0.0)).norm() < 1e-12);
        assert!((comps[1].coeff(0, 0, 0) - c(p.nu, 0.0)).norm() < 1e-12);

        let q = ParamSet::unshifted(1.0, 0.3);
        for n in [2u32, 4, 6] {
            let comps = build_holo_components(&q, n).unwrap();
            // components involve only z and xi
            for h in &comps {
                assert_eq!(h.degree_in(Var::Zb), 0);
            }
            // top component is the constant nu^n
            let top = &comps[n as usize];
            assert_eq!(top.num_terms(), 1);
            assert!((top.coeff(0, 0, 0) - c(q.nu.powi(n as i32), 0.0)).norm() < 1e-10);
            let sum = assemble_components(&comps);
            let oracle = build_recurrence(&q, n);
            assert!(poly_equal(&sum, &oracle, TOL_ABS, TOL_REL), "n={n}");
        }
        assert_eq!(
            build_holo_components(&ParamSet::unshifted(1.0, 0.0), 2),
            Err(BuildError::AlphaZero)
        );
    }

    #[test]
    fn value_recurrence_agrees_with_symbolic_evaluation() {
        let p = ParamSet::new(0.9, -0.4, c(0.3, 0.7));
        let z = c(-0.6, 1.1);
        let vals = eval_sequence(&p, 10, z);
        for (n, &v) in vals.iter().enumerate() {
            let sym = build_recurrence(&p, n as u32).eval(z, p.xi);
            assert!((v - sym).norm() < 1e-10 * (1.0 + sym.norm()), "n={n}");
        }
        assert_eq!(eval_at(&p, 7, z), vals[7]);
    }

    #[test]
    fn degrees_grow_linearly_when_both_parameters_active() {
        let p = generic();
        for n in 1..=8u32 {
            let i_n = build_recurrence(&p, n);
            assert_eq!(i_n.degree_in(Var::Z), n);
            assert_eq!(i_n.degree_in(Var::Zb), n);
            assert_eq!(i_n.degree_in(Var::Xi), n);
        }
    }
}
