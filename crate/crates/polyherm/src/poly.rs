//! Sparse trivariate polynomials over `Complex64`.
//!
//! [`TriPoly`] stores polynomials in three commuting variables: `z`, its
//! formal conjugate `zb` (treated as an independent variable, the usual
//! Wirtinger viewpoint), and a shift variable `xi`. Terms live in a
//! `BTreeMap` keyed by exponent triples ordered graded-lexicographically
//! (total degree first, then `i`, `j`, `k`), which makes iteration order —
//! and therefore serialization — deterministic.
//!
//! The same container doubles as a real bivariate polynomial after
//! [`TriPoly::realify`]: exponent `i` then counts powers of `x`, exponent
//! `j` powers of `y`, and `k` is unused. Evaluation for that reading is
//! [`TriPoly::eval_xy`].

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Coefficients with magnitude below this are dropped after every operation;
/// they are far below any tolerance used in this crate and keeping them only
/// bloats the term maps.
const PRUNE_EPS: f64 = 1e-300;

/// Exponent triple `z^i * zb^j * xi^k`, ordered graded-lexicographically.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Exp {
    pub i: u32,
    pub j: u32,
    pub k: u32,
}

impl Exp {
    pub fn new(i: u32, j: u32, k: u32) -> Self {
        Self { i, j, k }
    }

    pub fn total(&self) -> u32 {
        self.i + self.j + self.k
    }
}

impl Ord for Exp {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.total(), self.i, self.j, self.k).cmp(&(other.total(), other.i, other.j, other.k))
    }
}

impl PartialOrd for Exp {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The three formal variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    /// `z`
    Z,
    /// the formal conjugate `zb`
    Zb,
    /// the shift variable `xi`
    Xi,
}

/// Sparse polynomial in `(z, zb, xi)` with complex coefficients.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct TriPoly {
    terms: BTreeMap<Exp, Complex64>,
}

impl TriPoly {
    /// The zero polynomial (no terms).
    pub fn zero() -> Self {
        Self::default()
    }

    /// The constant polynomial `1`.
    pub fn one() -> Self {
        Self::constant(Complex64::new(1.0, 0.0))
    }

    /// A constant polynomial.
    pub fn constant(c: Complex64) -> Self {
        Self::monomial(0, 0, 0, c)
    }

    /// The single term `c * z^i * zb^j * xi^k`.
    pub fn monomial(i: u32, j: u32, k: u32, c: Complex64) -> Self {
        let mut terms = BTreeMap::new();
        if c.norm() >= PRUNE_EPS {
            terms.insert(Exp::new(i, j, k), c);
        }
        Self { terms }
    }

    /// The variable `z`.
    pub fn var_z() -> Self {
        Self::monomial(1, 0, 0, Complex64::new(1.0, 0.0))
    }

    /// The formal conjugate variable `zb`.
    pub fn var_zb() -> Self {
        Self::monomial(0, 1, 0, Complex64::new(1.0, 0.0))
    }

    /// The shift variable `xi`.
    pub fn var_xi() -> Self {
        Self::monomial(0, 0, 1, Complex64::new(1.0, 0.0))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in graded-lex order.
    pub fn iter(&self) -> impl Iterator<Item = (&Exp, &Complex64)> {
        self.terms.iter()
    }

    /// Coefficient of `z^i zb^j xi^k` (zero when the term is absent).
    pub fn coeff(&self, i: u32, j: u32, k: u32) -> Complex64 {
        self.terms
            .get(&Exp::new(i, j, k))
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Exp::total).max()
    }

    /// Largest exponent of one variable; 0 for the zero polynomial.
    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms
            .keys()
            .map(|e| match v {
                Var::Z => e.i,
                Var::Zb => e.j,
                Var::Xi => e.k,
            })
            .max()
            .unwrap_or(0)
    }

    /// Largest coefficient magnitude; 0 for the zero polynomial.
    pub fn max_coeff_norm(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    fn insert_term(&mut self, e: Exp, c: Complex64) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(slot) => {
                if c.norm() >= PRUNE_EPS {
                    slot.insert(c);
                }
            }
            Entry::Occupied(mut slot) => {
                let s = *slot.get() + c;
                if s.norm() >= PRUNE_EPS {
                    slot.insert(s);
                } else {
                    slot.remove();
                }
            }
        }
    }

    /// `self * c`.
    pub fn scale(&self, c: Complex64) -> Self {
        if c == Complex64::new(0.0, 0.0) {
            return Self::zero();
        }
        let mut out = Self::zero();
        for (&e, &a) in &self.terms {
            out.insert_term(e, a * c);
        }
        out
    }

    /// Multiply by the monomial `z^i zb^j xi^k` (exponent shift).
    pub fn mul_monomial(&self, i: u32, j: u32, k: u32, c: Complex64) -> Self {
        let mut out = Self::zero();
        for (&e, &a) in &self.terms {
            out.insert_term(Exp::new(e.i + i, e.j + j, e.k + k), a * c);
        }
        out
    }

    /// Partial derivative with respect to one formal variable.
    pub fn diff(&self, v: Var) -> Self {
        let mut out = Self::zero();
        for (&e, &c) in &self.terms {
            let (n, shifted) = match v {
                Var::Z => (e.i, Exp::new(e.i.wrapping_sub(1), e.j, e.k)),
                Var::Zb => (e.j, Exp::new(e.i, e.j.wrapping_sub(1), e.k)),
                Var::Xi => (e.k, Exp::new(e.i, e.j, e.k.wrapping_sub(1))),
            };
            if n > 0 {
                out.insert_term(shifted, c * n as f64);
            }
        }
        out
    }

    /// Evaluate with `zb` bound to the honest conjugate of `z`.
    pub fn eval(&self, z: Complex64, xi: Complex64) -> Complex64 {
        self.eval_free(z, z.conj(), xi)
    }

    /// Evaluate with all three variables free (used by checks that probe the
    /// polynomial identity itself rather than the function on the plane).
    pub fn eval_free(&self, z: Complex64, zb: Complex64, xi: Complex64) -> Complex64 {
        let zp = power_table(z, self.degree_in(Var::Z));
        let bp = power_table(zb, self.degree_in(Var::Zb));
        let xp = power_table(xi, self.degree_in(Var::Xi));
        let mut acc = Complex64::new(0.0, 0.0);
        for (&e, &c) in &self.terms {
            acc += c * zp[e.i as usize] * bp[e.j as usize] * xp[e.k as usize];
        }
        acc
    }

    /// Evaluate the realified reading (`i` ↦ power of `x`, `j` ↦ power of
    /// `y`); terms with `k > 0` must not be present.
    pub fn eval_xy(&self, x: f64, y: f64) -> Complex64 {
        debug_assert_eq!(self.degree_in(Var::Xi), 0, "realified polynomial expected");
        let xc = Complex64::new(x, 0.0);
        let yc = Complex64::new(y, 0.0);
        let xp = power_table(xc, self.degree_in(Var::Z));
        let yp = power_table(yc, self.degree_in(Var::Zb));
        let mut acc = Complex64::new(0.0, 0.0);
        for (&e, &c) in &self.terms {
            acc += c * xp[e.i as usize] * yp[e.j as usize];
        }
        acc
    }

    /// Substitute a numeric value for `xi`, folding every `xi^k` into the
    /// coefficient; the result has no `xi` terms.
    pub fn substitute_xi(&self, xi: Complex64) -> Self {
        let xp = power_table(xi, self.degree_in(Var::Xi));
        let mut out = Self::zero();
        for (&e, &c) in &self.terms {
            out.insert_term(Exp::new(e.i, e.j, 0), c * xp[e.k as usize]);
        }
        out
    }

    /// The polynomial representing the complex conjugate of the function
    /// `z ↦ p(z, conj z)`: coefficients are conjugated and the `z`/`zb`
    /// exponents swap. Requires `xi` to have been substituted already.
    ///
    /// # Panics
    /// If any term still carries a power of `xi`.
    pub fn conj_function(&self) -> Self {
        assert_eq!(
            self.degree_in(Var::Xi),
            0,
            "conjugate of a function of z requires xi to be substituted first"
        );
        let mut out = Self::zero();
        for (&e, &c) in &self.terms {
            out.insert_term(Exp::new(e.j, e.i, 0), c.conj());
        }
        out
    }

    /// Rewrite as a polynomial in the real coordinates `z = x + iy`: the
    /// result uses exponent `i` for `x` and `j` for `y` (see [`eval_xy`]).
    /// Requires `xi` to have been substituted already.
    ///
    /// # Panics
    /// If any term still carries a power of `xi`.
    ///
    /// [`eval_xy`]: TriPoly::eval_xy
    pub fn realify(&self) -> Self {
        assert_eq!(
            self.degree_in(Var::Xi),
            0,
            "realification requires xi to be substituted first"
        );
        // x + i y and x - i y as bivariate polynomials in (x, y).
        let zx = {
            let mut p = TriPoly::monomial(1, 0, 0, Complex64::new(1.0, 0.0));
            p.insert_term(Exp::new(0, 1, 0), Complex64::new(0.0, 1.0));
            p
        };
        let zbx = zx.conj_function_xy();
        let max_i = self.degree_in(Var::Z) as usize;
        let max_j = self.degree_in(Var::Zb) as usize;
        let zpow = poly_power_table(&zx, max_i);
        let bpow = poly_power_table(&zbx, max_j);
        let mut out = Self::zero();
        for (&e, &c) in &self.terms {
            let prod = &zpow[e.i as usize] * &bpow[e.j as usize];
            for (&f, &a) in &prod.terms {
                out.insert_term(f, a * c);
            }
        }
        out
    }

    /// Conjugate coefficients without swapping exponents (conjugation of a
    /// bivariate polynomial over the real coordinates).
    fn conj_function_xy(&self) -> Self {
        let mut out = Self::zero();
        for (&e, &c) in &self.terms {
            out.insert_term(e, c.conj());
        }
        out
    }
}

fn power_table(base: Complex64, max: u32) -> Vec<Complex64> {
    let mut v = Vec::with_capacity(max as usize + 1);
    v.push(Complex64::new(1.0, 0.0));
    for _ in 0..max {
        let last = *v.last().unwrap();
        v.push(last * base);
    }
    v
}

fn poly_power_table(base: &TriPoly, max: usize) -> Vec<TriPoly> {
    let mut v = Vec::with_capacity(max + 1);
    v.push(TriPoly::one());
    for _ in 0..max {
        let last = v.last().unwrap();
        v.push(last * base);
    }
    v
}

impl Add for &TriPoly {
    type Output = TriPoly;
    fn add(self, rhs: &TriPoly) -> TriPoly {
        let mut out = self.clone();
        for (&e, &c) in &rhs.terms {
            out.insert_term(e, c);
        }
        out
    }
}

impl Sub for &TriPoly {
    type Output = TriPoly;
    fn sub(self, rhs: &TriPoly) -> TriPoly {
        let mut out = self.clone();
        for (&e, &c) in &rhs.terms {
            out.insert_term(e, -c);
        }
        out
    }
}

impl Mul for &TriPoly {
    type Output = TriPoly;
    fn mul(self, rhs: &TriPoly) -> TriPoly {
        let mut out = TriPoly::zero();
        for (&ea, &ca) in &self.terms {
            for (&eb, &cb) in &rhs.terms {
                out.insert_term(Exp::new(ea.i + eb.i, ea.j + eb.j, ea.k + eb.k), ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for TriPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.terms.iter().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({:.6e}{:+.6e}i)", c.re, c.im)?;
            if e.i > 0 {
                write!(f, "*z^{}", e.i)?;
            }
            if e.j > 0 {
                write!(f, "*zb^{}", e.j)?;
            }
            if e.k > 0 {
                write!(f, "*xi^{}", e.k)?;
            }
        }
        Ok(())
    }
}

/// One serialized term: exponents plus the coefficient split into real and
/// imaginary parts.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct PolyTerm {
    pub i: u32,
    pub j: u32,
    pub k: u32,
    pub re: f64,
    pub im: f64,
}

impl Serialize for TriPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<PolyTerm> = self
            .terms
            .iter()
            .map(|(e, c)| PolyTerm {
                i: e.i,
                j: e.j,
                k: e.k,
                re: c.re,
                im: c.im,
            })
            .collect();
        terms.serialize(s)
    }
}

impl<'de> Deserialize<'de> for TriPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let terms = Vec::<PolyTerm>::deserialize(d)?;
        let mut out = TriPoly::zero();
        for t in terms {
            if !t.re.is_finite() || !t.im.is_finite() {
                return Err(D::Error::custom("non-finite coefficient"));
            }
            out.insert_term(Exp::new(t.i, t.j, t.k), Complex64::new(t.re, t.im));
        }
        Ok(out)
    }
}

/// Coefficient-wise comparison: every coefficient of `a - b` must have
/// magnitude at most `max(tol_abs, tol_rel * m)` where `m` is the largest
/// coefficient magnitude appearing in either input.
pub fn poly_equal(a: &TriPoly, b: &TriPoly, tol_abs: f64, tol_rel: f64) -> bool {
    let m = a.max_coeff_norm().max(b.max_coeff_norm());
    let bound = tol_abs.max(tol_rel * m);
    let diff = a - b;
    diff.max_coeff_norm() <= bound
}

/// Largest coefficient of `a - b` relative to the largest coefficient of
/// either input (with a floor of 1 to keep near-zero comparisons absolute).
/// Used as the deviation metric in symbolic identity reports.
pub fn coeff_deviation(a: &TriPoly, b: &TriPoly) -> f64 {
    let m = a.max_coeff_norm().max(b.max_coeff_norm()).max(1.0);
    (a - b).max_coeff_norm() / m
}
