//! Sparse multivariate (optionally Laurent) polynomials with exact
//! rational coefficients.
//!
//! Terms are keyed by exponent vectors in a `BTreeMap`, so iteration
//! order is deterministic and every stored coefficient is nonzero.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational coefficient.
pub type Rat = BigRational;

/// Shorthand for an integer rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Shorthand for the rational n/d.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Sparse multivariate polynomial over the rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    laurent: bool,
    terms: BTreeMap<Vec<i64>, Rat>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, laurent: false, terms: BTreeMap::new() }
    }

    pub fn zero_laurent(nvars: usize) -> Self {
        Poly { nvars, laurent: true, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Poly::constant(nvars, Rat::one())
    }

    /// The monomial x_i (0-based index).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut e = vec![0; nvars];
        e[i] = 1;
        Poly::from_term(nvars, e, Rat::one())
    }

    /// A single term c * x^exps. Switches to Laurent when an exponent is negative.
    pub fn from_term(nvars: usize, exps: Vec<i64>, c: Rat) -> Self {
        assert_eq!(exps.len(), nvars, "exponent vector length mismatch");
        let laurent = exps.iter().any(|&e| e < 0);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        Poly { nvars, laurent, terms }
    }

    /// Builds a polynomial from (exponents, coefficient) pairs, merging
    /// duplicates and dropping zeros.
    pub fn from_terms(nvars: usize, laurent: bool, pairs: Vec<(Vec<i64>, Rat)>) -> Result<Self> {
        let mut terms: BTreeMap<Vec<i64>, Rat> = BTreeMap::new();
        for (e, c) in pairs {
            if e.len() != nvars {
                return Err(Error::DimensionMismatch { left: e.len(), right: nvars });
            }
            if !laurent && e.iter().any(|&x| x < 0) {
                return Err(Error::NegativeExponent);
            }
            let entry = terms.entry(e).or_insert_with(Rat::zero);
            *entry += c;
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(Poly { nvars, laurent, terms })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_laurent(&self) -> bool {
        self.laurent
    }

    /// Reinterprets this polynomial in the Laurent ring.
    pub fn into_laurent(mut self) -> Self {
        self.laurent = true;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.is_constant() && self.constant_term().is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    /// Coefficient of the constant monomial.
    pub fn constant_term(&self) -> Rat {
        self.terms.get(&vec![0; self.nvars]).cloned().unwrap_or_else(Rat::zero)
    }

    /// The polynomial minus its constant term.
    pub fn nonconstant_part(&self) -> Poly {
        let mut p = self.clone();
        p.terms.remove(&vec![0; self.nvars]);
        p
    }

    /// Returns Some(c) when the polynomial is exactly one term c*x^e.
    pub fn as_single_term(&self) -> Option<(&Vec<i64>, &Rat)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[i64]) -> Rat {
        self.terms.get(exps).cloned().unwrap_or_else(Rat::zero)
    }

    /// Total degree (max over terms of the exponent sum); None for 0.
    pub fn total_degree(&self) -> Option<i64> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            let mut p = self.clone();
            p.terms.clear();
            return p;
        }
        let mut p = self.clone();
        for v in p.terms.values_mut() {
            *v *= c;
        }
        p
    }

    fn check_compatible(&self, other: &Poly) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch { left: self.nvars, right: other.nvars });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly> {
        self.check_compatible(other)?;
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            let entry = terms.entry(e.clone()).or_insert_with(Rat::zero);
            *entry += c;
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(Poly { nvars: self.nvars, laurent: self.laurent || other.laurent, terms })
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly> {
        self.try_add(&(-other))
    }

    /// Exact product; term count is at most |self| * |other|.
    pub fn try_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_compatible(other)?;
        let mut terms: BTreeMap<Vec<i64>, Rat> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<i64> = ea
                    .iter()
                    .zip(eb)
                    .map(|(&x, &y)| x.checked_add(y).expect("exponent overflow"))
                    .collect();
                let entry = terms.entry(e).or_insert_with(Rat::zero);
                *entry += ca * cb;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(Poly { nvars: self.nvars, laurent: self.laurent || other.laurent, terms })
    }

    /// Integer power; negative powers are only defined for single terms.
    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one(self.nvars);
        if self.laurent {
            acc = acc.into_laurent();
        }
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }

    /// Formal partial derivative with respect to variable i (0-based).
    /// For Laurent inputs the term rule e -> e * x^(e-1) applies.
    pub fn partial(&self, i: usize) -> Result<Poly> {
        if i >= self.nvars {
            return Err(Error::IndexOutOfRange { index: i, nvars: self.nvars });
        }
        let mut terms: BTreeMap<Vec<i64>, Rat> = BTreeMap::new();
        for (e, c) in &self.terms {
            let k = e[i];
            if k == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] = k.checked_sub(1).expect("exponent overflow");
            let c2 = c * rat(k);
            let entry = terms.entry(e2).or_insert_with(Rat::zero);
            *entry += c2;
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(Poly { nvars: self.nvars, laurent: self.laurent, terms })
    }

    /// Evaluates at a rational point.
    pub fn evaluate(&self, point: &[Rat]) -> Result<Rat> {
        if point.len() != self.nvars {
            return Err(Error::ArityMismatch { expected: self.nvars, got: point.len() });
        }
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k == 0 {
                    continue;
                }
                if k < 0 && x.is_zero() {
                    return Err(Error::ZeroDenominator);
                }
                let p = rat_pow(x, k);
                term *= p;
            }
            acc += term;
        }
        Ok(acc)
    }

    /// Polynomial composition: one polynomial image per variable.
    /// Laurent sources need invertible images, so they are rejected here;
    /// use `RatFn` substitution for those.
    pub fn substitute_poly(&self, images: &[Poly]) -> Result<Poly> {
        if images.len() != self.nvars {
            return Err(Error::ArityMismatch { expected: self.nvars, got: images.len() });
        }
        if self.laurent && self.terms.keys().any(|e| e.iter().any(|&x| x < 0)) {
            return Err(Error::LaurentNotAllowed);
        }
        let out_vars = images.first().map(|p| p.nvars).unwrap_or(0);
        let mut acc = Poly::zero(out_vars);
        for (e, c) in &self.terms {
            let mut term = Poly::constant(out_vars, c.clone());
            for (img, &k) in images.iter().zip(e) {
                if k > 0 {
                    term = &term * &img.pow(k as u32);
                }
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }

    /// Extracts the terms whose exponent sum against `weights` equals `target`,
    /// where `weights[i]` is the per-variable weight row of length m and the
    /// comparison is by the full weight vector.
    pub fn weighted_component(&self, weights: &[Vec<i64>], target: &[i64]) -> Poly {
        let m = target.len();
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut acc = vec![0i64; m];
            for (w, &k) in weights.iter().zip(e) {
                for (a, &wi) in acc.iter_mut().zip(w) {
                    *a += wi * k;
                }
            }
            if acc == target {
                terms.insert(e.clone(), c.clone());
            }
        }
        Poly { nvars: self.nvars, laurent: self.laurent, terms }
    }

    /// Structural invariants: exponent lengths, nonzero coefficients,
    /// nonnegative exponents outside the Laurent ring.
    pub fn check_invariants(&self) -> bool {
        self.terms.iter().all(|(e, c)| {
            e.len() == self.nvars
                && !c.is_zero()
                && (self.laurent || e.iter().all(|&x| x >= 0))
        })
    }
}

/// x^k for a rational x and signed integer k (x nonzero when k < 0).
pub fn rat_pow(x: &Rat, k: i64) -> Rat {
    if k == 0 {
        return Rat::one();
    }
    let mut acc = Rat::one();
    let mut base = if k < 0 { x.recip() } else { x.clone() };
    let mut n = k.unsigned_abs();
    while n > 0 {
        if n & 1 == 1 {
            acc *= &base;
        }
        base = &base * &base;
        n >>= 1;
    }
    acc
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.try_add(rhs).expect("incompatible polynomials")
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.try_sub(rhs).expect("incompatible polynomials")
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.try_mul(rhs).expect("incompatible polynomials")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let mut p = self.clone();
        for c in p.terms.values_mut() {
            *c = -c.clone();
        }
        p
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Poly {
    /// Canonical printing: terms in descending deglex order, explicit `*`,
    /// variables named t1..tn (x1..xn for Laurent rings).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let stem = if self.laurent { "x" } else { "t" };
        let mut keys: Vec<&Vec<i64>> = self.terms.keys().collect();
        keys.sort_by(|a, b| {
            let da: i64 = a.iter().sum();
            let db: i64 = b.iter().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        for (idx, e) in keys.iter().enumerate() {
            let c = &self.terms[*e];
            let neg = c.is_negative();
            let mag = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k != 0)
                .map(|(i, &k)| {
                    if k == 1 {
                        format!("{}{}", stem, i + 1)
                    } else {
                        format!("{}{}^{}", stem, i + 1, k)
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{}", mag)?;
            } else if mag.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{}*{}", mag, vars.join("*"))?;
            }
        }
        Ok(())
    }
}
