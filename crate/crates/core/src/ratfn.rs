//! Unnormalized fractions of two polynomials.
//!
//! No canonical form is maintained (multivariate gcd is deliberately
//! avoided); equality is semantic, by cross-multiplication.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::poly::{Poly, Rat};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFn {
    pub num: Poly,
    pub den: Poly,
}

impl RatFn {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.nvars() != den.nvars() {
            return Err(Error::DimensionMismatch { left: num.nvars(), right: den.nvars() });
        }
        Ok(RatFn { num, den })
    }

    pub fn from_poly(p: Poly) -> Self {
        let den = if p.is_laurent() {
            Poly::one(p.nvars()).into_laurent()
        } else {
            Poly::one(p.nvars())
        };
        RatFn { num: p, den }
    }

    pub fn zero(nvars: usize) -> Self {
        RatFn::from_poly(Poly::zero(nvars))
    }

    pub fn one(nvars: usize) -> Self {
        RatFn::from_poly(Poly::one(nvars))
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        RatFn::from_poly(Poly::constant(nvars, c))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        RatFn::from_poly(Poly::var(nvars, i))
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Some(num / c) when the denominator is a nonzero constant.
    pub fn as_poly(&self) -> Option<Poly> {
        if self.den.is_constant() {
            let c = self.den.constant_term();
            Some(self.num.scale(&c.recip()))
        } else {
            None
        }
    }

    pub fn recip(&self) -> Result<RatFn> {
        if self.num.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(RatFn { num: self.den.clone(), den: self.num.clone() })
    }

    /// Integer power, negative exponents through reciprocal.
    pub fn pow(&self, k: i64) -> Result<RatFn> {
        let base = if k < 0 { self.recip()? } else { self.clone() };
        let n = k.unsigned_abs().try_into().map_err(|_| Error::ExponentOverflow)?;
        Ok(RatFn { num: base.num.pow(n), den: base.den.pow(n) })
    }

    /// Quotient-rule partial derivative: (n'd - nd') / d^2.
    pub fn partial(&self, i: usize) -> Result<RatFn> {
        let np = self.num.partial(i)?;
        let dp = self.den.partial(i)?;
        let num = &(&np * &self.den) - &(&self.num * &dp);
        let den = &self.den * &self.den;
        Ok(RatFn { num, den })
    }

    /// Semantic equality: p.num * q.den == q.num * p.den.
    pub fn equal(&self, other: &RatFn) -> bool {
        let left = &self.num * &other.den;
        let right = &other.num * &self.den;
        left == right
    }
}

/// Composes a polynomial with rational-function images, one per variable.
/// Denominators combine by cross-multiplication. Laurent sources need
/// every inverted variable to have a nonzero image.
pub fn substitute(f: &Poly, images: &[RatFn]) -> Result<RatFn> {
    if images.len() != f.nvars() {
        return Err(Error::ArityMismatch { expected: f.nvars(), got: images.len() });
    }
    let out_vars = images.first().map(|r| r.nvars()).unwrap_or(0);
    let laurent = images.iter().any(|r| r.num.is_laurent() || r.den.is_laurent());
    let base = |p: Poly| if laurent { p.into_laurent() } else { p };
    let mut acc = RatFn::from_poly(base(Poly::zero(out_vars)));
    for (e, c) in f.terms() {
        let mut term = RatFn::from_poly(base(Poly::constant(out_vars, c.clone())));
        for (img, &k) in images.iter().zip(e) {
            if k == 0 {
                continue;
            }
            if k < 0 && img.is_zero() {
                return Err(Error::ZeroImageForInverse);
            }
            term = &term * &img.pow(k)?;
        }
        acc = &acc + &term;
    }
    Ok(acc)
}

impl Add for &RatFn {
    type Output = RatFn;
    fn add(self, rhs: &RatFn) -> RatFn {
        RatFn {
            num: &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            den: &self.den * &rhs.den,
        }
    }
}

impl Sub for &RatFn {
    type Output = RatFn;
    fn sub(self, rhs: &RatFn) -> RatFn {
        self + &(-rhs)
    }
}

impl Mul for &RatFn {
    type Output = RatFn;
    fn mul(self, rhs: &RatFn) -> RatFn {
        RatFn { num: &self.num * &rhs.num, den: &self.den * &rhs.den }
    }
}

impl Neg for &RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        RatFn { num: -&self.num, den: self.den.clone() }
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{} : {}", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, ratio};

    fn var(i: usize) -> Poly {
        Poly::var(2, i)
    }

    #[test]
    fn cross_multiplication_identifies_equivalent_fractions() {
        let a = RatFn::new(var(0), var(1)).unwrap();
        let b = RatFn::new(&var(0) * &var(0), &var(0) * &var(1)).unwrap();
        assert!(a.equal(&b));
    }

    #[test]
    fn distinct_polynomials_are_unequal() {
        let a = RatFn::from_poly(var(0));
        let b = RatFn::from_poly(var(1));
        assert!(!a.equal(&b));
    }

    #[test]
    fn zero_numerators_agree_regardless_of_denominator() {
        let a = RatFn::new(Poly::zero(2), var(0)).unwrap();
        let b = RatFn::new(Poly::zero(2), var(1)).unwrap();
        assert!(a.equal(&b));
    }

    #[test]
    fn zero_denominator_is_rejected() {
        assert!(matches!(RatFn::new(var(0), Poly::zero(2)), Err(Error::ZeroDenominator)));
    }

    #[test]
    fn substitute_into_inverse_power() {
        // t1^2 at images [1 : t1] gives 1 : t1^2
        let f = Poly::from_term(1, vec![2], rat(1));
        let img = RatFn::new(Poly::one(1), Poly::var(1, 0)).unwrap();
        let out = substitute(&f, &[img]).unwrap();
        let expect = RatFn::new(Poly::one(1), Poly::from_term(1, vec![2], rat(1))).unwrap();
        assert!(out.equal(&expect));
    }

    #[test]
    fn quotient_rule_partial() {
        // d/dt1 (t1/t2) = 1/t2
        let f = RatFn::new(var(0), var(1)).unwrap();
        let d = f.partial(0).unwrap();
        let expect = RatFn::new(Poly::one(2), var(1)).unwrap();
        assert!(d.equal(&expect));
    }

    #[test]
    fn arithmetic_matches_rationals() {
        let half = RatFn::constant(1, ratio(1, 2));
        let third = RatFn::constant(1, ratio(1, 3));
        let sum = &half + &third;
        assert!(sum.equal(&RatFn::constant(1, ratio(5, 6))));
    }
}
