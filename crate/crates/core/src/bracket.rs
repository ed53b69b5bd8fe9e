//! The n-ary bracket engine: potential-defined brackets on polynomial
//! rings and their quotients, torus brackets, axiom verifiers, the
//! center test, and the bracket-scaling constant of algebra endomorphisms
//! that fix the potential line.

use itertools::Itertools;
use num::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::{matrix_det, matrix_det_ratfn};
use crate::poly::{Poly, Rat};
use crate::ratfn::RatFn;

/// Which ring a potential bracket lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PotentialKind {
    /// The whole polynomial ring in n+1 variables.
    FullPolynomial,
    /// Quotient by the potential itself.
    Quotient,
    /// Quotient by potential minus a nonzero scalar.
    ShiftedQuotient,
}

/// Description of the algebra carrying the bracket.
#[derive(Debug, Clone, PartialEq)]
pub enum AlgebraDescriptor {
    Potential {
        /// Arity of the bracket; the ring has n+1 variables.
        n: usize,
        omega: Poly,
        kind: PotentialKind,
        /// Shift scalar; only meaningful for `ShiftedQuotient`.
        xi: Rat,
    },
    Torus {
        n: usize,
        q: Rat,
        kappa: Vec<i64>,
    },
}

impl AlgebraDescriptor {
    pub fn potential(n: usize, omega: Poly) -> Result<Self> {
        Self::potential_kind(n, omega, PotentialKind::FullPolynomial, Rat::zero())
    }

    pub fn potential_kind(n: usize, omega: Poly, kind: PotentialKind, xi: Rat) -> Result<Self> {
        if n < 2 {
            return Err(Error::Precondition("bracket arity must be at least 2".into()));
        }
        if omega.is_laurent() {
            return Err(Error::LaurentNotAllowed);
        }
        if omega.nvars() != n + 1 {
            return Err(Error::DimensionMismatch { left: omega.nvars(), right: n + 1 });
        }
        Ok(AlgebraDescriptor::Potential { n, omega, kind, xi })
    }

    pub fn torus(n: usize, q: Rat, kappa: Vec<i64>) -> Result<Self> {
        if n < 2 {
            return Err(Error::Precondition("bracket arity must be at least 2".into()));
        }
        if q.is_zero() {
            return Err(Error::Precondition("torus parameter q must be nonzero".into()));
        }
        if kappa.len() != n {
            return Err(Error::DimensionMismatch { left: kappa.len(), right: n });
        }
        Ok(AlgebraDescriptor::Torus { n, q, kappa })
    }

    pub fn arity(&self) -> usize {
        match self {
            AlgebraDescriptor::Potential { n, .. } => *n,
            AlgebraDescriptor::Torus { n, .. } => *n,
        }
    }

    /// Number of ring variables: n+1 for potentials, n for the torus.
    pub fn nvars(&self) -> usize {
        match self {
            AlgebraDescriptor::Potential { n, .. } => n + 1,
            AlgebraDescriptor::Torus { n, .. } => *n,
        }
    }

    pub fn is_torus(&self) -> bool {
        matches!(self, AlgebraDescriptor::Torus { .. })
    }

    /// Ring generators as rational functions. For the torus this is
    /// x_1..x_n; inverses are handled separately where needed.
    pub fn generators(&self) -> Vec<RatFn> {
        match self {
            AlgebraDescriptor::Potential { n, .. } => {
                (0..=*n).map(|i| RatFn::var(n + 1, i)).collect()
            }
            AlgebraDescriptor::Torus { n, .. } => (0..*n)
                .map(|i| {
                    let mut e = vec![0i64; *n];
                    e[i] = 1;
                    RatFn::from_poly(Poly::from_term(*n, e, Rat::one()))
                })
                .collect(),
        }
    }

    /// Generators together with their inverses (torus only).
    pub fn generators_with_inverses(&self) -> Vec<RatFn> {
        match self {
            AlgebraDescriptor::Potential { .. } => self.generators(),
            AlgebraDescriptor::Torus { n, .. } => {
                let mut out = self.generators();
                for i in 0..*n {
                    let mut e = vec![0i64; *n];
                    e[i] = -1;
                    out.push(RatFn::from_poly(Poly::from_term(*n, e, Rat::one())));
                }
                out
            }
        }
    }
}

/// Evaluates the n-ary bracket on rational-function arguments.
///
/// Potential case: the (n+1)x(n+1) determinant whose rows are the partials
/// of the arguments, closed by the potential's gradient. Torus case: the
/// Jacobian determinant of the arguments times q * x^(1+kappa). Quotient
/// kinds return polynomial representatives without normal-form reduction.
pub fn bracket(alg: &AlgebraDescriptor, args: &[RatFn]) -> Result<RatFn> {
    let n = alg.arity();
    if args.len() != n {
        return Err(Error::ArityMismatch { expected: n, got: args.len() });
    }
    let nvars = alg.nvars();
    for a in args {
        if a.nvars() != nvars {
            return Err(Error::DimensionMismatch { left: a.nvars(), right: nvars });
        }
        if a.den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
    }
    match alg {
        AlgebraDescriptor::Potential { omega, .. } => {
            // Fast path: all-polynomial arguments stay in the polynomial ring.
            let polys: Option<Vec<Poly>> = args.iter().map(|a| a.as_poly()).collect();
            if let Some(polys) = polys {
                let mut rows: Vec<Vec<Poly>> = Vec::with_capacity(n + 1);
                for p in &polys {
                    rows.push((0..nvars).map(|i| p.partial(i)).collect::<Result<_>>()?);
                }
                rows.push((0..nvars).map(|i| omega.partial(i)).collect::<Result<_>>()?);
                return Ok(RatFn::from_poly(matrix_det(&rows)?));
            }
            let mut rows: Vec<Vec<RatFn>> = Vec::with_capacity(n + 1);
            for a in args {
                rows.push((0..nvars).map(|i| a.partial(i)).collect::<Result<_>>()?);
            }
            rows.push(
                (0..nvars)
                    .map(|i| omega.partial(i).map(RatFn::from_poly))
                    .collect::<Result<_>>()?,
            );
            matrix_det_ratfn(&rows)
        }
        AlgebraDescriptor::Torus { n, q, kappa } => {
            let jac = jacobian_det(args)?;
            let mut exps = vec![0i64; *n];
            for (e, &k) in exps.iter_mut().zip(kappa) {
                *e = 1 + k;
            }
            let scale = RatFn::from_poly(Poly::from_term(*n, exps, q.clone()));
            Ok(&jac * &scale)
        }
    }
}

/// Jacobian determinant of a tuple of rational functions in as many
/// variables as entries.
pub fn jacobian_det(args: &[RatFn]) -> Result<RatFn> {
    let n = args.len();
    let mut rows: Vec<Vec<RatFn>> = Vec::with_capacity(n);
    for a in args {
        if a.nvars() != n {
            return Err(Error::DimensionMismatch { left: a.nvars(), right: n });
        }
        rows.push((0..n).map(|i| a.partial(i)).collect::<Result<_>>()?);
    }
    matrix_det_ratfn(&rows)
}

fn to_ratfns(alg: &AlgebraDescriptor, polys: &[Poly]) -> Vec<RatFn> {
    let laurent = alg.is_torus();
    polys
        .iter()
        .map(|p| {
            let p = if laurent && !p.is_laurent() { p.clone().into_laurent() } else { p.clone() };
            RatFn::from_poly(p)
        })
        .collect()
}

/// One failed identity in a verification run.
#[derive(Debug, Clone)]
pub struct VerifyFailure {
    pub sample: usize,
    pub detail: String,
}

/// Outcome of a sampled axiom verification. Failures are data, not errors.
#[derive(Debug, Clone, Default)]
pub struct VerifyReport {
    pub checked: usize,
    pub failures: Vec<VerifyFailure>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// For every sample and every transposition of two slots, the sum
/// bracket(swapped) + bracket(original) must vanish identically.
pub fn verify_alternating(alg: &AlgebraDescriptor, samples: &[Vec<Poly>]) -> Result<VerifyReport> {
    let n = alg.arity();
    let mut report = VerifyReport::default();
    for (idx, sample) in samples.iter().enumerate() {
        if sample.len() != n {
            return Err(Error::ArityMismatch { expected: n, got: sample.len() });
        }
        let args = to_ratfns(alg, sample);
        let base = bracket(alg, &args)?;
        for i in 0..n {
            for j in i + 1..n {
                let mut swapped = args.clone();
                swapped.swap(i, j);
                let other = bracket(alg, &swapped)?;
                let sum = &base + &other;
                if !sum.num.is_zero() {
                    report.failures.push(VerifyFailure {
                        sample: idx,
                        detail: format!("swap of slots {} and {} does not negate", i + 1, j + 1),
                    });
                }
                report.checked += 1;
            }
        }
    }
    Ok(report)
}

/// Checks the n-ary Jacobi identity
/// {{u_1..u_n}, v_1..v_{n-1}} = sum_s {u_1.., {u_s, v_1..v_{n-1}}, ..u_n}
/// on each (2n-1)-tuple sample (u_1..u_n, v_1..v_{n-1}).
pub fn verify_fundamental_identity(
    alg: &AlgebraDescriptor,
    samples: &[Vec<Poly>],
) -> Result<VerifyReport> {
    let n = alg.arity();
    let mut report = VerifyReport::default();
    for (idx, sample) in samples.iter().enumerate() {
        if sample.len() != 2 * n - 1 {
            return Err(Error::ArityMismatch { expected: 2 * n - 1, got: sample.len() });
        }
        let all = to_ratfns(alg, sample);
        let u = &all[..n];
        let v = &all[n..];
        let inner = bracket(alg, u)?;
        let mut outer_args = vec![inner];
        outer_args.extend_from_slice(v);
        let lhs = bracket(alg, &outer_args)?;
        let mut rhs = RatFn::from_poly(Poly::zero(alg.nvars()));
        if alg.is_torus() {
            rhs = RatFn::from_poly(Poly::zero_laurent(alg.nvars()));
        }
        for s in 0..n {
            let mut inner_args = vec![u[s].clone()];
            inner_args.extend_from_slice(v);
            let replaced = bracket(alg, &inner_args)?;
            let mut args = u.to_vec();
            args[s] = replaced;
            rhs = &rhs + &bracket(alg, &args)?;
        }
        let diff = &lhs - &rhs;
        if !diff.num.is_zero() {
            report.failures.push(VerifyFailure {
                sample: idx,
                detail: "fundamental identity residual is nonzero".into(),
            });
        }
        report.checked += 1;
    }
    Ok(report)
}

/// A sample for the per-slot Leibniz rule.
#[derive(Debug, Clone)]
pub struct LeibnizSample {
    /// Slot receiving the product, 0-based.
    pub slot: usize,
    pub a: Poly,
    pub b: Poly,
    /// The other n-1 arguments in order.
    pub rest: Vec<Poly>,
}

/// Checks {.., ab, ..} - a{.., b, ..} - b{.., a, ..} = 0 per sample.
pub fn verify_leibniz(alg: &AlgebraDescriptor, samples: &[LeibnizSample]) -> Result<VerifyReport> {
    let n = alg.arity();
    let mut report = VerifyReport::default();
    for (idx, s) in samples.iter().enumerate() {
        if s.rest.len() != n - 1 {
            return Err(Error::ArityMismatch { expected: n - 1, got: s.rest.len() });
        }
        if s.slot >= n {
            return Err(Error::IndexOutOfRange { index: s.slot, nvars: n });
        }
        let rest = to_ratfns(alg, &s.rest);
        let fa = to_ratfns(alg, std::slice::from_ref(&s.a)).pop().unwrap();
        let fb = to_ratfns(alg, std::slice::from_ref(&s.b)).pop().unwrap();
        let ab = &fa * &fb;
        let with = |x: &RatFn| -> Vec<RatFn> {
            let mut args = rest.clone();
            args.insert(s.slot, x.clone());
            args
        };
        let lhs = bracket(alg, &with(&ab))?;
        let term_b = &fa * &bracket(alg, &with(&fb))?;
        let term_a = &fb * &bracket(alg, &with(&fa))?;
        let diff = &(&lhs - &term_b) - &term_a;
        if !diff.num.is_zero() {
            report.failures.push(VerifyFailure {
                sample: idx,
                detail: format!("leibniz residual nonzero in slot {}", s.slot + 1),
            });
        }
        report.checked += 1;
    }
    Ok(report)
}

/// True when f brackets to zero against every (n-1)-subset of the
/// generators; the per-slot derivation property extends this to the
/// whole algebra.
pub fn center_test(alg: &AlgebraDescriptor, f: &Poly) -> Result<bool> {
    let n = alg.arity();
    let gens = alg.generators_with_inverses();
    let f_rf = to_ratfns(alg, std::slice::from_ref(f)).pop().unwrap();
    for combo in gens.iter().combinations(n - 1) {
        let mut args = vec![f_rf.clone()];
        args.extend(combo.into_iter().cloned());
        if !bracket(alg, &args)?.num.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Failure modes for the bracket-scaling constant computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EpsilonFailure {
    /// The potential's image is not of the form a*potential + b with a != 0.
    ImageNotAffineInPotential,
    /// The Jacobian determinant of the images vanishes.
    JacobianZero,
    /// The Jacobian determinant of the images is not a constant.
    JacobianNotConstant,
}

/// Given an algebra endomorphism phi sending each generator to its image,
/// computes the constant e with phi({f_1..f_n}) = e * {phi(f_1)..phi(f_n)}
/// whenever phi maps the potential to a*potential + b with a != 0 and
/// has constant nonzero Jacobian determinant; e = a / J. The scaling law
/// is re-verified on all generator n-subsets before returning.
pub fn epsilon_morphism_scalar(
    alg: &AlgebraDescriptor,
    images: &[Poly],
) -> Result<std::result::Result<Rat, EpsilonFailure>> {
    let (n, omega) = match alg {
        AlgebraDescriptor::Potential { n, omega, .. } => (*n, omega),
        AlgebraDescriptor::Torus { .. } => return Err(Error::UnsupportedFamily),
    };
    let nvars = n + 1;
    if images.len() != nvars {
        return Err(Error::ArityMismatch { expected: nvars, got: images.len() });
    }
    for img in images {
        if img.nvars() != nvars {
            return Err(Error::DimensionMismatch { left: img.nvars(), right: nvars });
        }
        if img.is_laurent() {
            return Err(Error::LaurentNotAllowed);
        }
    }

    let mut rows: Vec<Vec<Poly>> = Vec::with_capacity(nvars);
    for img in images {
        rows.push((0..nvars).map(|i| img.partial(i)).collect::<Result<_>>()?);
    }
    let jac = matrix_det(&rows)?;
    if jac.is_zero() {
        return Ok(Err(EpsilonFailure::JacobianZero));
    }
    if !jac.is_constant() {
        return Ok(Err(EpsilonFailure::JacobianNotConstant));
    }
    let j = jac.constant_term();

    let phi_omega = omega.substitute_poly(images)?;
    let scaled = match affine_match(omega, &phi_omega) {
        Some((a, _b)) if !a.is_zero() => a,
        _ => return Ok(Err(EpsilonFailure::ImageNotAffineInPotential)),
    };
    let e = scaled / j;

    // Confirm the law on every generator n-subset.
    let e_rf = RatFn::constant(nvars, e.clone());
    let gens: Vec<usize> = (0..nvars).collect();
    for combo in gens.iter().combinations(n) {
        let args: Vec<RatFn> = combo.iter().map(|&&i| RatFn::var(nvars, i)).collect();
        let lhs_poly = bracket(alg, &args)?
            .as_poly()
            .expect("polynomial bracket expected");
        let lhs = RatFn::from_poly(lhs_poly.substitute_poly(images)?);
        let img_args: Vec<RatFn> =
            combo.iter().map(|&&i| RatFn::from_poly(images[i].clone())).collect();
        let rhs = &e_rf * &bracket(alg, &img_args)?;
        if !lhs.equal(&rhs) {
            return Err(Error::Precondition(
                "scaling law failed on a generator tuple; images are not an endomorphism \
                 compatible with the bracket"
                    .into(),
            ));
        }
    }
    Ok(Ok(e))
}

/// Finds (a, b) with g = a*f + b when it exists, comparing nonconstant
/// parts; picks a from any one shared monomial.
fn affine_match(f: &Poly, g: &Poly) -> Option<(Rat, Rat)> {
    let fnc = f.nonconstant_part();
    let gnc = g.nonconstant_part();
    if fnc.is_zero() {
        return None;
    }
    let (e, c) = fnc.terms().next()?;
    let a = gnc.coeff(e) / c.clone();
    if gnc != fnc.scale(&a) {
        return None;
    }
    let b = g.constant_term() - a.clone() * f.constant_term();
    Some((a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, ratio};

    /// Product of all variables: t1*t2*...*t_(n+1).
    fn monomial_potential(nvars: usize) -> Poly {
        Poly::from_term(nvars, vec![1; nvars], rat(1))
    }

    /// Power-sum potential: t1^d + ... + t_(n+1)^d.
    fn power_sum(nvars: usize, d: i64) -> Poly {
        let mut acc = Poly::zero(nvars);
        for i in 0..nvars {
            let mut e = vec![0; nvars];
            e[i] = d;
            acc = &acc + &Poly::from_term(nvars, e, rat(1));
        }
        acc
    }

    fn vars(nvars: usize, idx: &[usize]) -> Vec<RatFn> {
        idx.iter().map(|&i| RatFn::var(nvars, i)).collect()
    }

    #[test]
    fn product_potential_bracket_of_last_three_generators() {
        let alg = AlgebraDescriptor::potential(3, monomial_potential(4)).unwrap();
        let b = bracket(&alg, &vars(4, &[1, 2, 3])).unwrap().as_poly().unwrap();
        // expansion along the first column leaves -d(omega)/d(t1)
        let expect = -&Poly::from_term(4, vec![0, 1, 1, 1], rat(1));
        assert_eq!(b, expect);
    }

    #[test]
    fn linear_potential_gives_unit_bracket() {
        let omega = Poly::var(4, 3);
        let alg = AlgebraDescriptor::potential(3, omega).unwrap();
        let b = bracket(&alg, &vars(4, &[0, 1, 2])).unwrap().as_poly().unwrap();
        assert!(b.is_one());
    }

    #[test]
    fn repeated_argument_vanishes() {
        let alg = AlgebraDescriptor::potential(3, power_sum(4, 4)).unwrap();
        let f = RatFn::from_poly(&Poly::var(4, 0) + &Poly::var(4, 1));
        let g = RatFn::var(4, 2);
        let b = bracket(&alg, &[f.clone(), f, g]).unwrap();
        assert!(b.num.is_zero());
    }

    #[test]
    fn sign_law_over_three_potentials() {
        for omega in [monomial_potential(4), power_sum(4, 4), power_sum(4, 7)] {
            let alg = AlgebraDescriptor::potential(3, omega.clone()).unwrap();
            for i in 0..4usize {
                let idx: Vec<usize> = (0..4).filter(|&j| j != i).collect();
                let b = bracket(&alg, &vars(4, &idx)).unwrap().as_poly().unwrap();
                let mut expect = omega.partial(i).unwrap();
                // sign (-1)^(n+1-i) with 1-based slot index
                if (4 - (i + 1)) % 2 == 1 {
                    expect = -&expect;
                }
                assert_eq!(b, expect, "slot {}", i + 1);
            }
        }
    }

    #[test]
    fn torus_bracket_matches_jacobian_scaling() {
        let alg = AlgebraDescriptor::torus(3, rat(2), vec![1, 0, 0]).unwrap();
        let gens: Vec<RatFn> = (0..3)
            .map(|i| {
                let mut e = vec![0i64; 3];
                e[i] = 1;
                RatFn::from_poly(Poly::from_term(3, e, rat(1)))
            })
            .collect();
        let b = bracket(&alg, &gens).unwrap();
        let expect = RatFn::from_poly(Poly::from_term(3, vec![2, 1, 1], rat(2)));
        assert!(b.equal(&expect));
    }

    #[test]
    fn potential_is_central() {
        for omega in [monomial_potential(4), power_sum(4, 4), power_sum(4, 7)] {
            let alg = AlgebraDescriptor::potential(3, omega.clone()).unwrap();
            assert!(center_test(&alg, &omega).unwrap());
        }
    }

    #[test]
    fn generator_is_not_central_for_linear_potential() {
        let alg = AlgebraDescriptor::potential(3, Poly::var(4, 3)).unwrap();
        assert!(!center_test(&alg, &Poly::var(4, 0)).unwrap());
    }

    #[test]
    fn constants_are_central() {
        let alg = AlgebraDescriptor::potential(3, power_sum(4, 4)).unwrap();
        assert!(center_test(&alg, &Poly::constant(4, ratio(5, 3))).unwrap());
    }

    #[test]
    fn alternating_verifier_accepts_product_potential() {
        let alg = AlgebraDescriptor::potential(3, monomial_potential(4)).unwrap();
        let sample = vec![Poly::var(4, 0), Poly::var(4, 1), Poly::var(4, 2)];
        let report = verify_alternating(&alg, &[sample]).unwrap();
        assert!(report.all_passed());
        assert_eq!(report.checked, 3);
    }

    #[test]
    fn fundamental_identity_on_generators() {
        let alg = AlgebraDescriptor::potential(3, monomial_potential(4)).unwrap();
        let sample = vec![
            Poly::var(4, 0),
            Poly::var(4, 1),
            Poly::var(4, 2),
            Poly::var(4, 3),
            &Poly::var(4, 0) + &Poly::var(4, 1),
        ];
        let report = verify_fundamental_identity(&alg, &[sample]).unwrap();
        assert!(report.all_passed());
    }

    #[test]
    fn leibniz_rule_on_generators() {
        let alg = AlgebraDescriptor::potential(3, Poly::var(4, 3)).unwrap();
        let sample = LeibnizSample {
            slot: 1,
            a: Poly::var(4, 0),
            b: Poly::var(4, 1),
            rest: vec![Poly::var(4, 1), Poly::var(4, 2)],
        };
        let report = verify_leibniz(&alg, &[sample]).unwrap();
        assert!(report.all_passed());
    }

    #[test]
    fn epsilon_scalar_of_identity_is_one() {
        let alg = AlgebraDescriptor::potential(2, power_sum(3, 4)).unwrap();
        let images: Vec<Poly> = (0..3).map(|i| Poly::var(3, i)).collect();
        let e = epsilon_morphism_scalar(&alg, &images).unwrap().unwrap();
        assert!(e.is_one());
    }

    #[test]
    fn epsilon_scalar_of_uniform_scaling() {
        // t_i -> 2 t_i on the quartic power sum in three variables:
        // potential scales by 16, the Jacobian is 8, so e = 2.
        let alg = AlgebraDescriptor::potential(2, power_sum(3, 4)).unwrap();
        let images: Vec<Poly> = (0..3).map(|i| Poly::var(3, i).scale(&rat(2))).collect();
        let e = epsilon_morphism_scalar(&alg, &images).unwrap().unwrap();
        assert_eq!(e, rat(2));
    }

    #[test]
    fn epsilon_scalar_of_transposition_is_minus_one() {
        let alg = AlgebraDescriptor::potential(2, power_sum(3, 5)).unwrap();
        let images = vec![Poly::var(3, 1), Poly::var(3, 0), Poly::var(3, 2)];
        let e = epsilon_morphism_scalar(&alg, &images).unwrap().unwrap();
        assert_eq!(e, rat(-1));
    }

    #[test]
    fn epsilon_rejects_non_affine_image_of_potential() {
        let alg = AlgebraDescriptor::potential(2, power_sum(3, 4)).unwrap();
        let images = vec![&Poly::var(3, 0) + &Poly::one(3), Poly::var(3, 1), Poly::var(3, 2)];
        let out = epsilon_morphism_scalar(&alg, &images).unwrap();
        assert_eq!(out, Err(EpsilonFailure::ImageNotAffineInPotential));
    }

    #[test]
    fn epsilon_rejects_zero_jacobian() {
        let alg = AlgebraDescriptor::potential(2, power_sum(3, 4)).unwrap();
        let images = vec![Poly::var(3, 0), Poly::var(3, 0), Poly::var(3, 2)];
        let out = epsilon_morphism_scalar(&alg, &images).unwrap();
        assert_eq!(out, Err(EpsilonFailure::JacobianZero));
    }

    #[test]
    fn torus_axioms_hold_on_laurent_samples() {
        let alg = AlgebraDescriptor::torus(3, ratio(3, 2), vec![2, 0, -1]).unwrap();
        let mono = |e: [i64; 3], c: i64| Poly::from_term(3, e.to_vec(), rat(c));
        let samples = vec![
            vec![
                &mono([1, 0, 0], 1) + &mono([0, -1, 0], 2),
                mono([0, 1, 1], 1),
                &mono([-1, 0, 1], 3) - &mono([0, 0, 0], 1),
            ],
            vec![
                mono([2, -1, 0], 1),
                &mono([0, 1, 0], 1) + &mono([1, 0, -1], 1),
                mono([0, 0, 2], 5),
            ],
        ];
        let report = verify_alternating(&alg, &samples).unwrap();
        assert!(report.all_passed());
        let fi_samples: Vec<Vec<Poly>> = samples
            .iter()
            .map(|s| {
                let mut v = s.clone();
                v.push(mono([1, 1, 0], 1));
                v.push(&mono([0, 0, 1], 1) + &mono([0, -1, 0], 1));
                v
            })
            .collect();
        let report = verify_fundamental_identity(&alg, &fi_samples).unwrap();
        assert!(report.all_passed());
        let leib = LeibnizSample {
            slot: 2,
            a: mono([1, 0, -1], 2),
            b: &mono([0, 1, 0], 1) + &mono([0, 0, 0], 3),
            rest: vec![mono([1, 0, 0], 1), mono([0, -2, 1], 1)],
        };
        let report = verify_leibniz(&alg, &[leib]).unwrap();
        assert!(report.all_passed());
    }

    #[test]
    fn transport_identity_on_monomial_images() {
        // y_i = x^(row i of A): the bracket ratio picks up det(A).
        let alg = AlgebraDescriptor::torus(3, ratio(5, 2), vec![2, -1, 0]).unwrap();
        let a = [[1i64, 1, 0], [0, 1, 0], [1, 1, 1]];
        let det = 1i64; // upper triangular with unit diagonal
        let ys: Vec<RatFn> = a
            .iter()
            .map(|row| RatFn::from_poly(Poly::from_term(3, row.to_vec(), rat(1)).into_laurent()))
            .collect();
        let lhs = bracket(&alg, &ys).unwrap();
        let mut prod_inv = RatFn::from_poly(Poly::one(3).into_laurent());
        for y in &ys {
            prod_inv = &prod_inv * &y.pow(-1).unwrap();
        }
        let lhs_ratio = &lhs * &prod_inv;
        let gens: Vec<RatFn> = (0..3)
            .map(|i| {
                let mut e = vec![0i64; 3];
                e[i] = 1;
                RatFn::from_poly(Poly::from_term(3, e, rat(1)))
            })
            .collect();
        let base = bracket(&alg, &gens).unwrap();
        let mut base_inv = RatFn::from_poly(Poly::one(3).into_laurent());
        for g in &gens {
            base_inv = &base_inv * &g.pow(-1).unwrap();
        }
        let rhs = &(&base * &base_inv) * &RatFn::constant(3, rat(det));
        assert!(lhs_ratio.equal(&rhs));
    }
}
