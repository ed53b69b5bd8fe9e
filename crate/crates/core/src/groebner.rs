//! Buchberger's algorithm over the rationals, normal forms, and the
//! staircase count used to decide whether a potential has an isolated
//! singularity.

use std::cmp::Ordering;

use num::One;

use crate::error::{Error, Result};
use crate::poly::{Poly, Rat};

/// Monomial orders on nonnegative exponent vectors. All three are total
/// well-orders compatible with multiplication.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MonomialOrder {
    #[default]
    DegRevLex,
    DegLex,
    Lex,
}

impl MonomialOrder {
    pub fn cmp(&self, a: &[i64], b: &[i64]) -> Ordering {
        match self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::DegLex => {
                let da: i64 = a.iter().sum();
                let db: i64 = b.iter().sum();
                da.cmp(&db).then_with(|| a.cmp(b))
            }
            MonomialOrder::DegRevLex => {
                let da: i64 = a.iter().sum();
                let db: i64 = b.iter().sum();
                da.cmp(&db).then_with(|| {
                    for (x, y) in a.iter().rev().zip(b.iter().rev()) {
                        match x.cmp(y) {
                            Ordering::Less => return Ordering::Greater,
                            Ordering::Greater => return Ordering::Less,
                            Ordering::Equal => {}
                        }
                    }
                    Ordering::Equal
                })
            }
        }
    }
}

fn leading_term(p: &Poly, order: MonomialOrder) -> Option<(Vec<i64>, Rat)> {
    p.terms()
        .max_by(|(a, _), (b, _)| order.cmp(a, b))
        .map(|(e, c)| (e.clone(), c.clone()))
}

fn monomial_divides(a: &[i64], b: &[i64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn monomial_lcm(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(&x, &y)| x.max(y)).collect()
}

fn monomial_sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(&x, &y)| x - y).collect()
}

fn coprime(a: &[i64], b: &[i64]) -> bool {
    a.iter().zip(b).all(|(&x, &y)| x == 0 || y == 0)
}

/// A reduced Groebner basis with monic generators.
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    pub order: MonomialOrder,
    pub gens: Vec<Poly>,
    leading: Vec<Vec<i64>>,
}

impl GroebnerBasis {
    pub fn leading_monomials(&self) -> &[Vec<i64>] {
        &self.leading
    }

    /// Normal form of f modulo the basis; zero exactly when f lies in the
    /// ideal. Every term of the output is outside the leading-term ideal.
    pub fn reduce(&self, f: &Poly) -> Result<Poly> {
        if let Some(g) = self.gens.first() {
            if g.nvars() != f.nvars() {
                return Err(Error::DimensionMismatch { left: g.nvars(), right: f.nvars() });
            }
        }
        Ok(reduce_full(f, &self.gens, self.order))
    }

    /// Checks the defining property: every S-polynomial of a pair of
    /// generators reduces to zero, and so does every original generator.
    pub fn verify(&self, original: &[Poly]) -> bool {
        for i in 0..self.gens.len() {
            for j in i + 1..self.gens.len() {
                let s = s_polynomial(&self.gens[i], &self.gens[j], self.order);
                if !reduce_full(&s, &self.gens, self.order).is_zero() {
                    return false;
                }
            }
        }
        original
            .iter()
            .all(|g| reduce_full(g, &self.gens, self.order).is_zero())
    }

    /// Counts monomials outside the leading-term ideal. `None` encodes an
    /// infinite staircase. Finite exactly when every variable has a pure
    /// power among the leading terms.
    pub fn quotient_dimension(&self) -> Option<u64> {
        // Unit ideal: quotient is the zero ring.
        if self.gens.iter().any(|g| g.is_constant() && !g.is_zero()) {
            return Some(0);
        }
        if self.gens.is_empty() {
            return None;
        }
        let nvars = self.gens[0].nvars();
        if nvars == 0 {
            return Some(1);
        }
        // Bound per variable: the least pure power of that variable in the
        // leading-term ideal.
        let mut bounds = vec![None::<i64>; nvars];
        for lm in &self.leading {
            let nz: Vec<usize> = (0..nvars).filter(|&i| lm[i] > 0).collect();
            if nz.len() == 1 {
                let i = nz[0];
                let b = bounds[i].map_or(lm[i], |old: i64| old.min(lm[i]));
                bounds[i] = Some(b);
            }
        }
        if bounds.iter().any(|b| b.is_none()) {
            return None;
        }
        let bounds: Vec<i64> = bounds.into_iter().map(|b| b.unwrap()).collect();
        let mut count = 0u64;
        let mut exps = vec![0i64; nvars];
        loop {
            if !self.leading.iter().any(|lm| monomial_divides(lm, &exps)) {
                count += 1;
            }
            // advance odometer
            let mut i = 0;
            loop {
                if i == nvars {
                    return Some(count);
                }
                exps[i] += 1;
                if exps[i] < bounds[i] {
                    break;
                }
                exps[i] = 0;
                i += 1;
            }
        }
    }
}

fn make_monic(p: &Poly, order: MonomialOrder) -> Poly {
    match leading_term(p, order) {
        Some((_, c)) if !c.is_one() => p.scale(&c.recip()),
        _ => p.clone(),
    }
}

/// Full reduction of f by a set of polynomials: keeps cancelling any term
/// divisible by some leading monomial until none remains.
fn reduce_full(f: &Poly, gens: &[Poly], order: MonomialOrder) -> Poly {
    let lts: Vec<(Vec<i64>, Rat)> = gens
        .iter()
        .filter_map(|g| leading_term(g, order))
        .collect();
    let mut rem = Poly::zero(f.nvars());
    let mut work = f.clone();
    'outer: while !work.is_zero() {
        let (we, wc) = leading_term(&work, order).unwrap();
        for (k, (ge, gc)) in lts.iter().enumerate() {
            if monomial_divides(ge, &we) {
                let factor =
                    Poly::from_term(f.nvars(), monomial_sub(&we, ge), &wc / gc);
                work = &work - &(&factor * &gens[k]);
                continue 'outer;
            }
        }
        // leading term irreducible: move it to the remainder
        let t = Poly::from_term(f.nvars(), we, wc);
        rem = &rem + &t;
        work = &work - &t;
    }
    rem
}

fn s_polynomial(f: &Poly, g: &Poly, order: MonomialOrder) -> Poly {
    let (fe, fc) = leading_term(f, order).expect("s-polynomial of zero");
    let (ge, gc) = leading_term(g, order).expect("s-polynomial of zero");
    let l = monomial_lcm(&fe, &ge);
    let tf = Poly::from_term(f.nvars(), monomial_sub(&l, &fe), fc.recip());
    let tg = Poly::from_term(g.nvars(), monomial_sub(&l, &ge), gc.recip());
    &(&tf * f) - &(&tg * g)
}

/// Buchberger's algorithm with the product and chain criteria, followed by
/// inter-reduction to the reduced monic basis.
pub fn buchberger(gens: &[Poly], order: MonomialOrder) -> Result<GroebnerBasis> {
    if gens.iter().any(|g| g.is_laurent()) {
        return Err(Error::LaurentNotAllowed);
    }
    let mut basis: Vec<Poly> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| make_monic(g, order))
        .collect();
    if basis.is_empty() {
        return Err(Error::Precondition("empty generating set".into()));
    }

    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            pairs.push((i, j));
        }
    }

    let lm = |basis: &[Poly], i: usize| leading_term(&basis[i], order).unwrap().0;

    while let Some(pos) = select_pair(&basis, &pairs, order) {
        let (i, j) = pairs.swap_remove(pos);
        let lmi = lm(&basis, i);
        let lmj = lm(&basis, j);
        if coprime(&lmi, &lmj) {
            continue;
        }
        if chain_criterion(&basis, &pairs, i, j, &lmi, &lmj, order) {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j], order);
        let r = reduce_full(&s, &basis, order);
        if !r.is_zero() {
            let r = make_monic(&r, order);
            let new = basis.len();
            basis.push(r);
            for k in 0..new {
                pairs.push((k, new));
            }
        }
    }

    // Inter-reduce: drop generators whose leading monomial is divisible by
    // another's, then fully reduce each against the rest.
    let mut keep: Vec<Poly> = Vec::new();
    for i in 0..basis.len() {
        let lmi = lm(&basis, i);
        let dominated = basis.iter().enumerate().any(|(j, _)| {
            j != i && {
                let lmj = lm(&basis, j);
                monomial_divides(&lmj, &lmi) && (lmj != lmi || j < i)
            }
        });
        if !dominated {
            keep.push(basis[i].clone());
        }
    }
    let mut reduced: Vec<Poly> = Vec::with_capacity(keep.len());
    for i in 0..keep.len() {
        let others: Vec<Poly> = keep
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, p)| p.clone())
            .collect();
        let r = reduce_full(&keep[i], &others, order);
        if !r.is_zero() {
            reduced.push(make_monic(&r, order));
        }
    }
    reduced.sort_by(|a, b| {
        let la = leading_term(a, order).unwrap().0;
        let lb = leading_term(b, order).unwrap().0;
        order.cmp(&lb, &la)
    });
    let leading = reduced
        .iter()
        .map(|g| leading_term(g, order).unwrap().0)
        .collect();
    Ok(GroebnerBasis { order, gens: reduced, leading })
}

/// Normal selection: the pair whose lcm is smallest in the order.
fn select_pair(basis: &[Poly], pairs: &[(usize, usize)], order: MonomialOrder) -> Option<usize> {
    pairs
        .iter()
        .enumerate()
        .min_by(|(_, &(i1, j1)), (_, &(i2, j2))| {
            let l1 = pair_lcm(basis, i1, j1, order);
            let l2 = pair_lcm(basis, i2, j2, order);
            order.cmp(&l1, &l2)
        })
        .map(|(pos, _)| pos)
}

fn pair_lcm(basis: &[Poly], i: usize, j: usize, order: MonomialOrder) -> Vec<i64> {
    let li = leading_term(&basis[i], order).unwrap().0;
    let lj = leading_term(&basis[j], order).unwrap().0;
    monomial_lcm(&li, &lj)
}

/// Buchberger's second criterion: skip (i, j) when some k has lm(k)
/// dividing lcm(i, j) and both (i, k) and (j, k) are already handled.
fn chain_criterion(
    basis: &[Poly],
    pending: &[(usize, usize)],
    i: usize,
    j: usize,
    lmi: &[i64],
    lmj: &[i64],
    order: MonomialOrder,
) -> bool {
    let l = monomial_lcm(lmi, lmj);
    let still_pending = |a: usize, b: usize| {
        let key = (a.min(b), a.max(b));
        pending.iter().any(|&(x, y)| (x.min(y), x.max(y)) == key)
    };
    (0..basis.len()).any(|k| {
        k != i
            && k != j
            && monomial_divides(&leading_term(&basis[k], order).unwrap().0, &l)
            && !still_pending(i, k)
            && !still_pending(j, k)
    })
}

/// Dimension of the quotient by an ideal, as reported by a staircase count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuotientDim {
    Finite(u64),
    Infinite,
}

/// Outcome of the isolated-singularity test for a potential.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularityReport {
    pub isolated: bool,
    pub dimension: QuotientDim,
    /// Set when the potential has degree < 2, where the quotient is the
    /// zero ring and the notion degenerates; reported rather than guessed.
    pub degenerate_degree: bool,
}

/// Decides whether the partial derivatives of `omega` generate a
/// finite-codimension ideal, and computes that codimension when finite.
pub fn is_isolated_singularity(omega: &Poly) -> Result<SingularityReport> {
    if omega.is_constant() {
        return Err(Error::ConstantPotential);
    }
    if omega.is_laurent() {
        return Err(Error::LaurentNotAllowed);
    }
    let nvars = omega.nvars();
    let partials: Vec<Poly> = (0..nvars)
        .map(|i| omega.partial(i))
        .collect::<Result<_>>()?;
    let nonzero: Vec<Poly> = partials.into_iter().filter(|p| !p.is_zero()).collect();
    let dimension = if nonzero.is_empty() {
        QuotientDim::Infinite
    } else {
        let gb = buchberger(&nonzero, MonomialOrder::DegRevLex)?;
        match gb.quotient_dimension() {
            Some(d) => QuotientDim::Finite(d),
            None => QuotientDim::Infinite,
        }
    };
    let isolated = matches!(dimension, QuotientDim::Finite(_));
    let degenerate_degree = omega.total_degree().unwrap_or(0) < 2;
    Ok(SingularityReport { isolated, dimension, degenerate_degree })
}

/// Convenience wrapper producing the basis for the partials ideal.
pub fn partials_basis(omega: &Poly, order: MonomialOrder) -> Result<GroebnerBasis> {
    let nvars = omega.nvars();
    let partials: Vec<Poly> = (0..nvars)
        .map(|i| omega.partial(i))
        .collect::<Result<_>>()?;
    let nonzero: Vec<Poly> = partials.into_iter().filter(|p| !p.is_zero()).collect();
    buchberger(&nonzero, order)
}

/// Membership of f in the ideal spanned by the basis.
pub fn in_ideal(f: &Poly, gb: &GroebnerBasis) -> Result<bool> {
    Ok(gb.reduce(f)?.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn power_sum(nvars: usize, d: i64) -> Poly {
        let mut acc = Poly::zero(nvars);
        for i in 0..nvars {
            let mut e = vec![0; nvars];
            e[i] = d;
            acc = &acc + &Poly::from_term(nvars, e, rat(1));
        }
        acc
    }

    #[test]
    fn variables_are_their_own_basis() {
        let gens = vec![Poly::var(2, 0), Poly::var(2, 1)];
        let gb = buchberger(&gens, MonomialOrder::DegRevLex).unwrap();
        assert_eq!(gb.gens, gens);
        assert!(gb.verify(&gens));
    }

    #[test]
    fn unit_ideal_reduces_to_one() {
        let gens = vec![Poly::constant(2, rat(3))];
        let gb = buchberger(&gens, MonomialOrder::DegRevLex).unwrap();
        assert_eq!(gb.gens, vec![Poly::one(2)]);
        assert_eq!(gb.quotient_dimension(), Some(0));
    }

    #[test]
    fn spair_closure_on_a_mixed_ideal() {
        // generators t1^2 - t2 and t2^2
        let g1 = &(&Poly::var(2, 0) * &Poly::var(2, 0)) - &Poly::var(2, 1);
        let g2 = &Poly::var(2, 1) * &Poly::var(2, 1);
        let gens = vec![g1.clone(), g2.clone()];
        let gb = buchberger(&gens, MonomialOrder::DegRevLex).unwrap();
        assert!(gb.verify(&gens));
        // membership facts
        assert!(gb.reduce(&g2).unwrap().is_zero());
        assert!(gb.reduce(&g1).unwrap().is_zero());
        // t1^4 = (t1^2 - t2)(t1^2 + t2) + t2^2 lies in the ideal
        let t1_4 = Poly::from_term(2, vec![4, 0], rat(1));
        assert!(gb.reduce(&t1_4).unwrap().is_zero());
        assert!(!gb.reduce(&Poly::one(2)).unwrap().is_zero());
    }

    #[test]
    fn generator_reduces_to_zero_against_its_own_basis() {
        let g = &power_sum(3, 3) + &Poly::var(3, 1);
        let gb = buchberger(std::slice::from_ref(&g), MonomialOrder::DegLex).unwrap();
        assert!(gb.reduce(&g).unwrap().is_zero());
    }

    #[test]
    fn maximal_ideal_has_one_standard_monomial() {
        let gens: Vec<Poly> = (0..4).map(|i| Poly::var(4, i)).collect();
        let gb = buchberger(&gens, MonomialOrder::DegRevLex).unwrap();
        assert_eq!(gb.quotient_dimension(), Some(1));
    }

    #[test]
    fn cubic_power_sum_partials_have_dimension_eight() {
        // partials generate (t_i^2); oracle: count exponent boxes that no
        // leading monomial divides, under the bound given by pure powers
        let gb = partials_basis(&power_sum(3, 3), MonomialOrder::DegRevLex).unwrap();
        let mut oracle = 0u64;
        for a in 0..3i64 {
            for b in 0..3i64 {
                for c in 0..3i64 {
                    let m = [a, b, c];
                    let standard = !gb
                        .leading_monomials()
                        .iter()
                        .any(|lm| lm.iter().zip(&m).all(|(l, x)| l <= x));
                    if standard {
                        oracle += 1;
                    }
                }
            }
        }
        assert_eq!(oracle, 8);
        assert_eq!(gb.quotient_dimension(), Some(8));
    }

    #[test]
    fn pure_power_in_two_variables_leaves_an_unbounded_staircase() {
        let omega = Poly::from_term(2, vec![4, 0], rat(1));
        let report = is_isolated_singularity(&omega).unwrap();
        assert!(!report.isolated);
        assert_eq!(report.dimension, QuotientDim::Infinite);
    }

    #[test]
    fn power_sums_are_isolated_with_known_dimension() {
        for (nvars, d) in [(3usize, 3i64), (3, 4), (4, 3), (4, 4)] {
            let report = is_isolated_singularity(&power_sum(nvars, d)).unwrap();
            assert!(report.isolated);
            let expect = (d as u64 - 1).pow(nvars as u32);
            assert_eq!(report.dimension, QuotientDim::Finite(expect));
            assert!(!report.degenerate_degree);
        }
    }

    #[test]
    fn product_monomial_is_not_isolated() {
        let omega = Poly::from_term(3, vec![1, 1, 1], rat(5));
        let report = is_isolated_singularity(&omega).unwrap();
        assert!(!report.isolated);
    }

    #[test]
    fn linear_potential_reports_degenerate_degree() {
        let omega = Poly::var(4, 3);
        let report = is_isolated_singularity(&omega).unwrap();
        assert!(report.isolated);
        assert_eq!(report.dimension, QuotientDim::Finite(0));
        assert!(report.degenerate_degree);
    }

    #[test]
    fn constant_potential_is_rejected() {
        assert!(matches!(
            is_isolated_singularity(&Poly::constant(2, rat(3))),
            Err(Error::ConstantPotential)
        ));
    }

    #[test]
    fn quotient_dimension_is_order_independent() {
        let omega = &power_sum(3, 3) + &Poly::from_term(3, vec![1, 1, 1], rat(1));
        for order in [MonomialOrder::DegRevLex, MonomialOrder::DegLex, MonomialOrder::Lex] {
            let gb = partials_basis(&omega, order).unwrap();
            assert!(gb.verify(&[]));
            assert_eq!(gb.quotient_dimension(), Some(8), "{order:?}");
        }
    }

    #[test]
    fn laurent_input_is_rejected() {
        let f = Poly::from_term(1, vec![-1], rat(1));
        assert!(matches!(
            buchberger(&[f], MonomialOrder::Lex),
            Err(Error::LaurentNotAllowed)
        ));
    }
}
