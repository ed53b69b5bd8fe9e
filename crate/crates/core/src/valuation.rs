//! Weight valuations over Z^m with the sum-then-lex order, induced
//! filtrations and graded brackets, w-valuation and classicality checks,
//! Adams valuations, torus faithfulness, and point-valuation
//! classification on hypersurface quotients.

use std::cmp::Ordering;

use itertools::Itertools;
use num::Zero;

use crate::bracket::{bracket, AlgebraDescriptor, PotentialKind};
use crate::error::{Error, Result};
use crate::poly::{Poly, Rat};
use crate::ratfn::RatFn;

/// An element of Z^m extended by a top element, under the order:
/// compare coordinate sums first, then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum OrderedValue {
    Finite(Vec<i64>),
    Infinity,
}

impl OrderedValue {
    pub fn scalar(v: i64) -> Self {
        OrderedValue::Finite(vec![v])
    }

    pub fn zero(m: usize) -> Self {
        OrderedValue::Finite(vec![0; m])
    }

    pub fn rank(&self) -> Option<usize> {
        match self {
            OrderedValue::Finite(v) => Some(v.len()),
            OrderedValue::Infinity => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, OrderedValue::Infinity)
    }

    pub fn as_scalar(&self) -> Option<i64> {
        match self {
            OrderedValue::Finite(v) if v.len() == 1 => Some(v[0]),
            _ => None,
        }
    }

    /// Componentwise sum; anything plus the top element is the top element.
    pub fn add(&self, other: &OrderedValue) -> OrderedValue {
        match (self, other) {
            (OrderedValue::Finite(a), OrderedValue::Finite(b)) => {
                assert_eq!(a.len(), b.len(), "ordered value rank mismatch");
                OrderedValue::Finite(a.iter().zip(b).map(|(x, y)| x + y).collect())
            }
            _ => OrderedValue::Infinity,
        }
    }

    pub fn neg(&self) -> OrderedValue {
        match self {
            OrderedValue::Finite(a) => OrderedValue::Finite(a.iter().map(|x| -x).collect()),
            OrderedValue::Infinity => OrderedValue::Infinity,
        }
    }

    pub fn sub(&self, other: &OrderedValue) -> OrderedValue {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: i64) -> OrderedValue {
        match self {
            OrderedValue::Finite(a) => OrderedValue::Finite(a.iter().map(|x| x * k).collect()),
            OrderedValue::Infinity => OrderedValue::Infinity,
        }
    }
}

impl PartialOrd for OrderedValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for OrderedValue {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (OrderedValue::Infinity, OrderedValue::Infinity) => Ordering::Equal,
            (OrderedValue::Infinity, _) => Ordering::Greater,
            (_, OrderedValue::Infinity) => Ordering::Less,
            (OrderedValue::Finite(a), OrderedValue::Finite(b)) => {
                assert_eq!(a.len(), b.len(), "ordered value rank mismatch");
                let sa: i64 = a.iter().sum();
                let sb: i64 = b.iter().sum();
                sa.cmp(&sb).then_with(|| a.cmp(b))
            }
        }
    }
}

/// A valuation determined by one weight per generator: a monomial gets
/// the exponent-weighted sum, a polynomial the minimum over its terms,
/// zero the top element. Torus inverses get the negated weight.
#[derive(Debug, Clone)]
pub struct WeightValuation {
    pub algebra: AlgebraDescriptor,
    pub weights: Vec<OrderedValue>,
    rank: usize,
}

impl WeightValuation {
    pub fn new(algebra: AlgebraDescriptor, weights: Vec<OrderedValue>) -> Result<Self> {
        if weights.len() != algebra.nvars() {
            return Err(Error::ArityMismatch { expected: algebra.nvars(), got: weights.len() });
        }
        let mut rank = None;
        for w in &weights {
            match (rank, w.rank()) {
                (None, Some(r)) => rank = Some(r),
                (Some(r1), Some(r2)) if r1 != r2 => {
                    return Err(Error::DimensionMismatch { left: r1, right: r2 })
                }
                _ => {}
            }
        }
        let rank = rank.ok_or_else(|| Error::Precondition("weights must be finite".into()))?;
        Ok(WeightValuation { algebra, weights, rank })
    }

    /// Convenience constructor for scalar (rank-one) weights.
    pub fn scalar(algebra: AlgebraDescriptor, weights: &[i64]) -> Result<Self> {
        let ws = weights.iter().map(|&w| OrderedValue::scalar(w)).collect();
        WeightValuation::new(algebra, ws)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Minimum weight over the ring generators.
    pub fn rho(&self) -> OrderedValue {
        self.weights.iter().min().cloned().expect("at least one generator")
    }

    fn weight_rows(&self) -> Vec<Vec<i64>> {
        self.weights
            .iter()
            .map(|w| match w {
                OrderedValue::Finite(v) => v.clone(),
                OrderedValue::Infinity => unreachable!("weights are finite"),
            })
            .collect()
    }

    /// Minimum weighted degree over the terms of f; the top element for 0.
    pub fn value_of(&self, f: &Poly) -> Result<OrderedValue> {
        if f.nvars() != self.algebra.nvars() {
            return Err(Error::DimensionMismatch {
                left: f.nvars(),
                right: self.algebra.nvars(),
            });
        }
        let rows = self.weight_rows();
        let mut best: Option<OrderedValue> = None;
        for (e, _) in f.terms() {
            let mut acc = vec![0i64; self.rank];
            for (row, &k) in rows.iter().zip(e) {
                for (a, &w) in acc.iter_mut().zip(row) {
                    *a += w * k;
                }
            }
            let v = OrderedValue::Finite(acc);
            best = Some(match best {
                None => v,
                Some(b) => b.min(v),
            });
        }
        Ok(best.unwrap_or(OrderedValue::Infinity))
    }

    /// Value on a fraction: value(num) - value(den). Independent of the
    /// representative because leading forms multiply in a domain.
    pub fn rf_value(&self, p: &RatFn) -> Result<OrderedValue> {
        if p.den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let vn = self.value_of(&p.num)?;
        let vd = self.value_of(&p.den)?;
        if vn.is_infinite() {
            return Ok(OrderedValue::Infinity);
        }
        Ok(vn.sub(&vd))
    }

    /// Sum of terms of minimal weight.
    pub fn leading_form(&self, f: &Poly) -> Result<Poly> {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let v = self.value_of(f)?;
        let target = match &v {
            OrderedValue::Finite(t) => t.clone(),
            OrderedValue::Infinity => unreachable!(),
        };
        Ok(f.weighted_component(&self.weight_rows(), &target))
    }

    /// Values of each generator, with inverses for the torus.
    fn generator_values(&self) -> Vec<(RatFn, OrderedValue)> {
        let gens = self.algebra.generators_with_inverses();
        let nvars = self.algebra.nvars();
        gens.into_iter()
            .enumerate()
            .map(|(i, g)| {
                let v = if i < nvars {
                    self.weights[i].clone()
                } else {
                    self.weights[i - nvars].neg()
                };
                (g, v)
            })
            .collect()
    }

    /// Tests the generator criterion for the induced filtration to be a
    /// w-filtration: value(bracket of any n-subset of generators and,
    /// for the torus, generator inverses) >= sum of values - w.
    pub fn check_w_valuation(&self, w: &OrderedValue) -> Result<bool> {
        let n = self.algebra.arity();
        for combo in self.generator_values().iter().combinations(n) {
            let args: Vec<RatFn> = combo.iter().map(|(g, _)| g.clone()).collect();
            let mut sum = OrderedValue::zero(self.rank);
            for (_, v) in &combo {
                sum = sum.add(v);
            }
            let b = bracket(&self.algebra, &args)?;
            let bv = self.rf_value(&b)?;
            if bv < sum.sub(w) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Strict form of the generator criterion.
    pub fn is_classical(&self, w: &OrderedValue) -> Result<bool> {
        if !self.check_w_valuation(w)? {
            return Err(Error::Precondition(
                "not a w-valuation; classicality undefined".into(),
            ));
        }
        let n = self.algebra.arity();
        for combo in self.generator_values().iter().combinations(n) {
            let args: Vec<RatFn> = combo.iter().map(|(g, _)| g.clone()).collect();
            let mut sum = OrderedValue::zero(self.rank);
            for (_, v) in &combo {
                sum = sum.add(v);
            }
            let b = bracket(&self.algebra, &args)?;
            let bv = self.rf_value(&b)?;
            if bv <= sum.sub(w) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Bracket in the associated graded algebra: the component of the
    /// bracket in weight sum(values) - w, which is zero when the bracket's
    /// value is strictly larger. Arguments must be homogeneous.
    pub fn graded_bracket(&self, w: &OrderedValue, args: &[Poly]) -> Result<Poly> {
        for a in args {
            if a.is_zero() || self.leading_form(a)? != *a {
                return Err(Error::NonHomogeneous);
            }
        }
        let rf_args: Vec<RatFn> = args
            .iter()
            .map(|p| {
                let p = if self.algebra.is_torus() && !p.is_laurent() {
                    p.clone().into_laurent()
                } else {
                    p.clone()
                };
                RatFn::from_poly(p)
            })
            .collect();
        let b = bracket(&self.algebra, &rf_args)?;
        let bp = b
            .as_poly()
            .ok_or_else(|| Error::Precondition("bracket of homogeneous polynomials must be polynomial".into()))?;
        let mut target = OrderedValue::zero(self.rank);
        for a in args {
            target = target.add(&self.value_of(a)?);
        }
        let target = target.sub(w);
        let t = match target {
            OrderedValue::Finite(t) => t,
            OrderedValue::Infinity => return Ok(Poly::zero(self.algebra.nvars())),
        };
        Ok(bp.weighted_component(&self.weight_rows(), &t))
    }
}

/// A simple-torus weight valuation with scalar weights is faithful exactly
/// when the weights generate all of Z and the graded bracket survives:
/// the bracket value meets sum(values) with w = 0.
pub fn torus_faithful_check(v: &WeightValuation) -> Result<bool> {
    if !matches!(v.algebra, AlgebraDescriptor::Torus { .. }) {
        return Err(Error::UnsupportedFamily);
    }
    if v.rank() != 1 {
        return Err(Error::Precondition("faithfulness check needs scalar weights".into()));
    }
    let scalars: Vec<i64> = v.weights.iter().map(|w| w.as_scalar().unwrap()).collect();
    if crate::matrix::gcd_vector(&scalars) != 1 {
        return Ok(false);
    }
    let zero = OrderedValue::zero(1);
    if !v.check_w_valuation(&zero)? {
        return Ok(false);
    }
    let gens = v.algebra.generators();
    let b = bracket(&v.algebra, &gens)?;
    let bv = v.rf_value(&b)?;
    let sum = v
        .weights
        .iter()
        .fold(OrderedValue::zero(1), |acc, w| acc.add(w));
    Ok(bv == sum)
}

/// Outcome of classifying the point valuation at a smooth point of the
/// hypersurface: classical when every generator bracket vanishes there,
/// Weyl otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointValuationKind {
    Classical,
    Weyl,
}

/// Classifies the unique faithful point valuation at a rational point of
/// the hypersurface potential = xi. The point must lie on the hypersurface
/// and be a smooth point of it.
pub fn point_valuation_classify(
    alg: &AlgebraDescriptor,
    point: &[Rat],
) -> Result<PointValuationKind> {
    let (n, omega, xi) = match alg {
        AlgebraDescriptor::Potential { n, omega, kind, xi } => {
            if *kind == PotentialKind::FullPolynomial {
                return Err(Error::Precondition(
                    "point valuations are classified on the quotient hypersurface".into(),
                ));
            }
            let xi = if *kind == PotentialKind::Quotient { Rat::zero() } else { xi.clone() };
            (*n, omega, xi)
        }
        AlgebraDescriptor::Torus { .. } => return Err(Error::UnsupportedFamily),
    };
    if point.len() != n + 1 {
        return Err(Error::ArityMismatch { expected: n + 1, got: point.len() });
    }
    if omega.evaluate(point)? != xi {
        return Err(Error::PointNotOnHypersurface);
    }
    let partials: Vec<Rat> = (0..=n)
        .map(|i| omega.partial(i).and_then(|p| p.evaluate(point)))
        .collect::<Result<_>>()?;
    if partials.iter().all(|p| p.is_zero()) {
        return Err(Error::SingularPoint);
    }
    // Evaluate every generator n-subset bracket at the point.
    let gens: Vec<usize> = (0..=n).collect();
    let mut all_vanish = true;
    for combo in gens.iter().combinations(n) {
        let args: Vec<RatFn> = combo.iter().map(|&&i| RatFn::var(n + 1, i)).collect();
        let b = bracket(alg, &args)?
            .as_poly()
            .expect("generator bracket is polynomial");
        if !b.evaluate(point)?.is_zero() {
            all_vanish = false;
            break;
        }
    }
    Ok(if all_vanish { PointValuationKind::Classical } else { PointValuationKind::Weyl })
}

/// Which grading produced an Adams-type valuation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AdamsLabel {
    /// Weights +1 on every generator.
    Identity,
    /// Weights -1 on every generator.
    NegIdentity,
    /// Weights -1 on the shifted quotient, whose graded ring is the
    /// unshifted quotient.
    Connected,
}

#[derive(Debug, Clone)]
pub struct AdamsValuation {
    pub label: AdamsLabel,
    pub valuation: WeightValuation,
    /// The natural w for which this is a w-valuation: the homogeneity
    /// defect of the potential, signed by the grading direction.
    pub w: OrderedValue,
}

/// Homogeneity defect d0 = deg(omega) - (n + 1) of a homogeneous potential.
pub fn homogeneity_defect(alg: &AlgebraDescriptor) -> Result<i64> {
    match alg {
        AlgebraDescriptor::Potential { n, omega, .. } => {
            let degs: Vec<i64> = omega.terms().map(|(e, _)| e.iter().sum()).collect();
            let Some(&d) = degs.first() else {
                return Err(Error::ConstantPotential);
            };
            if degs.iter().any(|&x| x != d) {
                return Err(Error::Precondition("potential is not homogeneous".into()));
            }
            Ok(d - (*n as i64 + 1))
        }
        AlgebraDescriptor::Torus { .. } => Err(Error::UnsupportedFamily),
    }
}

/// The valuations induced by the standard generator gradings: weights all
/// +1 and all -1 on the polynomial ring or its unshifted quotient, and
/// weights all -1 on the shifted quotient (where only that one survives).
pub fn adams_valuations(alg: &AlgebraDescriptor) -> Result<Vec<AdamsValuation>> {
    let d0 = homogeneity_defect(alg)?;
    let nvars = alg.nvars();
    let kind = match alg {
        AlgebraDescriptor::Potential { kind, xi, .. } => {
            if *kind == PotentialKind::ShiftedQuotient && xi.is_zero() {
                PotentialKind::Quotient
            } else {
                *kind
            }
        }
        AlgebraDescriptor::Torus { .. } => unreachable!(),
    };
    let plus = WeightValuation::scalar(alg.clone(), &vec![1; nvars])?;
    let minus = WeightValuation::scalar(alg.clone(), &vec![-1; nvars])?;
    let out = match kind {
        PotentialKind::FullPolynomial | PotentialKind::Quotient => vec![
            AdamsValuation {
                label: AdamsLabel::Identity,
                valuation: plus,
                w: OrderedValue::scalar(-d0),
            },
            AdamsValuation {
                label: AdamsLabel::NegIdentity,
                valuation: minus,
                w: OrderedValue::scalar(d0),
            },
        ],
        PotentialKind::ShiftedQuotient => vec![AdamsValuation {
            label: AdamsLabel::Connected,
            valuation: minus,
            w: OrderedValue::scalar(d0),
        }],
    };
    Ok(out)
}
