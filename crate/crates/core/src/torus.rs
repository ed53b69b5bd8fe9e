//! Invariants of torus-type Nambu-Poisson fields: the gcd invariant and
//! normal forms with unimodular witnesses, isomorphism and embedding
//! deciders, cap classifiers, and depth/width lookups backed by the
//! classification theorems.

use num::{BigInt, One, Zero};

use crate::bracket::{bracket, AlgebraDescriptor, PotentialKind};
use crate::error::{Error, Result};
use crate::groebner::is_isolated_singularity;
use crate::matrix::{complete_unimodular, gcd_vector, IntMatrix};
use crate::pde::{self, PdeSide};
use crate::poly::{Poly, Rat};
use crate::ratfn::RatFn;
use crate::valuation::{homogeneity_defect, OrderedValue, WeightValuation};

/// Symbolic names for the fields under study.
#[derive(Debug, Clone, PartialEq)]
pub enum FieldDescriptor {
    /// Fraction field of the torus with bracket q * x_1..x_n.
    QSkew { n: usize, q: Rat },
    /// Fraction field of the torus with bracket x_1^k * x_1..x_n.
    Nk { n: usize, k: u64 },
    /// Fraction field with bracket 1.
    Weyl { n: usize },
    /// Fraction field of a potential algebra or its quotients.
    PotentialField { alg: AlgebraDescriptor },
}

impl FieldDescriptor {
    pub fn arity(&self) -> usize {
        match self {
            FieldDescriptor::QSkew { n, .. }
            | FieldDescriptor::Nk { n, .. }
            | FieldDescriptor::Weyl { n } => *n,
            FieldDescriptor::PotentialField { alg } => alg.arity(),
        }
    }
}

/// The three shapes a cap can take on the studied fields.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GammaCap {
    WholeField,
    /// The defining affine subalgebra.
    SubalgebraB,
    /// The polynomial subalgebra on the distinguished generator.
    SubalgebraX1,
    GroundField,
}

/// gcd of the bracket exponent vector; classifies the torus when nonzero.
pub fn kappa_invariant(kappa: &[i64]) -> u64 {
    gcd_vector(kappa)
}

#[derive(Debug, Clone)]
pub struct TorusNormalForm {
    pub q: Rat,
    pub kappa: Vec<i64>,
    /// Unimodular matrix whose rows give the monomial substitution
    /// x_i -> prod_j x_j^(a_ij) carrying the normal form into the input.
    pub witness: IntMatrix,
}

/// Normalizes T(q, kappa) with kappa != 0 to T(1, (gcd(kappa), 0, .., 0)).
/// The witness substitution is checked against the bracket-transport
/// identity before returning.
pub fn torus_normal_form(q: &Rat, kappa: &[i64]) -> Result<TorusNormalForm> {
    let g = gcd_vector(kappa);
    if g == 0 {
        return Err(Error::ZeroKappa);
    }
    let n = kappa.len();
    let primitive: Vec<i64> = kappa.iter().map(|&k| k / g as i64).collect();
    let witness = complete_unimodular(&primitive)?;

    // Transport check: with y_i = x^(row i), the bracket ratio
    // {y_1..y_n} (y_1..y_n)^(-1) equals det(A) q x^kappa = det(A) q y_1^g.
    let alg = AlgebraDescriptor::torus(n, q.clone(), kappa.to_vec())?;
    let ys: Vec<RatFn> = (0..n)
        .map(|i| RatFn::from_poly(Poly::from_term(n, witness.row(i).to_vec(), Rat::one()).into_laurent()))
        .collect();
    let b = bracket(&alg, &ys)?;
    let mut prod_inv = RatFn::from_poly(Poly::one(n).into_laurent());
    for y in &ys {
        prod_inv = &prod_inv * &y.pow(-1)?;
    }
    let lhs = &b * &prod_inv;
    let det = witness.det()?;
    let det_rat = Rat::from_integer(det.clone());
    let expected = RatFn::from_poly(
        Poly::from_term(n, kappa.to_vec(), det_rat * q.clone()).into_laurent(),
    );
    if !lhs.equal(&expected) {
        return Err(Error::Precondition(
            "normal-form witness failed the transport identity; this is a bug".into(),
        ));
    }

    let mut normalized = vec![0i64; n];
    normalized[0] = g as i64;
    Ok(TorusNormalForm { q: Rat::one(), kappa: normalized, witness })
}

/// Isomorphism test for T(q, kappa) against T(q', kappa').
pub fn torus_iso_decide(q: &Rat, kappa: &[i64], q2: &Rat, kappa2: &[i64]) -> bool {
    let g1 = gcd_vector(kappa);
    let g2 = gcd_vector(kappa2);
    if g1 != g2 {
        return false;
    }
    if g1 > 0 {
        return true;
    }
    q == q2 || *q == -q2.clone()
}

/// Witness data for a positive embedding decision.
#[derive(Debug, Clone)]
pub enum EmbedWitness {
    /// Generator images in the target field, verified as an exact solution
    /// of the corresponding Jacobian equation.
    PowerMap { images: Vec<RatFn> },
    /// Images generating a subtorus of the target whose bracket ratio is
    /// scalar * u^k; the scalar is removable over a closed field.
    SubtorusMap { images: Vec<RatFn>, scalar: Rat, k: u64 },
}

#[derive(Debug, Clone)]
pub enum EmbedDecision {
    Yes(EmbedWitness),
    No { citation: &'static str },
    Unknown,
}

/// Decides embeddability between the torus-type fields.
pub fn torus_embed_decide(
    source: &FieldDescriptor,
    target: &FieldDescriptor,
) -> Result<EmbedDecision> {
    let n = source.arity();
    if target.arity() != n {
        return Err(Error::DimensionMismatch { left: n, right: target.arity() });
    }
    // The Weyl field is the k = 1 member of the one-parameter family.
    let norm = |f: &FieldDescriptor| match f {
        FieldDescriptor::Weyl { n } => FieldDescriptor::Nk { n: *n, k: 1 },
        other => other.clone(),
    };
    match (norm(source), norm(target)) {
        (FieldDescriptor::QSkew { q, .. }, FieldDescriptor::QSkew { q: q2, .. }) => {
            let ratio = q.clone() / q2.clone();
            if !ratio.is_integer() {
                return Ok(EmbedDecision::No { citation: "Thm 4.16" });
            }
            let d_big: BigInt = ratio.to_integer();
            let d: i64 = i64::try_from(&d_big).map_err(|_| Error::ExponentOverflow)?;
            let mut images: Vec<RatFn> = (0..n).map(|i| RatFn::var(n, i)).collect();
            images[0] = RatFn::var(n, 0).pow(d)?;
            let a = PdeSide::monomial(q2.clone(), vec![1; n]);
            let b = PdeSide::monomial(q.clone(), vec![1; n]);
            if !pde::verify_pde_solution(&a, &b, &images)? {
                return Err(Error::Precondition(
                    "power-map witness failed verification; this is a bug".into(),
                ));
            }
            Ok(EmbedDecision::Yes(EmbedWitness::PowerMap { images }))
        }
        (FieldDescriptor::Nk { k, .. }, FieldDescriptor::Nk { k: k2, .. }) => {
            if k2 < k {
                return Ok(EmbedDecision::No { citation: "Cor 4.9" });
            }
            if k2 % k != 0 {
                return Ok(EmbedDecision::Unknown);
            }
            let d = (k2 / k) as i64;
            let mut images: Vec<RatFn> = (0..n)
                .map(|i| {
                    let mut e = vec![0i64; n];
                    e[i] = 1;
                    RatFn::from_poly(Poly::from_term(n, e, Rat::one()).into_laurent())
                })
                .collect();
            let mut e0 = vec![0i64; n];
            e0[0] = d;
            images[0] = RatFn::from_poly(Poly::from_term(n, e0, Rat::one()).into_laurent());
            verify_subtorus_witness(n, k2, &images, d, k)?;
            Ok(EmbedDecision::Yes(EmbedWitness::SubtorusMap {
                images,
                scalar: Rat::from_integer(BigInt::from(d)),
                k,
            }))
        }
        (FieldDescriptor::QSkew { .. }, FieldDescriptor::Nk { k, .. }) => {
            // The target admits a (-1)-valuation, which no q-skew field
            // maps into; exhibit one and check it.
            let mut weights = vec![0i64; n];
            weights[0] = 1;
            let alg = target_nk_algebra(n, k)?;
            let v = WeightValuation::scalar(alg, &weights)?;
            if !v.check_w_valuation(&OrderedValue::scalar(-1))? {
                return Err(Error::Precondition(
                    "separating valuation failed its own check; this is a bug".into(),
                ));
            }
            Ok(EmbedDecision::No { citation: "Cor 5.9(1)" })
        }
        (FieldDescriptor::Nk { k, .. }, FieldDescriptor::QSkew { .. }) => {
            if k >= 2 {
                // Caps separate: the source cap at w = 1 is a polynomial
                // line, the target cap is the ground field.
                Ok(EmbedDecision::No { citation: "Lem 4.8(1)" })
            } else {
                Ok(EmbedDecision::Unknown)
            }
        }
        _ => Err(Error::UnsupportedFamily),
    }
}

fn target_nk_algebra(n: usize, k: u64) -> Result<AlgebraDescriptor> {
    let mut kappa = vec![0i64; n];
    kappa[0] = k as i64;
    AlgebraDescriptor::torus(n, Rat::one(), kappa)
}

/// Checks that the images generate a subtorus of T(1, (k2, 0, .., 0))
/// whose bracket ratio is d * u^k for u the first image.
fn verify_subtorus_witness(
    n: usize,
    k2: u64,
    images: &[RatFn],
    d: i64,
    k: u64,
) -> Result<()> {
    let alg = target_nk_algebra(n, k2)?;
    let b = bracket(&alg, images)?;
    let mut prod_inv = RatFn::from_poly(Poly::one(n).into_laurent());
    for y in images {
        prod_inv = &prod_inv * &y.pow(-1)?;
    }
    let lhs = &b * &prod_inv;
    let d_rf = RatFn::constant(n, Rat::from_integer(BigInt::from(d)));
    let rhs = &d_rf
        * &images[0]
            .pow(i64::try_from(k).map_err(|_| Error::ExponentOverflow)?)?;
    if !lhs.equal(&rhs) {
        return Err(Error::Precondition(
            "subtorus witness failed verification; this is a bug".into(),
        ));
    }
    Ok(())
}

/// The invariant separating q-skew fields: the set of scalars carried by
/// quasi-faithful degenerations.
pub fn varrho_invariant(field: &FieldDescriptor) -> Result<Vec<Rat>> {
    match field {
        FieldDescriptor::QSkew { q, .. } => Ok(vec![q.clone(), -q.clone()]),
        _ => Err(Error::UnsupportedFamily),
    }
}

#[derive(Debug, Clone)]
pub enum GammaCapOutcome {
    Classified { cap: GammaCap, witness: Option<WeightValuation> },
    /// The (field, w) pair falls outside the proved cases.
    Uncovered,
}

/// Classifies the w-cap of the field where the classification theorems
/// apply; ground-field answers carry a verified witness valuation that
/// excludes the generators.
pub fn gamma_cap_classify(field: &FieldDescriptor, w: i64) -> Result<GammaCapOutcome> {
    match field {
        FieldDescriptor::Nk { n, .. } | FieldDescriptor::Weyl { n } => {
            let k = match field {
                FieldDescriptor::Weyl { .. } => 1,
                FieldDescriptor::Nk { k, .. } => *k,
                _ => unreachable!(),
            };
            let n = *n;
            if w >= 1 && (w as u64) < k {
                Ok(GammaCapOutcome::Classified { cap: GammaCap::SubalgebraX1, witness: None })
            } else if w >= 1 && w as u64 >= k {
                let mut weights = vec![0i64; n];
                weights[0] = -1;
                let alg = target_nk_algebra(n, k)?;
                let v = WeightValuation::scalar(alg, &weights)?;
                if !v.check_w_valuation(&OrderedValue::scalar(w))? {
                    return Err(Error::Precondition(
                        "cap witness failed its own check; this is a bug".into(),
                    ));
                }
                Ok(GammaCapOutcome::Classified {
                    cap: GammaCap::GroundField,
                    witness: Some(v),
                })
            } else {
                Ok(GammaCapOutcome::Uncovered)
            }
        }
        FieldDescriptor::PotentialField { alg } => gamma_cap_potential(alg, w),
        FieldDescriptor::QSkew { .. } => Ok(GammaCapOutcome::Uncovered),
    }
}

fn gamma_cap_potential(alg: &AlgebraDescriptor, w: i64) -> Result<GammaCapOutcome> {
    let AlgebraDescriptor::Potential { omega, kind, xi, .. } = alg else {
        return Err(Error::UnsupportedFamily);
    };
    let d0 = homogeneity_defect(alg)?;
    let report = is_isolated_singularity(omega)?;
    if !report.isolated || report.degenerate_degree {
        return Ok(GammaCapOutcome::Uncovered);
    }
    let shifted = *kind == PotentialKind::ShiftedQuotient && !xi.is_zero();
    if shifted && d0 >= 1 {
        if w <= 0 {
            return Ok(GammaCapOutcome::Classified { cap: GammaCap::WholeField, witness: None });
        }
        if w < d0 {
            return Ok(GammaCapOutcome::Classified { cap: GammaCap::SubalgebraB, witness: None });
        }
        // w >= d0: only the ground field survives; witness with all
        // generators at weight -1.
        let nvars = alg.nvars();
        let v = WeightValuation::scalar(alg.clone(), &vec![-1; nvars])?;
        if !v.check_w_valuation(&OrderedValue::scalar(w))? {
            return Err(Error::Precondition(
                "cap witness failed its own check; this is a bug".into(),
            ));
        }
        return Ok(GammaCapOutcome::Classified { cap: GammaCap::GroundField, witness: Some(v) });
    }
    // Unshifted rings share the middle range when d0 >= 2.
    if !shifted && d0 >= 2 && w >= 1 && w < d0 {
        return Ok(GammaCapOutcome::Classified { cap: GammaCap::SubalgebraB, witness: None });
    }
    Ok(GammaCapOutcome::Uncovered)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DepthWidth {
    Known { depth: u64, width: u64 },
    Uncovered,
}

/// Depth and width of the field, where a classification theorem pins them.
pub fn depth_width_lookup(field: &FieldDescriptor) -> Result<DepthWidth> {
    match field {
        FieldDescriptor::QSkew { .. } => Ok(DepthWidth::Known { depth: 0, width: 1 }),
        FieldDescriptor::PotentialField { alg } => {
            let AlgebraDescriptor::Potential { omega, kind, xi, .. } = alg else {
                return Err(Error::UnsupportedFamily);
            };
            let d0 = homogeneity_defect(alg)?;
            if d0 != 0 {
                return Ok(DepthWidth::Uncovered);
            }
            let report = is_isolated_singularity(omega)?;
            if !report.isolated || report.degenerate_degree {
                return Ok(DepthWidth::Uncovered);
            }
            match kind {
                PotentialKind::Quotient => Ok(DepthWidth::Known { depth: 0, width: 1 }),
                PotentialKind::ShiftedQuotient if !xi.is_zero() => {
                    Ok(DepthWidth::Known { depth: 1, width: 1 })
                }
                _ => Ok(DepthWidth::Uncovered),
            }
        }
        _ => Ok(DepthWidth::Uncovered),
    }
}
