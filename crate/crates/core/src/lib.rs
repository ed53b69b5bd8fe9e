//! Exact symbolic computation for Nambu-Poisson algebras.
//!
//! The crate provides, over exact rational arithmetic: the n-ary bracket
//! determined by a potential or a torus datum, axiom verifiers, weight
//! valuations with their filtrations and graded brackets, a Buchberger
//! engine deciding the isolated-singularity property, torus invariants
//! with isomorphism and embedding deciders, finite automorphism solution
//! groups, and a solvability decider for separable Jacobian equations.
//! All positive decisions carry witnesses that are re-verified exactly;
//! everything outside the proved catalogue reports itself as unknown.

pub mod autgroups;
pub mod bracket;
pub mod error;
pub mod groebner;
pub mod matrix;
pub mod pde;
pub mod poly;
pub mod ratfn;
pub mod torus;
pub mod valuation;

pub use autgroups::{
    enumerate_group, enumerate_group_with_modulus, fermat_aut_structure,
    fixed_potential_structure, solve_sign_equations, verify_monomial_automorphism,
    AutStructure, GroupLabel, QuotientGroup, SolutionGroup, SplitStatus,
};
pub use bracket::{
    bracket, center_test, epsilon_morphism_scalar, jacobian_det, verify_alternating,
    verify_fundamental_identity, verify_leibniz, AlgebraDescriptor, EpsilonFailure,
    LeibnizSample, PotentialKind, VerifyReport,
};
pub use error::{Error, Result};
pub use groebner::{
    buchberger, is_isolated_singularity, GroebnerBasis, MonomialOrder, QuotientDim,
    SingularityReport,
};
pub use matrix::{complete_unimodular, gcd_vector, matrix_det, matrix_det_ratfn, IntMatrix};
pub use pde::{
    pde_compose, pde_decide, verify_pde_solution, PdeSide, PdeVerdict, SolvableFact,
};
pub use poly::{rat, ratio, Poly, Rat};
pub use ratfn::{substitute, RatFn};
pub use torus::{
    depth_width_lookup, gamma_cap_classify, kappa_invariant, torus_embed_decide,
    torus_iso_decide, torus_normal_form, varrho_invariant, DepthWidth, EmbedDecision,
    EmbedWitness, FieldDescriptor, GammaCap, GammaCapOutcome, TorusNormalForm,
};
pub use valuation::{
    adams_valuations, homogeneity_defect, point_valuation_classify, torus_faithful_check,
    AdamsLabel, AdamsValuation, OrderedValue, PointValuationKind, WeightValuation,
};
