//! Finite solution groups for power-sum potentials, automorphism-group
//! structure descriptors, and verification of monomial-permutation
//! automorphisms. Roots of unity are carried as exponent classes modulo
//! the group's natural order; all constraints are linear in exponents.

use std::collections::HashSet;

use crate::error::{Error, Result};

pub const DEFAULT_ENUMERATION_BUDGET: u128 = 50_000_000;

/// The solution families. The scaling family `G2` is infinite and is
/// represented symbolically only; enumeration refuses it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupLabel {
    G0,
    G1,
    G2,
    G3,
}

/// A finite solution set in (Z/modulus)^(n+1), closed under addition.
/// A tuple e encodes the diagonal scaling by zeta^(e_i) for a primitive
/// root of unity zeta of order `modulus`.
#[derive(Debug, Clone)]
pub struct SolutionGroup {
    pub label: GroupLabel,
    pub n: usize,
    pub d0: u64,
    pub modulus: u64,
    pub elements: Vec<Vec<u64>>,
}

impl SolutionGroup {
    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    /// Group axioms on the enumerated set: contains zero, closed under
    /// componentwise addition and negation.
    pub fn is_closed_group(&self) -> bool {
        let set: HashSet<&[u64]> = self.elements.iter().map(|e| e.as_slice()).collect();
        if !set.contains(vec![0u64; self.n + 1].as_slice()) {
            return false;
        }
        let m = self.modulus;
        for e in &self.elements {
            let neg: Vec<u64> = e.iter().map(|&x| (m - x) % m).collect();
            if !set.contains(neg.as_slice()) {
                return false;
            }
        }
        for e in &self.elements {
            for f in &self.elements {
                let sum: Vec<u64> = e.iter().zip(f).map(|(&x, &y)| (x + y) % m).collect();
                if !set.contains(sum.as_slice()) {
                    return false;
                }
            }
        }
        true
    }
}

fn check_tuple(label: GroupLabel, m: u64, modulus: u64, e: &[u64]) -> bool {
    let sum: u64 = e.iter().map(|&x| x % modulus).sum::<u64>() % modulus;
    match label {
        GroupLabel::G0 => e.iter().all(|&ei| sum == (m % modulus) * ei % modulus),
        GroupLabel::G1 => {
            sum == 0 && e.iter().all(|&ei| ((m % modulus) * ei).is_multiple_of(modulus))
        }
        GroupLabel::G3 => e.iter().all(|&ei| ((m % modulus) * ei).is_multiple_of(modulus)),
        GroupLabel::G2 => false,
    }
}

/// The natural ambient modulus for each family: every solution is a root
/// of unity of order dividing it (m*d0 for the product-identified family,
/// m otherwise).
pub fn natural_modulus(label: GroupLabel, n: usize, d0: u64) -> Result<u64> {
    let m = (n as u64) + 1 + d0;
    Ok(match label {
        GroupLabel::G0 => m * d0,
        GroupLabel::G1 | GroupLabel::G3 => m,
        GroupLabel::G2 => return Err(Error::InfiniteGroup),
    })
}

/// Enumerates the full solution set at the natural modulus.
pub fn enumerate_group(
    label: GroupLabel,
    n: usize,
    d0: u64,
    budget: Option<u128>,
) -> Result<SolutionGroup> {
    let modulus = natural_modulus(label, n, d0)?;
    enumerate_group_with_modulus(label, n, d0, modulus, budget)
}

/// Enumerates the solution set inside (Z/modulus)^(n+1). Running at a
/// multiple of the natural modulus must not add solutions; tests use this
/// to confirm the ambient order is not clipping anything.
pub fn enumerate_group_with_modulus(
    label: GroupLabel,
    n: usize,
    d0: u64,
    modulus: u64,
    budget: Option<u128>,
) -> Result<SolutionGroup> {
    if label == GroupLabel::G2 {
        return Err(Error::InfiniteGroup);
    }
    if n < 2 || d0 < 2 {
        return Err(Error::Precondition("need arity >= 2 and defect >= 2".into()));
    }
    let m = (n as u64) + 1 + d0;
    let width = n + 1;
    let budget = budget.unwrap_or(DEFAULT_ENUMERATION_BUDGET);
    let total = (modulus as u128)
        .checked_pow(width as u32)
        .ok_or(Error::BudgetExceeded { needed: u128::MAX, budget })?;
    if total > budget {
        return Err(Error::BudgetExceeded { needed: total, budget });
    }
    let mut elements = Vec::new();
    let mut e = vec![0u64; width];
    loop {
        if check_tuple(label, m, modulus, &e) {
            elements.push(e.clone());
        }
        let mut i = 0;
        loop {
            if i == width {
                return Ok(SolutionGroup { label, n, d0, modulus, elements });
            }
            e[i] += 1;
            if e[i] < modulus {
                break;
            }
            e[i] = 0;
            i += 1;
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuotientGroup {
    /// Full symmetric group on the n+1 generators.
    Symmetric,
    /// Alternating subgroup only.
    Alternating,
}

impl QuotientGroup {
    pub fn order(&self, degree: usize) -> u64 {
        let fact: u64 = (1..=degree as u64).product();
        match self {
            QuotientGroup::Symmetric => fact,
            QuotientGroup::Alternating => fact / 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SplitStatus {
    Split,
    NonSplit,
    /// The extension exists but no splitting claim is made.
    Unstated,
}

/// Structure of the automorphism group as an extension of a permutation
/// quotient by a diagonal solution group.
#[derive(Debug, Clone)]
pub struct AutStructure {
    pub n: usize,
    pub d0: u64,
    pub xi_is_zero: bool,
    pub kernel: SolutionGroup,
    pub quotient: QuotientGroup,
    pub split: SplitStatus,
    pub order: u128,
}

/// Automorphism-group structure for the power-sum potential of defect d0:
/// the unshifted quotient has the product-identified kernel over the full
/// symmetric group (split exactly for odd d0); shifted quotients have the
/// product-one kernel, with the quotient dropping to the alternating
/// group when n + d0 is even.
pub fn fermat_aut_structure(
    n: usize,
    d0: u64,
    xi_is_zero: bool,
    budget: Option<u128>,
) -> Result<AutStructure> {
    if d0 < 2 {
        return Err(Error::Precondition("defect must be at least 2".into()));
    }
    let (kernel, quotient, split) = if xi_is_zero {
        let kernel = enumerate_group(GroupLabel::G0, n, d0, budget)?;
        let split = if d0 % 2 == 1 { SplitStatus::Split } else { SplitStatus::NonSplit };
        (kernel, QuotientGroup::Symmetric, split)
    } else {
        let kernel = enumerate_group(GroupLabel::G1, n, d0, budget)?;
        let quotient = if (n as u64 + d0).is_multiple_of(2) {
            QuotientGroup::Alternating
        } else {
            QuotientGroup::Symmetric
        };
        (kernel, quotient, SplitStatus::Split)
    };
    let order = kernel.order() as u128 * quotient.order(n + 1) as u128;
    Ok(AutStructure { n, d0, xi_is_zero, kernel, quotient, split, order })
}

/// Structure of the algebra automorphisms fixing the potential itself:
/// kernel from the unconstrained root family over the symmetric group.
pub fn fixed_potential_structure(
    n: usize,
    d0: u64,
    budget: Option<u128>,
) -> Result<AutStructure> {
    if d0 < 2 {
        return Err(Error::Precondition("defect must be at least 2".into()));
    }
    let kernel = enumerate_group(GroupLabel::G3, n, d0, budget)?;
    let order = kernel.order() as u128 * QuotientGroup::Symmetric.order(n + 1) as u128;
    Ok(AutStructure {
        n,
        d0,
        xi_is_zero: true,
        kernel,
        quotient: QuotientGroup::Symmetric,
        split: SplitStatus::Unstated,
        order,
    })
}

/// Brute search for one diagonal tuple making the given permutation a
/// bracket automorphism: scans (Z/modulus)^(n+1) for a solution of the
/// sign equations. Existence per permutation backs the quotient claim in
/// the structure descriptors.
pub fn solve_sign_equations(
    n: usize,
    d0: u64,
    sigma: &[usize],
    modulus: u64,
    budget: Option<u128>,
) -> Result<Option<Vec<u64>>> {
    let width = n + 1;
    let budget = budget.unwrap_or(DEFAULT_ENUMERATION_BUDGET);
    let total = (modulus as u128)
        .checked_pow(width as u32)
        .ok_or(Error::BudgetExceeded { needed: u128::MAX, budget })?;
    if total > budget {
        return Err(Error::BudgetExceeded { needed: total, budget });
    }
    let mut e = vec![0u64; width];
    loop {
        if verify_monomial_automorphism(n, d0, sigma, &e, modulus, false)? {
            return Ok(Some(e));
        }
        let mut i = 0;
        loop {
            if i == width {
                return Ok(None);
            }
            e[i] += 1;
            if e[i] < modulus {
                break;
            }
            e[i] = 0;
            i += 1;
        }
    }
}

fn permutation_sign(sigma: &[usize]) -> Result<i32> {
    let n = sigma.len();
    let mut seen = vec![false; n];
    for &s in sigma {
        if s >= n || seen[s] {
            return Err(Error::Precondition("not a permutation".into()));
        }
        seen[s] = true;
    }
    let mut inversions = 0u64;
    for i in 0..n {
        for j in i + 1..n {
            if sigma[i] > sigma[j] {
                inversions += 1;
            }
        }
    }
    Ok(if inversions.is_multiple_of(2) { 1 } else { -1 })
}

/// Checks in exponent arithmetic that the map x_i -> a_i x_sigma(i), with
/// a_i = zeta^(exps_i) for zeta of order `modulus`, satisfies the bracket
/// compatibility: prod_(s != i) a_s = sgn(sigma) a_i^(n+d0) for all i,
/// and additionally prod a_i = sgn(sigma) when `fix_shifted` is set (the
/// shifted-quotient mode).
pub fn verify_monomial_automorphism(
    n: usize,
    d0: u64,
    sigma: &[usize],
    exps: &[u64],
    modulus: u64,
    fix_shifted: bool,
) -> Result<bool> {
    if sigma.len() != n + 1 {
        return Err(Error::ArityMismatch { expected: n + 1, got: sigma.len() });
    }
    if exps.len() != n + 1 {
        return Err(Error::ArityMismatch { expected: n + 1, got: exps.len() });
    }
    if modulus == 0 || exps.iter().any(|&e| e >= modulus) {
        return Err(Error::ModulusMismatch(format!(
            "exponents must lie below the modulus {modulus}"
        )));
    }
    let sign = permutation_sign(sigma)?;
    let sign_exp: u64 = if sign == 1 {
        0
    } else {
        if !modulus.is_multiple_of(2) {
            return Err(Error::ModulusMismatch(
                "an odd permutation needs an even modulus to encode the sign".into(),
            ));
        }
        modulus / 2
    };
    let total: u64 = exps.iter().map(|&e| e % modulus).sum::<u64>() % modulus;
    let power = (n as u64 + d0) % modulus;
    for &ei in exps {
        let lhs = (total + modulus - ei % modulus) % modulus;
        let rhs = (sign_exp + power * ei) % modulus;
        if lhs != rhs {
            return Ok(false);
        }
    }
    if fix_shifted && total != sign_exp {
        return Ok(false);
    }
    Ok(true)
}
