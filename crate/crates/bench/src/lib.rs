//! Shared fixtures for the benchmark targets.

use nambu_core::{rat, Poly};

/// t1^d + ... + t_nvars^d.
pub fn power_sum(nvars: usize, d: i64) -> Poly {
    let mut acc = Poly::zero(nvars);
    for i in 0..nvars {
        let mut e = vec![0; nvars];
        e[i] = d;
        acc = &acc + &Poly::from_term(nvars, e, rat(1));
    }
    acc
}
