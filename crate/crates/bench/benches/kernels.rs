//! Benchmarks for the three hot kernels: basis reduction for the
//! staircase count, the bracket determinant, and the modular lattice
//! enumeration behind the solution groups.

use criterion::{criterion_group, criterion_main, Criterion};

use nambu_bench::power_sum;
use nambu_core::*;

fn bench_groebner(c: &mut Criterion) {
    // partials ideal of a perturbed power sum: forces nontrivial pairs
    let omega = &power_sum(3, 4) + &Poly::from_term(3, vec![1, 1, 2], rat(2));
    c.bench_function("groebner_staircase_dim", |b| {
        b.iter(|| {
            let report = is_isolated_singularity(std::hint::black_box(&omega)).unwrap();
            std::hint::black_box(report.dimension)
        })
    });
}

fn bench_bracket(c: &mut Criterion) {
    let alg = AlgebraDescriptor::potential(3, power_sum(4, 4)).unwrap();
    let args: Vec<RatFn> = vec![
        RatFn::from_poly(&Poly::var(4, 0) + &(&Poly::var(4, 1) * &Poly::var(4, 1))),
        RatFn::from_poly(&Poly::var(4, 1) - &Poly::var(4, 2)),
        RatFn::from_poly(&(&Poly::var(4, 2) * &Poly::var(4, 3)) + &Poly::one(4)),
    ];
    c.bench_function("bracket_determinant", |b| {
        b.iter(|| bracket(std::hint::black_box(&alg), std::hint::black_box(&args)).unwrap())
    });
}

fn bench_enumeration(c: &mut Criterion) {
    c.bench_function("solution_group_g0_n3_d2", |b| {
        b.iter(|| enumerate_group(GroupLabel::G0, 3, 2, None).unwrap().order())
    });
}

criterion_group!(benches, bench_groebner, bench_bracket, bench_enumeration);
criterion_main!(benches);
