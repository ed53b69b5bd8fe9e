//! Randomized algebraic invariants, all exact: no tolerances anywhere.

use nambu_core::*;
use proptest::prelude::*;

fn small_poly(nvars: usize, max_exp: i64) -> impl Strategy<Value = Poly> {
    let term = (
        prop::collection::vec(0..=max_exp, nvars),
        (-3i64..=3).prop_filter("nonzero", |c| *c != 0),
    );
    prop::collection::vec(term, 0..4).prop_map(move |terms| {
        Poly::from_terms(
            nvars,
            false,
            terms.into_iter().map(|(e, c)| (e, rat(c))).collect(),
        )
        .unwrap()
    })
}

fn nonzero_poly(nvars: usize, max_exp: i64) -> impl Strategy<Value = Poly> {
    small_poly(nvars, max_exp).prop_filter("nonzero", |p| !p.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn arithmetic_preserves_structural_invariants(
        a in small_poly(3, 2),
        b in small_poly(3, 2),
    ) {
        let sum = &a + &b;
        let prod = &a * &b;
        prop_assert!(sum.check_invariants());
        prop_assert!(prod.check_invariants());
        prop_assert!(a.partial(0).unwrap().check_invariants());
    }

    #[test]
    fn poly_mul_is_associative(
        a in small_poly(3, 2),
        b in small_poly(3, 2),
        c in small_poly(3, 2),
    ) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn poly_mul_distributes_over_add(
        a in small_poly(3, 2),
        b in small_poly(3, 2),
        c in small_poly(3, 2),
    ) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn partials_commute(f in small_poly(3, 3), i in 0usize..3, j in 0usize..3) {
        let ij = f.partial(i).unwrap().partial(j).unwrap();
        let ji = f.partial(j).unwrap().partial(i).unwrap();
        prop_assert_eq!(ij, ji);
    }

    #[test]
    fn determinant_is_alternating_in_rows(
        r0 in prop::collection::vec(small_poly(2, 1), 3),
        r1 in prop::collection::vec(small_poly(2, 1), 3),
        swap in 0usize..3,
    ) {
        let m = vec![r0.clone(), r1.clone(), r0.clone()];
        prop_assert!(matrix_det(&m).unwrap().is_zero());
        // swapping two rows negates
        let mut rows = vec![r0, r1.clone(), r1];
        rows[2] = rows[swap].clone();
        let before = matrix_det(&rows).unwrap();
        rows.swap(0, 1);
        let after = matrix_det(&rows).unwrap();
        prop_assert_eq!(before, -&after);
    }

    #[test]
    fn determinant_is_multilinear_in_a_row(
        r0 in prop::collection::vec(small_poly(2, 1), 3),
        r1 in prop::collection::vec(small_poly(2, 1), 3),
        r2 in prop::collection::vec(small_poly(2, 1), 3),
        extra in prop::collection::vec(small_poly(2, 1), 3),
        scale in -3i64..=3,
    ) {
        let base = vec![r0.clone(), r1.clone(), r2.clone()];
        let sum_row: Vec<Poly> = r0
            .iter()
            .zip(&extra)
            .map(|(a, b)| &a.scale(&rat(scale)) + b)
            .collect();
        let with_sum = vec![sum_row, r1.clone(), r2.clone()];
        let with_extra = vec![extra, r1, r2];
        let lhs = matrix_det(&with_sum).unwrap();
        let rhs = &matrix_det(&base).unwrap().scale(&rat(scale)) + &matrix_det(&with_extra).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn fraction_equality_is_an_equivalence(
        n1 in small_poly(2, 2), d1 in nonzero_poly(2, 2),
        n2 in small_poly(2, 2), d2 in nonzero_poly(2, 2),
        n3 in small_poly(2, 2), d3 in nonzero_poly(2, 2),
    ) {
        let a = RatFn::new(n1, d1).unwrap();
        let b = RatFn::new(n2, d2).unwrap();
        let c = RatFn::new(n3, d3).unwrap();
        prop_assert!(a.equal(&a));
        prop_assert_eq!(a.equal(&b), b.equal(&a));
        if a.equal(&b) && b.equal(&c) {
            prop_assert!(a.equal(&c));
        }
    }

    #[test]
    fn unimodular_completion_is_unimodular(
        mut v in prop::collection::vec(-9i64..=9, 1..5),
    ) {
        if gcd_vector(&v) != 1 {
            // force primitivity by appending a unit
            v.push(1);
        }
        let m = complete_unimodular(&v).unwrap();
        prop_assert_eq!(m.row(0), v.as_slice());
        let det = m.det().unwrap();
        prop_assert!(det == 1.into() || det == (-1).into());
    }

    #[test]
    fn bracket_is_multilinear_in_the_first_slot(
        f in small_poly(4, 2),
        g in small_poly(4, 2),
        h in small_poly(4, 2),
        k in small_poly(4, 2),
        c in -3i64..=3,
    ) {
        let omega = Poly::from_term(4, vec![1, 1, 1, 1], rat(1));
        let alg = AlgebraDescriptor::potential(3, omega).unwrap();
        let wrap = RatFn::from_poly;
        let combined = &f.scale(&rat(c)) + &g;
        let lhs = bracket(&alg, &[wrap(combined), wrap(h.clone()), wrap(k.clone())]).unwrap();
        let t1 = bracket(&alg, &[wrap(f), wrap(h.clone()), wrap(k.clone())]).unwrap();
        let t2 = bracket(&alg, &[wrap(g), wrap(h), wrap(k)]).unwrap();
        let rhs = &(&RatFn::constant(4, rat(c)) * &t1) + &t2;
        prop_assert!(lhs.equal(&rhs));
    }

    #[test]
    fn bracket_vanishes_on_repeated_arguments(
        f in small_poly(4, 2),
        g in small_poly(4, 2),
        slot in 0usize..2,
    ) {
        let omega = &Poly::from_term(4, vec![4, 0, 0, 0], rat(1)) + &Poly::from_term(4, vec![0, 1, 1, 1], rat(1));
        let alg = AlgebraDescriptor::potential(3, omega).unwrap();
        let wrap = RatFn::from_poly;
        let mut args = vec![wrap(f.clone()), wrap(g), wrap(f)];
        if slot == 1 {
            args.swap(1, 2);
        }
        let b = bracket(&alg, &args).unwrap();
        prop_assert!(b.num.is_zero());
    }

    #[test]
    fn monomial_transport_identity(
        entries in prop::collection::vec(-2i64..=2, 9),
        qn in (-6i64..=6).prop_filter("nonzero", |q| *q != 0),
        kappa in prop::collection::vec(-2i64..=2, 3),
    ) {
        let alg = AlgebraDescriptor::torus(3, rat(qn), kappa).unwrap();
        let rows: Vec<Vec<i64>> = entries.chunks(3).map(|c| c.to_vec()).collect();
        let det = {
            let m = IntMatrix::new(3, 3, entries.clone());
            i64::try_from(&m.det().unwrap()).unwrap()
        };
        let ys: Vec<RatFn> = rows
            .iter()
            .map(|r| RatFn::from_poly(Poly::from_term(3, r.clone(), rat(1)).into_laurent()))
            .collect();
        let gens: Vec<RatFn> = (0..3)
            .map(|i| {
                let mut e = vec![0i64; 3];
                e[i] = 1;
                RatFn::from_poly(Poly::from_term(3, e, rat(1)).into_laurent())
            })
            .collect();
        let ratio_of = |args: &[RatFn]| -> RatFn {
            let b = bracket(&alg, args).unwrap();
            let mut inv = RatFn::from_poly(Poly::one(3).into_laurent());
            for a in args {
                inv = &inv * &a.pow(-1).unwrap();
            }
            &b * &inv
        };
        let lhs = ratio_of(&ys);
        let rhs = &RatFn::constant(3, rat(det)) * &ratio_of(&gens);
        prop_assert!(lhs.equal(&rhs));
    }

    #[test]
    fn weight_values_are_multiplicative(
        f in nonzero_poly(4, 3),
        g in nonzero_poly(4, 3),
        w in prop::collection::vec(-3i64..=3, 4),
    ) {
        let omega = Poly::from_term(4, vec![1, 1, 1, 1], rat(1));
        let alg = AlgebraDescriptor::potential(3, omega).unwrap();
        let v = WeightValuation::scalar(alg, &w).unwrap();
        let lhs = v.value_of(&(&f * &g)).unwrap();
        let rhs = v.value_of(&f).unwrap().add(&v.value_of(&g).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn weight_values_are_subadditive(
        f in small_poly(4, 3),
        g in small_poly(4, 3),
        w in prop::collection::vec(-3i64..=3, 4),
    ) {
        let omega = Poly::from_term(4, vec![1, 1, 1, 1], rat(1));
        let alg = AlgebraDescriptor::potential(3, omega).unwrap();
        let v = WeightValuation::scalar(alg, &w).unwrap();
        let vf = v.value_of(&f).unwrap();
        let vg = v.value_of(&g).unwrap();
        let vsum = v.value_of(&(&f + &g)).unwrap();
        let bound = vf.clone().min(vg.clone());
        prop_assert!(vsum >= bound);
        if vf != vg {
            prop_assert_eq!(vsum, vf.min(vg));
        }
    }

    #[test]
    fn leading_forms_multiply(
        f in nonzero_poly(4, 3),
        g in nonzero_poly(4, 3),
        w in prop::collection::vec(-3i64..=3, 4),
    ) {
        let omega = Poly::from_term(4, vec![1, 1, 1, 1], rat(1));
        let alg = AlgebraDescriptor::potential(3, omega).unwrap();
        let v = WeightValuation::scalar(alg, &w).unwrap();
        let lhs = v.leading_form(&(&f * &g)).unwrap();
        let rhs = &v.leading_form(&f).unwrap() * &v.leading_form(&g).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn fraction_value_is_representative_free(
        n in small_poly(4, 2),
        d in nonzero_poly(4, 2),
        m in nonzero_poly(4, 2),
        w in prop::collection::vec(-3i64..=3, 4),
    ) {
        let omega = Poly::from_term(4, vec![1, 1, 1, 1], rat(1));
        let alg = AlgebraDescriptor::potential(3, omega).unwrap();
        let v = WeightValuation::scalar(alg, &w).unwrap();
        let p = RatFn::new(n, d).unwrap();
        let scaled = RatFn::new(&p.num * &m, &p.den * &m).unwrap();
        prop_assert_eq!(v.rf_value(&p).unwrap(), v.rf_value(&scaled).unwrap());
    }

    #[test]
    fn ordered_values_translate(
        a in prop::collection::vec(-5i64..=5, 2),
        b in prop::collection::vec(-5i64..=5, 2),
        c in prop::collection::vec(-5i64..=5, 2),
    ) {
        let (a, b, c) = (
            OrderedValue::Finite(a),
            OrderedValue::Finite(b),
            OrderedValue::Finite(c),
        );
        if a < b {
            prop_assert!(a.add(&c) < b.add(&c));
        }
        // totality: exactly one of <, ==, > holds
        let lt = a < b;
        let gt = a > b;
        let eq = a == b;
        prop_assert_eq!(1, lt as u8 + gt as u8 + eq as u8);
    }

    #[test]
    fn groebner_bases_verify_on_random_ideals(
        g1 in nonzero_poly(3, 2),
        g2 in nonzero_poly(3, 2),
    ) {
        let gens = vec![g1, g2];
        let gb = buchberger(&gens, MonomialOrder::DegRevLex).unwrap();
        prop_assert!(gb.verify(&gens));
    }

    #[test]
    fn torus_iso_is_reflexive_and_symmetric(
        q1 in (-6i64..=6).prop_filter("nonzero", |q| *q != 0),
        q2 in (-6i64..=6).prop_filter("nonzero", |q| *q != 0),
        k1 in prop::collection::vec(-3i64..=3, 3),
        k2 in prop::collection::vec(-3i64..=3, 3),
    ) {
        let (q1, q2) = (rat(q1), rat(q2));
        prop_assert!(torus_iso_decide(&q1, &k1, &q1, &k1));
        prop_assert_eq!(
            torus_iso_decide(&q1, &k1, &q2, &k2),
            torus_iso_decide(&q2, &k2, &q1, &k1)
        );
    }

    #[test]
    fn unsolvable_instances_resist_random_witnesses(
        exps in prop::collection::vec(prop::collection::vec(-1i64..=2, 3), 3),
        coeffs in prop::collection::vec((-2i64..=2).prop_filter("nonzero", |c| *c != 0), 3),
    ) {
        let witness: Vec<RatFn> = exps
            .into_iter()
            .zip(coeffs)
            .map(|(e, c)| PdeSide::monomial(rat(c), e).as_ratfn())
            .collect();
        // refused by the scalar criterion: ratio 3/2
        let a = PdeSide::monomial(rat(2), vec![1, 1, 1]);
        let b = PdeSide::monomial(rat(3), vec![1, 1, 1]);
        let refused = matches!(pde_decide(&a, &b).unwrap(), PdeVerdict::Unsolvable { .. });
        prop_assert!(refused);
        prop_assert!(!verify_pde_solution(&a, &b, &witness).unwrap());
        // refused by the invariant drop: source gcd 3 against target gcd 2
        let a = PdeSide::monomial(rat(1), vec![3, 1, 1]);
        let b = PdeSide::monomial(rat(1), vec![4, 1, 1]);
        let refused = matches!(pde_decide(&a, &b).unwrap(), PdeVerdict::Unsolvable { .. });
        prop_assert!(refused);
        prop_assert!(!verify_pde_solution(&a, &b, &witness).unwrap());
    }
}
