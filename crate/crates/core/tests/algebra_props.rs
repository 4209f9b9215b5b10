use luroth_core::algebra::{
    content_primitive, poly_divmod, poly_gcd, ratfunc_normalize, Monomial, SparsePoly, TermOrder,
    YPoly,
};
use luroth_core::{FieldSpec, MultiPoly, RatFunc, Scalar};
use proptest::prelude::*;

const Q: FieldSpec = FieldSpec::Rationals;
const N: usize = 2;

fn poly_in(field: FieldSpec, n: usize, max_exp: u32, max_terms: usize) -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((prop::collection::vec(0..=max_exp, n), -6i64..=6), 0..=max_terms).prop_map(
        move |terms| {
            MultiPoly::from_terms(
                field,
                n,
                terms
                    .into_iter()
                    .map(|(e, c)| (Monomial::from_exponents(&e), Scalar::from_i64(field, c))),
            )
        },
    )
}

fn poly() -> impl Strategy<Value = MultiPoly> {
    poly_in(Q, N, 3, 5)
}

fn nonzero_poly() -> impl Strategy<Value = MultiPoly> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

fn ratfunc() -> impl Strategy<Value = RatFunc> {
    (poly(), nonzero_poly()).prop_map(|(a, b)| RatFunc::new(a, b).unwrap())
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (-20i64..=20, 1i64..=9).prop_map(|(a, b)| Scalar::from_fraction(Q, a, b).unwrap())
}

fn divides(d: &MultiPoly, f: &MultiPoly) -> bool {
    f.exact_div(d).is_some()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gcd_of_common_multiples(f in nonzero_poly(), g in nonzero_poly(), h in nonzero_poly()) {
        let lhs = poly_gcd(&(&f * &h), &(&g * &h));
        let rhs = (&h * &poly_gcd(&f, &g)).make_monic();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn gcd_divides_both(f in nonzero_poly(), g in nonzero_poly()) {
        let d = poly_gcd(&f, &g);
        prop_assert!(divides(&d, &f) && divides(&d, &g));
        prop_assert!(d.leading_coeff().unwrap().is_one());
    }

    #[test]
    fn gcd_over_prime_field(f in poly_in(FieldSpec::Prime(7), 2, 3, 4), g in poly_in(FieldSpec::Prime(7), 2, 3, 4), h in poly_in(FieldSpec::Prime(7), 2, 2, 3)) {
        prop_assume!(!f.is_zero() && !g.is_zero() && !h.is_zero());
        let lhs = poly_gcd(&(&f * &h), &(&g * &h));
        prop_assert_eq!(lhs, (&h * &poly_gcd(&f, &g)).make_monic());
    }

    #[test]
    fn normalize_is_idempotent(a in ratfunc()) {
        let again = ratfunc_normalize(a.numer(), a.denom()).unwrap();
        prop_assert_eq!(&again, &a);
        prop_assert!(poly_gcd(a.numer(), a.denom()).is_one());
        prop_assert!(a.denom().leading_coeff().unwrap().is_one());
    }

    #[test]
    fn divmod_reconstructs(f in poly(), d1 in nonzero_poly(), d2 in nonzero_poly()) {
        let lift = |p: &MultiPoly| SparsePoly::from_terms(N, TermOrder::Grevlex, p.terms().iter().cloned());
        let (qs, r) = poly_divmod(&lift(&f), &[lift(&d1), lift(&d2)]).unwrap();
        let back = qs[0].mul(&lift(&d1)).add(&qs[1].mul(&lift(&d2))).add(&r);
        prop_assert_eq!(back, lift(&f));
        for (m, _) in r.terms() {
            prop_assert!(!d1.leading_term().unwrap().0.divides(m));
            prop_assert!(!d2.leading_term().unwrap().0.divides(m));
        }
    }

    #[test]
    fn content_times_primitive(cs in prop::collection::vec(nonzero_poly(), 1..4), shared in nonzero_poly()) {
        let terms = cs.iter().enumerate().map(|(i, c)| {
            (Monomial::var(2, 0, i as u32), RatFunc::from_poly(c * &shared))
        });
        let f: YPoly = SparsePoly::from_terms(2, TermOrder::Grevlex, terms);
        let (content, prim) = content_primitive(&f).unwrap();
        let back = prim.scale(&RatFunc::from_poly(content.clone()));
        prop_assert_eq!(back, f);
        prop_assert!(divides(&shared.make_monic(), &content));
        let (again, _) = content_primitive(&prim).unwrap();
        prop_assert!(again.is_one());
    }

    #[test]
    fn ratfunc_field_axioms(a in ratfunc(), b in ratfunc(), c in ratfunc()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a + &(-&a)).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inverse().unwrap()).is_one());
        }
    }

    #[test]
    fn scalar_field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inverse().unwrap()).is_one());
        }
    }

    #[test]
    fn prime_field_inverse(v in 1u64..101) {
        let f = FieldSpec::prime(101).unwrap();
        let a = Scalar::from_i64(f, v as i64);
        prop_assert!((&a * &a.inverse().unwrap()).is_one());
    }

    #[test]
    fn derivative_is_linear(f in ratfunc(), g in ratfunc(), a in scalar(), b in scalar(), var in 0..N) {
        let combo = &f.scale(&a) + &g.scale(&b);
        let lhs = combo.partial_derivative(var).unwrap();
        let rhs = &f.partial_derivative(var).unwrap().scale(&a) + &g.partial_derivative(var).unwrap().scale(&b);
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn gcd_of_coprime_trivariates() {
    let x = |i| MultiPoly::var(Q, 3, i);
    let f = &(&x(0) * &x(1)) + &x(2).pow(2);
    let g = &x(0) - &x(2);
    assert!(poly_gcd(&f, &g).is_one());
    assert_eq!(poly_gcd(&(&f * &g), &g.pow(2)), g.make_monic());
}
