use luroth_core::algebra::{Monomial, SparsePoly, TermOrder};
use luroth_core::exactla::{nullspace, rank, rank_scalar, ExactMatrix};
use luroth_core::exprparse::{format_ratfunc, parse_expr, parse_ratfunc, Expr, ExprSource};
use luroth_core::groebner::{
    buchberger, eliminate, normal_form, reduce_wrt, satisfies_buchberger_criterion, GroebnerBasis,
};
use luroth_core::{FieldSpec, MultiPoly, RatFunc, Scalar};
use proptest::prelude::*;

const Q: FieldSpec = FieldSpec::Rationals;

type QPoly = SparsePoly<Scalar>;

fn names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

fn qpoly(n: usize, max_exp: u32, max_terms: usize) -> impl Strategy<Value = QPoly> {
    prop::collection::vec((prop::collection::vec(0..=max_exp, n), -5i64..=5), 1..=max_terms).prop_map(
        move |terms| {
            SparsePoly::from_terms(
                n,
                TermOrder::Grevlex,
                terms
                    .into_iter()
                    .map(|(e, c)| (Monomial::from_exponents(&e), Scalar::from_i64(Q, c))),
            )
        },
    )
}

fn ratfunc2() -> impl Strategy<Value = RatFunc> {
    let poly = |nz: bool| {
        prop::collection::vec((0u32..=2, 0u32..=2, -4i64..=4), 1..=3)
            .prop_map(|t| {
                MultiPoly::from_terms(
                    Q,
                    2,
                    t.into_iter()
                        .map(|(a, b, c)| (Monomial::from_exponents(&[a, b]), Scalar::from_i64(Q, c))),
                )
            })
            .prop_filter("nonzero", move |p| !nz || !p.is_zero())
    };
    (poly(false), poly(true)).prop_map(|(a, b)| RatFunc::new(a, b).unwrap())
}

fn scalar_matrix() -> impl Strategy<Value = ExactMatrix<Scalar>> {
    (1usize..=4, 1usize..=5).prop_flat_map(|(r, c)| {
        // small entries keep the matrices frequently singular
        prop::collection::vec(prop::collection::vec(-2i64..=2, c), r).prop_map(move |rows| {
            ExactMatrix::from_rows(
                rows.into_iter()
                    .map(|row| row.into_iter().map(|v| Scalar::from_i64(Q, v)).collect())
                    .collect(),
                c,
            )
        })
    })
}

fn apply(m: &ExactMatrix<Scalar>, b: &[Scalar]) -> Vec<Scalar> {
    (0..m.rows())
        .map(|r| {
            m.row(r)
                .iter()
                .zip(b)
                .fold(Scalar::zero(Q), |acc, (a, x)| &acc + &(a * x))
        })
        .collect()
}

fn in_ideal(f: &QPoly, gb: &GroebnerBasis<Scalar>) -> bool {
    reduce_wrt(f, gb).is_zero()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn nullspace_vectors_are_annihilated(m in scalar_matrix()) {
        let basis = nullspace(&m);
        prop_assert_eq!(rank_scalar(&m) + basis.len(), m.cols());
        for b in &basis {
            prop_assert!(apply(&m, b).iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn rank_ignores_row_operations(entries in prop::collection::vec(ratfunc2(), 6), k in ratfunc2()) {
        prop_assume!(!k.is_zero());
        let m = ExactMatrix::from_rows(vec![entries[..3].to_vec(), entries[3..].to_vec()], 3);
        let mut swapped = m.clone();
        swapped.swap_rows(0, 1);
        let mut scaled = m.clone();
        for c in 0..3 {
            let v = m.get(1, c) * &k;
            scaled.set(1, c, v);
        }
        let r = rank(&m);
        prop_assert_eq!(rank(&swapped), r);
        prop_assert_eq!(rank(&scaled), r);
    }

    #[test]
    fn format_then_parse_round_trips(a in ratfunc2()) {
        let vars = names(2);
        let text = format_ratfunc(&a, &vars);
        let back = parse_ratfunc(&ExprSource { text: &text, vars: &vars, field: Q }).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn reduced_basis_passes_criterion(gens in prop::collection::vec(qpoly(3, 2, 3), 1..=3)) {
        let gb = buchberger(&gens, TermOrder::Grevlex).unwrap();
        prop_assert!(satisfies_buchberger_criterion(&gb));
        for g in &gens {
            prop_assert!(in_ideal(g, &gb));
        }
        for p in gb.polys() {
            prop_assert!(p.leading_coeff().unwrap().is_one());
        }
    }

    #[test]
    fn reduced_basis_ignores_generator_order(gens in prop::collection::vec(qpoly(2, 3, 3), 2..=4), order in prop::sample::select(vec![TermOrder::Grevlex, TermOrder::Lex])) {
        let a = buchberger(&gens, order).unwrap();
        let mut rev = gens.clone();
        rev.reverse();
        rev.rotate_left(1);
        let b = buchberger(&rev, order).unwrap();
        prop_assert_eq!(a.polys(), b.polys());
    }

    #[test]
    fn elimination_keeps_only_eliminated_members(gens in prop::collection::vec(qpoly(3, 2, 3), 2..=3)) {
        let order = TermOrder::Block { first: 1 };
        let gb = buchberger(&gens, order).unwrap();
        let elim = eliminate(&gb, 1).unwrap();
        for p in &elim {
            prop_assert!(!p.contains_var(0));
            prop_assert!(in_ideal(p, &gb));
        }
        // any member of I free of x1 reduces to zero modulo the eliminated part alone
        for p in gb.polys() {
            for q in gb.polys() {
                let e1 = p.leading_monomial().unwrap().degree_in(0);
                let e2 = q.leading_monomial().unwrap().degree_in(0);
                if e1 == 0 || e2 == 0 {
                    continue;
                }
                let comb = p.coeff_free_of(0, e1, q, e2);
                if let Some(c) = comb {
                    prop_assert!(normal_form(&c, &elim).is_zero());
                }
            }
        }
    }
}

trait FreeCombination: Sized {
    fn coeff_free_of(&self, var: usize, e1: u32, other: &Self, e2: u32) -> Option<Self>;
}

impl FreeCombination for QPoly {
    // x1-free combination of two members linear in x1, when there is one
    fn coeff_free_of(&self, var: usize, e1: u32, other: &Self, e2: u32) -> Option<Self> {
        if e1 != 1 || e2 != 1 || self == other {
            return None;
        }
        let split = |p: &QPoly| {
            let n = p.nvars();
            let mut lin = QPoly::zero(n, p.order());
            let mut rest = QPoly::zero(n, p.order());
            for (m, c) in p.terms() {
                match m.degree_in(var) {
                    0 => rest = rest.add(&QPoly::term(p.order(), m.clone(), c.clone())),
                    1 => lin = lin.add(&QPoly::term(p.order(), m.with_exponent(var, 0), c.clone())),
                    _ => return None,
                }
            }
            Some((lin, rest))
        };
        let (a1, b1) = split(self)?;
        let (a2, b2) = split(other)?;
        // a2 * p - a1 * q = a2 b1 - a1 b2
        Some(a2.mul(&b1).sub(&a1.mul(&b2)))
    }
}

#[test]
fn elimination_of_a_parametrized_curve() {
    // (t, t^2, t^3) in k[t, a, b]: eliminating t leaves the twisted cubic relations
    let order = TermOrder::Block { first: 1 };
    let v = |i| QPoly::term(order, Monomial::var(3, i, 1), Scalar::one(Q));
    let t = v(0);
    let gens = [v(1).sub(&t.mul(&t)), v(2).sub(&t.mul(&t).mul(&t))];
    let gb = buchberger(&gens, order).unwrap();
    let elim = eliminate(&gb, 1).unwrap();
    let a = v(1);
    let b = v(2);
    let cubic = b.mul(&b).sub(&a.mul(&a).mul(&a));
    assert!(!elim.is_empty());
    assert!(normal_form(&cubic.with_order(order), &elim).is_zero());
    assert!(normal_form(&a, &elim) == a);
}

#[test]
fn eliminate_rejects_grevlex() {
    let gb = buchberger(&[QPoly::constant(2, TermOrder::Grevlex, Scalar::one(Q))], TermOrder::Grevlex).unwrap();
    assert!(eliminate(&gb, 1).is_err());
}

#[test]
fn precedence_of_power_and_product() {
    let vars: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
    let e = parse_expr("a+b*c^2", &vars).unwrap();
    let expected = Expr::Add(
        Box::new(Expr::Var(0)),
        Box::new(Expr::Mul(Box::new(Expr::Var(1)), Box::new(Expr::Pow(Box::new(Expr::Var(2)), 2)))),
    );
    assert_eq!(e, expected);
}
