//! Multivariate gcd by recursive content/primitive-part splitting down to a
//! subresultant PRS in one main variable. Over Q a heuristic integer gcd is
//! tried first.

use super::heugcd::heuristic_gcd;
use super::monomial::Monomial;
use super::multipoly::MultiPoly;
use super::scalar::{FieldSpec, Scalar};

/// Monic greatest common divisor; `gcd(0, 0) = 0`.
///
/// Panics if the inputs live in different contexts.
pub fn poly_gcd(f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    if let Err(e) = f.check_compatible(g) {
        panic!("poly_gcd: {e}");
    }
    gcd_inner(f, g).make_monic()
}

/// Gcd of the coefficients of `f` viewed as a polynomial in variable `index`.
/// Returned monic; zero for the zero polynomial.
pub fn content_wrt(f: &MultiPoly, index: usize) -> MultiPoly {
    content_inner(f, index).make_monic()
}

fn content_inner(f: &MultiPoly, index: usize) -> MultiPoly {
    if !f.contains_var(index) {
        return f.clone();
    }
    let mut coeffs: Vec<MultiPoly> = f
        .coefficients_in(index)
        .into_iter()
        .filter(|c| !c.is_zero())
        .collect();
    // small coefficients first makes the running gcd shrink quickly
    coeffs.sort_by_key(|c| c.num_terms());
    let mut acc = MultiPoly::zero(f.field(), f.nvars());
    for c in &coeffs {
        acc = gcd_inner(&acc, c);
        if acc.is_constant() {
            return MultiPoly::one(f.field(), f.nvars());
        }
    }
    acc
}

// Result is correct up to a nonzero scalar factor.
fn gcd_inner(f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    let (field, n) = (f.field(), f.nvars());
    if f.is_zero() {
        return g.clone();
    }
    if g.is_zero() {
        return f.clone();
    }
    if f.is_constant() || g.is_constant() {
        return MultiPoly::one(field, n);
    }
    if f == g {
        return f.clone();
    }
    let mf = f.monomial_content();
    let mg = g.monomial_content();
    let mono = mf.gcd(&mg);
    if f.is_monomial() || g.is_monomial() {
        return MultiPoly::term(mono, Scalar::one(field));
    }
    let one = Scalar::one(field);
    let f1 = strip_monomial(f, &mf);
    let g1 = strip_monomial(g, &mg);
    let rest = gcd_stripped(&f1, &g1);
    if mono.is_one() {
        rest
    } else {
        rest.mul_term(&mono, &one)
    }
}

fn strip_monomial(f: &MultiPoly, m: &Monomial) -> MultiPoly {
    if m.is_one() {
        return f.clone();
    }
    let d = MultiPoly::term(m.clone(), Scalar::one(f.field()));
    f.exact_div(&d).expect("monomial content divides")
}

fn gcd_stripped(f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    let (field, n) = (f.field(), f.nvars());
    if f.is_constant() || g.is_constant() {
        return MultiPoly::one(field, n);
    }
    if field == FieldSpec::Rationals {
        if let Some(h) = heuristic_gcd(f, g) {
            return h;
        }
    }
    // a variable occurring in only one input can be split off through the content
    for i in 0..n {
        let (in_f, in_g) = (f.contains_var(i), g.contains_var(i));
        if in_f != in_g {
            let (a, b) = if in_f { (f, g) } else { (g, f) };
            return gcd_inner(&content_inner(a, i), b);
        }
    }
    let present: Vec<usize> = (0..n).filter(|&i| f.contains_var(i)).collect();
    if present.len() == 1 {
        return univariate_euclid(f, g, present[0]);
    }
    let main = *present
        .iter()
        .min_by_key(|&&i| (f.degree_in(i).max(g.degree_in(i)), std::cmp::Reverse(i)))
        .expect("nonconstant inputs");

    let cf = content_inner(f, main);
    let cg = content_inner(g, main);
    let c = gcd_inner(&cf, &cg);
    let pf = f.exact_div(&cf).expect("content divides");
    let pg = g.exact_div(&cg).expect("content divides");

    let h = subresultant_gcd(&pf, &pg, main);
    let h = if h.contains_var(main) {
        let ch = content_inner(&h, main);
        h.exact_div(&ch).expect("content divides")
    } else {
        MultiPoly::one(field, n)
    };
    &c * &h
}

fn univariate_euclid(f: &MultiPoly, g: &MultiPoly, var: usize) -> MultiPoly {
    let (field, n) = (f.field(), f.nvars());
    let to_dense = |p: &MultiPoly| -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(field); p.degree_in(var) as usize + 1];
        for (m, c) in p.terms() {
            v[m.degree_in(var) as usize] = c.clone();
        }
        v
    };
    let mut a = to_dense(f);
    let mut b = to_dense(g);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !(b.len() == 1 && b[0].is_zero()) {
        let r = dense_rem(&a, &b);
        a = b;
        b = r;
    }
    MultiPoly::from_terms(
        field,
        n,
        a.into_iter()
            .enumerate()
            .map(|(k, c)| (Monomial::var(n, var, k as u32), c)),
    )
}

// remainder of dense univariate polynomials over a field; result trimmed
fn dense_rem(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let db = b.len() - 1;
    let inv = b[db].inverse().expect("trimmed divisor");
    let mut r = a.to_vec();
    while r.len() > db {
        let dr = r.len() - 1;
        let q = &r[dr] * &inv;
        for k in 0..db {
            let t = &q * &b[k];
            r[dr - db + k] = &r[dr - db + k] - &t;
        }
        r.pop();
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
    }
    if r.is_empty() {
        r.push(Scalar::zero(a[0].field()));
    }
    r
}

type Upoly = Vec<MultiPoly>;

fn deg(p: &Upoly) -> usize {
    p.len() - 1
}

fn trim(p: &mut Upoly) {
    while p.len() > 1 && p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn is_zero_u(p: &Upoly) -> bool {
    p.len() == 1 && p[0].is_zero()
}

/// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b`.
fn prem(a: &Upoly, b: &Upoly) -> Upoly {
    let n = deg(b);
    let lb = &b[n];
    let mut r = a.clone();
    let mut e = deg(a) as i64 - n as i64 + 1;
    while !is_zero_u(&r) && deg(&r) >= n {
        let dr = deg(&r);
        let lr = r[dr].clone();
        let shift = dr - n;
        for c in r.iter_mut() {
            *c = &*c * lb;
        }
        for (k, bk) in b.iter().enumerate() {
            let t = &lr * bk;
            r[shift + k] = &r[shift + k] - &t;
        }
        debug_assert!(r[dr].is_zero());
        r.pop();
        if r.is_empty() {
            r.push(MultiPoly::zero(lb.field(), lb.nvars()));
        }
        trim(&mut r);
        e -= 1;
    }
    if e > 0 {
        let s = lb.pow(e as u32);
        for c in r.iter_mut() {
            *c = &*c * &s;
        }
    }
    r
}

fn subresultant_gcd(f: &MultiPoly, g: &MultiPoly, var: usize) -> MultiPoly {
    let (field, n) = (f.field(), f.nvars());
    let mut a: Upoly = f.coefficients_in(var);
    let mut b: Upoly = g.coefficients_in(var);
    if deg(&a) < deg(&b) {
        std::mem::swap(&mut a, &mut b);
    }
    let mut gg = MultiPoly::one(field, n);
    let mut h = MultiPoly::one(field, n);
    loop {
        let d = (deg(&a) - deg(&b)) as u32;
        let r = prem(&a, &b);
        if is_zero_u(&r) {
            break;
        }
        if deg(&r) == 0 {
            return MultiPoly::one(field, n);
        }
        let divisor = &gg * &h.pow(d);
        a = b;
        b = r
            .iter()
            .map(|c| c.exact_div(&divisor).expect("subresultant division is exact"))
            .collect();
        gg = a[deg(&a)].clone();
        h = if d == 0 {
            h
        } else {
            gg.pow(d)
                .exact_div(&h.pow(d - 1))
                .expect("subresultant division is exact")
        };
    }
    MultiPoly::from_coefficients_in(field, n, var, &b)
}
