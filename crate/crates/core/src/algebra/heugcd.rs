//! Heuristic gcd over the integers: evaluate one variable at a large integer,
//! recurse, rebuild the candidate by ξ-adic expansion and accept it only
//! after exact trial division of both inputs.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::monomial::{grevlex_cmp, Monomial};
use super::multipoly::MultiPoly;
use super::scalar::{FieldSpec, Scalar};

/// Integer polynomial, terms in decreasing grevlex order, no zeros.
type ZPoly = Vec<(Monomial, BigInt)>;

const ATTEMPTS: usize = 6;

fn desc(a: &Monomial, b: &Monomial) -> Ordering {
    grevlex_cmp(b.exponents(), a.exponents())
}

fn normalize(mut t: ZPoly) -> ZPoly {
    t.sort_by(|a, b| desc(&a.0, &b.0));
    let mut out: ZPoly = Vec::with_capacity(t.len());
    for (m, c) in t {
        match out.last_mut() {
            Some((lm, lc)) if *lm == m => *lc += c,
            _ => out.push((m, c)),
        }
    }
    out.retain(|(_, c)| !c.is_zero());
    out
}

fn content(t: &ZPoly) -> BigInt {
    let mut g = BigInt::zero();
    for (_, c) in t {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn divide_scalar(t: &ZPoly, d: &BigInt) -> ZPoly {
    if d.is_one() {
        return t.clone();
    }
    t.iter().map(|(m, c)| (m.clone(), c / d)).collect()
}

/// Primitive part with positive leading coefficient.
fn primitive(t: &ZPoly) -> ZPoly {
    let mut c = content(t);
    if t.first().is_some_and(|(_, lc)| lc.is_negative()) {
        c = -c;
    }
    divide_scalar(t, &c)
}

fn max_norm(t: &ZPoly) -> BigInt {
    t.iter().map(|(_, c)| c.abs()).max().unwrap_or_default()
}

fn is_constant(t: &ZPoly) -> bool {
    t.len() <= 1 && t.iter().all(|(m, _)| m.is_one())
}

fn eval_var(t: &ZPoly, var: usize, xi: &BigInt) -> ZPoly {
    let mut pows: Vec<BigInt> = vec![BigInt::one()];
    let terms = t
        .iter()
        .map(|(m, c)| {
            let e = m.degree_in(var) as usize;
            while pows.len() <= e {
                let next = pows.last().unwrap() * xi;
                pows.push(next);
            }
            (m.with_exponent(var, 0), c * &pows[e])
        })
        .collect();
    normalize(terms)
}

fn symmetric_mod(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if (&r << 1u32) > *m {
        r - m
    } else {
        r
    }
}

/// Inverse of [`eval_var`] for polynomials with coefficients below `xi / 2`.
fn interpolate(h: &ZPoly, var: usize, xi: &BigInt) -> ZPoly {
    let mut out = Vec::new();
    let mut cur: ZPoly = h.clone();
    let mut k = 0u32;
    while !cur.is_empty() {
        let mut next = Vec::with_capacity(cur.len());
        for (m, c) in cur {
            let r = symmetric_mod(&c, xi);
            let rest = (&c - &r) / xi;
            if !r.is_zero() {
                out.push((m.with_exponent(var, k), r));
            }
            if !rest.is_zero() {
                next.push((m, rest));
            }
        }
        cur = next;
        k += 1;
    }
    normalize(out)
}

// a - c * m * d as a single merge
fn sub_mul(a: &ZPoly, m: &Monomial, c: &BigInt, d: &ZPoly) -> ZPoly {
    let mut out = Vec::with_capacity(a.len() + d.len());
    let mut i = 0;
    let mut dj = d.iter().map(|(t, e)| (t.mul(m), e * c)).peekable();
    while i < a.len() || dj.peek().is_some() {
        let ord = match (a.get(i), dj.peek()) {
            (Some(x), Some(y)) => desc(&x.0, &y.0),
            (Some(_), None) => Ordering::Less,
            _ => Ordering::Greater,
        };
        match ord {
            Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                let (t, e) = dj.next().unwrap();
                out.push((t, -e));
            }
            Ordering::Equal => {
                let (t, e) = dj.next().unwrap();
                let v = &a[i].1 - e;
                if !v.is_zero() {
                    out.push((t, v));
                }
                i += 1;
            }
        }
    }
    out
}

/// Whether `d` divides `f` with an integral quotient.
fn divides(d: &ZPoly, f: &ZPoly) -> bool {
    let Some((lm, lc)) = d.first() else {
        return false;
    };
    let mut rem = f.clone();
    while let Some((m, c)) = rem.first() {
        let Some(qm) = m.div(lm) else {
            return false;
        };
        let (qc, r) = c.div_rem(lc);
        if !r.is_zero() {
            return false;
        }
        rem = sub_mul(&rem, &qm, &qc, d);
    }
    true
}

fn constant(n: usize, c: BigInt) -> ZPoly {
    vec![(Monomial::one(n), c)]
}

/// Integer gcd of nonzero `f` and `g`, or `None` when every evaluation point failed.
fn heu(f: &ZPoly, g: &ZPoly, n: usize) -> Option<ZPoly> {
    if is_constant(f) || is_constant(g) {
        return Some(constant(n, content(f).gcd(&content(g))));
    }
    let common = content(f).gcd(&content(g));
    let f = divide_scalar(f, &common);
    let g = divide_scalar(g, &common);
    let var = (0..n)
        .rev()
        .find(|&i| f.iter().chain(&g).any(|(m, _)| m.degree_in(i) > 0))
        .expect("nonconstant input");

    let (fnorm, gnorm) = (max_norm(&f), max_norm(&g));
    let b: BigInt = BigInt::from(2) * (&fnorm).min(&gnorm) + 29;
    let lc_ratio = (&fnorm / f[0].1.abs()).min(&gnorm / g[0].1.abs());
    let mut xi = (&b).min(&(BigInt::from(99) * b.sqrt())).clone().max(BigInt::from(2) * lc_ratio + 2);

    for _ in 0..ATTEMPTS {
        let ff = eval_var(&f, var, &xi);
        let gg = eval_var(&g, var, &xi);
        if !ff.is_empty() && !gg.is_empty() {
            if let Some(h) = heu(&ff, &gg, n) {
                let h = primitive(&interpolate(&h, var, &xi));
                if !h.is_empty() && divides(&h, &f) && divides(&h, &g) {
                    return Some(h.into_iter().map(|(m, c)| (m, c * &common)).collect());
                }
            }
        }
        xi = BigInt::from(73794) * &xi * xi.sqrt().sqrt() / BigInt::from(27011);
    }
    None
}

fn to_integer(f: &MultiPoly) -> ZPoly {
    let mut den = BigInt::one();
    for (_, c) in f.terms() {
        if let Scalar::Rational(q) = c {
            den = den.lcm(q.denom());
        }
    }
    f.terms()
        .iter()
        .map(|(m, c)| match c {
            Scalar::Rational(q) => (m.clone(), q.numer() * (&den / q.denom())),
            Scalar::Modular { .. } => unreachable!("integer gcd over a prime field"),
        })
        .collect()
}

/// Gcd of nonzero polynomials over Q up to a scalar, if the heuristic succeeds.
pub(super) fn heuristic_gcd(f: &MultiPoly, g: &MultiPoly) -> Option<MultiPoly> {
    debug_assert_eq!(f.field(), FieldSpec::Rationals);
    let n = f.nvars();
    let h = heu(&to_integer(f), &to_integer(g), n)?;
    Some(MultiPoly::from_terms(
        FieldSpec::Rationals,
        n,
        h.into_iter().map(|(m, c)| (m, Scalar::from_bigint(FieldSpec::Rationals, &c))),
    ))
}
