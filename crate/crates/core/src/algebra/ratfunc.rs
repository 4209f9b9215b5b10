use std::ops::{Add, Mul, Neg, Sub};

use super::gcd::poly_gcd;
use super::multipoly::MultiPoly;
use super::scalar::{FieldSpec, Scalar, ScalarOp};
use super::AlgebraError;

/// Element of k(x) in canonical form: coprime numerator and denominator, the
/// denominator monic under grevlex. Structural equality is field equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc {
    num: MultiPoly,
    den: MultiPoly,
}

/// Builds the canonical fraction `num / den`.
pub fn ratfunc_normalize(num: &MultiPoly, den: &MultiPoly) -> Result<RatFunc, AlgebraError> {
    RatFunc::new(num.clone(), den.clone())
}

/// Checked field operation on two rational functions.
pub fn ratfunc_arith(a: &RatFunc, b: &RatFunc, kind: ScalarOp) -> Result<RatFunc, AlgebraError> {
    a.num.check_compatible(&b.num)?;
    Ok(match kind {
        ScalarOp::Add => a + b,
        ScalarOp::Sub => a - b,
        ScalarOp::Mul => a * b,
        ScalarOp::Div => a.checked_div(b)?,
    })
}

impl RatFunc {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self, AlgebraError> {
        num.check_compatible(&den)?;
        if den.is_zero() {
            return Err(AlgebraError::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(Self::zero(num.field(), num.nvars()));
        }
        if den.is_constant() {
            return Ok(Self::from_reduced(num, den));
        }
        let g = poly_gcd(&num, &den);
        if g.is_one() {
            return Ok(Self::from_reduced(num, den));
        }
        let num = num.exact_div(&g).expect("gcd divides numerator");
        let den = den.exact_div(&g).expect("gcd divides denominator");
        Ok(Self::from_reduced(num, den))
    }

    // coprime inputs; only the scale needs fixing
    fn from_reduced(num: MultiPoly, den: MultiPoly) -> Self {
        if num.is_zero() {
            return Self::zero(num.field(), num.nvars());
        }
        let lc = den.leading_coeff().expect("nonzero denominator").clone();
        if lc.is_one() {
            return RatFunc { num, den };
        }
        let inv = lc.inverse().expect("nonzero");
        RatFunc {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn zero(field: FieldSpec, nvars: usize) -> Self {
        RatFunc {
            num: MultiPoly::zero(field, nvars),
            den: MultiPoly::one(field, nvars),
        }
    }

    pub fn one(field: FieldSpec, nvars: usize) -> Self {
        Self::from_poly(MultiPoly::one(field, nvars))
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        let den = MultiPoly::one(p.field(), p.nvars());
        RatFunc { num: p, den }
    }

    pub fn constant(c: Scalar, nvars: usize) -> Self {
        Self::from_poly(MultiPoly::constant(c, nvars))
    }

    pub fn var(field: FieldSpec, nvars: usize, index: usize) -> Self {
        Self::from_poly(MultiPoly::var(field, nvars, index))
    }

    pub fn numer(&self) -> &MultiPoly {
        &self.num
    }

    pub fn denom(&self) -> &MultiPoly {
        &self.den
    }

    pub fn field(&self) -> FieldSpec {
        self.num.field()
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn constant_value(&self) -> Option<Scalar> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    /// Max of numerator and denominator total degrees.
    pub fn degree(&self) -> u32 {
        self.num.total_degree().max(self.den.total_degree())
    }

    pub fn inverse(&self) -> Result<Self, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Self::from_reduced(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        Ok(self * &rhs.inverse()?)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.field(), self.nvars());
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        // powers of coprime polynomials stay coprime
        RatFunc {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    /// Partial derivative by the quotient rule. Valid in every characteristic.
    pub fn partial_derivative(&self, index: usize) -> Result<Self, AlgebraError> {
        if index >= self.nvars() {
            return Err(AlgebraError::BadVariable(index));
        }
        if self.den.is_constant() {
            return Ok(Self::from_poly(self.num.derivative(index)));
        }
        let top = &(&self.num.derivative(index) * &self.den) - &(&self.num * &self.den.derivative(index));
        Self::new(top, &self.den * &self.den)
    }

    /// Evaluates at a point; `None` if the denominator vanishes there.
    pub fn evaluate(&self, point: &[Scalar]) -> Option<Scalar> {
        let d = self.den.evaluate(point);
        let inv = d.inverse()?;
        Some(&self.num.evaluate(point) * &inv)
    }

    fn add_impl(&self, rhs: &Self, negate: bool) -> Self {
        let rn = if negate { -&rhs.num } else { rhs.num.clone() };
        if self.den == rhs.den {
            let num = &self.num + &rn;
            if self.den.is_one() {
                return RatFunc {
                    num,
                    den: self.den.clone(),
                };
            }
            return Self::new(num, self.den.clone()).expect("nonzero denominator");
        }
        if self.den.is_one() {
            let num = &(&self.num * &rhs.den) + &rn;
            return RatFunc {
                num,
                den: rhs.den.clone(),
            };
        }
        if rhs.den.is_one() {
            let num = &self.num + &(&rn * &self.den);
            return RatFunc {
                num,
                den: self.den.clone(),
            };
        }
        let g = poly_gcd(&self.den, &rhs.den);
        if g.is_one() {
            let num = &(&self.num * &rhs.den) + &(&rn * &self.den);
            let den = &self.den * &rhs.den;
            // coprime denominators give a reduced sum
            return Self::from_reduced(num, den);
        }
        let a = self.den.exact_div(&g).expect("gcd divides");
        let b = rhs.den.exact_div(&g).expect("gcd divides");
        let num = &(&self.num * &b) + &(&rn * &a);
        let den = &(&a * &b) * &g;
        Self::new(num, den).expect("nonzero denominator")
    }

    fn mul_impl(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero(self.field(), self.nvars());
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Self::from_poly(&self.num * &rhs.num);
        }
        let g1 = poly_gcd(&self.num, &rhs.den);
        let g2 = poly_gcd(&rhs.num, &self.den);
        let n1 = self.num.exact_div(&g1).expect("gcd divides");
        let d2 = rhs.den.exact_div(&g1).expect("gcd divides");
        let n2 = rhs.num.exact_div(&g2).expect("gcd divides");
        let d1 = self.den.exact_div(&g2).expect("gcd divides");
        Self::from_reduced(&n1 * &n2, &d1 * &d2)
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        self.add_impl(rhs, false)
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self.add_impl(rhs, true)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        self.mul_impl(rhs)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

/// Substitutes `s := w` into a univariate `outer(s)`.
///
/// With `outer = A/B` and `w = p/q`, both are homogenized to degree
/// `d = max(deg A, deg B)` so the result is `A^h(p, q) / B^h(p, q)`.
pub fn compose_univariate(outer: &RatFunc, w: &RatFunc) -> Result<RatFunc, AlgebraError> {
    if outer.nvars() != 1 {
        return Err(AlgebraError::NotUnivariate);
    }
    if outer.field() != w.field() {
        return Err(AlgebraError::FieldMismatch(outer.field(), w.field()));
    }
    let d = outer.degree();
    let (p, q) = (w.numer(), w.denom());
    let p_pows = powers(p, d);
    let q_pows = powers(q, d);
    let homogenize = |a: &MultiPoly| -> MultiPoly {
        let mut acc = MultiPoly::zero(w.field(), w.nvars());
        for (m, c) in a.terms() {
            let j = m.degree() as usize;
            let t = (&p_pows[j] * &q_pows[d as usize - j]).scale(c);
            acc = &acc + &t;
        }
        acc
    };
    let num = homogenize(outer.numer());
    let den = homogenize(outer.denom());
    if den.is_zero() {
        return Err(AlgebraError::DenominatorVanishesIdentically);
    }
    RatFunc::new(num, den)
}

fn powers(p: &MultiPoly, d: u32) -> Vec<MultiPoly> {
    let mut out = Vec::with_capacity(d as usize + 1);
    out.push(MultiPoly::one(p.field(), p.nvars()));
    for k in 1..=d as usize {
        let next = &out[k - 1] * p;
        out.push(next);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn x(n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(Q, n, i)
    }

    fn k(n: usize, v: i64) -> MultiPoly {
        MultiPoly::constant(Scalar::from_i64(Q, v), n)
    }

    fn rf(num: MultiPoly, den: MultiPoly) -> RatFunc {
        RatFunc::new(num, den).unwrap()
    }

    #[test]
    fn normalize_cancels_common_factor() {
        let t = x(1, 0);
        let a = ratfunc_normalize(&(&(&t * &t) - &k(1, 1)), &(&t - &k(1, 1))).unwrap();
        assert_eq!(a, RatFunc::from_poly(&t + &k(1, 1)));
        assert!(a.is_polynomial());
    }

    #[test]
    fn normalize_zero_numerator() {
        let a = ratfunc_normalize(&MultiPoly::zero(Q, 1), &x(1, 0)).unwrap();
        assert!(a.is_zero());
        assert!(a.denom().is_one());
    }

    #[test]
    fn normalize_zero_denominator() {
        let e = ratfunc_normalize(&x(2, 0), &MultiPoly::zero(Q, 2)).unwrap_err();
        assert_eq!(e, AlgebraError::ZeroDenominator);
    }

    #[test]
    fn denominator_is_monic() {
        let a = rf(x(1, 0), &k(1, -2) * &x(1, 0));
        assert!(a.denom().leading_coeff().unwrap().is_one());
        let b = rf(x(2, 0), &(&k(2, -3) * &x(2, 1)) + &k(2, 1));
        assert!(b.denom().leading_coeff().unwrap().is_one());
    }

    #[test]
    fn sum_of_reciprocal_ratios() {
        let a = rf(x(2, 0), x(2, 1));
        let b = rf(x(2, 1), x(2, 0));
        let s = ratfunc_arith(&a, &b, ScalarOp::Add).unwrap();
        let want = rf(&(&x(2, 0) * &x(2, 0)) + &(&x(2, 1) * &x(2, 1)), &x(2, 0) * &x(2, 1));
        assert_eq!(s, want);
        assert_eq!(s.numer().num_terms(), 2);
    }

    #[test]
    fn multiplicative_identity_and_division_by_zero() {
        let a = rf(&x(2, 0) + &k(2, 1), &x(2, 1) - &k(2, 3));
        let one = RatFunc::one(Q, 2);
        assert_eq!(ratfunc_arith(&a, &one, ScalarOp::Mul).unwrap(), a);
        let e = ratfunc_arith(&a, &RatFunc::zero(Q, 2), ScalarOp::Div).unwrap_err();
        assert_eq!(e, AlgebraError::DivisionByZero);
    }

    #[test]
    fn derivatives_by_quotient_rule() {
        let a = rf(x(2, 0), x(2, 1));
        assert_eq!(a.partial_derivative(0).unwrap(), rf(k(2, 1), x(2, 1)));
        assert_eq!(
            a.partial_derivative(1).unwrap(),
            rf(-&x(2, 0), &x(2, 1) * &x(2, 1))
        );
        assert!(RatFunc::constant(Scalar::from_i64(Q, 7), 2)
            .partial_derivative(0)
            .unwrap()
            .is_zero());
        assert!(a.partial_derivative(2).is_err());
    }

    #[test]
    fn compose_polynomial() {
        let s = x(1, 0);
        let outer = RatFunc::from_poly(&(&s * &s) + &(&k(1, 2) * &s));
        let t = x(1, 0);
        let w = RatFunc::from_poly(&t * &t);
        let got = compose_univariate(&outer, &w).unwrap();
        let t2 = &t * &t;
        let want = RatFunc::from_poly(&(&t2 * &t2) + &(&k(1, 2) * &t2));
        assert_eq!(got, want);
    }

    #[test]
    fn compose_identity() {
        let outer = RatFunc::var(Q, 1, 0);
        let w = rf(&x(2, 0) + &k(2, 1), &x(2, 0) * &x(2, 1));
        assert_eq!(compose_univariate(&outer, &w).unwrap(), w);
    }

    #[test]
    fn compose_vanishing_denominator() {
        let outer = rf(k(1, 1), &x(1, 0) - &k(1, 1));
        let w = RatFunc::one(Q, 1);
        assert_eq!(
            compose_univariate(&outer, &w).unwrap_err(),
            AlgebraError::DenominatorVanishesIdentically
        );
    }

    #[test]
    fn compose_rational_outer() {
        // (s^2 + 1)/s at s = x1/x2
        let s = x(1, 0);
        let outer = rf(&(&s * &s) + &k(1, 1), s.clone());
        let w = rf(x(2, 0), x(2, 1));
        let want = rf(&(&x(2, 0) * &x(2, 0)) + &(&x(2, 1) * &x(2, 1)), &x(2, 0) * &x(2, 1));
        assert_eq!(compose_univariate(&outer, &w).unwrap(), want);
    }
}
