//! Polynomials with coefficients in an abstract field under a selectable term
//! order. Used for the tag-variable ring K[y, u] with K a subfield of k(x).

use std::cmp::Ordering;

use super::monomial::{grevlex_cmp, lex_cmp, Monomial};
use super::{AlgebraError, FieldElement, RatFunc};

/// Monomial order on the tag variables, variable 0 largest.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TermOrder {
    Grevlex,
    Lex,
    /// Variables `0..first` form the first block; the blocks are compared
    /// lexicographically, each one internally by grevlex.
    Block { first: usize },
}

impl TermOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (ea, eb) = (a.exponents(), b.exponents());
        match *self {
            TermOrder::Grevlex => grevlex_cmp(ea, eb),
            TermOrder::Lex => lex_cmp(ea, eb),
            TermOrder::Block { first } => grevlex_cmp(&ea[..first], &eb[..first])
                .then_with(|| grevlex_cmp(&ea[first..], &eb[first..])),
        }
    }

    /// Whether every monomial involving one of `0..count` beats every monomial free of them.
    pub fn eliminates_leading(&self, count: usize) -> bool {
        match *self {
            TermOrder::Lex => true,
            TermOrder::Block { first } => first == count,
            TermOrder::Grevlex => count == 0,
        }
    }
}

/// Sparse polynomial over a coefficient field `C`, terms strictly decreasing
/// under `order`, no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparsePoly<C> {
    nvars: usize,
    order: TermOrder,
    terms: Vec<(Monomial, C)>,
}

/// Polynomial in the tag variables with rational-function coefficients.
pub type YPoly = SparsePoly<RatFunc>;

impl<C: FieldElement> SparsePoly<C> {
    pub fn zero(nvars: usize, order: TermOrder) -> Self {
        SparsePoly {
            nvars,
            order,
            terms: Vec::new(),
        }
    }

    pub fn term(order: TermOrder, m: Monomial, c: C) -> Self {
        let nvars = m.nvars();
        if c.is_zero() {
            return Self::zero(nvars, order);
        }
        SparsePoly {
            nvars,
            order,
            terms: vec![(m, c)],
        }
    }

    pub fn constant(nvars: usize, order: TermOrder, c: C) -> Self {
        Self::term(order, Monomial::one(nvars), c)
    }

    /// Builds from arbitrary terms; duplicates are combined.
    pub fn from_terms<I>(nvars: usize, order: TermOrder, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, C)>,
    {
        let mut v: Vec<(Monomial, C)> = terms.into_iter().collect();
        v.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, C)> = Vec::with_capacity(v.len());
        for (m, c) in v {
            assert_eq!(m.nvars(), nvars, "monomial arity");
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = lc.plus(&c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        SparsePoly {
            nvars,
            order,
            terms: out,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> TermOrder {
        self.order
    }

    pub fn terms(&self) -> &[(Monomial, C)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &C)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coeff(&self) -> Option<&C> {
        self.terms.first().map(|(_, c)| c)
    }

    /// Everything but the leading term.
    pub fn tail(&self) -> Self {
        SparsePoly {
            nvars: self.nvars,
            order: self.order,
            terms: self.terms.get(1..).unwrap_or(&[]).to_vec(),
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    pub fn contains_var(&self, index: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.degree_in(index) > 0)
    }

    /// Coefficient of a given monomial (`None` when absent).
    pub fn coeff_of(&self, m: &Monomial) -> Option<&C> {
        self.terms
            .binary_search_by(|(t, _)| self.order.cmp(m, t))
            .ok()
            .map(|i| &self.terms[i].1)
    }

    pub fn check_compatible(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.nvars != other.nvars {
            return Err(AlgebraError::ContextMismatch(self.nvars, other.nvars));
        }
        Ok(())
    }

    pub fn with_order(&self, order: TermOrder) -> Self {
        if order == self.order {
            return self.clone();
        }
        Self::from_terms(self.nvars, order, self.terms.iter().cloned())
    }

    pub fn map_coeffs<D: FieldElement>(&self, f: impl Fn(&C) -> D) -> SparsePoly<D> {
        SparsePoly::from_terms(
            self.nvars,
            self.order,
            self.terms.iter().map(|(m, c)| (m.clone(), f(c))),
        )
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars, self.order);
        }
        SparsePoly {
            nvars: self.nvars,
            order: self.order,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a.times(c))).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars, self.order);
        }
        SparsePoly {
            nvars: self.nvars,
            order: self.order,
            terms: self
                .terms
                .iter()
                .map(|(t, a)| (t.mul(m), a.times(c)))
                .collect(),
        }
    }

    pub fn make_monic(&self) -> Self {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => self.scale(&lc.inverse().expect("nonzero leading coefficient")),
        }
    }

    pub fn neg(&self) -> Self {
        SparsePoly {
            nvars: self.nvars,
            order: self.order,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.negated())).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.merge(other, None)
    }

    pub fn sub(&self, other: &Self) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        self.sub_mul_term(&Monomial::one(self.nvars), &self.one_coeff(other), other)
    }

    fn one_coeff(&self, other: &Self) -> C {
        self.terms
            .first()
            .or(other.terms.first())
            .map(|(_, c)| c.one_like())
            .expect("at least one nonzero operand")
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut acc = Self::zero(self.nvars, self.order);
        for (m, c) in &other.terms {
            acc = acc.add(&self.mul_term(m, c));
        }
        acc
    }

    /// `self - c * m * g`, merging in one pass.
    pub fn sub_mul_term(&self, m: &Monomial, c: &C, g: &Self) -> Self {
        if g.is_zero() {
            return self.clone();
        }
        self.merge(g, Some((m, c)))
    }

    // self + g, or self - c*m*g when a scaling term is supplied
    fn merge(&self, g: &Self, scaled: Option<(&Monomial, &C)>) -> Self {
        assert_eq!(self.nvars, g.nvars, "tag context mismatch");
        assert_eq!(self.order, g.order, "term order mismatch");
        let neg_c = scaled.map(|(_, c)| c.negated());
        let other = g.terms.iter().map(|(t, a)| match (scaled, &neg_c) {
            (Some((m, _)), Some(nc)) => (t.mul(m), a.times(nc)),
            _ => (t.clone(), a.clone()),
        });
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other.peekable();
        loop {
            let ord = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (Some((ma, _)), Some((mb, _))) => self.order.cmp(ma, mb),
            };
            match ord {
                Ordering::Greater => out.push(a.next().unwrap().clone()),
                Ordering::Less => out.push(b.next().unwrap()),
                Ordering::Equal => {
                    let (ma, ca) = a.next().unwrap();
                    let (_, cb) = b.next().unwrap();
                    let s = ca.plus(&cb);
                    if !s.is_zero() {
                        out.push((ma.clone(), s));
                    }
                }
            }
        }
        SparsePoly {
            nvars: self.nvars,
            order: self.order,
            terms: out,
        }
    }
}

/// Multivariate division with remainder: `f = sum q_i d_i + r`, no term of `r`
/// divisible by any leading monomial of the divisors. Divisors are tried in
/// the given order.
pub fn poly_divmod<C: FieldElement>(
    f: &SparsePoly<C>,
    divisors: &[SparsePoly<C>],
) -> Result<(Vec<SparsePoly<C>>, SparsePoly<C>), AlgebraError> {
    if divisors.is_empty() {
        return Err(AlgebraError::EmptyDivisorList);
    }
    for d in divisors {
        f.check_compatible(d)?;
        if d.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
    }
    let order = f.order;
    let divisors: Vec<SparsePoly<C>> = divisors.iter().map(|d| d.with_order(order)).collect();
    let inv_lc: Vec<C> = divisors
        .iter()
        .map(|d| d.leading_coeff().unwrap().inverse().unwrap())
        .collect();
    let mut quots: Vec<Vec<(Monomial, C)>> = vec![Vec::new(); divisors.len()];
    let mut rem: Vec<(Monomial, C)> = Vec::new();
    let mut p = f.clone();
    while let Some((lm, lc)) = p.leading_term() {
        let hit = divisors
            .iter()
            .position(|d| d.leading_monomial().unwrap().divides(lm));
        match hit {
            Some(i) => {
                let m = lm.div(divisors[i].leading_monomial().unwrap()).unwrap();
                let c = lc.times(&inv_lc[i]);
                p = p.sub_mul_term(&m, &c, &divisors[i]);
                quots[i].push((m, c));
            }
            None => {
                rem.push((lm.clone(), lc.clone()));
                p.terms.remove(0);
            }
        }
    }
    let n = f.nvars;
    let quots = quots
        .into_iter()
        .map(|terms| SparsePoly {
            nvars: n,
            order,
            terms,
        })
        .collect();
    Ok((
        quots,
        SparsePoly {
            nvars: n,
            order,
            terms: rem,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{FieldSpec, MultiPoly, Scalar};

    const Q: FieldSpec = FieldSpec::Rationals;

    fn t() -> RatFunc {
        RatFunc::var(Q, 1, 0)
    }

    fn k(v: i64) -> RatFunc {
        RatFunc::constant(Scalar::from_i64(Q, v), 1)
    }

    #[test]
    fn zero_minus_zero() {
        let z: YPoly = SparsePoly::zero(2, TermOrder::Grevlex);
        assert!(z.sub(&z).is_zero());
    }

    fn y(e: u32) -> Monomial {
        Monomial::var(1, 0, e)
    }

    #[test]
    fn block_order_ranks_first_block() {
        let o = TermOrder::Block { first: 1 };
        let u = Monomial::from_exponents(&[1, 0, 0]);
        let big = Monomial::from_exponents(&[0, 5, 5]);
        assert_eq!(o.cmp(&u, &big), Ordering::Greater);
        let a = Monomial::from_exponents(&[1, 2, 0]);
        let b = Monomial::from_exponents(&[1, 0, 2]);
        assert_eq!(o.cmp(&a, &b), Ordering::Greater);
        assert!(o.eliminates_leading(1));
        assert!(!TermOrder::Grevlex.eliminates_leading(1));
    }

    #[test]
    fn divide_over_function_field() {
        // y^2 - t^2 by y - t
        let o = TermOrder::Grevlex;
        let f = SparsePoly::from_terms(1, o, [(y(2), k(1)), (y(0), (&t() * &t()).negated())]);
        let d = SparsePoly::from_terms(1, o, [(y(1), k(1)), (y(0), t().negated())]);
        let (q, r) = poly_divmod(&f, &[d]).unwrap();
        assert!(r.is_zero());
        assert_eq!(q[0], SparsePoly::from_terms(1, o, [(y(1), k(1)), (y(0), t())]));
    }

    #[test]
    fn low_degree_dividend_is_remainder() {
        let o = TermOrder::Grevlex;
        let f = SparsePoly::term(o, y(1), k(1));
        let d = SparsePoly::term(o, y(2), k(1));
        let (q, r) = poly_divmod(&f, &[d]).unwrap();
        assert!(q[0].is_zero());
        assert_eq!(r, f);
    }

    #[test]
    fn zero_dividend_and_empty_divisors() {
        let o = TermOrder::Grevlex;
        let z = SparsePoly::<RatFunc>::zero(1, o);
        let d = SparsePoly::term(o, y(1), t());
        let (q, r) = poly_divmod(&z, &[d]).unwrap();
        assert!(q[0].is_zero() && r.is_zero());
        assert_eq!(poly_divmod(&z, &[]).unwrap_err(), AlgebraError::EmptyDivisorList);
    }

    #[test]
    fn coefficients_fold_through_map() {
        let o = TermOrder::Grevlex;
        let f = SparsePoly::from_terms(1, o, [(y(1), t()), (y(1), t().negated())]);
        assert!(f.is_zero());
        let g = SparsePoly::term(o, y(1), RatFunc::from_poly(MultiPoly::var(Q, 1, 0)));
        assert_eq!(g.map_coeffs(|c| c.scale(&Scalar::from_i64(Q, 2))).leading_coeff(), Some(&k(2).times(&t())));
    }
}
