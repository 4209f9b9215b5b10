use std::cmp::Ordering;
use std::collections::HashMap;
use std::ops::{Add, Mul, Neg, Sub};

use super::monomial::{grevlex_cmp, Monomial};
use super::scalar::{FieldSpec, Scalar};
use super::AlgebraError;

/// Sparse multivariate polynomial over a [`Scalar`] field.
///
/// Terms are stored in strictly decreasing graded reverse lexicographic order
/// (variable 0 largest) with no zero coefficients, so structural equality is
/// polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MultiPoly {
    field: FieldSpec,
    nvars: usize,
    terms: Vec<(Monomial, Scalar)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

/// Checked ring operation on two polynomials sharing a context.
pub fn poly_arith(f: &MultiPoly, g: &MultiPoly, kind: PolyOp) -> Result<MultiPoly, AlgebraError> {
    f.check_compatible(g)?;
    Ok(match kind {
        PolyOp::Add => f + g,
        PolyOp::Sub => f - g,
        PolyOp::Mul => f * g,
    })
}

fn desc(a: &Monomial, b: &Monomial) -> Ordering {
    grevlex_cmp(b.exponents(), a.exponents())
}

impl MultiPoly {
    pub fn zero(field: FieldSpec, nvars: usize) -> Self {
        MultiPoly {
            field,
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn one(field: FieldSpec, nvars: usize) -> Self {
        Self::constant(Scalar::one(field), nvars)
    }

    pub fn constant(c: Scalar, nvars: usize) -> Self {
        let field = c.field();
        if c.is_zero() {
            return Self::zero(field, nvars);
        }
        MultiPoly {
            field,
            nvars,
            terms: vec![(Monomial::one(nvars), c)],
        }
    }

    pub fn var(field: FieldSpec, nvars: usize, index: usize) -> Self {
        Self::term(Monomial::var(nvars, index, 1), Scalar::one(field))
    }

    pub fn term(m: Monomial, c: Scalar) -> Self {
        let nvars = m.nvars();
        let field = c.field();
        if c.is_zero() {
            return Self::zero(field, nvars);
        }
        MultiPoly {
            field,
            nvars,
            terms: vec![(m, c)],
        }
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms<I>(field: FieldSpec, nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Scalar)>,
    {
        let mut acc: HashMap<Monomial, Scalar> = HashMap::new();
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial arity");
            assert_eq!(c.field(), field, "coefficient field");
            match acc.get_mut(&m) {
                Some(e) => *e = &*e + &c,
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| desc(&a.0, &b.0));
        MultiPoly {
            field,
            nvars,
            terms,
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    /// The value of a constant polynomial (zero included).
    pub fn constant_value(&self) -> Option<Scalar> {
        match self.terms.as_slice() {
            [] => Some(Scalar::zero(self.field)),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    pub fn leading_coeff(&self) -> Option<&Scalar> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, index: usize) -> u32 {
        self.terms
            .iter()
            .map(|(m, _)| m.degree_in(index))
            .max()
            .unwrap_or(0)
    }

    pub fn contains_var(&self, index: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.degree_in(index) > 0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.iter().map(|(m, _)| m.degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn check_compatible(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.field != other.field {
            return Err(AlgebraError::FieldMismatch(self.field, other.field));
        }
        if self.nvars != other.nvars {
            return Err(AlgebraError::ContextMismatch(self.nvars, other.nvars));
        }
        Ok(())
    }

    fn assert_compatible(&self, other: &Self) {
        if let Err(e) = self.check_compatible(other) {
            panic!("incompatible polynomials: {e}");
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.field, self.nvars);
        }
        MultiPoly {
            field: self.field,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// `c * m * self`. Multiplying by a monomial preserves the term order.
    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.field, self.nvars);
        }
        MultiPoly {
            field: self.field,
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(t, a)| (t.mul(m), a * c))
                .collect(),
        }
    }

    /// Normalizes to leading coefficient 1; zero stays zero.
    pub fn make_monic(&self) -> Self {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => self.scale(&lc.inverse().expect("nonzero leading coefficient")),
        }
    }

    fn merge(&self, other: &Self, negate_other: bool) -> Self {
        self.assert_compatible(other);
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other.terms.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => {
                    let (m, c) = b.next().unwrap();
                    out.push((m.clone(), if negate_other { -c } else { c.clone() }));
                }
                (Some((ma, ca)), Some((mb, cb))) => match desc(ma, mb) {
                    Ordering::Less => {
                        out.push((ma.clone(), ca.clone()));
                        a.next();
                    }
                    Ordering::Greater => {
                        out.push((mb.clone(), if negate_other { -cb } else { cb.clone() }));
                        b.next();
                    }
                    Ordering::Equal => {
                        let c = if negate_other { ca - cb } else { ca + cb };
                        if !c.is_zero() {
                            out.push((ma.clone(), c));
                        }
                        a.next();
                        b.next();
                    }
                },
            }
        }
        MultiPoly {
            field: self.field,
            nvars: self.nvars,
            terms: out,
        }
    }

    fn mul_poly(&self, other: &Self) -> Self {
        self.assert_compatible(other);
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.field, self.nvars);
        }
        if self.terms.len() == 1 {
            return other.mul_term(&self.terms[0].0, &self.terms[0].1);
        }
        if other.terms.len() == 1 {
            return self.mul_term(&other.terms[0].0, &other.terms[0].1);
        }
        let mut acc: HashMap<Monomial, Scalar> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let prod = ca * cb;
                match acc.entry(ma.mul(mb)) {
                    std::collections::hash_map::Entry::Occupied(mut e) => {
                        let v = e.get() + &prod;
                        *e.get_mut() = v;
                    }
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(prod);
                    }
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| desc(&a.0, &b.0));
        MultiPoly {
            field: self.field,
            nvars: self.nvars,
            terms,
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.field, self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        self.assert_compatible(d);
        let (lm, lc) = d.leading_term()?;
        if self.is_zero() {
            return Some(self.clone());
        }
        if d.terms.len() == 1 {
            // monomial divisor: termwise
            let inv = lc.inverse()?;
            let mut terms = Vec::with_capacity(self.terms.len());
            for (m, c) in &self.terms {
                terms.push((m.div(lm)?, c * &inv));
            }
            return Some(MultiPoly {
                field: self.field,
                nvars: self.nvars,
                terms,
            });
        }
        let inv = lc.inverse()?;
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.leading_term() {
            let qm = m.div(lm)?;
            let qc = c * &inv;
            rem = rem.sub_mul_term(&qm, &qc, d);
            quot.push((qm, qc));
        }
        Some(MultiPoly {
            field: self.field,
            nvars: self.nvars,
            terms: quot,
        })
    }

    /// `self - c * m * g`.
    pub fn sub_mul_term(&self, m: &Monomial, c: &Scalar, g: &Self) -> Self {
        self.merge(&g.mul_term(m, c), true)
    }

    pub fn derivative(&self, index: usize) -> Self {
        let terms = self.terms.iter().filter_map(|(m, c)| {
            let e = m.degree_in(index);
            if e == 0 {
                None
            } else {
                Some((
                    m.with_exponent(index, e - 1),
                    c * &Scalar::from_i64(self.field, e as i64),
                ))
            }
        });
        Self::from_terms(self.field, self.nvars, terms)
    }

    /// Coefficients with respect to one variable: entry `k` multiplies `x_index^k`.
    pub fn coefficients_in(&self, index: usize) -> Vec<MultiPoly> {
        let deg = self.degree_in(index) as usize;
        let mut buckets: Vec<Vec<(Monomial, Scalar)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            let e = m.degree_in(index) as usize;
            buckets[e].push((m.with_exponent(index, 0), c.clone()));
        }
        buckets
            .into_iter()
            // all terms in a bucket share the removed exponent, so grevlex order survives
            .map(|terms| MultiPoly {
                    field: self.field,
                    nvars: self.nvars,
                terms,
            })
            .collect()
    }

    pub fn from_coefficients_in(field: FieldSpec, nvars: usize, index: usize, coeffs: &[MultiPoly]) -> Self {
        let terms = coeffs.iter().enumerate().flat_map(|(k, p)| {
            p.terms
                .iter()
                .map(move |(m, c)| (m.with_exponent(index, m.degree_in(index) + k as u32), c.clone()))
        });
        Self::from_terms(field, nvars, terms)
    }

    /// Re-embeds into a context of `nvars` variables, sending variable `i` to `map[i]`.
    pub fn remap(&self, nvars: usize, map: &[usize]) -> Self {
        assert_eq!(map.len(), self.nvars);
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = vec![0u32; nvars];
            for (i, &x) in m.exponents().iter().enumerate() {
                e[map[i]] += x;
            }
            (Monomial::from_exponents(&e), c.clone())
        });
        Self::from_terms(self.field, nvars, terms)
    }

    pub fn evaluate(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.nvars);
        let mut acc = Scalar::zero(self.field);
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    t = &t * &x.pow(e);
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Gcd of all monomials in the support (the largest monomial dividing `self`).
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.iter();
        match it.next() {
            None => Monomial::one(self.nvars),
            Some((m, _)) => it.fold(m.clone(), |acc, (t, _)| acc.gcd(t)),
        }
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.merge(rhs, false)
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.merge(rhs, true)
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.mul_poly(rhs)
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            field: self.field,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}
