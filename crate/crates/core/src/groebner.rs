//! Buchberger's algorithm over an abstract coefficient field.
//!
//! The engine only touches coefficients through [`FieldElement`], so every
//! coefficient of a computed basis lies in the field generated by the input
//! coefficients. Instantiated with [`RatFunc`](crate::RatFunc) this keeps the
//! whole computation inside the subfield K.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::algebra::{FieldElement, Monomial, SparsePoly};
pub use crate::algebra::{TermOrder, YPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error("S-polynomial of a zero polynomial")]
    ZeroInput,
    #[error("basis order does not eliminate the requested variables")]
    WrongOrder,
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
}

/// Caps on intermediate polynomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Maximum total degree in the tag variables.
    pub max_degree: u32,
    pub max_terms: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_degree: 40,
            max_terms: 100_000,
        }
    }
}

impl Limits {
    fn check<C: FieldElement>(&self, p: &SparsePoly<C>) -> Result<(), GroebnerError> {
        if p.total_degree() > self.max_degree {
            return Err(GroebnerError::ResourceLimit(format!(
                "tag degree {} exceeds cap {}",
                p.total_degree(),
                self.max_degree
            )));
        }
        if p.num_terms() > self.max_terms {
            return Err(GroebnerError::ResourceLimit(format!(
                "{} terms exceed cap {}",
                p.num_terms(),
                self.max_terms
            )));
        }
        Ok(())
    }
}

/// Reduced Gröbner basis: monic members, sorted by increasing leading monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis<C> {
    order: TermOrder,
    polys: Vec<SparsePoly<C>>,
}

impl<C: FieldElement> GroebnerBasis<C> {
    pub fn order(&self) -> TermOrder {
        self.order
    }

    pub fn polys(&self) -> &[SparsePoly<C>] {
        &self.polys
    }

    pub fn into_polys(self) -> Vec<SparsePoly<C>> {
        self.polys
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    /// Wraps polynomials already known to form a reduced basis (re-sorted and made monic).
    pub fn from_reduced(order: TermOrder, polys: Vec<SparsePoly<C>>) -> Self {
        let mut polys: Vec<_> = polys.into_iter().map(|p| p.with_order(order).make_monic()).collect();
        sort_by_leading(&mut polys, order);
        GroebnerBasis { order, polys }
    }
}

fn sort_by_leading<C: FieldElement>(polys: &mut [SparsePoly<C>], order: TermOrder) {
    polys.sort_by(|a, b| order.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
}

/// `lcm/lt(f) * f - lcm/lt(g) * g`, cancelling the leading terms.
pub fn s_poly<C: FieldElement>(f: &SparsePoly<C>, g: &SparsePoly<C>) -> Result<SparsePoly<C>, GroebnerError> {
    let ((mf, cf), (mg, cg)) = match (f.leading_term(), g.leading_term()) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(GroebnerError::ZeroInput),
    };
    let l = mf.lcm(mg);
    let a = f.mul_term(&l.div(mf).unwrap(), &cf.inverse().unwrap());
    let b_mono = l.div(mg).unwrap();
    let b_coeff = cg.inverse().unwrap();
    Ok(a.sub_mul_term(&b_mono, &b_coeff, g))
}

/// Full normal form of `f` modulo `divisors` (every term reduced).
pub fn normal_form<C: FieldElement>(f: &SparsePoly<C>, divisors: &[SparsePoly<C>]) -> SparsePoly<C> {
    let inv: Vec<C> = divisors
        .iter()
        .map(|d| d.leading_coeff().expect("nonzero divisor").inverse().unwrap())
        .collect();
    let mut p = f.clone();
    let mut rem: Vec<(Monomial, C)> = Vec::new();
    while let Some((lm, lc)) = p.leading_term() {
        match divisors
            .iter()
            .position(|d| d.leading_monomial().unwrap().divides(lm))
        {
            Some(i) => {
                let m = lm.div(divisors[i].leading_monomial().unwrap()).unwrap();
                let c = if inv[i].is_one() { lc.clone() } else { lc.times(&inv[i]) };
                p = p.sub_mul_term(&m, &c, &divisors[i]);
            }
            None => {
                rem.push((lm.clone(), lc.clone()));
                p = p.tail();
            }
        }
    }
    SparsePoly::from_terms(f.nvars(), f.order(), rem)
}

/// Normal form with respect to a basis; zero iff `f` lies in the ideal.
pub fn reduce_wrt<C: FieldElement>(f: &SparsePoly<C>, gb: &GroebnerBasis<C>) -> SparsePoly<C> {
    normal_form(&f.with_order(gb.order), &gb.polys)
}

pub fn buchberger<C: FieldElement>(
    gens: &[SparsePoly<C>],
    order: TermOrder,
) -> Result<GroebnerBasis<C>, GroebnerError> {
    buchberger_with_limits(gens, order, Limits::default())
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
///
/// Pairs are chosen by the normal strategy (smallest lcm of leading
/// monomials first); pairs with coprime leading monomials and pairs covered
/// by the chain criterion are skipped.
pub fn buchberger_with_limits<C: FieldElement>(
    gens: &[SparsePoly<C>],
    order: TermOrder,
    limits: Limits,
) -> Result<GroebnerBasis<C>, GroebnerError> {
    let mut basis: Vec<SparsePoly<C>> = Vec::new();
    let mut pending: BTreeSet<(usize, usize)> = BTreeSet::new();

    let mut seeds: Vec<SparsePoly<C>> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| g.with_order(order).make_monic())
        .collect();
    // deterministic start independent of caller order
    sort_by_leading(&mut seeds, order);
    for g in seeds {
        limits.check(&g)?;
        let h = normal_form(&g, &basis);
        if !h.is_zero() {
            push_element(&mut basis, &mut pending, h.make_monic());
        }
    }

    while let Some(pair) = select_pair(&basis, &pending, order) {
        pending.remove(&pair);
        let (i, j) = pair;
        let (mi, mj) = (
            basis[i].leading_monomial().unwrap(),
            basis[j].leading_monomial().unwrap(),
        );
        if mi.is_coprime(mj) {
            continue;
        }
        let l = mi.lcm(mj);
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].leading_monomial().unwrap().divides(&l)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let s = s_poly(&basis[i], &basis[j])?;
        limits.check(&s)?;
        let h = normal_form(&s, &basis);
        if h.is_zero() {
            continue;
        }
        limits.check(&h)?;
        push_element(&mut basis, &mut pending, h.make_monic());
    }

    Ok(GroebnerBasis {
        order,
        polys: interreduce(minimize(basis, order), order),
    })
}

fn push_element<C: FieldElement>(
    basis: &mut Vec<SparsePoly<C>>,
    pending: &mut BTreeSet<(usize, usize)>,
    h: SparsePoly<C>,
) {
    let k = basis.len();
    for i in 0..k {
        pending.insert((i, k));
    }
    basis.push(h);
}

fn select_pair<C: FieldElement>(
    basis: &[SparsePoly<C>],
    pending: &BTreeSet<(usize, usize)>,
    order: TermOrder,
) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), Monomial)> = None;
    for &(i, j) in pending {
        let l = basis[i]
            .leading_monomial()
            .unwrap()
            .lcm(basis[j].leading_monomial().unwrap());
        let better = match &best {
            None => true,
            Some((_, bl)) => order.cmp(&l, bl) == std::cmp::Ordering::Less,
        };
        if better {
            best = Some(((i, j), l));
        }
    }
    best.map(|(p, _)| p)
}

// drop members whose leading monomial is divisible by another's
fn minimize<C: FieldElement>(basis: Vec<SparsePoly<C>>, order: TermOrder) -> Vec<SparsePoly<C>> {
    let mut keep: Vec<SparsePoly<C>> = Vec::new();
    let mut sorted = basis;
    sort_by_leading(&mut sorted, order);
    for p in sorted {
        let lm = p.leading_monomial().unwrap();
        if keep.iter().any(|q| q.leading_monomial().unwrap().divides(lm)) {
            continue;
        }
        keep.push(p);
    }
    keep
}

fn interreduce<C: FieldElement>(basis: Vec<SparsePoly<C>>, order: TermOrder) -> Vec<SparsePoly<C>> {
    let mut out = basis.clone();
    for i in 0..out.len() {
        let others: Vec<SparsePoly<C>> = out
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != i)
            .map(|(_, p)| p.clone())
            .collect();
        out[i] = normal_form(&out[i], &others).make_monic();
    }
    sort_by_leading(&mut out, order);
    out
}

/// Checks that every S-polynomial of basis members reduces to zero.
pub fn satisfies_buchberger_criterion<C: FieldElement>(gb: &GroebnerBasis<C>) -> bool {
    let ps = &gb.polys;
    for i in 0..ps.len() {
        for j in i + 1..ps.len() {
            let s = s_poly(&ps[i], &ps[j]).expect("nonzero members");
            if !normal_form(&s, ps).is_zero() {
                return false;
            }
        }
    }
    true
}

/// Members of `gb` free of the first `count` variables. Under an order that
/// ranks those variables in their own leading block, these generate the
/// elimination ideal.
pub fn eliminate<C: FieldElement>(
    gb: &GroebnerBasis<C>,
    count: usize,
) -> Result<Vec<SparsePoly<C>>, GroebnerError> {
    if !gb.order.eliminates_leading(count) {
        return Err(GroebnerError::WrongOrder);
    }
    Ok(gb
        .polys
        .iter()
        .filter(|p| (0..count).all(|v| !p.contains_var(v)))
        .cloned()
        .collect())
}

/// Removes the first `count` variables from a polynomial that does not use them.
pub fn drop_leading_vars<C: FieldElement>(
    p: &SparsePoly<C>,
    count: usize,
    order: TermOrder,
) -> SparsePoly<C> {
    let n = p.nvars() - count;
    SparsePoly::from_terms(
        n,
        order,
        p.terms().iter().map(|(m, c)| {
            debug_assert!(m.exponents()[..count].iter().all(|&e| e == 0));
            (Monomial::from_exponents(&m.exponents()[count..]), c.clone())
        }),
    )
}
