//! Certified membership `f ∈ k(v)` and Möbius equivalence of generators.
//!
//! Both reduce to homogeneous linear systems over k: the unknowns are the
//! coefficients of a univariate rational function, and the equations are the
//! coefficients of a cleared-denominator polynomial identity in k[x].

use std::collections::HashMap;

use thiserror::Error;

use crate::algebra::{compose_univariate, Monomial, MultiPoly, RatFunc, Scalar};
use crate::exactla::{nullspace, ExactMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MembershipError {
    #[error("candidate generator is constant")]
    ConstantV,
    #[error("Möbius test needs nonconstant inputs")]
    ConstantInput,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MembershipStatus {
    /// `f = R(v)` with `R` univariate in one symbol.
    Member(RatFunc),
    /// No representation found up to this degree.
    NotCertified(u32),
    NotMember,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipAnswer {
    pub status: MembershipStatus,
    pub degree_used: u32,
    /// The starting degree `ceil(deg f / deg v)` of the scan.
    pub base_degree: u32,
}

impl MembershipAnswer {
    pub fn representation(&self) -> Option<&RatFunc> {
        match &self.status {
            MembershipStatus::Member(r) => Some(r),
            _ => None,
        }
    }

    pub fn slack_consumed(&self) -> u32 {
        self.degree_used.saturating_sub(self.base_degree)
    }
}

pub const DEFAULT_SLACK: u32 = 2;

// columns of a linear system indexed by the monomials they touch
fn coefficient_matrix(columns: &[MultiPoly]) -> ExactMatrix<Scalar> {
    let field = columns[0].field();
    let mut rows: HashMap<Monomial, usize> = HashMap::new();
    let mut order: Vec<Monomial> = Vec::new();
    for col in columns {
        for (m, _) in col.terms() {
            if !rows.contains_key(m) {
                rows.insert(m.clone(), order.len());
                order.push(m.clone());
            }
        }
    }
    let mut grid = vec![vec![Scalar::zero(field); columns.len()]; order.len()];
    for (j, col) in columns.iter().enumerate() {
        for (m, c) in col.terms() {
            grid[rows[m]][j] = c.clone();
        }
    }
    ExactMatrix::from_rows(grid, columns.len())
}

fn univariate(coeffs: &[Scalar]) -> MultiPoly {
    let field = coeffs[0].field();
    MultiPoly::from_terms(
        field,
        1,
        coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| (Monomial::var(1, 0, j as u32), c.clone())),
    )
}

/// Looks for `R` of degree at most `d` with `f = R(v)`.
///
/// With `v = p/q` the unknowns `a_j, b_j` satisfy
/// `num(f) * sum b_j p^j q^(d-j) - den(f) * sum a_j p^j q^(d-j) = 0`.
/// Every candidate is re-checked by composition before being returned.
pub fn express_in(f: &RatFunc, v: &RatFunc, d: u32) -> Result<MembershipAnswer, MembershipError> {
    if v.is_constant() {
        return Err(MembershipError::ConstantV);
    }
    let answer = |status| MembershipAnswer {
        status,
        degree_used: d,
        base_degree: base_degree(f, v),
    };
    if d == 0 && !f.is_constant() {
        return Ok(answer(MembershipStatus::NotMember));
    }
    let (p, q) = (v.numer(), v.denom());
    let mut p_pows = vec![MultiPoly::one(p.field(), p.nvars())];
    let mut q_pows = vec![MultiPoly::one(p.field(), p.nvars())];
    for k in 1..=d as usize {
        p_pows.push(&p_pows[k - 1] * p);
        q_pows.push(&q_pows[k - 1] * q);
    }
    let basis: Vec<MultiPoly> = (0..=d as usize)
        .map(|j| &p_pows[j] * &q_pows[d as usize - j])
        .collect();
    let neg_den = -f.denom();
    let mut columns: Vec<MultiPoly> = basis.iter().map(|b| &neg_den * b).collect();
    columns.extend(basis.iter().map(|b| f.numer() * b));
    let kernel = nullspace(&coefficient_matrix(&columns));
    let width = d as usize + 1;
    for sol in kernel {
        let (a, b) = sol.split_at(width);
        if b.iter().all(|c| c.is_zero()) {
            continue;
        }
        let r = RatFunc::new(univariate(a), univariate(b)).expect("nonzero denominator");
        match compose_univariate(&r, v) {
            Ok(back) if back == *f => return Ok(answer(MembershipStatus::Member(r))),
            _ => continue,
        }
    }
    Ok(answer(MembershipStatus::NotCertified(d)))
}

fn base_degree(f: &RatFunc, v: &RatFunc) -> u32 {
    f.degree().div_ceil(v.degree().max(1))
}

/// Scans `d = d0, ..., d0 + slack` with `d0 = ceil(deg f / deg v)`.
pub fn certify_membership(f: &RatFunc, v: &RatFunc, slack: u32) -> Result<MembershipAnswer, MembershipError> {
    if v.is_constant() {
        return Err(MembershipError::ConstantV);
    }
    let d0 = base_degree(f, v);
    let mut last = None;
    for d in d0..=d0 + slack {
        let ans = express_in(f, v, d)?;
        match ans.status {
            MembershipStatus::Member(_) | MembershipStatus::NotMember => return Ok(ans),
            MembershipStatus::NotCertified(_) => last = Some(ans),
        }
    }
    Ok(last.expect("at least one degree tried"))
}

fn is_degree_zero_homogeneous(a: &RatFunc) -> bool {
    a.numer().is_homogeneous()
        && a.denom().is_homogeneous()
        && a.numer().total_degree() == a.denom().total_degree()
}

/// A complete non-membership argument: when `v` is homogeneous of degree 0,
/// so is every element of k(v); an `f` that is not cannot lie in k(v).
pub fn refutes_by_homogeneity(f: &RatFunc, v: &RatFunc) -> bool {
    !v.is_constant() && is_degree_zero_homogeneous(v) && !f.is_zero() && !is_degree_zero_homogeneous(f)
}

/// Coefficients `(a, b, c, d)` with `v = (a w + b) / (c w + d)` and
/// `ad - bc != 0`, normalized so the first nonzero coefficient is 1.
pub fn mobius_equivalent(
    v: &RatFunc,
    w: &RatFunc,
) -> Result<Option<[Scalar; 4]>, MembershipError> {
    if v.is_constant() || w.is_constant() {
        return Err(MembershipError::ConstantInput);
    }
    let (p1, q1) = (v.numer(), v.denom());
    let (p2, q2) = (w.numer(), w.denom());
    // p1 (c p2 + d q2) = q1 (a p2 + b q2)
    let columns = [q1 * p2, q1 * q2, -&(p1 * p2), -&(p1 * q2)];
    let kernel = nullspace(&coefficient_matrix(&columns));
    for sol in kernel {
        let det = &(&sol[0] * &sol[3]) - &(&sol[1] * &sol[2]);
        if det.is_zero() {
            continue;
        }
        let lead = sol.iter().find(|c| !c.is_zero()).expect("nonzero vector");
        let inv = lead.inverse().unwrap();
        let coeffs: Vec<Scalar> = sol.iter().map(|c| c * &inv).collect();
        let coeffs: [Scalar; 4] = coeffs.try_into().expect("four unknowns");
        if apply_mobius(&coeffs, w) == *v {
            return Ok(Some(coeffs));
        }
    }
    Ok(None)
}

/// `(a w + b) / (c w + d)`.
pub fn apply_mobius(coeffs: &[Scalar; 4], w: &RatFunc) -> RatFunc {
    let [a, b, c, d] = coeffs;
    let n = w.nvars();
    let top = &w.scale(a) + &RatFunc::constant(b.clone(), n);
    let bottom = &w.scale(c) + &RatFunc::constant(d.clone(), n);
    top.checked_div(&bottom).expect("nondegenerate Möbius map")
}
