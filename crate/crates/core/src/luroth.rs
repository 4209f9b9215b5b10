//! Transcendence degree classification and Lüroth generators.
//!
//! For `K = k(f1, ..., fr) ⊂ k(x1, ..., xn)` the ideal Δ(K) of polynomials in
//! `K[y1, ..., yn]` vanishing at `y = x` is computed by elimination. It is
//! zero iff `K = k`, principal iff `trdeg K = 1`, and in the principal case
//! any nonconstant ratio of coefficients of its primitive generator generates
//! `K` over k.

use thiserror::Error;

use crate::algebra::{
    clear_denominators, content_primitive, poly_gcd, AlgebraError, FieldSpec, Monomial, MultiPoly,
    RatFunc, Scalar, SparsePoly, TermOrder, YPoly,
};
use crate::exactla::{rank, ExactMatrix};
use crate::exprparse::{parse_ratfunc, validate_vars, ExprSource, ParseError};
use crate::groebner::{buchberger_with_limits, drop_leading_vars, eliminate, GroebnerError, Limits};
use crate::membership::{certify_membership, MembershipAnswer, MembershipError, DEFAULT_SLACK};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LurothError {
    #[error("no generators given")]
    NoGenerators,
    #[error("generator {index} lives in {found} variables, expected {expected}")]
    GeneratorContext {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("generator {index} is over {found}, expected {expected}")]
    GeneratorField {
        index: usize,
        expected: FieldSpec,
        found: FieldSpec,
    },
    #[error("parse error in generator {index}: {source}")]
    Parse { index: usize, source: ParseError },
    #[error(transparent)]
    Variables(ParseError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Membership(#[from] MembershipError),
    #[error("internal error: every coefficient ratio of the primitive generator is constant")]
    NoNonconstantRatio,
    #[error("generator polynomial is constant in y")]
    ConstantGenerator,
    #[error("D = f(y)g(x) - f(x)g(y) is not a constant multiple of F")]
    NotProportional,
    #[error("certificate failure: {0}")]
    CertificateFailure(String),
}

impl LurothError {
    pub fn is_resource_limit(&self) -> bool {
        matches!(self, LurothError::Groebner(GroebnerError::ResourceLimit(_)))
    }

    pub fn is_certificate_failure(&self) -> bool {
        matches!(
            self,
            LurothError::NotProportional | LurothError::NoNonconstantRatio | LurothError::CertificateFailure(_)
        )
    }
}

/// Generators of a subfield of k(x1, ..., xn).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubfieldPresentation {
    field: FieldSpec,
    x_vars: Vec<String>,
    generators: Vec<RatFunc>,
}

impl SubfieldPresentation {
    pub fn new(field: FieldSpec, x_vars: Vec<String>, generators: Vec<RatFunc>) -> Result<Self, LurothError> {
        validate_vars(&x_vars).map_err(LurothError::Variables)?;
        if generators.is_empty() {
            return Err(LurothError::NoGenerators);
        }
        for (index, g) in generators.iter().enumerate() {
            if g.nvars() != x_vars.len() {
                return Err(LurothError::GeneratorContext {
                    index,
                    expected: x_vars.len(),
                    found: g.nvars(),
                });
            }
            if g.field() != field {
                return Err(LurothError::GeneratorField {
                    index,
                    expected: field,
                    found: g.field(),
                });
            }
        }
        Ok(SubfieldPresentation {
            field,
            x_vars,
            generators,
        })
    }

    /// Parses each generator with [`parse_ratfunc`].
    pub fn parse<S: AsRef<str>>(field: FieldSpec, x_vars: &[&str], generators: &[S]) -> Result<Self, LurothError> {
        let vars: Vec<String> = x_vars.iter().map(|s| s.to_string()).collect();
        validate_vars(&vars).map_err(LurothError::Variables)?;
        let gens = generators
            .iter()
            .enumerate()
            .map(|(index, text)| {
                parse_ratfunc(&ExprSource {
                    text: text.as_ref(),
                    vars: &vars,
                    field,
                })
                .map_err(|source| LurothError::Parse { index, source })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(field, vars, gens)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn x_vars(&self) -> &[String] {
        &self.x_vars
    }

    pub fn nvars(&self) -> usize {
        self.x_vars.len()
    }

    pub fn generators(&self) -> &[RatFunc] {
        &self.generators
    }

    /// Names for the tag variables, distinct from every x name.
    pub fn tag_names(&self) -> Vec<String> {
        let mut prefix = String::from("y");
        loop {
            let names: Vec<String> = (1..=self.nvars()).map(|i| format!("{prefix}{i}")).collect();
            if names.iter().all(|n| !self.x_vars.contains(n)) {
                return names;
            }
            prefix.push('_');
        }
    }
}

/// Reduced Gröbner basis of Δ(K) in K[y] under grevlex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaIdeal {
    basis: Vec<YPoly>,
}

impl DeltaIdeal {
    pub fn basis(&self) -> &[YPoly] {
        &self.basis
    }

    /// Whether every member is zero after substituting `y := x`.
    pub fn vanishes_at_generic_point(&self) -> bool {
        self.basis.iter().all(|p| at_generic_point(p).is_zero())
    }
}

/// `p(x)` for `p` in K[y], tags identified with the x variables in order.
pub fn at_generic_point(p: &YPoly) -> RatFunc {
    let Some((_, c0)) = p.leading_term() else {
        panic!("evaluating the zero polynomial needs a context");
    };
    let (field, n) = (c0.field(), c0.nvars());
    let one = Scalar::one(field);
    let mut num_terms = Vec::new();
    let mut acc = RatFunc::zero(field, n);
    for (m, c) in p.terms() {
        if c.is_polynomial() {
            num_terms.extend(c.numer().terms().iter().map(|(t, a)| (t.mul(m), a.clone())));
        } else {
            let xm = MultiPoly::from_terms(field, n, [(m.clone(), one.clone())]);
            acc = &acc + &(c * &RatFunc::from_poly(xm));
        }
    }
    &acc + &RatFunc::from_poly(MultiPoly::from_terms(field, n, num_terms))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    Trdeg0,
    Trdeg1(YPoly),
    TrdegAtLeast2(Vec<YPoly>),
}

impl Classification {
    /// 0, 1, or 2 standing for "at least 2".
    pub fn trdeg_bound(&self) -> usize {
        match self {
            Classification::Trdeg0 => 0,
            Classification::Trdeg1(_) => 1,
            Classification::TrdegAtLeast2(_) => 2,
        }
    }

    /// Whether an exact transcendence degree is consistent with this class.
    pub fn agrees_with(&self, trdeg: usize) -> bool {
        match self {
            Classification::TrdegAtLeast2(_) => trdeg >= 2,
            _ => trdeg == self.trdeg_bound(),
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Classification::Trdeg0 => "trdeg 0",
            Classification::Trdeg1(_) => "trdeg 1",
            Classification::TrdegAtLeast2(_) => "trdeg >= 2",
        }
    }
}

/// `v = f/g` with `K = k(v)` and its certificates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LurothCertificate {
    pub v: RatFunc,
    /// Primitive generator of Δ(K) with coefficients in k[x].
    pub primitive: YPoly,
    /// `f(y)g(x) - f(x)g(y) = c F`.
    pub c: Scalar,
    /// One answer per generator, `Member(R_i)` with `f_i = R_i(v)`.
    pub membership: Vec<MembershipAnswer>,
}

impl LurothCertificate {
    pub fn reps(&self) -> Vec<&RatFunc> {
        self.membership.iter().filter_map(|a| a.representation()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LurothResult {
    pub classification: Classification,
    pub delta: DeltaIdeal,
    pub certificate: Option<LurothCertificate>,
    /// Jacobian rank, computed in characteristic 0 only.
    pub jacobian_trdeg: Option<usize>,
    pub vanishing: bool,
}

impl LurothResult {
    pub fn jacobian_agreement(&self) -> Option<bool> {
        self.jacobian_trdeg.map(|t| self.classification.agrees_with(t))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PipelineOptions {
    pub limits: Limits,
    /// Extra degrees tried past `ceil(deg f / deg v)` when certifying membership.
    pub slack: u32,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            limits: Limits::default(),
            slack: DEFAULT_SLACK,
        }
    }
}

/// Order on K[u, y1, ..., yn] with `u` eliminated first.
pub const DELTA_ORDER: TermOrder = TermOrder::Block { first: 1 };

/// Squarefree part of the lcm of the generator denominators (the lcm itself
/// in positive characteristic). Saturating by it is the same as saturating
/// by the product of the denominators.
pub fn saturation_poly(pres: &SubfieldPresentation) -> MultiPoly {
    let mut l = MultiPoly::one(pres.field, pres.nvars());
    for f in &pres.generators {
        let d = f.denom();
        if !d.is_one() {
            let g = poly_gcd(&l, d);
            l = &l * &d.exact_div(&g).expect("gcd divides");
        }
    }
    if pres.field.characteristic() != 0 || l.is_constant() {
        return l;
    }
    let mut repeated = l.clone();
    for j in 0..pres.nvars() {
        if repeated.is_constant() {
            break;
        }
        let dj = l.derivative(j);
        if !dj.is_zero() {
            repeated = poly_gcd(&repeated, &dj);
        }
    }
    l.exact_div(&repeated).expect("gcd divides").make_monic()
}

/// `P_i(y) - f_i Q_i(y)` in K[y] with tags `0..n`, zero members dropped.
pub fn relation_polys(pres: &SubfieldPresentation, order: TermOrder) -> Vec<YPoly> {
    let n = pres.nvars();
    let one = RatFunc::one(pres.field, n);
    pres.generators
        .iter()
        .map(|f| {
            let terms = f
                .numer()
                .terms()
                .iter()
                .map(|(m, c)| (m.clone(), one.scale(c)))
                .chain(f.denom().terms().iter().map(|(m, c)| (m.clone(), f.scale(&-c))));
            SparsePoly::from_terms(n, order, terms)
        })
        .filter(|p| !p.is_zero())
        .collect()
}

// p in K[y] lifted to K[u, y] (u is tag 0) times u^u_exp
fn lift_u(p: &YPoly, u_exp: u32) -> YPoly {
    let terms = p.terms().iter().map(|(m, c)| {
        let mut e = Vec::with_capacity(m.nvars() + 1);
        e.push(u_exp);
        e.extend_from_slice(m.exponents());
        (Monomial::from_exponents(&e), c.clone())
    });
    SparsePoly::from_terms(p.nvars() + 1, DELTA_ORDER, terms)
}

fn saturation_member(s: &MultiPoly) -> YPoly {
    let n = s.nvars();
    let one = RatFunc::one(s.field(), n);
    let mut terms: Vec<(Monomial, RatFunc)> = s
        .terms()
        .iter()
        .map(|(m, c)| {
            let mut e = vec![1];
            e.extend_from_slice(m.exponents());
            (Monomial::from_exponents(&e), one.scale(c))
        })
        .collect();
    terms.push((Monomial::one(n + 1), -&one));
    SparsePoly::from_terms(n + 1, DELTA_ORDER, terms)
}

/// Generators `P_i(y) - f_i Q_i(y)` and the saturation member `u S(y) - 1`
/// in K[u, y] (u is tag 0), `S` from [`saturation_poly`]. Zero members are
/// dropped, and so is the saturation member when `S = 1`.
pub fn build_delta_system(pres: &SubfieldPresentation) -> Result<Vec<YPoly>, LurothError> {
    if pres.generators.is_empty() {
        return Err(LurothError::NoGenerators);
    }
    let mut system: Vec<YPoly> = relation_polys(pres, TermOrder::Grevlex)
        .iter()
        .map(|p| lift_u(p, 0))
        .collect();
    let s = saturation_poly(pres);
    if !s.is_one() {
        system.push(saturation_member(&s));
    }
    Ok(system)
}

/// Δ(K) by the textbook route: basis of the whole system under the block
/// order, keep the u-free members, re-reduce under grevlex.
pub fn compute_delta_by_elimination(pres: &SubfieldPresentation, limits: Limits) -> Result<DeltaIdeal, LurothError> {
    let system = build_delta_system(pres)?;
    eliminate_u(&system, limits)
}

fn eliminate_u(system: &[YPoly], limits: Limits) -> Result<DeltaIdeal, LurothError> {
    let gb = buchberger_with_limits(system, DELTA_ORDER, limits)?;
    let projected: Vec<YPoly> = eliminate(&gb, 1)?
        .iter()
        .map(|p| drop_leading_vars(p, 1, TermOrder::Grevlex))
        .collect();
    let basis = buchberger_with_limits(&projected, TermOrder::Grevlex, limits)?;
    Ok(DeltaIdeal {
        basis: basis.into_polys(),
    })
}

/// Reduced basis of Δ(K).
///
/// The relations alone are reduced first. When they already generate a
/// principal ideal `(G)`, saturating by `S` only removes the factors `G`
/// shares with `S(y)`; those are found by a gcd in k[x, y]. Otherwise the
/// saturation variable is added and eliminated.
pub fn compute_delta(pres: &SubfieldPresentation, limits: Limits) -> Result<DeltaIdeal, LurothError> {
    if pres.generators.is_empty() {
        return Err(LurothError::NoGenerators);
    }
    let relations = relation_polys(pres, TermOrder::Grevlex);
    let ideal = buchberger_with_limits(&relations, TermOrder::Grevlex, limits)?;
    let s = saturation_poly(pres);
    match ideal.polys() {
        [] => return Ok(DeltaIdeal { basis: Vec::new() }),
        [g] => {
            let g = strip_common_factors(g, &s);
            if !g.is_constant() {
                return Ok(DeltaIdeal { basis: vec![g] });
            }
        }
        _ => {}
    }
    if s.is_one() {
        return Ok(DeltaIdeal {
            basis: ideal.into_polys(),
        });
    }
    let mut system: Vec<YPoly> = ideal.polys().iter().map(|p| lift_u(p, 0)).collect();
    system.push(saturation_member(&s));
    eliminate_u(&system, limits)
}

// G in K[y] with every factor shared with s(y) in k[y] removed; monic
fn strip_common_factors(g: &YPoly, s: &MultiPoly) -> YPoly {
    if s.is_constant() {
        return g.make_monic();
    }
    let n = s.nvars();
    let (_, cleared) = clear_denominators(g).expect("nonzero polynomial");
    // joint ring k[x1..xn, y1..yn]
    let mut joint = MultiPoly::from_terms(
        s.field(),
        2 * n,
        cleared.terms().iter().flat_map(|(my, c)| {
            c.numer().terms().iter().map(move |(mx, a)| {
                let mut e = mx.exponents().to_vec();
                e.extend_from_slice(my.exponents());
                (Monomial::from_exponents(&e), a.clone())
            })
        }),
    );
    let shift: Vec<usize> = (n..2 * n).collect();
    let s_joint = s.remap(2 * n, &shift);
    loop {
        let d = poly_gcd(&joint, &s_joint);
        if d.is_constant() {
            break;
        }
        joint = joint.exact_div(&d).expect("gcd divides");
    }
    let mut buckets: Vec<(Monomial, Vec<(Monomial, Scalar)>)> = Vec::new();
    for (m, c) in joint.terms() {
        let (mx, my) = m.exponents().split_at(n);
        let (mx, my) = (Monomial::from_exponents(mx), Monomial::from_exponents(my));
        match buckets.iter_mut().find(|(t, _)| *t == my) {
            Some((_, v)) => v.push((mx, c.clone())),
            None => buckets.push((my, vec![(mx, c.clone())])),
        }
    }
    let terms = buckets
        .into_iter()
        .map(|(my, xs)| (my, RatFunc::from_poly(MultiPoly::from_terms(s.field(), n, xs))));
    SparsePoly::from_terms(n, g.order(), terms).make_monic()
}

pub fn classify(delta: &DeltaIdeal) -> Classification {
    match delta.basis.as_slice() {
        [] => Classification::Trdeg0,
        [g] => Classification::Trdeg1(g.make_monic()),
        many => Classification::TrdegAtLeast2(many.to_vec()),
    }
}

/// Rank of the Jacobian matrix `(d f_i / d x_j)` over k(x).
pub fn jacobian_trdeg(pres: &SubfieldPresentation) -> Result<usize, LurothError> {
    if pres.field.characteristic() != 0 {
        return Err(AlgebraError::UnsupportedInPositiveCharacteristic.into());
    }
    let n = pres.nvars();
    if n == 0 {
        return Ok(0);
    }
    let rows = pres
        .generators
        .iter()
        .map(|f| (0..n).map(|j| f.partial_derivative(j)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    Ok(rank(&ExactMatrix::from_rows(rows, n)))
}

/// `v` with numerator leading coefficient 1.
fn normalize_generator(v: &RatFunc) -> RatFunc {
    let lc = v.numer().leading_coeff().expect("nonconstant ratio").clone();
    v.scale(&lc.inverse().expect("nonzero"))
}

/// Clears `G` to a primitive `F` in k[x][y] and returns the first
/// nonconstant ratio `A_i / A_r` of its coefficients, `A_r` leading.
pub fn extract_generator(g: &YPoly) -> Result<(RatFunc, YPoly), LurothError> {
    if g.is_constant() {
        return Err(LurothError::ConstantGenerator);
    }
    let (_, cleared) = clear_denominators(g).ok_or(LurothError::ConstantGenerator)?;
    let (_, f) = content_primitive(&cleared)?;
    let lead = f.leading_coeff().expect("nonzero");
    for (_, a) in &f.terms()[1..] {
        let ratio = a.checked_div(lead)?;
        if !ratio.is_constant() {
            return Ok((normalize_generator(&ratio), f));
        }
    }
    Err(LurothError::NoNonconstantRatio)
}

/// `f(y)g(x) - f(x)g(y)` in k[x][y] for `v = f/g`.
pub fn cross_form(v: &RatFunc, order: TermOrder) -> YPoly {
    let n = v.nvars();
    let (f, g) = (v.numer(), v.denom());
    let gx = RatFunc::from_poly(g.clone());
    let neg_fx = -&RatFunc::from_poly(f.clone());
    let terms = f
        .terms()
        .iter()
        .map(|(m, c)| (m.clone(), gx.scale(c)))
        .chain(g.terms().iter().map(|(m, c)| (m.clone(), neg_fx.scale(c))));
    SparsePoly::from_terms(n, order, terms)
}

/// The constant `c` with `f(y)g(x) - f(x)g(y) = c F`.
pub fn certify_d_equals_cf(v: &RatFunc, f: &YPoly) -> Result<Scalar, LurothError> {
    let d = cross_form(v, f.order());
    let (m, a) = f.leading_term().ok_or(LurothError::NotProportional)?;
    let dm = d.coeff_of(m).ok_or(LurothError::NotProportional)?;
    let c = dm
        .checked_div(a)?
        .constant_value()
        .ok_or(LurothError::NotProportional)?;
    if c.is_zero() || d != f.scale(&RatFunc::constant(c.clone(), v.nvars())) {
        return Err(LurothError::NotProportional);
    }
    Ok(c)
}

pub fn luroth_pipeline(pres: &SubfieldPresentation) -> Result<LurothResult, LurothError> {
    luroth_pipeline_with(pres, PipelineOptions::default())
}

pub fn luroth_pipeline_with(pres: &SubfieldPresentation, opts: PipelineOptions) -> Result<LurothResult, LurothError> {
    let jacobian = match pres.field.characteristic() {
        0 => Some(jacobian_trdeg(pres)?),
        _ => None,
    };
    let delta = if pres.generators.iter().all(|f| f.is_constant()) {
        DeltaIdeal { basis: Vec::new() }
    } else {
        compute_delta(pres, opts.limits)?
    };
    let vanishing = delta.vanishes_at_generic_point();
    if !vanishing {
        return Err(LurothError::CertificateFailure(
            "a basis member of the elimination ideal does not vanish at y = x".into(),
        ));
    }
    let classification = classify(&delta);
    let certificate = match &classification {
        Classification::Trdeg1(g) => Some(certify(pres, g, opts.slack)?),
        _ => None,
    };
    Ok(LurothResult {
        classification,
        delta,
        certificate,
        jacobian_trdeg: jacobian,
        vanishing,
    })
}

fn certify(pres: &SubfieldPresentation, g: &YPoly, slack: u32) -> Result<LurothCertificate, LurothError> {
    let (v, primitive) = extract_generator(g)?;
    let c = certify_d_equals_cf(&v, &primitive)?;
    let mut membership = Vec::with_capacity(pres.generators.len());
    for (i, f) in pres.generators.iter().enumerate() {
        let ans = certify_membership(f, &v, slack)?;
        if ans.representation().is_none() {
            return Err(LurothError::CertificateFailure(format!(
                "generator {} not expressed in k(v) up to degree {}",
                i + 1,
                ans.degree_used
            )));
        }
        membership.push(ans);
    }
    Ok(LurothCertificate {
        v,
        primitive,
        c,
        membership,
    })
}
