//! Seeded random instances with a planted generator.
//!
//! An instance picks a nonconstant `w = p/q` in k(x) and univariate `g_i`,
//! then presents `K = k(g_1(w), ..., g_r(w))`. One of the `g_i` is a Möbius
//! map, so `K = k(w)` and the pipeline's `v` must be Möbius-equivalent to `w`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{compose_univariate, FieldSpec, Monomial, MultiPoly, RatFunc, Scalar};
use crate::exprparse::format_ratfunc;
use crate::luroth::{luroth_pipeline_with, Classification, PipelineOptions, SubfieldPresentation};
use crate::membership::mobius_equivalent;

/// Instance `index` of the stream for `seed`; independent of other indices.
pub fn instance_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn small_coeff<R: Rng>(rng: &mut R, field: FieldSpec) -> Scalar {
    let mut c = 0;
    while c == 0 {
        c = rng.gen_range(-3i64..=3);
    }
    Scalar::from_i64(field, c)
}

fn monomials_up_to(n: usize, max_deg: u32) -> Vec<Monomial> {
    let mut out = vec![Monomial::one(n)];
    for _ in 0..max_deg {
        let mut next = Vec::new();
        for m in &out {
            for i in 0..n {
                let e = m.mul(&Monomial::var(n, i, 1));
                if !out.contains(&e) && !next.contains(&e) {
                    next.push(e);
                }
            }
        }
        out.extend(next);
    }
    out
}

/// Random polynomial of total degree at most `max_deg` with coefficients in
/// `[-3, 3]`; each monomial appears with probability `density`.
pub fn random_poly<R: Rng>(rng: &mut R, field: FieldSpec, n: usize, max_deg: u32, density: f64) -> MultiPoly {
    let mut terms = Vec::new();
    for m in monomials_up_to(n, max_deg) {
        if rng.gen_bool(density) {
            terms.push((m, small_coeff(rng, field)));
        }
    }
    MultiPoly::from_terms(field, n, terms)
}

fn random_nonzero_poly<R: Rng>(rng: &mut R, field: FieldSpec, n: usize, max_deg: u32) -> MultiPoly {
    loop {
        let p = random_poly(rng, field, n, max_deg, 0.5);
        if !p.is_zero() {
            return p;
        }
    }
}

/// Random nonconstant `p/q` with both parts of degree at most `max_deg`.
pub fn random_nonconstant<R: Rng>(rng: &mut R, field: FieldSpec, n: usize, max_deg: u32) -> RatFunc {
    loop {
        let p = random_nonzero_poly(rng, field, n, max_deg);
        let q = random_nonzero_poly(rng, field, n, max_deg);
        let w = RatFunc::new(p, q).expect("nonzero denominator");
        if !w.is_constant() {
            return w;
        }
    }
}

/// Univariate `(a s + b) / (c s + d)` with `ad - bc != 0`.
pub fn random_mobius<R: Rng>(rng: &mut R, field: FieldSpec) -> RatFunc {
    loop {
        let c: Vec<Scalar> = (0..4).map(|_| Scalar::from_i64(field, rng.gen_range(-3i64..=3))).collect();
        let det = &(&c[0] * &c[3]) - &(&c[1] * &c[2]);
        if det.is_zero() {
            continue;
        }
        let lin = |a: &Scalar, b: &Scalar| {
            MultiPoly::from_terms(field, 1, [(Monomial::var(1, 0, 1), a.clone()), (Monomial::one(1), b.clone())])
        };
        return RatFunc::new(lin(&c[0], &c[1]), lin(&c[2], &c[3])).expect("nonzero denominator");
    }
}

#[derive(Clone, Debug)]
pub struct PlantedInstance {
    pub seed: u64,
    pub index: u64,
    pub w: RatFunc,
    /// Univariate in `s`.
    pub outer: Vec<RatFunc>,
    pub presentation: SubfieldPresentation,
}

impl PlantedInstance {
    /// A command line reproducing this instance.
    pub fn reproduction(&self) -> String {
        let pres = &self.presentation;
        let gens: Vec<String> = pres.generators().iter().map(|g| format_ratfunc(g, pres.x_vars())).collect();
        format!(
            "seed={} index={}: solve --field {} --vars {} --gens \"{}\"",
            self.seed,
            self.index,
            pres.field(),
            pres.x_vars().join(","),
            gens.join(",")
        )
    }
}

pub fn x_names(n: usize) -> Vec<String> {
    if n == 1 {
        return vec!["x".to_string()];
    }
    (1..=n).map(|i| format!("x{i}")).collect()
}

/// `n <= 3` variables, `w` of degree at most 2, one to three `g_i` of degree
/// at most 2, one of them Möbius.
pub fn planted_instance(seed: u64, index: u64) -> PlantedInstance {
    let field = FieldSpec::Rationals;
    let mut rng = instance_rng(seed, index);
    let n = rng.gen_range(1..=3);
    let w = random_nonconstant(&mut rng, field, n, 2);
    let r = rng.gen_range(1..=3);
    let mut outer = vec![random_mobius(&mut rng, field)];
    for _ in 1..r {
        let a = random_nonzero_poly(&mut rng, field, 1, 2);
        let b = random_nonzero_poly(&mut rng, field, 1, 2);
        outer.push(RatFunc::new(a, b).expect("nonzero denominator"));
    }
    outer.shuffle(&mut rng);
    let gens = outer
        .iter()
        .map(|g| compose_univariate(g, &w).expect("Möbius-free denominators stay nonzero"))
        .collect();
    let presentation = SubfieldPresentation::new(field, x_names(n), gens).expect("valid presentation");
    PlantedInstance {
        seed,
        index,
        w,
        outer,
        presentation,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceOutcome {
    pub index: u64,
    pub passed: bool,
    /// Failure reason followed by the reproduction string.
    pub detail: Option<String>,
    pub v: Option<String>,
}

/// Runs the pipeline and checks every certificate plus Möbius equivalence with the planted `w`.
pub fn check_planted(inst: &PlantedInstance, opts: PipelineOptions) -> InstanceOutcome {
    let fail = |why: String| InstanceOutcome {
        index: inst.index,
        passed: false,
        detail: Some(format!("{why}; {}", inst.reproduction())),
        v: None,
    };
    let res = match luroth_pipeline_with(&inst.presentation, opts) {
        Ok(r) => r,
        Err(e) => return fail(format!("pipeline error: {e}")),
    };
    if !res.vanishing {
        return fail("basis does not vanish at y = x".into());
    }
    if res.jacobian_agreement() == Some(false) {
        return fail("classification disagrees with the Jacobian rank".into());
    }
    let Classification::Trdeg1(_) = res.classification else {
        return fail(format!("expected trdeg 1, got {}", res.classification.label()));
    };
    let Some(cert) = res.certificate else {
        return fail("trdeg 1 without certificate".into());
    };
    for (f, ans) in inst.presentation.generators().iter().zip(&cert.membership) {
        let ok = ans
            .representation()
            .is_some_and(|r| compose_univariate(r, &cert.v).as_ref() == Ok(f));
        if !ok {
            return fail("membership representation does not recompose".into());
        }
    }
    match mobius_equivalent(&cert.v, &inst.w) {
        Ok(Some(_)) => InstanceOutcome {
            index: inst.index,
            passed: true,
            detail: None,
            v: Some(format_ratfunc(&cert.v, inst.presentation.x_vars())),
        },
        _ => fail("v is not Möbius-equivalent to the planted w".into()),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TrdegKind {
    Zero,
    One,
    Two,
}

/// Presentation of known transcendence degree: constants, a planted
/// single-generator field, or a field containing two independent functions.
pub fn presentation_of_kind(seed: u64, index: u64, kind: TrdegKind) -> SubfieldPresentation {
    let field = FieldSpec::Rationals;
    let mut rng = instance_rng(seed, index);
    match kind {
        TrdegKind::Zero => {
            let n = rng.gen_range(1..=3);
            let r = rng.gen_range(1..=3);
            let gens = (0..r)
                .map(|_| {
                    let num = small_coeff(&mut rng, field);
                    let den = small_coeff(&mut rng, field);
                    RatFunc::constant(num.checked_div(&den).unwrap(), n)
                })
                .collect();
            SubfieldPresentation::new(field, x_names(n), gens).unwrap()
        }
        TrdegKind::One => planted_instance(seed, index).presentation,
        TrdegKind::Two => {
            let n = rng.gen_range(2..=3);
            let (a, b) = (0, rng.gen_range(1..n));
            let xa = RatFunc::var(field, n, a);
            let xb = RatFunc::var(field, n, b);
            let k = |rng: &mut ChaCha8Rng| RatFunc::constant(small_coeff(rng, field), n);
            // x_a is recovered from the first, then the second is nonconstant in x_b
            let first = &xa + &k(&mut rng);
            let second = (&(&xa * &xb) + &k(&mut rng)).checked_div(&(&xb + &k(&mut rng))).unwrap();
            let mut gens = vec![first, second];
            if rng.gen_bool(0.5) {
                gens.push(random_nonconstant(&mut rng, field, n, 1));
            }
            gens.shuffle(&mut rng);
            SubfieldPresentation::new(field, x_names(n), gens).unwrap()
        }
    }
}
