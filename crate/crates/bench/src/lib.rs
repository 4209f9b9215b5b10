//! Fixtures shared by the benchmarks.

use luroth_core::algebra::{SparsePoly, TermOrder};
use luroth_core::luroth::SubfieldPresentation;
use luroth_core::selftest::{instance_rng, planted_instance, random_poly};
use luroth_core::{FieldSpec, MultiPoly, Scalar};

/// `(f h, g h)` with a shared factor `h`, in `n` variables.
pub fn gcd_pair(n: usize, deg: u32, seed: u64) -> (MultiPoly, MultiPoly) {
    let mut rng = instance_rng(seed, n as u64);
    let mut draw = |d| loop {
        let p = random_poly(&mut rng, FieldSpec::Rationals, n, d, 0.5);
        if !p.is_constant() {
            break p;
        }
    };
    let (f, g, h) = (draw(deg), draw(deg), draw(deg));
    (&f * &h, &g * &h)
}

/// Three dense-ish quadrics in three variables.
pub fn buchberger_input(seed: u64) -> Vec<SparsePoly<Scalar>> {
    let mut rng = instance_rng(seed, 0);
    (0..3)
        .map(|_| {
            let p = random_poly(&mut rng, FieldSpec::Rationals, 3, 2, 0.5);
            SparsePoly::from_terms(3, TermOrder::Grevlex, p.terms().iter().cloned())
        })
        .filter(|p| !p.is_zero())
        .collect()
}

pub fn planted(seed: u64, count: u64) -> Vec<SubfieldPresentation> {
    (0..count).map(|i| planted_instance(seed, i).presentation).collect()
}
