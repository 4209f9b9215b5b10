use super::gcd::poly_gcd;
use super::{AlgebraError, MultiPoly, RatFunc, YPoly};

/// Splits a tag polynomial with polynomial coefficients into its content (the
/// monic gcd of all coefficients) and primitive part.
pub fn content_primitive(f: &YPoly) -> Result<(MultiPoly, YPoly), AlgebraError> {
    let (_, first) = f.leading_term().ok_or(AlgebraError::ZeroPolynomial)?;
    if f.terms().iter().any(|(_, c)| !c.is_polynomial()) {
        return Err(AlgebraError::NotPolynomialCoefficients);
    }
    let mut content = MultiPoly::zero(first.field(), first.nvars());
    for (_, c) in f.terms() {
        content = poly_gcd(&content, c.numer());
        if content.is_one() {
            break;
        }
    }
    if content.is_one() {
        return Ok((content, f.clone()));
    }
    let primitive = f.map_coeffs(|c| {
        RatFunc::from_poly(c.numer().exact_div(&content).expect("content divides"))
    });
    Ok((content, primitive))
}

/// Least common multiple of the coefficient denominators, and `lcm * f`.
/// `None` for the zero polynomial.
pub fn clear_denominators(f: &YPoly) -> Option<(MultiPoly, YPoly)> {
    let (_, first) = f.leading_term()?;
    let mut lcm = MultiPoly::one(first.field(), first.nvars());
    for (_, c) in f.terms() {
        let d = c.denom();
        if d.is_one() {
            continue;
        }
        let g = poly_gcd(&lcm, d);
        lcm = &lcm * &d.exact_div(&g).expect("gcd divides");
    }
    let a = RatFunc::from_poly(lcm.clone());
    Some((lcm, f.map_coeffs(|c| c * &a)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{FieldSpec, Monomial, Scalar, TermOrder};

    const Q: FieldSpec = FieldSpec::Rationals;

    fn x(i: usize) -> MultiPoly {
        MultiPoly::var(Q, 2, i)
    }

    fn y(i: usize) -> Monomial {
        Monomial::var(2, i, 1)
    }

    fn poly(p: MultiPoly) -> RatFunc {
        RatFunc::from_poly(p)
    }

    #[test]
    fn extracts_common_x_factor() {
        // x2^2 y1 - x1 x2 y2
        let f = YPoly::from_terms(
            2,
            TermOrder::Grevlex,
            [
                (y(0), poly(&x(1) * &x(1))),
                (y(1), poly(-&(&x(0) * &x(1)))),
            ],
        );
        let (c, p) = content_primitive(&f).unwrap();
        assert_eq!(c, x(1));
        let want = YPoly::from_terms(
            2,
            TermOrder::Grevlex,
            [(y(0), poly(x(1))), (y(1), poly(-&x(0)))],
        );
        assert_eq!(p, want);
    }

    #[test]
    fn primitive_input_unchanged() {
        let one = RatFunc::one(Q, 2);
        let f = YPoly::from_terms(2, TermOrder::Grevlex, [(y(0), one.clone()), (y(1), -&one)]);
        let (c, p) = content_primitive(&f).unwrap();
        assert!(c.is_one());
        assert_eq!(p, f);
    }

    #[test]
    fn zero_has_no_content() {
        let z = YPoly::zero(2, TermOrder::Grevlex);
        assert_eq!(content_primitive(&z).unwrap_err(), AlgebraError::ZeroPolynomial);
    }

    #[test]
    fn clearing_uses_lcm() {
        let a = RatFunc::new(MultiPoly::one(Q, 2), x(0)).unwrap();
        let b = RatFunc::new(MultiPoly::constant(Scalar::from_i64(Q, 3), 2), &x(0) * &x(1)).unwrap();
        let f = YPoly::from_terms(2, TermOrder::Grevlex, [(y(0), a), (y(1), b)]);
        let (l, cleared) = clear_denominators(&f).unwrap();
        assert_eq!(l, &x(0) * &x(1));
        assert!(cleared.terms().iter().all(|(_, c)| c.is_polynomial()));
    }
}
