use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::AlgebraError;

/// The ground field k.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    /// GF(p). Construct through [`FieldSpec::prime`] so that `p` is checked.
    Prime(u64),
}

impl FieldSpec {
    /// Moduli are limited to 32 bits.
    pub fn prime(p: u64) -> Result<Self, AlgebraError> {
        if p > u32::MAX as u64 {
            Err(AlgebraError::BadFieldSpec(format!("GF({p}): modulus exceeds 32 bits")))
        } else if is_prime(p) {
            Ok(FieldSpec::Prime(p))
        } else {
            Err(AlgebraError::NotPrime(p))
        }
    }

    pub fn characteristic(self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => p,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => f.write_str("Q"),
            FieldSpec::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = AlgebraError;

    /// Accepts `Q`, `QQ` and `GF(p)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t == "Q" || t == "QQ" {
            return Ok(FieldSpec::Rationals);
        }
        let inner = t
            .strip_prefix("GF(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| AlgebraError::BadFieldSpec(s.to_string()))?;
        let p: u64 = inner
            .trim()
            .parse()
            .map_err(|_| AlgebraError::BadFieldSpec(s.to_string()))?;
        FieldSpec::prime(p)
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact element of the ground field.
///
/// Rational values are kept reduced with a positive denominator (the
/// `BigRational` invariant); modular values lie in `[0, p)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Scalar {
    Rational(BigRational),
    Modular { value: u64, modulus: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScalarOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl Scalar {
    pub fn zero(field: FieldSpec) -> Self {
        Self::from_i64(field, 0)
    }

    pub fn one(field: FieldSpec) -> Self {
        Self::from_i64(field, 1)
    }

    pub fn from_i64(field: FieldSpec, v: i64) -> Self {
        match field {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            FieldSpec::Prime(p) => Scalar::Modular {
                value: v.rem_euclid(p as i64) as u64,
                modulus: p,
            },
        }
    }

    pub fn from_bigint(field: FieldSpec, v: &BigInt) -> Self {
        match field {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(v.clone())),
            FieldSpec::Prime(p) => {
                let r = v.mod_floor(&BigInt::from(p));
                Scalar::Modular {
                    value: r.to_u64().expect("residue fits"),
                    modulus: p,
                }
            }
        }
    }

    /// `num / den` as a field element; `None` when `den` vanishes in the field.
    pub fn from_fraction(field: FieldSpec, num: i64, den: i64) -> Option<Self> {
        let d = Self::from_i64(field, den);
        if d.is_zero() {
            return None;
        }
        Some(&Self::from_i64(field, num) * &d.inverse()?)
    }

    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rationals,
            Scalar::Modular { modulus, .. } => FieldSpec::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Modular { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Modular { value, .. } => *value == 1,
        }
    }

    /// True for values that print with a leading minus sign.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_negative(),
            Scalar::Modular { .. } => false,
        }
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Modular { value, modulus } => Scalar::Modular {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Scalar::one(self.field());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        self.same_field(rhs)?;
        Ok(self + rhs)
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        self.same_field(rhs)?;
        Ok(self - rhs)
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        self.same_field(rhs)?;
        Ok(self * rhs)
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        self.same_field(rhs)?;
        let inv = rhs.inverse().ok_or(AlgebraError::DivisionByZero)?;
        Ok(self * &inv)
    }

    fn same_field(&self, rhs: &Self) -> Result<(), AlgebraError> {
        if self.field() == rhs.field() {
            Ok(())
        } else {
            Err(AlgebraError::FieldMismatch(self.field(), rhs.field()))
        }
    }

    /// Exact rendering: `-3/7`, `5`, or the residue for GF(p).
    pub fn to_exact_string(&self) -> String {
        self.to_string()
    }
}

/// Checked binary field operation.
pub fn scalar_op(a: &Scalar, b: &Scalar, kind: ScalarOp) -> Result<Scalar, AlgebraError> {
    match kind {
        ScalarOp::Add => a.checked_add(b),
        ScalarOp::Sub => a.checked_sub(b),
        ScalarOp::Mul => a.checked_mul(b),
        ScalarOp::Div => a.checked_div(b),
    }
}

fn pow_mod(mut base: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        e >>= 1;
    }
    acc
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("scalar field mismatch: {} vs {}", a.field(), b.field())
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Modular { value: a, modulus: p }, Scalar::Modular { value: b, modulus: q })
                if p == q =>
            {
                Scalar::Modular {
                    value: ((*a as u128 + *b as u128) % *p as u128) as u64,
                    modulus: *p,
                }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Modular { value: a, modulus: p }, Scalar::Modular { value: b, modulus: q })
                if p == q =>
            {
                Scalar::Modular {
                    value: mul_mod(*a, *b, *p),
                    modulus: *p,
                }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Modular { value, modulus } => Scalar::Modular {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Modular { value, .. } => write!(f, "{value}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::from_fraction(FieldSpec::Rationals, n, d).unwrap()
    }

    #[test]
    fn rational_addition() {
        let r = scalar_op(&q(1, 2), &q(1, 3), ScalarOp::Add).unwrap();
        assert_eq!(r, q(5, 6));
        assert_eq!(r.to_string(), "5/6");
    }

    #[test]
    fn modular_product() {
        let f = FieldSpec::prime(7).unwrap();
        let r = scalar_op(&Scalar::from_i64(f, 3), &Scalar::from_i64(f, 5), ScalarOp::Mul).unwrap();
        assert_eq!(r, Scalar::from_i64(f, 1));
    }

    #[test]
    fn division_by_zero() {
        let e = scalar_op(&q(1, 1), &q(0, 1), ScalarOp::Div).unwrap_err();
        assert_eq!(e, AlgebraError::DivisionByZero);
    }

    #[test]
    fn field_mismatch_is_reported() {
        let f = FieldSpec::prime(5).unwrap();
        let e = scalar_op(&q(1, 1), &Scalar::one(f), ScalarOp::Add).unwrap_err();
        assert!(matches!(e, AlgebraError::FieldMismatch(..)));
    }

    #[test]
    fn negative_rationals_have_positive_denominator() {
        let r = q(3, -7);
        assert_eq!(r.to_string(), "-3/7");
    }

    #[test]
    fn parse_field_specs() {
        assert_eq!("Q".parse::<FieldSpec>().unwrap(), FieldSpec::Rationals);
        assert_eq!("GF(7)".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(7));
        assert_eq!("GF(4)".parse::<FieldSpec>(), Err(AlgebraError::NotPrime(4)));
        assert!("R".parse::<FieldSpec>().is_err());
    }

    #[test]
    fn modular_inverse() {
        let f = FieldSpec::prime(101).unwrap();
        for v in 1..101 {
            let a = Scalar::from_i64(f, v);
            assert!((&a * &a.inverse().unwrap()).is_one());
        }
    }
}
