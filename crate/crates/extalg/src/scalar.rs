//! Exact field arithmetic over the rationals and over prime fields GF(p).
//!
//! All arithmetic is exact: rationals are arbitrary-precision fractions in
//! lowest terms, prime-field elements are canonical residues in `[0, p)`.
//! Characteristic 2 is rejected everywhere, since skew-symmetry degenerates
//! there.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// The coefficient field of an algebra: either the rationals or GF(p)
/// for an odd prime p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum FieldSpec {
    Rationals,
    PrimeField(u64),
}

impl FieldSpec {
    /// GF(p) for an odd prime p. Rejects 2, composites and anything
    /// outside the supported range.
    pub fn prime_field(p: u64) -> Result<Self> {
        let spec = FieldSpec::PrimeField(p);
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            FieldSpec::Rationals => Ok(()),
            FieldSpec::PrimeField(p) => {
                if p == 2 {
                    return Err(Error::InvalidField(
                        "characteristic 2 is not supported".into(),
                    ));
                }
                if p < 2 || !is_prime(p) {
                    return Err(Error::InvalidField(format!("{p} is not a prime")));
                }
                if p >= 1 << 31 {
                    return Err(Error::InvalidField(format!("prime {p} is too large")));
                }
                Ok(())
            }
        }
    }

    /// 0 for the rationals, p for GF(p).
    pub fn characteristic(&self) -> u64 {
        match *self {
            FieldSpec::Rationals => 0,
            FieldSpec::PrimeField(p) => p,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.integer(0)
    }

    pub fn one(&self) -> Scalar {
        self.integer(1)
    }

    /// The image of an integer in this field.
    pub fn integer(&self, n: i64) -> Scalar {
        match *self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(n.into())),
            FieldSpec::PrimeField(p) => Scalar::Residue {
                value: n.rem_euclid(p as i64) as u64,
                prime: p,
            },
        }
    }

    /// Parses a scalar literal: integers and `a/b` fractions over the
    /// rationals, bare integers (reduced mod p) over GF(p).
    pub fn parse_scalar(&self, text: &str) -> Result<Scalar> {
        let text = text.trim();
        let bad = |msg: &str| Error::InvalidArgument(format!("bad scalar {text:?}: {msg}"));
        match *self {
            FieldSpec::Rationals => {
                let (num_str, den_str) = match text.split_once('/') {
                    Some((n, d)) => (n.trim(), Some(d.trim())),
                    None => (text, None),
                };
                let num: BigInt = num_str.parse().map_err(|_| bad("not an integer"))?;
                let den: BigInt = match den_str {
                    Some(d) => d.parse().map_err(|_| bad("not an integer"))?,
                    None => BigInt::one(),
                };
                if den.is_zero() {
                    return Err(bad("zero denominator"));
                }
                Ok(Scalar::Rational(BigRational::new(num, den)))
            }
            FieldSpec::PrimeField(_) => {
                if text.contains('/') {
                    return Err(bad("fractions are only valid over Q"));
                }
                let n: i64 = text.parse().map_err(|_| bad("not an integer"))?;
                Ok(self.integer(n))
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::PrimeField(p) => write!(f, "gf {p}"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// An exact field element together with the field it lives in.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u64, prime: u64 },
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rationals,
            Scalar::Residue { prime, .. } => FieldSpec::PrimeField(*prime),
        }
    }

    /// The rational `num/den`.
    pub fn rational(num: i64, den: i64) -> Result<Scalar> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar::Rational(BigRational::new(num.into(), den.into())))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    fn same_field(&self, other: &Scalar) -> Result<()> {
        if self.field() == other.field() {
            Ok(())
        } else {
            Err(Error::FieldMismatch(
                self.field().to_string(),
                other.field().to_string(),
            ))
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Residue { value: a, prime }, Scalar::Residue { value: b, .. }) => {
                Scalar::Residue {
                    value: (a + b) % prime,
                    prime: *prime,
                }
            }
            _ => unreachable!(),
        })
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (Scalar::Residue { value: a, prime }, Scalar::Residue { value: b, .. }) => {
                Scalar::Residue {
                    value: (a + prime - b) % prime,
                    prime: *prime,
                }
            }
            _ => unreachable!(),
        })
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Residue { value: a, prime }, Scalar::Residue { value: b, .. }) => {
                Scalar::Residue {
                    value: (a * b) % prime,
                    prime: *prime,
                }
            }
            _ => unreachable!(),
        })
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        self.checked_mul(&other.inverse()?)
    }

    /// Multiplicative inverse. Errors on zero.
    pub fn inverse(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Residue { value, prime } => Scalar::Residue {
                value: mod_inverse(*value, *prime),
                prime: *prime,
            },
        })
    }
}

/// Inverse of `a` mod `p` by the extended Euclidean algorithm.
/// `a` must be nonzero mod `p`.
pub(crate) fn mod_inverse(a: u64, p: u64) -> u64 {
    let (mut old_r, mut r) = (a as i128, p as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1, "{a} is not invertible mod {p}");
    old_s.rem_euclid(p as i128) as u64
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Residue { value: 0, prime } => Scalar::Residue {
                value: 0,
                prime: *prime,
            },
            Scalar::Residue { value, prime } => Scalar::Residue {
                value: prime - value,
                prime: *prime,
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

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs).expect("scalar operands in one field")
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
    };
}

scalar_binop!(Add, add, checked_add);
scalar_binop!(Sub, sub, checked_sub);
scalar_binop!(Mul, mul, checked_mul);

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
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::rational(n, d).unwrap()
    }

    fn gf(p: u64, v: i64) -> Scalar {
        FieldSpec::prime_field(p).unwrap().integer(v)
    }

    #[test]
    fn rational_arithmetic() {
        assert_eq!(q(1, 2).checked_add(&q(1, 3)).unwrap(), q(5, 6));
        assert_eq!(q(2, 4), q(1, 2));
        assert_eq!(q(-1, -2), q(1, 2));
    }

    #[test]
    fn prime_field_arithmetic() {
        assert_eq!(gf(3, 2).checked_mul(&gf(3, 2)).unwrap(), gf(3, 1));
        assert_eq!(gf(5, 2).inverse().unwrap(), gf(5, 3));
        assert_eq!(gf(7, -1), gf(7, 6));
    }

    #[test]
    fn characteristic_two_rejected() {
        assert!(FieldSpec::prime_field(2).is_err());
        assert!(FieldSpec::prime_field(4).is_err());
        assert!(FieldSpec::prime_field(9).is_err());
        assert!(FieldSpec::prime_field(3).is_ok());
    }

    #[test]
    fn mixed_fields_error() {
        let err = q(1, 2).checked_add(&gf(3, 1)).unwrap_err();
        assert!(matches!(err, Error::FieldMismatch(..)));
        assert!(gf(3, 1).checked_mul(&gf(5, 1)).is_err());
    }

    #[test]
    fn division_by_zero_errors() {
        assert_eq!(q(1, 2).checked_div(&q(0, 1)), Err(Error::DivisionByZero));
        assert_eq!(gf(5, 0).inverse(), Err(Error::DivisionByZero));
    }

    #[test]
    fn scalar_parsing() {
        let rat = FieldSpec::Rationals;
        assert_eq!(rat.parse_scalar("-2/3").unwrap(), q(-2, 3));
        assert_eq!(rat.parse_scalar("7").unwrap(), q(7, 1));
        assert!(rat.parse_scalar("1/0").is_err());
        let f5 = FieldSpec::prime_field(5).unwrap();
        assert_eq!(f5.parse_scalar("8").unwrap(), gf(5, 3));
        assert!(f5.parse_scalar("1/2").is_err());
    }

    fn arb_field() -> impl Strategy<Value = FieldSpec> {
        prop_oneof![
            Just(FieldSpec::Rationals),
            prop::sample::select(vec![3u64, 5, 7, 11]).prop_map(FieldSpec::PrimeField),
        ]
    }

    proptest! {
        #[test]
        fn field_axioms(field in arb_field(), a in -50i64..50, b in -50i64..50, c in -50i64..50) {
            let (a, b, c) = (field.integer(a), field.integer(b), field.integer(c));
            // associativity and commutativity
            prop_assert_eq!((&a + &b) + c.clone(), &a + &(&b + &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!((&a * &b) * c.clone(), &a * &(&b * &c));
            // distributivity
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            // additive inverse
            prop_assert_eq!(&a + &(-&a), field.zero());
        }

        #[test]
        fn multiplicative_inverse(field in arb_field(), a in -50i64..50) {
            let a = field.integer(a);
            if !a.is_zero() {
                prop_assert_eq!(&a * &a.inverse().unwrap(), field.one());
            }
        }
    }
}
