//! Exact scalars over ℚ or a prime field 𝔽_p.
//!
//! The field is a run-wide value chosen before any algebra is built. Every
//! container records the [`Field`] it was built over and rejects scalars from
//! a different one, so arithmetic between mismatched scalars is a logic error
//! and panics.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("prime modulus {0} exceeds the supported range (p < 2^62)")]
    ModulusTooLarge(u64),
    #[error("division by zero in scalar literal")]
    ZeroDenominator,
    #[error("denominator {den} is not invertible modulo {modulus}")]
    NotInvertible { den: String, modulus: u64 },
    #[error("`{0}` is not an integer or fraction p/q")]
    InvalidLiteral(String),
    #[error("`{0}` is not a field; expected `rationals` or `fp:P`")]
    InvalidField(String),
}

/// The ground field `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum Field {
    #[default]
    Rationals,
    Prime(u64),
}

impl Field {
    pub fn prime(p: u64) -> Result<Field, FieldError> {
        if p >= 1 << 62 {
            return Err(FieldError::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match *self {
            Field::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::Residue {
                value: n.rem_euclid(p as i64) as u64,
                modulus: p,
            },
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match *self {
            Field::Rationals => Scalar::Rational(BigRational::from_integer(n.clone())),
            Field::Prime(p) => {
                let m = BigInt::from(p);
                let r = ((n % &m) + &m) % &m;
                Scalar::Residue {
                    value: r.to_u64().expect("residue fits in u64"),
                    modulus: p,
                }
            }
        }
    }

    /// Builds `num / den` exactly.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Scalar, FieldError> {
        if den.is_zero() {
            return Err(FieldError::ZeroDenominator);
        }
        match self {
            Field::Rationals => Ok(Scalar::Rational(BigRational::new(num.clone(), den.clone()))),
            Field::Prime(p) => {
                let d = self.from_bigint(den);
                let inv = d.inv().ok_or_else(|| FieldError::NotInvertible {
                    den: den.to_string(),
                    modulus: *p,
                })?;
                Ok(&self.from_bigint(num) * &inv)
            }
        }
    }

    pub fn contains(&self, s: &Scalar) -> bool {
        s.field() == *self
    }

    /// Parses `n` or `p/q` with optional sign; decimals are rejected.
    pub fn parse_scalar(&self, text: &str) -> Result<Scalar, FieldError> {
        let bad = || FieldError::InvalidLiteral(text.to_string());
        let int = |t: &str| -> Result<BigInt, FieldError> {
            let digits = t.strip_prefix(['-', '+']).unwrap_or(t);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            t.parse::<BigInt>().map_err(|_| bad())
        };
        match text.split_once('/') {
            Some((n, d)) => self.from_ratio(&int(n)?, &int(d)?),
            None => Ok(self.from_bigint(&int(text)?)),
        }
    }
}

impl std::str::FromStr for Field {
    type Err = FieldError;

    /// `rationals` or `fp:P`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "rationals" => Ok(Field::Rationals),
            _ => match s.strip_prefix("fp:").map(str::parse::<u64>) {
                Some(Ok(p)) => Field::prime(p),
                _ => Err(FieldError::InvalidField(s.to_string())),
            },
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "rationals"),
            Field::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact field element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    /// Always in lowest terms with positive denominator.
    Rational(BigRational),
    /// `value` in `[0, modulus)`.
    Residue { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rationals,
            Scalar::Residue { modulus, .. } => Field::Prime(*modulus),
        }
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

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            Scalar::Residue { .. } => None,
        }
    }
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

#[inline]
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
            (Scalar::Residue { value: a, modulus: p }, Scalar::Residue { value: b, modulus: q }) if p == q => {
                Scalar::Residue { value: (a + b) % p, modulus: *p }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (Scalar::Residue { value: a, modulus: p }, Scalar::Residue { value: b, modulus: q }) if p == q => {
                Scalar::Residue { value: (a + p - b) % p, modulus: *p }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Residue { value: a, modulus: p }, Scalar::Residue { value: b, modulus: q }) if p == q => {
                Scalar::Residue { value: mul_mod(*a, *b, *p), modulus: *p }
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
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

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
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

impl Scalar {
    /// Sign-aware helper used by the report writer: `true` for negative rationals.
    pub fn is_negative(&self) -> bool {
        matches!(self, Scalar::Rational(r) if r.is_negative())
    }
}

#[cfg(test)]
mod tests {
    #[test]
    fn literals_and_field_names() {
        let q = Field::Rationals;
        assert_eq!(q.parse_scalar("-3/6").unwrap(), q.from_ratio(&BigInt::from(-1), &BigInt::from(2)).unwrap());
        assert!(q.parse_scalar("0.5").is_err());
        assert!(q.parse_scalar("1/0").is_err());
        assert!(q.parse_scalar("").is_err());
        let f7 = Field::prime(7).unwrap();
        assert_eq!(f7.parse_scalar("1/3").unwrap(), f7.from_i64(5));
        assert!(f7.parse_scalar("1/14").is_err());
        assert_eq!("fp:7".parse::<Field>().unwrap(), f7);
        assert_eq!("rationals".parse::<Field>().unwrap(), q);
        assert!("fp:8".parse::<Field>().is_err());
        assert!("reals".parse::<Field>().is_err());
        for f in [q, f7] {
            assert_eq!(f.to_string().parse::<Field>().unwrap(), f);
            let x = f.from_ratio(&BigInt::from(5), &BigInt::from(-4)).unwrap();
            assert_eq!(f.parse_scalar(&x.to_string()).unwrap(), x);
        }
    }

    use super::*;

    #[test]
    fn rationals_stay_normalised() {
        let q = Field::Rationals;
        let a = q.from_ratio(&BigInt::from(6), &BigInt::from(-4)).unwrap();
        let r = a.as_rational().unwrap();
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        let b = &a + &q.from_ratio(&BigInt::from(3), &BigInt::from(2)).unwrap();
        assert!(b.is_zero());
    }

    #[test]
    fn prime_field_inverse_and_reduction() {
        let f = Field::prime(7).unwrap();
        let a = f.from_i64(-1);
        assert_eq!(a, Scalar::Residue { value: 6, modulus: 7 });
        let inv = f.from_i64(3).inv().unwrap();
        assert!((&inv * &f.from_i64(3)).is_one());
        let half = f.from_ratio(&BigInt::from(1), &BigInt::from(2)).unwrap();
        assert_eq!(half, f.from_i64(4));
        assert!(f.from_ratio(&BigInt::from(1), &BigInt::from(14)).is_err());
    }

    #[test]
    fn rejects_composite_modulus() {
        assert_eq!(Field::prime(9), Err(FieldError::NotPrime(9)));
        assert!(Field::prime(2).is_ok());
    }

    #[test]
    #[should_panic(expected = "scalar field mismatch")]
    fn mixing_fields_panics() {
        let _ = &Field::Rationals.one() + &Field::Prime(5).one();
    }
}
