use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::LinrepError;

/// Exact scalars. Over `F_p` values are integers normalized to `[0, p)`.
pub type Scalar = BigRational;

/// The ground field: the rationals or a prime field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self, LinrepError> {
        let f = FieldSpec::Prime(p);
        f.validate()?;
        Ok(f)
    }

    pub fn validate(&self) -> Result<(), LinrepError> {
        match *self {
            FieldSpec::Rationals => Ok(()),
            FieldSpec::Prime(p) if is_prime(p) => Ok(()),
            FieldSpec::Prime(p) => Err(LinrepError::NotPrime(p)),
        }
    }

    pub fn characteristic(&self) -> u64 {
        match *self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => p,
        }
    }

    /// Maps a rational into the field; fails when the denominator vanishes mod p.
    pub fn embed(&self, x: &BigRational) -> Result<Scalar, LinrepError> {
        match *self {
            FieldSpec::Rationals => Ok(x.clone()),
            FieldSpec::Prime(p) => {
                let p = BigInt::from(p);
                let den = x.denom().mod_floor(&p);
                if den.is_zero() {
                    return Err(LinrepError::DivisionByZero(x.to_string()));
                }
                let inv = mod_inverse(&den, &p);
                Ok(int((x.numer() * inv).mod_floor(&p)))
            }
        }
    }

    pub fn from_i64(&self, x: i64) -> Scalar {
        self.norm(int(BigInt::from(x)))
    }

    pub fn zero(&self) -> Scalar {
        Scalar::zero()
    }

    pub fn one(&self) -> Scalar {
        Scalar::one()
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.norm(a + b)
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.norm(a - b)
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.norm(a * b)
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        self.norm(-a)
    }

    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        if a.is_zero() {
            return None;
        }
        Some(match *self {
            FieldSpec::Rationals => a.recip(),
            FieldSpec::Prime(p) => int(mod_inverse(a.numer(), &BigInt::from(p))),
        })
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Option<Scalar> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn norm(&self, x: BigRational) -> Scalar {
        match *self {
            FieldSpec::Rationals => x,
            FieldSpec::Prime(_) => self.embed(&x).expect("field operations keep denominators invertible"),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

fn int(x: BigInt) -> Scalar {
    BigRational::from_integer(x)
}

fn mod_inverse(a: &BigInt, p: &BigInt) -> BigInt {
    let e = a.mod_floor(p).extended_gcd(p);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(p)
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

/// Renders a scalar compactly: integers as integers, otherwise `a/b`.
pub fn format_scalar(x: &Scalar) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `"3"`, `"-2/5"` into a rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    let mut r = BigRational::new(num, den);
    if r.denom().is_negative() {
        r = BigRational::new(-r.numer().clone(), -r.denom().clone());
    }
    Some(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_checks() {
        assert!(FieldSpec::prime(3).is_ok());
        assert!(matches!(FieldSpec::prime(4), Err(LinrepError::NotPrime(4))));
        assert!(FieldSpec::prime(1).is_err());
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = FieldSpec::Prime(5);
        let two = f.from_i64(2);
        assert_eq!(f.inv(&two), Some(f.from_i64(3)));
        assert_eq!(f.neg(&two), f.from_i64(3));
        assert_eq!(f.from_i64(-7), f.from_i64(3));
        let half = f.embed(&parse_rational("1/2").unwrap()).unwrap();
        assert_eq!(f.mul(&half, &two), f.one());
        assert!(f.embed(&parse_rational("1/5").unwrap()).is_err());
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(format_scalar(&parse_rational("-4/6").unwrap()), "-2/3");
        assert_eq!(format_scalar(&parse_rational("3/-1").unwrap()), "-3");
        assert!(parse_rational("1/0").is_none());
        assert!(parse_rational("x").is_none());
    }
}
