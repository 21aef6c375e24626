//! Exact coefficients: arbitrary-precision rationals and prime-field elements.
//!
//! Every scalar carries its domain. Rationals are kept in lowest terms with a
//! positive denominator (enforced by `BigRational`); prime-field values lie in
//! `[0, p)` for an odd prime `p < 2^63`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Raw arithmetic mod `p` on `u64` values in `[0, p)`.
pub mod fp {
    /// `a + b mod p`.
    #[inline]
    pub fn add(a: u64, b: u64, p: u64) -> u64 {
        let s = a.wrapping_add(b);
        // a, b < p < 2^63 so the sum never wraps.
        if s >= p {
            s - p
        } else {
            s
        }
    }

    /// `a - b mod p`.
    #[inline]
    pub fn sub(a: u64, b: u64, p: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + p - b
        }
    }

    /// `a * b mod p`.
    #[inline]
    pub fn mul(a: u64, b: u64, p: u64) -> u64 {
        ((a as u128 * b as u128) % p as u128) as u64
    }

    /// `b^e mod p` by square and multiply.
    pub fn pow(mut b: u64, mut e: u64, p: u64) -> u64 {
        let mut acc = 1 % p;
        b %= p;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, b, p);
            }
            b = mul(b, b, p);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse mod the prime `p`, `None` for zero.
    pub fn inv(a: u64, p: u64) -> Option<u64> {
        if a % p == 0 {
            None
        } else {
            Some(pow(a, p - 2, p))
        }
    }

    /// Canonical representative of a signed integer.
    #[inline]
    pub fn from_i64(n: i64, p: u64) -> u64 {
        let r = n.rem_euclid(p as i64);
        r as u64
    }
}

/// Coefficient domain tag.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Domain {
    /// Arbitrary-precision rationals.
    Rational,
    /// The prime field `F_p`, `p` an odd prime below `2^63`.
    Prime(u64),
}

impl Domain {
    pub fn zero(self) -> Scalar {
        match self {
            Domain::Rational => Scalar::Rational(BigRational::zero()),
            Domain::Prime(p) => Scalar::Prime {
                value: 0,
                modulus: p,
            },
        }
    }

    pub fn one(self) -> Scalar {
        match self {
            Domain::Rational => Scalar::Rational(BigRational::one()),
            Domain::Prime(p) => Scalar::Prime {
                value: 1 % p,
                modulus: p,
            },
        }
    }

    pub fn from_i64(self, n: i64) -> Scalar {
        match self {
            Domain::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            Domain::Prime(p) => Scalar::Prime {
                value: fp::from_i64(n, p),
                modulus: p,
            },
        }
    }

    /// Parses an exact fraction string such as `-3/4` or `17`.
    pub fn parse(self, s: &str) -> Result<Scalar> {
        let r = BigRational::from_str(s.trim())
            .map_err(|e| Error::InvalidInput(format!("bad fraction `{s}`: {e}")))?;
        Scalar::Rational(r).into_domain(self)
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::Rational => write!(f, "Q"),
            Domain::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

/// An exact coefficient: a rational number or a prime-field element.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Scalar {
    Rational(BigRational),
    Prime { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn from_int(n: i64) -> Self {
        Domain::Rational.from_i64(n)
    }

    pub fn rational(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar::Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn fp(n: i64, p: u64) -> Self {
        Domain::Prime(p).from_i64(n)
    }

    pub fn domain(&self) -> Domain {
        match self {
            Scalar::Rational(_) => Domain::Rational,
            Scalar::Prime { modulus, .. } => Domain::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Prime { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Prime { value, modulus } => *value == 1 % *modulus,
        }
    }

    /// Multiplicative inverse; `DivisionByZero` on zero.
    pub fn inv(&self) -> Result<Scalar> {
        match self {
            Scalar::Rational(r) => {
                if r.is_zero() {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(Scalar::Rational(r.recip()))
                }
            }
            Scalar::Prime { value, modulus } => fp::inv(*value, *modulus)
                .map(|v| Scalar::Prime {
                    value: v,
                    modulus: *modulus,
                })
                .ok_or(Error::DivisionByZero),
        }
    }

    /// Maps a rational into `F_p`; errors if `p` divides the denominator.
    pub fn reduce_mod(&self, p: u64) -> Result<Scalar> {
        match self {
            Scalar::Rational(r) => {
                let pb = BigInt::from(p);
                let num = r.numer().mod_floor(&pb);
                let den = r.denom().mod_floor(&pb);
                let num = num.to_u64().expect("residue fits u64");
                let den = den.to_u64().expect("residue fits u64");
                let dinv = fp::inv(den, p).ok_or(Error::NonReducible { prime: p })?;
                Ok(Scalar::Prime {
                    value: fp::mul(num, dinv, p),
                    modulus: p,
                })
            }
            Scalar::Prime { value, modulus } => {
                if *modulus == p {
                    Ok(Scalar::Prime {
                        value: *value,
                        modulus: *modulus,
                    })
                } else {
                    Err(Error::DomainMismatch {
                        left: self.domain(),
                        right: Domain::Prime(p),
                    })
                }
            }
        }
    }

    /// Converts into the requested domain (rational to prime field allowed).
    pub fn into_domain(self, d: Domain) -> Result<Scalar> {
        match (self, d) {
            (s @ Scalar::Rational(_), Domain::Rational) => Ok(s),
            (s @ Scalar::Prime { .. }, Domain::Prime(p)) if s.domain() == Domain::Prime(p) => Ok(s),
            (s, Domain::Prime(p)) => s.reduce_mod(p),
            (s, Domain::Rational) => Err(Error::DomainMismatch {
                left: s.domain(),
                right: Domain::Rational,
            }),
        }
    }

    /// The rational payload, if this is a rational scalar.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            _ => None,
        }
    }

    /// The `[0, p)` representative, if this is a prime-field scalar.
    pub fn as_fp(&self) -> Option<u64> {
        match self {
            Scalar::Prime { value, .. } => Some(*value),
            _ => None,
        }
    }

    fn binop(
        &self,
        other: &Scalar,
        f: fn(&BigRational, &BigRational) -> BigRational,
        g: fn(u64, u64, u64) -> u64,
    ) -> Scalar {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(f(a, b)),
            (
                Scalar::Prime {
                    value: a,
                    modulus: p,
                },
                Scalar::Prime {
                    value: b,
                    modulus: q,
                },
            ) if p == q => Scalar::Prime {
                value: g(*a, *b, *p),
                modulus: *p,
            },
            _ => panic!(
                "scalar domain mismatch: {} vs {}",
                self.domain(),
                other.domain()
            ),
        }
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.binop(rhs, |a, b| a + b, fp::add)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.binop(rhs, |a, b| a - b, fp::sub)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.binop(rhs, |a, b| a * b, fp::mul)
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        let inv = rhs.inv().expect("division by zero");
        self * &inv
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Prime { value, modulus } => Scalar::Prime {
                value: fp::sub(0, *value, *modulus),
                modulus: *modulus,
            },
        }
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                $trait::$method(&self, &rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                $trait::$method(&self, rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{r}"),
            Scalar::Prime { value, .. } => write!(f, "{value}"),
        }
    }
}

/// Sign of a rational scalar for printing purposes: -1, 0 or 1.
pub(crate) fn print_sign(s: &Scalar) -> i8 {
    match s {
        Scalar::Rational(r) => {
            if r.is_negative() {
                -1
            } else if r.is_zero() {
                0
            } else {
                1
            }
        }
        Scalar::Prime { value, .. } => {
            if *value == 0 {
                0
            } else {
                1
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_normalization() {
        let a = Scalar::rational(2, -4);
        match &a {
            Scalar::Rational(r) => {
                assert_eq!(r.numer(), &BigInt::from(-1));
                assert_eq!(r.denom(), &BigInt::from(2));
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn fp_arith() {
        let p = 31991;
        let a = Scalar::fp(-1, p);
        assert_eq!(a.as_fp(), Some(p - 1));
        let b = Scalar::fp(2, p);
        assert_eq!((&a + &b).as_fp(), Some(1));
        assert_eq!((&a * &b).as_fp(), Some(p - 2));
        let inv2 = b.inv().unwrap();
        assert!((&b * &inv2).is_one());
    }

    #[test]
    fn reduce_mod_rejects_bad_denominator() {
        let p = 31991;
        let a = Scalar::rational(1, 31991);
        assert!(matches!(a.reduce_mod(p), Err(Error::NonReducible { .. })));
        let b = Scalar::rational(3, 2);
        let r = b.reduce_mod(p).unwrap();
        let two_inv = fp::inv(2, p).unwrap();
        assert_eq!(r.as_fp(), Some(fp::mul(3, two_inv, p)));
    }

    #[test]
    #[should_panic(expected = "domain mismatch")]
    fn mixed_domains_panic() {
        let _ = &Scalar::from_int(1) + &Scalar::fp(1, 17);
    }

    #[test]
    fn parse_round_trip() {
        let s = Domain::Rational.parse("-7/3").unwrap();
        assert_eq!(s.to_string(), "-7/3");
        let t = Domain::Prime(13).parse("-1/2").unwrap();
        // -1/2 = 12 * inv(2) = 12 * 7 = 84 = 6 mod 13
        assert_eq!(t.as_fp(), Some(6));
    }
}
