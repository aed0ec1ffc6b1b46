//! Exact scalars: arbitrary-precision rationals and residues modulo a prime.
//!
//! A [`Domain`] is fixed per computation. The arithmetic operators panic when
//! two scalars from different domains meet; container types check domains
//! up front and report [`Error::MixedDomains`] instead.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{pow, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Domain {
    Rational,
    Prime(u64),
}

impl Domain {
    /// The prime field `F_p`. Moduli are limited to 32 bits so products fit
    /// in a `u64` before reduction.
    pub fn prime(p: u64) -> Result<Domain> {
        if p > u32::MAX as u64 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Domain::Prime(p))
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, Domain::Rational)
    }

    pub fn zero(&self) -> Scalar {
        match *self {
            Domain::Rational => Scalar::Rational(BigRational::zero()),
            Domain::Prime(p) => Scalar::Prime(Fp::new(0, p)),
        }
    }

    pub fn one(&self) -> Scalar {
        match *self {
            Domain::Rational => Scalar::Rational(BigRational::one()),
            Domain::Prime(p) => Scalar::Prime(Fp::new(1, p)),
        }
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match *self {
            Domain::Rational => Scalar::Rational(BigRational::from_integer(v.into())),
            Domain::Prime(p) => Scalar::Prime(Fp::new(v.rem_euclid(p as i64) as u64, p)),
        }
    }

    /// Maps a rational into this domain. Fails when the denominator vanishes mod p.
    pub fn from_rational(&self, q: &BigRational) -> Result<Scalar> {
        match *self {
            Domain::Rational => Ok(Scalar::Rational(q.clone())),
            Domain::Prime(p) => {
                let num = reduce_bigint(q.numer(), p);
                let den = reduce_bigint(q.denom(), p);
                let den = Fp::new(den, p).inv().ok_or(Error::DivisionByZero)?;
                Ok(Scalar::Prime(Fp::new(num, p) * den))
            }
        }
    }

    /// All field elements, in residue order. `None` for the rationals.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        match *self {
            Domain::Rational => None,
            Domain::Prime(p) => Some((0..p).map(|r| Scalar::Prime(Fp::new(r, p))).collect()),
        }
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

fn reduce_bigint(v: &BigInt, p: u64) -> u64 {
    let r = v % BigInt::from(p);
    let r = if r.is_negative() { r + BigInt::from(p) } else { r };
    r.to_u64().expect("residue fits in u64")
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// A residue modulo a prime, always kept in `0..modulus`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    residue: u64,
    modulus: u64,
}

impl Fp {
    pub fn new(residue: u64, modulus: u64) -> Self {
        Fp {
            residue: residue % modulus,
            modulus,
        }
    }

    pub fn residue(&self) -> u64 {
        self.residue
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn pow(self, mut e: u64) -> Fp {
        let mut base = self;
        let mut acc = Fp::new(1, self.modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    pub fn inv(self) -> Option<Fp> {
        if self.residue == 0 {
            None
        } else {
            Some(self.pow(self.modulus - 2))
        }
    }

    fn check(&self, other: &Fp) {
        assert_eq!(
            self.modulus, other.modulus,
            "mixed scalar domains: F_{} and F_{}",
            self.modulus, other.modulus
        );
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        self.check(&rhs);
        Fp::new(self.residue + rhs.residue, self.modulus)
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        self.check(&rhs);
        Fp::new(self.residue + self.modulus - rhs.residue, self.modulus)
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        self.check(&rhs);
        Fp::new(self.residue * rhs.residue, self.modulus)
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp::new(self.modulus - self.residue, self.modulus)
    }
}

/// An exact scalar. Rationals are kept in lowest terms with a positive
/// denominator by `BigRational`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Prime(Fp),
}

impl Scalar {
    pub fn rational(num: i64, den: i64) -> Scalar {
        Scalar::Rational(BigRational::new(num.into(), den.into()))
    }

    pub fn domain(&self) -> Domain {
        match self {
            Scalar::Rational(_) => Domain::Rational,
            Scalar::Prime(x) => Domain::Prime(x.modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Prime(x) => x.residue == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Prime(x) => x.residue == 1,
        }
    }

    /// True when the textual form starts with a minus sign.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_negative(),
            Scalar::Prime(_) => false,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            Scalar::Prime(_) => None,
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        match self {
            Scalar::Rational(q) if q.is_zero() => Err(Error::DivisionByZero),
            Scalar::Rational(q) => Ok(Scalar::Rational(q.recip())),
            Scalar::Prime(x) => x.inv().map(Scalar::Prime).ok_or(Error::DivisionByZero),
        }
    }

    pub fn div(&self, rhs: &Scalar) -> Result<Scalar> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, e: u32) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(q.pow(e as i32)),
            Scalar::Prime(x) => Scalar::Prime(x.pow(e as u64)),
        }
    }

    /// Integer power allowing negative exponents (nonzero base required for e < 0).
    pub fn powi(&self, e: i64) -> Result<Scalar> {
        if e >= 0 {
            Ok(self.pow(e as u32))
        } else {
            Ok(self.inv()?.pow((-e) as u32))
        }
    }

    /// Some `r` with `r^e = self`, if one exists in the domain.
    ///
    /// Rationals: exact integer roots of numerator and denominator. Prime
    /// fields: exhaustive search over residues, smallest first.
    pub fn nth_root(&self, e: u32) -> Option<Scalar> {
        assert!(e >= 1, "root exponent must be positive");
        match self {
            Scalar::Rational(q) => {
                if q.is_negative() && e % 2 == 0 {
                    return None;
                }
                let num = q.numer().abs();
                let den = q.denom().clone();
                let rn = num.nth_root(e);
                let rd = den.nth_root(e);
                if pow(rn.clone(), e as usize) != num || pow(rd.clone(), e as usize) != den {
                    return None;
                }
                let rn = if q.is_negative() { -rn } else { rn };
                Some(Scalar::Rational(BigRational::new(rn, rd)))
            }
            Scalar::Prime(x) => (0..x.modulus)
                .map(|r| Fp::new(r, x.modulus))
                .find(|r| r.pow(e as u64) == *x)
                .map(Scalar::Prime),
        }
    }

    fn assert_same(&self, other: &Scalar) {
        if self.domain() != other.domain() {
            panic!(
                "mixed scalar domains: {} and {}",
                self.domain(),
                other.domain()
            );
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => write!(f, "{q}"),
            Scalar::Prime(x) => write!(f, "{}", x.residue),
        }
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.assert_same(rhs);
                match (self, rhs) {
                    (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a.$method(b)),
                    (Scalar::Prime(a), Scalar::Prime(b)) => Scalar::Prime(a.$method(*b)),
                    _ => unreachable!(),
                }
            }
        }

        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(-q),
            Scalar::Prime(x) => Scalar::Prime(-*x),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}
