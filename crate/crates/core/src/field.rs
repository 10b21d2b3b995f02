//! Exact scalar fields.
//!
//! Everything downstream is generic over [`Field`]. A field is a small `Copy`
//! context value (the rationals carry nothing, a prime field carries its
//! modulus) that performs arithmetic on its element type. Elements themselves
//! are plain data, so equality of matrices over the same field is equality of
//! their entries.

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub trait Field: Copy + Send + Sync + fmt::Debug + PartialEq + 'static {
    type Elem: Clone + PartialEq + Eq + Hash + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    /// 0 for the rationals, `p` for GF(p).
    fn characteristic(&self) -> u64;

    /// Canonical `p/q` text with `q > 0` and `gcd(p, q) = 1`. Prime-field
    /// residues are printed as their representative in `[0, p)` over 1.
    fn to_fraction_string(&self, a: &Self::Elem) -> String;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// `acc += a * b`
    fn add_mul(&self, acc: &mut Self::Elem, a: &Self::Elem, b: &Self::Elem) {
        let prod = self.mul(a, b);
        *acc = self.add(acc, &prod);
    }
}

/// The field of rational numbers with arbitrary-precision numerator and
/// denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Result<BigRational> {
        if a.is_zero() {
            Err(Error::DivisionByZero)
        } else {
            Ok(a.recip())
        }
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn to_fraction_string(&self, a: &BigRational) -> String {
        // BigRational is kept reduced with a positive denominator.
        format!("{}/{}", a.numer(), a.denom())
    }
}

/// The prime field GF(p), residues stored in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

/// The prime used for the fast modular path.
pub const DEFAULT_PRIME: u64 = 1_000_003;

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(Self { p })
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Image of a rational number under the reduction map, if the denominator
    /// is a unit mod p.
    pub fn reduce(&self, q: &BigRational) -> Result<u64> {
        let p = BigInt::from(self.p);
        let num = q.numer().mod_floor(&p).to_u64().expect("residue fits u64");
        let den = q.denom().mod_floor(&p).to_u64().expect("residue fits u64");
        if den == 0 {
            return Err(Error::NotReducible(self.p));
        }
        Ok(self.mul(&num, &self.inv(&den)?))
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        acc
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, n: i64) -> u64 {
        (n as i128).rem_euclid(self.p as i128) as u64
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.p as u128) as u64
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + self.p as u128 - *b as u128) % self.p as u128) as u64
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> Result<u64> {
        if *a == 0 {
            Err(Error::DivisionByZero)
        } else {
            Ok(self.pow(*a, self.p - 2))
        }
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn to_fraction_string(&self, a: &u64) -> String {
        format!("{a}/1")
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Runtime choice of scalar field, as selected on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldChoice {
    Rationals,
    Prime(PrimeField),
}

impl std::str::FromStr for FieldChoice {
    type Err = Error;

    /// Accepts `q` or `gf:<p>`.
    fn from_str(s: &str) -> Result<Self> {
        if s == "q" || s == "Q" {
            return Ok(FieldChoice::Rationals);
        }
        let digits = s.strip_prefix("gf:").ok_or_else(|| Error::Parse {
            line: 1,
            column: 1,
            message: format!("unknown field {s:?}, expected q or gf:<p>"),
        })?;
        let p: u64 = digits.parse().map_err(|_| Error::Parse {
            line: 1,
            column: 4,
            message: format!("bad modulus {digits:?}"),
        })?;
        Ok(FieldChoice::Prime(PrimeField::new(p)?))
    }
}

/// Parses a `p/q` or integer string into a rational. Used by tests and the
/// JSON reader.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().ok()?;
            let d: BigInt = d.parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(BigRational::new(n, d))
            }
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}
