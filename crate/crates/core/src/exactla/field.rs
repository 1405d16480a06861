//! Scalar fields: prime fields `F_p` and the rationals.

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which base field a computation runs over. `0` stands for the rationals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    pub characteristic: u64,
}

impl FieldSpec {
    pub fn rationals() -> Self {
        FieldSpec { characteristic: 0 }
    }

    pub fn prime(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(FieldSpec { characteristic: p })
        } else {
            Err(Error::InvalidField(format!("{p} is not prime")))
        }
    }

    pub fn is_finite(&self) -> bool {
        self.characteristic != 0
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.characteristic == 0 {
            write!(f, "QQ")
        } else {
            write!(f, "GF({})", self.characteristic)
        }
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// A field together with its element type.
///
/// Field values are small handles (`Fp` carries its modulus) so they are
/// stored alongside every matrix and algebra.
pub trait Field: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Eq + Hash + fmt::Debug + Send + Sync + 'static;

    fn spec(&self) -> FieldSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn fmt_elem(&self, a: &Self::Elem) -> String;

    /// Number of elements, `None` for infinite fields.
    fn order(&self) -> Option<u64>;
    /// The `i`-th element in a fixed enumeration (finite fields only).
    fn element(&self, i: u64) -> Self::Elem;
    /// A random element; over the rationals a small integer.
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// `a + b * c`, the inner step of every elimination loop.
    fn add_mul(&self, a: &Self::Elem, b: &Self::Elem, c: &Self::Elem) -> Self::Elem {
        self.add(a, &self.mul(b, c))
    }

    fn finite_order(&self) -> Result<u64> {
        self.order()
            .ok_or_else(|| Error::FieldUnsupported(format!("{} is not finite", self.spec())))
    }
}

/// The prime field `Z/p`, elements stored as canonical residues in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    p: u64,
}

impl Fp {
    /// Panics unless `p` is a prime below `2^31` (keeps products inside `u64`).
    pub fn new(p: u64) -> Self {
        assert!(is_prime(p), "{p} is not prime");
        assert!(p < (1 << 31), "modulus {p} too large");
        Fp { p }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn pow(&self, mut base: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            e >>= 1;
        }
        acc
    }
}

impl Field for Fp {
    type Elem = u64;

    fn spec(&self) -> FieldSpec {
        FieldSpec { characteristic: self.p }
    }
    #[inline]
    fn zero(&self) -> u64 {
        0
    }
    #[inline]
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            None
        } else {
            Some(self.pow(*a, self.p - 2))
        }
    }
    #[inline]
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn fmt_elem(&self, a: &u64) -> String {
        a.to_string()
    }
    fn order(&self) -> Option<u64> {
        Some(self.p)
    }
    fn element(&self, i: u64) -> u64 {
        i % self.p
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }
    #[inline]
    fn add_mul(&self, a: &u64, b: &u64, c: &u64) -> u64 {
        (a + b * c) % self.p
    }
}

/// The field of rationals with exact arbitrary-precision arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn spec(&self) -> FieldSpec {
        FieldSpec::rationals()
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
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
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn fmt_elem(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn order(&self) -> Option<u64> {
        None
    }
    fn element(&self, i: u64) -> BigRational {
        // zig-zag through the integers: 0, 1, -1, 2, -2, ...
        let k = i.div_ceil(2) as i64;
        let v = if i % 2 == 1 { k } else { -k };
        self.from_i64(v)
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        self.from_i64(rng.gen_range(-3..=3))
    }
}
