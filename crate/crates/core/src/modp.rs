//! Arithmetic in the prime field `Z_p` for odd primes `p < 2^31`.
//!
//! [`Prime`] carries the modulus and a set of raw `u32` helpers used by the
//! hot loops in the algebra code. [`Residue`] is the checked, self-describing
//! scalar type used at API boundaries.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModpError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("p = 2 is not supported: the characteristic must be odd")]
    EvenPrime,
    #[error("modulus {0} is too large (must be below 2^31)")]
    TooLarge(u64),
    #[error("0 has no multiplicative inverse")]
    ZeroInverse,
    #[error("0 has no multiplicative order")]
    ZeroOrder,
    #[error("residues with different moduli ({0} and {1})")]
    ModulusMismatch(u32, u32),
}

/// An odd prime below `2^31`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u32);

impl Prime {
    pub fn new(value: u64) -> Result<Self, ModpError> {
        if value >= 1 << 31 {
            return Err(ModpError::TooLarge(value));
        }
        if value == 2 {
            return Err(ModpError::EvenPrime);
        }
        if !is_prime(value) {
            return Err(ModpError::NotPrime(value));
        }
        Ok(Prime(value as u32))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    /// Reduces an arbitrary signed integer into `[0, p)`.
    #[inline]
    pub fn reduce(self, v: i64) -> u32 {
        v.rem_euclid(self.0 as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        (s % self.0 as u64) as u32
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.0 as u64) as u32
    }

    pub fn pow(self, a: u32, mut e: u64) -> u32 {
        let mut base = a % self.0;
        let mut acc = 1 % self.0;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Inverse via Fermat's little theorem; `None` for zero.
    pub fn inv(self, a: u32) -> Option<u32> {
        let a = a % self.0;
        (a != 0).then(|| self.pow(a, self.0 as u64 - 2))
    }

    /// Smallest `n >= 1` with `a^n = 1`; `None` for zero.
    ///
    /// Scans the divisors of `p - 1` in increasing order, so the first hit
    /// is the order.
    pub fn order(self, a: u32) -> Option<u64> {
        let a = a % self.0;
        if a == 0 {
            return None;
        }
        divisors(self.0 as u64 - 1)
            .into_iter()
            .find(|&d| self.pow(a, d) == 1)
    }

    pub fn residue(self, v: i64) -> Residue {
        Residue {
            value: self.reduce(v),
            modulus: self,
        }
    }

    pub fn zero(self) -> Residue {
        self.residue(0)
    }

    pub fn one(self) -> Residue {
        self.residue(1)
    }

    /// All residues `0, 1, ..., p-1` in increasing order.
    pub fn residues(self) -> impl Iterator<Item = Residue> {
        (0..self.0).map(move |value| Residue {
            value,
            modulus: self,
        })
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for Prime {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u32(self.0)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Divisors of `n` in increasing order (trial division up to `sqrt(n)`).
pub(crate) fn divisors(n: u64) -> Vec<u64> {
    let mut low = Vec::new();
    let mut high = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            low.push(d);
            if d * d != n {
                high.push(n / d);
            }
        }
        d += 1;
    }
    low.extend(high.into_iter().rev());
    low
}

/// An element of `Z_p`, always stored reduced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Residue {
    value: u32,
    modulus: Prime,
}

impl Residue {
    pub fn new(value: i64, modulus: Prime) -> Self {
        modulus.residue(value)
    }

    #[inline]
    pub fn value(self) -> u32 {
        self.value
    }

    #[inline]
    pub fn modulus(self) -> Prime {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn pow(self, e: u64) -> Residue {
        Residue {
            value: self.modulus.pow(self.value, e),
            modulus: self.modulus,
        }
    }

    /// Multiplicative inverse.
    pub fn inverse(self) -> Result<Residue, ModpError> {
        self.modulus
            .inv(self.value)
            .map(|value| Residue {
                value,
                modulus: self.modulus,
            })
            .ok_or(ModpError::ZeroInverse)
    }

    /// Multiplicative order in `Z_p^*`; always a divisor of `p - 1`.
    pub fn order(self) -> Result<u64, ModpError> {
        self.modulus.order(self.value).ok_or(ModpError::ZeroOrder)
    }

    /// Writes `self = s^2 + t^2` with `s <= t`, returning the
    /// lexicographically smallest such pair.
    ///
    /// Every element of a finite field of odd characteristic is a sum of two
    /// squares, so the search always succeeds.
    pub fn sum_two_squares(self) -> (Residue, Residue) {
        let p = self.modulus;
        for s in 0..p.get() {
            let s2 = p.mul(s, s);
            for t in s..p.get() {
                if p.add(s2, p.mul(t, t)) == self.value {
                    return (p.residue(s as i64), p.residue(t as i64));
                }
            }
        }
        unreachable!("every element of Z_{} is a sum of two squares", p)
    }

    fn check(self, other: Residue) {
        assert_eq!(
            self.modulus,
            other.modulus,
            "{}",
            ModpError::ModulusMismatch(self.modulus.get(), other.modulus.get())
        );
    }
}

/// Free-function form of [`Residue::inverse`].
pub fn mod_inverse(a: Residue) -> Result<Residue, ModpError> {
    a.inverse()
}

/// Free-function form of [`Residue::order`].
pub fn mul_order(a: Residue) -> Result<u64, ModpError> {
    a.order()
}

/// Free-function form of [`Residue::sum_two_squares`].
pub fn sum_two_squares(a: Residue) -> (Residue, Residue) {
    a.sum_two_squares()
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Serialize for Residue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u32(self.value)
    }
}

impl Add for Residue {
    type Output = Residue;
    fn add(self, rhs: Residue) -> Residue {
        self.check(rhs);
        Residue {
            value: self.modulus.add(self.value, rhs.value),
            modulus: self.modulus,
        }
    }
}

impl Sub for Residue {
    type Output = Residue;
    fn sub(self, rhs: Residue) -> Residue {
        self.check(rhs);
        Residue {
            value: self.modulus.sub(self.value, rhs.value),
            modulus: self.modulus,
        }
    }
}

impl Mul for Residue {
    type Output = Residue;
    fn mul(self, rhs: Residue) -> Residue {
        self.check(rhs);
        Residue {
            value: self.modulus.mul(self.value, rhs.value),
            modulus: self.modulus,
        }
    }
}

impl Neg for Residue {
    type Output = Residue;
    fn neg(self) -> Residue {
        Residue {
            value: self.modulus.neg(self.value),
            modulus: self.modulus,
        }
    }
}
