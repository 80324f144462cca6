//! Exact integers of unbounded magnitude.
//!
//! Values that fit in an `i64` are stored inline; everything else spills into a
//! [`BigInt`]. The representation is canonical: a value in `i64` range is never
//! stored in the large variant, so derived equality and hashing are sound.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{Signed, ToPrimitive};
use serde::{Serialize, Serializer};

#[derive(Clone)]
enum Repr {
    Small(i64),
    Large(BigInt),
}

/// An arbitrary-precision signed integer.
#[derive(Clone)]
pub struct Int(Repr);

impl Int {
    pub const fn from_i64(v: i64) -> Int {
        Int(Repr::Small(v))
    }

    pub fn zero() -> Int {
        Int::from_i64(0)
    }

    pub fn one() -> Int {
        Int::from_i64(1)
    }

    pub fn from_bigint(v: BigInt) -> Int {
        match v.to_i64() {
            Some(s) => Int(Repr::Small(s)),
            None => Int(Repr::Large(v)),
        }
    }

    pub fn to_bigint(&self) -> BigInt {
        match &self.0 {
            Repr::Small(v) => BigInt::from(*v),
            Repr::Large(v) => v.clone(),
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        match &self.0 {
            Repr::Small(v) => Some(*v),
            Repr::Large(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0))
    }

    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small(1))
    }

    /// True for `1` and `-1`, the units of ℤ.
    pub fn is_unit(&self) -> bool {
        matches!(self.0, Repr::Small(1) | Repr::Small(-1))
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small(v) => *v < 0,
            Repr::Large(v) => v.is_negative(),
        }
    }

    pub fn signum(&self) -> i32 {
        match &self.0 {
            Repr::Small(v) => v.signum() as i32,
            Repr::Large(v) => {
                if v.is_negative() {
                    -1
                } else {
                    1
                }
            }
        }
    }

    pub fn abs(&self) -> Int {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn pow(&self, exp: u32) -> Int {
        let mut acc = Int::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Floor division and the matching non-negative-or-same-sign-as-divisor remainder.
    ///
    /// Panics on a zero divisor.
    pub fn div_mod_floor(&self, d: &Int) -> (Int, Int) {
        assert!(!d.is_zero(), "division by zero");
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &d.0) {
            if !(*a == i64::MIN && *b == -1) {
                let (q, r) = a.div_mod_floor(b);
                return (Int::from_i64(q), Int::from_i64(r));
            }
        }
        let (q, r) = self.to_bigint().div_mod_floor(&d.to_bigint());
        (Int::from_bigint(q), Int::from_bigint(r))
    }

    pub fn div_floor(&self, d: &Int) -> Int {
        self.div_mod_floor(d).0
    }

    pub fn mod_floor(&self, d: &Int) -> Int {
        self.div_mod_floor(d).1
    }

    /// Exact quotient when `d` divides `self`; `None` otherwise or when `d = 0`.
    pub fn div_exact(&self, d: &Int) -> Option<Int> {
        if d.is_zero() {
            return None;
        }
        let (q, r) = self.div_mod_floor(d);
        r.is_zero().then_some(q)
    }

    /// Whether `self` divides `other`. Zero divides only zero.
    pub fn divides(&self, other: &Int) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.mod_floor(self).is_zero()
    }

    /// Non-negative greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Int) -> Int {
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &other.0) {
            let g = (a.unsigned_abs()).gcd(&b.unsigned_abs());
            if let Ok(g) = i64::try_from(g) {
                return Int::from_i64(g);
            }
        }
        Int::from_bigint(self.to_bigint().gcd(&other.to_bigint()))
    }

    /// Returns `(g, s, t)` with `g = gcd(a, b) ≥ 0` and `s·a + t·b = g`.
    pub fn extended_gcd(a: &Int, b: &Int) -> (Int, Int, Int) {
        let (mut old_r, mut r) = (a.clone(), b.clone());
        let (mut old_s, mut s) = (Int::one(), Int::zero());
        let (mut old_t, mut t) = (Int::zero(), Int::one());
        while !r.is_zero() {
            let q = old_r.div_floor(&r);
            let next_r = &old_r - &(&q * &r);
            old_r = std::mem::replace(&mut r, next_r);
            let next_s = &old_s - &(&q * &s);
            old_s = std::mem::replace(&mut s, next_s);
            let next_t = &old_t - &(&q * &t);
            old_t = std::mem::replace(&mut t, next_t);
        }
        if old_r.is_negative() {
            (-old_r, -old_s, -old_t)
        } else {
            (old_r, old_s, old_t)
        }
    }

    /// Floor of the square root. `None` for negative input.
    pub fn isqrt(&self) -> Option<Int> {
        if self.is_negative() {
            return None;
        }
        Some(match &self.0 {
            Repr::Small(v) => Int::from_i64(v.sqrt()),
            Repr::Large(v) => Int::from_bigint(v.sqrt()),
        })
    }

    /// The exact square root if `self` is a perfect square.
    pub fn perfect_sqrt(&self) -> Option<Int> {
        let s = self.isqrt()?;
        (&s * &s == *self).then_some(s)
    }

    /// Least non-negative residue modulo `m` (`m ≥ 1`).
    pub fn rem_euclid_u64(&self, m: u64) -> u64 {
        assert!(m >= 1, "modulus must be positive");
        match &self.0 {
            Repr::Small(v) => (*v as i128).rem_euclid(m as i128) as u64,
            Repr::Large(v) => v
                .mod_floor(&BigInt::from(m))
                .to_u64()
                .expect("residue fits in u64"),
        }
    }

    /// Positive divisors of `|self|` in increasing order, by trial division.
    ///
    /// Panics on zero. Intended for the modest magnitudes produced by conic
    /// reductions; cost grows with the square root of the input.
    pub fn positive_divisors(&self) -> Vec<Int> {
        assert!(!self.is_zero(), "zero has infinitely many divisors");
        let n = self.abs();
        let mut small = Vec::new();
        let mut large = Vec::new();
        let mut d = Int::one();
        loop {
            let sq = &d * &d;
            if sq > n {
                break;
            }
            if let Some(q) = n.div_exact(&d) {
                if q != d {
                    large.push(q);
                }
                small.push(d.clone());
            }
            d += &Int::one();
        }
        small.extend(large.into_iter().rev());
        small
    }
}

impl Default for Int {
    fn default() -> Self {
        Int::zero()
    }
}

impl PartialEq for Int {
    fn eq(&self, other: &Int) -> bool {
        match (&self.0, &other.0) {
            (Repr::Small(a), Repr::Small(b)) => a == b,
            (Repr::Large(a), Repr::Large(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Int {}

impl Hash for Int {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match &self.0 {
            Repr::Small(v) => {
                0u8.hash(state);
                v.hash(state);
            }
            Repr::Large(v) => {
                1u8.hash(state);
                v.hash(state);
            }
        }
    }
}

impl Ord for Int {
    fn cmp(&self, other: &Int) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a), Repr::Small(b)) => a.cmp(b),
            _ => self.to_bigint().cmp(&other.to_bigint()),
        }
    }
}

impl PartialOrd for Int {
    fn partial_cmp(&self, other: &Int) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

macro_rules! from_primitive {
    ($($t:ty),*) => {
        $(impl From<$t> for Int {
            fn from(v: $t) -> Int {
                Int::from_i64(v as i64)
            }
        })*
    };
}

from_primitive!(i8, i16, i32, i64, u8, u16, u32);

impl From<u64> for Int {
    fn from(v: u64) -> Int {
        match i64::try_from(v) {
            Ok(s) => Int::from_i64(s),
            Err(_) => Int(Repr::Large(BigInt::from(v))),
        }
    }
}

impl From<i128> for Int {
    fn from(v: i128) -> Int {
        match i64::try_from(v) {
            Ok(s) => Int::from_i64(s),
            Err(_) => Int(Repr::Large(BigInt::from(v))),
        }
    }
}

impl From<BigInt> for Int {
    fn from(v: BigInt) -> Int {
        Int::from_bigint(v)
    }
}

impl From<&Int> for BigInt {
    fn from(v: &Int) -> BigInt {
        v.to_bigint()
    }
}

impl<'a> Add<&'a Int> for &'a Int {
    type Output = Int;

    #[inline]
    fn add(self, rhs: &'a Int) -> Int {
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &rhs.0) {
            if let Some(s) = a.checked_add(*b) {
                return Int::from_i64(s);
            }
        }
        Int::from_bigint(self.to_bigint() + rhs.to_bigint())
    }
}

impl<'a> Sub<&'a Int> for &'a Int {
    type Output = Int;

    #[inline]
    fn sub(self, rhs: &'a Int) -> Int {
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &rhs.0) {
            if let Some(s) = a.checked_sub(*b) {
                return Int::from_i64(s);
            }
        }
        Int::from_bigint(self.to_bigint() - rhs.to_bigint())
    }
}

impl<'a> Mul<&'a Int> for &'a Int {
    type Output = Int;

    #[inline]
    fn mul(self, rhs: &'a Int) -> Int {
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &rhs.0) {
            if let Some(s) = a.checked_mul(*b) {
                return Int::from_i64(s);
            }
        }
        Int::from_bigint(self.to_bigint() * rhs.to_bigint())
    }
}

impl Neg for &Int {
    type Output = Int;

    #[inline]
    fn neg(self) -> Int {
        match &self.0 {
            Repr::Small(v) => match v.checked_neg() {
                Some(n) => Int::from_i64(n),
                None => Int::from_bigint(-BigInt::from(*v)),
            },
            Repr::Large(v) => Int::from_bigint(-v),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {
        $(
            impl $tr<Int> for Int {
                type Output = Int;
                #[inline]
                fn $m(self, rhs: Int) -> Int {
                    (&self).$m(&rhs)
                }
            }
            impl<'a> $tr<&'a Int> for Int {
                type Output = Int;
                #[inline]
                fn $m(self, rhs: &'a Int) -> Int {
                    (&self).$m(rhs)
                }
            }
            impl<'a> $tr<Int> for &'a Int {
                type Output = Int;
                #[inline]
                fn $m(self, rhs: Int) -> Int {
                    self.$m(&rhs)
                }
            }
            impl $tr<i64> for &Int {
                type Output = Int;
                #[inline]
                fn $m(self, rhs: i64) -> Int {
                    self.$m(&Int::from_i64(rhs))
                }
            }
            impl $tr<i64> for Int {
                type Output = Int;
                #[inline]
                fn $m(self, rhs: i64) -> Int {
                    (&self).$m(&Int::from_i64(rhs))
                }
            }
        )*
    };
}

forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Int {
    type Output = Int;

    fn neg(self) -> Int {
        -&self
    }
}

impl AddAssign<&Int> for Int {
    fn add_assign(&mut self, rhs: &Int) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Int> for Int {
    fn sub_assign(&mut self, rhs: &Int) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Int> for Int {
    fn mul_assign(&mut self, rhs: &Int) {
        *self = &*self * rhs;
    }
}

impl fmt::Display for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(v) => fmt::Display::fmt(v, f),
            Repr::Large(v) => fmt::Display::fmt(v, f),
        }
    }
}

impl fmt::Debug for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Error for integer literals that are not signed decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid integer literal {0:?}")]
pub struct ParseIntError(pub String);

impl FromStr for Int {
    type Err = ParseIntError;

    fn from_str(s: &str) -> Result<Int, ParseIntError> {
        let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(ParseIntError(s.to_string()));
        }
        if let Ok(v) = s.parse::<i64>() {
            return Ok(Int::from_i64(v));
        }
        s.parse::<BigInt>()
            .map(Int::from_bigint)
            .map_err(|_| ParseIntError(s.to_string()))
    }
}

/// Serialized as a JSON number when it fits in `i64`, as a decimal string otherwise.
impl Serialize for Int {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match &self.0 {
            Repr::Small(v) => serializer.serialize_i64(*v),
            Repr::Large(v) => serializer.serialize_str(&v.to_string()),
        }
    }
}
