//! Scalar rings: ℤ and ℤ/nℤ.

use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::int::Int;

/// The commutative ring a scalar lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Ring {
    Integers,
    Zmod(u64),
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integers => write!(f, "int"),
            Ring::Zmod(n) => write!(f, "zmod:{n}"),
        }
    }
}

impl FromStr for Ring {
    type Err = Error;

    /// `"int"` or `"zmod:N"` with `2 ≤ N ≤ 2³¹`.
    fn from_str(s: &str) -> Result<Ring> {
        let s = s.trim();
        if s == "int" {
            return Ok(Ring::Integers);
        }
        let n = s
            .strip_prefix("zmod:")
            .and_then(|n| n.trim().parse::<u64>().ok())
            .ok_or_else(|| {
                Error::InvalidArgument(format!("unknown ring '{s}', expected 'int' or 'zmod:N'"))
            })?;
        check_modulus(n)?;
        Ok(Ring::Zmod(n))
    }
}

/// Exact commutative scalar.
///
/// Binary operations assume both operands live in the same ring and panic
/// otherwise; checked entry points (matrix constructors, `checked_*` matrix
/// operations) reject mixed rings with [`Error::MixedRings`] before any
/// arithmetic runs.
pub trait Scalar: Clone + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn ring(&self) -> Ring;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn from_i64_like(&self, v: i64) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn is_unit(&self) -> bool;
    /// Multiplicative inverse when `self` is a unit.
    fn inverse(&self) -> Option<Self>;
}

impl Scalar for Int {
    fn ring(&self) -> Ring {
        Ring::Integers
    }

    fn zero_like(&self) -> Int {
        Int::zero()
    }

    fn one_like(&self) -> Int {
        Int::one()
    }

    fn from_i64_like(&self, v: i64) -> Int {
        Int::from(v)
    }

    #[inline]
    fn add(&self, other: &Int) -> Int {
        self + other
    }

    #[inline]
    fn sub(&self, other: &Int) -> Int {
        self - other
    }

    #[inline]
    fn mul(&self, other: &Int) -> Int {
        self * other
    }

    #[inline]
    fn neg(&self) -> Int {
        -self
    }

    fn is_zero(&self) -> bool {
        Int::is_zero(self)
    }

    fn is_unit(&self) -> bool {
        Int::is_unit(self)
    }

    fn inverse(&self) -> Option<Int> {
        Int::is_unit(self).then(|| self.clone())
    }
}

/// Largest modulus accepted for residues; keeps products inside `u128`
/// and enumeration tables addressable.
pub const MAX_MODULUS: u64 = 1 << 31;

/// A residue class modulo `n ≥ 2`, always stored in canonical range `[0, n)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Zmod {
    value: u64,
    modulus: u64,
}

impl Zmod {
    pub fn new(value: i64, modulus: u64) -> Result<Zmod> {
        check_modulus(modulus)?;
        Ok(Zmod {
            value: (value as i128).rem_euclid(modulus as i128) as u64,
            modulus,
        })
    }

    /// Reduction of an integer modulo `modulus`.
    pub fn from_int(value: &Int, modulus: u64) -> Result<Zmod> {
        check_modulus(modulus)?;
        Ok(Zmod {
            value: value.rem_euclid_u64(modulus),
            modulus,
        })
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Every residue of ℤ/n in increasing order.
    pub fn all(modulus: u64) -> Result<Vec<Zmod>> {
        check_modulus(modulus)?;
        Ok((0..modulus).map(|value| Zmod { value, modulus }).collect())
    }

    #[inline]
    fn same_ring(&self, other: &Zmod) {
        assert_eq!(
            self.modulus, other.modulus,
            "mixed rings: zmod:{} and zmod:{}",
            self.modulus, other.modulus
        );
    }

    #[inline]
    fn wrap(&self, value: u64) -> Zmod {
        Zmod {
            value,
            modulus: self.modulus,
        }
    }
}

pub(crate) fn check_modulus(modulus: u64) -> Result<()> {
    if (2..=MAX_MODULUS).contains(&modulus) {
        Ok(())
    } else {
        Err(Error::InvalidModulus(modulus))
    }
}

impl Scalar for Zmod {
    fn ring(&self) -> Ring {
        Ring::Zmod(self.modulus)
    }

    fn zero_like(&self) -> Zmod {
        self.wrap(0)
    }

    fn one_like(&self) -> Zmod {
        self.wrap(1)
    }

    fn from_i64_like(&self, v: i64) -> Zmod {
        self.wrap((v as i128).rem_euclid(self.modulus as i128) as u64)
    }

    #[inline]
    fn add(&self, other: &Zmod) -> Zmod {
        self.same_ring(other);
        let s = self.value + other.value;
        self.wrap(if s >= self.modulus {
            s - self.modulus
        } else {
            s
        })
    }

    #[inline]
    fn sub(&self, other: &Zmod) -> Zmod {
        self.same_ring(other);
        self.wrap(if self.value >= other.value {
            self.value - other.value
        } else {
            self.value + self.modulus - other.value
        })
    }

    #[inline]
    fn mul(&self, other: &Zmod) -> Zmod {
        self.same_ring(other);
        self.wrap(((self.value as u128 * other.value as u128) % self.modulus as u128) as u64)
    }

    #[inline]
    fn neg(&self) -> Zmod {
        self.wrap(if self.value == 0 {
            0
        } else {
            self.modulus - self.value
        })
    }

    fn is_zero(&self) -> bool {
        self.value == 0
    }

    /// gcd test, no inverse search.
    fn is_unit(&self) -> bool {
        num_integer::gcd(self.value, self.modulus) == 1
    }

    fn inverse(&self) -> Option<Zmod> {
        let (g, s, _) = Int::extended_gcd(&Int::from(self.value), &Int::from(self.modulus));
        g.is_one()
            .then(|| Zmod::from_int(&s, self.modulus).expect("modulus already validated"))
    }
}

impl fmt::Display for Zmod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl fmt::Debug for Zmod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

impl Serialize for Zmod {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_u64(self.value)
    }
}
