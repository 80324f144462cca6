//! 2×2 matrices over an exact commutative scalar ring.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::int::Int;
use crate::ring::{check_modulus, Ring, Scalar, Zmod};

/// Immutable 2×2 matrix `[[a11, a12], [a21, a22]]`, all entries in one ring.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat2<T> {
    e: [T; 4],
}

impl<T: Scalar> Mat2<T> {
    /// Builds a matrix, rejecting entries from different rings.
    pub fn new(a11: T, a12: T, a21: T, a22: T) -> Result<Self> {
        let ring = a11.ring();
        for other in [&a12, &a21, &a22] {
            if other.ring() != ring {
                return Err(Error::MixedRings {
                    left: ring,
                    right: other.ring(),
                });
            }
        }
        Ok(Mat2 {
            e: [a11, a12, a21, a22],
        })
    }

    /// Caller guarantees a common ring.
    pub(crate) fn from_parts(a11: T, a12: T, a21: T, a22: T) -> Self {
        Mat2 {
            e: [a11, a12, a21, a22],
        }
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[T; 4] {
        &self.e
    }

    pub fn a11(&self) -> &T {
        &self.e[0]
    }

    pub fn a12(&self) -> &T {
        &self.e[1]
    }

    pub fn a21(&self) -> &T {
        &self.e[2]
    }

    pub fn a22(&self) -> &T {
        &self.e[3]
    }

    pub fn ring(&self) -> Ring {
        self.e[0].ring()
    }

    pub fn zero_like(&self) -> Self {
        let z = self.e[0].zero_like();
        Mat2::from_parts(z.clone(), z.clone(), z.clone(), z)
    }

    pub fn identity_like(&self) -> Self {
        self.scalar_like(self.e[0].one_like())
    }

    /// `c·I₂` in the ring of `self`.
    pub fn scalar_like(&self, c: T) -> Self {
        let z = c.zero_like();
        Mat2::from_parts(c.clone(), z.clone(), z, c)
    }

    pub fn det(&self) -> T {
        let [a, b, c, d] = &self.e;
        a.mul(d).sub(&b.mul(c))
    }

    pub fn trace(&self) -> T {
        self.e[0].add(&self.e[3])
    }

    /// Classical adjoint `[[a22, -a12], [-a21, a11]]`.
    pub fn adjugate(&self) -> Self {
        let [a, b, c, d] = &self.e;
        Mat2::from_parts(d.clone(), b.neg(), c.neg(), a.clone())
    }

    pub fn transpose(&self) -> Self {
        let [a, b, c, d] = &self.e;
        Mat2::from_parts(a.clone(), c.clone(), b.clone(), d.clone())
    }

    pub fn scale(&self, k: &T) -> Self {
        let [a, b, c, d] = &self.e;
        Mat2::from_parts(k.mul(a), k.mul(b), k.mul(c), k.mul(d))
    }

    pub fn is_unit(&self) -> bool {
        self.det().is_unit()
    }

    pub fn is_idempotent(&self) -> bool {
        &(self * self) == self
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().all(Scalar::is_zero)
    }

    /// Inverse of a unit matrix, `adj(A)·det(A)⁻¹`.
    pub fn inverse(&self) -> Option<Self> {
        let inv = self.det().inverse()?;
        Some(self.adjugate().scale(&inv))
    }

    fn check_same_ring(&self, other: &Self) -> Result<()> {
        if self.ring() == other.ring() {
            Ok(())
        } else {
            Err(Error::MixedRings {
                left: self.ring(),
                right: other.ring(),
            })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same_ring(other)?;
        Ok(self + other)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_same_ring(other)?;
        Ok(self - other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_same_ring(other)?;
        Ok(self * other)
    }
}

impl<'a, T: Scalar> Add<&'a Mat2<T>> for &'a Mat2<T> {
    type Output = Mat2<T>;

    fn add(self, rhs: &'a Mat2<T>) -> Mat2<T> {
        let (l, r) = (&self.e, &rhs.e);
        Mat2::from_parts(
            l[0].add(&r[0]),
            l[1].add(&r[1]),
            l[2].add(&r[2]),
            l[3].add(&r[3]),
        )
    }
}

impl<'a, T: Scalar> Sub<&'a Mat2<T>> for &'a Mat2<T> {
    type Output = Mat2<T>;

    fn sub(self, rhs: &'a Mat2<T>) -> Mat2<T> {
        let (l, r) = (&self.e, &rhs.e);
        Mat2::from_parts(
            l[0].sub(&r[0]),
            l[1].sub(&r[1]),
            l[2].sub(&r[2]),
            l[3].sub(&r[3]),
        )
    }
}

impl<'a, T: Scalar> Mul<&'a Mat2<T>> for &'a Mat2<T> {
    type Output = Mat2<T>;

    fn mul(self, rhs: &'a Mat2<T>) -> Mat2<T> {
        let [a, b, c, d] = &self.e;
        let [p, q, r, s] = &rhs.e;
        Mat2::from_parts(
            a.mul(p).add(&b.mul(r)),
            a.mul(q).add(&b.mul(s)),
            c.mul(p).add(&d.mul(r)),
            c.mul(q).add(&d.mul(s)),
        )
    }
}

impl<T: Scalar> Neg for &Mat2<T> {
    type Output = Mat2<T>;

    fn neg(self) -> Mat2<T> {
        let [a, b, c, d] = &self.e;
        Mat2::from_parts(a.neg(), b.neg(), c.neg(), d.neg())
    }
}

macro_rules! forward_mat_ops {
    ($($tr:ident $m:ident),*) => {
        $(
            impl<T: Scalar> $tr<Mat2<T>> for Mat2<T> {
                type Output = Mat2<T>;
                fn $m(self, rhs: Mat2<T>) -> Mat2<T> {
                    (&self).$m(&rhs)
                }
            }
            impl<'a, T: Scalar> $tr<&'a Mat2<T>> for Mat2<T> {
                type Output = Mat2<T>;
                fn $m(self, rhs: &'a Mat2<T>) -> Mat2<T> {
                    (&self).$m(rhs)
                }
            }
        )*
    };
}

forward_mat_ops!(Add add, Sub sub, Mul mul);

impl Mat2<Int> {
    /// Integer matrix from row-major entries.
    pub fn int(
        a11: impl Into<Int>,
        a12: impl Into<Int>,
        a21: impl Into<Int>,
        a22: impl Into<Int>,
    ) -> Self {
        Mat2::from_parts(a11.into(), a12.into(), a21.into(), a22.into())
    }

    pub fn identity() -> Self {
        Mat2::int(1, 0, 0, 1)
    }

    pub fn zero() -> Self {
        Mat2::int(0, 0, 0, 0)
    }

    pub fn diag(d1: impl Into<Int>, d2: impl Into<Int>) -> Self {
        Mat2::int(d1, 0, 0, d2)
    }

    /// Reduction of every entry modulo `n`.
    pub fn project(&self, n: u64) -> Result<Mat2<Zmod>> {
        let [a, b, c, d] = &self.e;
        Ok(Mat2::from_parts(
            Zmod::from_int(a, n)?,
            Zmod::from_int(b, n)?,
            Zmod::from_int(c, n)?,
            Zmod::from_int(d, n)?,
        ))
    }

    /// Largest absolute value among the entries.
    pub fn max_abs_entry(&self) -> Int {
        self.e.iter().map(Int::abs).max().expect("four entries")
    }

    /// The `"a11,a12;a21,a22"` text form.
    pub fn format(&self) -> String {
        self.to_string()
    }
}

impl Mat2<Zmod> {
    /// Residue matrix from row-major integer entries.
    pub fn zmod(n: u64, a11: i64, a12: i64, a21: i64, a22: i64) -> Result<Self> {
        Ok(Mat2::from_parts(
            Zmod::new(a11, n)?,
            Zmod::new(a12, n)?,
            Zmod::new(a21, n)?,
            Zmod::new(a22, n)?,
        ))
    }

    /// All `n⁴` matrices over ℤ/n, ordered by their base-`n` index (see [`Mat2::index`]).
    pub fn all(n: u64) -> Result<Vec<Mat2<Zmod>>> {
        check_modulus(n)?;
        let count = n
            .checked_pow(4)
            .filter(|c| *c <= 1 << 24)
            .ok_or(Error::ModulusTooLarge {
                modulus: n,
                max: 64,
            })?;
        Ok((0..count).map(|i| Mat2::from_index(i, n)).collect())
    }

    fn from_index(mut i: u64, n: u64) -> Self {
        let mut v = [0u64; 4];
        for slot in v.iter_mut().rev() {
            *slot = i % n;
            i /= n;
        }
        let z = |value| Zmod::new(value as i64, n).expect("validated modulus");
        Mat2::from_parts(z(v[0]), z(v[1]), z(v[2]), z(v[3]))
    }

    /// Position of this matrix in [`Mat2::all`].
    pub fn index(&self) -> usize {
        let n = self.e[0].modulus();
        self.e.iter().fold(0u64, |acc, x| acc * n + x.value()) as usize
    }

    /// Lift to the integer representatives in `[0, n)`.
    pub fn lift(&self) -> Mat2<Int> {
        let [a, b, c, d] = &self.e;
        Mat2::int(a.value(), b.value(), c.value(), d.value())
    }
}

impl<T: Scalar> fmt::Display for Mat2<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = &self.e;
        write!(f, "{a},{b};{c},{d}")
    }
}

impl<T: Scalar> fmt::Debug for Mat2<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = &self.e;
        write!(f, "[[{a}, {b}], [{c}, {d}]]")?;
        if let Ring::Zmod(n) = self.ring() {
            write!(f, " mod {n}")?;
        }
        Ok(())
    }
}

/// Serialized as nested rows, `[[a11, a12], [a21, a22]]`.
impl<T: Scalar + Serialize> Serialize for Mat2<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut rows = serializer.serialize_seq(Some(2))?;
        rows.serialize_element(&[&self.e[0], &self.e[1]])?;
        rows.serialize_element(&[&self.e[2], &self.e[3]])?;
        rows.end()
    }
}

/// Parses `"a11,a12;a21,a22"`; whitespace around entries is ignored.
impl FromStr for Mat2<Int> {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let err = |message: String, position: usize| Error::ParseMatrix { message, position };
        if text.trim().is_empty() {
            return Err(err("empty matrix literal".into(), 0));
        }
        let mut entries = Vec::with_capacity(4);
        let mut offset = 0;
        let rows: Vec<&str> = text.split(';').collect();
        if rows.len() != 2 {
            let pos = text
                .match_indices(';')
                .nth(1)
                .map_or(text.len(), |(i, _)| i);
            return Err(err(
                format!("expected 2 rows separated by ';', found {}", rows.len()),
                pos,
            ));
        }
        for (row_idx, row) in rows.iter().enumerate() {
            let cells: Vec<&str> = row.split(',').collect();
            if cells.len() != 2 {
                let message = if cells.len() < 2 {
                    format!("missing entry in row {}", row_idx + 1)
                } else {
                    format!(
                        "row {} has {} entries, expected 2",
                        row_idx + 1,
                        cells.len()
                    )
                };
                return Err(err(message, offset + row.len()));
            }
            let mut cell_offset = offset;
            for cell in cells {
                let token = cell.trim();
                let lead = cell.len() - cell.trim_start().len();
                if token.is_empty() {
                    return Err(err(
                        format!("missing entry in row {}", row_idx + 1),
                        cell_offset + lead,
                    ));
                }
                let value: Int = token
                    .parse()
                    .map_err(|_| err(format!("invalid integer {token:?}"), cell_offset + lead))?;
                entries.push(value);
                cell_offset += cell.len() + 1;
            }
            offset += row.len() + 1;
        }
        let [a, b, c, d]: [Int; 4] = entries.try_into().expect("exactly four entries");
        Ok(Mat2::from_parts(a, b, c, d))
    }
}
