//! Small square matrices (2 ≤ n ≤ 6) with exact cofactor determinants.

use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};
use crate::ring::Scalar;

pub const MIN_DIM: usize = 2;
pub const MAX_DIM: usize = 6;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MatN<T> {
    n: usize,
    entries: Vec<T>,
}

fn check_dim(n: usize) -> Result<()> {
    if (MIN_DIM..=MAX_DIM).contains(&n) {
        Ok(())
    } else {
        Err(Error::DimensionOutOfRange {
            n,
            min: MIN_DIM,
            max: MAX_DIM,
        })
    }
}

impl<T: Scalar> MatN<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let n = rows.len();
        check_dim(n)?;
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidArgument(format!(
                "rows of a {n}x{n} matrix must have {n} entries"
            )));
        }
        let ring = rows[0][0].ring();
        if let Some(bad) = rows.iter().flatten().find(|x| x.ring() != ring) {
            return Err(Error::MixedRings {
                left: ring,
                right: bad.ring(),
            });
        }
        Ok(MatN {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// `n×n` matrix with entries `f(i, j)` (0-based).
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Result<Self> {
        check_dim(n)?;
        let rows = (0..n).map(|i| (0..n).map(|j| f(i, j)).collect()).collect();
        Self::from_rows(rows)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.n + j]
    }

    pub fn identity_like(&self) -> Self {
        let one = self.entries[0].one_like();
        let zero = one.zero_like();
        MatN {
            n: self.n,
            entries: (0..self.n * self.n)
                .map(|k| {
                    if k / self.n == k % self.n {
                        one.clone()
                    } else {
                        zero.clone()
                    }
                })
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(MatN {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.sub(b))
                .collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(MatN {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.add(b))
                .collect(),
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let n = self.n;
        let zero = self.entries[0].zero_like();
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = zero.clone();
                for k in 0..n {
                    acc = acc.add(&self.get(i, k).mul(other.get(k, j)));
                }
                out.push(acc);
            }
        }
        Ok(MatN { n, entries: out })
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::InvalidArgument(format!(
                "dimension mismatch: {} vs {}",
                self.n, other.n
            )));
        }
        let (l, r) = (self.entries[0].ring(), other.entries[0].ring());
        if l != r {
            return Err(Error::MixedRings { left: l, right: r });
        }
        Ok(())
    }

    /// Laplace expansion along the first row.
    pub fn det(&self) -> T {
        let cols: Vec<usize> = (0..self.n).collect();
        self.minor_det(0, &cols)
    }

    fn minor_det(&self, row: usize, cols: &[usize]) -> T {
        if cols.len() == 1 {
            return self.get(row, cols[0]).clone();
        }
        let mut acc = self.entries[0].zero_like();
        for (k, &c) in cols.iter().enumerate() {
            let a = self.get(row, c);
            if a.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let term = a.mul(&self.minor_det(row + 1, &rest));
            acc = if k % 2 == 0 {
                acc.add(&term)
            } else {
                acc.sub(&term)
            };
        }
        acc
    }
}

impl<T: Scalar> Mul for &MatN<T> {
    type Output = MatN<T>;

    /// Panics on mismatched dimensions or rings; see [`MatN::checked_mul`].
    fn mul(self, rhs: &MatN<T>) -> MatN<T> {
        self.checked_mul(rhs).expect("compatible matrices")
    }
}

impl<T: Scalar> fmt::Debug for MatN<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.n {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.n {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}
