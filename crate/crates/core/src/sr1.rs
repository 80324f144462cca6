//! Stable range one: the determinant characterization over commutative rings,
//! the integer decision procedure, and exhaustive checks over ℤ/n.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::int::Int;
use crate::mat2::Mat2;
use crate::ring::{Scalar, Zmod};

/// Largest modulus for which the ∀X ∃Y quantifiers are enumerated.
pub const MAX_EXHAUSTIVE_MODULUS: u64 = 6;

/// `A + Y·(X·A − I₂)`, the matrix whose invertibility defines a left unitizer.
pub fn unitizer_combination<T: Scalar>(a: &Mat2<T>, x: &Mat2<T>, y: &Mat2<T>) -> Mat2<T> {
    let id = a.identity_like();
    a + &(y * &(&(x * a) - &id))
}

/// `A + (A·X − I₂)·Y`, the mirror image of [`unitizer_combination`]; its
/// transpose is `Aᵀ + Yᵀ(XᵀAᵀ − I₂)`.
pub fn right_unitizer_combination<T: Scalar>(a: &Mat2<T>, x: &Mat2<T>, y: &Mat2<T>) -> Mat2<T> {
    let id = a.identity_like();
    a + &(&(&(a * x) - &id) * y)
}

/// Closed form of `det(A + Y(XA − I₂))` in terms of determinants and traces:
///
/// `det(Y)·(det(X)·det(A) − Tr(XA) + 1) + det(A)·(Tr(XY) + 1) − Tr(A·adj(Y))`.
pub fn unit_condition_value<T: Scalar>(a: &Mat2<T>, x: &Mat2<T>, y: &Mat2<T>) -> Result<T> {
    for m in [x, y] {
        if m.ring() != a.ring() {
            return Err(Error::MixedRings {
                left: a.ring(),
                right: m.ring(),
            });
        }
    }
    Ok(unit_condition_value_unchecked(a, x, y))
}

pub(crate) fn unit_condition_value_unchecked<T: Scalar>(
    a: &Mat2<T>,
    x: &Mat2<T>,
    y: &Mat2<T>,
) -> T {
    let one = a.a11().one_like();
    let det_a = a.det();
    let first = y
        .det()
        .mul(&x.det().mul(&det_a).sub(&(x * a).trace()).add(&one));
    let second = det_a.mul(&(x * y).trace().add(&one));
    first.add(&second).sub(&(a * &y.adjugate()).trace())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Sr1Reason {
    Unit,
    ZeroDeterminant,
    DeterminantObstruction(Int),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Sr1Verdict {
    pub is_sr1: bool,
    pub reason: Sr1Reason,
}

impl Sr1Verdict {
    pub fn reason_label(&self) -> &'static str {
        match self.reason {
            Sr1Reason::Unit => "unit",
            Sr1Reason::ZeroDeterminant => "zero_determinant",
            Sr1Reason::DeterminantObstruction(_) => "determinant_obstruction",
        }
    }
}

/// A 2×2 integer matrix has stable range one iff it is a unit or singular.
pub fn is_sr1_integer(a: &Mat2<Int>) -> Sr1Verdict {
    let det = a.det();
    let reason = if det.is_unit() {
        Sr1Reason::Unit
    } else if det.is_zero() {
        Sr1Reason::ZeroDeterminant
    } else {
        Sr1Reason::DeterminantObstruction(det)
    };
    Sr1Verdict {
        is_sr1: !matches!(reason, Sr1Reason::DeterminantObstruction(_)),
        reason,
    }
}

/// An `X` against which `n·I₂` has no unitizer, with the modulus that proves it.
///
/// With `X·A − I₂ ≡ 0 (mod m)` every candidate collapses to `det(A) = n²`
/// modulo `m`, and `n² ≢ ±1 (mod m)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScalarDiagWitness {
    pub n: Int,
    pub x: Mat2<Int>,
    pub modulus: Int,
    /// `n² mod modulus`.
    pub det_residue: Int,
}

impl ScalarDiagWitness {
    /// Re-derives the obstruction from scratch.
    pub fn verify(&self) -> bool {
        let a = Mat2::diag(self.n.clone(), self.n.clone());
        let xa_minus_i = &(&self.x * &a) - &Mat2::identity();
        let vanishes = xa_minus_i
            .entries()
            .iter()
            .all(|e| e.mod_floor(&self.modulus).is_zero());
        let r = (&self.n * &self.n).mod_floor(&self.modulus);
        let minus_one = &self.modulus - &Int::one();
        vanishes && r == self.det_residue && !r.is_one() && r != minus_one
    }
}

/// Witness for `A = n·I₂`, `|n| ≥ 2`: `X = −(n+1)·I₂` modulo `1 + n + n²` for
/// positive `n`; for negative `n` the sign-flipped `X = (1 − n)·I₂` modulo
/// `1 + |n| + n²` (multiplying by the unit `−I₂`).
pub fn non_sr1_witness_scalar_diag(n: &Int) -> Result<ScalarDiagWitness> {
    if n.abs() < Int::from(2) {
        return Err(Error::InvalidArgument(format!(
            "{n}·I2 has stable range one; a witness needs |n| >= 2"
        )));
    }
    let m = n.abs();
    let modulus = &(&Int::one() + &m) + &(&m * &m);
    let k = if n.is_negative() {
        &Int::one() - n
    } else {
        -(n + &Int::one())
    };
    let det_residue = (n * n).mod_floor(&modulus);
    Ok(ScalarDiagWitness {
        n: n.clone(),
        x: Mat2::diag(k.clone(), k),
        modulus,
        det_residue,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

fn check_exhaustive(a: &Mat2<Zmod>) -> Result<u64> {
    let n = a.a11().modulus();
    if n > MAX_EXHAUSTIVE_MODULUS {
        return Err(Error::ModulusTooLarge {
            modulus: n,
            max: MAX_EXHAUSTIVE_MODULUS,
        });
    }
    Ok(n)
}

fn finite_sr1(a: &Mat2<Zmod>, side: Side, all: &[Mat2<Zmod>]) -> bool {
    let id = a.identity_like();
    all.par_iter().all(|x| match side {
        Side::Left => {
            let b = &(x * a) - &id;
            all.iter().any(|y| (a + &(y * &b)).det().is_unit())
        }
        Side::Right => {
            let b = &(a * x) - &id;
            all.iter().any(|y| (a + &(&b * y)).det().is_unit())
        }
    })
}

/// For every `X` there is `Y` with `A + Y(XA − I₂)` invertible; exhaustive over ℤ/n, n ≤ 6.
pub fn lsr1_finite(a: &Mat2<Zmod>) -> Result<bool> {
    let n = check_exhaustive(a)?;
    Ok(finite_sr1(a, Side::Left, &Mat2::all(n)?))
}

/// For every `X` there is `Y` with `A + (AX − I₂)Y` invertible; exhaustive over ℤ/n, n ≤ 6.
pub fn rsr1_finite(a: &Mat2<Zmod>) -> Result<bool> {
    let n = check_exhaustive(a)?;
    Ok(finite_sr1(a, Side::Right, &Mat2::all(n)?))
}

/// Stable-range-one flags for every matrix over ℤ/n, indexed by [`Mat2::index`].
#[derive(Debug, Clone)]
pub struct Sr1Table {
    pub modulus: u64,
    pub side: Side,
    matrices: Vec<Mat2<Zmod>>,
    flags: Vec<bool>,
}

impl Sr1Table {
    pub fn compute(modulus: u64, side: Side) -> Result<Sr1Table> {
        if modulus > MAX_EXHAUSTIVE_MODULUS {
            return Err(Error::ModulusTooLarge {
                modulus,
                max: MAX_EXHAUSTIVE_MODULUS,
            });
        }
        let matrices = Mat2::all(modulus)?;
        let flags = matrices
            .par_iter()
            .map(|a| finite_sr1(a, side, &matrices))
            .collect();
        Ok(Sr1Table {
            modulus,
            side,
            matrices,
            flags,
        })
    }

    pub fn matrices(&self) -> &[Mat2<Zmod>] {
        &self.matrices
    }

    pub fn get(&self, a: &Mat2<Zmod>) -> bool {
        self.flags[a.index()]
    }

    pub fn count(&self) -> usize {
        self.flags.iter().filter(|f| **f).count()
    }
}

/// Whether `I₂ − AB` and `I₂ − BA` share their stable-range-one status.
///
/// Both determinants equal `1 + det(AB) − Tr(AB)`; a mismatch there also
/// yields `false`.
pub fn jacobson_check(a: &Mat2<Int>, b: &Mat2<Int>) -> bool {
    let id = Mat2::identity();
    let left = &id - &(a * b);
    let right = &id - &(b * a);
    left.det() == right.det() && is_sr1_integer(&left).is_sr1 == is_sr1_integer(&right).is_sr1
}
