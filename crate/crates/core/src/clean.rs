//! Clean and exchange decompositions of 2×2 integer matrices.
//!
//! Apart from `0` and `I₂`, every idempotent is `E = [[x+1, y], [z, −x]]`
//! with `x² + x + yz = 0`. Then `det(A − E) = det(A) + (a−d)x + cy + bz − d`,
//! so `A = E + U` with `U` a unit iff that linear form is `±1`. For `b ≠ 0`,
//! eliminating `z` leaves one conic in `(x, y)` per sign.

use rayon::prelude::*;
use serde::Serialize;

use crate::conic::{solve_conic, Conic, ConicSolutionSet};
use crate::int::Int;
use crate::mat2::Mat2;

/// The non-trivial idempotent `[[x+1, y], [z, −x]]`.
pub fn idempotent_from(x: &Int, y: &Int, z: &Int) -> Mat2<Int> {
    Mat2::int(x + &Int::one(), y.clone(), z.clone(), -x)
}

/// The two curves `b·x² − (a−d)·xy − c·y² + b·x + (d − det(A) ± 1)·y = 0`,
/// tagged with the sign of `±1`.
pub fn clean_conics(a: &Mat2<Int>) -> [(i64, Conic); 2] {
    let [a11, b, c, d] = a.entries();
    let det = a.det();
    let conic = |sign: i64| {
        Conic::new(
            b.clone(),
            -&(a11 - d),
            -c,
            b.clone(),
            &(d - &det) + &Int::from(sign),
            Int::zero(),
        )
    };
    [(1, conic(1)), (-1, conic(-1))]
}

/// `z = (±1 − det(A) + d − (a−d)x − cy) / b` when that is an integer.
fn recover_z(a: &Mat2<Int>, sign: i64, x: &Int, y: &Int) -> Option<Int> {
    let [a11, b, c, d] = a.entries();
    let num = &(&(&(&Int::from(sign) - &a.det()) + d) - &(&(a11 - d) * x)) - &(c * y);
    num.div_exact(b)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CleanVerdict {
    Clean,
    NotClean,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Completeness {
    Complete,
    BoundedOnly(u64),
}

/// `A = E + U` with `E² = E` and `det(U) = ±1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CleanWitness {
    #[serde(rename = "E")]
    pub e: Mat2<Int>,
    #[serde(rename = "U")]
    pub u: Mat2<Int>,
}

impl CleanWitness {
    fn new(a: &Mat2<Int>, e: Mat2<Int>) -> CleanWitness {
        let u = a - &e;
        CleanWitness { e, u }
    }

    pub fn verify(&self, a: &Mat2<Int>) -> bool {
        self.e.is_idempotent() && self.u.det().is_unit() && &self.e + &self.u == *a
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CleanReport {
    pub verdict: CleanVerdict,
    pub witness: Option<CleanWitness>,
    pub completeness: Completeness,
}

impl CleanReport {
    fn clean(a: &Mat2<Int>, e: Mat2<Int>) -> CleanReport {
        let witness = CleanWitness::new(a, e);
        debug_assert!(witness.verify(a));
        CleanReport {
            verdict: CleanVerdict::Clean,
            witness: Some(witness),
            completeness: Completeness::Complete,
        }
    }

    pub fn is_clean(&self) -> Option<bool> {
        match self.verdict {
            CleanVerdict::Clean => Some(true),
            CleanVerdict::NotClean => Some(false),
            CleanVerdict::Unknown => None,
        }
    }
}

/// Decides whether `A` is a sum of an idempotent and a unit.
///
/// The answer is exact unless a conic with positive non-square discriminant
/// has no usable point inside `|x|, |y| ≤ fallback_bound`, in which case the
/// verdict is [`CleanVerdict::Unknown`].
pub fn is_clean(a: &Mat2<Int>, fallback_bound: u64) -> CleanReport {
    if a.det().is_unit() {
        return CleanReport::clean(a, Mat2::zero());
    }
    // det(A − I₂) = 1 + det(A) − Tr(A).
    if (&(&Int::one() + &a.det()) - &a.trace()).is_unit() {
        return CleanReport::clean(a, Mat2::identity());
    }
    is_nontrivially_clean(a, fallback_bound)
}

/// Same as [`is_clean`] with the idempotent restricted to `E ∉ {0, I₂}`.
pub fn is_nontrivially_clean(a: &Mat2<Int>, fallback_bound: u64) -> CleanReport {
    let [a11, b, c, d] = a.entries();
    if b.is_zero() && !c.is_zero() {
        let mut report = is_nontrivially_clean(&a.transpose(), fallback_bound);
        if let Some(w) = report.witness.take() {
            report.witness = Some(CleanWitness::new(a, w.e.transpose()));
        }
        return report;
    }
    if b.is_zero() {
        return clean_diagonal(a, a11, d);
    }

    let mut complete = true;
    for (sign, conic) in clean_conics(a) {
        let solutions = solve_conic(&conic, fallback_bound).expect("b ≠ 0 makes the conic nonzero");
        complete &= solutions.complete;
        if let Some(e) = first_clean_idempotent(a, sign, &solutions) {
            return CleanReport::clean(a, e);
        }
    }
    CleanReport {
        verdict: if complete {
            CleanVerdict::NotClean
        } else {
            CleanVerdict::Unknown
        },
        witness: None,
        completeness: if complete {
            Completeness::Complete
        } else {
            Completeness::BoundedOnly(fallback_bound)
        },
    }
}

/// `A = diag(a, d)`: the linear form is `(a−d)x + ad − d`, with `y = 1`, `z = −x² − x`.
fn clean_diagonal(a: &Mat2<Int>, a11: &Int, d: &Int) -> CleanReport {
    let diff = a11 - d;
    let base = &(a11 * d) - d;
    for sign in [1i64, -1] {
        let target = &Int::from(sign) - &base;
        let x = if diff.is_zero() {
            target.is_zero().then(Int::zero)
        } else {
            target.div_exact(&diff)
        };
        if let Some(x) = x {
            let z = -&(&(&x * &x) + &x);
            return CleanReport::clean(a, idempotent_from(&x, &Int::one(), &z));
        }
    }
    CleanReport {
        verdict: CleanVerdict::NotClean,
        witness: None,
        completeness: Completeness::Complete,
    }
}

fn first_clean_idempotent(a: &Mat2<Int>, sign: i64, s: &ConicSolutionSet) -> Option<Mat2<Int>> {
    for (x, y) in &s.points {
        if let Some(z) = recover_z(a, sign, x, y) {
            return Some(idempotent_from(x, y, &z));
        }
    }
    // Integrality of z is periodic in the family parameter with period |b|.
    let period = a.a12().abs();
    for fam in &s.families {
        let mut m = Int::zero();
        while m < period {
            let (x, y) = fam.point(&m);
            if let Some(z) = recover_z(a, sign, &x, &y) {
                return Some(idempotent_from(&x, &y, &z));
            }
            m += &Int::one();
        }
    }
    None
}

/// `A + M·(A − A²)` is idempotent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExchangeWitness {
    #[serde(rename = "M")]
    pub m: Mat2<Int>,
    #[serde(rename = "E")]
    pub e: Mat2<Int>,
}

impl ExchangeWitness {
    pub fn verify(&self, a: &Mat2<Int>) -> bool {
        let defect = a - &(a * a);
        self.e == a + &(&self.m * &defect) && self.e.is_idempotent()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExchangeReport {
    Found(ExchangeWitness),
    NotFoundWithinBound(u64),
}

impl ExchangeReport {
    pub fn witness(&self) -> Option<&ExchangeWitness> {
        match self {
            ExchangeReport::Found(w) => Some(w),
            ExchangeReport::NotFoundWithinBound(_) => None,
        }
    }
}

/// One row of `E = A + M·N` for each choice of the matching row of `M`.
struct RowTable {
    /// `(m_i1, m_i2, e_i1, e_i2)` in lexicographic order of `(m_i1, m_i2)`.
    rows: Vec<(i64, i64, Int, Int)>,
}

impl RowTable {
    fn new(a_row: (&Int, &Int), n: &Mat2<Int>, bound: i64) -> RowTable {
        let [n11, n12, n21, n22] = n.entries();
        let mut rows = Vec::with_capacity(((2 * bound + 1) * (2 * bound + 1)) as usize);
        for p in -bound..=bound {
            for q in -bound..=bound {
                let e1 = &(a_row.0 + &(n11 * p)) + &(n21 * q);
                let e2 = &(a_row.1 + &(n12 * p)) + &(n22 * q);
                rows.push((p, q, e1, e2));
            }
        }
        RowTable { rows }
    }
}

/// Whether rows `(e11, e12)`, `(e21, e22)` form an idempotent: `0`, `I₂`,
/// or trace 1 with determinant 0.
fn rows_idempotent(e11: &Int, e12: &Int, e21: &Int, e22: &Int) -> bool {
    let trace = e11 + e22;
    if trace.is_one() {
        return (e11 * e22) == (e12 * e21);
    }
    e12.is_zero() && e21.is_zero() && e11 == e22 && (e11.is_zero() || e11.is_one())
}

fn exchange_tables(a: &Mat2<Int>, bound: u64) -> (RowTable, RowTable) {
    let bound = i64::try_from(bound).expect("bound fits in i64");
    let n = a - &(a * a);
    let [a11, a12, a21, a22] = a.entries();
    (
        RowTable::new((a11, a12), &n, bound),
        RowTable::new((a21, a22), &n, bound),
    )
}

fn witness_from(
    a: &Mat2<Int>,
    r1: &(i64, i64, Int, Int),
    r2: &(i64, i64, Int, Int),
) -> ExchangeWitness {
    let w = ExchangeWitness {
        m: Mat2::int(r1.0, r1.1, r2.0, r2.1),
        e: Mat2::int(r1.2.clone(), r1.3.clone(), r2.2.clone(), r2.3.clone()),
    };
    debug_assert!(w.verify(a));
    w
}

/// First `M` in lexicographic order of `(m11, m12, m21, m22)` over
/// `[−bound, bound]⁴` making `A + M·(A − A²)` idempotent; `M = 0` when `A`
/// is already idempotent.
pub fn is_exchange_bounded(a: &Mat2<Int>, bound: u64) -> ExchangeReport {
    if a.is_idempotent() {
        return ExchangeReport::Found(ExchangeWitness {
            m: Mat2::zero(),
            e: a.clone(),
        });
    }
    let (top, bottom) = exchange_tables(a, bound);
    let found = top.rows.par_iter().find_map_first(|r1| {
        bottom
            .rows
            .iter()
            .find(|r2| rows_idempotent(&r1.2, &r1.3, &r2.2, &r2.3))
            .map(|r2| witness_from(a, r1, r2))
    });
    match found {
        Some(w) => ExchangeReport::Found(w),
        None => ExchangeReport::NotFoundWithinBound(bound),
    }
}

/// Every `M` in `[−bound, bound]⁴` making `A + M·(A − A²)` idempotent, in
/// lexicographic order.
pub fn all_exchange_witnesses(a: &Mat2<Int>, bound: u64) -> Vec<ExchangeWitness> {
    let (top, bottom) = exchange_tables(a, bound);
    top.rows
        .par_iter()
        .flat_map_iter(|r1| {
            bottom
                .rows
                .iter()
                .filter(|r2| rows_idempotent(&r1.2, &r1.3, &r2.2, &r2.3))
                .map(|r2| witness_from(a, r1, r2))
                .collect::<Vec<_>>()
        })
        .collect()
}
