//! Invariant suites run by `sr1kit verify`: algebraic identities, the
//! determinant formula against direct evaluation, and the stable-range-one
//! closure properties. Every suite reports the first few counterexamples.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::int::Int;
use crate::mat2::Mat2;
use crate::ring::{Ring, Scalar, Zmod};
use crate::smith::smith_form;
use crate::sr1::{
    is_sr1_integer, jacobson_check, unit_condition_value, unitizer_combination, Side, Sr1Table,
    MAX_EXHAUSTIVE_MODULUS,
};
use crate::unitizer::find_unitizer;

const MAX_COUNTEREXAMPLES: usize = 5;
const SEED: u64 = 0x5eed_2024;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteResult {
    pub name: &'static str,
    pub checked: u64,
    pub failures: u64,
    pub counterexamples: Vec<String>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub ring: String,
    pub passed: bool,
    pub suites: Vec<SuiteResult>,
}

impl VerifyReport {
    fn new(ring: Ring, suites: Vec<SuiteResult>) -> VerifyReport {
        VerifyReport {
            ring: ring.to_string(),
            passed: suites.iter().all(SuiteResult::passed),
            suites,
        }
    }
}

/// Runs `check` on every case in parallel and keeps the earliest failures.
fn suite<C, F>(name: &'static str, cases: Vec<C>, check: F) -> SuiteResult
where
    C: Send + Sync,
    F: Fn(&C) -> Option<String> + Send + Sync,
{
    let failures: Vec<(usize, String)> = cases
        .par_iter()
        .enumerate()
        .filter_map(|(i, c)| check(c).map(|msg| (i, msg)))
        .collect();
    SuiteResult {
        name,
        checked: cases.len() as u64,
        failures: failures.len() as u64,
        counterexamples: failures
            .into_iter()
            .take(MAX_COUNTEREXAMPLES)
            .map(|(_, m)| m)
            .collect(),
    }
}

fn identities<T: Scalar>(a: &Mat2<T>, b: &Mat2<T>) -> Option<String> {
    let ab = a * b;
    let ba = b * a;
    if ab.det() != a.det().mul(&b.det()) {
        return Some(format!("det(AB) != det(A)det(B) for A={a:?}, B={b:?}"));
    }
    if ab.trace() != ba.trace() {
        return Some(format!("Tr(AB) != Tr(BA) for A={a:?}, B={b:?}"));
    }
    let id = a.identity_like();
    let one = a.a11().one_like();
    if (&id - a).det() != one.add(&a.det()).sub(&a.trace()) {
        return Some(format!("det(I - A) != 1 + det(A) - Tr(A) for A={a:?}"));
    }
    if a * &a.adjugate() != id.scale(&a.det()) {
        return Some(format!("A adj(A) != det(A) I for A={a:?}"));
    }
    None
}

fn formula<T: Scalar>(a: &Mat2<T>, x: &Mat2<T>, y: &Mat2<T>) -> Option<String> {
    let closed = unit_condition_value(a, x, y).ok()?;
    let direct = unitizer_combination(a, x, y).det();
    (closed != direct)
        .then(|| format!("formula {closed} != det {direct} for A={a:?}, X={x:?}, Y={y:?}"))
}

/// Exhaustive suites over ℤ/n, `2 ≤ n ≤ 6`.
///
/// The triple identity is exhaustive while `n¹² ≤ 2²⁴` (`n ≤ 4`) and uses
/// a fixed-seed sample of 10⁶ triples beyond that.
pub fn verify_zmod(n: u64) -> Result<VerifyReport> {
    if n > MAX_EXHAUSTIVE_MODULUS {
        return Err(Error::ModulusTooLarge {
            modulus: n,
            max: MAX_EXHAUSTIVE_MODULUS,
        });
    }
    let all = Mat2::all(n)?;
    let count = all.len();
    let pairs: Vec<(usize, usize)> = (0..count)
        .flat_map(|i| (0..count).map(move |j| (i, j)))
        .collect();
    let mut suites = Vec::new();

    suites.push(suite("ring_identities", pairs.clone(), |&(i, j)| {
        identities(&all[i], &all[j])
    }));

    let triples: Vec<[usize; 3]> = if (count as u64).pow(3) <= 1 << 24 {
        (0..count.pow(3))
            .map(|t| [t / (count * count), (t / count) % count, t % count])
            .collect()
    } else {
        let mut rng = StdRng::seed_from_u64(SEED ^ n);
        (0..1_000_000)
            .map(|_| {
                [
                    rng.gen_range(0..count),
                    rng.gen_range(0..count),
                    rng.gen_range(0..count),
                ]
            })
            .collect()
    };
    suites.push(suite("determinant_formula", triples, |[a, x, y]| {
        formula(&all[*a], &all[*x], &all[*y])
    }));

    let left = Sr1Table::compute(n, Side::Left)?;
    let right = Sr1Table::compute(n, Side::Right)?;
    suites.push(suite("left_right_symmetry", all.clone(), |a| {
        (left.get(a) != right.get(a))
            .then(|| format!("lsr1 {} != rsr1 {} for {a:?}", left.get(a), right.get(a)))
    }));
    suites.push(suite("transpose_flip", all.clone(), |a| {
        let t = a.transpose();
        (left.get(&t) != right.get(a)).then(|| format!("lsr1(A^T) != rsr1(A) for {a:?}"))
    }));

    let sr1: Vec<&Mat2<Zmod>> = all.iter().filter(|a| left.get(a)).collect();
    let sr1_pairs: Vec<(usize, usize)> = (0..sr1.len())
        .flat_map(|i| (0..sr1.len()).map(move |j| (i, j)))
        .collect();
    suites.push(suite("product_closure", sr1_pairs, |&(i, j)| {
        let p = sr1[i] * sr1[j];
        (!left.get(&p)).then(|| format!("{:?} * {:?} = {p:?} is not sr1", sr1[i], sr1[j]))
    }));

    let units: Vec<&Mat2<Zmod>> = all.iter().filter(|u| u.is_unit()).collect();
    let unit_pairs: Vec<(usize, usize)> = (0..units.len())
        .flat_map(|i| (0..units.len()).map(move |j| (i, j)))
        .collect();
    suites.push(suite("equivalence_invariance", unit_pairs, |&(i, j)| {
        all.iter().find_map(|a| {
            let b = &(units[i] * a) * units[j];
            (left.get(a) != left.get(&b))
                .then(|| format!("sr1 changes from {a:?} to U A V = {b:?}"))
        })
    }));

    Ok(VerifyReport::new(Ring::Zmod(n), suites))
}

fn random_int_matrix(rng: &mut StdRng, bound: i64) -> Mat2<Int> {
    let mut e = || rng.gen_range(-bound..=bound);
    Mat2::int(e(), e(), e(), e())
}

fn grid(bound: i64) -> Vec<Mat2<Int>> {
    let span = 2 * bound + 1;
    (0..span.pow(4))
        .map(|i| {
            let c = |k: u32| (i / span.pow(k)) % span - bound;
            Mat2::int(c(3), c(2), c(1), c(0))
        })
        .collect()
}

/// Integer suites: the full grid `[−entry_bound, entry_bound]⁴` for Smith
/// forms and classification, plus fixed-seed samples with entries in
/// `[−20, 20]` for the identities.
pub fn verify_int(entry_bound: i64, samples: usize) -> VerifyReport {
    let mut rng = StdRng::seed_from_u64(SEED);
    let mut suites = Vec::new();

    let pairs: Vec<(Mat2<Int>, Mat2<Int>)> = (0..samples)
        .map(|_| {
            (
                random_int_matrix(&mut rng, 20),
                random_int_matrix(&mut rng, 20),
            )
        })
        .collect();
    suites.push(suite("ring_identities", pairs.clone(), |(a, b)| {
        identities(a, b)
    }));
    suites.push(suite("jacobson", pairs.clone(), |(a, b)| {
        (!jacobson_check(a, b)).then(|| format!("I - AB and I - BA disagree for A={a:?}, B={b:?}"))
    }));
    suites.push(suite("projection_morphism", pairs, |(a, b)| {
        [2u64, 3, 5, 6].iter().find_map(|&n| {
            let lhs = (a * b).project(n).ok()?;
            let rhs = &a.project(n).ok()? * &b.project(n).ok()?;
            (lhs != rhs)
                .then(|| format!("projection mod {n} is not multiplicative at A={a:?}, B={b:?}"))
        })
    }));

    let triples: Vec<[Mat2<Int>; 3]> = (0..samples)
        .map(|_| {
            [
                random_int_matrix(&mut rng, 20),
                random_int_matrix(&mut rng, 20),
                random_int_matrix(&mut rng, 20),
            ]
        })
        .collect();
    suites.push(suite("determinant_formula", triples, |[a, x, y]| {
        formula(a, x, y)
    }));

    let box_ = grid(entry_bound);
    suites.push(suite("smith_soundness", box_.clone(), |a| {
        let s = smith_form(a);
        (!s.verify(a) || s.reconstruct() != *a)
            .then(|| format!("Smith form fails for {a:?}: {s:?}"))
    }));
    let probes: Vec<Mat2<Int>> = (0..8).map(|_| random_int_matrix(&mut rng, 4)).collect();
    suites.push(suite("classification", box_, |a| {
        let verdict = is_sr1_integer(a);
        probes
            .iter()
            .find_map(|x| match (verdict.is_sr1, find_unitizer(a, x)) {
                (true, Ok(c)) if c.verify() => None,
                (false, Err(Error::DeterminantObstruction { .. })) => None,
                (expected, got) => Some(format!(
                    "sr1={expected} but unitizer for {a:?}, X={x:?} gave {got:?}"
                )),
            })
    }));

    VerifyReport::new(Ring::Integers, suites)
}
