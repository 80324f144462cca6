//! Integer points on binary quadratic curves
//! `qa·x² + qb·xy + qc·y² + l1·x + l2·y + f = 0`.
//!
//! After a unimodular change of variables making `qa ≠ 0`, completing the
//! square gives `X² = D·y² − E·y − F` with `X = 2·qa·x + qb·y + l1` and
//! `D = qb² − 4·qa·qc`. The sign and squareness of `D` select the method:
//! a bounded window for `D < 0`, residue classes of `X` for `D = 0`, a
//! divisor factorization for square `D > 0`, and a bounded scan otherwise.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::int::Int;

/// Above this size a residue sweep or divisor enumeration is replaced by the
/// bounded scan.
const ENUMERATION_LIMIT: i64 = 50_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Conic {
    pub qa: Int,
    pub qb: Int,
    pub qc: Int,
    pub l1: Int,
    pub l2: Int,
    pub f: Int,
}

impl Conic {
    pub fn new(
        qa: impl Into<Int>,
        qb: impl Into<Int>,
        qc: impl Into<Int>,
        l1: impl Into<Int>,
        l2: impl Into<Int>,
        f: impl Into<Int>,
    ) -> Conic {
        Conic {
            qa: qa.into(),
            qb: qb.into(),
            qc: qc.into(),
            l1: l1.into(),
            l2: l2.into(),
            f: f.into(),
        }
    }

    /// `qb² − 4·qa·qc`.
    pub fn discriminant(&self) -> Int {
        &(&self.qb * &self.qb) - &(&(&self.qa * &self.qc) * 4)
    }

    pub fn evaluate(&self, x: &Int, y: &Int) -> Int {
        let quad = &(&(&(&self.qa * x) * x) + &(&(&self.qb * x) * y)) + &(&(&self.qc * y) * y);
        &(&(&quad + &(&self.l1 * x)) + &(&self.l2 * y)) + &self.f
    }

    pub fn is_zero(&self) -> bool {
        [&self.qa, &self.qb, &self.qc, &self.l1, &self.l2, &self.f]
            .iter()
            .all(|c| c.is_zero())
    }

    /// The same curve in coordinates `(x, y) = T·(x', y')`.
    fn substitute(&self, t: &Transform) -> Conic {
        let [p, q, r, s] = &t.0;
        // x = p·x' + q·y', y = r·x' + s·y'
        let qa = &(&(&(&self.qa * p) * p) + &(&(&self.qb * p) * r)) + &(&(&self.qc * r) * r);
        let qb = &(&(&(&(&self.qa * p) * q) * 2) + &(&self.qb * &(&(p * s) + &(q * r))))
            + &(&(&(&self.qc * r) * s) * 2);
        let qc = &(&(&(&self.qa * q) * q) + &(&(&self.qb * q) * s)) + &(&(&self.qc * s) * s);
        let l1 = &(&self.l1 * p) + &(&self.l2 * r);
        let l2 = &(&self.l1 * q) + &(&self.l2 * s);
        Conic {
            qa,
            qb,
            qc,
            l1,
            l2,
            f: self.f.clone(),
        }
    }
}

/// `c0 + c1·m + c2·m²`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Quadratic(pub [Int; 3]);

impl Quadratic {
    pub fn eval(&self, m: &Int) -> Int {
        let [c0, c1, c2] = &self.0;
        &(c0 + &(c1 * m)) + &(&(c2 * m) * m)
    }

    fn is_constant(&self) -> bool {
        self.0[1].is_zero() && self.0[2].is_zero()
    }

    /// All integers `m` with `eval(m) = v`.
    fn preimages(&self, v: &Int) -> Vec<Int> {
        let [c0, c1, c2] = &self.0;
        let c0 = c0 - v;
        if c2.is_zero() {
            if c1.is_zero() {
                return Vec::new();
            }
            return (-&c0).div_exact(c1).into_iter().collect();
        }
        let disc = &(c1 * c1) - &(&(c2 * &c0) * 4);
        let Some(s) = disc.perfect_sqrt() else {
            return Vec::new();
        };
        let two_a = c2 * 2;
        let mut out: Vec<Int> = [&(-c1) + &s, &(-c1) - &s]
            .iter()
            .filter_map(|n| n.div_exact(&two_a))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    fn map(&self, f: impl Fn(&Int) -> Int) -> Quadratic {
        let [a, b, c] = &self.0;
        Quadratic([f(a), f(b), f(c)])
    }
}

/// The points `(x(m), y(m))` for `m ∈ ℤ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ParametricFamily {
    pub x: Quadratic,
    pub y: Quadratic,
}

impl ParametricFamily {
    pub fn point(&self, m: &Int) -> (Int, Int) {
        (self.x.eval(m), self.y.eval(m))
    }

    pub fn contains(&self, x: &Int, y: &Int) -> bool {
        let candidates = if !self.x.is_constant() {
            self.x.preimages(x)
        } else if !self.y.is_constant() {
            self.y.preimages(y)
        } else {
            vec![Int::zero()]
        };
        candidates
            .iter()
            .any(|m| self.point(m) == (x.clone(), y.clone()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConicSolutionSet {
    /// Isolated solutions, sorted.
    pub points: Vec<(Int, Int)>,
    /// Infinite families; empty unless the curve contains a line or a parabola.
    pub families: Vec<ParametricFamily>,
    /// True when `points` and `families` cover every integer solution.
    pub complete: bool,
    /// The box half-width used when the search fell back to scanning.
    pub bound_used: Option<u64>,
}

impl ConicSolutionSet {
    pub fn contains(&self, x: &Int, y: &Int) -> bool {
        self.points.iter().any(|(px, py)| px == x && py == y)
            || self.families.iter().any(|f| f.contains(x, y))
    }

    pub fn is_finite(&self) -> bool {
        self.families.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty() && self.families.is_empty()
    }
}

/// Unimodular `[[p, q], [r, s]]` acting on column vectors.
#[derive(Debug, Clone)]
struct Transform([Int; 4]);

impl Transform {
    fn identity() -> Transform {
        Transform([Int::one(), Int::zero(), Int::zero(), Int::one()])
    }

    fn apply(&self, x: &Int, y: &Int) -> (Int, Int) {
        let [p, q, r, s] = &self.0;
        (&(p * x) + &(q * y), &(r * x) + &(s * y))
    }

    fn apply_family(&self, fam: &ParametricFamily) -> ParametricFamily {
        let [p, q, r, s] = &self.0;
        let combine = |u: &Int, v: &Int| {
            let xs = fam.x.map(|c| u * c);
            let ys = fam.y.map(|c| v * c);
            Quadratic([
                &xs.0[0] + &ys.0[0],
                &xs.0[1] + &ys.0[1],
                &xs.0[2] + &ys.0[2],
            ])
        };
        ParametricFamily {
            x: combine(p, q),
            y: combine(r, s),
        }
    }
}

/// All integer solutions of `a·x + b·y = c`, with `(a, b) ≠ (0, 0)`.
fn solve_linear(a: &Int, b: &Int, c: &Int) -> Option<ParametricFamily> {
    let (g, s, t) = Int::extended_gcd(a, b);
    let k = c.div_exact(&g)?;
    let zero = Int::zero;
    Some(ParametricFamily {
        x: Quadratic([&s * &k, b.div_exact(&g).unwrap(), zero()]),
        y: Quadratic([&t * &k, -&a.div_exact(&g).unwrap(), zero()]),
    })
}

struct Found {
    points: BTreeSet<(Int, Int)>,
    families: Vec<ParametricFamily>,
}

impl Found {
    fn new() -> Found {
        Found {
            points: BTreeSet::new(),
            families: Vec::new(),
        }
    }
}

/// Every integer solution of the conic, or a bounded sample when the
/// discriminant is a positive non-square.
pub fn solve_conic(c: &Conic, fallback_bound: u64) -> Result<ConicSolutionSet> {
    if c.is_zero() {
        return Err(Error::ZeroConic);
    }
    if c.qa.is_zero() && c.qb.is_zero() && c.qc.is_zero() {
        let families = if c.l1.is_zero() && c.l2.is_zero() {
            Vec::new()
        } else {
            solve_linear(&c.l1, &c.l2, &-&c.f).into_iter().collect()
        };
        return Ok(ConicSolutionSet {
            points: Vec::new(),
            families,
            complete: true,
            bound_used: None,
        });
    }

    let t = if !c.qa.is_zero() {
        Transform::identity()
    } else if !c.qc.is_zero() {
        Transform([Int::zero(), Int::one(), Int::one(), Int::zero()])
    } else {
        // qa = qc = 0, qb ≠ 0: y = x' + y' turns qb·xy into qb·x'² + …
        Transform([Int::one(), Int::zero(), Int::one(), Int::one()])
    };
    let w = c.substitute(&t);
    debug_assert!(!w.qa.is_zero());

    let found = match reduce(&w) {
        Some(found) => found,
        None => return Ok(bounded_scan(c, fallback_bound)),
    };
    let mut points: Vec<(Int, Int)> = found.points.iter().map(|(x, y)| t.apply(x, y)).collect();
    points.sort();
    let families: Vec<ParametricFamily> =
        found.families.iter().map(|f| t.apply_family(f)).collect();
    // Isolated points already covered by a family are dropped.
    points.retain(|(x, y)| !families.iter().any(|f| f.contains(x, y)));
    Ok(ConicSolutionSet {
        points,
        families,
        complete: true,
        bound_used: None,
    })
}

/// Exact solution for `qa ≠ 0`; `None` when the curve needs the bounded scan.
fn reduce(w: &Conic) -> Option<Found> {
    let d = w.discriminant();
    let two_qa = &w.qa * 2;
    let e = &(&(&w.qa * &w.l2) * 4) - &(&(&w.qb * &w.l1) * 2);
    let f = &(&(&w.qa * &w.f) * 4) - &(&w.l1 * &w.l1);
    let mut found = Found::new();

    // x from X = 2·qa·x + qb·y + l1.
    let recover_x = |big_x: &Int, y: &Int| (&(big_x - &(&w.qb * y)) - &w.l1).div_exact(&two_qa);

    if d.is_negative() {
        // X² = D·y² − E·y − F ≥ 0 confines y between the roots.
        let disc = &(&e * &e) + &(&(&d * &f) * 4);
        if disc.is_negative() {
            return Some(found);
        }
        let root = &disc.isqrt().unwrap() + &Int::one();
        let two_d = &d * 2;
        let lo = (&e + &root).div_floor(&two_d) - Int::one();
        let hi = (&e - &root).div_floor(&two_d) + Int::from(2);
        if &hi - &lo > Int::from(ENUMERATION_LIMIT) {
            return None;
        }
        let mut y = lo;
        while y <= hi {
            let rhs = &(&(&(&d * &y) * &y) - &(&e * &y)) - &f;
            if let Some(s) = rhs.perfect_sqrt() {
                for big_x in [s.clone(), -&s] {
                    if let Some(x) = recover_x(&big_x, &y) {
                        found.points.insert((x, y.clone()));
                    }
                }
            }
            y += &Int::one();
        }
        return Some(found);
    }

    if d.is_zero() {
        if e.is_zero() {
            // Two parallel lines X = ±s, or none.
            if let Some(s) = (-&f).perfect_sqrt() {
                let mut sides = vec![s.clone()];
                if !s.is_zero() {
                    sides.push(-&s);
                }
                for side in sides {
                    let rhs = &side - &w.l1;
                    found.families.extend(solve_linear(&two_qa, &w.qb, &rhs));
                }
            }
            return Some(found);
        }
        // y = −(X² + F)/E; both constraints on X are periodic modulo |E·2qa|.
        let l = (&e * &two_qa).abs();
        if l > Int::from(ENUMERATION_LIMIT) {
            return None;
        }
        let mut r = Int::zero();
        while r < l {
            if let Some(y0) = (-&(&(&r * &r) + &f)).div_exact(&e) {
                if let Some(x0) = recover_x(&r, &y0) {
                    // X = r + L·m.
                    let y1 = (&(&r * &l) * -2).div_exact(&e).unwrap();
                    let y2 = (-&(&l * &l)).div_exact(&e).unwrap();
                    let x1 = (&l - &(&w.qb * &y1)).div_exact(&two_qa).unwrap();
                    let x2 = (-&(&w.qb * &y2)).div_exact(&two_qa).unwrap();
                    found.families.push(ParametricFamily {
                        x: Quadratic([x0, x1, x2]),
                        y: Quadratic([y0, y1, y2]),
                    });
                }
            }
            r += &Int::one();
        }
        return Some(found);
    }

    let s = d.perfect_sqrt()?;
    // With Y = 2·D·y − E: (Y − 2sX)(Y + 2sX) = E² + 4·D·F.
    let n = &(&e * &e) + &(&(&d * &f) * 4);
    let two_d = &d * 2;
    let two_s = &s * 2;
    if n.is_zero() {
        // Y = ±2sX, a pair of rational lines.
        for sign in [1i64, -1] {
            let a = &(&(&two_s * &two_qa) * sign) * -1;
            let b = &two_d - &(&(&two_s * &w.qb) * sign);
            let rhs = &e + &(&(&two_s * &w.l1) * sign);
            found.families.extend(solve_linear(&a, &b, &rhs));
        }
        return Some(found);
    }
    if n.abs() > Int::from(ENUMERATION_LIMIT).pow(2) {
        return None;
    }
    let four_s = &s * 4;
    for p in n.positive_divisors() {
        for d1 in [p.clone(), -&p] {
            let d2 = n.div_exact(&d1).unwrap();
            let Some(big_y) = (&d1 + &d2).div_exact(&Int::from(2)) else {
                continue;
            };
            let Some(big_x) = (&d2 - &d1).div_exact(&four_s) else {
                continue;
            };
            let Some(y) = (&big_y + &e).div_exact(&two_d) else {
                continue;
            };
            if let Some(x) = recover_x(&big_x, &y) {
                found.points.insert((x, y));
            }
        }
    }
    Some(found)
}

fn bounded_scan(c: &Conic, bound: u64) -> ConicSolutionSet {
    let b = Int::from(bound);
    let mut points = Vec::new();
    let mut x = -&b;
    while x <= b {
        // For fixed x the curve is at most quadratic in y.
        let a2 = c.qc.clone();
        let a1 = &(&c.qb * &x) + &c.l2;
        let a0 = &(&(&(&c.qa * &x) * &x) + &(&c.l1 * &x)) + &c.f;
        let ys: Vec<Int> = if a2.is_zero() && a1.is_zero() {
            if a0.is_zero() {
                let mut all = Vec::new();
                let mut y = -&b;
                while y <= b {
                    all.push(y.clone());
                    y += &Int::one();
                }
                all
            } else {
                Vec::new()
            }
        } else {
            Quadratic([a0, a1, a2]).preimages(&Int::zero())
        };
        for y in ys {
            if y.abs() <= b {
                points.push((x.clone(), y));
            }
        }
        x += &Int::one();
    }
    points.sort();
    ConicSolutionSet {
        points,
        families: Vec::new(),
        complete: false,
        bound_used: Some(bound),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(x: i64, y: i64) -> (Int, Int) {
        (Int::from(x), Int::from(y))
    }

    /// No solution in the box escapes a complete answer, and every reported point is genuine.
    fn sweep(c: &Conic, s: &ConicSolutionSet) {
        for (x, y) in &s.points {
            assert!(c.evaluate(x, y).is_zero(), "{c:?} at {x},{y}");
        }
        for fam in &s.families {
            for m in -5..=5 {
                let (x, y) = fam.point(&Int::from(m));
                assert!(
                    c.evaluate(&x, &y).is_zero(),
                    "{c:?} family {fam:?} at m={m}"
                );
            }
        }
        for x in -50i64..=50 {
            for y in -50i64..=50 {
                let (x, y) = (Int::from(x), Int::from(y));
                if c.evaluate(&x, &y).is_zero() {
                    assert!(!s.complete || s.contains(&x, &y), "{c:?} misses {x},{y}");
                } else {
                    assert!(!s.contains(&x, &y), "{c:?} wrongly contains {x},{y}");
                }
            }
        }
    }

    #[test]
    fn exchange_example_conics() {
        let plus = Conic::new(5, 2, -7, 5, 8, 0);
        let minus = Conic::new(5, 2, -7, 5, 6, 0);
        let a = solve_conic(&plus, 0).unwrap();
        let b = solve_conic(&minus, 0).unwrap();
        assert!(a.complete && b.complete && a.is_finite() && b.is_finite());
        let mut all: Vec<_> = a.points.iter().chain(&b.points).cloned().collect();
        all.sort();
        all.dedup();
        assert_eq!(all, vec![pt(-1, 0), pt(0, 0)]);
        assert_eq!(plus.discriminant(), Int::from(144));
        sweep(&plus, &a);
        sweep(&minus, &b);
    }

    #[test]
    fn circle() {
        let c = Conic::new(1, 0, 1, 0, 0, -1);
        let s = solve_conic(&c, 0).unwrap();
        assert!(s.complete);
        assert_eq!(s.points, vec![pt(-1, 0), pt(0, -1), pt(0, 1), pt(1, 0)]);
    }

    #[test]
    fn pell_is_bounded() {
        let c = Conic::new(1, 0, -2, 0, 0, -1);
        let s = solve_conic(&c, 100).unwrap();
        assert!(!s.complete);
        assert_eq!(s.bound_used, Some(100));
        for p in [pt(1, 0), pt(3, 2), pt(17, 12), pt(99, 70), pt(-3, -2)] {
            assert!(s.points.contains(&p), "{p:?}");
        }
        assert_eq!(s.points.len(), 14);
    }

    #[test]
    fn zero_conic_is_rejected() {
        assert!(matches!(
            solve_conic(&Conic::new(0, 0, 0, 0, 0, 0), 5),
            Err(Error::ZeroConic)
        ));
    }

    #[test]
    fn degenerate_and_parabolic_cases() {
        let cases = [
            Conic::new(0, 0, 0, 2, 4, -6),  // line
            Conic::new(0, 0, 0, 2, 4, -5),  // no integer point
            Conic::new(0, 0, 0, 0, 0, 3),   // empty
            Conic::new(0, 1, 0, 0, 0, -6),  // xy = 6
            Conic::new(0, 1, 0, 1, 1, 1),   // (x+1)(y+1) = 0
            Conic::new(1, 0, 0, 0, -1, 0),  // y = x²
            Conic::new(1, 2, 1, 0, 0, -4),  // (x+y)² = 4
            Conic::new(1, 2, 1, 3, 5, 1),   // parabola with tilted axis
            Conic::new(0, 0, 3, 2, 0, 0),   // x = −3y²/2
            Conic::new(1, 0, -1, 0, 0, 0),  // x² = y²
            Conic::new(2, -3, -2, 1, 1, 0), // split, D = 25
            Conic::new(1, 1, 1, -3, 2, -7), // ellipse
            Conic::new(4, 4, 1, 0, 0, 1),   // (2x+y)² = −1
        ];
        for c in &cases {
            let s = solve_conic(c, 0).unwrap();
            assert!(s.complete, "{c:?}");
            sweep(c, &s);
        }
    }

    #[test]
    fn random_conics_pass_the_sweep() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        let mut checked = 0;
        while checked < 300 {
            let k: Vec<i64> = (0..6).map(|_| rng.gen_range(-6..=6)).collect();
            let c = Conic::new(k[0], k[1], k[2], k[3], k[4], k[5]);
            if c.is_zero() {
                continue;
            }
            let s = solve_conic(&c, 20).unwrap();
            sweep(&c, &s);
            checked += 1;
        }
    }
}
