//! Constructive unitizers for 2×2 integer matrices.
//!
//! A unitizer for `A` against `X` is a matrix `Y` making `A + Y(XA − I₂)`
//! invertible. Unitizers depend on `X`, so producers are modelled as
//! [`UnitizerOracle`]s (maps `X ↦ Y` for a fixed target `A`) and every
//! produced `Y` is checked by recomputing the determinant before it is
//! handed out as a [`UnitizerCertificate`].

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::int::Int;
use crate::mat2::Mat2;
use crate::matn::MatN;
use crate::smith::smith_form;
use crate::sr1::{is_sr1_integer, unitizer_combination, Sr1Reason};

/// A validated unitizer: `det(A + Y(XA − I₂)) = unit_value ∈ {−1, 1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnitizerCertificate {
    #[serde(rename = "A")]
    pub a: Mat2<Int>,
    #[serde(rename = "X")]
    pub x: Mat2<Int>,
    #[serde(rename = "Y")]
    pub y: Mat2<Int>,
    pub unit_value: Int,
}

impl UnitizerCertificate {
    pub fn new(a: Mat2<Int>, x: Mat2<Int>, y: Mat2<Int>) -> Result<Self> {
        let value = unitizer_combination(&a, &x, &y).det();
        if !value.is_unit() {
            return Err(Error::InvalidCertificate { value });
        }
        Ok(UnitizerCertificate {
            a,
            x,
            y,
            unit_value: value,
        })
    }

    pub fn verify(&self) -> bool {
        let v = unitizer_combination(&self.a, &self.x, &self.y).det();
        v.is_unit() && v == self.unit_value
    }
}

/// Produces a unitizer for a fixed target matrix, for any `X`.
pub trait UnitizerOracle: Send + Sync {
    fn target(&self) -> &Mat2<Int>;

    /// Candidate unitizer; not yet validated.
    fn unitizer(&self, x: &Mat2<Int>) -> Mat2<Int>;

    fn certify(&self, x: &Mat2<Int>) -> Result<UnitizerCertificate> {
        UnitizerCertificate::new(self.target().clone(), x.clone(), self.unitizer(x))
    }
}

impl<O: UnitizerOracle + ?Sized> UnitizerOracle for &O {
    fn target(&self) -> &Mat2<Int> {
        (**self).target()
    }

    fn unitizer(&self, x: &Mat2<Int>) -> Mat2<Int> {
        (**self).unitizer(x)
    }
}

impl<O: UnitizerOracle + ?Sized> UnitizerOracle for Box<O> {
    fn target(&self) -> &Mat2<Int> {
        (**self).target()
    }

    fn unitizer(&self, x: &Mat2<Int>) -> Mat2<Int> {
        (**self).unitizer(x)
    }
}

fn require_unit(u: &Mat2<Int>) -> Result<Mat2<Int>> {
    u.inverse().ok_or_else(|| Error::NotUnit(u.format()))
}

/// Units: `Y = 0`.
#[derive(Debug, Clone)]
pub struct UnitOracle {
    a: Mat2<Int>,
}

impl UnitOracle {
    pub fn new(a: Mat2<Int>) -> Result<Self> {
        require_unit(&a)?;
        Ok(UnitOracle { a })
    }
}

impl UnitizerOracle for UnitOracle {
    fn target(&self) -> &Mat2<Int> {
        &self.a
    }

    fn unitizer(&self, _x: &Mat2<Int>) -> Mat2<Int> {
        Mat2::zero()
    }
}

/// The zero matrix: `Y = −I₂` turns `0 + Y(X·0 − I₂)` into `I₂`.
#[derive(Debug, Clone)]
pub struct ZeroOracle {
    a: Mat2<Int>,
}

impl Default for ZeroOracle {
    fn default() -> Self {
        ZeroOracle { a: Mat2::zero() }
    }
}

impl UnitizerOracle for ZeroOracle {
    fn target(&self) -> &Mat2<Int> {
        &self.a
    }

    fn unitizer(&self, _x: &Mat2<Int>) -> Mat2<Int> {
        Mat2::diag(-1, -1)
    }
}

/// Position of the single nonzero entry of `r·E_ij`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Position {
    E11,
    E12,
    E21,
    E22,
}

/// `r·E_ij` with the closed forms (for `X = [[a, b], [c, d]]`)
/// `[[0,1],[1,a]]`, `[[1,0],[c,1]]`, `[[1,b],[0,1]]`, `[[d,1],[1,0]]`.
#[derive(Debug, Clone)]
pub struct ElementaryOracle {
    position: Position,
    a: Mat2<Int>,
}

impl ElementaryOracle {
    pub fn new(r: Int, position: Position) -> Self {
        let z = Int::zero;
        let a = match position {
            Position::E11 => Mat2::int(r, z(), z(), z()),
            Position::E12 => Mat2::int(z(), r, z(), z()),
            Position::E21 => Mat2::int(z(), z(), r, z()),
            Position::E22 => Mat2::int(z(), z(), z(), r),
        };
        ElementaryOracle { position, a }
    }
}

impl UnitizerOracle for ElementaryOracle {
    fn target(&self) -> &Mat2<Int> {
        &self.a
    }

    fn unitizer(&self, x: &Mat2<Int>) -> Mat2<Int> {
        let (o, z) = (Int::one, Int::zero);
        match self.position {
            Position::E11 => Mat2::int(z(), o(), o(), x.a11().clone()),
            Position::E12 => Mat2::int(o(), z(), x.a21().clone(), o()),
            Position::E21 => Mat2::int(o(), x.a12().clone(), z(), o()),
            Position::E22 => Mat2::int(x.a22().clone(), o(), o(), z()),
        }
    }
}

/// Certificate for `r·E₁₁` against `X`; the unit value is always `−1`.
pub fn unitizer_re11_2x2(r: &Int, x: &Mat2<Int>) -> Result<UnitizerCertificate> {
    ElementaryOracle::new(r.clone(), Position::E11).certify(x)
}

/// Certificate for a unit `A`: `Y = 0`, unit value `det(A)`.
pub fn unitizer_unit(a: &Mat2<Int>, x: &Mat2<Int>) -> Result<UnitizerCertificate> {
    UnitOracle::new(a.clone())?.certify(x)
}

/// Unitizer for `r·E₁₁` in `n×n` matrices, `2 ≤ n ≤ 6`.
///
/// `Y` is the anti-diagonal permutation matrix plus `X₁₁` in position
/// `(n, n)`. Returns `Y` and `det(rE₁₁ + Y(X·rE₁₁ − Iₙ))`, which equals
/// `(−1)^(n(n+1)/2)`.
pub fn unitizer_re11_nxn(r: &Int, x: &MatN<Int>) -> Result<(MatN<Int>, Int)> {
    let n = x.dim();
    let a1 = x.get(0, 0).clone();
    let y = MatN::from_fn(n, |i, j| {
        let mut v = if i + j == n - 1 {
            Int::one()
        } else {
            Int::zero()
        };
        if i == n - 1 && j == n - 1 {
            v += &a1;
        }
        v
    })?;
    let a = MatN::from_fn(n, |i, j| {
        if i == 0 && j == 0 {
            r.clone()
        } else {
            Int::zero()
        }
    })?;
    let xa_minus_i = (x * &a).sub(&a.identity_like())?;
    let value = a.add(&(&y * &xa_minus_i))?.det();
    if !value.is_unit() {
        return Err(Error::InvalidCertificate { value });
    }
    Ok((y, value))
}

/// `[[r, s], [0, 0]]` with `gcd(r, s) = 1`: the `X`-independent unitizer
/// `[[0, 0], [z₀, t₀]]` where `s·z₀ − r·t₀ = 1`.
#[derive(Debug, Clone)]
pub struct ZeroRowCoprimeOracle {
    a: Mat2<Int>,
    y: Mat2<Int>,
}

impl ZeroRowCoprimeOracle {
    pub fn new(r: &Int, s: &Int) -> Result<Self> {
        let (g, p, q) = Int::extended_gcd(r, s);
        if !g.is_one() {
            return Err(Error::NotCoprime {
                r: r.clone(),
                s: s.clone(),
            });
        }
        // p·r + q·s = 1, so z₀ = q, t₀ = −p is one solution; shift z₀ into [0, |r|).
        let (z0, t0) = if r.is_zero() {
            (q, -p)
        } else {
            let z0 = q.mod_floor(&r.abs());
            let t0 = (&(s * &z0) - &Int::one())
                .div_exact(r)
                .expect("s·z0 ≡ 1 (mod r)");
            (z0, t0)
        };
        Ok(ZeroRowCoprimeOracle {
            a: Mat2::int(r.clone(), s.clone(), Int::zero(), Int::zero()),
            y: Mat2::int(Int::zero(), Int::zero(), z0, t0),
        })
    }
}

impl UnitizerOracle for ZeroRowCoprimeOracle {
    fn target(&self) -> &Mat2<Int> {
        &self.a
    }

    fn unitizer(&self, _x: &Mat2<Int>) -> Mat2<Int> {
        self.y.clone()
    }
}

pub fn unitizer_zero_row_coprime(r: &Int, s: &Int, x: &Mat2<Int>) -> Result<UnitizerCertificate> {
    ZeroRowCoprimeOracle::new(r, s)?.certify(x)
}

/// `[[r, ±r], [0, 0]]` with `Y = [[1, 0], [a + c + 1, 1]]` (plus sign) or
/// `Y = [[1, 0], [−a + c − 1, 1]]` (minus sign).
#[derive(Debug, Clone)]
pub struct EqualEntriesOracle {
    a: Mat2<Int>,
    negated: bool,
}

impl EqualEntriesOracle {
    pub fn new(r: &Int, sign: i32) -> Result<Self> {
        let negated = match sign {
            1 => false,
            -1 => true,
            _ => {
                return Err(Error::InvalidArgument(format!(
                    "sign must be +1 or -1, got {sign}"
                )))
            }
        };
        let s = if negated { -r } else { r.clone() };
        Ok(EqualEntriesOracle {
            a: Mat2::int(r.clone(), s, Int::zero(), Int::zero()),
            negated,
        })
    }
}

impl UnitizerOracle for EqualEntriesOracle {
    fn target(&self) -> &Mat2<Int> {
        &self.a
    }

    fn unitizer(&self, x: &Mat2<Int>) -> Mat2<Int> {
        let (a, c) = (x.a11(), x.a21());
        let lower = if self.negated {
            &(c - a) - &Int::one()
        } else {
            &(a + c) + &Int::one()
        };
        Mat2::int(Int::one(), Int::zero(), lower, Int::one())
    }
}

pub fn unitizer_equal_entries(r: &Int, x: &Mat2<Int>, sign: i32) -> Result<UnitizerCertificate> {
    EqualEntriesOracle::new(r, sign)?.certify(x)
}

/// `M_uv = [[1, u], [v, uv]]` with `Y = [[0, 1], [−1, v − u − a − vb − uc − uvd]]`,
/// unit value `+1`.
///
/// For `Y = [[0, 1], [−1, t]]` the determinant is `1 − Tr(X·M_uv) − t + v − u`,
/// so `t` absorbs the `v − u` term.
#[derive(Debug, Clone)]
pub struct MuvOracle {
    u: Int,
    v: Int,
    a: Mat2<Int>,
}

impl MuvOracle {
    pub fn new(u: &Int, v: &Int) -> Self {
        MuvOracle {
            u: u.clone(),
            v: v.clone(),
            a: Mat2::int(Int::one(), u.clone(), v.clone(), u * v),
        }
    }
}

impl UnitizerOracle for MuvOracle {
    fn target(&self) -> &Mat2<Int> {
        &self.a
    }

    fn unitizer(&self, x: &Mat2<Int>) -> Mat2<Int> {
        let [a, b, c, d] = x.entries();
        let uv = &self.u * &self.v;
        let t = &(&(&(&(&self.v - &self.u) - a) - &(&self.v * b)) - &(&self.u * c)) - &(&uv * d);
        Mat2::int(Int::zero(), Int::one(), Int::from(-1), t)
    }
}

pub fn unitizer_muv(u: &Int, v: &Int, x: &Mat2<Int>) -> Result<UnitizerCertificate> {
    MuvOracle::new(u, v).certify(x)
}

/// `p·t + q·c + r·a = m` over ℤ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinearDiophantine3 {
    pub p: Int,
    pub q: Int,
    pub r: Int,
    pub m: Int,
}

/// All solutions: `base + k₁·dir1 + k₂·dir2` for `k₁, k₂ ∈ ℤ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diophantine3Family {
    pub base: [Int; 3],
    pub dir1: [Int; 3],
    pub dir2: [Int; 3],
}

impl Diophantine3Family {
    pub fn point(&self, k1: &Int, k2: &Int) -> [Int; 3] {
        std::array::from_fn(|i| &(&self.base[i] + &(k1 * &self.dir1[i])) + &(k2 * &self.dir2[i]))
    }
}

impl LinearDiophantine3 {
    pub fn new(p: impl Into<Int>, q: impl Into<Int>, r: impl Into<Int>, m: impl Into<Int>) -> Self {
        LinearDiophantine3 {
            p: p.into(),
            q: q.into(),
            r: r.into(),
            m: m.into(),
        }
    }

    pub fn evaluate(&self, t: &Int, c: &Int, a: &Int) -> Int {
        &(&(&self.p * t) + &(&self.q * c)) + &(&self.r * a)
    }

    pub fn is_solvable(&self) -> bool {
        self.p.gcd(&self.q).gcd(&self.r).divides(&self.m)
    }

    /// Parametrized solution set, or `None` when `gcd(p, q, r) ∤ m`.
    ///
    /// Requires `(p, q) ≠ (0, 0)`; with `g₁ = gcd(p, q) = s₁p + t₁q` and
    /// `g = gcd(g₁, r) = s₂g₁ + t₂r` the kernel is spanned by
    /// `(q/g₁, −p/g₁, 0)` and `(s₁r/g, t₁r/g, −g₁/g)`.
    pub fn solve(&self) -> Option<Diophantine3Family> {
        if self.p.is_zero() && self.q.is_zero() {
            return None;
        }
        let (g1, s1, t1) = Int::extended_gcd(&self.p, &self.q);
        let (g, s2, t2) = Int::extended_gcd(&g1, &self.r);
        let k = self.m.div_exact(&g)?;
        let base = [&(&k * &s2) * &s1, &(&k * &s2) * &t1, &k * &t2];
        let dir1 = [
            self.q.div_exact(&g1).expect("g1 | q"),
            -self.p.div_exact(&g1).expect("g1 | p"),
            Int::zero(),
        ];
        let rg = self.r.div_exact(&g).expect("g | r");
        let dir2 = [&s1 * &rg, &t1 * &rg, -g1.div_exact(&g).expect("g | g1")];
        Some(Diophantine3Family { base, dir1, dir2 })
    }

    /// The first unknown given the other two, when it is an integer.
    pub fn solve_first(&self, c: &Int, a: &Int) -> Option<Int> {
        let rest = &(&self.m - &(&self.q * c)) - &(&self.r * a);
        rest.div_exact(&self.p)
    }
}

/// Which of the two residue-class-1 unitizers to use for `[[6, 10], [0, 0]]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TableVariant {
    #[default]
    Primary,
    Alternative,
}

/// The table row used for `c mod 3`: shape of `Y` and the right-hand side of
/// `3t + 5c + 3a = m` that `t` solves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableCase {
    pub residue: u64,
    /// `Y = [[0, −sign], [sign, t]]`.
    pub sign: i64,
    pub equation: LinearDiophantine3,
}

pub fn table_case_6_10(c: &Int, variant: TableVariant) -> TableCase {
    let residue = c.rem_euclid_u64(3);
    let (sign, m) = match (residue, variant) {
        (0, _) => (1, 6),
        (1, TableVariant::Primary) => (1, 5),
        (1, TableVariant::Alternative) => (-1, -4),
        _ => (-1, -5),
    };
    TableCase {
        residue,
        sign,
        equation: LinearDiophantine3::new(3, 5, 3, m),
    }
}

/// `[[6, 10], [0, 0]]` with unitizers `[[0, ∓1], [±1, t]]`, `t` chosen by `c mod 3`.
#[derive(Debug, Clone)]
pub struct Table610Oracle {
    a: Mat2<Int>,
    variant: TableVariant,
}

impl Table610Oracle {
    pub fn new(variant: TableVariant) -> Self {
        Table610Oracle {
            a: Mat2::int(6, 10, 0, 0),
            variant,
        }
    }
}

impl UnitizerOracle for Table610Oracle {
    fn target(&self) -> &Mat2<Int> {
        &self.a
    }

    fn unitizer(&self, x: &Mat2<Int>) -> Mat2<Int> {
        let (a, c) = (x.a11(), x.a21());
        let case = table_case_6_10(c, self.variant);
        let t = case
            .equation
            .solve_first(c, a)
            .unwrap_or_else(|| panic!("table row {} used outside its residue class", case.residue));
        Mat2::int(Int::zero(), Int::from(-case.sign), Int::from(case.sign), t)
    }
}

pub fn unitizer_diophantine_6_10(
    x: &Mat2<Int>,
    variant: TableVariant,
) -> Result<UnitizerCertificate> {
    Table610Oracle::new(variant).certify(x)
}

/// Oracle for `u·A`: `Y_{uA}(X) = u·Y_A(X·u)`.
#[derive(Debug, Clone)]
pub struct LeftMul<B> {
    u: Mat2<Int>,
    target: Mat2<Int>,
    base: B,
}

impl<B: UnitizerOracle> LeftMul<B> {
    pub fn new(u: &Mat2<Int>, base: B) -> Result<Self> {
        require_unit(u)?;
        Ok(LeftMul {
            target: u * base.target(),
            u: u.clone(),
            base,
        })
    }
}

impl<B: UnitizerOracle> UnitizerOracle for LeftMul<B> {
    fn target(&self) -> &Mat2<Int> {
        &self.target
    }

    fn unitizer(&self, x: &Mat2<Int>) -> Mat2<Int> {
        &self.u * &self.base.unitizer(&(x * &self.u))
    }
}

/// Oracle for `u⁻¹·A·u`: `Y(X) = u⁻¹·Y_A(u·X·u⁻¹)·u`.
#[derive(Debug, Clone)]
pub struct Conjugate<B> {
    u: Mat2<Int>,
    u_inv: Mat2<Int>,
    target: Mat2<Int>,
    base: B,
}

impl<B: UnitizerOracle> Conjugate<B> {
    pub fn new(u: &Mat2<Int>, base: B) -> Result<Self> {
        let u_inv = require_unit(u)?;
        Ok(Conjugate {
            target: &(&u_inv * base.target()) * u,
            u: u.clone(),
            u_inv,
            base,
        })
    }
}

impl<B: UnitizerOracle> UnitizerOracle for Conjugate<B> {
    fn target(&self) -> &Mat2<Int> {
        &self.target
    }

    fn unitizer(&self, x: &Mat2<Int>) -> Mat2<Int> {
        let inner = &(&self.u * x) * &self.u_inv;
        &(&self.u_inv * &self.base.unitizer(&inner)) * &self.u
    }
}

/// Oracle for `A·u`: `Y_{Au}(X) = Y_A(u·X)·u`.
#[derive(Debug, Clone)]
pub struct RightMul<B> {
    u: Mat2<Int>,
    target: Mat2<Int>,
    base: B,
}

impl<B: UnitizerOracle> RightMul<B> {
    pub fn new(u: &Mat2<Int>, base: B) -> Result<Self> {
        require_unit(u)?;
        Ok(RightMul {
            target: base.target() * u,
            u: u.clone(),
            base,
        })
    }
}

impl<B: UnitizerOracle> UnitizerOracle for RightMul<B> {
    fn target(&self) -> &Mat2<Int> {
        &self.target
    }

    fn unitizer(&self, x: &Mat2<Int>) -> Mat2<Int> {
        &self.base.unitizer(&(&self.u * x)) * &self.u
    }
}

pub fn propagate_left_mul(
    u: &Mat2<Int>,
    base: &dyn UnitizerOracle,
    x: &Mat2<Int>,
) -> Result<UnitizerCertificate> {
    LeftMul::new(u, base)?.certify(x)
}

pub fn propagate_conjugate(
    u: &Mat2<Int>,
    base: &dyn UnitizerOracle,
    x: &Mat2<Int>,
) -> Result<UnitizerCertificate> {
    Conjugate::new(u, base)?.certify(x)
}

pub fn propagate_right_mul(
    u: &Mat2<Int>,
    base: &dyn UnitizerOracle,
    x: &Mat2<Int>,
) -> Result<UnitizerCertificate> {
    RightMul::new(u, base)?.certify(x)
}

/// Unitizer oracle for any integral matrix with stable range one.
///
/// Units use `Y = 0` and the zero matrix `Y = −I₂`. A singular nonzero `A`
/// has Smith form `U·A·V = diag(g, 0)`, so `A = U⁻¹·(g·E₁₁)·V⁻¹` and the
/// `g·E₁₁` closed form is carried through a right then a left multiplication.
pub fn unitizer_oracle(a: &Mat2<Int>) -> Result<Box<dyn UnitizerOracle>> {
    match is_sr1_integer(a).reason {
        Sr1Reason::Unit => Ok(Box::new(UnitOracle::new(a.clone())?)),
        Sr1Reason::DeterminantObstruction(det) => Err(Error::DeterminantObstruction { det }),
        Sr1Reason::ZeroDeterminant if a.is_zero() => Ok(Box::new(ZeroOracle::default())),
        Sr1Reason::ZeroDeterminant => {
            let s = smith_form(a);
            debug_assert!(s.d2.is_zero());
            let u_inv = s.u.inverse().expect("U is unimodular");
            let v_inv = s.v.inverse().expect("V is unimodular");
            let base = ElementaryOracle::new(s.d1, Position::E11);
            let oracle = LeftMul::new(&u_inv, RightMul::new(&v_inv, base)?)?;
            debug_assert_eq!(oracle.target(), a);
            Ok(Box::new(oracle))
        }
    }
}

/// Certificate for `A` against `X` via [`unitizer_oracle`].
pub fn find_unitizer(a: &Mat2<Int>, x: &Mat2<Int>) -> Result<UnitizerCertificate> {
    unitizer_oracle(a)?.certify(x)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchOutcome {
    Found(UnitizerCertificate),
    NotFoundWithinBound(u64),
}

impl SearchOutcome {
    pub fn certificate(&self) -> Option<&UnitizerCertificate> {
        match self {
            SearchOutcome::Found(c) => Some(c),
            SearchOutcome::NotFoundWithinBound(_) => None,
        }
    }
}

/// First `Y ∈ [−bound, bound]⁴` in lexicographic order `(y11, y12, y21, y22)`
/// that is a unitizer for `A` against `X`.
pub fn search_unitizer_bounded(a: &Mat2<Int>, x: &Mat2<Int>, bound: u64) -> SearchOutcome {
    let b = bound as i64;
    let xa_minus_i = &(x * a) - &Mat2::identity();
    let found = (-b..=b).into_par_iter().find_map_first(|y11| {
        for y12 in -b..=b {
            for y21 in -b..=b {
                for y22 in -b..=b {
                    let y = Mat2::int(y11, y12, y21, y22);
                    if (a + &(&y * &xa_minus_i)).det().is_unit() {
                        return Some(y);
                    }
                }
            }
        }
        None
    });
    match found {
        Some(y) => SearchOutcome::Found(
            UnitizerCertificate::new(a.clone(), x.clone(), y).expect("search hit is a unitizer"),
        ),
        None => SearchOutcome::NotFoundWithinBound(bound),
    }
}
