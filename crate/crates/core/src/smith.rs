//! Smith normal form of 2×2 integer matrices with explicit unimodular transforms.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::int::Int;
use crate::mat2::Mat2;

/// `U·A·V = diag(d1, d2)` with `U`, `V` unimodular, `0 ≤ d1`, `d1 | d2`, `d2 ≥ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub u: Mat2<Int>,
    pub v: Mat2<Int>,
    pub d1: Int,
    pub d2: Int,
}

impl SmithForm {
    pub fn diagonal(&self) -> Mat2<Int> {
        Mat2::diag(self.d1.clone(), self.d2.clone())
    }

    /// Checks every invariant against the source matrix.
    pub fn verify(&self, a: &Mat2<Int>) -> bool {
        self.u.det().is_unit()
            && self.v.det().is_unit()
            && &(&self.u * a) * &self.v == self.diagonal()
            && !self.d1.is_negative()
            && !self.d2.is_negative()
            && self.d1.divides(&self.d2)
    }

    /// `A = U⁻¹·diag(d1, d2)·V⁻¹`.
    pub fn reconstruct(&self) -> Mat2<Int> {
        let ui = self.u.inverse().expect("U is unimodular");
        let vi = self.v.inverse().expect("V is unimodular");
        &(&ui * &self.diagonal()) * &vi
    }
}

impl Serialize for SmithForm {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("SmithForm", 3)?;
        s.serialize_field("U", &self.u)?;
        s.serialize_field("D", &[&self.d1, &self.d2])?;
        s.serialize_field("V", &self.v)?;
        s.end()
    }
}

/// Working state: `u·A·v = m` holds after every step.
struct Reduction {
    m: [Int; 4],
    u: [Int; 4],
    v: [Int; 4],
}

impl Reduction {
    fn swap_rows(&mut self) {
        self.m.swap(0, 2);
        self.m.swap(1, 3);
        self.u.swap(0, 2);
        self.u.swap(1, 3);
    }

    fn swap_cols(&mut self) {
        self.m.swap(0, 1);
        self.m.swap(2, 3);
        self.v.swap(0, 1);
        self.v.swap(2, 3);
    }

    /// row[dst] += k·row[src] on `m` and `u`.
    fn add_row(&mut self, dst: usize, src: usize, k: &Int) {
        for mat in [&mut self.m, &mut self.u] {
            for c in 0..2 {
                let delta = k * &mat[2 * src + c];
                mat[2 * dst + c] += &delta;
            }
        }
    }

    /// col[dst] += k·col[src] on `m` and `v`.
    fn add_col(&mut self, dst: usize, src: usize, k: &Int) {
        for mat in [&mut self.m, &mut self.v] {
            for r in 0..2 {
                let delta = k * &mat[2 * r + src];
                mat[2 * r + dst] += &delta;
            }
        }
    }

    fn negate_row(&mut self, r: usize) {
        for mat in [&mut self.m, &mut self.u] {
            for c in 0..2 {
                mat[2 * r + c] = -&mat[2 * r + c];
            }
        }
    }

    fn negate_col(&mut self, c: usize) {
        for mat in [&mut self.m, &mut self.v] {
            for r in 0..2 {
                mat[2 * r + c] = -&mat[2 * r + c];
            }
        }
    }

    /// Smallest nonzero |entry|, ties broken in row-major order.
    fn pivot(&self) -> Option<usize> {
        let mut best: Option<(usize, Int)> = None;
        for (i, x) in self.m.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let a = x.abs();
            if best.as_ref().is_none_or(|(_, b)| a < *b) {
                best = Some((i, a));
            }
        }
        best.map(|(i, _)| i)
    }
}

/// Smith normal form by Euclidean row and column steps.
///
/// Every elementary operation is applied to the running `U` or `V`, so
/// `U·A·V = diag(d1, d2)` holds by construction. Both diagonal entries are
/// normalized to be non-negative; the sign fix for `d2` is recorded in `V`.
pub fn smith_form(a: &Mat2<Int>) -> SmithForm {
    let one = || Int::one();
    let zero = || Int::zero();
    let mut st = Reduction {
        m: a.entries().clone(),
        u: [one(), zero(), zero(), one()],
        v: [one(), zero(), zero(), one()],
    };

    while let Some(p) = st.pivot() {
        if p >= 2 {
            st.swap_rows();
        }
        if p % 2 == 1 {
            st.swap_cols();
        }
        let q = st.m[2].div_floor(&st.m[0]);
        st.add_row(1, 0, &-q);
        let q = st.m[1].div_floor(&st.m[0]);
        st.add_col(1, 0, &-q);
        if !st.m[1].is_zero() || !st.m[2].is_zero() {
            continue;
        }
        if st.m[0].divides(&st.m[3]) {
            break;
        }
        // gcd(d1, d2) enters the first row; the next pivot is strictly smaller.
        st.add_row(0, 1, &one());
    }

    if st.m[0].is_negative() {
        st.negate_row(0);
    }
    if st.m[3].is_negative() {
        st.negate_col(1);
    }

    let [u0, u1, u2, u3] = st.u;
    let [v0, v1, v2, v3] = st.v;
    let [d1, _, _, d2] = st.m;
    SmithForm {
        u: Mat2::int(u0, u1, u2, u3),
        v: Mat2::int(v0, v1, v2, v3),
        d1,
        d2,
    }
}

/// Whether `U·A·U⁻¹ = B`, for unimodular `U`.
pub fn conjugating_pair_check(a: &Mat2<Int>, b: &Mat2<Int>, u: &Mat2<Int>) -> Result<bool> {
    let u_inv = u
        .inverse()
        .ok_or_else(|| Error::NotUnimodular(u.format()))?;
    Ok(&(u * a) * &u_inv == *b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: Mat2<Int>, d1: i64, d2: i64) -> SmithForm {
        let s = smith_form(&a);
        assert!(s.verify(&a), "{a:?} -> {s:?}");
        assert_eq!(
            (s.d1.clone(), s.d2.clone()),
            (Int::from(d1), Int::from(d2)),
            "{a:?}"
        );
        s
    }

    #[test]
    fn worked_examples() {
        check(Mat2::int(6, 10, 0, 0), 2, 0);
        check(Mat2::int(5, 5, 7, 7), 1, 0);
        let id = check(Mat2::identity(), 1, 1);
        assert_eq!(id.u, Mat2::identity());
        assert_eq!(id.v, Mat2::identity());
        check(Mat2::diag(3, 12), 3, 12);
    }

    #[test]
    fn zero_matrix_uses_identity_transforms() {
        let s = check(Mat2::zero(), 0, 0);
        assert_eq!(s.u, Mat2::identity());
        assert_eq!(s.v, Mat2::identity());
    }

    #[test]
    fn non_divisible_diagonal_is_fixed() {
        check(Mat2::diag(4, 6), 2, 12);
        check(Mat2::diag(-3, 5), 1, 15);
        check(Mat2::int(2, 4, 6, 8), 2, 4);
    }

    #[test]
    fn large_entries() {
        let big: Int = "1000000000000000000000".parse().unwrap();
        let a = Mat2::int(
            big.clone(),
            Int::from(6),
            Int::from(0),
            &big * &Int::from(3),
        );
        let s = smith_form(&a);
        assert!(s.verify(&a));
        assert_eq!(&s.d1 * &s.d2, a.det().abs());
    }

    #[test]
    fn conjugation_examples() {
        let a = Mat2::int(5, 5, 7, 7);
        let b = Mat2::int(12, 5, 0, 0);
        let u = Mat2::int(3, -2, -7, 5);
        assert!(conjugating_pair_check(&a, &b, &u).unwrap());
        assert!(conjugating_pair_check(&Mat2::identity(), &Mat2::identity(), &u).unwrap());
        assert!(!conjugating_pair_check(&a, &b, &Mat2::identity()).unwrap());
        assert!(matches!(
            conjugating_pair_check(&a, &b, &Mat2::diag(2, 1)),
            Err(Error::NotUnimodular(_))
        ));
    }

    #[test]
    fn json_shape() {
        let s = smith_form(&Mat2::identity());
        assert_eq!(
            serde_json::to_string(&s).unwrap(),
            r#"{"U":[[1,0],[0,1]],"D":[1,1],"V":[[1,0],[0,1]]}"#
        );
    }
}
