//! Smith normal form over the integers.
//!
//! Elimination uses the smallest nonzero entry (by absolute value) of the
//! active submatrix as pivot, ties broken by lowest row then lowest column.
//! The work is first attempted in checked `i64` arithmetic; if any entry of the
//! matrix or of the tracked transforms overflows, the whole computation is
//! redone with `BigInt`, so results are always exact.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::IntMatrix;

#[derive(Debug)]
struct Overflow;

trait Scalar: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    /// `|self| < |other|`
    fn abs_lt(&self, other: &Self) -> bool;
    /// Truncated quotient.
    fn quot(&self, d: &Self) -> Result<Self, Overflow>;
    /// Whether `self` (nonzero) divides `x`.
    fn divides(&self, x: &Self) -> bool;
    /// `self -= q * x`
    fn sub_mul(&mut self, q: &Self, x: &Self) -> Result<(), Overflow>;
    /// `self += q * x`
    fn add_mul(&mut self, q: &Self, x: &Self) -> Result<(), Overflow>;
    fn negate(&mut self) -> Result<(), Overflow>;
    fn from_big(x: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigInt;
}

impl Scalar for i64 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.unsigned_abs() < other.unsigned_abs()
    }
    fn quot(&self, d: &Self) -> Result<Self, Overflow> {
        self.checked_div(*d).ok_or(Overflow)
    }
    fn divides(&self, x: &Self) -> bool {
        x.checked_rem(*self) == Some(0)
    }
    fn sub_mul(&mut self, q: &Self, x: &Self) -> Result<(), Overflow> {
        let p = q.checked_mul(*x).ok_or(Overflow)?;
        *self = self.checked_sub(p).ok_or(Overflow)?;
        Ok(())
    }
    fn add_mul(&mut self, q: &Self, x: &Self) -> Result<(), Overflow> {
        let p = q.checked_mul(*x).ok_or(Overflow)?;
        *self = self.checked_add(p).ok_or(Overflow)?;
        Ok(())
    }
    fn negate(&mut self) -> Result<(), Overflow> {
        *self = self.checked_neg().ok_or(Overflow)?;
        Ok(())
    }
    fn from_big(x: &BigInt) -> Option<Self> {
        // keep headroom so that products of two entries are detected by checked ops
        x.to_i64().filter(|v| v.unsigned_abs() < (1u64 << 62))
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Scalar for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.magnitude() < other.magnitude()
    }
    fn quot(&self, d: &Self) -> Result<Self, Overflow> {
        Ok(self / d)
    }
    fn divides(&self, x: &Self) -> bool {
        Zero::is_zero(&(x % self))
    }
    fn sub_mul(&mut self, q: &Self, x: &Self) -> Result<(), Overflow> {
        *self -= q * x;
        Ok(())
    }
    fn add_mul(&mut self, q: &Self, x: &Self) -> Result<(), Overflow> {
        *self += q * x;
        Ok(())
    }
    fn negate(&mut self) -> Result<(), Overflow> {
        *self = -std::mem::take(self);
        Ok(())
    }
    fn from_big(x: &BigInt) -> Option<Self> {
        Some(x.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

#[derive(Clone)]
struct Dense<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Dense<T> {
    fn identity(n: usize) -> Self {
        let mut data = vec![T::zero(); n * n];
        for i in 0..n {
            data[i * n + i] = T::one();
        }
        Self {
            rows: n,
            cols: n,
            data,
        }
    }

    fn from_int(m: &IntMatrix) -> Option<Self> {
        let data = m
            .entries()
            .iter()
            .map(T::from_big)
            .collect::<Option<Vec<_>>>()?;
        Some(Self {
            rows: m.rows(),
            cols: m.cols(),
            data,
        })
    }

    fn to_int(&self) -> IntMatrix {
        IntMatrix::new(
            self.rows,
            self.cols,
            self.data.iter().map(T::to_big).collect(),
        )
        .expect("dimensions are consistent")
    }

    #[inline]
    fn at(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] -= q * row[src]
    fn row_sub(&mut self, dst: usize, src: usize, q: &T) -> Result<(), Overflow> {
        for j in 0..self.cols {
            let s = self.data[src * self.cols + j].clone();
            if !s.is_zero() {
                self.data[dst * self.cols + j].sub_mul(q, &s)?;
            }
        }
        Ok(())
    }

    /// col[dst] -= q * col[src]
    fn col_sub(&mut self, dst: usize, src: usize, q: &T) -> Result<(), Overflow> {
        for i in 0..self.rows {
            let s = self.data[i * self.cols + src].clone();
            if !s.is_zero() {
                self.data[i * self.cols + dst].sub_mul(q, &s)?;
            }
        }
        Ok(())
    }

    /// col[dst] += q * col[src]
    fn col_add(&mut self, dst: usize, src: usize, q: &T) -> Result<(), Overflow> {
        for i in 0..self.rows {
            let s = self.data[i * self.cols + src].clone();
            if !s.is_zero() {
                self.data[i * self.cols + dst].add_mul(q, &s)?;
            }
        }
        Ok(())
    }

    fn negate_row(&mut self, r: usize) -> Result<(), Overflow> {
        for j in 0..self.cols {
            self.data[r * self.cols + j].negate()?;
        }
        Ok(())
    }

    fn negate_col(&mut self, c: usize) -> Result<(), Overflow> {
        for i in 0..self.rows {
            self.data[i * self.cols + c].negate()?;
        }
        Ok(())
    }
}

/// Which transforms to accumulate alongside the diagonalization.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct Track {
    pub left: bool,
    pub left_inverse: bool,
    pub right: bool,
}

impl Track {
    #[cfg(test)]
    pub fn all() -> Self {
        Self {
            left: true,
            left_inverse: true,
            right: true,
        }
    }
}

/// Output of a Smith normal form computation: `U * A * V = D`.
#[derive(Clone, Debug)]
pub(crate) struct SmithParts {
    pub d: IntMatrix,
    pub u: Option<IntMatrix>,
    pub u_inv: Option<IntMatrix>,
    pub v: Option<IntMatrix>,
    pub rank: usize,
}

struct Work<T> {
    a: Dense<T>,
    u: Option<Dense<T>>,
    u_inv: Option<Dense<T>>,
    v: Option<Dense<T>>,
}

impl<T: Scalar> Work<T> {
    fn swap_rows(&mut self, x: usize, y: usize) {
        self.a.swap_rows(x, y);
        if let Some(u) = &mut self.u {
            u.swap_rows(x, y);
        }
        if let Some(ui) = &mut self.u_inv {
            ui.swap_cols(x, y);
        }
    }

    fn swap_cols(&mut self, x: usize, y: usize) {
        self.a.swap_cols(x, y);
        if let Some(v) = &mut self.v {
            v.swap_cols(x, y);
        }
    }

    /// row[dst] -= q * row[src]
    fn row_sub(&mut self, dst: usize, src: usize, q: &T) -> Result<(), Overflow> {
        self.a.row_sub(dst, src, q)?;
        if let Some(u) = &mut self.u {
            u.row_sub(dst, src, q)?;
        }
        if let Some(ui) = &mut self.u_inv {
            ui.col_add(src, dst, q)?;
        }
        Ok(())
    }

    /// row[dst] += row[src]
    fn row_add(&mut self, dst: usize, src: usize) -> Result<(), Overflow> {
        let minus_one = {
            let mut m = T::one();
            m.negate()?;
            m
        };
        self.a.row_sub(dst, src, &minus_one)?;
        if let Some(u) = &mut self.u {
            u.row_sub(dst, src, &minus_one)?;
        }
        if let Some(ui) = &mut self.u_inv {
            ui.col_sub(src, dst, &T::one())?;
        }
        Ok(())
    }

    /// col[dst] -= q * col[src]
    fn col_sub(&mut self, dst: usize, src: usize, q: &T) -> Result<(), Overflow> {
        self.a.col_sub(dst, src, q)?;
        if let Some(v) = &mut self.v {
            v.col_sub(dst, src, q)?;
        }
        Ok(())
    }

    fn negate_row(&mut self, r: usize) -> Result<(), Overflow> {
        self.a.negate_row(r)?;
        if let Some(u) = &mut self.u {
            u.negate_row(r)?;
        }
        if let Some(ui) = &mut self.u_inv {
            ui.negate_col(r)?;
        }
        Ok(())
    }

    /// Smallest nonzero |entry| in the submatrix starting at (t, t).
    fn global_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.a.rows {
            for j in t..self.a.cols {
                let x = self.a.at(i, j);
                if x.is_zero() {
                    continue;
                }
                match best {
                    None => best = Some((i, j)),
                    Some((bi, bj)) if x.abs_lt(self.a.at(bi, bj)) => best = Some((i, j)),
                    _ => {}
                }
            }
        }
        best
    }

    /// Smallest nonzero |entry| in row t and column t (both from index t).
    fn cross_pivot(&self, t: usize) -> (usize, usize) {
        let mut best = (t, t);
        for i in t..self.a.rows {
            let x = self.a.at(i, t);
            if !x.is_zero() && (self.a.at(best.0, best.1).is_zero() || x.abs_lt(self.a.at(best.0, best.1))) {
                best = (i, t);
            }
        }
        for j in t + 1..self.a.cols {
            let x = self.a.at(t, j);
            if !x.is_zero() && x.abs_lt(self.a.at(best.0, best.1)) {
                best = (t, j);
            }
        }
        best
    }

    fn run(&mut self) -> Result<usize, Overflow> {
        let (m, n) = (self.a.rows, self.a.cols);
        let mut t = 0;
        while t < m.min(n) {
            let Some((pi, pj)) = self.global_pivot(t) else {
                break;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let mut dirty = false;
                for i in t + 1..m {
                    if self.a.at(i, t).is_zero() {
                        continue;
                    }
                    let q = self.a.at(i, t).quot(self.a.at(t, t))?;
                    if !q.is_zero() {
                        self.row_sub(i, t, &q)?;
                    }
                    dirty |= !self.a.at(i, t).is_zero();
                }
                for j in t + 1..n {
                    if self.a.at(t, j).is_zero() {
                        continue;
                    }
                    let q = self.a.at(t, j).quot(self.a.at(t, t))?;
                    if !q.is_zero() {
                        self.col_sub(j, t, &q)?;
                    }
                    dirty |= !self.a.at(t, j).is_zero();
                }
                if dirty {
                    let (pi, pj) = self.cross_pivot(t);
                    self.swap_rows(t, pi);
                    self.swap_cols(t, pj);
                    continue;
                }
                let pivot = self.a.at(t, t).clone();
                let offender = (t + 1..m).find(|&i| {
                    (t + 1..n).any(|j| !pivot.divides(self.a.at(i, j)))
                });
                match offender {
                    Some(i) => self.row_add(t, i)?,
                    None => break,
                }
            }
            if self.a.at(t, t).is_negative() {
                self.negate_row(t)?;
            }
            t += 1;
        }
        Ok(t)
    }

    fn finish(self, rank: usize) -> SmithParts {
        SmithParts {
            d: self.a.to_int(),
            u: self.u.map(|u| u.to_int()),
            u_inv: self.u_inv.map(|u| u.to_int()),
            v: self.v.map(|v| v.to_int()),
            rank,
        }
    }
}

fn attempt<T: Scalar>(a: &IntMatrix, track: Track) -> Result<SmithParts, Overflow> {
    let dense = Dense::<T>::from_int(a).ok_or(Overflow)?;
    let (m, n) = (a.rows(), a.cols());
    let mut work = Work {
        a: dense,
        u: track.left.then(|| Dense::identity(m)),
        u_inv: track.left_inverse.then(|| Dense::identity(m)),
        v: track.right.then(|| Dense::identity(n)),
    };
    let rank = work.run()?;
    Ok(work.finish(rank))
}

pub(crate) fn smith_parts(a: &IntMatrix, track: Track) -> SmithParts {
    match attempt::<i64>(a, track) {
        Ok(p) => p,
        Err(Overflow) => attempt::<BigInt>(a, track).expect("BigInt arithmetic cannot overflow"),
    }
}

/// Smith normal form `(U, D, V)` with `U * A * V = D`, `U` and `V` unimodular,
/// `D` diagonal with nonnegative entries forming a divisibility chain.
pub fn smith_normal_form(a: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let parts = smith_parts(
        a,
        Track {
            left: true,
            left_inverse: false,
            right: true,
        },
    );
    (
        parts.u.expect("tracked"),
        parts.d,
        parts.v.expect("tracked"),
    )
}

/// Invariant factors (the nonzero diagonal entries of the Smith form).
pub fn invariant_factors(a: &IntMatrix) -> Vec<BigInt> {
    let parts = smith_parts(a, Track::default());
    parts.d.diagonal_entries().into_iter().take(parts.rank).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    fn check(a: &IntMatrix) -> IntMatrix {
        let (u, d, v) = smith_normal_form(a);
        assert_eq!(u.mul(a).unwrap().mul(&v).unwrap(), d);
        assert!(u.is_unimodular() && v.is_unimodular());
        assert!(d.is_smith_form(), "{}", d);
        d
    }

    #[test]
    fn identity_is_fixed() {
        let (u, d, v) = smith_normal_form(&IntMatrix::identity(2));
        assert_eq!(u, IntMatrix::identity(2));
        assert_eq!(d, IntMatrix::identity(2));
        assert_eq!(v, IntMatrix::identity(2));
    }

    #[test]
    fn zero_matrix() {
        let (u, d, v) = smith_normal_form(&m(&[vec![0]]));
        assert_eq!(u, IntMatrix::identity(1));
        assert_eq!(d, m(&[vec![0]]));
        assert_eq!(v, IntMatrix::identity(1));
    }

    #[test]
    fn two_by_two_example() {
        assert_eq!(check(&m(&[vec![2, 4], vec![6, 8]])), m(&[vec![2, 0], vec![0, 4]]));
    }

    #[test]
    fn rectangular_and_empty() {
        check(&m(&[vec![3, 6, 9], vec![2, 4, 7]]));
        check(&m(&[vec![0, 0], vec![0, 5], vec![10, 0]]));
        check(&IntMatrix::zeros(0, 3));
        check(&IntMatrix::zeros(2, 0));
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        let big = 1i64 << 61;
        let a = m(&[vec![big, big - 1], vec![big - 3, big + 5]]);
        let d = check(&a);
        assert_eq!(d[(0, 0)], BigInt::from(1));
    }

    #[test]
    fn divisibility_fix_up() {
        // diag(2, 3) is diagonal but not in Smith form
        assert_eq!(check(&m(&[vec![2, 0], vec![0, 3]])), m(&[vec![1, 0], vec![0, 6]]));
    }

    #[test]
    fn tracked_inverse_matches() {
        let a = m(&[vec![4, 6, 2], vec![1, 9, 3], vec![8, 0, 4]]);
        let p = smith_parts(&a, Track::all());
        let u = p.u.unwrap();
        let ui = p.u_inv.unwrap();
        assert_eq!(u.mul(&ui).unwrap(), IntMatrix::identity(3));
    }
}
