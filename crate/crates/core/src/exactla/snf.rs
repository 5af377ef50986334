//! Smith normal form over the integers.
//!
//! The elimination runs on checked `i64` first and restarts on `BigInt` the
//! moment any intermediate value overflows, so results are always exact.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::matrix::Matrix;

/// Unimodular transforms with `u · m · v = diag(divisors)`.
#[derive(Clone, Debug)]
pub struct SmithTransforms {
    pub u: Matrix<BigInt>,
    pub u_inv: Matrix<BigInt>,
    pub v: Matrix<BigInt>,
    pub v_inv: Matrix<BigInt>,
}

#[derive(Clone, Debug)]
pub struct Smith {
    /// Positive diagonal entries, each dividing the next; `len()` is the rank.
    pub divisors: Vec<BigInt>,
    pub transforms: Option<SmithTransforms>,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.divisors.len()
    }
}

/// Elementary divisors (nonzero diagonal of the Smith form).
pub fn smith_normal_form(m: &Matrix<BigInt>) -> Vec<BigInt> {
    smith(m, false).divisors
}

pub fn smith(m: &Matrix<BigInt>, with_transforms: bool) -> Smith {
    if let Some(small) = to_i64(m) {
        if let Some(s) = Elimination::<i64>::run(small, with_transforms) {
            return s;
        }
    }
    Elimination::<BigInt>::run(m.clone(), with_transforms).expect("bigint elimination cannot overflow")
}

fn to_i64(m: &Matrix<BigInt>) -> Option<Matrix<i64>> {
    let mut out = Matrix::filled(m.rows(), m.cols(), 0i64);
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            out.set(i, j, m.get(i, j).to_i64()?);
        }
    }
    Some(out)
}

trait Scalar: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn cmp_abs(&self, other: &Self) -> Ordering;
    fn is_negative(&self) -> bool;
    fn checked_neg(&self) -> Option<Self>;
    fn quot(&self, d: &Self) -> Option<Self>;
    fn divides(&self, other: &Self) -> bool;
    /// `self - q * b`
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self>;
    fn checked_add(&self, b: &Self) -> Option<Self>;
    fn checked_sub(&self, b: &Self) -> Option<Self>;
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
    fn cmp_abs(&self, other: &Self) -> Ordering {
        self.unsigned_abs().cmp(&other.unsigned_abs())
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn checked_neg(&self) -> Option<Self> {
        i64::checked_neg(*self)
    }
    fn quot(&self, d: &Self) -> Option<Self> {
        self.checked_div(*d)
    }
    fn divides(&self, other: &Self) -> bool {
        other.checked_rem(*self) == Some(0)
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        i64::checked_sub(*self, i64::checked_mul(*q, *b)?)
    }
    fn checked_add(&self, b: &Self) -> Option<Self> {
        i64::checked_add(*self, *b)
    }
    fn checked_sub(&self, b: &Self) -> Option<Self> {
        i64::checked_sub(*self, *b)
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
    fn cmp_abs(&self, other: &Self) -> Ordering {
        self.magnitude().cmp(other.magnitude())
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn checked_neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn quot(&self, d: &Self) -> Option<Self> {
        Some(self / d)
    }
    fn divides(&self, other: &Self) -> bool {
        Zero::is_zero(&other.mod_floor(self))
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        Some(self - q * b)
    }
    fn checked_add(&self, b: &Self) -> Option<Self> {
        Some(self + b)
    }
    fn checked_sub(&self, b: &Self) -> Option<Self> {
        Some(self - b)
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

struct Elimination<T> {
    a: Matrix<T>,
    track: bool,
    u: Matrix<T>,
    u_inv: Matrix<T>,
    v: Matrix<T>,
    v_inv: Matrix<T>,
}

fn identity<T: Scalar>(n: usize, track: bool) -> Matrix<T> {
    if track {
        Matrix::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    } else {
        Matrix::filled(0, 0, T::zero())
    }
}

impl<T: Scalar> Elimination<T> {
    fn run(a: Matrix<T>, track: bool) -> Option<Smith> {
        let (r, c) = a.shape();
        let mut e = Elimination {
            a,
            track,
            u: identity(r, track),
            u_inv: identity(r, track),
            v: identity(c, track),
            v_inv: identity(c, track),
        };
        let mut divisors = Vec::new();
        for t in 0..r.min(c) {
            let Some((pi, pj)) = e.min_abs_entry(t) else { break };
            e.swap_rows(t, pi);
            e.swap_cols(t, pj);
            e.reduce_pivot(t)?;
            if e.a.get(t, t).is_negative() {
                e.negate_row(t)?;
            }
            divisors.push(e.a.get(t, t).to_big());
        }
        let transforms = track.then(|| SmithTransforms {
            u: e.u.map(Scalar::to_big),
            u_inv: e.u_inv.map(Scalar::to_big),
            v: e.v.map(Scalar::to_big),
            v_inv: e.v_inv.map(Scalar::to_big),
        });
        Some(Smith { divisors, transforms })
    }

    fn min_abs_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let x = self.a.get(i, j);
                if x.is_zero() {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some((bi, bj)) => x.cmp_abs(self.a.get(bi, bj)) == Ordering::Less,
                };
                if better {
                    best = Some((i, j));
                    if x.cmp_abs(&T::one()) == Ordering::Equal {
                        return best;
                    }
                }
            }
        }
        best
    }

    /// Clears row and column `t` and makes the pivot divide the remaining block.
    fn reduce_pivot(&mut self, t: usize) -> Option<()> {
        let (r, c) = self.a.shape();
        loop {
            let mut dirty = false;
            let p = self.a.get(t, t).clone();
            for i in t + 1..r {
                if self.a.get(i, t).is_zero() {
                    continue;
                }
                let q = self.a.get(i, t).quot(&p)?;
                self.row_sub_mul(i, t, &q)?;
                dirty |= !self.a.get(i, t).is_zero();
            }
            for j in t + 1..c {
                if self.a.get(t, j).is_zero() {
                    continue;
                }
                let q = self.a.get(t, j).quot(&p)?;
                self.col_sub_mul(j, t, &q)?;
                dirty |= !self.a.get(t, j).is_zero();
            }
            if dirty {
                // a smaller remainder appeared in row/column t: move it to the pivot
                let mut best = (t, t);
                for i in t + 1..r {
                    let x = self.a.get(i, t);
                    if !x.is_zero() && x.cmp_abs(self.a.get(best.0, best.1)) == Ordering::Less {
                        best = (i, t);
                    }
                }
                for j in t + 1..c {
                    let x = self.a.get(t, j);
                    if !x.is_zero() && x.cmp_abs(self.a.get(best.0, best.1)) == Ordering::Less {
                        best = (t, j);
                    }
                }
                self.swap_rows(t, best.0);
                self.swap_cols(t, best.1);
                continue;
            }
            let p = self.a.get(t, t).clone();
            let offender = (t + 1..r).find(|&i| (t + 1..c).any(|j| !p.divides(self.a.get(i, j))));
            match offender {
                Some(i) => self.row_add(t, i)?,
                None => return Some(()),
            }
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.a.swap_rows(a, b);
        if self.track {
            self.u.swap_rows(a, b);
            self.u_inv.swap_cols(a, b);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.a.swap_cols(a, b);
        if self.track {
            self.v.swap_cols(a, b);
            self.v_inv.swap_rows(a, b);
        }
    }

    fn negate_row(&mut self, t: usize) -> Option<()> {
        for x in self.a.row_mut(t) {
            *x = x.checked_neg()?;
        }
        if self.track {
            for x in self.u.row_mut(t) {
                *x = x.checked_neg()?;
            }
            for i in 0..self.u_inv.rows() {
                let x = self.u_inv.get(i, t).checked_neg()?;
                self.u_inv.set(i, t, x);
            }
        }
        Some(())
    }

    /// row_i -= q * row_t
    fn row_sub_mul(&mut self, i: usize, t: usize, q: &T) -> Option<()> {
        for j in 0..self.a.cols() {
            let x = self.a.get(i, j).sub_mul(q, self.a.get(t, j))?;
            self.a.set(i, j, x);
        }
        if self.track {
            for j in 0..self.u.cols() {
                let x = self.u.get(i, j).sub_mul(q, self.u.get(t, j))?;
                self.u.set(i, j, x);
            }
            // inverse: col_t += q * col_i
            for k in 0..self.u_inv.rows() {
                let x = self.u_inv.get(k, t).sub_mul(&q.checked_neg()?, self.u_inv.get(k, i))?;
                self.u_inv.set(k, t, x);
            }
        }
        Some(())
    }

    /// col_j -= q * col_t
    fn col_sub_mul(&mut self, j: usize, t: usize, q: &T) -> Option<()> {
        for i in 0..self.a.rows() {
            let x = self.a.get(i, j).sub_mul(q, self.a.get(i, t))?;
            self.a.set(i, j, x);
        }
        if self.track {
            for i in 0..self.v.rows() {
                let x = self.v.get(i, j).sub_mul(q, self.v.get(i, t))?;
                self.v.set(i, j, x);
            }
            // inverse: row_t += q * row_j
            for k in 0..self.v_inv.cols() {
                let x = self.v_inv.get(t, k).sub_mul(&q.checked_neg()?, self.v_inv.get(j, k))?;
                self.v_inv.set(t, k, x);
            }
        }
        Some(())
    }

    /// row_t += row_i
    fn row_add(&mut self, t: usize, i: usize) -> Option<()> {
        for j in 0..self.a.cols() {
            let x = self.a.get(t, j).checked_add(self.a.get(i, j))?;
            self.a.set(t, j, x);
        }
        if self.track {
            for j in 0..self.u.cols() {
                let x = self.u.get(t, j).checked_add(self.u.get(i, j))?;
                self.u.set(t, j, x);
            }
            // inverse: col_i -= col_t
            for k in 0..self.u_inv.rows() {
                let x = self.u_inv.get(k, i).checked_sub(self.u_inv.get(k, t))?;
                self.u_inv.set(k, i, x);
            }
        }
        Some(())
    }
}
