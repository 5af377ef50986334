//! Coefficient rings: `Z`, `Q` and `F_p`, behind one trait so that every
//! higher-level construction is written once.

use std::fmt::Debug;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::field;
use super::group::{AbelianGroupClass, Coeffs};
use super::matrix::Matrix;
use super::snf::{smith, smith_normal_form};
use crate::error::{Error, Result};

/// A chosen basis of `ker(d_out) / im(d_in)` given by cycle representatives,
/// together with a projection that reads off class coordinates of any cycle.
#[derive(Clone, Debug)]
pub struct HomologyBasis<E> {
    /// `n × h`; column `c` is a cycle representing the `c`-th basis class.
    pub cycles: Matrix<E>,
    /// `h × n`; `projection · z` is the coordinate vector of `[z]` for any cycle `z`,
    /// and vanishes on boundaries.
    pub projection: Matrix<E>,
}

impl<E: Clone> HomologyBasis<E> {
    pub fn dim(&self) -> usize {
        self.cycles.cols()
    }

    pub fn chain_dim(&self) -> usize {
        self.cycles.rows()
    }
}

pub trait Ring: Clone + Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn coeffs(&self) -> Coeffs;
    fn zero(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    /// Rank of a matrix over the fraction field.
    fn rank(&self, m: &Matrix<Self::Elem>) -> usize;

    /// Isomorphism class of `ker(d_out) / im(d_in)`, without the complex check.
    fn quotient_class(&self, d_in: &Matrix<Self::Elem>, d_out: &Matrix<Self::Elem>) -> AbelianGroupClass;

    /// A deterministic homology basis. Over `Z` this fails with
    /// [`Error::TorsionObstruction`] when the quotient has torsion.
    fn homology_basis(&self, d_in: &Matrix<Self::Elem>, d_out: &Matrix<Self::Elem>) -> Result<HomologyBasis<Self::Elem>>;

    fn one(&self) -> Self::Elem {
        self.from_i64(1)
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn zeros(&self, rows: usize, cols: usize) -> Matrix<Self::Elem> {
        Matrix::filled(rows, cols, self.zero())
    }

    fn identity(&self, n: usize) -> Matrix<Self::Elem> {
        Matrix::from_fn(n, n, |i, j| if i == j { self.one() } else { self.zero() })
    }

    fn from_int_matrix(&self, m: &Matrix<i64>) -> Matrix<Self::Elem> {
        m.map(|&x| self.from_i64(x))
    }

    /// Product that skips zero entries of the left factor.
    fn matmul(&self, a: &Matrix<Self::Elem>, b: &Matrix<Self::Elem>) -> Matrix<Self::Elem> {
        assert_eq!(a.cols(), b.rows(), "matmul shape mismatch {:?} x {:?}", a.shape(), b.shape());
        let mut out = self.zeros(a.rows(), b.cols());
        for i in 0..a.rows() {
            for k in 0..a.cols() {
                let x = a.get(i, k);
                if self.is_zero(x) {
                    continue;
                }
                for j in 0..b.cols() {
                    let y = b.get(k, j);
                    if self.is_zero(y) {
                        continue;
                    }
                    let v = self.add(out.get(i, j), &self.mul(x, y));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    fn is_zero_matrix(&self, m: &Matrix<Self::Elem>) -> bool {
        (0..m.rows()).all(|i| m.row(i).iter().all(|x| self.is_zero(x)))
    }

    fn negate_matrix(&self, m: &Matrix<Self::Elem>) -> Matrix<Self::Elem> {
        m.map(|x| self.neg(x))
    }
}

pub trait Field: Ring {
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
}

/// The integers, with arbitrary precision.
#[derive(Clone, Copy, Debug, Default)]
pub struct Integers;

/// The rationals, exact.
#[derive(Clone, Copy, Debug, Default)]
pub struct Rationals;

/// `F_p` for a prime `p < 2^31`.
#[derive(Clone, Copy, Debug)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u32) -> Self {
        PrimeField { p: p as u64 }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }
}

impl Ring for Integers {
    type Elem = BigInt;

    fn coeffs(&self) -> Coeffs {
        Coeffs::Z
    }
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn from_i64(&self, v: i64) -> BigInt {
        BigInt::from(v)
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }

    fn rank(&self, m: &Matrix<BigInt>) -> usize {
        smith_normal_form(m).len()
    }

    fn quotient_class(&self, d_in: &Matrix<BigInt>, d_out: &Matrix<BigInt>) -> AbelianGroupClass {
        let n = middle_dim(d_in, d_out);
        let divisors = smith_normal_form(d_in);
        let out_rank = self.rank(d_out);
        let free = n - out_rank - divisors.len();
        AbelianGroupClass::integral(free, divisors.into_iter().map(|d| d.magnitude().clone()))
    }

    fn homology_basis(&self, d_in: &Matrix<BigInt>, d_out: &Matrix<BigInt>) -> Result<HomologyBasis<BigInt>> {
        let n = middle_dim(d_in, d_out);
        let s1 = smith(d_in, true);
        if let Some(d) = s1.divisors.iter().find(|d| !d.is_one()) {
            return Err(Error::TorsionObstruction(format!("quotient has a Z/{d} summand")));
        }
        let t1 = s1.transforms.expect("requested");
        let r = s1.divisors.len();
        // columns r.. of u_inv complete the boundary lattice to a basis of Z^n
        let complement = t1.u_inv.col_range(r..n);
        let restricted = self.matmul(d_out, &complement);
        let s2 = smith(&restricted, true);
        let t2 = s2.transforms.expect("requested");
        let r2 = s2.divisors.len();
        let kernel = t2.v.col_range(r2..n - r);
        let cycles = self.matmul(&complement, &kernel);
        let projection = self.matmul(&t2.v_inv.row_range(r2..n - r), &t1.u.row_range(r..n));
        Ok(HomologyBasis { cycles, projection })
    }
}

impl Ring for Rationals {
    type Elem = BigRational;

    fn coeffs(&self) -> Coeffs {
        Coeffs::Q
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn rank(&self, m: &Matrix<BigRational>) -> usize {
        field::rank(self, m)
    }
    fn quotient_class(&self, d_in: &Matrix<BigRational>, d_out: &Matrix<BigRational>) -> AbelianGroupClass {
        field::quotient_class(self, d_in, d_out)
    }
    fn homology_basis(&self, d_in: &Matrix<BigRational>, d_out: &Matrix<BigRational>) -> Result<HomologyBasis<BigRational>> {
        Ok(field::homology_basis(self, d_in, d_out))
    }
}

impl Field for Rationals {
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
}

impl Ring for PrimeField {
    type Elem = u64;

    fn coeffs(&self) -> Coeffs {
        Coeffs::Fp(self.p as u32)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn rank(&self, m: &Matrix<u64>) -> usize {
        if self.p == 2 {
            field::rank_f2(m)
        } else {
            field::rank(self, m)
        }
    }
    fn quotient_class(&self, d_in: &Matrix<u64>, d_out: &Matrix<u64>) -> AbelianGroupClass {
        field::quotient_class(self, d_in, d_out)
    }
    fn homology_basis(&self, d_in: &Matrix<u64>, d_out: &Matrix<u64>) -> Result<HomologyBasis<u64>> {
        Ok(field::homology_basis(self, d_in, d_out))
    }
}

impl Field for PrimeField {
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero in F_{}", self.p);
        // Fermat
        let (mut base, mut exp, mut acc) = (*a, self.p - 2, 1u64);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }
}

pub(crate) fn middle_dim<E: Clone>(d_in: &Matrix<E>, d_out: &Matrix<E>) -> usize {
    assert_eq!(d_in.rows(), d_out.cols(), "d_in rows must equal d_out cols");
    d_in.rows()
}

/// `ker(d_out) / im(d_in)`; fails when `d_out · d_in ≠ 0`.
pub fn homology_quotient<R: Ring>(ring: &R, d_in: &Matrix<R::Elem>, d_out: &Matrix<R::Elem>) -> Result<AbelianGroupClass> {
    if d_in.rows() != d_out.cols() {
        return Err(Error::InvalidInput(format!(
            "middle dimension mismatch: d_in has {} rows, d_out has {} cols",
            d_in.rows(),
            d_out.cols()
        )));
    }
    if !ring.is_zero_matrix(&ring.matmul(d_out, d_in)) {
        return Err(Error::NotAComplex);
    }
    Ok(ring.quotient_class(d_in, d_out))
}

impl<E: Clone> HomologyBasis<E> {
    /// Matrix of the map on homology induced by the chain map `f` (target
    /// chains × source chains), with `self` the source basis.
    pub fn induced_by<R: Ring<Elem = E>>(&self, ring: &R, f: &Matrix<E>, target: &HomologyBasis<E>) -> Matrix<E> {
        let image = ring.matmul(f, &self.cycles);
        ring.matmul(&target.projection, &image)
    }
}

/// Matrix of `H(f)` from `ker d_out / im d_in` to `ker d_out' / im d_in'`,
/// after checking that `f` sends cycles to cycles and boundaries to boundaries.
pub fn induced_map_on_homology<R: Ring>(
    ring: &R,
    f: &Matrix<R::Elem>,
    source: (&Matrix<R::Elem>, &Matrix<R::Elem>),
    target: (&Matrix<R::Elem>, &Matrix<R::Elem>),
) -> Result<Matrix<R::Elem>> {
    let (d_in, d_out) = source;
    let (t_in, t_out) = target;
    if f.cols() != d_in.rows() || f.rows() != t_in.rows() {
        return Err(Error::NotChainMap(format!("shape {:?} does not fit the complexes", f.shape())));
    }
    for (a, b) in [(d_in, d_out), (t_in, t_out)] {
        if !ring.is_zero_matrix(&ring.matmul(b, a)) {
            return Err(Error::NotAComplex);
        }
    }
    let src = ring.homology_basis(d_in, d_out)?;
    let tgt = ring.homology_basis(t_in, t_out)?;
    let image_of_cycles = ring.matmul(f, &src.cycles);
    if !ring.is_zero_matrix(&ring.matmul(t_out, &image_of_cycles)) {
        return Err(Error::NotChainMap("a cycle maps to a non-cycle".into()));
    }
    let image_of_boundaries = ring.matmul(f, d_in);
    if !ring.is_zero_matrix(&ring.matmul(t_out, &image_of_boundaries))
        || !ring.is_zero_matrix(&ring.matmul(&tgt.projection, &image_of_boundaries))
    {
        return Err(Error::NotChainMap("a boundary maps to a nonzero class".into()));
    }
    Ok(ring.matmul(&tgt.projection, &image_of_cycles))
}

/// Positive magnitude helper for reporting.
pub fn magnitude(x: &BigInt) -> BigUint {
    x.abs().magnitude().clone()
}
