//! Gaussian elimination over a field.

use super::group::AbelianGroupClass;
use super::matrix::Matrix;
use super::ring::{middle_dim, Field, HomologyBasis};

/// Reduced row echelon form in place; returns the pivot columns in increasing order.
pub fn rref<F: Field>(f: &F, m: &mut Matrix<F::Elem>) -> Vec<usize> {
    let (rows, cols) = m.shape();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !f.is_zero(m.get(i, c))) else { continue };
        m.swap_rows(r, p);
        let inv = f.inv(m.get(r, c));
        for j in c..cols {
            let v = f.mul(m.get(r, j), &inv);
            m.set(r, j, v);
        }
        for i in 0..rows {
            if i == r || f.is_zero(m.get(i, c)) {
                continue;
            }
            let factor = m.get(i, c).clone();
            for j in c..cols {
                if f.is_zero(m.get(r, j)) {
                    continue;
                }
                let v = f.sub(m.get(i, j), &f.mul(&factor, m.get(r, j)));
                m.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank by forward elimination only.
pub fn rank<F: Field>(f: &F, m: &Matrix<F::Elem>) -> usize {
    let mut m = m.clone();
    let (rows, cols) = m.shape();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !f.is_zero(m.get(i, c))) else { continue };
        m.swap_rows(r, p);
        let inv = f.inv(m.get(r, c));
        for i in r + 1..rows {
            if f.is_zero(m.get(i, c)) {
                continue;
            }
            let factor = f.mul(m.get(i, c), &inv);
            for j in c..cols {
                if f.is_zero(m.get(r, j)) {
                    continue;
                }
                let v = f.sub(m.get(i, j), &f.mul(&factor, m.get(r, j)));
                m.set(i, j, v);
            }
        }
        r += 1;
    }
    r
}

/// Rank over `F_2` with 64 entries per word.
pub fn rank_f2(m: &Matrix<u64>) -> usize {
    let (rows, cols) = m.shape();
    let words = cols.div_ceil(64);
    let mut packed: Vec<Vec<u64>> = (0..rows)
        .map(|i| {
            let mut w = vec![0u64; words];
            for (j, &x) in m.row(i).iter().enumerate() {
                if x & 1 == 1 {
                    w[j / 64] |= 1 << (j % 64);
                }
            }
            w
        })
        .collect();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let (wi, bit) = (c / 64, 1u64 << (c % 64));
        let Some(p) = (r..rows).find(|&i| packed[i][wi] & bit != 0) else { continue };
        packed.swap(r, p);
        let (head, tail) = packed.split_at_mut(r + 1);
        let pivot = &head[r];
        for row in tail.iter_mut() {
            if row[wi] & bit != 0 {
                for (x, y) in row[wi..].iter_mut().zip(&pivot[wi..]) {
                    *x ^= y;
                }
            }
        }
        r += 1;
    }
    r
}

/// Basis of the null space as columns, one per free column of the RREF.
pub fn kernel_basis<F: Field>(f: &F, m: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    let n = m.cols();
    let mut r = m.clone();
    let pivots = rref(f, &mut r);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let mut k = f.zeros(n, free.len());
    for (col, &fc) in free.iter().enumerate() {
        k.set(fc, col, f.one());
        for (row, &pc) in pivots.iter().enumerate() {
            let v = f.neg(r.get(row, fc));
            k.set(pc, col, v);
        }
    }
    k
}

pub fn inverse<F: Field>(f: &F, m: &Matrix<F::Elem>) -> Option<Matrix<F::Elem>> {
    let n = m.rows();
    assert_eq!(n, m.cols());
    let mut aug = m.hstack(&f.identity(n));
    let pivots = rref(f, &mut aug);
    if pivots.len() < n || (n > 0 && pivots[n - 1] != n - 1) {
        return None;
    }
    Some(aug.col_range(n..2 * n))
}

pub fn quotient_class<F: Field>(f: &F, d_in: &Matrix<F::Elem>, d_out: &Matrix<F::Elem>) -> AbelianGroupClass {
    let n = middle_dim(d_in, d_out);
    AbelianGroupClass::free(f.coeffs(), n - f.rank(d_out) - f.rank(d_in))
}

/// Boundaries first, then cycles, then unit vectors: the pivot columns of each
/// stage give the boundary basis, the homology representatives and a
/// completion to a basis of the whole chain space.
pub fn homology_basis<F: Field>(f: &F, d_in: &Matrix<F::Elem>, d_out: &Matrix<F::Elem>) -> HomologyBasis<F::Elem> {
    let n = middle_dim(d_in, d_out);
    let cycles = kernel_basis(f, d_out);
    let stacked = d_in.hstack(&cycles).hstack(&f.identity(n));
    let mut work = stacked.clone();
    let pivots = rref(f, &mut work);
    let (a, z) = (d_in.cols(), cycles.cols());
    let boundary_count = pivots.iter().filter(|&&c| c < a).count();
    let homology_cols: Vec<usize> = pivots.iter().copied().filter(|&c| c >= a && c < a + z).collect();
    let h = homology_cols.len();
    let change = stacked.select_cols(&pivots);
    let inv = inverse(f, &change).expect("pivot columns form a basis");
    HomologyBasis {
        cycles: stacked.select_cols(&homology_cols),
        projection: inv.row_range(boundary_count..boundary_count + h),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::ring::{PrimeField, Rationals, Ring};
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn f2_rank_matches_generic(v in proptest::collection::vec(0u64..2, 1..400), cols in 1usize..90) {
            let rows = v.len().div_ceil(cols);
            let m = Matrix::from_fn(rows, cols, |i, j| v.get(i * cols + j).copied().unwrap_or(0));
            let f = PrimeField::new(2);
            prop_assert_eq!(rank_f2(&m), rank(&f, &m));
        }

        #[test]
        fn kernel_is_annihilated(v in proptest::collection::vec(-4i64..=4, 1..40), cols in 1usize..7) {
            let q = Rationals;
            let rows = v.len().div_ceil(cols);
            let m = q.from_int_matrix(&Matrix::from_fn(rows, cols, |i, j| v.get(i * cols + j).copied().unwrap_or(0)));
            let k = kernel_basis(&q, &m);
            prop_assert_eq!(k.cols() + q.rank(&m), cols);
            prop_assert!(q.is_zero_matrix(&q.matmul(&m, &k)));
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let f = PrimeField::new(7);
        let m = f.from_int_matrix(&Matrix::from_rows(vec![vec![2, 1], vec![1, 1]]));
        let inv = inverse(&f, &m).unwrap();
        assert_eq!(f.matmul(&m, &inv), f.identity(2));
        let singular = f.from_int_matrix(&Matrix::from_rows(vec![vec![1, 2], vec![2, 4]]));
        assert!(inverse(&f, &singular).is_none());
    }
}
