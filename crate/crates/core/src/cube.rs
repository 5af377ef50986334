//! Homology of Boolean-cube complexes: level `j` is the direct sum of groups
//! attached to the `j`-subsets of a ground set, and the differential adds one
//! vertex along signed edge maps.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactla::{AbelianGroupClass, Matrix, Ring};
use crate::scomplex::VertexSet;

/// A functor on the subsets of `ground` with free values, plus a sign
/// assignment on cube edges.
pub(crate) struct Cube<'a, E> {
    pub ground: VertexSet,
    /// Rank of the group attached to a subset.
    pub dim: &'a (dyn Fn(VertexSet) -> usize + Sync),
    /// Unsigned edge map from `B` to `B ∪ {v}`.
    pub edge: &'a (dyn Fn(VertexSet, usize) -> Result<Matrix<E>> + Sync),
    pub sign: &'a (dyn Fn(VertexSet, usize) -> i64 + Sync),
}

/// Subsets of each size in numeric order, and the summand offsets inside
/// each level.
pub(crate) struct Levels {
    pub subsets: Vec<Vec<VertexSet>>,
    pub offsets: Vec<HashMap<VertexSet, usize>>,
    pub dims: Vec<usize>,
}

impl Levels {
    pub fn new<E>(cube: &Cube<'_, E>) -> Self {
        let subsets = cube.ground.subsets_by_size();
        let mut offsets = Vec::with_capacity(subsets.len());
        let mut dims = Vec::with_capacity(subsets.len());
        for level in &subsets {
            let mut off = HashMap::with_capacity(level.len());
            let mut total = 0;
            for &b in level {
                off.insert(b, total);
                total += (cube.dim)(b);
            }
            offsets.push(off);
            dims.push(total);
        }
        Levels { subsets, offsets, dims }
    }
}

/// The differential from level `j` to level `j + 1`.
pub(crate) fn level_differential<R: Ring>(ring: &R, cube: &Cube<'_, R::Elem>, levels: &Levels, j: usize) -> Result<Matrix<R::Elem>> {
    let mut d = ring.zeros(levels.dims[j + 1], levels.dims[j]);
    if levels.dims[j] == 0 || levels.dims[j + 1] == 0 {
        return Ok(d);
    }
    for &b in &levels.subsets[j] {
        if (cube.dim)(b) == 0 {
            continue;
        }
        let col0 = levels.offsets[j][&b];
        for v in cube.ground.difference(b).iter() {
            let target = b.with(v);
            if (cube.dim)(target) == 0 {
                continue;
            }
            let row0 = levels.offsets[j + 1][&target];
            let block = (cube.edge)(b, v)?;
            let s = (cube.sign)(b, v);
            for r in 0..block.rows() {
                for c in 0..block.cols() {
                    let x = block.get(r, c);
                    if !ring.is_zero(x) {
                        let val = if s < 0 { ring.neg(x) } else { x.clone() };
                        d.set(row0 + r, col0 + c, val);
                    }
                }
            }
        }
    }
    Ok(d)
}

/// All level differentials, checked to square to zero.
pub(crate) fn differentials<R: Ring>(ring: &R, cube: &Cube<'_, R::Elem>, levels: &Levels) -> Result<Vec<Matrix<R::Elem>>> {
    let n = levels.subsets.len();
    let ds: Vec<Matrix<R::Elem>> = (0..n.saturating_sub(1))
        .into_par_iter()
        .map(|j| level_differential(ring, cube, levels, j))
        .collect::<Result<_>>()?;
    for w in ds.windows(2) {
        if w[0].rows() > 0 && w[0].cols() > 0 && w[1].rows() > 0 && !ring.is_zero_matrix(&ring.matmul(&w[1], &w[0])) {
            return Err(Error::NotAComplex);
        }
    }
    Ok(ds)
}

/// Homology at every level of a cochain complex given by its differentials
/// (`ds[j]` maps level `j` to level `j + 1`).
pub(crate) fn cochain_homology<R: Ring>(ring: &R, dims: &[usize], ds: &[Matrix<R::Elem>]) -> Vec<AbelianGroupClass> {
    let n = dims.len();
    let coeffs = ring.coeffs();
    if coeffs.is_field() {
        let ranks: Vec<usize> = ds.par_iter().map(|d| ring.rank(d)).collect();
        (0..n)
            .map(|j| {
                let out = if j < ranks.len() { ranks[j] } else { 0 };
                let inc = if j > 0 { ranks[j - 1] } else { 0 };
                AbelianGroupClass::free(coeffs, dims[j] - out - inc)
            })
            .collect()
    } else {
        (0..n)
            .into_par_iter()
            .map(|j| {
                let d_in = if j > 0 { ds[j - 1].clone() } else { ring.zeros(dims[0], 0) };
                let d_out = if j < ds.len() { ds[j].clone() } else { ring.zeros(0, dims[j]) };
                ring.quotient_class(&d_in, &d_out)
            })
            .collect()
    }
}

/// Homology of the cube complex at each level `0..=|ground|`.
pub(crate) fn cube_homology<R: Ring>(ring: &R, cube: &Cube<'_, R::Elem>) -> Result<Vec<AbelianGroupClass>> {
    let levels = Levels::new(cube);
    let ds = differentials(ring, cube, &levels)?;
    Ok(cochain_homology(ring, &levels.dims, &ds))
}

/// `(-1)^{|{b ∈ B : b < v}|}`.
pub fn sign_below(b: VertexSet, v: usize) -> i64 {
    if b.count_below(v) % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Compressed index of a subset of `ground` (bit `r` for the `r`-th member).
pub(crate) fn compress(b: VertexSet, ground: VertexSet) -> usize {
    let mut out = 0usize;
    for (r, v) in ground.iter().enumerate() {
        if b.contains(v) {
            out |= 1 << r;
        }
    }
    out
}
