//! The Hochster table `H_{-k,2l}`, its differential `∂′` and double homology.
//!
//! Tables are stored by `(k, l)`; the display pair is `(-k, 2l)`.

use crate::cube::{cube_homology, differentials, sign_below, Cube, Levels};
use crate::error::Result;
use crate::exactla::{Coeffs, Matrix, Ring};
use crate::homology::SubsetHomologyTable;
use crate::scomplex::{SimplicialComplex, VertexSet};
use crate::tables::BigradedTable;
use crate::with_ring;

/// Display pair `(-k, 2l)` of a stored `(k, l)`.
pub fn display_index(k: isize, l: isize) -> (isize, isize) {
    (-k, 2 * l)
}

/// `⊕_{|I| = l} H̃_{l-k-1}(K[I])` at `(k, l)`, before the differential.
pub fn hochster_table(k: &SimplicialComplex, coeffs: Coeffs) -> Result<BigradedTable> {
    let classes = crate::homology::subset_homology_classes(k, true, coeffs, crate::homology::DEFAULT_SUBSET_CAP)?;
    let mut out = BigradedTable::new(coeffs);
    for (bits, groups) in classes.entries.iter().enumerate() {
        let l = (bits as u64).count_ones() as isize;
        for (p, g) in groups.iter() {
            out.add((l - p - 1, l), g);
        }
    }
    Ok(out)
}

/// Sign of the `φ_{p,I,j}` summand of `∂′_p`.
pub fn double_sign(p: isize, i: VertexSet, j: usize) -> i64 {
    let s = sign_below(i, j);
    if (p + 1) % 2 == 0 {
        s
    } else {
        -s
    }
}

fn hochster_cube<'a, R: Ring>(
    table: &'a SubsetHomologyTable<R>,
    dim: &'a (dyn Fn(VertexSet) -> usize + Sync),
    edge: &'a (dyn Fn(VertexSet, usize) -> Result<Matrix<R::Elem>> + Sync),
    sign: &'a (dyn Fn(VertexSet, usize) -> i64 + Sync),
) -> Cube<'a, R::Elem> {
    Cube { ground: VertexSet::full(table.m()), dim, edge, sign }
}

/// `∂′ : H_{-k,2l} → H_{-k-1,2l+2}` in the table's bases, with summands
/// ordered by subset value.
pub fn double_differential<R: Ring>(table: &SubsetHomologyTable<R>, k: isize, l: isize) -> Result<Matrix<R::Elem>> {
    assert!(table.is_reduced(), "the Hochster table uses reduced homology");
    let p = l - k - 1;
    table.ensure_free(p)?;
    let dim = |b: VertexSet| table.basis_dim(b, p);
    let edge = |b: VertexSet, v: usize| table.inclusion_map(b, v, p);
    let sign = |b: VertexSet, v: usize| double_sign(p, b, v);
    let cube = hochster_cube(table, &dim, &edge, &sign);
    let levels = Levels::new(&cube);
    let m = table.m() as isize;
    if l < 0 || l >= m {
        let rows = if l < m && l + 1 >= 0 { levels.dims[(l + 1) as usize] } else { 0 };
        let cols = if (0..=m).contains(&l) { levels.dims[l as usize] } else { 0 };
        return Ok(table.ring().zeros(rows, cols));
    }
    crate::cube::level_differential(table.ring(), &cube, &levels, l as usize)
}

/// Double homology from a reduced subset table.
pub fn double_homology_of_table<R: Ring>(table: &SubsetHomologyTable<R>) -> Result<BigradedTable> {
    assert!(table.is_reduced(), "the Hochster table uses reduced homology");
    let mut out = BigradedTable::new(table.coeffs());
    for p in -1..=table.top_degree() {
        table.ensure_free(p)?;
        let dim = |b: VertexSet| table.basis_dim(b, p);
        let edge = |b: VertexSet, v: usize| table.inclusion_map(b, v, p);
        let sign = |b: VertexSet, v: usize| double_sign(p, b, v);
        let cube = hochster_cube(table, &dim, &edge, &sign);
        for (l, g) in cube_homology(table.ring(), &cube)?.into_iter().enumerate() {
            let l = l as isize;
            out.set((l - p - 1, l), g);
        }
    }
    Ok(out)
}

/// `DH_{*,*}` stored by `(k, l)`.
pub fn double_homology(k: &SimplicialComplex, coeffs: Coeffs) -> Result<BigradedTable> {
    with_ring!(coeffs, r => double_homology_of_table(&SubsetHomologyTable::build(r, k, true)?))
}

/// `Σ_k (-1)^k rk DH_{-k, 2(k+1)}`.
pub fn diagonal_euler(k: &SimplicialComplex, coeffs: Coeffs) -> Result<i64> {
    Ok(diagonal_euler_of(&double_homology(k, coeffs)?))
}

pub fn diagonal_euler_of(dh: &BigradedTable) -> i64 {
    dh.iter()
        .filter(|((k, l), _)| *l == k + 1)
        .map(|((k, _), g)| if k % 2 == 0 { g.rank as i64 } else { -(g.rank as i64) })
        .sum()
}

/// Checks `∂′ ∘ ∂′ = 0` in every degree.
pub fn check_double_differential<R: Ring>(table: &SubsetHomologyTable<R>) -> Result<()> {
    for p in -1..=table.top_degree() {
        table.ensure_free(p)?;
        let dim = |b: VertexSet| table.basis_dim(b, p);
        let edge = |b: VertexSet, v: usize| table.inclusion_map(b, v, p);
        let sign = |b: VertexSet, v: usize| double_sign(p, b, v);
        let cube = hochster_cube(table, &dim, &edge, &sign);
        differentials(table.ring(), &cube, &Levels::new(&cube))?;
    }
    Ok(())
}
