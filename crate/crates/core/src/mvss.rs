//! The augmented Mayer-Vietoris spectral sequence of the anti-star cover,
//! unreduced and reduced, through its second page.
//!
//! A nerve simplex `σ` is stored by its complement `I = V ∖ σ`, so that
//! `U_σ = K[I]` and the entry at `(p, q)` collects the subsets with
//! `|I| = m - p - 1`. The differential `δ¹` lowers `p`, i.e. adds a vertex to
//! `I`, with the sign of the removed vertex's position in `σ`.

use std::collections::HashMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use crate::cube::{cochain_homology, differentials, Cube, Levels};
use crate::error::{Error, Result};
use crate::exactla::{Coeffs, Integers, Matrix, Ring};
use crate::cache::subset_classes_cached;
use crate::homology::{SubsetClassTable, SubsetHomologyTable, DEFAULT_SUBSET_CAP};
use crate::scomplex::{SimplicialComplex, VertexSet};
use crate::tables::BigradedTable;
use crate::with_ring;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Unreduced homology with the augmentation column `H_q(K)`.
    Unreduced,
    /// Reduced homology, with the extra row `q = -1`.
    Reduced,
}

impl Variant {
    pub fn is_reduced(self) -> bool {
        self == Variant::Reduced
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Unreduced => "unreduced",
            Variant::Reduced => "reduced",
        })
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "unreduced" => Ok(Variant::Unreduced),
            "reduced" => Ok(Variant::Reduced),
            _ => Err(Error::InvalidInput(format!("unknown variant {s:?}; expected reduced or unreduced"))),
        }
    }
}

/// One page, keyed by `(p, q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralPage {
    pub variant: Variant,
    pub page: u8,
    pub m: usize,
    pub entries: BigradedTable,
}

/// `(-1)^{|{u ∉ I : u < v}|}`: the position of `v` in the nerve simplex `V ∖ I`.
pub fn nerve_sign(m: usize, i: VertexSet, v: usize) -> i64 {
    let sigma = VertexSet::full(m).difference(i);
    crate::cube::sign_below(sigma, v)
}

/// Column of the subsets of size `size`.
pub fn column_of(m: usize, size: usize) -> isize {
    m as isize - size as isize - 1
}

fn check_input(k: &SimplicialComplex) -> Result<()> {
    if k.is_empty_complex() && k.m() > 0 {
        return Err(Error::GhostVertex(0));
    }
    Ok(())
}

pub fn e1_page_of_table<R: Ring>(table: &SubsetHomologyTable<R>) -> SpectralPage {
    let m = table.m();
    let mut entries = BigradedTable::new(table.coeffs());
    for bits in 0..1u64 << m {
        let i = VertexSet::from_bits(bits);
        for (q, g) in table.groups(i).iter() {
            entries.add((column_of(m, i.len()), q), g);
        }
    }
    let variant = if table.is_reduced() { Variant::Reduced } else { Variant::Unreduced };
    SpectralPage { variant, page: 1, m, entries }
}

pub fn e1_page(k: &SimplicialComplex, variant: Variant, coeffs: Coeffs) -> Result<SpectralPage> {
    e1_page_cached(k, variant, coeffs, None)
}

/// As [`e1_page`], reading and filling the subset class cache in `cache`.
pub fn e1_page_cached(k: &SimplicialComplex, variant: Variant, coeffs: Coeffs, cache: Option<&Path>) -> Result<SpectralPage> {
    check_input(k)?;
    let classes = subset_classes_cached(k, variant.is_reduced(), coeffs, DEFAULT_SUBSET_CAP, cache)?;
    Ok(e1_page_of_classes(&classes))
}

pub fn e1_page_of_classes(classes: &SubsetClassTable) -> SpectralPage {
    let m = classes.m;
    let mut entries = BigradedTable::new(classes.coeffs);
    for (bits, groups) in classes.entries.iter().enumerate() {
        let size = (bits as u64).count_ones() as usize;
        for (q, g) in groups.iter() {
            entries.add((column_of(m, size), q), g);
        }
    }
    let variant = if classes.reduced { Variant::Reduced } else { Variant::Unreduced };
    SpectralPage { variant, page: 1, m, entries }
}

/// Row `q` of `E¹` as a cube complex, indexed by `|I|`.
fn with_row<R: Ring, T>(table: &SubsetHomologyTable<R>, q: isize, f: impl FnOnce(&Cube<'_, R::Elem>) -> Result<T>) -> Result<T> {
    table.ensure_free(q)?;
    let m = table.m();
    let dim = |b: VertexSet| table.basis_dim(b, q);
    let edge = |b: VertexSet, v: usize| table.inclusion_map(b, v, q);
    let sign = |b: VertexSet, v: usize| nerve_sign(m, b, v);
    let cube = Cube { ground: VertexSet::full(m), dim: &dim, edge: &edge, sign: &sign };
    f(&cube)
}

/// `δ¹ : E¹_{p,q} → E¹_{p-1,q}`, summands ordered by subset value.
pub fn delta1<R: Ring>(table: &SubsetHomologyTable<R>, p: isize, q: isize) -> Result<Matrix<R::Elem>> {
    let m = table.m() as isize;
    with_row(table, q, |cube| {
        let levels = Levels::new(cube);
        let size = m - p - 1;
        let dim_at = |s: isize| if (0..=m).contains(&s) { levels.dims[s as usize] } else { 0 };
        if size < 0 || size >= m {
            return Ok(table.ring().zeros(dim_at(size + 1), dim_at(size)));
        }
        crate::cube::level_differential(table.ring(), cube, &levels, size as usize)
    })
}

/// Checks `δ¹ ∘ δ¹ = 0` on every row.
pub fn check_delta1<R: Ring>(table: &SubsetHomologyTable<R>) -> Result<()> {
    for q in -1..=table.top_degree() {
        with_row(table, q, |cube| differentials(table.ring(), cube, &Levels::new(cube)).map(|_| ()))?;
    }
    Ok(())
}

pub fn e2_page_of_table<R: Ring>(table: &SubsetHomologyTable<R>) -> Result<SpectralPage> {
    let m = table.m();
    let mut entries = BigradedTable::new(table.coeffs());
    for q in -1..=table.top_degree() {
        let row = with_row(table, q, |cube| {
            let levels = Levels::new(cube);
            let ds = differentials(table.ring(), cube, &levels)?;
            Ok(cochain_homology(table.ring(), &levels.dims, &ds))
        })?;
        for (size, g) in row.into_iter().enumerate() {
            entries.set((column_of(m, size), q), g);
        }
    }
    let variant = if table.is_reduced() { Variant::Reduced } else { Variant::Unreduced };
    Ok(SpectralPage { variant, page: 2, m, entries })
}

pub fn e2_page(k: &SimplicialComplex, variant: Variant, coeffs: Coeffs) -> Result<SpectralPage> {
    check_input(k)?;
    with_ring!(coeffs, r => e2_page_of_table(&SubsetHomologyTable::build(r, k, variant.is_reduced())?))
}

/// `Σ_p (-1)^p rk E¹_{p,0}`.
pub fn euler_row0(k: &SimplicialComplex, variant: Variant, coeffs: Coeffs) -> Result<i64> {
    Ok(row_euler(&e1_page(k, variant, coeffs)?, 0))
}

/// Alternating sum of free ranks along row `q`.
pub fn row_euler(page: &SpectralPage, q: isize) -> i64 {
    page.entries
        .iter()
        .filter(|((_, r), _)| *r == q)
        .map(|((p, _), g)| if p.rem_euclid(2) == 0 { g.rank as i64 } else { -(g.rank as i64) })
        .sum()
}

/// Largest total-complex degree handled by [`total_acyclicity_check`].
pub const MAX_TOTAL_CELLS: usize = 6000;

/// Builds the augmented reduced double complex at chain level (chains of
/// every `U_σ`, the column `C_q(K)` and the augmentation row) and checks that
/// its total complex has vanishing integral homology.
pub fn total_acyclicity_check(k: &SimplicialComplex) -> Result<bool> {
    check_input(k)?;
    if k.is_simplex() {
        return Err(Error::IsSimplex);
    }
    let m = k.m();
    let full = VertexSet::full(m);
    // cells (σ, τ): τ a face of K[V ∖ σ], or τ = ∅ for the augmentation row
    let mut by_degree: HashMap<isize, Vec<(VertexSet, VertexSet)>> = HashMap::new();
    let mut faces = vec![VertexSet::EMPTY];
    for d in 0..=k.dim() {
        faces.extend(k.faces_of_dim(d as usize).into_iter().map(|s| s.vertex_set()));
    }
    for &tau in &faces {
        for sigma in full.difference(tau).subsets() {
            let deg = sigma.len() as isize - 1 + tau.len() as isize - 1;
            by_degree.entry(deg).or_default().push((sigma, tau));
        }
    }
    let total: usize = by_degree.values().map(Vec::len).sum();
    if total > MAX_TOTAL_CELLS {
        return Err(Error::SizeCap { what: "cells of the total complex", needed: total, cap: MAX_TOTAL_CELLS });
    }
    for cells in by_degree.values_mut() {
        cells.sort_by_key(|c| (c.0.bits(), c.1.bits()));
    }
    let index: HashMap<isize, HashMap<(VertexSet, VertexSet), usize>> = by_degree
        .iter()
        .map(|(&d, cells)| (d, cells.iter().enumerate().map(|(n, &c)| (c, n)).collect()))
        .collect();
    let ring = Integers;
    let empty = Vec::new();
    let differential = |n: isize| -> Matrix<num_bigint::BigInt> {
        let cols = by_degree.get(&n).unwrap_or(&empty);
        let rows = by_degree.get(&(n - 1)).unwrap_or(&empty);
        let mut d = ring.zeros(rows.len(), cols.len());
        let Some(target) = index.get(&(n - 1)) else { return d };
        for (c, &(sigma, tau)) in cols.iter().enumerate() {
            let p = sigma.len() as isize - 1;
            for (r, s) in sigma.iter().enumerate() {
                let row = target[&(sigma.without(s), tau)];
                d.set(row, c, ring.from_i64(if r % 2 == 0 { 1 } else { -1 }));
            }
            let vsign = if p.rem_euclid(2) == 0 { 1 } else { -1 };
            for (r, t) in tau.iter().enumerate() {
                let row = target[&(sigma, tau.without(t))];
                let s = if r % 2 == 0 { vsign } else { -vsign };
                d.set(row, c, ring.from_i64(s));
            }
        }
        d
    };
    let lo = by_degree.keys().copied().min().unwrap_or(0);
    let hi = by_degree.keys().copied().max().unwrap_or(0);
    let ds: HashMap<isize, Matrix<num_bigint::BigInt>> = (lo..=hi + 1).map(|n| (n, differential(n))).collect();
    for n in lo..=hi {
        let (d_in, d_out) = (&ds[&(n + 1)], &ds[&n]);
        let g = crate::exactla::homology_quotient(&ring, d_in, d_out)?;
        if !g.is_zero() {
            log::debug!("total complex has homology {g} in degree {n}");
            return Ok(false);
        }
    }
    Ok(true)
}
