//! Bicolourings, horizontal homology and überhomology.
//!
//! The full table is computed one white face at a time: for a colouring with
//! black set `B`, the horizontal differential only removes black vertices, so
//! the horizontal chains split by `τ = σ ∖ B`. Each cube edge either keeps `τ`
//! or kills the chain, hence the über complex splits into one cube over
//! `V ∖ τ` per face `τ` (including the empty face), of weight `|τ|`.

use rayon::prelude::*;

use crate::cube::{compress, cube_homology, sign_below, Cube};
use crate::error::{Error, Result};
use crate::exactla::{induced_map_on_homology, Coeffs, Matrix, Ring};
use crate::homology::{include_cycles, DegreeBasis, SubsetHomologyTable};
use crate::scomplex::{Simplex, SimplicialComplex, VertexSet};
use crate::tables::{BigradedTable, TriGradedTable};
use crate::with_ring;

/// A colouring of the vertices; set bits are black (colour 1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bicolouring(pub VertexSet);

impl Bicolouring {
    pub fn black(self) -> VertexSet {
        self.0
    }

    /// `ℓ(ε)`, the number of black vertices.
    pub fn level(self) -> usize {
        self.0.len()
    }
}

/// Number of white vertices of `σ`.
pub fn weight(sigma: Simplex, eps: Bicolouring) -> usize {
    sigma.vertex_set().difference(eps.black()).len()
}

/// Which black vertices count towards the sign of a cube edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignConvention {
    /// Black vertices before the flipped one.
    Before,
    /// Black vertices after the flipped one.
    After,
}

impl SignConvention {
    pub fn sign(self, black: VertexSet, v: usize) -> i64 {
        match self {
            SignConvention::Before => sign_below(black, v),
            SignConvention::After => {
                let after = black.len() - black.count_below(v) - usize::from(black.contains(v));
                if after % 2 == 0 {
                    1
                } else {
                    -1
                }
            }
        }
    }
}

/// Sign of the cube edge `ε → ε′`.
pub fn uber_edge_sign(eps: Bicolouring, eps2: Bicolouring) -> Result<i64> {
    let flipped = flipped_vertex(eps, eps2)?;
    Ok(sign_below(eps.black(), flipped))
}

fn flipped_vertex(eps: Bicolouring, eps2: Bicolouring) -> Result<usize> {
    let added = eps2.black().difference(eps.black());
    if !eps.black().is_subset(eps2.black()) || added.len() != 1 {
        return Err(Error::NotCubeEdge(format!("{} -> {}", eps.black(), eps2.black())));
    }
    Ok(added.min().expect("one vertex"))
}

/// The horizontal chain complex: faces of `K` by dimension, with `∂_h`
/// removing black vertices only.
#[derive(Clone, Debug)]
pub struct HorizontalComplex<E> {
    pub colouring: Bicolouring,
    /// `faces[i]`: the `i`-faces in lexicographic order.
    pub faces: Vec<Vec<Simplex>>,
    /// `boundaries[i]`: `∂_h` from dimension `i` to `i - 1` (empty for `i = 0`).
    pub boundaries: Vec<Matrix<E>>,
}

/// `∂_h` from `cols` to `rows`, removing only vertices of `removable`.
fn horizontal_boundary<R: Ring>(ring: &R, cols: &[Simplex], rows: &[Simplex], removable: VertexSet) -> Matrix<R::Elem> {
    let mut m = ring.zeros(rows.len(), cols.len());
    for (j, s) in cols.iter().enumerate() {
        for (face, sign) in s.boundary() {
            let removed = s.vertex_set().difference(face.vertex_set());
            if !removed.is_subset(removable) {
                continue;
            }
            if let Ok(i) = rows.binary_search(&face) {
                m.set(i, j, ring.from_i64(sign));
            }
        }
    }
    m
}

pub fn horizontal_complex<R: Ring>(ring: &R, k: &SimplicialComplex, eps: Bicolouring) -> HorizontalComplex<R::Elem> {
    let top = k.dim();
    let faces: Vec<Vec<Simplex>> = (0..=top.max(-1)).map(|d| k.faces_of_dim(d as usize)).collect();
    let mut boundaries = Vec::with_capacity(faces.len());
    for i in 0..faces.len() {
        if i == 0 {
            boundaries.push(ring.zeros(0, faces[0].len()));
        } else {
            boundaries.push(horizontal_boundary(ring, &faces[i], &faces[i - 1], eps.black()));
        }
    }
    HorizontalComplex { colouring: eps, faces, boundaries }
}

impl<E: Clone> HorizontalComplex<E> {
    fn weight_indices(&self, i: isize, k: usize) -> Vec<usize> {
        if i < 0 || i as usize >= self.faces.len() {
            return Vec::new();
        }
        self.faces[i as usize]
            .iter()
            .enumerate()
            .filter(|(_, s)| weight(**s, self.colouring) == k)
            .map(|(n, _)| n)
            .collect()
    }

    /// `∂_h` restricted to weight `k`, from dimension `i` to `i - 1`.
    pub fn block<R: Ring<Elem = E>>(&self, ring: &R, i: isize, k: usize) -> Matrix<E> {
        let cols = self.weight_indices(i, k);
        let rows = self.weight_indices(i - 1, k);
        if i <= 0 || i as usize >= self.faces.len() {
            return ring.zeros(rows.len(), cols.len());
        }
        self.boundaries[i as usize].select_rows(&rows).select_cols(&cols)
    }

    /// `(d_in, d_out)` of the weight-`k` part at dimension `i`.
    pub fn two_step<R: Ring<Elem = E>>(&self, ring: &R, i: isize, k: usize) -> (Matrix<E>, Matrix<E>) {
        (self.block(ring, i + 1, k), self.block(ring, i, k))
    }
}

/// Horizontal homology keyed by `(i, k)`: dimension and weight.
pub fn horizontal_homology(k: &SimplicialComplex, eps: Bicolouring, coeffs: Coeffs) -> Result<BigradedTable> {
    with_ring!(coeffs, r => {
        let hc = horizontal_complex(&r, k, eps);
        let mut out = BigradedTable::new(coeffs);
        for i in 0..hc.faces.len() as isize {
            for w in 0..=(i as usize + 1) {
                let (d_in, d_out) = hc.two_step(&r, i, w);
                let g = r.quotient_class(&d_in, &d_out);
                if coeffs == Coeffs::Z && !g.is_free() {
                    return Err(Error::TorsionObstruction(format!("horizontal homology at (i, k) = ({i}, {w}) is {g}")));
                }
                out.set((i, w as isize), g);
            }
        }
        Ok(out)
    })
}

/// The map on horizontal homology at `(i, k)` along the cube edge `ε → ε′`,
/// sign included.
pub fn uber_edge_map<R: Ring>(ring: &R, k: &SimplicialComplex, eps: Bicolouring, eps2: Bicolouring, i: isize, w: usize) -> Result<Matrix<R::Elem>> {
    let flipped = flipped_vertex(eps, eps2)?;
    let sign = uber_edge_sign(eps, eps2)?;
    let src = horizontal_complex(ring, k, eps);
    let tgt = horizontal_complex(ring, k, eps2);
    let src_idx = src.weight_indices(i, w);
    let tgt_idx = tgt.weight_indices(i, w);
    let mut f = ring.zeros(tgt_idx.len(), src_idx.len());
    if i >= 0 && (i as usize) < src.faces.len() {
        let faces = &src.faces[i as usize];
        for (c, &n) in src_idx.iter().enumerate() {
            let s = faces[n];
            if s.vertex_set().contains(flipped) {
                continue;
            }
            let r = tgt_idx.iter().position(|&t| tgt.faces[i as usize][t] == s).expect("weight preserved");
            f.set(r, c, ring.from_i64(sign));
        }
    }
    let (s_in, s_out) = src.two_step(ring, i, w);
    let (t_in, t_out) = tgt.two_step(ring, i, w);
    induced_map_on_homology(ring, &f, (&s_in, &s_out), (&t_in, &t_out))
}

/// Chains of the white-face block `C_τ(B)`: faces `τ ⊔ β` with `β ⊆ B`.
struct TauBlock<E> {
    /// Homology bases by dimension, from `|τ| - 1` (or 0 for `τ = ∅`).
    bases: Vec<DegreeBasis<E>>,
}

fn tau_block<R: Ring>(ring: &R, link: &[VertexSet], tau: VertexSet, black: VertexSet, dims: &[isize]) -> Result<TauBlock<R::Elem>> {
    let restricted: Vec<VertexSet> = link.iter().map(|f| f.intersection(black)).collect();
    let mut faces: Vec<Vec<Simplex>> = Vec::with_capacity(dims.len());
    for &i in dims {
        let beta_size = i + 1 - tau.len() as isize;
        let mut out = Vec::new();
        if beta_size == 0 && !tau.is_empty() {
            out.push(Simplex::new(tau));
        } else if beta_size > 0 {
            let mut seen = std::collections::HashSet::new();
            for &f in &restricted {
                if f.len() >= beta_size as usize {
                    crate::scomplex::for_each_k_subset(f, beta_size as usize, &mut |b| {
                        seen.insert(b);
                    });
                }
            }
            out = seen.into_iter().map(|b| Simplex::new(b.union(tau))).collect();
            out.sort();
        }
        faces.push(out);
    }
    let boundary = |n: usize| -> Matrix<R::Elem> {
        if n == 0 || n >= faces.len() {
            let rows = if n == 0 || n > faces.len() { 0 } else { faces[n - 1].len() };
            let cols = if n < faces.len() { faces[n].len() } else { 0 };
            return ring.zeros(rows, cols);
        }
        horizontal_boundary(ring, &faces[n], &faces[n - 1], black)
    };
    let mut bases = Vec::with_capacity(faces.len());
    for n in 0..faces.len() {
        let d_out = boundary(n);
        let d_in = boundary(n + 1);
        let basis = ring.homology_basis(&d_in, &d_out).map_err(|e| match e {
            Error::TorsionObstruction(_) => Error::TorsionObstruction(format!(
                "horizontal homology of the block with white face {tau} and black set {black} in dimension {}",
                dims[n]
            )),
            e => e,
        })?;
        bases.push(DegreeBasis { faces: faces[n].clone(), basis });
    }
    Ok(TauBlock { bases })
}

/// Über cube of one white face: returns `(j, i, class)` triples.
/// `(j, i, group)` entries of one white-face block.
type BlockEntries = Vec<(isize, isize, crate::AbelianGroupClass)>;

fn tau_cube<R: Ring>(ring: &R, k: &SimplicialComplex, tau: VertexSet, convention: SignConvention) -> Result<BlockEntries> {
    let ground = k.vertex_set().difference(tau);
    let link: Vec<VertexSet> = k
        .facets()
        .iter()
        .filter(|f| tau.is_subset(**f))
        .map(|f| f.difference(tau))
        .collect();
    let lo = if tau.is_empty() { 0 } else { tau.len() as isize - 1 };
    let dims: Vec<isize> = (lo..=k.dim().max(0)).collect();
    let blocks: Vec<TauBlock<R::Elem>> = ground
        .subsets()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|b| tau_block(ring, &link, tau, b, &dims))
        .collect::<Result<_>>()?;
    // subsets() enumerates in numeric order, which matches compress order
    let mut out = Vec::new();
    for (n, &i) in dims.iter().enumerate() {
        let dim = |b: VertexSet| blocks[compress(b, ground)].bases[n].basis.dim();
        let edge = |b: VertexSet, v: usize| {
            let src = &blocks[compress(b, ground)].bases[n];
            let tgt = &blocks[compress(b.with(v), ground)].bases[n];
            if src.basis.dim() == 0 || tgt.basis.dim() == 0 {
                return Ok(ring.zeros(tgt.basis.dim(), src.basis.dim()));
            }
            Ok(include_cycles(ring, src, tgt))
        };
        let sign = |b: VertexSet, v: usize| convention.sign(b, v);
        let cube = Cube { ground, dim: &dim, edge: &edge, sign: &sign };
        for (j, g) in cube_homology(ring, &cube)?.into_iter().enumerate() {
            if !g.is_zero() {
                out.push((j as isize, i, g));
            }
        }
    }
    Ok(out)
}

/// `Ḧ^j_{k,i}(K)` keyed by `(j, k, i)`.
pub fn uberhomology(k: &SimplicialComplex, coeffs: Coeffs) -> Result<TriGradedTable> {
    uberhomology_with(k, coeffs, SignConvention::Before)
}

pub fn uberhomology_with(k: &SimplicialComplex, coeffs: Coeffs, convention: SignConvention) -> Result<TriGradedTable> {
    crate::homology::check_subset_cap(k.m(), crate::homology::DEFAULT_SUBSET_CAP)?;
    if !k.is_connected() {
        log::warn!("überhomology of a disconnected complex");
    }
    let mut taus = vec![VertexSet::EMPTY];
    for d in 0..=k.dim() {
        taus.extend(k.faces_of_dim(d as usize).into_iter().map(|s| s.vertex_set()));
    }
    let parts: Vec<(VertexSet, BlockEntries)> = with_ring!(coeffs, r => taus
        .par_iter()
        .map(|&tau| tau_cube(&r, k, tau, convention).map(|v| (tau, v)))
        .collect::<Result<Vec<_>>>())?;
    let mut out = TriGradedTable::new(coeffs);
    for (tau, entries) in parts {
        for (j, i, g) in entries {
            out.add((j, tau.len() as isize, i), &g);
        }
    }
    Ok(out)
}

/// `B̈^j_i` from the empty-white-face block alone, which builds its own
/// chains and bases instead of using a subset table.
pub fn uber_b_by_blocks(k: &SimplicialComplex, coeffs: Coeffs) -> Result<BigradedTable> {
    crate::homology::check_subset_cap(k.m(), crate::homology::DEFAULT_SUBSET_CAP)?;
    let entries = with_ring!(coeffs, r => tau_cube(&r, k, VertexSet::EMPTY, SignConvention::Before))?;
    let mut out = BigradedTable::new(coeffs);
    for (j, i, g) in entries {
        out.add((j, i), &g);
    }
    Ok(out)
}

/// `B̈^j_i` from an unreduced subset table, keyed by `(j, i)`.
pub fn uber_b_of_table<R: Ring>(table: &SubsetHomologyTable<R>) -> Result<BigradedTable> {
    assert!(!table.is_reduced(), "0-degree überhomology uses unreduced homology");
    let mut out = BigradedTable::new(table.coeffs());
    for i in 0..=table.top_degree() {
        table.ensure_free(i)?;
        let dim = |b: VertexSet| table.basis_dim(b, i);
        let edge = |b: VertexSet, v: usize| table.inclusion_map(b, v, i);
        let cube = Cube { ground: VertexSet::full(table.m()), dim: &dim, edge: &edge, sign: &sign_below };
        for (j, g) in cube_homology(table.ring(), &cube)?.into_iter().enumerate() {
            out.set((j as isize, i), g);
        }
    }
    Ok(out)
}

/// 0-degree überhomology `B̈^j_i`, keyed by `(j, i)`.
#[allow(non_snake_case)]
pub fn uber_B(k: &SimplicialComplex, coeffs: Coeffs) -> Result<BigradedTable> {
    with_ring!(coeffs, r => uber_b_of_table(&SubsetHomologyTable::build(r, k, false)?))
}

/// The weight-0 slice `(j, i)` of a full table.
pub fn weight_zero_slice(t: &TriGradedTable) -> BigradedTable {
    t.map_keys(|(j, k, i)| (k == 0).then_some((j, i)))
}
