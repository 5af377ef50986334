//! Simplicial chain complexes, graded homology, and the table of homologies of
//! all induced subcomplexes together with the maps induced by inclusions.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactla::{AbelianGroupClass, Coeffs, HomologyBasis, Matrix, Ring};
use crate::scomplex::{Simplex, SimplicialComplex, VertexSet};
use crate::with_ring;

/// Default largest vertex count for tables over all `2^m` subsets.
pub const DEFAULT_SUBSET_CAP: usize = 20;

/// Simplicial chains in degrees `-1..=top`. The unreduced variant has an
/// empty degree `-1`; the reduced one has the empty simplex there and the
/// augmentation as its boundary from degree 0.
#[derive(Clone, Debug)]
pub struct ChainComplex<E> {
    reduced: bool,
    bases: Vec<Vec<Simplex>>,
    /// `boundaries[k]`: degree `k - 1` to degree `k - 2`.
    boundaries: Vec<Matrix<E>>,
}

impl<E: Clone> ChainComplex<E> {
    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    /// Largest degree with a (possibly empty) chain group.
    pub fn top_degree(&self) -> isize {
        self.bases.len() as isize - 2
    }

    pub fn basis(&self, d: isize) -> &[Simplex] {
        self.idx(d).map_or(&[], |k| &self.bases[k])
    }

    pub fn rank(&self, d: isize) -> usize {
        self.basis(d).len()
    }

    fn idx(&self, d: isize) -> Option<usize> {
        let k = d + 1;
        (k >= 0 && (k as usize) < self.bases.len()).then_some(k as usize)
    }

    /// `∂_d : C_d → C_{d-1}`.
    pub fn boundary<R: Ring<Elem = E>>(&self, ring: &R, d: isize) -> Matrix<E> {
        match self.idx(d) {
            Some(k) => self.boundaries[k].clone(),
            None => ring.zeros(self.rank(d - 1), self.rank(d)),
        }
    }
}

/// Chains of the complex generated by `facets` (labels as given).
pub fn chain_complex_of_facets<R: Ring>(ring: &R, facets: &[VertexSet], reduced: bool, top: isize) -> ChainComplex<R::Elem> {
    let mut bases: Vec<Vec<Simplex>> = Vec::with_capacity((top + 2).max(1) as usize);
    let nonempty = !facets.is_empty();
    bases.push(if reduced { vec![Simplex::new(VertexSet::EMPTY)] } else { Vec::new() });
    for d in 0..=top {
        bases.push(if nonempty { faces_of_dim(facets, d as usize) } else { Vec::new() });
    }
    let mut boundaries = Vec::with_capacity(bases.len());
    boundaries.push(ring.zeros(0, bases[0].len()));
    for k in 1..bases.len() {
        boundaries.push(boundary_matrix(ring, &bases[k], &bases[k - 1]));
    }
    let cc = ChainComplex { reduced, bases, boundaries };
    for k in 1..cc.boundaries.len() {
        assert!(
            ring.is_zero_matrix(&ring.matmul(&cc.boundaries[k - 1], &cc.boundaries[k])),
            "boundary of a boundary is nonzero in degree {}",
            k as isize - 1
        );
    }
    cc
}

fn faces_of_dim(facets: &[VertexSet], d: usize) -> Vec<Simplex> {
    // reuse the complex's enumeration without re-validating the facets
    let mut seen = std::collections::HashSet::new();
    for &f in facets {
        if f.len() == d + 1 {
            seen.insert(f);
        } else if f.len() > d + 1 {
            crate::scomplex::for_each_k_subset(f, d + 1, &mut |s| {
                seen.insert(s);
            });
        }
    }
    let mut out: Vec<Simplex> = seen.into_iter().map(Simplex::new).collect();
    out.sort();
    out
}

/// Signed incidence matrix from `cols` (d-faces) to `rows` ((d-1)-faces).
pub fn boundary_matrix<R: Ring>(ring: &R, cols: &[Simplex], rows: &[Simplex]) -> Matrix<R::Elem> {
    let index: HashMap<VertexSet, usize> = rows.iter().enumerate().map(|(i, s)| (s.vertex_set(), i)).collect();
    let mut m = ring.zeros(rows.len(), cols.len());
    for (j, s) in cols.iter().enumerate() {
        for (face, sign) in s.boundary() {
            match index.get(&face.vertex_set()) {
                Some(&i) => m.set(i, j, ring.from_i64(sign)),
                None => assert!(face.vertex_set().is_empty(), "face {face:?} missing from the basis"),
            }
        }
    }
    m
}

pub fn chain_complex<R: Ring>(ring: &R, k: &SimplicialComplex, reduced: bool) -> ChainComplex<R::Elem> {
    chain_complex_of_facets(ring, k.facets(), reduced, k.dim())
}

/// Homology in each degree `>= -1`; absent degrees are zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GradedGroup {
    pub coeffs: Coeffs,
    groups: BTreeMap<isize, AbelianGroupClass>,
}

impl GradedGroup {
    pub fn zero(coeffs: Coeffs) -> Self {
        GradedGroup { coeffs, groups: BTreeMap::new() }
    }

    pub fn get(&self, d: isize) -> AbelianGroupClass {
        self.groups.get(&d).cloned().unwrap_or_else(|| AbelianGroupClass::zero(self.coeffs))
    }

    pub fn set(&mut self, d: isize, g: AbelianGroupClass) {
        if g.is_zero() {
            self.groups.remove(&d);
        } else {
            self.groups.insert(d, g);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (isize, &AbelianGroupClass)> {
        self.groups.iter().map(|(&d, g)| (d, g))
    }

    pub fn is_zero(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn ranks(&self) -> BTreeMap<isize, usize> {
        self.groups.iter().map(|(&d, g)| (d, g.rank)).collect()
    }
}

impl fmt::Debug for GradedGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.groups.iter()).finish()
    }
}

pub fn homology_of_chains<R: Ring>(ring: &R, cc: &ChainComplex<R::Elem>) -> GradedGroup {
    let mut out = GradedGroup::zero(ring.coeffs());
    for d in -1..=cc.top_degree() {
        let g = ring.quotient_class(&cc.boundary(ring, d + 1), &cc.boundary(ring, d));
        out.set(d, g);
    }
    out
}

pub fn homology(k: &SimplicialComplex, reduced: bool, coeffs: Coeffs) -> GradedGroup {
    with_ring!(coeffs, r => homology_of_chains(&r, &chain_complex(&r, k, reduced)))
}

/// Homology basis data of one induced subcomplex in one degree.
#[derive(Clone, Debug)]
pub struct DegreeBasis<E> {
    pub faces: Vec<Simplex>,
    pub basis: HomologyBasis<E>,
}

#[derive(Clone, Debug)]
struct SubsetEntry<E> {
    groups: GradedGroup,
    /// Index `d + 1`; `None` where an integral basis is unavailable (torsion).
    bases: Vec<Option<DegreeBasis<E>>>,
}

/// Homology of `K[I]` for every `I ⊆ V`, with deterministic bases.
#[derive(Clone, Debug)]
pub struct SubsetHomologyTable<R: Ring> {
    ring: R,
    m: usize,
    reduced: bool,
    top: isize,
    entries: Vec<SubsetEntry<R::Elem>>,
}

/// Fails with [`Error::SizeCap`] when `m > cap`.
pub fn check_subset_cap(m: usize, cap: usize) -> Result<()> {
    if m > cap {
        return Err(Error::SizeCap { what: "vertex count for subset enumeration", needed: m, cap });
    }
    Ok(())
}

impl<R: Ring> SubsetHomologyTable<R> {
    pub fn build(ring: R, k: &SimplicialComplex, reduced: bool) -> Result<Self> {
        Self::build_with_cap(ring, k, reduced, DEFAULT_SUBSET_CAP)
    }

    pub fn build_with_cap(ring: R, k: &SimplicialComplex, reduced: bool, cap: usize) -> Result<Self> {
        check_subset_cap(k.m(), cap)?;
        let top = k.dim().max(0);
        let entries: Vec<SubsetEntry<R::Elem>> = (0..1u64 << k.m())
            .into_par_iter()
            .map(|bits| {
                let facets = k.induced_facets(VertexSet::from_bits(bits));
                let cc = chain_complex_of_facets(&ring, &facets, reduced, top);
                let mut groups = GradedGroup::zero(ring.coeffs());
                let mut bases = Vec::with_capacity((top + 2) as usize);
                for d in -1..=top {
                    let (d_in, d_out) = (cc.boundary(&ring, d + 1), cc.boundary(&ring, d));
                    groups.set(d, ring.quotient_class(&d_in, &d_out));
                    let basis = ring
                        .homology_basis(&d_in, &d_out)
                        .ok()
                        .map(|basis| DegreeBasis { faces: cc.basis(d).to_vec(), basis });
                    bases.push(basis);
                }
                SubsetEntry { groups, bases }
            })
            .collect();
        Ok(SubsetHomologyTable { ring, m: k.m(), reduced, top, entries })
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn coeffs(&self) -> Coeffs {
        self.ring.coeffs()
    }

    /// Highest degree stored (`max(dim K, 0)`).
    pub fn top_degree(&self) -> isize {
        self.top
    }

    pub fn groups(&self, subset: VertexSet) -> &GradedGroup {
        &self.entries[subset.bits() as usize].groups
    }

    pub fn group(&self, subset: VertexSet, d: isize) -> AbelianGroupClass {
        self.groups(subset).get(d)
    }

    /// Dimension of the chosen homology basis (the free rank).
    pub fn basis_dim(&self, subset: VertexSet, d: isize) -> usize {
        self.group(subset, d).rank
    }

    pub fn basis(&self, subset: VertexSet, d: isize) -> Result<&DegreeBasis<R::Elem>> {
        let k = d + 1;
        if k < 0 || k as usize >= self.entries[0].bases.len() {
            return Err(Error::InvalidInput(format!("degree {d} outside the table")));
        }
        self.entries[subset.bits() as usize].bases[k as usize]
            .as_ref()
            .ok_or_else(|| Error::TorsionObstruction(format!("H_{d}(K[{subset}]) = {}", self.group(subset, d))))
    }

    /// Fails with [`Error::TorsionObstruction`] if some `H_d(K[I])` has torsion.
    pub fn ensure_free(&self, d: isize) -> Result<()> {
        for (bits, e) in self.entries.iter().enumerate() {
            let g = e.groups.get(d);
            if !g.is_free() {
                return Err(Error::TorsionObstruction(format!("H_{d}(K[{}]) = {g}", VertexSet::from_bits(bits as u64))));
            }
        }
        Ok(())
    }

    /// `φ_{d,I,j}`: the map `H_d(K[I]) → H_d(K[I ∪ {j}])` in the stored bases.
    pub fn inclusion_map(&self, subset: VertexSet, j: usize, d: isize) -> Result<Matrix<R::Elem>> {
        if subset.contains(j) || j >= self.m {
            return Err(Error::NotCubeEdge(format!("vertex {j} is not outside {subset}")));
        }
        let target = subset.with(j);
        let src_dim = self.basis_dim(subset, d);
        let tgt_dim = self.basis_dim(target, d);
        if src_dim == 0 || tgt_dim == 0 {
            return Ok(self.ring.zeros(tgt_dim, src_dim));
        }
        let src = self.basis(subset, d)?;
        let tgt = self.basis(target, d)?;
        Ok(include_cycles(&self.ring, src, tgt))
    }
}

/// Pushes the source cycles into the target chain basis (faces matched by
/// vertex set) and reads off class coordinates.
pub(crate) fn include_cycles<R: Ring>(ring: &R, src: &DegreeBasis<R::Elem>, tgt: &DegreeBasis<R::Elem>) -> Matrix<R::Elem> {
    let mut image = ring.zeros(tgt.faces.len(), src.basis.dim());
    for (row, face) in src.faces.iter().enumerate() {
        let t = tgt.faces.binary_search(face).expect("source face lies in the target complex");
        for c in 0..src.basis.dim() {
            image.set(t, c, src.basis.cycles.get(row, c).clone());
        }
    }
    ring.matmul(&tgt.basis.projection, &image)
}

/// Class-only view of a subset table, as stored in the on-disk cache.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetClassTable {
    pub m: usize,
    pub reduced: bool,
    pub coeffs: Coeffs,
    pub entries: Vec<GradedGroup>,
}

impl<R: Ring> SubsetHomologyTable<R> {
    pub fn classes(&self) -> SubsetClassTable {
        SubsetClassTable {
            m: self.m,
            reduced: self.reduced,
            coeffs: self.coeffs(),
            entries: self.entries.iter().map(|e| e.groups.clone()).collect(),
        }
    }
}

/// Homology classes of all induced subcomplexes, without bases.
pub fn subset_homology_classes(k: &SimplicialComplex, reduced: bool, coeffs: Coeffs, cap: usize) -> Result<SubsetClassTable> {
    check_subset_cap(k.m(), cap)?;
    let top = k.dim().max(0);
    let entries = with_ring!(coeffs, r => (0..1u64 << k.m())
        .into_par_iter()
        .map(|bits| {
            let facets = k.induced_facets(VertexSet::from_bits(bits));
            homology_of_chains(&r, &chain_complex_of_facets(&r, &facets, reduced, top))
        })
        .collect::<Vec<_>>());
    Ok(SubsetClassTable { m: k.m(), reduced, coeffs, entries })
}
