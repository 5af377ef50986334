//! Finite abstract simplicial complexes stored by their facets.
//!
//! Vertices are `0..m` and the input order is canonical: every sign convention
//! in the crate (boundary maps, cube edges, nerve faces) is derived from it.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::domination::Graph;
use crate::error::{Error, Result};

/// Largest supported vertex count; a vertex set fits in one machine word.
pub const MAX_VERTICES: usize = 62;

/// A set of vertex indices below [`MAX_VERTICES`], stored as a bitmask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    /// `{0, .., m-1}`.
    pub fn full(m: usize) -> Self {
        debug_assert!(m <= MAX_VERTICES);
        if m == 0 {
            VertexSet(0)
        } else {
            VertexSet(u64::MAX >> (64 - m))
        }
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1 << v)
    }

    pub fn from_vertices<I: IntoIterator<Item = usize>>(vs: I) -> Self {
        VertexSet(vs.into_iter().fold(0, |acc, v| acc | (1u64 << v)))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | 1 << v)
    }

    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1 << v))
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Number of members strictly below `v`.
    pub fn count_below(self, v: usize) -> usize {
        (self.0 & ((1u64 << v) - 1)).count_ones() as usize
    }

    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn max(self) -> Option<usize> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros() as usize)
    }

    /// Members in increasing order.
    pub fn iter(self) -> VertexIter {
        VertexIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// All subsets of `self`, in increasing numeric order of their bitmasks.
    pub fn subsets(self) -> impl Iterator<Item = VertexSet> {
        let mask = self.0;
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let cur = next?;
            // standard submask successor
            next = if cur == mask { None } else { Some((cur.wrapping_sub(mask)) & mask) };
            Some(VertexSet(cur))
        })
    }

    /// Subsets of `self` of each cardinality, each list in numeric order.
    pub fn subsets_by_size(self) -> Vec<Vec<VertexSet>> {
        let mut out = vec![Vec::new(); self.len() + 1];
        for s in self.subsets() {
            out[s.len()].push(s);
        }
        out
    }

    /// Lexicographic order on the increasing vertex lists.
    pub fn lex_cmp(self, other: Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, v) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

pub struct VertexIter(u64);

impl Iterator for VertexIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for VertexIter {}

/// An oriented simplex: its vertices in strictly increasing order.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Simplex(VertexSet);

impl Simplex {
    pub fn new(vertices: VertexSet) -> Self {
        Simplex(vertices)
    }

    pub fn from_vertices<I: IntoIterator<Item = usize>>(vs: I) -> Self {
        Simplex(VertexSet::from_vertices(vs))
    }

    pub fn vertex_set(self) -> VertexSet {
        self.0
    }

    pub fn vertices(self) -> Vec<usize> {
        self.0.to_vec()
    }

    pub fn dim(self) -> isize {
        self.0.len() as isize - 1
    }

    /// Index of `v` in the increasing vertex list; `v` must be a vertex.
    pub fn position(self, v: usize) -> usize {
        debug_assert!(self.0.contains(v));
        self.0.count_below(v)
    }

    /// Codimension-one faces paired with the sign `(-1)^r` of removing the
    /// `r`-th vertex.
    pub fn boundary(self) -> impl Iterator<Item = (Simplex, i64)> {
        let s = self.0;
        s.iter()
            .enumerate()
            .map(move |(r, v)| (Simplex(s.without(v)), if r % 2 == 0 { 1 } else { -1 }))
    }
}

impl Ord for Simplex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.lex_cmp(other.0)
    }
}

impl PartialOrd for Simplex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A finite simplicial complex on vertices `0..m`, represented by its facets.
///
/// Facets are pairwise incomparable and sorted lexicographically. Apart from
/// the distinguished empty complex, every vertex lies in some facet.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    m: usize,
    facets: Vec<VertexSet>,
}

/// An induced subcomplex relabelled onto `0..|I|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedSubcomplex {
    pub complex: SimplicialComplex,
    /// `vertex_map[new] = old`.
    pub vertex_map: Vec<usize>,
}

fn maximal_sets(mut sets: Vec<VertexSet>) -> Vec<VertexSet> {
    sets.retain(|s| !s.is_empty());
    // larger sets first so a single pass suffices
    sets.sort_by(|a, b| b.len().cmp(&a.len()).then(a.lex_cmp(*b)));
    sets.dedup();
    let mut kept: Vec<VertexSet> = Vec::with_capacity(sets.len());
    for s in sets {
        if !kept.iter().any(|k| s.is_subset(*k)) {
            kept.push(s);
        }
    }
    kept.sort_by(|a, b| a.lex_cmp(*b));
    kept
}

impl SimplicialComplex {
    /// Builds a complex from a list of (not necessarily maximal) faces.
    pub fn from_facets<F, V>(m: usize, facets: F) -> Result<Self>
    where
        F: IntoIterator<Item = V>,
        V: AsRef<[usize]>,
    {
        if m > MAX_VERTICES {
            return Err(Error::TooManyVertices { m, max: MAX_VERTICES });
        }
        let mut sets = Vec::new();
        for facet in facets {
            let mut s = VertexSet::EMPTY;
            for &v in facet.as_ref() {
                if v >= m {
                    return Err(Error::VertexOutOfRange { vertex: v, m });
                }
                s = s.with(v);
            }
            sets.push(s);
        }
        let facets = maximal_sets(sets);
        let covered = facets.iter().fold(VertexSet::EMPTY, |a, f| a.union(*f));
        if !facets.is_empty() || m > 0 {
            if let Some(v) = VertexSet::full(m).difference(covered).min() {
                return Err(Error::GhostVertex(v));
            }
        }
        Ok(SimplicialComplex { m, facets })
    }

    fn from_sets_unchecked(m: usize, sets: Vec<VertexSet>) -> Self {
        SimplicialComplex { m, facets: maximal_sets(sets) }
    }

    /// The complex with no vertices and no faces, `K[∅]`.
    pub fn empty() -> Self {
        SimplicialComplex { m: 0, facets: Vec::new() }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::full(self.m)
    }

    pub fn facets(&self) -> &[VertexSet] {
        &self.facets
    }

    pub fn facet_lists(&self) -> Vec<Vec<usize>> {
        self.facets.iter().map(|f| f.to_vec()).collect()
    }

    pub fn is_empty_complex(&self) -> bool {
        self.facets.is_empty()
    }

    /// Dimension; `-1` for the empty complex.
    pub fn dim(&self) -> isize {
        self.facets.iter().map(|f| f.len() as isize - 1).max().unwrap_or(-1)
    }

    pub fn contains_face(&self, face: VertexSet) -> bool {
        self.facets.iter().any(|f| face.is_subset(*f))
    }

    /// All `d`-faces, lexicographically ordered. This order is the chain basis.
    pub fn faces_of_dim(&self, d: usize) -> Vec<Simplex> {
        faces_of_dim_in(&self.facets, d)
    }

    /// `d`-faces of the induced subcomplex `K[I]`, in the original labels.
    pub fn faces_of_dim_within(&self, subset: VertexSet, d: usize) -> Vec<Simplex> {
        faces_of_dim_in(&self.induced_facets(subset), d)
    }

    /// Facets of `K[I]` in the original labels.
    pub fn induced_facets(&self, subset: VertexSet) -> Vec<VertexSet> {
        maximal_sets(self.facets.iter().map(|f| f.intersection(subset)).collect())
    }

    /// `f_d` for `d = 0..=dim`.
    pub fn f_vector(&self) -> Vec<usize> {
        (0..=self.dim().max(-1))
            .map(|d| self.faces_of_dim(d as usize).len())
            .collect()
    }

    /// The subcomplex induced on `subset`, relabelled onto `0..|subset|`.
    pub fn induced(&self, subset: VertexSet) -> InducedSubcomplex {
        let subset = subset.intersection(self.vertex_set());
        let vertex_map = subset.to_vec();
        let mut relabel = [usize::MAX; 64];
        for (new, &old) in vertex_map.iter().enumerate() {
            relabel[old] = new;
        }
        let sets = self
            .induced_facets(subset)
            .into_iter()
            .map(|f| VertexSet::from_vertices(f.iter().map(|v| relabel[v])))
            .collect();
        let complex = if subset.is_empty() {
            SimplicialComplex::empty()
        } else {
            SimplicialComplex::from_sets_unchecked(vertex_map.len(), sets)
        };
        InducedSubcomplex { complex, vertex_map }
    }

    /// The anti-star of `v`: the subcomplex induced on all other vertices.
    pub fn antistar(&self, v: usize) -> InducedSubcomplex {
        self.induced(self.vertex_set().without(v))
    }

    pub fn one_skeleton(&self) -> Graph {
        let mut g = Graph::new(self.m);
        for e in self.faces_of_dim(1) {
            let vs = e.vertices();
            g.add_edge(vs[0], vs[1]);
        }
        g
    }

    /// True iff the only facet is the full vertex set.
    pub fn is_simplex(&self) -> bool {
        self.m > 0 && self.facets.len() == 1 && self.facets[0] == self.vertex_set()
    }

    /// Connectivity of the 1-skeleton; the empty complex and a point count as connected.
    pub fn is_connected(&self) -> bool {
        self.one_skeleton().is_connected()
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.m);
        let sets = self
            .facets
            .iter()
            .map(|f| VertexSet::from_vertices(f.iter().map(|v| perm[v])))
            .collect();
        SimplicialComplex::from_sets_unchecked(self.m, sets)
    }

    /// Stable content hash of `(m, facets)`.
    pub fn content_hash(&self) -> String {
        use sha2::{Digest, Sha256};
        let mut h = Sha256::new();
        h.update(format!("m={};", self.m).as_bytes());
        for f in &self.facets {
            h.update(format!("{f};").as_bytes());
        }
        hex::encode(h.finalize())
    }

    /// The full simplex on `m` vertices.
    pub fn simplex(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidInput("simplex needs at least one vertex".into()));
        }
        Self::from_facets(m, [(0..m).collect::<Vec<_>>()])
    }

    /// The boundary of the simplex on `m` vertices: all `(m-1)`-subsets.
    pub fn boundary_simplex(m: usize) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidInput("boundary of a simplex needs at least two vertices".into()));
        }
        let facets: Vec<Vec<usize>> =
            (0..m).map(|skip| (0..m).filter(|&v| v != skip).collect()).collect();
        Self::from_facets(m, facets)
    }

    /// The cycle graph `C_n` as a 1-dimensional complex.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::CycleTooSmall(n));
        }
        Self::from_facets(n, (0..n).map(|i| [i, (i + 1) % n]))
    }

    /// The boundary of the icosahedron: 12 vertices, 30 edges, 20 triangles.
    ///
    /// Vertex 0 is the top, 1..=5 the upper ring, 6..=10 the lower ring and
    /// 11 the bottom.
    pub fn icosahedron() -> Self {
        let mut facets = Vec::with_capacity(20);
        for i in 0..5 {
            let (u, u1) = (1 + i, 1 + (i + 1) % 5);
            let (l, l1) = (6 + i, 6 + (i + 1) % 5);
            facets.push(vec![0, u, u1]);
            facets.push(vec![u, u1, l]);
            facets.push(vec![u1, l, l1]);
            facets.push(vec![l, l1, 11]);
        }
        Self::from_facets(12, facets).expect("icosahedron is well formed")
    }

    /// The clique complex of `g`: facets are the maximal cliques.
    pub fn flag_complex(g: &Graph) -> Result<Self> {
        let cliques = g.maximal_cliques();
        Self::from_facets(g.n(), cliques.iter().map(|c| c.to_vec()))
    }
}

fn faces_of_dim_in(facets: &[VertexSet], d: usize) -> Vec<Simplex> {
    let k = d + 1;
    let mut seen: HashSet<VertexSet> = HashSet::new();
    for &f in facets {
        if f.len() < k {
            continue;
        }
        if f.len() == k {
            seen.insert(f);
            continue;
        }
        for_each_k_subset(f, k, &mut |s| {
            seen.insert(s);
        });
    }
    let mut out: Vec<Simplex> = seen.into_iter().map(Simplex).collect();
    out.sort();
    out
}

/// Calls `f` on every `k`-element subset of `set`.
pub(crate) fn for_each_k_subset(set: VertexSet, k: usize, f: &mut dyn FnMut(VertexSet)) {
    fn rec(rest: &[usize], k: usize, acc: VertexSet, f: &mut dyn FnMut(VertexSet)) {
        if k == 0 {
            f(acc);
            return;
        }
        if rest.len() < k {
            return;
        }
        rec(&rest[1..], k - 1, acc.with(rest[0]), f);
        rec(&rest[1..], k, acc, f);
    }
    let vs = set.to_vec();
    rec(&vs, k, VertexSet::EMPTY, f);
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K(m={}, facets={:?})", self.m, self.facets)
    }
}
