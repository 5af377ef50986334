//! Seeded generators of test inputs: random complexes, chordal graphs and
//! trees, plus the exhaustive list of complexes on few vertices.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::domination::Graph;
use crate::scomplex::{SimplicialComplex, VertexSet};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random complex on exactly `m` vertices with facets of size at most
/// `max_size`; uncovered vertices become isolated points.
pub fn random_complex<R: Rng>(rng: &mut R, m: usize, max_size: usize) -> SimplicialComplex {
    let count = rng.gen_range(1..=2 * m.max(1));
    let mut facets: Vec<Vec<usize>> = Vec::with_capacity(count + m);
    let vertices: Vec<usize> = (0..m).collect();
    for _ in 0..count {
        let size = rng.gen_range(1..=max_size.min(m).max(1));
        facets.push(vertices.choose_multiple(rng, size).copied().collect());
    }
    let covered = facets.iter().flatten().fold(VertexSet::EMPTY, |s, &v| s.with(v));
    facets.extend(VertexSet::full(m).difference(covered).iter().map(|v| vec![v]));
    SimplicialComplex::from_facets(m, facets).expect("all vertices covered")
}

/// Rejection-samples a connected complex on `m ≥ 3` vertices that is not a simplex.
pub fn random_connected_nonsimplex<R: Rng>(rng: &mut R, m: usize) -> SimplicialComplex {
    assert!(m >= 3, "every connected complex on at most two vertices is a simplex");
    loop {
        let max_size = rng.gen_range(2..=m.min(4));
        let k = random_complex(rng, m, max_size);
        if k.is_connected() && !k.is_simplex() {
            return k;
        }
    }
}

/// A connected chordal graph: each new vertex is joined to a nonempty
/// subset of a maximal clique of the graph so far, so the reverse insertion
/// order is a perfect elimination ordering.
pub fn random_chordal_graph<R: Rng>(rng: &mut R, n: usize) -> Graph {
    let mut g = Graph::new(n);
    for v in 1..n {
        let sub = Graph::from_edges(v, g.edges().into_iter().filter(|&(a, b)| a < v && b < v)).expect("valid edges");
        let cliques = sub.maximal_cliques();
        let clique = cliques.choose(rng).expect("nonempty graph").to_vec();
        let size = rng.gen_range(1..=clique.len());
        for &u in clique.choose_multiple(rng, size) {
            g.add_edge(u, v);
        }
    }
    g
}

/// A uniform-attachment random tree.
pub fn random_tree<R: Rng>(rng: &mut R, n: usize) -> Graph {
    let mut g = Graph::new(n);
    for v in 1..n {
        let u = rng.gen_range(0..v);
        g.add_edge(u, v);
    }
    g
}

/// A connected random graph with a pendant vertex attached.
pub fn random_graph_with_leaf<R: Rng>(rng: &mut R, n: usize) -> Graph {
    assert!(n >= 2);
    loop {
        let mut g = Graph::new(n);
        for a in 0..n - 1 {
            for b in a + 1..n - 1 {
                if rng.gen_bool(0.5) {
                    g.add_edge(a, b);
                }
            }
        }
        g.add_edge(rng.gen_range(0..n - 1), n - 1);
        if g.is_connected() {
            return g;
        }
    }
}

/// The 1-dimensional complex of a graph without isolated vertices.
pub fn graph_complex(g: &Graph) -> SimplicialComplex {
    let mut facets: Vec<Vec<usize>> = g.edges().into_iter().map(|(a, b)| vec![a, b]).collect();
    for v in 0..g.n() {
        if g.degree(v) == 0 {
            facets.push(vec![v]);
        }
    }
    SimplicialComplex::from_facets(g.n(), facets).expect("graph vertices are covered")
}

/// Every complex on exactly the vertex set `{0..m-1}` (no ghost vertices),
/// as the antichains of nonempty subsets covering all vertices.
pub fn all_complexes(m: usize) -> Vec<SimplicialComplex> {
    assert!(m <= 4, "the number of antichains grows doubly exponentially");
    let subsets: Vec<VertexSet> = VertexSet::full(m).subsets().skip(1).collect();
    let mut out = Vec::new();
    let mut chosen: Vec<VertexSet> = Vec::new();
    fn rec(subsets: &[VertexSet], idx: usize, chosen: &mut Vec<VertexSet>, m: usize, out: &mut Vec<SimplicialComplex>) {
        if idx == subsets.len() {
            let covered = chosen.iter().fold(VertexSet::EMPTY, |a, &b| a.union(b));
            if covered == VertexSet::full(m) {
                let facets: Vec<Vec<usize>> = chosen.iter().map(|s| s.to_vec()).collect();
                out.push(SimplicialComplex::from_facets(m, facets).expect("covering antichain"));
            }
            return;
        }
        rec(subsets, idx + 1, chosen, m, out);
        let s = subsets[idx];
        if chosen.iter().all(|&c| !c.is_subset(s) && !s.is_subset(c)) {
            chosen.push(s);
            rec(subsets, idx + 1, chosen, m, out);
            chosen.pop();
        }
    }
    rec(&subsets, 0, &mut chosen, m, &mut out);
    out
}
