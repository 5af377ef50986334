//! Simple graphs, connected dominating sets and the connected domination
//! polynomial.

use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scomplex::{SimplicialComplex, VertexSet, MAX_VERTICES};

/// Largest graph for which the exhaustive polynomial is computed.
pub const MAX_DOMINATION_VERTICES: usize = 25;

/// A simple undirected graph with bitmask adjacency rows.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Graph {
    adj: Vec<VertexSet>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        assert!(n <= MAX_VERTICES);
        Graph { adj: vec![VertexSet::EMPTY; n] }
    }

    pub fn from_edges<I: IntoIterator<Item = (usize, usize)>>(n: usize, edges: I) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices { m: n, max: MAX_VERTICES });
        }
        let mut g = Graph::new(n);
        for (a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::VertexOutOfRange { vertex: a.max(b), m: n });
            }
            if a == b {
                return Err(Error::InvalidInput(format!("self-loop at vertex {a}")));
            }
            g.add_edge(a, b);
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::new(n);
        for a in 0..n {
            for b in a + 1..n {
                g.add_edge(a, b);
            }
        }
        g
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        debug_assert_ne!(a, b);
        self.adj[a] = self.adj[a].with(b);
        self.adj[b] = self.adj[b].with(a);
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].contains(b)
    }

    pub fn neighbours(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.len()).sum::<usize>() / 2
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n())
            .flat_map(|a| self.adj[a].iter().filter(move |&b| b > a).map(move |b| (a, b)))
            .collect()
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    /// Closed neighbourhood `N[S]`.
    pub fn closed_neighbourhood(&self, s: VertexSet) -> VertexSet {
        s.iter().fold(s, |acc, v| acc.union(self.adj[v]))
    }

    /// Whether the induced subgraph on `s` is connected (true for `s = ∅`).
    pub fn is_connected_within(&self, s: VertexSet) -> bool {
        let Some(start) = s.min() else { return true };
        let mut seen = VertexSet::singleton(start);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let next = frontier
                .iter()
                .fold(VertexSet::EMPTY, |acc, v| acc.union(self.adj[v]))
                .intersection(s)
                .difference(seen);
            seen = seen.union(next);
            frontier = next;
        }
        seen == s
    }

    pub fn is_connected(&self) -> bool {
        self.is_connected_within(self.vertex_set())
    }

    /// Chordality via maximum cardinality search: the reverse visit order is a
    /// perfect elimination ordering exactly when the graph is chordal.
    pub fn is_chordal(&self) -> bool {
        let n = self.n();
        let mut order = Vec::with_capacity(n);
        let mut visited = VertexSet::EMPTY;
        let mut score = vec![0usize; n];
        for _ in 0..n {
            let v = (0..n).filter(|&v| !visited.contains(v)).max_by_key(|&v| (score[v], std::cmp::Reverse(v))).expect("unvisited vertex");
            visited = visited.with(v);
            order.push(v);
            for u in self.adj[v].difference(visited).iter() {
                score[u] += 1;
            }
        }
        // each vertex's earlier neighbours must form a clique
        let mut earlier = VertexSet::EMPTY;
        for &v in &order {
            let back = self.adj[v].intersection(earlier);
            if let Some(latest) = order.iter().rev().find(|&&u| back.contains(u)) {
                let rest = back.without(*latest);
                if !rest.is_subset(self.adj[*latest]) {
                    return false;
                }
            }
            earlier = earlier.with(v);
        }
        true
    }

    /// Maximal cliques (Bron–Kerbosch with pivoting), sorted lexicographically.
    pub fn maximal_cliques(&self) -> Vec<VertexSet> {
        let mut out = Vec::new();
        self.bron_kerbosch(VertexSet::EMPTY, self.vertex_set(), VertexSet::EMPTY, &mut out);
        out.sort_by(|a, b| a.lex_cmp(*b));
        out
    }

    fn bron_kerbosch(&self, r: VertexSet, p: VertexSet, x: VertexSet, out: &mut Vec<VertexSet>) {
        if p.is_empty() {
            if x.is_empty() && !r.is_empty() {
                out.push(r);
            }
            return;
        }
        let pivot = p
            .union(x)
            .iter()
            .max_by_key(|&u| p.intersection(self.adj[u]).len())
            .expect("p is nonempty");
        let (mut p, mut x) = (p, x);
        for v in p.difference(self.adj[pivot]).iter() {
            self.bron_kerbosch(r.with(v), p.intersection(self.adj[v]), x.intersection(self.adj[v]), out);
            p = p.without(v);
            x = x.with(v);
        }
    }
}

/// Integer polynomial, coefficients indexed by degree, without trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct IntPolynomial {
    coeffs: Vec<i64>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, degree: usize) -> i64 {
        self.coeffs.get(degree).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Exact evaluation (Horner).
    pub fn eval(&self, x: i64) -> BigInt {
        let x = BigInt::from(x);
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::from(0), |acc, &c| acc * &x + BigInt::from(c))
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (s, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str(if c < 0 { " - " } else { " + " })?;
            } else if c < 0 {
                f.write_str("-")?;
            }
            first = false;
            match s {
                0 => write!(f, "{}", c.abs())?,
                _ => write!(f, "{} t^{}", c.abs(), s)?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// `N[S] = V` and `G[S]` connected.
pub fn is_connected_dominating(g: &Graph, s: VertexSet) -> bool {
    !s.is_empty() && g.closed_neighbourhood(s) == g.vertex_set() && g.is_connected_within(s)
}

/// The connected domination polynomial, by exhaustive enumeration of all
/// vertex subsets.
pub fn domination_polynomial(g: &Graph) -> Result<IntPolynomial> {
    let n = g.n();
    if n > MAX_DOMINATION_VERTICES {
        return Err(Error::SizeCap { what: "domination polynomial vertex count", needed: n, cap: MAX_DOMINATION_VERTICES });
    }
    if n == 0 || !g.is_connected() {
        return Err(Error::Disconnected);
    }
    const CHUNK: u64 = 1 << 12;
    let total = 1u64 << n;
    let counts = (0..total.div_ceil(CHUNK))
        .into_par_iter()
        .map(|chunk| {
            let mut local = vec![0i64; n + 1];
            for bits in chunk * CHUNK..((chunk + 1) * CHUNK).min(total) {
                let s = VertexSet::from_bits(bits);
                if is_connected_dominating(g, s) {
                    local[s.len()] += 1;
                }
            }
            local
        })
        .reduce(
            || vec![0i64; n + 1],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    Ok(IntPolynomial::new(counts))
}

/// Both sides of the diagonal Euler characteristic identity:
/// `Σ_k (-1)^k rk DH_{-k,2(k+1)}` over ℚ against `D_c(K⁽¹⁾)(-1) + (-1)^{m+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CondomCheck {
    pub lhs: i64,
    pub rhs: i64,
    pub equal: bool,
}

pub fn condom_check(k: &SimplicialComplex) -> Result<CondomCheck> {
    if k.is_simplex() {
        return Err(Error::IsSimplex);
    }
    if !k.is_connected() {
        return Err(Error::Disconnected);
    }
    let lhs = crate::doubleh::diagonal_euler(k, crate::Coeffs::Q)?;
    let poly = domination_polynomial(&k.one_skeleton())?;
    let sign = if (k.m() + 1) % 2 == 0 { 1 } else { -1 };
    let rhs = i64::try_from(poly.eval(-1)).expect("bounded by 2^25") + sign;
    Ok(CondomCheck { lhs, rhs, equal: lhs == rhs })
}
