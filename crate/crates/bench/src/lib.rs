//! Named inputs shared by the benchmarks under `benches/`.

use uberdh::random::{random_connected_nonsimplex, rng};
use uberdh::SimplicialComplex;

/// Complexes of increasing size, from the boundary of a tetrahedron to the icosahedron.
pub fn fixtures() -> Vec<(&'static str, SimplicialComplex)> {
    vec![
        ("boundary-tetrahedron", SimplicialComplex::boundary_simplex(4).expect("m >= 2")),
        ("cycle-8", SimplicialComplex::cycle(8).expect("n >= 3")),
        ("random-9", random_connected_nonsimplex(&mut rng(9), 9)),
        ("icosahedron", SimplicialComplex::icosahedron()),
    ]
}
