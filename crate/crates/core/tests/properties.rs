//! Seeded property suites over random and exhaustive inputs.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;

use uberdh::domination::{is_connected_dominating, Graph};
use uberdh::doubleh::{check_double_differential, double_homology, double_homology_of_table, hochster_table};
use uberdh::exactla::{PrimeField, Rationals, Ring};
use uberdh::homology::SubsetHomologyTable;
use uberdh::mvss::{check_delta1, e1_page, e2_page, row_euler, Variant};
use uberdh::random::{
    all_complexes, graph_complex, random_complex, random_connected_nonsimplex, random_graph_with_leaf, random_tree, rng,
};
use uberdh::uber::{horizontal_homology, uber_b_by_blocks, uberhomology_with, weight_zero_slice, SignConvention};
use uberdh::verify::{verify_all, DIAGONAL_DOMINATION};
use uberdh::{
    domination_polynomial, homology, uber_B, uberhomology, AbelianGroupClass, Bicolouring, Coeffs, SimplicialComplex,
    VertexSet,
};

const FIELDS: [Coeffs; 2] = [Coeffs::Q, Coeffs::F2];

fn random_permutation<R: Rng>(r: &mut R, m: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..m).collect();
    p.shuffle(r);
    p
}

#[test]
fn tables_are_invariant_under_relabelling() {
    let mut r = rng(11);
    for _ in 0..12 {
        let m = r.gen_range(3..=5);
        let k = random_connected_nonsimplex(&mut r, m);
        let pk = k.permuted(&random_permutation(&mut r, m));
        for c in FIELDS {
            assert_eq!(homology(&k, true, c), homology(&pk, true, c));
            assert_eq!(uberhomology(&k, c).unwrap(), uberhomology(&pk, c).unwrap(), "{k:?}");
            assert_eq!(uber_B(&k, c).unwrap(), uber_B(&pk, c).unwrap());
            assert_eq!(double_homology(&k, c).unwrap(), double_homology(&pk, c).unwrap());
            for v in [Variant::Reduced, Variant::Unreduced] {
                assert_eq!(e1_page(&k, v, c).unwrap(), e1_page(&pk, v, c).unwrap());
                assert_eq!(e2_page(&k, v, c).unwrap(), e2_page(&pk, v, c).unwrap());
            }
        }
    }
}

#[test]
fn zero_weight_slice_agrees_with_subset_cube() {
    let mut r = rng(12);
    for _ in 0..20 {
        let m = r.gen_range(2..=5);
        let k = random_complex(&mut r, m, 4);
        for c in FIELDS {
            let fast = uber_B(&k, c).unwrap();
            assert_eq!(fast, weight_zero_slice(&uberhomology(&k, c).unwrap()), "{k:?} over {c}");
            assert_eq!(fast, uber_b_by_blocks(&k, c).unwrap());
        }
    }
}

#[test]
fn horizontal_homology_at_weight_zero_is_homology_of_the_black_part() {
    for m in 1..=4 {
        for k in all_complexes(m) {
            for bits in 0..1u64 << m {
                let black = VertexSet::from_bits(bits);
                let h = horizontal_homology(&k, Bicolouring(black), Coeffs::Q).unwrap();
                let induced = homology(&k.induced(black).complex, false, Coeffs::Q);
                for i in 0..=k.dim() {
                    assert_eq!(h.get((i, 0)), induced.get(i), "{k:?} black {black}");
                }
            }
        }
    }
}

#[test]
fn sign_convention_does_not_change_uberhomology() {
    let mut r = rng(13);
    for _ in 0..10 {
        let m = r.gen_range(2..=5);
        let k = random_complex(&mut r, m, 3);
        for c in FIELDS {
            assert_eq!(
                uberhomology_with(&k, c, SignConvention::Before).unwrap(),
                uberhomology_with(&k, c, SignConvention::After).unwrap()
            );
        }
    }
}

#[test]
fn graphs_with_a_leaf_have_vanishing_zero_degree_uberhomology() {
    let mut r = rng(14);
    let mut graphs: Vec<Graph> = Vec::new();
    for _ in 0..15 {
        let n = r.gen_range(3..=6);
        graphs.push(random_tree(&mut r, n));
        let n = r.gen_range(3..=6);
        graphs.push(random_graph_with_leaf(&mut r, n));
    }
    for g in graphs {
        let k = graph_complex(&g);
        assert!(!k.is_simplex());
        assert!(uber_B(&k, Coeffs::Q).unwrap().is_zero(), "{g:?}");
    }
    // a single edge is a simplex, and its leaves do not kill the class at (1, 0)
    let edge = graph_complex(&Graph::complete(2));
    assert_eq!(uber_B(&edge, Coeffs::Q).unwrap().ranks(), BTreeMap::from([((1, 0), 1)]));
}

#[test]
fn differentials_square_to_zero() {
    let mut r = rng(15);
    for _ in 0..12 {
        let m = r.gen_range(3..=7);
        let k = random_complex(&mut r, m, 4);
        check_double_differential(&SubsetHomologyTable::build(Rationals, &k, true).unwrap()).unwrap();
        check_double_differential(&SubsetHomologyTable::build(PrimeField::new(2), &k, true).unwrap()).unwrap();
        for reduced in [false, true] {
            check_delta1(&SubsetHomologyTable::build(Rationals, &k, reduced).unwrap()).unwrap();
            check_delta1(&SubsetHomologyTable::build(PrimeField::new(2), &k, reduced).unwrap()).unwrap();
        }
    }
}

#[test]
fn bidegree_zero_zero_is_the_coefficient_ring() {
    let mut r = rng(16);
    for _ in 0..20 {
        let m = r.gen_range(1..=6);
        let k = random_complex(&mut r, m, 4);
        for c in FIELDS {
            assert_eq!(double_homology(&k, c).unwrap().get((0, 0)), AbelianGroupClass::free(c, 1));
        }
    }
}

/// Alternating sum of ranks along each line `l - k - 1 = p` that the
/// differential preserves.
fn line_euler(t: &uberdh::BigradedTable) -> BTreeMap<isize, i64> {
    let mut out = BTreeMap::new();
    for ((k, l), g) in t.iter() {
        let sign = if l % 2 == 0 { 1 } else { -1 };
        *out.entry(l - k - 1).or_insert(0) += sign * g.rank as i64;
    }
    out.retain(|_, v| *v != 0);
    out
}

#[test]
fn euler_characteristics_survive_taking_homology() {
    let mut r = rng(17);
    for _ in 0..15 {
        let m = r.gen_range(2..=6);
        let k = random_complex(&mut r, m, 4);
        for c in FIELDS {
            let h = hochster_table(&k, c).unwrap();
            let dh = double_homology(&k, c).unwrap();
            assert_eq!(line_euler(&h), line_euler(&dh), "{k:?}");
            for v in [Variant::Reduced, Variant::Unreduced] {
                let (e1, e2) = (e1_page(&k, v, c).unwrap(), e2_page(&k, v, c).unwrap());
                for q in -1..=k.dim() {
                    assert_eq!(row_euler(&e1, q), row_euler(&e2, q));
                }
            }
        }
    }
}

fn squares_commute<R: Ring>(ring: R, k: &SimplicialComplex) {
    let t = SubsetHomologyTable::build(ring, k, true).unwrap();
    let m = k.m();
    for bits in 0..1u64 << m {
        let i = VertexSet::from_bits(bits);
        let outside: Vec<usize> = VertexSet::full(m).difference(i).to_vec();
        for (x, &a) in outside.iter().enumerate() {
            for &b in &outside[x + 1..] {
                for d in -1..=k.dim() {
                    let ring = t.ring();
                    let ab = ring.matmul(&t.inclusion_map(i.with(a), b, d).unwrap(), &t.inclusion_map(i, a, d).unwrap());
                    let ba = ring.matmul(&t.inclusion_map(i.with(b), a, d).unwrap(), &t.inclusion_map(i, b, d).unwrap());
                    assert_eq!(ab, ba, "{k:?}: I = {i}, {a}, {b}, degree {d}");
                }
            }
        }
    }
}

#[test]
fn inclusion_maps_are_functorial() {
    let mut r = rng(18);
    for _ in 0..8 {
        let m = r.gen_range(3..=5);
        let k = random_complex(&mut r, m, 3);
        squares_commute(Rationals, &k);
        squares_commute(PrimeField::new(3), &k);
    }
}

#[test]
fn reduced_and_unreduced_differ_only_in_degree_zero() {
    let mut r = rng(19);
    for _ in 0..30 {
        let m = r.gen_range(1..=6);
        let k = random_complex(&mut r, m, 4);
        let (h, rh) = (homology(&k, false, Coeffs::Z), homology(&k, true, Coeffs::Z));
        assert_eq!(h.get(0).rank, rh.get(0).rank + 1);
        for d in 1..=k.dim() {
            assert_eq!(h.get(d), rh.get(d));
        }
        assert!(rh.get(-1).is_zero() && h.get(-1).is_zero());
    }
}

#[test]
fn prime_field_ranks_match_free_integral_homology() {
    let mut r = rng(20);
    for _ in 0..30 {
        let m = r.gen_range(1..=7);
        let k = random_complex(&mut r, m, 4);
        let z = homology(&k, true, Coeffs::Z);
        for d in -1..=k.dim() {
            let g = z.get(d);
            if g.is_free() {
                assert_eq!(homology(&k, true, Coeffs::Fp(3)).get(d).rank, g.rank);
            }
        }
    }
}

#[test]
fn results_do_not_depend_on_thread_count() {
    let mut r = rng(21);
    let inputs: Vec<SimplicialComplex> = (0..5).map(|_| random_connected_nonsimplex(&mut r, 6)).collect();
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| {
            inputs
                .iter()
                .map(|k| {
                    (
                        format!("{:?}", uberhomology(k, Coeffs::Q).unwrap()),
                        format!("{:?}", double_homology(k, Coeffs::F2).unwrap()),
                        format!("{:?}", e2_page(k, Variant::Reduced, Coeffs::Q).unwrap()),
                        verify_all(k, Coeffs::Q).unwrap(),
                    )
                })
                .collect::<Vec<_>>()
        })
    };
    assert_eq!(run(1), run(4));
}

#[test]
fn verification_finds_no_failures_beyond_the_diagonal_identity() {
    let mut r = rng(22);
    for _ in 0..12 {
        let m = r.gen_range(3..=6);
        let k = random_connected_nonsimplex(&mut r, m);
        for c in FIELDS {
            let report = verify_all(&k, c).unwrap();
            let failed: Vec<&str> = report.failed().iter().map(|c| c.claim).collect();
            assert!(failed.iter().all(|&id| id == DIAGONAL_DOMINATION), "{k:?}: {report:#?}");
        }
    }
}

#[test]
fn hochster_table_is_the_double_homology_input() {
    let k = SimplicialComplex::cycle(6).unwrap();
    let t = SubsetHomologyTable::build(Rationals, &k, true).unwrap();
    assert_eq!(double_homology_of_table(&t).unwrap(), double_homology(&k, Coeffs::Q).unwrap());
    // C_6: H_{-1,4} collects the 9 non-adjacent pairs
    assert_eq!(hochster_table(&k, Coeffs::Q).unwrap().get((1, 2)).rank, 9);
}

fn connected_domination_number(g: &Graph) -> usize {
    (1..1u64 << g.n())
        .map(VertexSet::from_bits)
        .filter(|&s| is_connected_dominating(g, s))
        .map(|s| s.len())
        .min()
        .unwrap()
}

#[test]
fn domination_polynomial_shape() {
    let mut r = rng(23);
    for _ in 0..20 {
        let m = r.gen_range(3..=7);
        let k = random_connected_nonsimplex(&mut r, m);
        let g = k.one_skeleton();
        let p = domination_polynomial(&g).unwrap();
        assert!(p.coeffs().iter().all(|&c| c >= 0));
        assert_eq!(p.coeff(m), 1);
        let low = p.coeffs().iter().position(|&c| c != 0).unwrap();
        assert_eq!(low, connected_domination_number(&g));
        // only the 1-skeleton matters
        assert_eq!(p, domination_polynomial(&graph_complex(&g).one_skeleton()).unwrap());
    }
}

#[test]
fn structural_invariants_of_complexes() {
    let mut r = rng(24);
    for _ in 0..30 {
        let m = r.gen_range(1..=6);
        let k = random_complex(&mut r, m, 4);
        let facets = k.facets();
        for (a, f) in facets.iter().enumerate() {
            for (b, g) in facets.iter().enumerate() {
                assert!(a == b || !f.is_subset(*g));
            }
        }
        for v in 0..m {
            assert_eq!(k.antistar(v), k.induced(VertexSet::full(m).without(v)));
        }
        let i = VertexSet::from_bits(r.gen_range(0..1u64 << m));
        let j = VertexSet::from_bits(i.bits() & r.gen::<u64>());
        let outer = k.induced(i);
        let local = VertexSet::from_vertices(j.iter().map(|v| outer.vertex_map.iter().position(|&w| w == v).unwrap()));
        assert_eq!(outer.complex.induced(local).complex, k.induced(j).complex);
    }
    for m in 2..=7 {
        let b = SimplicialComplex::boundary_simplex(m).unwrap();
        let f = b.f_vector();
        for d in 0..m - 1 {
            assert_eq!(f[d], num_integer::binomial(m, d + 1));
        }
        assert_eq!(f.get(m - 1).copied().unwrap_or(0), 0);
    }
}
