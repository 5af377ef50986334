//! Acceptance run: one PASS/FAIL line per criterion, exact comparisons only.
//!
//! Criterion 6 checks the diagonal domination identity exactly as stated and
//! is expected to fail; the process exits nonzero only when another
//! criterion fails.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::Rng;

use uberdh::doubleh::{check_double_differential, diagonal_euler, double_homology};
use uberdh::exactla::{PrimeField, Rationals, Ring};
use uberdh::homology::{chain_complex, SubsetHomologyTable};
use uberdh::mvss::{check_delta1, e1_page, e2_page, row_euler, total_acyclicity_check, SpectralPage, Variant};
use uberdh::random::{all_complexes, random_chordal_graph, random_complex, random_connected_nonsimplex, rng};
use uberdh::uber::{horizontal_complex, uber_b_by_blocks, weight_zero_slice};
use uberdh::verify::verify_all;
use uberdh::{
    domination_polynomial, uber_B, uberhomology, AbelianGroupClass, BigradedTable, Bicolouring, Coeffs, Error,
    SimplicialComplex, VertexSet,
};

const EXPECTED_FAILURES: [u32; 1] = [6];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(problems: Vec<String>, summary: String) -> Outcome {
    if problems.is_empty() {
        Outcome { pass: true, detail: summary }
    } else {
        let shown: Vec<&str> = problems.iter().take(3).map(String::as_str).collect();
        Outcome { pass: false, detail: format!("{summary}; {} problem(s), e.g. {}", problems.len(), shown.join(" | ")) }
    }
}

fn within(problems: &mut Vec<String>, elapsed: Duration, limit: Duration) {
    if elapsed >= limit {
        problems.push(format!("took {elapsed:.2?}, limit {limit:?}"));
    }
}

fn classes(t: &BigradedTable) -> BTreeMap<(isize, isize), AbelianGroupClass> {
    t.iter().map(|(k, g)| (k, g.clone())).collect()
}

fn expect(c: Coeffs, entries: &[((isize, isize), usize)]) -> BTreeMap<(isize, isize), AbelianGroupClass> {
    entries.iter().map(|&(k, r)| (k, AbelianGroupClass::free(c, r))).collect()
}

fn compare(label: &str, got: &BigradedTable, want: BTreeMap<(isize, isize), AbelianGroupClass>, problems: &mut Vec<String>) {
    let got = classes(got);
    if got != want {
        problems.push(format!("{label}: got {got:?}, want {want:?}"));
    }
}

/// Random connected non-simplex complexes with `3 ≤ m ≤ max_m`.
fn suite(seed: u64, count: usize, max_m: usize) -> Vec<SimplicialComplex> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| {
            let m = r.gen_range(3..=max_m);
            random_connected_nonsimplex(&mut r, m)
        })
        .collect()
}

fn boundary_spheres() -> Outcome {
    let start = Instant::now();
    let mut problems = Vec::new();
    for p in 2..=5isize {
        let k = SimplicialComplex::boundary_simplex(p as usize + 1).unwrap();
        compare(&format!("B of boundary of Δ^{p}"), &uber_B(&k, Coeffs::Z).unwrap(), expect(Coeffs::Z, &[((1, 0), 1), ((p + 1, p - 1), 1)]), &mut problems);
    }
    for m in 3..=6isize {
        let k = SimplicialComplex::boundary_simplex(m as usize).unwrap();
        compare(&format!("DH of boundary sphere, m = {m}"), &double_homology(&k, Coeffs::Z).unwrap(), expect(Coeffs::Z, &[((0, 0), 1), ((1, m), 1)]), &mut problems);
    }
    let elapsed = start.elapsed();
    within(&mut problems, elapsed, Duration::from_secs(5));
    outcome(problems, format!("4 zero-degree tables and 4 double homology tables over Z in {elapsed:.2?}"))
}

fn cycles() -> Outcome {
    let start = Instant::now();
    let mut problems = Vec::new();
    for n in 5..=8isize {
        let k = SimplicialComplex::cycle(n as usize).unwrap();
        let want = expect(Coeffs::Z, &[((0, 0), 1), ((1, 2), 1), ((n - 3, n - 2), 1), ((n - 2, n), 1)]);
        compare(&format!("DH of C_{n}"), &double_homology(&k, Coeffs::Z).unwrap(), want, &mut problems);
        compare(&format!("B of C_{n}"), &uber_B(&k, Coeffs::Z).unwrap(), expect(Coeffs::Z, &[((n - 2, 0), 1), ((n, 1), 1)]), &mut problems);
    }
    let elapsed = start.elapsed();
    within(&mut problems, elapsed, Duration::from_secs(30));
    outcome(problems, format!("C_5..C_8 over Z in {elapsed:.2?}"))
}

fn icosahedron() -> Outcome {
    let start = Instant::now();
    let mut problems = Vec::new();
    let k = SimplicialComplex::icosahedron();
    let f2 = Coeffs::F2;
    let dh_want = expect(f2, &[((0, 0), 1), ((1, 2), 1), ((4, 5), 10), ((5, 7), 10), ((8, 10), 1), ((9, 12), 1)]);
    compare("DH", &double_homology(&k, f2).unwrap(), dh_want, &mut problems);
    let b_want = expect(f2, &[((5, 0), 10), ((7, 1), 10), ((10, 1), 1), ((12, 2), 1)]);
    let b = uber_B(&k, f2).unwrap();
    compare("B", &b, b_want, &mut problems);
    let full = uberhomology(&k, f2).unwrap();
    let positive: Vec<_> = full.iter().filter(|((_, w, _), _)| *w > 0).map(|(key, g)| (key, g.clone())).collect();
    if !positive.is_empty() {
        problems.push(format!("nonzero weight classes {positive:?}"));
    }
    if weight_zero_slice(&full) != b {
        problems.push("weight-zero slice differs from B".into());
    }
    let elapsed = start.elapsed();
    within(&mut problems, elapsed, Duration::from_secs(120));
    outcome(problems, format!("4096 induced subcomplexes over F2, full table included, in {elapsed:.2?}"))
}

/// Reindexes a double homology table to `(m - l - 1, l - k - 1)`.
fn double_as_page(dh: &BigradedTable, m: isize) -> BigradedTable {
    dh.map_keys(|(k, l)| Some((m - l - 1, l - k - 1)))
}

/// Reindexes `B^j_i` to `(m - j - 1, i)`.
fn zero_degree_as_page(b: &BigradedTable, m: isize) -> BigradedTable {
    b.map_keys(|(j, i)| Some((m - j - 1, i)))
}

fn page_entries(p: &SpectralPage) -> &BigradedTable {
    &p.entries
}

fn comparison_theorems(ks: &[SimplicialComplex]) -> Outcome {
    let start = Instant::now();
    let mut problems = Vec::new();
    for k in ks {
        let m = k.m() as isize;
        for c in [Coeffs::Q, Coeffs::F2] {
            let dh = double_homology(k, c).unwrap();
            let reduced = e2_page(k, Variant::Reduced, c).unwrap();
            if &double_as_page(&dh, m) != page_entries(&reduced) {
                problems.push(format!("(a) {k:?} over {c}"));
            }
            let b = uber_b_by_blocks(k, c).unwrap();
            let unreduced = e2_page(k, Variant::Unreduced, c).unwrap();
            if &zero_degree_as_page(&b, m) != page_entries(&unreduced) {
                problems.push(format!("(b) {k:?} over {c}"));
            }
            let from_b = b.map_keys(|(j, i)| (i >= 1).then_some((j - i - 1, j)));
            let from_dh = dh.map_keys(|(kk, l)| (l - kk >= 2).then_some((kk, l)));
            if from_b != from_dh {
                problems.push(format!("(c) {k:?} over {c}: {from_b:?} vs {from_dh:?}"));
            }
        }
    }
    outcome(problems, format!("{} complexes, m <= 6, over Q and F2, in {:.2?}", ks.len(), start.elapsed()))
}

fn row_zero_euler(ks: &[SimplicialComplex]) -> Outcome {
    let start = Instant::now();
    let mut problems = Vec::new();
    for k in ks {
        for c in [Coeffs::Q, Coeffs::F2] {
            let u = row_euler(&e1_page(k, Variant::Unreduced, c).unwrap(), 0);
            let r = row_euler(&e1_page(k, Variant::Reduced, c).unwrap(), 0);
            let want = if k.m() % 2 == 0 { 1 } else { -1 };
            if u - r != want {
                problems.push(format!("{k:?} over {c}: {u} - {r} != {want}"));
            }
        }
    }
    outcome(problems, format!("{} complexes over Q and F2 in {:.2?}", ks.len(), start.elapsed()))
}

fn diagonal_domination(ks: &[SimplicialComplex]) -> (Outcome, String) {
    let start = Instant::now();
    let mut problems = Vec::new();
    let mut derived_mismatches = 0;
    for k in ks {
        let lhs = diagonal_euler(k, Coeffs::Q).unwrap();
        let at = i64::try_from(domination_polynomial(&k.one_skeleton()).unwrap().eval(-1)).unwrap();
        let rhs = at + if (k.m() + 1) % 2 == 0 { 1 } else { -1 };
        if lhs != rhs {
            problems.push(format!("m = {}, facets {:?}: lhs {lhs}, rhs {rhs}", k.m(), k.facet_lists()));
        }
        if lhs != -at - 1 {
            derived_mismatches += 1;
        }
    }
    let note = format!(
        "the identity with right side -D_c(-1) - 1 has {derived_mismatches} mismatches on the same {} complexes",
        ks.len()
    );
    (outcome(problems, format!("{} complexes, m <= 7, in {:.2?}", ks.len(), start.elapsed())), note)
}

fn concentrated_at_one_zero(b: &BigradedTable) -> bool {
    classes(b) == expect(b.coeffs, &[((1, 0), 1)])
}

fn detection() -> Outcome {
    let start = Instant::now();
    let mut problems = Vec::new();
    let mut inputs: Vec<SimplicialComplex> = (1..=4).flat_map(all_complexes).collect();
    let exhaustive = inputs.len();
    let mut r = rng(0xde7ec7);
    for _ in 0..200 {
        let m = r.gen_range(5..=6);
        let max = *[2, 3, 4, m].choose(&mut r).unwrap();
        inputs.push(random_complex(&mut r, m, max));
    }
    inputs.push(SimplicialComplex::simplex(5).unwrap());
    inputs.push(SimplicialComplex::simplex(6).unwrap());
    let mut torsion_fallbacks = 0;
    for k in &inputs {
        let simplex = k.is_simplex();
        let dh = double_homology(k, Coeffs::Q).unwrap();
        if (dh.total_rank() == 1) != simplex {
            problems.push(format!("DH rank {} for {k:?}", dh.total_rank()));
        }
        let concentrated = match uber_B(k, Coeffs::Z) {
            Ok(b) => concentrated_at_one_zero(&b),
            Err(Error::TorsionObstruction(_)) => {
                torsion_fallbacks += 1;
                concentrated_at_one_zero(&uber_B(k, Coeffs::Q).unwrap()) && concentrated_at_one_zero(&uber_B(k, Coeffs::F2).unwrap())
            }
            Err(e) => panic!("{e}"),
        };
        if concentrated != simplex {
            problems.push(format!("B concentrated = {concentrated} for {k:?}"));
        }
    }
    outcome(
        problems,
        format!(
            "{exhaustive} complexes on <= 4 vertices and {} on 5-6 vertices ({torsion_fallbacks} with torsion checked over Q and F2) in {:.2?}",
            inputs.len() - exhaustive,
            start.elapsed()
        ),
    )
}

fn chordal_flag() -> Outcome {
    let start = Instant::now();
    let mut problems = Vec::new();
    let mut r = rng(0xc40d);
    let mut tested = 0;
    while tested < 60 {
        let n = r.gen_range(3..=8);
        let g = random_chordal_graph(&mut r, n);
        let k = SimplicialComplex::flag_complex(&g).unwrap();
        if k.is_simplex() {
            continue;
        }
        assert!(g.is_chordal());
        tested += 1;
        compare(&format!("{:?}", k.facet_lists()), &double_homology(&k, Coeffs::Z).unwrap(), expect(Coeffs::Z, &[((0, 0), 1), ((1, 2), 1)]), &mut problems);
    }
    outcome(problems, format!("{tested} flag complexes of chordal graphs, n <= 8, over Z in {:.2?}", start.elapsed()))
}

fn squares_vanish<R: Ring>(ring: &R, k: &SimplicialComplex, problems: &mut Vec<String>) {
    for reduced in [false, true] {
        let cc = chain_complex(ring, k, reduced);
        for d in 0..=k.dim() {
            if !ring.is_zero_matrix(&ring.matmul(&cc.boundary(ring, d), &cc.boundary(ring, d + 1))) {
                problems.push(format!("simplicial boundary squares to nonzero on {k:?}"));
            }
        }
    }
    for bits in 0..1u64 << k.m() {
        let hc = horizontal_complex(ring, k, Bicolouring(VertexSet::from_bits(bits)));
        for i in 2..hc.boundaries.len() {
            if !ring.is_zero_matrix(&ring.matmul(&hc.boundaries[i - 1], &hc.boundaries[i])) {
                problems.push(format!("horizontal boundary squares to nonzero on {k:?}, colouring {bits:b}"));
            }
        }
    }
    let reduced = SubsetHomologyTable::build(ring.clone(), k, true).unwrap();
    let unreduced = SubsetHomologyTable::build(ring.clone(), k, false).unwrap();
    for (what, res) in [
        ("double differential", check_double_differential(&reduced)),
        ("reduced page differential", check_delta1(&reduced)),
        ("unreduced page differential", check_delta1(&unreduced)),
    ] {
        if let Err(e) = res {
            problems.push(format!("{what} on {k:?}: {e}"));
        }
    }
    // the über cube differential is checked while computing
    if let Err(e) = uberhomology(k, ring.coeffs()) {
        problems.push(format!("über complex on {k:?}: {e}"));
    }
}

fn structural(ks: &[SimplicialComplex]) -> Outcome {
    let start = Instant::now();
    let mut problems = Vec::new();
    let mut r = rng(0x57a7);
    for k in ks {
        squares_vanish(&Rationals, k, &mut problems);
        squares_vanish(&PrimeField::new(2), k, &mut problems);
        match total_acyclicity_check(k) {
            Ok(true) => {}
            other => problems.push(format!("total complex of {k:?}: {other:?}")),
        }
    }
    for k in ks.iter().take(40) {
        let mut perm: Vec<usize> = (0..k.m()).collect();
        perm.shuffle(&mut r);
        let pk = k.permuted(&perm);
        for c in [Coeffs::Q, Coeffs::F2] {
            let same = uberhomology(k, c).unwrap() == uberhomology(&pk, c).unwrap()
                && double_homology(k, c).unwrap() == double_homology(&pk, c).unwrap()
                && e2_page(k, Variant::Unreduced, c).unwrap() == e2_page(&pk, Variant::Unreduced, c).unwrap()
                && e2_page(k, Variant::Reduced, c).unwrap() == e2_page(&pk, Variant::Reduced, c).unwrap();
            if !same {
                problems.push(format!("relabelling {perm:?} changes tables of {k:?} over {c}"));
            }
        }
    }
    let sample = &ks[..ks.len().min(20)];
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| sample.iter().map(|k| verify_all(k, Coeffs::Q).unwrap()).collect::<Vec<_>>())
    };
    if run(1) != run(4) {
        problems.push("reports differ between 1 and 4 threads".into());
    }
    outcome(problems, format!("{} complexes, relabelling and thread checks on subsets, in {:.2?}", ks.len(), start.elapsed()))
}

fn main() -> ExitCode {
    let small = suite(0x5eed_0004, 200, 6);
    let seven = suite(0x5eed_0006, 100, 7);
    let (c6, c6_note) = diagonal_domination(&seven);
    let results: Vec<(u32, &str, Outcome)> = vec![
        (1, "boundary spheres", boundary_spheres()),
        (2, "cycles", cycles()),
        (3, "icosahedron over F2", icosahedron()),
        (4, "comparison theorems (a) reduced E2, (b) unreduced E2, (c) zero-degree vs double", comparison_theorems(&small)),
        (5, "row-zero Euler characteristics differ by (-1)^m", row_zero_euler(&small)),
        (6, "diagonal Euler characteristic = D_c(-1) + (-1)^(m+1)", c6),
        (7, "simplex detection by DH rank and by B", detection()),
        (8, "chordal flag complexes", chordal_flag()),
        (9, "structural invariants", structural(&small)),
    ];
    let mut unexpected = false;
    for (n, title, o) in &results {
        println!("criterion {n}: {} {title}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        if !o.pass && !EXPECTED_FAILURES.contains(n) {
            unexpected = true;
        }
    }
    println!("note on criterion 6: {c6_note}");
    if unexpected {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
