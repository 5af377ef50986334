use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn uberdh(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_uberdh"))
        .args(args)
        .env_remove("UBERDH_THREADS")
        .env_remove("UBERDH_CACHE")
        .env_remove("UBERDH_MAX_VERTICES")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    assert!(o.status.success(), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn generate(shape: &str, n: Option<usize>) -> String {
    let n = n.map(|n| n.to_string());
    let mut args = vec!["generate", "--shape", shape];
    if let Some(n) = &n {
        args.extend(["--n", n]);
    }
    stdout(&uberdh(&args, ""))
}

fn entries(json: &str, keys: &[&str]) -> Vec<(Vec<i64>, u64)> {
    let v: Value = serde_json::from_str(json).unwrap();
    assert_eq!(v["schema"], 1);
    v["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| (keys.iter().map(|k| e[k].as_i64().unwrap()).collect(), e["rank"].as_u64().unwrap()))
        .collect()
}

#[test]
fn five_cycle_double_homology() {
    let out = stdout(&uberdh(&["double", "--coeffs", "q"], &generate("cycle", Some(5))));
    let v: Value = serde_json::from_str(&out).unwrap();
    let display: Vec<(i64, i64, u64)> = v["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| (e["display"][0].as_i64().unwrap(), e["display"][1].as_i64().unwrap(), e["rank"].as_u64().unwrap()))
        .collect();
    assert_eq!(display, vec![(0, 0, 1), (-1, 4, 1), (-2, 6, 1), (-3, 10, 1)]);
}

#[test]
fn simplex_double_homology_is_a_single_class() {
    let out = stdout(&uberdh(&["double"], &generate("simplex", Some(5))));
    assert_eq!(entries(&out, &["k", "l"]), vec![(vec![0, 0], 1)]);
}

#[test]
fn icosahedron_zero_degree_over_f2() {
    let out = stdout(&uberdh(&["uber", "--zero-degree", "--coeffs", "f2"], &generate("icosahedron", None)));
    assert_eq!(
        entries(&out, &["j", "i"]),
        vec![(vec![5, 0], 10), (vec![7, 1], 10), (vec![10, 1], 1), (vec![12, 2], 1)]
    );
}

#[test]
fn generated_complexes_feed_every_subcommand() {
    let input = generate("boundary-simplex", Some(4));
    let text = stdout(&uberdh(&["generate", "--shape", "boundary-simplex", "--n", "4", "--format", "table"], ""));
    assert_eq!(text.lines().count(), 4);
    for args in [
        vec!["homology"],
        vec!["homology", "--reduced"],
        vec!["uber"],
        vec!["uber", "--zero-degree"],
        vec!["double"],
        vec!["mvss", "--variant", "reduced", "--page", "1"],
        vec!["mvss", "--variant", "unreduced", "--page", "2"],
        vec!["domination", "--eval", "-1"],
    ] {
        for src in [&input, &text] {
            let out = stdout(&uberdh(&args, src));
            assert_eq!(serde_json::from_str::<Value>(&out).unwrap()["schema"], 1, "{args:?}");
        }
    }
}

#[test]
fn unreduced_page_two_of_triangle_boundary() {
    let out = stdout(&uberdh(&["mvss", "--variant", "unreduced", "--page", "2"], "0 1\n1 2\n0 2\n"));
    assert_eq!(entries(&out, &["p", "q"]), vec![(vec![-1, 1], 1), (vec![1, 0], 1)]);
}

#[test]
fn domination_evaluation() {
    let out = stdout(&uberdh(&["domination", "--eval", "-1", "--format", "table"], &generate("cycle", Some(5))));
    assert_eq!(out.trim(), "-1");
    let out = stdout(&uberdh(&["domination"], &generate("cycle", Some(5))));
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["coefficients"], serde_json::json!([0, 0, 0, 5, 5, 1]));
}

#[test]
fn output_is_identical_across_thread_counts() {
    let input = generate("cycle", Some(7));
    let one = stdout(&uberdh(&["uber", "--threads", "1"], &input));
    let four = stdout(&uberdh(&["uber", "--threads", "4"], &input));
    assert_eq!(one, four);
    assert_eq!(one, stdout(&uberdh(&["uber"], &input)));
}

#[test]
fn exit_codes() {
    let bad = uberdh(&["double"], "0 x\n");
    assert_eq!(bad.status.code(), Some(1));
    let ghost = uberdh(&["double", "--vertices", "4"], "0 1\n1 2\n");
    assert_eq!(ghost.status.code(), Some(1));

    // the projective plane has 2-torsion in degree one
    let rp2 = "0 1 2\n0 2 3\n0 3 4\n0 4 5\n0 1 5\n1 2 4\n2 3 5\n1 3 4\n2 4 5\n1 3 5\n";
    assert_eq!(uberdh(&["double", "--coeffs", "z"], rp2).status.code(), Some(2));
    assert!(uberdh(&["double", "--coeffs", "f2"], rp2).status.success());

    let capped = uberdh(&["double", "--max-vertices", "4"], &generate("cycle", Some(5)));
    assert_eq!(capped.status.code(), Some(3));

    let sphere = generate("boundary-simplex", Some(3));
    assert_eq!(uberdh(&["verify"], &sphere).status.code(), Some(0));
    // the diagonal domination identity, as stated, fails on the boundary of the 3-simplex
    let failing = uberdh(&["verify"], &generate("boundary-simplex", Some(4)));
    assert_eq!(failing.status.code(), Some(4));
}

#[test]
fn verify_all_runs_every_coefficient_choice() {
    let out = stdout(&uberdh(&["verify", "--all"], &generate("cycle", Some(5))));
    let v: Value = serde_json::from_str(&out).unwrap();
    let coeffs: Vec<&str> = v.as_array().unwrap().iter().map(|r| r["coeffs"].as_str().unwrap()).collect();
    assert_eq!(coeffs, vec!["z", "q", "f2"]);
}

#[test]
fn cache_is_written_and_reused() {
    let dir = tempfile::tempdir().unwrap();
    let input = generate("cycle", Some(6));
    let cache = dir.path().to_str().unwrap();
    let first = stdout(&uberdh(&["mvss", "--variant", "reduced", "--page", "1", "--cache", cache], &input));
    let files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(files.len(), 1);
    let path = files[0].as_ref().unwrap().path();
    assert!(std::fs::read_to_string(&path).unwrap().starts_with("uberdh-subset-cache 1\n"));
    let second = stdout(&uberdh(&["mvss", "--variant", "reduced", "--page", "1", "--cache", cache], &input));
    assert_eq!(first, second);
    assert_eq!(first, stdout(&uberdh(&["mvss", "--variant", "reduced", "--page", "1"], &input)));
}

#[test]
fn flag_complex_from_edge_file() {
    let dir = tempfile::tempdir().unwrap();
    let edges = dir.path().join("edges.txt");
    std::fs::write(&edges, "0 1\n1 2\n0 2\n2 3\n").unwrap();
    let out = stdout(&uberdh(&["generate", "--shape", "flag", "--edges", edges.to_str().unwrap()], ""));
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["facets"], serde_json::json!([[0, 1, 2], [2, 3]]));
    let dh = stdout(&uberdh(&["double"], &out));
    assert_eq!(entries(&dh, &["k", "l"]), vec![(vec![0, 0], 1), (vec![1, 2], 1)]);
}

#[test]
fn random_generation_is_seeded() {
    let a = stdout(&uberdh(&["generate", "--shape", "random", "--n", "6", "--seed", "7"], ""));
    let b = stdout(&uberdh(&["generate", "--shape", "random", "--n", "6", "--seed", "7"], ""));
    assert_eq!(a, b);
    assert!(uberdh(&["double"], &a).status.success());
}
