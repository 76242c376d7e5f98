use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_centersvar"));
    c.env_remove("CENTERSVAR_SEED");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn write_config(dir: &Path, name: &str, dim: usize, points: &[Vec<i64>]) -> PathBuf {
    let doc = json!({
        "ambient_dim": dim,
        "points": points.iter().map(|p| p.iter().map(|c| c.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
    });
    let path = dir.join(name);
    std::fs::write(&path, serde_json::to_string(&doc).unwrap()).unwrap();
    path
}

fn standard5() -> Vec<Vec<i64>> {
    vec![vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 1], vec![1, 1, 1, 1]]
}

fn strings(v: &Value) -> Vec<String> {
    v.as_array().unwrap().iter().map(|s| s.as_str().unwrap().to_string()).collect()
}

fn p(s: &Path) -> &str {
    s.to_str().unwrap()
}

#[test]
fn project_golden_images() {
    let dir = TempDir::new().unwrap();
    let x = write_config(dir.path(), "X.json", 3, &standard5());
    let doc = stdout_json(&run(&["project", "-i", p(&x), "--center", "43,-50,6,-5"]));
    assert_eq!(doc["ambient_dim"], 2);
    // Dropping the last coordinate after moving the center to (0:0:0:1).
    let pts: Vec<Vec<String>> = doc["points"].as_array().unwrap().iter().map(strings).collect();
    let expect = [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"], ["43", "-50", "6"], ["48", "-45", "11"]];
    for (got, want) in pts.iter().zip(expect.iter()) {
        assert_eq!(got, &want.iter().map(|s| s.to_string()).collect::<Vec<_>>());
    }
}

#[test]
fn project_center_on_point_exits_2() {
    let dir = TempDir::new().unwrap();
    let x = write_config(dir.path(), "X.json", 3, &standard5());
    let out = run(&["project", "-i", p(&x), "--center", "2,2,2,2"]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["code"], "InadmissibleCenter");
}

#[test]
fn project_writes_output_file() {
    let dir = TempDir::new().unwrap();
    let x = write_config(dir.path(), "X.json", 3, &standard5());
    let out_path = dir.path().join("P.json");
    let out = run(&["project", "-i", p(&x), "--center", "43,-50,6,-5", "-o", p(&out_path)]);
    assert!(out.status.success());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(doc["points"].as_array().unwrap().len(), 5);
}

#[test]
fn invariants_kind_mismatch_exits_2() {
    let dir = TempDir::new().unwrap();
    let img = write_config(dir.path(), "P.json", 2, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, 1], vec![1, 2, 3]]);
    let out = run(&["invariants", "-i", p(&img), "--kind", "N6"]);
    assert_eq!(out.status.code(), Some(2));
    let doc = stdout_json(&run(&["invariants", "-i", p(&img)]));
    assert_eq!(doc["kind"], "N5");
    assert_eq!(doc["values"].as_array().unwrap().len(), 6);
}

fn conic(ts: &[i64]) -> Vec<Vec<i64>> {
    ts.iter().map(|&t| vec![1, t, t * t]).collect()
}

#[test]
fn equiv_homography_witness() {
    let dir = TempDir::new().unwrap();
    let pts = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, 1], vec![2, -1, 5], vec![3, 4, -2]];
    let h = [[2, 1, 0], [0, 1, -1], [1, 0, 3]];
    let img: Vec<Vec<i64>> = pts
        .iter()
        .map(|v| (0..3).map(|r| (0..3).map(|c| h[r][c] * v[c]).sum()).collect())
        .collect();
    let a = write_config(dir.path(), "P.json", 2, &pts);
    let b = write_config(dir.path(), "Q.json", 2, &img);
    let doc = stdout_json(&run(&["equiv", "-i", p(&a), "-j", p(&b)]));
    assert_eq!(doc["equivalent"], true);
    assert_eq!(doc["certainty"], "ExactWitness");
    assert!(doc["witness"].is_array());
    assert_eq!(doc["config"]["command"], "equiv");
}

#[test]
fn equiv_unrelated_is_false() {
    let dir = TempDir::new().unwrap();
    let a = write_config(dir.path(), "P.json", 2, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, 1], vec![1, 2, 3], vec![5, -1, 2]]);
    let b = write_config(dir.path(), "Q.json", 2, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, 1], vec![1, 2, 4], vec![5, -1, 2]]);
    let doc = stdout_json(&run(&["equiv", "-i", p(&a), "-j", p(&b)]));
    assert_eq!(doc["equivalent"], false);
}

#[test]
fn equiv_conic_sevens_not_equivalent() {
    let dir = TempDir::new().unwrap();
    let a = write_config(dir.path(), "P.json", 2, &conic(&[0, 1, 2, 3, 4, 5, 6]));
    let b = write_config(dir.path(), "Q.json", 2, &conic(&[0, 1, -1, 2, 3, 7, -4]));
    let doc = stdout_json(&run(&["equiv", "-i", p(&a), "-j", p(&b)]));
    assert_eq!(doc["equivalent"], false);
    assert_eq!(doc["certainty"], "ExactWitness");
}

#[test]
fn equiv_associated_conic_six() {
    let dir = TempDir::new().unwrap();
    let a = write_config(dir.path(), "P.json", 2, &conic(&[0, 1, 2, 3, 4, 5]));
    let doc = stdout_json(&run(&["equiv", "-i", p(&a), "-j", p(&a), "--associated"]));
    assert_eq!(doc["equivalent"], true);
    assert_eq!(doc["associated"], true);
}

#[test]
fn equiv_size_mismatch_exits_2() {
    let dir = TempDir::new().unwrap();
    let a = write_config(dir.path(), "P.json", 2, &conic(&[0, 1, 2, 3, 4]));
    let b = write_config(dir.path(), "Q.json", 2, &conic(&[0, 1, 2, 3, 4, 5]));
    assert_eq!(run(&["equiv", "-i", p(&a), "-j", p(&b)]).status.code(), Some(2));
}

#[test]
fn equiv_no_quadruple_falls_back_or_is_inconclusive() {
    let dir = TempDir::new().unwrap();
    // Five points on a line: no general quadruple and not stable.
    let line: Vec<Vec<i64>> = (0..5).map(|t| vec![1, t, 0]).collect();
    let a = write_config(dir.path(), "P.json", 2, &line);
    let out = run(&["equiv", "-i", p(&a), "-j", p(&a)]);
    assert_eq!(out.status.code(), Some(3));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["code"], "Inconclusive");
}

#[test]
fn centers_golden_n5_quadrics() {
    let dir = TempDir::new().unwrap();
    let x = write_config(dir.path(), "X.json", 3, &standard5());
    let doc = stdout_json(&run(&["centers", "-i", p(&x), "-j", p(&x), "--center", "43,-50,6,-5"]));
    assert_eq!(doc["variant"], "CubicFibrationN5");
    assert_eq!(doc["degeneration"], "SmoothCubic");
    let mut rows: Vec<Vec<i128>> = doc["cubic"]["quadrics"]
        .as_array()
        .unwrap()
        .iter()
        .map(|q| strings(q).iter().map(|c| c.trim_end_matches("/1").parse().unwrap()).collect())
        .collect();
    assert_eq!(rank(rows.clone()), 3);
    // Monomial order z0^2 z0z1 z0z2 z0z3 z1^2 z1z2 z1z3 z2^2 z2z3 z3^2.
    let mut quad = |terms: &[(usize, i128)]| {
        let mut v = vec![0i128; 10];
        for &(k, c) in terms {
            v[k] = c;
        }
        rows.push(v);
    };
    quad(&[(5, 28), (6, 27), (8, -55)]);
    quad(&[(2, 185), (3, 288), (8, -473)]);
    quad(&[(1, 31), (3, -160), (6, 129)]);
    assert_eq!(rank(rows), 3);
}

/// Exact rank by fraction-free elimination.
fn rank(mut m: Vec<Vec<i128>>) -> usize {
    let cols = m[0].len();
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, piv);
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let (a, b) = (m[r][c], m[i][c]);
                let row: Vec<i128> = (0..cols).map(|k| a * m[i][k] - b * m[r][k]).collect();
                let g = row.iter().fold(0i128, |g, &x| gcd(g, x.abs())).max(1);
                m[i] = row.into_iter().map(|x| x / g).collect();
            }
        }
        r += 1;
    }
    r
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 { a } else { gcd(b, a % b) }
}

#[test]
fn centers_n5_needs_center() {
    let dir = TempDir::new().unwrap();
    let x = write_config(dir.path(), "X.json", 3, &standard5());
    assert_eq!(run(&["centers", "-i", p(&x), "-j", p(&x)]).status.code(), Some(2));
}

fn generate(dir: &Path, n: &str, seed: &str) -> Value {
    let out = run(&["--seed", seed, "generate", "-n", n, "-o", p(dir)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_str(&std::fs::read_to_string(dir.join("instance.json")).unwrap()).unwrap()
}

#[test]
fn generate_then_centers_n6_recovers_b() {
    let dir = TempDir::new().unwrap();
    let inst = generate(dir.path(), "6", "3");
    let a = strings(&inst["ground_truth"]["a"]).join(",");
    let doc = stdout_json(&run(&[
        "centers",
        "-i",
        p(&dir.path().join("X.json")),
        "-j",
        p(&dir.path().join("Y.json")),
        "--center",
        &a,
    ]));
    assert_eq!(doc["variant"], "SurfacePairN6");
    let pair = &doc["sampled_pairs"][0];
    assert_eq!(strings(&pair["b"]), strings(&inst["ground_truth"]["b"]));
}

#[test]
fn generate_then_centers_n7_finds_ground_truth() {
    let dir = TempDir::new().unwrap();
    let inst = generate(dir.path(), "7", "1");
    let doc = stdout_json(&run(&["centers", "-i", p(&dir.path().join("X.json")), "-j", p(&dir.path().join("Y.json"))]));
    assert_eq!(doc["variant"], "ThreePairsN7");
    let pairs = doc["pairs"].as_array().unwrap();
    assert_eq!(pairs.len(), 3);
    let (a, b) = (strings(&inst["ground_truth"]["a"]), strings(&inst["ground_truth"]["b"]));
    assert!(pairs.iter().any(|q| q["a"]["exact"].is_array()
        && strings(&q["a"]["exact"]) == a
        && strings(&q["b"]["exact"]) == b));
}

#[test]
fn generate_is_deterministic_and_seed_env_applies() {
    let d1 = TempDir::new().unwrap();
    let d2 = TempDir::new().unwrap();
    let i1 = generate(d1.path(), "5", "9");
    let out = bin().env("CENTERSVAR_SEED", "9").args(["generate", "-n", "5", "-o", p(d2.path())]).output().unwrap();
    assert!(out.status.success());
    let i2: Value = serde_json::from_str(&std::fs::read_to_string(d2.path().join("instance.json")).unwrap()).unwrap();
    assert_eq!(i1, i2);
}

#[test]
fn classify_smooth_and_degenerate() {
    let dir = TempDir::new().unwrap();
    let x = write_config(dir.path(), "X.json", 3, &standard5());
    let doc = stdout_json(&run(&["classify", "-i", p(&x), "--center", "43,-50,6,-5"]));
    assert_eq!(doc["degeneration"], "SmoothCubic");
    // On the line through x1 and x2.
    let doc = stdout_json(&run(&["classify", "-i", p(&x), "--center", "1,1,0,0"]));
    assert_ne!(doc["degeneration"], "SmoothCubic");
}

#[test]
fn text_format_and_bad_tol() {
    let dir = TempDir::new().unwrap();
    let x = write_config(dir.path(), "X.json", 3, &standard5());
    let out = run(&["--format", "text", "classify", "-i", p(&x), "--center", "43,-50,6,-5"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "degeneration: SmoothCubic");
    let out = run(&["--tol", "0", "classify", "-i", p(&x), "--center", "43,-50,6,-5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_file_exits_2() {
    let out = run(&["invariants", "-i", "/nonexistent/file.json"]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["code"], "Io");
}
