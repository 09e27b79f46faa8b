use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn floordiag(args: &[&str]) -> Output {
    let cache = tempfile::tempdir().unwrap();
    floordiag_with_cache(args, cache.path())
}

fn floordiag_with_cache(args: &[&str], cache: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_floordiag"))
        .args(args)
        .env("FLOORDIAG_CACHE_DIR", cache)
        .output()
        .expect("failed to run floordiag")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let o = floordiag(args);
    assert!(o.status.success(), "{args:?}: {}", stderr(&o));
    stdout(&o)
}

#[test]
fn cubic_invariant() {
    assert_eq!(ok(&["invariant", "--polygon", "abn:3,0,1", "--genus", "0"]), "q + 10 + q^-1\n");
}

#[test]
fn top_genus_quartic_invariant() {
    assert_eq!(ok(&["invariant", "--polygon", "abn:4,0,1", "--genus", "3"]), "1\n");
}

#[test]
fn genus_beyond_interior_points_warns() {
    let o = floordiag(&["invariant", "--polygon", "abn:4,0,1", "--genus", "99"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "0\n");
    assert!(stderr(&o).contains("warning"));
}

#[test]
fn invalid_polygon_is_a_usage_error() {
    let o = floordiag(&["invariant", "--polygon", "abn:x", "--genus", "0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn quartic_descendant_at_s_five() {
    assert_eq!(
        ok(&["descendant", "--polygon", "abn:4,0,1", "--s", "5"]),
        "q^3 + 3*q^2 + 14*q + 24 + 14*q^-1 + 3*q^-2 + q^-3\n"
    );
}

#[test]
fn descendant_at_s_zero_is_the_genus_zero_invariant() {
    let a = ok(&["descendant", "--polygon", "abn:4,0,1", "--s", "0"]);
    let b = ok(&["invariant", "--polygon", "abn:4,0,1", "--genus", "0"]);
    assert_eq!(a, b);
}

#[test]
fn explicit_pairing_agrees_with_default() {
    let a = ok(&["descendant", "--polygon", "abn:3,0,1", "--s", "1", "--pairing", "pairs:3-4"]);
    let b = ok(&["descendant", "--polygon", "abn:3,0,1", "--s", "1"]);
    assert_eq!(a, b);
    assert_eq!(a, "q + 8 + q^-1\n");
}

#[test]
fn pairing_order_must_match_s() {
    let o = floordiag(&["descendant", "--polygon", "abn:3,0,1", "--s", "2", "--pairing", "pairs:3-4"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn json_output_uses_doubled_exponents() {
    let out = ok(&["--format", "json", "invariant", "--polygon", "abn:3,0,1", "--genus", "0"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["value"]["2"], 1);
    assert_eq!(v["value"]["0"], 10);
    assert_eq!(v["value"]["-2"], 1);
    assert_eq!(v["polygon"], "abn:3,0,1");
}

#[test]
fn codegree_one_fit() {
    let o = floordiag(&["coeffs", "--i", "1", "--a", "2..4", "--b", "3..5", "--n", "0..2", "--s", "0..1", "--fit"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("polynomial: a*n + 2*a + 2*b - 2*s + 2"), "{out}");
    assert!(out.contains("result: ok"));
}

#[test]
fn codegree_zero_with_genus_column() {
    let out = ok(&["--format", "csv", "coeffs", "--i", "0", "--a", "3", "--b", "0", "--n", "1", "--genus", "0..2"]);
    assert_eq!(
        out,
        "i,g,a,b,n,s,value,source\n0,0,3,0,1,0,1,enumeration\n0,1,3,0,1,0,1,enumeration\n0,2,3,0,1,0,0,enumeration\n"
    );
    let out = ok(&["--format", "csv", "coeffs", "--i", "0", "--a", "4", "--b", "0", "--n", "1", "--genus", "0..3"]);
    let values: Vec<&str> = out.lines().skip(1).map(|l| l.split(',').nth(6).unwrap()).collect();
    assert_eq!(values, ["1", "3", "3", "1"]);
}

#[test]
fn closed_form_and_enumeration_agree() {
    let out = ok(&["--format", "csv", "coeffs", "--i", "2", "--a", "3..4", "--b", "3", "--n", "1", "--source", "both"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "i,a,b,n,s,value,source");
    assert_eq!(lines.len(), 5);
    assert_eq!(lines[1].rsplit_once(',').unwrap().0, lines[2].rsplit_once(',').unwrap().0);
}

#[test]
fn empty_grid_is_a_usage_error() {
    let o = floordiag(&["coeffs", "--i", "1", "--a", "5..3", "--b", "2", "--n", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn s_fit_for_the_quartic() {
    let out = ok(&["fit", "--i", "3", "--polygon", "abn:4,0,1"]);
    assert!(out.contains("values: 404, 264, 164, 96, 52, 24"), "{out}");
    assert!(out.contains("derivative 3: 8, 8, 8"));
    assert!(out.contains("result: ok"));
}

#[test]
fn wrong_degree_fit_fails() {
    let o = floordiag(&["fit", "--i", "1", "--a", "2..5", "--b", "3", "--n", "1", "--degrees", "2"]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
}

#[test]
fn template_census() {
    let out = ok(&["--format", "csv", "templates", "--max-genus", "1", "--max-codegree", "2", "--census"]);
    assert_eq!(out, "genus,codegree,count\n0,0,1\n0,1,2\n0,2,4\n1,0,1\n1,1,5\n1,2,16\n");
}

#[test]
fn templates_json_lists_short_edges() {
    let out = ok(&["--format", "json", "templates", "--max-genus", "0", "--max-codegree", "1"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    let list = v.as_array().unwrap();
    assert_eq!(list.len(), 3);
    assert!(list.iter().all(|t| t.get("unweighted_short_edges").is_some()));
}

#[test]
fn capping_trees() {
    let out = ok(&["--format", "json", "capping", "--a", "4", "--n", "1", "--max-codegree", "2"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 1);
    assert_eq!(v[0]["codegree"], 2);
}

#[test]
fn verify_suites_pass() {
    for suite in ["examples", "identities", "monotonicity", "recursion", "bijection", "s-polynomiality"] {
        let o = floordiag(&["verify", "--suite", suite]);
        assert_eq!(o.status.code(), Some(0), "{suite}: {}", stdout(&o));
        assert!(!stdout(&o).contains("FAIL"));
    }
}

#[test]
fn suite_aliases() {
    for alias in ["paper-examples", "theorem-1-7"] {
        let o = floordiag(&["verify", "--suite", alias]);
        assert_eq!(o.status.code(), Some(0), "{alias}");
    }
}

#[test]
fn unknown_suite_is_a_usage_error() {
    let o = floordiag(&["verify", "--suite", "nope"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("unknown suite"));
}

#[test]
fn emitted_golden_files_are_byte_stable() {
    for (suite, file) in [("identities", "identities.json"), ("s-polynomiality", "s_polynomiality.json")] {
        let out = ok(&["verify", "--suite", suite, "--emit"]);
        let golden = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("golden").join(file)).unwrap();
        assert_eq!(out, golden, "{suite}");
    }
}

#[test]
fn output_does_not_depend_on_worker_count() {
    let args = ["descendant", "--polygon", "abn:4,0,1", "--s", "2", "--no-cache"];
    let one = ok(&[&["--jobs", "1"], &args[..]].concat());
    let four = ok(&[&["--jobs", "4"], &args[..]].concat());
    assert_eq!(one, four);
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let run = |args: &[&str]| floordiag_with_cache(args, dir.path());
    assert_eq!(stdout(&run(&["cache", "path"])).trim(), dir.path().display().to_string());
    assert!(run(&["invariant", "--polygon", "abn:3,0,1", "--genus", "0"]).status.success());
    assert!(stdout(&run(&["cache", "stats"])).starts_with("1 entries"));
    let cached = run(&["invariant", "--polygon", "abn:3,0,1", "--genus", "0"]);
    assert_eq!(stdout(&cached), "q + 10 + q^-1\n");
    assert!(stdout(&run(&["cache", "clear"])).starts_with("removed 1 entries"));
    assert!(stdout(&run(&["cache", "stats"])).starts_with("0 entries"));
}
