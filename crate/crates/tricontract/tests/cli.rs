//! Integration tests for the CLI surface: exit-code contract, report
//! shapes, JSON mode, emission round trips, and the seed environment
//! variable.

use std::path::PathBuf;

use tricontract::cli;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv: Vec<String> = std::iter::once("tricontract".to_string())
        .chain(args.iter().map(|s| s.to_string()))
        .collect();
    let code = cli::run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join("tricontract_cli_tests").join(name);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn write_file(dir: &std::path::Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

const BROKEN_TRIANGLE: &str = "\
tms 1
points a b c
metric
0 1 5
1 0 1
5 1 0
map
a -> a
b -> a
c -> a
";

const IDENTITY: &str = "\
tms 1
points a b c
metric
0 1 1
1 0 1
1 1 0
map
a -> a
b -> b
c -> c
";

#[test]
fn classify_example1_exits_zero_with_exact_report() {
    let dir = scratch("classify_ex1");
    let (code, _, _) = run(&["examples", "--emit", dir.to_str().unwrap()]);
    assert_eq!(code, 0);
    let file = dir.join("ex1.tms");
    let (code, out, _) = run(&["classify", file.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("weak_sup=2/3"));
    assert!(out.contains("is_weak=true"));
    assert!(out.contains("petrov_witness=2,3,4"));
}

#[test]
fn classify_identity_is_a_false_verdict() {
    let dir = scratch("classify_id");
    let file = write_file(&dir, "id.tms", IDENTITY);
    let (code, out, _) = run(&["classify", &file]);
    assert_eq!(code, 1);
    assert!(out.contains("is_weak=false"));
}

#[test]
fn validate_broken_triangle_is_a_false_verdict_with_witness() {
    let dir = scratch("validate_broken");
    let file = write_file(&dir, "broken.tms", BROKEN_TRIANGLE);
    let (code, out, _) = run(&["validate", &file]);
    assert_eq!(code, 1);
    assert!(out.contains("ok=false"));
    assert!(out.contains("violation triangle a,c,b 5 2"));
}

#[test]
fn validate_good_space_exits_zero() {
    let dir = scratch("validate_ok");
    let file = write_file(&dir, "id.tms", IDENTITY);
    let (code, out, _) = run(&["validate", &file]);
    assert_eq!(code, 0);
    assert!(out.contains("ok=true"));
}

#[test]
fn parse_errors_exit_two_with_line_numbers() {
    let dir = scratch("parse_err");
    let file = write_file(&dir, "bad.tms", "tms 1\npoints a b c\nmetric\n0 1 1\n1 0 zz\n1 1 0\n");
    let (code, _, err) = run(&["classify", &file]);
    assert_eq!(code, 2);
    assert!(err.contains("line 5"), "diagnostic must carry the line: {err}");
}

#[test]
fn partial_map_is_an_input_error_for_classify() {
    let dir = scratch("partial_map");
    let file = write_file(
        &dir,
        "partial.tms",
        "tms 1\npoints a b c\nmetric\n0 1 1\n1 0 1\n1 1 0\nmap\na -> b\n",
    );
    let (code, _, err) = run(&["classify", &file]);
    assert_eq!(code, 2);
    assert!(err.contains("has no map entry"));
}

#[test]
fn iterate_and_orbit_and_fixed_points() {
    let dir = scratch("iterate");
    run(&["examples", "--emit", dir.to_str().unwrap()]);
    let ex3 = dir.join("ex3.tms");
    let ex3 = ex3.to_str().unwrap();

    let (code, out, _) = run(&["iterate", ex3, "--start", "4"]);
    assert_eq!(code, 0);
    assert!(out.contains("verdict=converged"));
    assert!(out.contains("limit=1"));
    assert!(out.contains("steps=3"));
    assert!(out.contains("orbit=4,3,2,1,1"));
    assert!(out.contains("unique_claim_applicable=false"));

    let (code, out, _) = run(&["orbit", ex3, "--start", "4"]);
    assert_eq!(code, 0);
    assert!(out.contains("orbit=4,3,2,1,1"));
    assert!(out.contains("stabilized_at=3"));

    let (code, out, _) = run(&["fixed-points", ex3]);
    assert_eq!(code, 0);
    assert!(out.contains("fixed_points=0,1"));
    assert!(out.contains("count=2"));

    let (code, _, err) = run(&["iterate", ex3, "--start", "nope"]);
    assert_eq!(code, 2);
    assert!(err.contains("unknown start point"));
}

#[test]
fn iterate_refuses_non_weak_maps_with_verdict_exit() {
    let dir = scratch("iterate_id");
    let file = write_file(&dir, "id.tms", IDENTITY);
    let (code, out, _) = run(&["iterate", &file, "--start", "a"]);
    assert_eq!(code, 1);
    assert!(out.contains("verdict=not_weak"));
}

#[test]
fn lemmas_pass_on_example3() {
    let dir = scratch("lemmas");
    run(&["examples", "--emit", dir.to_str().unwrap()]);
    let ex3 = dir.join("ex3.tms");
    let (code, out, _) = run(&["lemmas", ex3.to_str().unwrap(), "--start", "4"]);
    assert_eq!(code, 0);
    assert!(out.contains("lemma1=holds"));
    assert!(out.contains("lemma2=holds"));
    assert!(out.contains("lemma3=holds"));
    assert!(out.contains("lemma3_p_inf=6"));
    assert!(out.contains("lemma3_bound=8"));
    assert!(out.contains("cauchy_all_within=true"));
    assert!(out.contains("profile 2 1 27/8 true"));

    // k below the weak supremum is an input error
    let (code, _, err) = run(&["lemmas", ex3.to_str().unwrap(), "--start", "4", "--k", "1/2"]);
    assert_eq!(code, 2);
    assert!(err.contains("weak_sup"));
}

#[test]
fn json_mode_is_stable_and_structured() {
    let dir = scratch("json");
    run(&["examples", "--emit", dir.to_str().unwrap()]);
    let ex1 = dir.join("ex1.tms");
    let (code, a, _) = run(&["classify", ex1.to_str().unwrap(), "--json"]);
    let (_, b, _) = run(&["classify", ex1.to_str().unwrap(), "--json"]);
    assert_eq!(code, 0);
    assert_eq!(a, b, "JSON output must be byte-stable");
    let parsed: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(parsed["weak_sup"]["num"], "2");
    assert_eq!(parsed["weak_sup"]["den"], "3");
    assert_eq!(parsed["fixed_points"][0], "1");
}

#[test]
fn approx_mode_suffixes_decimals() {
    let dir = scratch("approx");
    run(&["examples", "--emit", dir.to_str().unwrap()]);
    let ex1 = dir.join("ex1.tms");
    let (_, out, _) = run(&["classify", ex1.to_str().unwrap(), "--approx"]);
    assert!(out.contains("weak_sup=2/3 (0.666667~)"));
}

#[test]
fn generate_reads_seed_from_environment() {
    // run serially inside one test to avoid env races
    let (code, with_flag, _) = run(&["generate", "--n", "4", "--seed", "777"]);
    assert_eq!(code, 0);

    std::env::set_var(cli::SEED_ENV_VAR, "777");
    let (code, with_env, _) = run(&["generate", "--n", "4"]);
    assert_eq!(code, 0);
    assert_eq!(with_flag, with_env, "env seed must match explicit seed");

    std::env::set_var(cli::SEED_ENV_VAR, "not-a-seed");
    let (code, _, err) = run(&["generate", "--n", "4"]);
    assert_eq!(code, 2);
    assert!(err.contains("TRICONTRACT_SEED"));
    std::env::remove_var(cli::SEED_ENV_VAR);
}

#[test]
fn generated_weak_instances_classify_as_weak() {
    let dir = scratch("generate_weak");
    let (code, text, _) = run(&["generate", "--n", "5", "--seed", "99", "--weak"]);
    assert_eq!(code, 0);
    let file = write_file(&dir, "weak.tms", &text);
    let (code, out, _) = run(&["classify", &file]);
    assert_eq!(code, 0);
    assert!(out.contains("is_weak=true"));
    assert!(out.contains("has_period2_violation=false"));
}

#[test]
fn completeness_demo_emits_a_validatable_instance() {
    let dir = scratch("demo_emit");
    let emitted = dir.join("escape.tms");
    let (code, out, _) = run(&[
        "completeness-demo",
        "--k",
        "1/2",
        "--depth",
        "30",
        "--emit",
        emitted.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("ok=true"));
    assert!(out.contains("fixed_points="));
    assert!(out.contains("certificate "));
    // the emitted space is a genuine metric space; its map is partial by
    // construction, so only validate consumes it
    let (code, vout, _) = run(&["validate", emitted.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(vout.contains("ok=true"));
    let (code, _, err) = run(&["classify", emitted.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("has no map entry"));
}

#[test]
fn completeness_demo_rejects_bad_inputs() {
    let (code, _, err) = run(&["completeness-demo", "--k", "2"]);
    assert_eq!(code, 2);
    assert!(err.contains("between 0 and 1"));
    let (code, _, err) = run(&["completeness-demo", "--extras", "7/5"]);
    assert_eq!(code, 2);
    assert!(err.contains("collides"));
}

#[test]
fn threads_flag_keeps_reports_identical() {
    let dir = scratch("threads");
    run(&["examples", "--emit", dir.to_str().unwrap()]);
    let ex2 = dir.join("ex2.tms");
    let ex2 = ex2.to_str().unwrap();
    let (c1, one, _) = run(&["classify", ex2, "--threads", "1"]);
    let (c4, four, _) = run(&["classify", ex2, "--threads", "4"]);
    assert_eq!((c1, c4), (0, 0));
    assert_eq!(one, four);
}
