use std::io::Write;
use std::path::PathBuf;

use aalpha_cli::run;
use aalpha_core::{parse_edge_list, spectral::spectral_radius};
use serde_json::Value;
use tempfile::TempDir;

struct Outcome {
    code: i32,
    stdout: String,
    stderr: String,
}

fn cli(args: &[&str]) -> Outcome {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("aalpha").chain(args.iter().copied()), &mut out, &mut err);
    Outcome {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn json(o: &Outcome) -> Value {
    serde_json::from_str(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", o.stdout))
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::File::create(&p).unwrap().write_all(text.as_bytes()).unwrap();
    p
}

fn fixtures() -> (TempDir, String, String) {
    let dir = TempDir::new().unwrap();
    let tri = write(&dir, "triangle.txt", "0 1\n1 2\n2 0\n");
    let d2 = write(&dir, "d2.txt", "# 4-cycle with a chord\n0 1\n1 2\n2 3\n3 0\n0 2\n");
    let (a, b) = (tri.display().to_string(), d2.display().to_string());
    (dir, a, b)
}

#[test]
fn spectral_on_triangle() {
    let (_d, tri, _) = fixtures();
    let o = cli(&["spectral", "--input", &tri, "--alpha", "0.5"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let v = json(&o);
    let r = &v["results"][0];
    assert!((r["lambda"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    let width = r["cw_upper"].as_f64().unwrap() - r["cw_lower"].as_f64().unwrap();
    assert!(width <= 1e-10);
}

#[test]
fn theorem31_bound_on_d2() {
    let (_d, _, d2) = fixtures();
    let o = cli(&["bounds", "--input", &d2, "--alpha", "0.75", "--theorem", "31"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let v = json(&o);
    let b = &v["bounds"][0];
    assert_eq!(b["bound_name"], "theorem31");
    assert!((b["bound_value"].as_f64().unwrap() - 3.0).abs() < 1e-12);
    assert!(b["slack"].as_f64().unwrap() > 0.0);
    // The embedded digraph reparses to the input.
    let g = parse_edge_list(v["digraph"].as_str().unwrap()).unwrap();
    assert_eq!(g.m(), 5);
}

#[test]
fn all_bounds_and_csv() {
    let (_d, _, d2) = fixtures();
    let o = cli(&["bounds", "--input", &d2, "--alpha", "0.5,0.75"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let v = json(&o);
    assert!(v["bounds"].as_array().unwrap().len() >= 8);
    assert_eq!(v["lemma22"].as_array().unwrap().len(), 2);

    let o = cli(&["--format", "csv", "bounds", "--input", &d2, "--theorem", "c41", "--k", "1"]);
    assert_eq!(o.code, 0);
    let mut lines = o.stdout.lines();
    assert_eq!(
        lines.next().unwrap(),
        "bound_name,kind,alpha,k,applicable,bound_value,lambda,slack,violated,reason"
    );
    assert!(lines.next().unwrap().starts_with("corollary41,upper,0.5,1,true,5.25,"));
}

#[test]
fn verify_theorem11_exhaustive_exits_zero() {
    let o = cli(&["verify", "--theorem", "11", "--exhaustive", "4", "--alpha", "0.75"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let v = json(&o);
    assert_eq!(v["report"]["violations"], Value::Array(vec![]));
    assert_eq!(v["report"]["population"]["n"], 4);
}

#[test]
fn verify_csv_has_fixed_header_and_one_row_per_check() {
    let o = cli(&["--format", "csv", "verify", "--theorem", "21", "--exhaustive", "3", "--alpha", "0,0.5"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let lines: Vec<&str> = o.stdout.lines().collect();
    assert_eq!(
        lines[0],
        "theorem,alpha,k,digraph,partner,bound_value,lambda,lambda_partner,slack,violated"
    );
    let mut rdr = csv::Reader::from_reader(o.stdout.as_bytes());
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 2 * 18);
    for r in &rows {
        assert!(parse_edge_list(&r[3]).is_ok());
    }
}

#[test]
fn witnesses_reproduce_their_lambda() {
    let tol = 1e-10;
    for (theorem, alpha) in [("31", "0.6"), ("11", "0.9"), ("21", "0.5")] {
        let o = cli(&["verify", "--theorem", theorem, "--exhaustive", "4", "--alpha", alpha]);
        assert_eq!(o.code, 0);
        let w = &json(&o)["report"]["min_slack"];
        let a = w["alpha"].as_f64().unwrap();
        let g = parse_edge_list(w["digraph"].as_str().unwrap()).unwrap();
        let l = spectral_radius(&g, a, tol).unwrap().lambda;
        assert!((l - w["lambda"].as_f64().unwrap()).abs() <= 2.0 * tol);
        if let Some(p) = w["partner"].as_str() {
            let g2 = parse_edge_list(p).unwrap();
            let l2 = spectral_radius(&g2, a, tol).unwrap().lambda;
            assert!((l2 - w["lambda_partner"].as_f64().unwrap()).abs() <= 2.0 * tol);
        }
    }
}

#[test]
fn identical_runs_give_identical_bytes() {
    let args = ["verify", "--theorem", "41", "--random", "6", "--count", "40", "--seed", "9", "--alpha", "0.5,0.8"];
    let a = cli(&args);
    let b = cli(&args);
    assert_eq!(a.stdout, b.stdout);
    let c = cli(&[&args[..], &["--workers", "4"]].concat());
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn compare_pair() {
    let dir = TempDir::new().unwrap();
    // Δ⁺ = 3 against Δ⁺ = 2, both with m = 6 on 4 vertices.
    let g1 = write(&dir, "g1.txt", "0 1\n0 2\n0 3\n1 0\n2 0\n3 0\n");
    let g2 = write(&dir, "g2.txt", "0 1\n1 2\n2 3\n3 0\n0 2\n2 0\n");
    let o = cli(&[
        "compare", "--g1", g1.to_str().unwrap(), "--g2", g2.to_str().unwrap(), "--theorem", "11", "--alpha", "0.9",
    ]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let v = json(&o);
    let verdict = &v["verdicts"][0];
    assert_eq!(verdict["preconditions_met"], true);
    assert_eq!(verdict["holds"], true);
    assert!(verdict["margin"].as_f64().unwrap() > 0.0);
}

#[test]
fn probe_and_enumerate() {
    let o = cli(&["probe", "--n-max", "4"]);
    assert_eq!(o.code, 0);
    assert_eq!(json(&o)["report"]["hypothesis_satisfiable"], false);

    let o = cli(&["enumerate", "--n", "3", "--count-only"]);
    assert_eq!(json(&o)["count"], 18);
    assert_eq!(json(&o)["digraphs"], Value::Array(vec![]));
    let o = cli(&["--format", "csv", "enumerate", "--n", "3", "--m", "3"]);
    let rows = csv::Reader::from_reader(o.stdout.as_bytes()).records().count();
    assert_eq!(rows, 2);
}

#[test]
fn remark_search_report_shape() {
    let o = cli(&["remark-search", "--n", "4", "--m", "6", "--alpha", "0.6", "--samples", "200", "--seed", "1"]);
    assert!(o.code == 0 || o.code == 2);
    let v = json(&o);
    let found = v["counterexample_found"].as_bool().unwrap();
    assert_eq!(o.code == 2, found);
    assert!(v["reports"][0]["alphas"][0]["status"].is_string());
}

#[test]
fn errors_exit_one_and_name_the_token() {
    let (_d, tri, _) = fixtures();
    let o = cli(&["spectral", "--input", &tri, "--alpha", "0.5,1.5"]);
    assert_eq!(o.code, 1);
    assert!(o.stderr.contains("1.5"), "{}", o.stderr);

    let o = cli(&["spectral", "--input", "/nonexistent/graph.txt"]);
    assert_eq!(o.code, 1);
    assert!(o.stderr.contains("/nonexistent/graph.txt"));

    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.txt", "0 1\n1 x\n");
    let o = cli(&["spectral", "--input", bad.to_str().unwrap()]);
    assert_eq!(o.code, 1);
    assert!(o.stderr.contains("line 2"), "{}", o.stderr);

    let weak = write(&dir, "weak.txt", "0 1\n1 2\n");
    assert_eq!(cli(&["spectral", "--input", weak.to_str().unwrap()]).code, 1);

    assert_eq!(cli(&["verify", "--theorem", "99", "--exhaustive", "3"]).code, 1);
    assert_eq!(cli(&["verify", "--theorem", "31"]).code, 1);
    assert_eq!(cli(&["--tol", "0", "probe"]).code, 1);
    assert_eq!(cli(&["--workers", "0", "probe"]).code, 1);
    assert_eq!(cli(&["frobnicate"]).code, 1);
    assert_eq!(cli(&["--help"]).code, 0);
}
