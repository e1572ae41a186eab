use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_macmahon"));
    c.env_remove("MACMAHON_ORDER").env_remove("MACMAHON_TOL");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json_of(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&o.stdout)))
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn assert_schema(name: &str, v: &Value) {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "docs", "schemas", name].iter().collect();
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let validator = jsonschema::validator_for(&schema).expect("schema compiles");
    let errors: Vec<String> = validator.iter_errors(v).map(|e| format!("{e} at {}", e.instance_path)).collect();
    assert!(errors.is_empty(), "{name}: {errors:?}\n{v}");
}

fn strs(v: &Value) -> Vec<String> {
    v.as_array().unwrap().iter().map(|x| x.as_str().unwrap().to_string()).collect()
}

/// Σ_{n₁<n₂} q^{r(n₁+n₂)}/((1−q^{n₁})(1−q^{n₂}))^k by direct convolution.
fn depth_two_linear(k: usize, r: usize, len: usize) -> Vec<u64> {
    let binom = |n: usize, m: usize| -> u64 { (0..m).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64) };
    // (1 − q^m)^{−k} = Σ_j C(j+k−1, k−1) q^{mj}
    let factor = |m: usize| -> Vec<u64> {
        let mut f = vec![0u64; len];
        let mut j = 0;
        while m * j < len {
            f[m * j] = binom(j + k - 1, k - 1);
            j += 1;
        }
        f
    };
    let mul = |a: &[u64], b: &[u64]| -> Vec<u64> {
        let mut out = vec![0u64; len];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate().take(len - i) {
                out[i + j] += x * y;
            }
        }
        out
    };
    let mut total = vec![0u64; len];
    for n1 in 1..len {
        for n2 in n1 + 1..len {
            let e = r * (n1 + n2);
            if e >= len {
                break;
            }
            let mut term = vec![0u64; len];
            term[e] = 1;
            let t = mul(&mul(&term, &factor(n1)), &factor(n2));
            for (s, x) in total.iter_mut().zip(t) {
                *s += x;
            }
        }
    }
    total
}

#[test]
fn series_output_is_normalized() {
    let o = run(&["series", "A", "--a", "2", "--k", "4", "--r", "2", "--order", "30"]);
    assert_eq!(code(&o), 0);
    let v = json_of(&o);
    assert_schema("series.schema.json", &v);
    assert_eq!(v["valuation"], 6);
    let want = depth_two_linear(4, 2, 30);
    let got: Vec<u64> = strs(&v["coeffs"]).iter().map(|s| s.parse().unwrap()).collect();
    assert_eq!(got, want[6..].to_vec());
}

#[test]
fn empty_depth_is_one() {
    let v = json_of(&run(&["series", "A", "--a", "0", "--order", "5"]));
    assert_eq!(v["valuation"], 0);
    assert_eq!(strs(&v["coeffs"]), vec!["1", "0", "0", "0", "0"]);
}

#[test]
fn polynomial_exponent_series() {
    // k = 0: Σ q^{n²+n}
    let o = run(&["series", "C", "--a", "1", "--k", "0", "--P", "x^2+x", "--order", "31"]);
    assert_eq!(code(&o), 0);
    let v = json_of(&o);
    assert_eq!(v["valuation"], 2);
    let c = strs(&v["coeffs"]);
    for e in 2..31usize {
        let square = [2usize, 6, 12, 20, 30].contains(&e);
        assert_eq!(c[e - 2], if square { "1" } else { "0" }, "q^{e}");
    }
    let o = run(&["series", "C", "--a", "1", "--order", "10"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn symbolic_k_series() {
    let o = run(&["series", "B", "--a", "1", "--k", "2", "--r", "1", "--s", "1", "--order", "30", "--symbolic-k"]);
    assert_eq!(code(&o), 0);
    let v = json_of(&o);
    assert_schema("series.schema.json", &v);
    // Σ q^{n²+n}/(1−qⁿ)^k: q² then k q³
    assert_eq!(v["valuation"], 2);
    assert_eq!(v["coeffs"][0]["coeffs"], serde_json::json!(["1"]));
    assert_eq!(v["coeffs"][1]["coeffs"], serde_json::json!(["0", "1"]));
    assert_eq!(v["coeffs"][0]["var"], "k");
}

#[test]
fn decomposition_formats() {
    let o = run(&["decompose", "--a", "2", "--k", "4", "--r", "2", "--format", "text"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.starts_with("1/504 * G4^2"), "{text}");
    assert!(text.contains("649/3225600"), "{text}");
    let v = json_of(&run(&["decompose", "--a", "2", "--k", "4", "--r", "3"]));
    assert_schema("eisexpr.schema.json", &v);
    assert_eq!(v["monomials"].as_array().unwrap().len(), 13);
    let csv = stdout(&run(&["decompose", "--a", "1", "--k", "2", "--r", "1", "--format", "csv"]));
    assert_eq!(csv.lines().next(), Some("monomial,coefficient"));
}

#[test]
fn eisenstein_expansions() {
    let v = json_of(&run(&["eisenstein", "--G", "7", "--order", "20"]));
    assert_schema("series.schema.json", &v);
    let c = strs(&v["coeffs"]);
    assert_eq!(c[0], "0");
    // σ₆(n)
    for n in 1..20u64 {
        let sigma: u64 = (1..=n).filter(|d| n % d == 0).map(|d| d.pow(6)).sum();
        assert_eq!(c[n as usize], sigma.to_string());
    }
    let v = json_of(&run(&["eisenstein", "--E", "4", "--order", "3"]));
    assert_eq!(strs(&v["coeffs"]), vec!["1", "240", "2160"]);
    assert_eq!(code(&run(&["eisenstein", "--G", "4", "--E", "4"])), 2);
}

#[test]
fn appell_laurent_coefficients() {
    let o = run(&["appell", "F", "--r", "1", "--K", "1", "--order", "10"]);
    assert_eq!(code(&o), 0);
    let v = json_of(&o);
    assert_schema("jacobi.schema.json", &v);
    assert_eq!(v["coeffs"][0], serde_json::json!([{"e": -1, "c": "1"}]));
    assert_eq!(v["coeffs"][1], serde_json::json!([{"e": -1, "c": "1"}, {"e": 1, "c": "-1"}]));
}

#[test]
fn psi_hat_evaluation() {
    let o = run(&["eval", "psi-hat", "--n", "1", "--r", "1", "--tau", "0.3,0.9"]);
    assert_eq!(code(&o), 0);
    let v = json_of(&o);
    assert_schema("eval.schema.json", &v);
    assert!(v["abs"].as_f64().unwrap() > 0.0);
    // ψ̂₋₁ = −1/(2πi) = i/(2π)
    let v = json_of(&run(&["eval", "psi-hat", "--n", "-1", "--r", "2", "--tau", "-0.2,1.3"]));
    assert!(v["re"].as_f64().unwrap().abs() < 1e-12);
    assert!((v["im"].as_f64().unwrap() - 1.0 / (2.0 * std::f64::consts::PI)).abs() < 1e-12);
    assert_eq!(code(&run(&["eval", "psi-hat", "--n", "1", "--r", "1", "--tau", "0.3,-0.9"])), 2);
    assert_eq!(code(&run(&["eval", "psi-hat", "--n", "1", "--r", "1", "--tau", "0.3"])), 2);
}

#[test]
fn completion_suite_reports_cases() {
    let o = run(&["verify", "completion", "--suite", "thm45", "--tol", "1e-6"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let v = json_of(&o);
    assert_schema("verify-report.schema.json", &v);
    let cases = v["cases"].as_array().unwrap();
    assert_eq!(cases.len(), 36);
    for c in cases {
        assert!(c["case"].is_string() && c["pass"] == true);
        assert!(c["error"].as_f64().unwrap() < 1e-6);
    }
}

#[test]
fn limit_suite_fails_at_finite_v() {
    // the ψ⁺ limit error decays like V^{-1/2}, far above 1e-6 at V = 50
    let o = run(&["verify", "completion", "--suite", "lemma48"]);
    assert_eq!(code(&o), 1);
    let v = json_of(&o);
    for c in v["cases"].as_array().unwrap() {
        assert!(c["error_times_sqrt_v"].as_f64().unwrap() > 1.0);
    }
}

#[test]
fn exact_suites_pass() {
    for args in [
        vec!["verify", "lemma42", "--k", "2", "--r", "1", "--s", "1", "--order", "20"],
        vec!["verify", "nekrasov-okounkov", "--order", "10"],
        vec!["verify", "hooks"],
        vec!["verify", "eisenstein-decomp"],
        vec!["verify", "thm12"],
        vec!["verify", "qshuffle", "--seed", "7"],
        vec!["verify", "congruence-conjecture"],
    ] {
        let o = run(&args);
        assert_eq!(code(&o), 0, "{args:?}: {}", stdout(&o));
        assert_schema("verify-report.schema.json", &json_of(&o));
    }
}

#[test]
fn conjecture_scan() {
    let o = run(&["scan", "conjecture", "--family", "c", "--a", "2", "--k", "4", "--r", "2", "--p", "2", "--horizon", "500", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v = json_of(&o);
    assert_schema("congruence-report.schema.json", &v);
    assert_eq!(v["verdict"], "no-counterexample");
    assert_eq!(code(&run(&["scan", "conjecture", "--family", "c", "--a", "2", "--k", "4", "--r", "2", "--p", "4"])), 2);
}

#[test]
fn sporadic_counterexample_exits_one() {
    let o = run(&["scan", "sporadic", "--name", "c3a1-4-2", "--a", "1", "--horizon", "50"]);
    assert_eq!(code(&o), 1);
    let v = json_of(&o);
    assert_schema("congruence-report.schema.json", &v);
    assert_eq!(v["witness"]["n"], 20);
    assert_eq!(v["witness"]["residue"], "1");
    let o = run(&["scan", "sporadic", "--name", "c3a2-4-2", "--a", "1", "--horizon", "300"]);
    assert_eq!(code(&o), 0);
    assert_eq!(code(&run(&["scan", "sporadic", "--name", "nope"])), 2);
}

#[test]
fn parity_scan_reports_hypothesis() {
    let o = run(&["scan", "parity", "--a", "1", "--k", "4", "--r", "2", "--s", "1", "--horizon", "40"]);
    assert_eq!(code(&o), 0);
    let v = json_of(&o);
    assert_schema("congruence-report.schema.json", &v);
    assert_eq!(v["verdict"], "out-of-hypothesis");
}

#[test]
fn usage_errors_exit_two_on_stderr() {
    for args in [vec!["verify", "nope"], vec!["series", "Z"], vec!["bogus"], vec!["verify", "completion"], vec!["series", "A", "--format", "yaml"]] {
        let o = run(&args);
        assert_eq!(code(&o), 2, "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn order_from_environment() {
    let o = bin().args(["series", "A", "--a", "1", "--k", "1", "--r", "1"]).env("MACMAHON_ORDER", "7").output().unwrap();
    let v = json_of(&o);
    // valuation 1, exact below q^7
    assert_eq!(v["coeffs"].as_array().unwrap().len(), 6);
}

#[test]
fn csv_and_text_formats() {
    let csv = stdout(&run(&["series", "A", "--a", "1", "--order", "4", "--format", "csv"]));
    assert_eq!(csv, "exponent,coefficient\n1,1\n2,2\n3,2\n");
    let text = stdout(&run(&["verify", "hooks", "--format", "text", "--threads", "2"]));
    assert!(text.starts_with("PASS hooks:"), "{text}");
    let csv = stdout(&run(&["verify", "andrews-rose", "--format", "csv"]));
    assert_eq!(csv.lines().next(), Some("suite,case,pass,error"));
    assert_eq!(csv.lines().count(), 4);
}
