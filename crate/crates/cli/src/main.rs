mod suites;

use std::fmt::Display;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use macmahon::appell::{appell_f, f_tilde};
use macmahon::congruence::{scan_conjecture, scan_parity, scan_sporadic, CongruenceReport, Family, Params, SPORADIC, SPORADIC_READINGS};
use macmahon::eisenstein::{e_series, g_series};
use macmahon::exactnum::Rat;
use macmahon::macmahon::{series_c, MacParams};
use macmahon::numerics::{chi_minus_num, chi_plus_num, psi_num, CPoint, PsiKind, Scaling, VMode};
use macmahon::quasishuffle::{eis_decompose, eis_decompose_raw};
use macmahon::series::{Coeff, QSeries};
use serde_json::{json, Value};
use suites::{Settings, SuiteReport};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "macmahon", version, about = "Exact q-series, Eisenstein decompositions, completed Appell functions and congruence scans")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Worker threads for parallel scans (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Truncation order: series are exact below q^order.
    #[arg(long, global = true, env = "MACMAHON_ORDER")]
    order: Option<usize>,
    /// Tolerance for numeric checks (overrides suite defaults).
    #[arg(long, global = true, env = "MACMAHON_TOL")]
    tol: Option<f64>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScalingArg {
    Modular,
    Printed,
}

impl From<ScalingArg> for Scaling {
    fn from(s: ScalingArg) -> Self {
        match s {
            ScalingArg::Modular => Scaling::Modular,
            ScalingArg::Printed => Scaling::Printed,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum EvalTarget {
    PsiHat,
    PsiPlus,
    PsiMinus,
    ChiPlus,
    ChiMinus,
}

#[derive(Clone, Copy, ValueEnum)]
enum AppellKind {
    /// F_{r,K}(z; τ) as a Laurent series in w = e^{2πiz}.
    #[value(name = "F", alias = "f")]
    F,
}

#[derive(Subcommand)]
enum Cmd {
    /// Expand a MacMahon-type series, normalized so the first term is q^valuation.
    Series {
        /// A, A* (weakly increasing), B (quadratic) or C (polynomial exponent).
        kind: String,
        #[arg(long, default_value_t = 1)]
        a: usize,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        k: i64,
        #[arg(long, default_value_t = 1)]
        r: i64,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        s: i64,
        /// Exponent polynomial for C, e.g. "x^2+x".
        #[arg(long = "P")]
        p: Option<String>,
        /// Keep k formal; coefficients become polynomials in k.
        #[arg(long)]
        symbolic_k: bool,
    },
    /// Write A_{a,k,r} as a polynomial in Eisenstein series G_j.
    Decompose {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        k: i64,
        #[arg(long)]
        r: i64,
        /// Skip the reduction of G_8, G_10, ... into G_4, G_6.
        #[arg(long)]
        raw: bool,
    },
    /// Expand G_m (constant term −B_m/(2m)) or E_m (constant term 1).
    Eisenstein {
        #[arg(long = "G", conflicts_with = "e", required_unless_present = "e")]
        g: Option<u32>,
        #[arg(long = "E")]
        e: Option<u32>,
    },
    /// Expand an Appell-type function or one of its Taylor moments.
    Appell {
        kind: AppellKind,
        #[arg(long)]
        r: i64,
        #[arg(long = "K", allow_hyphen_values = true)]
        kk: i64,
        /// Return the moment f̃_ℓ = Σ e^ℓ c_e instead of the Laurent coefficients.
        #[arg(long)]
        ell: Option<u32>,
    },
    /// Evaluate ψ- or χ-functions at a point of the upper half-plane.
    Eval {
        target: EvalTarget,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long)]
        r: i64,
        /// τ as "re,im".
        #[arg(long, allow_hyphen_values = true)]
        tau: String,
        /// Antiholomorphic variable as "re,im" (default: conjugate of τ).
        #[arg(long, allow_hyphen_values = true)]
        taub: Option<String>,
        #[arg(long, value_enum, default_value = "modular")]
        scaling: ScalingArg,
    },
    /// Run a named verification suite, or "all".
    Verify {
        suite: String,
        /// Sub-suite for the "completion" group: thm45, cor46, lemma48, lemma49, example.
        #[arg(long = "suite")]
        sub: Option<String>,
        /// Single tuple for lemma42.
        #[arg(long)]
        k: Option<i64>,
        #[arg(long)]
        r: Option<i64>,
        #[arg(long)]
        s: Option<i64>,
    },
    /// Search for counterexamples to congruences.
    Scan {
        #[command(subcommand)]
        what: ScanCmd,
    },
}

#[derive(Subcommand)]
enum ScanCmd {
    /// The Hecke-type conjecture for c_{a,k,r} or d_{a,k,r,s} at a prime p.
    Conjecture {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        a: usize,
        #[arg(long)]
        k: i64,
        #[arg(long)]
        r: i64,
        #[arg(long, default_value_t = 1)]
        s: i64,
        #[arg(long)]
        p: i64,
        #[arg(long, default_value_t = 500)]
        horizon: usize,
    },
    /// A catalogued sporadic congruence.
    Sporadic {
        #[arg(long)]
        name: String,
        #[arg(long, default_value_t = 1)]
        a: usize,
        #[arg(long, default_value_t = 500)]
        horizon: usize,
    },
    /// d_{a,k,r,s}(2n+1) ≡ 1 (mod 2^{ν₂(k)}) for odd r, s.
    Parity {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        k: i64,
        #[arg(long)]
        r: i64,
        #[arg(long)]
        s: i64,
        #[arg(long, default_value_t = 500)]
        horizon: usize,
    },
}

/// Failure modes that map to distinct exit codes.
enum Failure {
    Usage(String),
    Compute(String),
}

impl From<macmahon::Error> for Failure {
    fn from(e: macmahon::Error) -> Self {
        match e {
            macmahon::Error::Domain(m) => Failure::Usage(m),
            other => Failure::Compute(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: thread pool: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_FAIL),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Compute(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_FAIL)
        }
    }
}

/// Runs the command; `Ok(false)` means a check failed or a counterexample was found.
fn run(cli: &Cli) -> Result<bool, Failure> {
    let order = cli.order.unwrap_or(20);
    match &cli.cmd {
        Cmd::Series { kind, a, k, r, s, p, symbolic_k } => {
            let mp = MacParams::new(*a, *k, *r).with_s(*s);
            if *symbolic_k {
                let ser = match kind.as_str() {
                    "A" => mp.series_a_symbolic(order)?,
                    "A*" => mp.star().series_a_symbolic(order)?,
                    "B" => mp.series_b_symbolic(0, order)?,
                    _ => return Err(Failure::Usage(format!("--symbolic-k supports A, A*, B, not {kind}"))),
                };
                emit_series(cli.format, &ser.normalize());
            } else {
                let ser = match kind.as_str() {
                    "A" => mp.series_a(order)?,
                    "A*" => mp.star().series_a(order)?,
                    "B" => mp.series_b(order)?,
                    "C" => {
                        let src = p.as_deref().ok_or_else(|| Failure::Usage("series C needs --P".into()))?;
                        series_c(*a, *k, &parse_poly(src).map_err(Failure::Usage)?, order)?
                    }
                    _ => return Err(Failure::Usage(format!("unknown series kind {kind:?}; use A, A*, B or C"))),
                };
                emit_series(cli.format, &ser.normalize());
            }
            Ok(true)
        }
        Cmd::Decompose { a, k, r, raw } => {
            let e = if *raw { eis_decompose_raw(*a, *k, *r)? } else { eis_decompose(*a, *k, *r)? };
            match cli.format {
                Format::Json => println!("{}", e.to_json()),
                Format::Text => println!("{e}"),
                Format::Csv => {
                    println!("monomial,coefficient");
                    for (m, c) in e.terms() {
                        let sym: Vec<String> = m.iter().map(|j| format!("G{j}")).collect();
                        println!("{},{c}", if sym.is_empty() { "1".into() } else { sym.join("*") });
                    }
                }
            }
            Ok(true)
        }
        Cmd::Eisenstein { g, e } => {
            let ser = match (g, e) {
                (Some(m), _) => g_series(*m, order),
                (None, Some(m)) => e_series(*m, order)?,
                (None, None) => unreachable!("clap requires one of --G, --E"),
            };
            emit_series(cli.format, &ser);
            Ok(true)
        }
        Cmd::Appell { kind: AppellKind::F, r, kk, ell } => {
            if *r < 1 {
                return Err(Failure::Usage(format!("r must be positive, got {r}")));
            }
            match ell {
                Some(l) => emit_series(cli.format, &f_tilde(*r, *kk, *l, order)),
                None => {
                    let f = appell_f(*r, *kk, order);
                    match cli.format {
                        Format::Json => println!("{}", f.to_json()),
                        _ => emit_rows(cli.format, &["exponent", "w_exponent", "coefficient"], laurent_rows(&f.series)),
                    }
                }
            }
            Ok(true)
        }
        Cmd::Eval { target, n, r, tau, taub, scaling } => {
            let tau = parse_point(tau).map_err(Failure::Usage)?;
            if tau.im <= 0.0 {
                return Err(Failure::Usage("τ must lie in the upper half-plane".into()));
            }
            let taub = match taub {
                Some(t) => parse_point(t).map_err(Failure::Usage)?,
                None => tau.conj(),
            };
            let sc = Scaling::from(*scaling);
            let v = match target {
                EvalTarget::PsiHat => psi_num(PsiKind::Hat, *n, *r, tau, taub, sc, VMode::Uniform)?,
                EvalTarget::PsiPlus => psi_num(PsiKind::Plus, *n, *r, tau, taub, sc, VMode::Uniform)?,
                EvalTarget::PsiMinus => psi_num(PsiKind::Minus, *n, *r, tau, taub, sc, VMode::Uniform)?,
                EvalTarget::ChiPlus => chi_plus_num(*n, *r, tau)?,
                EvalTarget::ChiMinus => chi_minus_num(*n, *r, tau, taub)?,
            };
            let name = match target {
                EvalTarget::PsiHat => "psi-hat",
                EvalTarget::PsiPlus => "psi-plus",
                EvalTarget::PsiMinus => "psi-minus",
                EvalTarget::ChiPlus => "chi-plus",
                EvalTarget::ChiMinus => "chi-minus",
            };
            let out = json!({
                "function": name, "n": n, "r": r,
                "tau": [tau.re, tau.im], "taub": [taub.re, taub.im],
                "re": v.re, "im": v.im, "abs": v.norm(),
            });
            match cli.format {
                Format::Json => println!("{out}"),
                Format::Text => println!("{name}(n={n}, r={r}, τ={tau}) = {v}"),
                Format::Csv => emit_rows(Format::Csv, &["function", "n", "r", "re", "im"], vec![vec![name.into(), n.to_string(), r.to_string(), v.re.to_string(), v.im.to_string()]]),
            }
            Ok(true)
        }
        Cmd::Verify { suite, sub, k, r, s } => {
            let settings = Settings { order: cli.order, tol: cli.tol, seed: cli.seed };
            let name = match (suite.as_str(), sub) {
                ("completion", Some(x)) => format!("completion-{x}"),
                ("completion", None) => return Err(Failure::Usage("verify completion needs --suite thm45|cor46|lemma48|lemma49|example".into())),
                (x, _) => x.to_string(),
            };
            let reports = if name == "lemma42" && (k.is_some() || r.is_some() || s.is_some()) {
                let tuple = (k.unwrap_or(2), r.unwrap_or(1), s.unwrap_or(1));
                let start = std::time::Instant::now();
                let cases = suites::depth_one_cases(&[tuple], cli.order.unwrap_or(15));
                let checks = suites::SUITES.iter().find(|(n, _)| *n == "lemma42").unwrap().1.to_string();
                vec![SuiteReport { suite: name, checks, cases, elapsed_secs: start.elapsed().as_secs_f64() }]
            } else {
                suites::run(&name, &settings).map_err(Failure::Usage)?
            };
            emit_reports(cli.format, &reports);
            Ok(reports.iter().all(SuiteReport::pass))
        }
        Cmd::Scan { what } => {
            let report = match what {
                ScanCmd::Conjecture { family, a, k, r, s, p, horizon } => {
                    let params = match family {
                        Family::C => Params::c(*a, *k, *r),
                        Family::D => Params::d(*a, *k, *r, *s),
                    };
                    scan_conjecture(&params, *p, *horizon)?
                }
                ScanCmd::Sporadic { name, a, horizon } => {
                    if name == "d-odd-parity" {
                        return Err(Failure::Usage("d-odd-parity takes k, r, s: use `scan parity`".into()));
                    }
                    if !SPORADIC.contains(&name.as_str()) && !SPORADIC_READINGS.contains(&name.as_str()) {
                        let known: Vec<&str> = SPORADIC.iter().chain(SPORADIC_READINGS.iter()).copied().collect();
                        return Err(Failure::Usage(format!("unknown congruence {name:?}; known: {}", known.join(", "))));
                    }
                    scan_sporadic(name, *a, *horizon)?
                }
                ScanCmd::Parity { a, k, r, s, horizon } => scan_parity(*a, *k, *r, *s, *horizon)?,
            };
            emit_congruence(cli.format, &report);
            Ok(!report.verdict.is_counterexample())
        }
    }
}

/// Parses an integer polynomial in x such as "x^2+x", "3x^2 + 2*x + 1".
fn parse_poly(src: &str) -> Result<Vec<i64>, String> {
    let s: String = src.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err("empty polynomial".into());
    }
    let mut coeffs: Vec<i64> = Vec::new();
    let mut terms = Vec::new();
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        if (ch == '+' || ch == '-') && i > 0 {
            terms.push(&s[start..i]);
            start = i;
        }
    }
    terms.push(&s[start..]);
    for t in terms {
        let (neg, body) = match t.strip_prefix('-') {
            Some(b) => (true, b),
            None => (false, t.strip_prefix('+').unwrap_or(t)),
        };
        let bad = || format!("cannot parse term {t:?} in {src:?}");
        let (c, e) = match body.find('x') {
            None => (body.parse::<i64>().map_err(|_| bad())?, 0usize),
            Some(pos) => {
                let head = body[..pos].trim_end_matches('*');
                let c = if head.is_empty() { 1 } else { head.parse::<i64>().map_err(|_| bad())? };
                let tail = &body[pos + 1..];
                let e = if tail.is_empty() {
                    1
                } else {
                    tail.strip_prefix('^').ok_or_else(bad)?.parse::<usize>().map_err(|_| bad())?
                };
                (c, e)
            }
        };
        if coeffs.len() <= e {
            coeffs.resize(e + 1, 0);
        }
        coeffs[e] += if neg { -c } else { c };
    }
    while coeffs.len() > 1 && coeffs.last() == Some(&0) {
        coeffs.pop();
    }
    Ok(coeffs)
}

fn parse_point(s: &str) -> Result<CPoint, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [re, im] => {
            let re = re.parse::<f64>().map_err(|e| format!("bad real part {re:?}: {e}"))?;
            let im = im.parse::<f64>().map_err(|e| format!("bad imaginary part {im:?}: {e}"))?;
            Ok(CPoint::new(re, im))
        }
        _ => Err(format!("expected \"re,im\", got {s:?}")),
    }
}

fn emit_rows(format: Format, header: &[&str], rows: Vec<Vec<String>>) {
    match format {
        Format::Csv => {
            println!("{}", header.join(","));
            for r in rows {
                println!("{}", r.iter().map(|c| csv_field(c)).collect::<Vec<_>>().join(","));
            }
        }
        _ => {
            for r in rows {
                println!("{}", r.join("\t"));
            }
        }
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn emit_series<C: Coeff + Display>(format: Format, ser: &QSeries<C>) {
    match format {
        Format::Json => println!("{}", ser.to_json()),
        Format::Text => {
            let terms: Vec<String> = (ser.valuation()..ser.precision())
                .filter_map(|e| {
                    let c = ser.at(e);
                    (!c.is_zero()).then(|| format!("({c}) q^{e}"))
                })
                .collect();
            let prefix = if ser.prefactor() == &Rat::from_integer(0.into()) { String::new() } else { format!("q^({}) * ", ser.prefactor()) };
            let body = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
            println!("{prefix}{body} + O(q^{})", ser.precision());
        }
        Format::Csv => {
            let rows = (ser.valuation()..ser.precision()).map(|e| vec![e.to_string(), ser.at(e).to_string()]).collect();
            emit_rows(Format::Csv, &["exponent", "coefficient"], rows);
        }
    }
}

fn laurent_rows(ser: &QSeries<macmahon::appell::LaurentW>) -> Vec<Vec<String>> {
    let mut rows = Vec::new();
    for e in ser.valuation()..ser.precision() {
        for (w, c) in ser.at(e).terms() {
            rows.push(vec![e.to_string(), w.to_string(), c.to_string()]);
        }
    }
    rows
}

fn emit_reports(format: Format, reports: &[SuiteReport]) {
    match format {
        Format::Json => {
            let v: Value = if reports.len() == 1 {
                reports[0].to_json()
            } else {
                json!({
                    "pass": reports.iter().all(SuiteReport::pass),
                    "suites": reports.iter().map(SuiteReport::to_json).collect::<Vec<_>>(),
                })
            };
            println!("{v}");
        }
        Format::Text => {
            for r in reports {
                let passed = r.cases.iter().filter(|c| c.pass).count();
                println!("{} {}: {} ({passed}/{} cases, {:.2}s)", if r.pass() { "PASS" } else { "FAIL" }, r.suite, r.checks, r.cases.len(), r.elapsed_secs);
                for c in r.cases.iter().filter(|c| !c.pass) {
                    println!("  FAIL {}: {}", c.name, Value::Object(c.detail.clone()));
                }
            }
        }
        Format::Csv => {
            let rows = reports
                .iter()
                .flat_map(|r| {
                    r.cases.iter().map(|c| {
                        let err = c.detail.get("error").map(|v| v.to_string()).unwrap_or_default();
                        vec![r.suite.clone(), c.name.clone(), c.pass.to_string(), err]
                    })
                })
                .collect();
            emit_rows(Format::Csv, &["suite", "case", "pass", "error"], rows);
        }
    }
}

fn emit_congruence(format: Format, rep: &CongruenceReport) {
    match format {
        Format::Json => println!("{}", rep.to_json()),
        Format::Text => println!("{}", rep.to_text()),
        Format::Csv => {
            let (index, residue) = match &rep.verdict {
                macmahon::congruence::Verdict::Counterexample { index, residue, .. } => (index.to_string(), residue.to_string()),
                _ => (String::new(), String::new()),
            };
            let row = vec![rep.name.clone(), rep.params.label(), rep.prime.map(|p| p.to_string()).unwrap_or_default(), rep.horizon.to_string(), rep.verdict.name().into(), index, residue];
            emit_rows(Format::Csv, &["name", "parameters", "prime", "horizon", "verdict", "index", "residue"], vec![row]);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_strings() {
        assert_eq!(parse_poly("x^2+x").unwrap(), vec![0, 1, 1]);
        assert_eq!(parse_poly("3x^2 + 2*x + 1").unwrap(), vec![1, 2, 3]);
        assert_eq!(parse_poly("x^3").unwrap(), vec![0, 0, 0, 1]);
        assert_eq!(parse_poly("2x-x").unwrap(), vec![0, 1]);
        assert!(parse_poly("x^").is_err());
        assert!(parse_poly("y").is_err());
    }

    #[test]
    fn points() {
        assert_eq!(parse_point("0.3,0.9").unwrap(), CPoint::new(0.3, 0.9));
        assert_eq!(parse_point("-0.2, 1.3").unwrap(), CPoint::new(-0.2, 1.3));
        assert!(parse_point("0.3").is_err());
    }
}
