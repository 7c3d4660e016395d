//! Command-line front end. Structured results go to standard output as JSON,
//! plot grids as CSV.
//!
//! Exit codes: 0 success, 1 a check failed or the computation errored,
//! 2 usage error.

use std::fmt::Write as _;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::checks::{self, Check, McSizes};
use crate::dh_density::{
    c_coeffs, convolution_density_closed, convolution_density_jump, fiber_polytope_density,
    marginal_density_I, ChamberLabel, PiecewiseDensity, Support,
};
use crate::exactmath::{MultiPoly, Rational};
use crate::sampling::{
    conditioned_estimate, estimate_sep_prob, marginal_histogram, stream_rng, SamplerConfig,
    DEFAULT_PPT_TOLERANCE,
};
use crate::sep_integral::{compute_M, compute_f, probability_from_f};
use crate::volumes::{volume_table, Spectrum, MAX_DIMENSION};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Parser)]
#[command(name = "dhsep", version, about = "Exact and Monte Carlo two-qubit separability probability")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Flag-manifold and state-space volumes for U(N).
    Volumes {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=MAX_DIMENSION as u64))]
        n: u64,
    },
    /// The convolution density p(r,s) on its chambers.
    Density(DensityArgs),
    /// The marginal density I(x|λ̂) for a spectrum, optionally with a sampled histogram.
    Marginal(MarginalArgs),
    /// Exact M-polynomials, f(a) or the separability probability.
    Integrate {
        #[arg(long, value_enum)]
        emit: Emit,
    },
    /// Monte Carlo sampling.
    #[command(subcommand)]
    Sample(SampleCommand),
    /// Run the verification suite.
    #[command(subcommand)]
    Verify(VerifyCommand),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    #[value(name = "M1")]
    M1,
    #[value(name = "M2")]
    M2,
    #[value(name = "M3")]
    M3,
    #[value(name = "f")]
    F,
    #[value(name = "prob")]
    Prob,
}

#[derive(Debug, Args)]
pub struct DensityArgs {
    /// Compare the closed form with the fiber-polytope oracle at random points.
    #[arg(long)]
    pub check_oracle: bool,
    #[arg(long, default_value_t = 300, value_parser = clap::value_parser!(u64).range(1..=1_000_000))]
    pub points: u64,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Grid points per axis for CSV output over [-5, 1]².
    #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(2..=2000))]
    pub grid: u64,
}

#[derive(Debug, Args)]
pub struct MarginalArgs {
    /// Four eigenvalues summing to 1, as p/q or decimals.
    #[arg(long, value_delimiter = ',', num_args = 1.., required = true)]
    pub spectrum: Vec<Rational>,
    /// Haar-orbit samples for an empirical histogram.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..=100_000_000))]
    pub samples: Option<u64>,
    #[arg(long, default_value_t = 50, value_parser = clap::value_parser!(u64).range(1..=100_000))]
    pub bins: u64,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..=1024))]
    pub threads: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Grid points over [0, c₃] for CSV output without samples.
    #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(u64).range(2..=1_000_000))]
    pub grid: u64,
}

#[derive(Debug, Subcommand)]
pub enum SampleCommand {
    /// PPT fraction of HS-random two-qubit states.
    Sep {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=1_000_000_000))]
        n: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=1024))]
        threads: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_PPT_TOLERANCE, value_parser = parse_tolerance)]
        tol: f64,
    },
    /// Hit-and-run on states with first marginal (I + aσ₃)/2.
    Conditioned {
        #[arg(long, value_parser = parse_a)]
        a: f64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=100_000_000))]
        n: u64,
        #[arg(long, default_value_t = 1000)]
        burn: u64,
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
        thin: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u64).range(1..=4096))]
        chains: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=1024))]
        threads: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_PPT_TOLERANCE, value_parser = parse_tolerance)]
        tol: f64,
    },
}

#[derive(Debug, Subcommand)]
pub enum VerifyCommand {
    /// Every acceptance check.
    All {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=1024))]
        threads: Option<u64>,
        /// Smaller Monte Carlo runs with tolerances widened as 1/√n.
        #[arg(long)]
        quick: bool,
    },
}

fn parse_tolerance(s: &str) -> Result<f64, String> {
    let t: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if t.is_finite() && (0.0..1.0).contains(&t) {
        Ok(t)
    } else {
        Err(format!("tolerance {t} must lie in [0, 1)"))
    }
}

fn parse_a(s: &str) -> Result<f64, String> {
    let a: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if (0.0..1.0).contains(&a) {
        Ok(a)
    } else {
        Err(format!("a = {a} must lie in [0, 1)"))
    }
}

/// 17 significant digits.
pub fn decimal(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub command: Vec<String>,
    pub version: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub wall_clock_s: f64,
    pub checks: Vec<Check>,
    pub passed: bool,
    #[serde(flatten)]
    pub payload: serde_json::Map<String, Value>,
}

/// What a run wrote and how it exits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub exit_code: i32,
}

enum Body {
    Json {
        seed: Option<u64>,
        checks: Vec<Check>,
        payload: Value,
    },
    Csv(String),
}

enum Failure {
    Usage(String),
    Runtime(String),
}

fn runtime<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Runtime(e.to_string())
}

fn usage<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Usage(e.to_string())
}

/// Parse and execute `argv` (including the program name).
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let argv: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let rendered = e.render().to_string();
            let code = e.exit_code();
            return if code == 0 {
                Outcome { stdout: rendered, stderr: String::new(), exit_code: 0 }
            } else {
                Outcome { stdout: String::new(), stderr: rendered, exit_code: code }
            };
        }
    };
    let command: Vec<String> = argv
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    execute(&cli, command)
}

pub fn execute(cli: &Cli, command: Vec<String>) -> Outcome {
    let start = Instant::now();
    match dispatch(&cli.command) {
        Ok(Body::Csv(text)) => Outcome { stdout: text, stderr: String::new(), exit_code: 0 },
        Ok(Body::Json { seed, checks, payload }) => {
            let passed = checks.iter().all(|c| c.passed);
            let payload = match payload {
                Value::Object(m) => m,
                other => {
                    let mut m = serde_json::Map::new();
                    m.insert("result".into(), other);
                    m
                }
            };
            let report = Report {
                command,
                version: VERSION,
                seed,
                wall_clock_s: start.elapsed().as_secs_f64(),
                checks,
                passed,
                payload,
            };
            let mut stdout = serde_json::to_string_pretty(&report).expect("report serializes");
            stdout.push('\n');
            Outcome { stdout, stderr: String::new(), exit_code: if passed { 0 } else { 1 } }
        }
        Err(Failure::Usage(msg)) => Outcome {
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
            exit_code: 2,
        },
        Err(Failure::Runtime(msg)) => Outcome {
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
            exit_code: 1,
        },
    }
}

fn dispatch(command: &Command) -> Result<Body, Failure> {
    match command {
        Command::Volumes { n } => volumes(*n as usize),
        Command::Density(args) => density(args),
        Command::Marginal(args) => marginal(args),
        Command::Integrate { emit } => integrate(*emit),
        Command::Sample(SampleCommand::Sep { n, seed, threads, tol }) => {
            let mut cfg = SamplerConfig::new(*seed, *n as usize);
            cfg.threads = threads.map(|t| t as usize);
            cfg.tolerance = *tol;
            let est = estimate_sep_prob(&cfg).map_err(runtime)?;
            Ok(Body::Json {
                seed: Some(*seed),
                checks: vec![],
                payload: json!({
                    "n": est.n,
                    "ppt_count": est.ppt_count,
                    "fraction": est.fraction,
                    "fraction_decimal": decimal(est.fraction),
                    "stderr": est.stderr,
                    "indeterminate": est.indeterminate,
                }),
            })
        }
        Command::Sample(SampleCommand::Conditioned { a, n, burn, thin, seed, chains, threads, tol }) => {
            let mut cfg = SamplerConfig::new(*seed, *n as usize);
            cfg.burn_in = *burn as usize;
            cfg.thinning = *thin as usize;
            cfg.threads = threads.map(|t| t as usize);
            cfg.tolerance = *tol;
            let r = conditioned_estimate(*a, &cfg, *chains as usize).map_err(runtime)?;
            Ok(Body::Json {
                seed: Some(*seed),
                checks: vec![],
                payload: json!({
                    "a": r.a,
                    "n": r.n,
                    "chains": chains,
                    "ppt_count": r.ppt_count,
                    "fraction": r.fraction,
                    "fraction_decimal": decimal(r.fraction),
                    "agreement_halfbound": r.agreement_halfbound,
                    "disagreements": r.disagreements,
                    "band_count": r.band_count,
                    "max_marginal_error": r.max_marginal_error,
                }),
            })
        }
        Command::Verify(VerifyCommand::All { seed, threads, quick }) => {
            let sizes = if *quick {
                McSizes { global: 100_000, conditioned: 10_000, histogram: 100_000, chains: 4 }
            } else {
                McSizes::full()
            };
            let checks = checks::verify_all(*seed, sizes, threads.map(|t| t as usize));
            Ok(Body::Json {
                seed: Some(*seed),
                checks,
                payload: json!({ "sizes": sizes }),
            })
        }
    }
}

fn volumes(n: usize) -> Result<Body, Failure> {
    let t = volume_table(n).map_err(runtime)?;
    Ok(Body::Json {
        seed: None,
        checks: vec![],
        payload: json!({
            "n": t.n,
            "flag_hs": t.flag_hs,
            "flag_euclid": t.flag_euclid,
            "state_space_hs": t.state_space_hs,
            "simplex_integral": t.simplex_integral,
            "decimal": {
                "flag_hs": decimal(t.flag_hs.to_f64()),
                "flag_euclid": decimal(t.flag_euclid.to_f64()),
                "state_space_hs": decimal(t.state_space_hs.to_f64()),
                "simplex_integral": decimal(t.simplex_integral.to_f64()),
            },
        }),
    })
}

fn chamber_of(p: &PiecewiseDensity, r: f64, s: f64) -> ChamberLabel {
    match p.locate(&[r, s]).map(|piece| &piece.support) {
        Some(Support::Chamber(c)) => c.label,
        _ => ChamberLabel::C0,
    }
}

fn label(l: ChamberLabel) -> String {
    format!("{l:?}")
}

fn density(args: &DensityArgs) -> Result<Body, Failure> {
    let closed = convolution_density_closed();
    if args.format == Format::Csv {
        return Ok(Body::Csv(density_csv(&closed, args.grid as usize)));
    }
    if args.check_oracle {
        use rand::Rng;
        let mut rng = stream_rng(args.seed, 0);
        let mut rows = Vec::with_capacity(args.points as usize);
        let mut max_err: f64 = 0.0;
        for _ in 0..args.points {
            let r: f64 = rng.random_range(-5.0..1.0);
            let s: f64 = rng.random_range(-5.0..1.0);
            let exact = closed.eval(&[r, s]);
            let oracle = fiber_polytope_density([r, s]);
            let abs_err = (exact - oracle).abs();
            max_err = max_err.max(abs_err);
            rows.push(json!({
                "chamber": label(chamber_of(&closed, r, s)),
                "point": [r, s],
                "closed_form": exact,
                "oracle": oracle,
                "abs_err": abs_err,
            }));
        }
        let check = Check {
            name: "oracle_agreement".into(),
            passed: max_err <= 1e-9,
            detail: json!({ "max_abs_err": max_err, "tolerance": 1e-9 }),
        };
        return Ok(Body::Json {
            seed: Some(args.seed),
            checks: vec![check],
            payload: json!({ "rows": rows }),
        });
    }
    let jump = convolution_density_jump().map_err(runtime)?;
    let pieces: Vec<Value> = [ChamberLabel::C1, ChamberLabel::C2, ChamberLabel::C3]
        .iter()
        .map(|&l| {
            let poly = closed.piece(l).expect("chamber piece");
            json!({
                "chamber": label(l),
                "poly": poly,
                "display": poly.display_with(&["r", "s"]),
                "jump_formula_agrees": jump.piece(l) == Some(poly),
            })
        })
        .collect();
    let agree = [ChamberLabel::C1, ChamberLabel::C2, ChamberLabel::C3]
        .iter()
        .all(|&l| closed.piece(l) == jump.piece(l));
    Ok(Body::Json {
        seed: None,
        checks: vec![Check {
            name: "jump_formula".into(),
            passed: agree,
            detail: json!({}),
        }],
        payload: json!({ "pieces": pieces }),
    })
}

/// `k × k` grid over `[-5, 1]²`.
pub fn density_csv(p: &PiecewiseDensity, k: usize) -> String {
    let mut out = String::from("r,s,chamber,p\n");
    for i in 0..k {
        let r = -5.0 + 6.0 * i as f64 / (k - 1) as f64;
        for j in 0..k {
            let s = -5.0 + 6.0 * j as f64 / (k - 1) as f64;
            let _ = writeln!(out, "{r},{s},{},{}", label(chamber_of(p, r, s)), p.eval(&[r, s]));
        }
    }
    out
}

fn poly_coeffs(p: &MultiPoly) -> Result<Vec<Rational>, Failure> {
    p.univariate_coeffs().map_err(runtime)
}

fn marginal(args: &MarginalArgs) -> Result<Body, Failure> {
    if args.spectrum.len() != 4 {
        return Err(usage(format!(
            "--spectrum needs 4 eigenvalues, got {}",
            args.spectrum.len()
        )));
    }
    let lam = Spectrum::from_unsorted(args.spectrum.clone()).map_err(usage)?;
    if !lam.is_simple() {
        return Err(usage("--spectrum must have distinct eigenvalues"));
    }
    let centered = lam.centered();
    let density = marginal_density_I(&centered).map_err(runtime)?;
    let c = c_coeffs(&centered).map_err(runtime)?;

    if let Some(samples) = args.samples {
        let h = marginal_histogram(
            &lam,
            samples as usize,
            args.bins as usize,
            args.seed,
            args.threads.map(|t| t as usize),
        )
        .map_err(runtime)?;
        if args.format == Format::Csv {
            let mut out = String::from("bin_lo,bin_hi,count,empirical,analytic\n");
            for b in 0..h.counts.len() {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{}",
                    h.edges[b], h.edges[b + 1], h.counts[b], h.empirical[b], h.analytic[b]
                );
            }
            return Ok(Body::Csv(out));
        }
        return Ok(Body::Json {
            seed: Some(args.seed),
            checks: vec![],
            payload: json!({ "spectrum": lam.entries(), "c": c, "histogram": h }),
        });
    }

    if args.format == Format::Csv {
        return Ok(Body::Csv(marginal_csv(&density, &c.c3, args.grid as usize)));
    }
    let mut pieces = Vec::new();
    for p in &density.pieces {
        if let Support::Interval { lo, hi } = &p.support {
            pieces.push(json!({
                "lo": lo,
                "hi": hi,
                "coefficients": poly_coeffs(&p.poly)?,
                "display": p.poly.display_with(&["x"]),
            }));
        }
    }
    let breakpoints = density.breakpoints();
    let mass = density.integral().map_err(runtime)?;
    Ok(Body::Json {
        seed: None,
        checks: vec![],
        payload: json!({
            "spectrum": lam.entries(),
            "centered": centered.entries(),
            "c": c,
            "breakpoints": breakpoints,
            "breakpoints_decimal": breakpoints.iter().map(|b| decimal(b.to_f64())).collect::<Vec<_>>(),
            "pieces": pieces,
            "mass": mass,
            "mass_decimal": decimal(mass.to_f64()),
        }),
    })
}

/// Uniform grid over `[0, c₃]` merged with the breakpoints.
pub fn marginal_csv(density: &PiecewiseDensity, c3: &Rational, k: usize) -> String {
    let hi = c3.to_f64();
    let mut xs: Vec<f64> = (0..k).map(|i| hi * i as f64 / (k - 1) as f64).collect();
    xs.extend(density.breakpoints().iter().map(Rational::to_f64));
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    let mass = density.integral().map(|m| m.to_f64()).unwrap_or(f64::NAN);
    let mut out = String::from("x,density,normalized\n");
    for x in xs {
        let v = density.eval(&[x]);
        let _ = writeln!(out, "{x},{v},{}", v / mass);
    }
    out
}

fn integrate(emit: Emit) -> Result<Body, Failure> {
    let payload = match emit {
        Emit::M1 | Emit::M2 | Emit::M3 => {
            let k = match emit {
                Emit::M1 => 1,
                Emit::M2 => 2,
                _ => 3,
            };
            let m = compute_M(k).map_err(runtime)?;
            let coeffs = poly_coeffs(&m)?;
            json!({
                "emit": format!("M{k}"),
                "variable": "x",
                "coefficients": coeffs,
                "coefficients_decimal": coeffs.iter().map(|c| decimal(c.to_f64())).collect::<Vec<_>>(),
                "display": m.display_with(&["x"]),
            })
        }
        Emit::F => {
            let f = compute_f().map_err(runtime)?;
            let coeffs = poly_coeffs(&f.poly)?;
            let f0 = f.eval_exact(&Rational::zero()).map_err(runtime)?;
            json!({
                "emit": "f",
                "variable": "a",
                "prefactor": f.prefactor,
                "prefactor_display": f.prefactor.to_string(),
                "coefficients": coeffs,
                "display": f.poly.display_with(&["a"]),
                "f0": f0,
                "f0_display": f0.to_string(),
                "f0_decimal": decimal(f0.to_f64()),
            })
        }
        Emit::Prob => {
            let f = compute_f().map_err(runtime)?;
            let p = probability_from_f(&f).map_err(runtime)?;
            json!({ "prob": p, "prob_decimal": decimal(p.to_f64()) })
        }
    };
    Ok(Body::Json { seed: None, checks: vec![], payload })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Outcome {
        run(std::iter::once("dhsep").chain(args.iter().copied()))
    }

    #[test]
    fn negative_sample_count_is_usage_error() {
        assert_eq!(run_args(&["sample", "sep", "--n", "-5"]).exit_code, 2);
        assert_eq!(run_args(&["sample", "sep", "--n", "0"]).exit_code, 2);
    }

    #[test]
    fn unknown_flag_rejected() {
        assert_eq!(run_args(&["volumes", "--n", "3", "--bogus"]).exit_code, 2);
        assert_eq!(run_args(&["volumes", "--n", "13"]).exit_code, 2);
    }

    #[test]
    fn bad_spectrum_is_usage_error() {
        assert_eq!(run_args(&["marginal", "--spectrum", "1/2,1/2"]).exit_code, 2);
        assert_eq!(run_args(&["marginal", "--spectrum", "0.5,0.3,0.3,0.1"]).exit_code, 2);
        assert_eq!(run_args(&["marginal", "--spectrum", "a,b,c,d"]).exit_code, 2);
        assert_eq!(run_args(&["sample", "conditioned", "--a", "1", "--n", "10"]).exit_code, 2);
    }

    #[test]
    fn volumes_report() {
        let out = run_args(&["volumes", "--n", "2"]);
        assert_eq!(out.exit_code, 0);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["n"], 2);
        assert_eq!(v["simplex_integral"], "1/6");
        assert_eq!(v["command"][0], "volumes");
        assert!(v["decimal"]["flag_hs"].as_str().unwrap().starts_with("6.2831853071795"));
    }

    #[test]
    fn density_grid_shape() {
        let out = run_args(&["density", "--format", "csv", "--grid", "100"]);
        assert_eq!(out.exit_code, 0);
        let lines: Vec<&str> = out.stdout.lines().collect();
        assert_eq!(lines[0], "r,s,chamber,p");
        assert_eq!(lines.len(), 10_001);
        assert!(lines.iter().any(|l| l.contains(",C2,")));
    }

    #[test]
    fn density_oracle_rows() {
        let out = run_args(&["density", "--check-oracle", "--points", "40", "--seed", "3"]);
        assert_eq!(out.exit_code, 0, "{}", out.stdout);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["rows"].as_array().unwrap().len(), 40);
        assert_eq!(v["seed"], 3);
        let row = &v["rows"][0];
        for key in ["chamber", "point", "closed_form", "oracle", "abs_err"] {
            assert!(row.get(key).is_some(), "{key}");
        }
    }

    #[test]
    fn marginal_grid_has_breakpoints() {
        let out = run_args(&["marginal", "--spectrum", "0.45,0.27,0.18,0.10", "--format", "csv"]);
        assert_eq!(out.exit_code, 0, "{}", out.stderr);
        let xs: Vec<f64> = out
            .stdout
            .lines()
            .skip(1)
            .map(|l| l.split(',').next().unwrap().parse().unwrap())
            .collect();
        for b in [0.1, 0.26, 0.44] {
            assert!(xs.iter().any(|x| (x - b).abs() < 1e-15), "{b}");
        }
        assert!((xs.last().unwrap() - 0.44).abs() < 1e-15);
    }

    #[test]
    fn marginal_json_breakpoints() {
        let out = run_args(&["marginal", "--spectrum", "9/20,27/100,9/50,1/10"]);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        let bps: Vec<&str> = v["breakpoints"].as_array().unwrap().iter().map(|b| b.as_str().unwrap()).collect();
        for b in ["1/10", "13/50", "11/25"] {
            assert!(bps.contains(&b), "{b} in {bps:?}");
        }
    }

    #[test]
    fn histogram_csv_columns_align() {
        let out = run_args(&[
            "marginal", "--spectrum", "0.45,0.27,0.18,0.10", "--samples", "2000", "--bins", "10",
            "--format", "csv", "--threads", "1",
        ]);
        assert_eq!(out.exit_code, 0, "{}", out.stderr);
        let lines: Vec<&str> = out.stdout.lines().collect();
        assert_eq!(lines.len(), 11);
        assert!(lines[1..].iter().all(|l| l.split(',').count() == 5));
    }

    #[test]
    fn sample_sep_reproducible() {
        let a = run_args(&["sample", "sep", "--n", "3000", "--seed", "5", "--threads", "1"]);
        let b = run_args(&["sample", "sep", "--n", "3000", "--seed", "5", "--threads", "1"]);
        let (va, vb): (Value, Value) = (
            serde_json::from_str(&a.stdout).unwrap(),
            serde_json::from_str(&b.stdout).unwrap(),
        );
        assert_eq!(va["ppt_count"], vb["ppt_count"]);
        assert_eq!(va["seed"], 5);
    }
}
