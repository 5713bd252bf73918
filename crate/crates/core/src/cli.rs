//! The `bks` command line.
//!
//! Exit codes: 0 success, 2 usage, 3 unreadable or malformed input,
//! 4 a check failed, 5 internal error. When `BKS_REPORT_DIR` is set every
//! run writes `<dir>/<command>.json` with the resolved configuration, the
//! output, and for `verify` the per-check status and timings.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use clap::{Parser, Subcommand};
use num_complex::Complex64;
use num_rational::BigRational;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::geometry::{Place, SymplecticMatrix};
use crate::schwartz::{self, CoefficientFunction};
use crate::suite::{self, CheckResult, Status};
use crate::weyl::{self, WeylCosetDatum};

pub const REPORT_DIR_ENV: &str = "BKS_REPORT_DIR";

#[derive(Parser, Debug)]
#[command(name = "bks", version, about = "Spherical harmonic analysis on [P,P]\\Sp_2n")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print d(s, chi), or a_w(s, chi) for a coset, and its symbol in U.
    Lfactors {
        #[arg(long)]
        n: usize,
        /// Comma-separated subset of 1..=n, e.g. 1,3.
        #[arg(long, value_delimiter = ',')]
        coset: Option<Vec<usize>>,
    },
    /// Coefficients c_0..=c_upto of the basic function as a finite file.
    Basic {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        upto: i64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fourier transform of a function file.
    Fourier {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Also print coefficients up to this index.
        #[arg(long)]
        expand: Option<i64>,
    },
    /// Norm and coset index of a symplectic matrix (JSON array of rows of rational strings).
    Norm {
        /// A prime, or `inf`.
        #[arg(long, value_parser = parse_place)]
        p: Place,
        #[arg(long)]
        matrix: PathBuf,
    },
    #[command(subcommand)]
    Verify(Verify),
}

#[derive(Subcommand, Debug)]
pub enum Verify {
    /// Exact symbolic suite at rank n.
    Local {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 25)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Rank-one shell sum against c_w({1}); the full grid without --q/--z/--s.
    RankOne {
        #[arg(long)]
        q: Option<f64>,
        #[arg(long, value_parser = parse_unit, allow_hyphen_values = true)]
        z: Option<Complex64>,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        s: Option<Complex64>,
        #[arg(long, default_value_t = crate::oracles::GRID_SHELLS)]
        shells: u32,
    },
    /// Fourier transform of the shifted basic family against the plane pattern.
    Classical {
        #[arg(long, allow_hyphen_values = true)]
        c: Option<i64>,
    },
    /// Norm invariance and Plücker equivariance on random samples.
    Geometry {
        #[arg(long, default_value_t = 3)]
        max_n: usize,
        #[arg(long, default_value_t = 500)]
        samples: usize,
        #[arg(long, default_value_t = 200)]
        equivariance: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Support floor of F(1_0) and the growth bound for b.
    Growth {
        #[arg(long)]
        n: Option<usize>,
    },
    /// Poisson summation for n = 1 over Q.
    Global {
        #[arg(long, value_parser = parse_real)]
        lambda: f64,
        #[arg(long, default_value_t = 10.0)]
        radius: f64,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

fn parse_place(s: &str) -> std::result::Result<Place, String> {
    if s == "inf" {
        return Ok(Place::Infinite);
    }
    let p: u64 = s.parse().map_err(|_| format!("expected a prime or `inf`, got `{s}`"))?;
    if crate::geometry::is_prime(p) {
        Ok(Place::Finite(p))
    } else {
        Err(format!("{p} is not prime"))
    }
}

fn parse_unit(s: &str) -> std::result::Result<Complex64, String> {
    match s {
        "1" => Ok(Complex64::new(1.0, 0.0)),
        "-1" => Ok(Complex64::new(-1.0, 0.0)),
        "i" => Ok(Complex64::new(0.0, 1.0)),
        "-i" => Ok(Complex64::new(0.0, -1.0)),
        _ => Err(format!("expected one of 1, -1, i, -i, got `{s}`")),
    }
}

fn parse_complex(s: &str) -> std::result::Result<Complex64, String> {
    let (re, im) = s.split_once(',').ok_or_else(|| format!("expected RE,IM, got `{s}`"))?;
    let f = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("`{t}`: {e}"));
    Ok(Complex64::new(f(re)?, f(im)?))
}

/// A decimal or a fraction `a/b`.
fn parse_real(s: &str) -> std::result::Result<f64, String> {
    if let Some((a, b)) = s.split_once('/') {
        let a: f64 = a.trim().parse().map_err(|e| format!("`{a}`: {e}"))?;
        let b: f64 = b.trim().parse().map_err(|e| format!("`{b}`: {e}"))?;
        Ok(a / b)
    } else {
        s.trim().parse().map_err(|e| format!("`{s}`: {e}"))
    }
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct Report {
    command: String,
    config: Value,
    passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    output: Option<Value>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    checks: Vec<CheckResult>,
    elapsed_ms: f64,
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| std::io::Error::new(e.kind(), format!("{}: {e}", path.display())).into())
}

fn write(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text)
        .map_err(|e| std::io::Error::new(e.kind(), format!("{}: {e}", path.display())).into())
}

/// Rows of rational strings.
pub fn parse_matrix(text: &str) -> Result<SymplecticMatrix> {
    let rows: Vec<Vec<String>> = serde_json::from_str(text)?;
    let mut out = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let mut r = Vec::with_capacity(row.len());
        for (j, x) in row.iter().enumerate() {
            let v = BigRational::from_str(x.trim())
                .map_err(|e| Error::schema(format!("[{i}][{j}]"), format!("`{x}`: {e}")))?;
            r.push(v);
        }
        out.push(r);
    }
    SymplecticMatrix::new(out)
}

pub fn parse_function_file(path: &Path) -> Result<CoefficientFunction> {
    CoefficientFunction::from_json(&read(path)?)
}

struct Outcome {
    command: String,
    config: Value,
    output: Option<Value>,
    checks: Vec<CheckResult>,
    json_out: Option<PathBuf>,
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Lfactors { .. } => "lfactors",
        Command::Basic { .. } => "basic",
        Command::Fourier { .. } => "fourier",
        Command::Norm { .. } => "norm",
        Command::Verify(v) => match v {
            Verify::Local { .. } => "verify-local",
            Verify::RankOne { .. } => "verify-rank-one",
            Verify::Classical { .. } => "verify-classical",
            Verify::Geometry { .. } => "verify-geometry",
            Verify::Growth { .. } => "verify-growth",
            Verify::Global { .. } => "verify-global",
        },
    }
}

fn execute(cmd: Command, out: &mut dyn Write) -> Result<Outcome> {
    let command = command_name(&cmd).to_string();
    let mut outcome = Outcome {
        command,
        config: Value::Null,
        output: None,
        checks: Vec::new(),
        json_out: None,
    };
    let io = |e: std::io::Error| Error::Io(e);
    match cmd {
        Command::Lfactors { n, coset } => {
            let product = match &coset {
                Some(c) => weyl::a_w(&WeylCosetDatum::new(n, c.clone())?)?,
                None => {
                    WeylCosetDatum::identity(n)?;
                    weyl::d_factor(n)
                }
            };
            let symbol = product.symbol(n).to_string();
            writeln!(out, "{product}").map_err(io)?;
            writeln!(out, "{symbol}").map_err(io)?;
            outcome.config = json!({"n": n, "coset": coset});
            outcome.output = Some(json!({"product": product.to_string(), "symbol": symbol}));
        }
        Command::Basic { n, upto, out: path } => {
            let f = schwartz::basic_truncation(n, upto)?;
            let text = f.to_json();
            match &path {
                Some(p) => write(p, &text)?,
                None => write!(out, "{text}").map_err(io)?,
            }
            outcome.config = json!({"n": n, "upto": upto, "out": path});
        }
        Command::Fourier { input, out: path, expand } => {
            let f = parse_function_file(&input)?;
            let g = schwartz::fourier(&f)?;
            write(&path, &g.to_json())?;
            if let Some(k) = expand {
                for (m, c) in suite::coefficient_strings(&g, k)? {
                    writeln!(out, "c[{m}] = {c}").map_err(io)?;
                }
            }
            outcome.config = json!({"in": input, "out": path, "expand": expand});
            outcome.output = Some(json!({"floor": g.support_floor(), "symbol": g.mellin().to_string()}));
        }
        Command::Norm { p, matrix } => {
            let g = parse_matrix(&read(&matrix)?)?;
            let (value, index) = suite::norm_summary(&g, p)?;
            writeln!(out, "norm = {value}").map_err(io)?;
            if let Some(c) = index {
                writeln!(out, "coset_index = {c}").map_err(io)?;
            }
            outcome.config = json!({"p": p.to_string(), "matrix": matrix});
            outcome.output = Some(json!({"norm": value, "cosetIndex": index}));
        }
        Command::Verify(v) => {
            let checks = match v {
                Verify::Local { n, samples, seed } => {
                    outcome.config = json!({"n": n, "samples": samples, "seed": seed});
                    suite::local(n, samples, seed)?
                }
                Verify::RankOne { q, z, s, shells } => {
                    outcome.config = json!({
                        "q": q, "z": z.map(|z| [z.re, z.im]), "s": s.map(|s| [s.re, s.im]), "shells": shells
                    });
                    match (q, z, s) {
                        (None, None, None) => suite::rank_one_grid(),
                        (Some(q), Some(z), Some(s)) => suite::rank_one_point(q, z, s, shells),
                        _ => return Err(Error::Domain("--q, --z and --s go together".into())),
                    }
                }
                Verify::Classical { c } => {
                    let cs: Vec<i64> = c.map_or_else(|| (-3..=3).collect(), |c| vec![c]);
                    outcome.config = json!({"c": cs});
                    suite::classical(cs)
                }
                Verify::Geometry { max_n, samples, equivariance, seed } => {
                    outcome.config = json!({
                        "maxN": max_n, "primes": suite::GEOMETRY_PRIMES, "samples": samples,
                        "equivariance": equivariance, "seed": seed
                    });
                    suite::geometry_checks(max_n, samples, equivariance, seed)?
                }
                Verify::Growth { n } => {
                    let ns: Vec<usize> = n.map_or_else(|| (1..=4).collect(), |n| vec![n]);
                    outcome.config = json!({"n": ns});
                    let mut all = Vec::new();
                    for n in ns {
                        all.extend(suite::growth(n)?);
                    }
                    all
                }
                Verify::Global { lambda, radius, tol, json } => {
                    outcome.config = json!({"lambda": lambda, "radius": radius, "tol": tol, "json": json});
                    outcome.json_out = json;
                    suite::global(lambda, radius, tol)
                }
            };
            outcome.checks = suite::run_checks(&checks);
            for c in &outcome.checks {
                let tag = match c.status {
                    Status::Pass => "PASS",
                    Status::Fail => "FAIL",
                    Status::Error => "ERROR",
                };
                match &c.error {
                    Some(e) => writeln!(out, "{tag} {}: {e}", c.name),
                    None => writeln!(out, "{tag} {}", c.name),
                }
                .map_err(io)?;
            }
        }
    }
    Ok(outcome)
}

fn exit_code_of(checks: &[CheckResult]) -> i32 {
    checks.iter().map(|c| c.exit_code).max().unwrap_or(0)
}

/// Parse `args` (including the program name), run, and return the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    let start = Instant::now();
    let outcome = match execute(cli.command, out) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return e.exit_code();
        }
    };
    let code = exit_code_of(&outcome.checks);
    let report = Report {
        command: outcome.command,
        config: outcome.config,
        passed: code == 0,
        output: outcome.output,
        checks: outcome.checks,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    };
    let mut targets: Vec<PathBuf> = outcome.json_out.into_iter().collect();
    if let Some(dir) = std::env::var_os(REPORT_DIR_ENV) {
        targets.push(Path::new(&dir).join(format!("{}.json", report.command)));
    }
    if !targets.is_empty() {
        let text = match serde_json::to_string_pretty(&report) {
            Ok(t) => t + "\n",
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                return 5;
            }
        };
        for t in targets {
            if let Err(e) = write(&t, &text) {
                let _ = writeln!(err, "error: {e}");
                return 5;
            }
        }
    }
    code
}
