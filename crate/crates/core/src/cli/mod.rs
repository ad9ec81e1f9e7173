//! Batch front end: `moments`, `verify` and `tabulate`.
//!
//! Settings come from defaults, then an optional JSON config file, then
//! flags. Every output file is a pure function of the settings, so two runs
//! with the same seed write identical bytes.

mod config;
mod suites;

pub use config::{sample_points, ConfigFile, OutputFormat, Overrides, Preset, RunConfig, WeightSource};
pub use suites::{error_identity, run_suite, Bound, Context, Diagnostic, IdentityCheck, Series, Suite, SuiteReport};

use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::Result;
use crate::io::{fmt_f64, write_csv, write_json};
use crate::weights::trig_moments_capped;
use crate::zeros::zero_diagnostics;

#[derive(Debug, Parser)]
#[command(name = "otp-opuc", version, about = "Orthogonal trigonometric polynomials and OPUC: tables and identity checks")]
pub struct Cli {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    /// JSON config file; flags override its fields.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// JSON weight description, e.g. {"kind": "exp_trig", "p": 1.0, "q": 0.0}.
    #[arg(long, global = true, value_name = "FILE", conflicts_with = "preset")]
    pub weight: Option<PathBuf>,
    #[arg(long, global = true, value_enum, value_name = "NAME")]
    pub preset: Option<Preset>,
    #[arg(long, global = true, value_name = "INT")]
    pub n_max: Option<usize>,
    /// Quadrature convergence tolerance for the moments.
    #[arg(long, global = true, value_name = "FLOAT")]
    pub tol: Option<f64>,
    /// Largest trapezoid node count.
    #[arg(long, global = true, value_name = "INT")]
    pub quad_cap: Option<usize>,
    #[arg(long, global = true, value_name = "INT")]
    pub seed: Option<u64>,
    #[arg(long, global = true, value_name = "DIR")]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<OutputFormat>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write the trigonometric moment table c_0..c_{n_max}.
    Moments,
    /// Run an identity suite and write its report; exits 1 if a contract fails.
    Verify {
        #[arg(value_enum, default_value = "all")]
        suite: Suite,
    },
    /// Write coefficient or zero tables.
    Tabulate {
        #[arg(value_enum)]
        what: Table,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Table {
    Otp,
    Opuc,
    Zeros,
}

impl CommonArgs {
    pub fn to_config(&self) -> Result<RunConfig> {
        let file = self.config.as_deref().map(ConfigFile::read).transpose()?;
        let flags = Overrides {
            weight_file: self.weight.clone(),
            preset: self.preset,
            n_max: self.n_max,
            tol: self.tol,
            quad_node_cap: self.quad_cap,
            sample_seed: self.seed,
            output_dir: self.out.clone(),
            format: self.format,
        };
        RunConfig::merge(file, flags)
    }
}

/// Parses `std::env::args`, runs, and returns the process exit code.
pub fn main() -> i32 {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

/// Exit code 0 on success, 1 when a verification contract fails.
pub fn run(cli: &Cli) -> Result<i32> {
    let cfg = cli.common.to_config()?;
    fs::create_dir_all(&cfg.output_dir)?;
    match &cli.command {
        Command::Moments => cmd_moments(&cfg).map(|_| 0),
        Command::Verify { suite } => cmd_verify(&cfg, *suite),
        Command::Tabulate { what } => cmd_tabulate(&cfg, *what).map(|_| 0),
    }
}

#[derive(Serialize)]
struct MomentRow {
    k: i64,
    re_c: f64,
    im_c: f64,
}

#[derive(Serialize)]
struct MomentReport {
    weight: String,
    n_max: usize,
    moments: Vec<MomentRow>,
}

/// Writes `moments.csv` or `moments.json` and returns its path.
pub fn cmd_moments(cfg: &RunConfig) -> Result<PathBuf> {
    let spec = cfg.weight.resolve()?;
    let table = trig_moments_capped(&spec, cfg.n_max, cfg.tol, cfg.quad_node_cap)?;
    match cfg.format {
        OutputFormat::Csv => {
            let path = cfg.output_dir.join("moments.csv");
            table.write_csv(&path)?;
            Ok(path)
        }
        OutputFormat::Json => {
            let path = cfg.output_dir.join("moments.json");
            let n = cfg.n_max as i64;
            let moments = (-n..=n)
                .map(|k| {
                    let c = table.get_or_zero(k);
                    MomentRow { k, re_c: c.re, im_c: c.im }
                })
                .collect();
            write_json(&path, &MomentReport { weight: cfg.weight.label(), n_max: cfg.n_max, moments })?;
            Ok(path)
        }
    }
}

/// Runs a suite, writes `verify_<suite>.json` plus its CSV series, and
/// returns 1 with the failing identities on stderr if any contract fails.
pub fn cmd_verify(cfg: &RunConfig, suite: Suite) -> Result<i32> {
    let ctx = Context::new(cfg)?;
    let report = match run_suite(&ctx, suite) {
        Ok(r) => r,
        Err(e) => match error_identity(&e) {
            Some(name) => {
                eprintln!("FAIL {}: {name}: {e}", suite.name());
                return Ok(1);
            }
            None => return Err(e),
        },
    };
    write_verify_outputs(cfg, &report)?;
    for c in &report.identities {
        let status = if c.passed { "PASS" } else { "FAIL" };
        let op = match c.bound {
            Bound::AtMost => "<=",
            Bound::AtLeast => ">=",
        };
        println!("{status} {} {} {op} {}", c.name, fmt_f64(c.value), fmt_f64(c.tolerance));
    }
    if report.passed {
        Ok(0)
    } else {
        eprintln!("failing identities: {}", report.failures().join(", "));
        Ok(1)
    }
}

fn write_verify_outputs(cfg: &RunConfig, report: &SuiteReport) -> Result<()> {
    let stem = format!("verify_{}", report.suite.name());
    write_json(&cfg.output_dir.join(format!("{stem}.json")), report)?;
    if cfg.format == OutputFormat::Csv {
        let rows: Vec<Vec<String>> = report
            .identities
            .iter()
            .map(|c| {
                let bound = match c.bound {
                    Bound::AtMost => "at_most",
                    Bound::AtLeast => "at_least",
                };
                vec![c.name.clone(), fmt_f64(c.value), fmt_f64(c.tolerance), bound.into(), c.passed.to_string()]
            })
            .collect();
        write_csv(&cfg.output_dir.join(format!("{stem}.csv")), &["identity", "value", "tolerance", "bound", "passed"], &rows)?;
    }
    for s in &report.series {
        write_csv(&cfg.output_dir.join(format!("{}_{}.csv", stem, s.name)), &s.header, &s.rows)?;
    }
    Ok(())
}

/// Writes the requested table and returns the paths written.
pub fn cmd_tabulate(cfg: &RunConfig, what: Table) -> Result<Vec<PathBuf>> {
    let ctx = Context::new(cfg)?;
    let n_max = cfg.n_max;
    let f = fmt_f64;
    let mut written = Vec::new();
    let mut emit = |name: &str, header: &[&str], rows: Vec<Vec<String>>| -> Result<()> {
        let path = match cfg.format {
            OutputFormat::Csv => {
                let p = cfg.output_dir.join(format!("{name}.csv"));
                write_csv(&p, header, &rows)?;
                p
            }
            OutputFormat::Json => {
                let p = cfg.output_dir.join(format!("{name}.json"));
                let records: Vec<serde_json::Map<String, serde_json::Value>> = rows
                    .iter()
                    .map(|r| {
                        header
                            .iter()
                            .zip(r)
                            .map(|(h, v)| ((*h).to_string(), json_field(v)))
                            .collect()
                    })
                    .collect();
                write_json(&p, &records)?;
                p
            }
        };
        written.push(path);
        Ok(())
    };
    match what {
        Table::Otp => {
            let mut scalars = Vec::new();
            let mut coeffs = Vec::new();
            for n in 1..=n_max {
                let (a, b, beta) = ctx.otp.level_scalars(n)?;
                scalars.push(vec![n.to_string(), f(a), f(b), f(beta)]);
                for (name, p) in [("sigma", ctx.otp.even(n)?.clone()), ("pi", ctx.otp.odd(n)?)] {
                    for (k, c) in p.terms() {
                        coeffs.push(vec![name.to_string(), n.to_string(), k.to_string(), f(c.re), f(c.im)]);
                    }
                }
            }
            emit("otp_scalars", &["n", "a", "b", "beta"], scalars)?;
            emit("otp_coefficients", &["polynomial", "n", "k", "re", "im"], coeffs)?;
        }
        Table::Opuc => {
            let n = 2 * n_max;
            let mut rows = Vec::new();
            for k in 0..n {
                let a = ctx.opuc.alpha(k)?;
                rows.push(vec![
                    k.to_string(),
                    f(a.re),
                    f(a.im),
                    f(a.norm()),
                    (a.norm() < 1.0).to_string(),
                    f(ctx.opuc.kappa(k)?),
                ]);
            }
            emit("opuc_verblunsky", &["n", "re_alpha", "im_alpha", "abs_alpha", "inside_disk", "kappa"], rows)?;
        }
        Table::Zeros => {
            let mut rows = Vec::new();
            for n in 1..=n_max {
                let d = zero_diagnostics(&ctx.otp, n)?;
                for (name, set) in [("sigma", &d.sigma), ("pi", &d.pi)] {
                    for (j, angle, residual) in set.rows() {
                        rows.push(vec![name.to_string(), n.to_string(), j.to_string(), f(angle), f(residual)]);
                    }
                }
            }
            emit("zeros", &["polynomial", "n", "j", "angle", "residual"], rows)?;
        }
    }
    Ok(written)
}

/// Numbers stay numbers in JSON tables; everything else is a string.
fn json_field(v: &str) -> serde_json::Value {
    if let Ok(i) = v.parse::<i64>() {
        return i.into();
    }
    match v {
        "true" => return true.into(),
        "false" => return false.into(),
        _ => {}
    }
    match v.parse::<f64>() {
        Ok(x) if x.is_finite() => serde_json::Number::from_f64(x).map_or_else(|| v.into(), serde_json::Value::Number),
        _ => v.into(),
    }
}
