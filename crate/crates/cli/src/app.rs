//! Argument definitions and dispatch.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use relaxwave::grid::Grid2;
use relaxwave::hirota::{bilinear_residual, AlphaVariant};
use relaxwave::verify::manufactured::manufactured_selftest;
use relaxwave::verify::physical::eq11_residual_physical;
use relaxwave::verify::{eq14_residual, system19_residual, system_eqq11_residual};
use relaxwave::{alpha_critical, classify, profile, solve_complex_omega, solve_real, ComplexWave, DerivativeMethod, Error};
use serde_json::json;

use crate::config::Config;
use crate::figure::{self, AlphaSpec, FigureSpec, CLASSIFY_TOL};
use crate::output::{csv, emit, json};
use crate::report::{run_report, ReportConfig};
use crate::simulate::{simulate, System};

#[derive(Debug, Parser)]
#[command(name = "relaxwave", version, about = "Traveling waves in dissipative relaxing media")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output file, or directory for commands that write several files.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Output format; each command documents which formats it accepts.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Seed for randomized sampling.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Suppress informational messages on stderr.
    #[arg(long, global = true)]
    pub quiet: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Svg,
    Text,
}

#[derive(Debug, Args)]
pub struct WaveArgs {
    /// Velocity, |v| < 1.
    #[arg(long, allow_negative_numbers = true)]
    pub v: f64,
    /// Dissipative parameter, >= 0.
    #[arg(long)]
    pub alpha: f64,
    /// Phase shift.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub theta0: f64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve the dispersion relation: real (--v) or complex (--k-re/--k-im).
    Dispersion {
        #[arg(long, allow_negative_numbers = true)]
        v: Option<f64>,
        #[arg(long)]
        alpha: f64,
        #[arg(long, allow_negative_numbers = true, requires = "k_im")]
        k_re: Option<f64>,
        #[arg(long, allow_negative_numbers = true, requires = "k_re")]
        k_im: Option<f64>,
    },
    /// Critical dissipative parameter separating loops from kinks.
    CriticalAlpha {
        #[arg(long)]
        v: f64,
    },
    /// Parametric profile of the one-soliton as CSV.
    SolitonProfile {
        #[command(flatten)]
        wave: WaveArgs,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        tau: f64,
        #[arg(long, default_value_t = -20.0, allow_negative_numbers = true)]
        sigma_min: f64,
        #[arg(long, default_value_t = 20.0, allow_negative_numbers = true)]
        sigma_max: f64,
        #[arg(short, long, default_value_t = 801)]
        n: usize,
        /// Gauge constant in y = -Z + C.
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        c: f64,
    },
    /// Loop / cusp / kink classification as JSON.
    Classify {
        #[arg(long)]
        v: f64,
        #[arg(long)]
        alpha: f64,
        #[arg(long, default_value_t = CLASSIFY_TOL)]
        tol: f64,
    },
    /// Residuals of the bilinear form for the one-soliton tau pair.
    Bilinear {
        #[command(flatten)]
        wave: WaveArgs,
        #[arg(long, value_enum, default_value_t = VariantArg::Both)]
        variant: VariantArg,
        #[arg(long, default_value_t = 10.0)]
        extent: f64,
        #[arg(short, long, default_value_t = 101)]
        n: usize,
    },
    /// Residual of an exact solution in one of the model systems.
    Verify {
        /// 19, eqq11, 14 or 11.
        #[arg(long, default_value = "19")]
        system: String,
        /// analytic, fd2 or fd4.
        #[arg(long, default_value = "analytic")]
        method: String,
        #[arg(long, allow_negative_numbers = true)]
        v: Option<f64>,
        #[arg(long, default_value_t = 0.0)]
        alpha: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        theta0: f64,
        /// Complex wave number for eqq11.
        #[arg(long, allow_negative_numbers = true)]
        k_re: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        k_im: Option<f64>,
        #[arg(long, default_value_t = 15.0)]
        extent: f64,
        #[arg(short, long, default_value_t = 301)]
        n: usize,
        /// Run the manufactured-solution self-test instead.
        #[arg(long)]
        selftest: bool,
    },
    /// Time integration of system 19 or the mKdV-Burgers equation.
    Simulate {
        /// 19 or mkdvb.
        #[arg(long)]
        system: System,
        /// Flat key = value file; defaults apply when omitted.
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Datasets for the u(y) and pi(y) panels at one velocity.
    Figure {
        #[arg(long, default_value_t = 0.24)]
        v: f64,
        /// Comma-separated alphas; `critical` stands for the critical value.
        #[arg(long, value_delimiter = ',', default_value = "critical,0.1,0.8")]
        alphas: Vec<String>,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        tau: f64,
        #[arg(long, default_value_t = -20.0, allow_negative_numbers = true)]
        sigma_min: f64,
        #[arg(long, default_value_t = 20.0, allow_negative_numbers = true)]
        sigma_max: f64,
        #[arg(short, long, default_value_t = 801)]
        n: usize,
    },
    /// Consolidated JSON report (dispersion, classification, bilinear, verify).
    RunReport {
        #[arg(long)]
        config: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Both,
    Squared,
    Linear,
}

impl VariantArg {
    fn variants(self) -> Vec<AlphaVariant> {
        match self {
            Self::Both => vec![AlphaVariant::SquaredAlpha, AlphaVariant::LinearAlpha],
            Self::Squared => vec![AlphaVariant::SquaredAlpha],
            Self::Linear => vec![AlphaVariant::LinearAlpha],
        }
    }
}

fn method(s: &str) -> Result<DerivativeMethod> {
    DerivativeMethod::parse(s)
        .ok_or_else(|| Error::InvalidParameter(format!("method must be analytic, fd2 or fd4, got `{s}`")).into())
}

fn load_config(path: Option<&Path>) -> Result<Config> {
    match path {
        Some(p) => Config::load(p),
        None => Ok(Config::default()),
    }
}

fn accept(format: Option<Format>, allowed: &[Format], default: Format) -> Result<Format> {
    let f = format.unwrap_or(default);
    if !allowed.contains(&f) {
        bail!(Error::InvalidParameter(format!("format {f:?} not supported here (use one of {allowed:?})")));
    }
    Ok(f)
}

fn info(cli: &Cli, msg: impl AsRef<str>) {
    if !cli.quiet {
        eprintln!("{}", msg.as_ref());
    }
}

/// Runs one parsed invocation. Returns the exit code for runs that complete
/// but report failures (run-report with errored entries).
pub fn execute(cli: &Cli) -> Result<i32> {
    let out = cli.out.as_deref();
    match &cli.command {
        Command::Dispersion { v, alpha, k_re, k_im } => {
            accept(cli.format, &[Format::Json], Format::Json)?;
            let doc = match (v, k_re, k_im) {
                (_, Some(re), Some(im)) => {
                    let k = Complex64::new(*re, *im);
                    let cw = ComplexWave::new(k, *alpha);
                    let roots = solve_complex_omega(k, *alpha);
                    json!({
                        "k": [re, im],
                        "alpha": alpha,
                        "omega_roots": roots.iter().map(|r| [r.re, r.im]).collect::<Vec<_>>(),
                        "omega": [cw.omega.re, cw.omega.im],
                        "residuals": roots.iter().map(|r| {
                            relaxwave::dispersion::complex_dispersion_residual(k, *r, *alpha).norm()
                        }).collect::<Vec<_>>(),
                    })
                }
                (Some(v), None, None) => {
                    let w = solve_real(*v, *alpha)?;
                    json!({
                        "v": w.v, "alpha": w.alpha, "k": w.k, "omega": w.omega,
                        "residual": w.residual(), "singularity_measure": w.singularity_measure(),
                    })
                }
                _ => bail!(Error::InvalidParameter("give --v, or both --k-re and --k-im".into())),
            };
            emit(out, &json(&doc)?)?;
        }
        Command::CriticalAlpha { v } => {
            let f = accept(cli.format, &[Format::Json, Format::Text], Format::Text)?;
            let a = alpha_critical(*v)?;
            let s = if f == Format::Text { format!("{}\n", crate::output::num(a)) } else { json(&json!({ "v": v, "alpha_critical": a }))? };
            emit(out, &s)?;
        }
        Command::SolitonProfile { wave, tau, sigma_min, sigma_max, n, c } => {
            let f = accept(cli.format, &[Format::Csv, Format::Json], Format::Csv)?;
            let w = solve_real(wave.v, wave.alpha)?.with_theta0(wave.theta0);
            let p = profile(&w, *tau, *sigma_min, *sigma_max, *n, *c)?;
            let s = if f == Format::Csv {
                csv(
                    &["sigma", "theta", "u", "Z", "y", "pi", "dZdsigma"],
                    p.rows.iter().map(|r| vec![r.sigma, r.theta, r.u, r.z, r.y, r.pi, r.dz_dsigma]),
                )
            } else {
                json(&p)?
            };
            emit(out, &s)?;
        }
        Command::Classify { v, alpha, tol } => {
            accept(cli.format, &[Format::Json], Format::Json)?;
            let w = solve_real(*v, *alpha)?;
            emit(out, &json(&classify(&w, *tol)?)?)?;
        }
        Command::Bilinear { wave, variant, extent, n } => {
            accept(cli.format, &[Format::Json], Format::Json)?;
            let w = solve_real(wave.v, wave.alpha)?.with_theta0(wave.theta0);
            let g = Grid2::square(-extent, *extent, *n);
            let reports = variant.variants().into_iter().map(|var| bilinear_residual(&w, var, &g)).collect::<relaxwave::Result<Vec<_>>>()?;
            emit(out, &json(&reports)?)?;
        }
        Command::Verify { system, method: m, v, alpha, theta0, k_re, k_im, extent, n, selftest } => {
            accept(cli.format, &[Format::Json], Format::Json)?;
            if *selftest {
                let r = manufactured_selftest();
                emit(out, &json(&r)?)?;
                return Ok(if r.passed { 0 } else { 3 });
            }
            let m = method(m)?;
            let g = Grid2::square(-extent, *extent, *n);
            let need_v = || v.ok_or_else(|| Error::InvalidParameter(format!("--v is required for system {system}")));
            let report = match system.as_str() {
                "19" => system19_residual(&solve_real(need_v()?, *alpha)?.with_theta0(*theta0), &g, m)?,
                "14" => eq14_residual(&solve_real(need_v()?, *alpha)?.with_theta0(*theta0), &g, m)?,
                "eqq11" => {
                    let (Some(re), Some(im)) = (k_re, k_im) else {
                        bail!(Error::InvalidParameter("system eqq11 needs --k-re and --k-im".into()));
                    };
                    let mut cw = ComplexWave::new(Complex64::new(*re, *im), *alpha);
                    cw.theta0 = Complex64::new(*theta0, 0.0);
                    system_eqq11_residual(&cw, &g, m)?
                }
                "11" => {
                    let w = solve_real(need_v()?, *alpha)?.with_theta0(*theta0);
                    let samples = profile(&w, 0.0, -extent, *extent, *n, 0.0)?;
                    eq11_residual_physical(&samples, *alpha)?
                }
                other => bail!(Error::InvalidParameter(format!("system must be 19, eqq11, 14 or 11, got `{other}`"))),
            };
            emit(out, &json(&report)?)?;
        }
        Command::Simulate { system, config } => {
            accept(cli.format, &[Format::Csv], Format::Csv)?;
            let dir = out.context("simulate needs --out <dir>")
                .map_err(|e| anyhow::Error::new(Error::InvalidParameter(e.to_string())))?;
            let cfg = load_config(config.as_deref())?;
            simulate(*system, &cfg, cli.seed, dir)?;
            info(cli, format!("wrote {}", dir.join("manifest.json").display()));
        }
        Command::Figure { v, alphas, tau, sigma_min, sigma_max, n } => {
            let f = accept(cli.format, &[Format::Csv, Format::Svg], Format::Csv)?;
            let spec = FigureSpec {
                v: *v,
                alphas: alphas.iter().map(|a| AlphaSpec::parse(a)).collect::<Result<_>>()?,
                tau: *tau,
                sigma_min: *sigma_min,
                sigma_max: *sigma_max,
                n: *n,
                svg: f == Format::Svg,
            };
            let dir = out.unwrap_or(Path::new("figure"));
            let data = figure::write(&spec, dir)?;
            for d in data.iter().step_by(2) {
                info(cli, format!("alpha = {}: {:?}", d.alpha, d.classification.shape));
            }
            info(cli, format!("wrote {} datasets to {}", data.len(), dir.display()));
        }
        Command::RunReport { config } => {
            accept(cli.format, &[Format::Json], Format::Json)?;
            let cfg = ReportConfig::from_config(&load_config(config.as_deref())?)?;
            let r = run_report(&cfg, cli.seed)?;
            emit(out, &json(&r)?)?;
            if r.has_errors() {
                info(cli, "some entries failed; see their `error` fields");
                return Ok(2);
            }
        }
    }
    Ok(0)
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;
pub const EXIT_IO: i32 = 4;

/// Maps an error chain to the documented exit code.
pub fn exit_code(err: &anyhow::Error) -> i32 {
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<Error>() {
            return match e {
                Error::NumericalAbort { .. } => EXIT_NUMERICAL,
                _ => EXIT_DOMAIN,
            };
        }
        if cause.downcast_ref::<std::io::Error>().is_some() {
            return EXIT_IO;
        }
    }
    EXIT_DOMAIN
}
