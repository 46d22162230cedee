//! Command-line front end for the `grauert` library.
//!
//! Subcommands:
//!
//! * `profiles` — radial profile table (u, v, eta, and the three
//!   curvature profiles) over a log grid of squared radii.
//! * `claims` — run the audited claim registry; exit 0 iff all pass.
//! * `scan` — extremal holomorphic sectional curvature estimates at one
//!   sampled point per requested squared radius.
//! * `flow` — trace a leaf of the diagonal field through a sampled base
//!   point, reporting position, leaf density, and leafwise curvature.
//!
//! Output is CSV (default) or JSON on standard output unless `--out` is
//! given. Identical configuration and seed produce byte-identical
//! output. Exit codes: 0 success, 1 claim failure, 2 usage error,
//! 3 numeric failure.

mod output;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use grauert::claims::{self, ClaimStatus};
use grauert::curvature::{DEFAULT_FD_STEP, DEFAULT_REFINE_ITERS, DEFAULT_SAMPLES};
use grauert::geometry::{embed_in_slice, norm_sq, sample_s, Cx, DiagonalField, MetricKind};
use grauert::radial::DEFAULT_QUAD_TOL;
use grauert::tables;
use grauert::{Error, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(
    name = "grauert",
    version,
    about = "Profile tables, curvature scans, leaf traces, and claim checks \
             for a complete metric on punctured complex space"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Base dimension: number of coordinates carrying the diagonal field.
    #[arg(long, global = true, default_value_t = 2)]
    n: usize,

    /// Ambient dimension for slice and ball constructions.
    #[arg(long = "N", global = true, default_value_t = 2)]
    n_ambient: usize,

    /// Field exponent on the last base coordinate (must be negative).
    #[arg(long, global = true, default_value_t = -1.0, allow_hyphen_values = true)]
    alpha: f64,

    /// Slice point as comma-separated re,im pairs, 2N numbers in total;
    /// the first 2n must be zero. Defaults to the origin.
    #[arg(long, global = true, value_delimiter = ',', allow_hyphen_values = true)]
    w: Option<Vec<f64>>,

    /// Lower end of the row grid: squared radius for `profiles`
    /// (default 1e-2), leaf parameter for `flow` (default -1).
    #[arg(long, global = true, allow_hyphen_values = true)]
    t_min: Option<f64>,

    /// Upper end of the row grid: squared radius for `profiles`
    /// (default 1e2), leaf parameter for `flow` (default 1).
    #[arg(long, global = true, allow_hyphen_values = true)]
    t_max: Option<f64>,

    /// Number of grid rows (default 50).
    #[arg(long, global = true)]
    steps: Option<usize>,

    /// Comma-separated squared radii: scan locations for `scan`, and the
    /// first entry places the `flow` base point. Default "1".
    #[arg(long, global = true, value_delimiter = ',')]
    radius_list: Option<Vec<f64>>,

    /// Seed for every random draw.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,

    /// Quadrature tolerance.
    #[arg(long, global = true, default_value_t = DEFAULT_QUAD_TOL)]
    tol: f64,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    /// Output path; standard output when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Metric used by `scan` and `flow`: the complete metric on
    /// punctured n-space, or the ball-complement metric around the
    /// slice through w.
    #[arg(long, global = true, value_enum, default_value_t = Metric::Grauert)]
    metric: Metric,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
enum Command {
    /// Emit the radial profile table over a log grid of squared radii.
    Profiles,
    /// Run the audited claim registry and report pass/fail per claim.
    Claims,
    /// Estimate extremal sectional curvatures at sampled points.
    Scan,
    /// Trace a leaf of the diagonal field through a sampled base point.
    Flow,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Profiles => "profiles",
            Command::Claims => "claims",
            Command::Scan => "scan",
            Command::Flow => "flow",
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Csv,
    Json,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Metric {
    Grauert,
    Ball,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}

/// Map library failures onto the exit-code contract: malformed input is
/// a usage error (2), everything else a numeric failure (3). Claim
/// failures (1) never surface as `Err`.
fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Domain(_) => 2,
        Error::Quadrature { .. } | Error::Search(_) | Error::Numeric(_) => 3,
    }
}

/// Assemble the full-length slice point from the flag's flat re,im list.
fn build_w(raw: &Option<Vec<f64>>, n_ambient: usize) -> Result<Vec<Cx>> {
    match raw {
        None => Ok(vec![Cx::new(0.0, 0.0); n_ambient]),
        Some(flat) => {
            if flat.len() != 2 * n_ambient {
                return Err(Error::domain(format!(
                    "--w needs {} numbers (re,im per ambient coordinate), got {}",
                    2 * n_ambient,
                    flat.len()
                )));
            }
            if flat.iter().any(|x| !x.is_finite()) {
                return Err(Error::domain("--w entries must be finite"));
            }
            Ok(flat.chunks_exact(2).map(|p| Cx::new(p[0], p[1])).collect())
        }
    }
}

fn run(cli: &Cli) -> Result<u8> {
    if !(cli.tol.is_finite() && cli.tol > 0.0) {
        return Err(Error::domain("--tol must be positive"));
    }
    let w = build_w(&cli.w, cli.n_ambient)?;
    match cli.command {
        Command::Profiles => cmd_profiles(cli, &w),
        Command::Claims => cmd_claims(cli, &w),
        Command::Scan => cmd_scan(cli, &w),
        Command::Flow => cmd_flow(cli, &w),
    }
}

/// Metric selected by `--metric`, already validated.
fn metric_kind(cli: &Cli, w: &[Cx]) -> Result<MetricKind> {
    let kind = match cli.metric {
        Metric::Grauert => MetricKind::GrauertPunctured { n: cli.n },
        Metric::Ball => MetricKind::BallComplement {
            n_ambient: cli.n_ambient,
            n_base: cli.n,
            w: w.to_vec(),
        },
    };
    kind.validate()?;
    Ok(kind)
}

fn radii(cli: &Cli) -> Vec<f64> {
    cli.radius_list.clone().unwrap_or_else(|| vec![1.0])
}

/// Configuration echo embedded in JSON output. Fields a command does not
/// use are null.
#[allow(clippy::too_many_arguments)]
fn config_json(
    cli: &Cli,
    w: &[Cx],
    t_min: Option<f64>,
    t_max: Option<f64>,
    steps: Option<usize>,
    radius_list: Option<&[f64]>,
) -> Value {
    json!({
        "command": cli.command.name(),
        "n": cli.n,
        "N": cli.n_ambient,
        "alpha": cli.alpha,
        "w": w.iter().map(|c| json!([c.re, c.im])).collect::<Vec<_>>(),
        "t_min": t_min,
        "t_max": t_max,
        "steps": steps,
        "radius_list": radius_list,
        "seed": cli.seed,
        "tol": cli.tol,
        "metric": match cli.metric {
            Metric::Grauert => "grauert",
            Metric::Ball => "ball",
        },
    })
}

/// Write the rendered body to `--out` or standard output.
fn emit(cli: &Cli, body: &str) -> Result<()> {
    match &cli.out {
        Some(path) => std::fs::write(path, body)
            .map_err(|e| Error::domain(format!("cannot write {}: {e}", path.display()))),
        None => std::io::stdout()
            .write_all(body.as_bytes())
            .map_err(|e| Error::numeric(format!("cannot write to standard output: {e}"))),
    }
}

fn render_json(doc: &Value) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("JSON document serializes");
    s.push('\n');
    s
}

fn cmd_profiles(cli: &Cli, w: &[Cx]) -> Result<u8> {
    let t_min = cli.t_min.unwrap_or(1e-2);
    let t_max = cli.t_max.unwrap_or(1e2);
    let steps = cli.steps.unwrap_or(50);
    // Slice squared radius left over inside the unit ball around w.
    let r2 = 1.0 - norm_sq(w);
    let rows = tables::profile_rows(t_min, t_max, steps, cli.n_ambient, r2, cli.tol)?;
    let body = match cli.format {
        Format::Csv => output::profiles_csv(&rows),
        Format::Json => {
            let config = config_json(cli, w, Some(t_min), Some(t_max), Some(steps), None);
            render_json(&output::document(config, "rows", output::profiles_json(&rows)))
        }
    };
    emit(cli, &body)?;
    Ok(0)
}

fn cmd_claims(cli: &Cli, w: &[Cx]) -> Result<u8> {
    let results = claims::run_all(cli.seed, cli.tol)?;
    let body = match cli.format {
        Format::Csv => output::claims_csv(&results),
        Format::Json => {
            let config = config_json(cli, w, None, None, None, None);
            render_json(&output::document(config, "claims", output::claims_json(&results)))
        }
    };
    emit(cli, &body)?;
    let failing: Vec<&str> = results
        .iter()
        .filter(|r| r.status == ClaimStatus::Fail)
        .map(|r| r.id.as_str())
        .collect();
    if failing.is_empty() {
        Ok(0)
    } else {
        eprintln!("failing claims: {}", failing.join(", "));
        Ok(1)
    }
}

fn cmd_scan(cli: &Cli, w: &[Cx]) -> Result<u8> {
    let kind = metric_kind(cli, w)?;
    let field = DiagonalField::new(cli.n, cli.alpha)?;
    let radii = radii(cli);
    let rows = tables::scan_rows(
        &kind,
        &field,
        &radii,
        DEFAULT_SAMPLES,
        DEFAULT_REFINE_ITERS,
        cli.seed,
    )?;
    let body = match cli.format {
        Format::Csv => output::scan_csv(&rows),
        Format::Json => {
            let config = config_json(cli, w, None, None, None, Some(&radii));
            render_json(&output::document(config, "rows", output::scan_json(&rows)))
        }
    };
    emit(cli, &body)?;
    Ok(0)
}

fn cmd_flow(cli: &Cli, w: &[Cx]) -> Result<u8> {
    let kind = metric_kind(cli, w)?;
    let field = DiagonalField::new(cli.n, cli.alpha)?;
    let t_min = cli.t_min.unwrap_or(-1.0);
    let t_max = cli.t_max.unwrap_or(1.0);
    let steps = cli.steps.unwrap_or(50);
    let radii = radii(cli);
    let t0 = radii[0];
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    let base = match &kind {
        MetricKind::BallComplement { .. } => {
            let tilde = sample_s(&field, t0, &mut rng)?;
            embed_in_slice(&tilde, w)?
        }
        _ => sample_s(&field, t0, &mut rng)?,
    };
    let rows = tables::flow_rows(
        &kind,
        &field,
        &base,
        t_min,
        t_max,
        steps,
        DEFAULT_FD_STEP,
        cli.tol,
    )?;
    let body = match cli.format {
        Format::Csv => output::flow_csv(&rows, base.len()),
        Format::Json => {
            let config =
                config_json(cli, w, Some(t_min), Some(t_max), Some(steps), Some(&radii));
            render_json(&output::document(config, "rows", output::flow_json(&rows)))
        }
    };
    emit(cli, &body)?;
    Ok(0)
}
