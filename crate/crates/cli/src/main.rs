mod error;
mod output;
mod state;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use photocount::counting::{distribution, Method};
use photocount::oracle::identities::{self, IDENTITY_NAMES};
use photocount::oracle::verify::{
    verify_antidiagonal, verify_bernoulli, verify_monte_carlo, verify_p_quadrature, Oracle,
};
use photocount::oracle::SamplingRoute;
use photocount::{ComparisonReport, Complex64, Efficiency, QuadratureConfig};

use crate::error::CliError;
use crate::output::{dist_csv, dist_json};
use crate::state::{parse_complex, StateArgs};

const TOL_ENV: &str = "PHOTOCOUNT_DEFAULT_TOL";

#[derive(Debug, Parser)]
#[command(
    name = "photocount",
    version,
    about = "Photoelectron counting distributions and their checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print p(0..=mmax) for one state.
    Dist(DistArgs),
    /// Compare the closed form with an independent oracle.
    Verify(VerifyArgs),
    /// Check the integral identities by quadrature.
    Identities(IdentityArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MethodArg {
    Closed,
    Bernoulli,
    PQuadrature,
    Antidiagonal,
    Mc,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OracleArg {
    Bernoulli,
    PQuadrature,
    Antidiagonal,
    Mc,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum RouteArg {
    Fock,
    PFunction,
}

impl From<RouteArg> for SamplingRoute {
    fn from(r: RouteArg) -> Self {
        match r {
            RouteArg::Fock => SamplingRoute::Fock,
            RouteArg::PFunction => SamplingRoute::PFunction,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum DistFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Debug, Args)]
struct QuadArgs {
    #[arg(long, default_value_t = QuadratureConfig::default().radial_nodes)]
    radial_nodes: usize,
    #[arg(long, default_value_t = QuadratureConfig::default().angular_nodes)]
    angular_nodes: usize,
    #[arg(long, default_value_t = QuadratureConfig::default().radial_cutoff)]
    radial_cutoff: f64,
}

impl QuadArgs {
    fn config(&self, abs_tol: f64) -> QuadratureConfig {
        QuadratureConfig {
            radial_nodes: self.radial_nodes,
            angular_nodes: self.angular_nodes,
            radial_cutoff: self.radial_cutoff,
            abs_tol,
        }
    }
}

#[derive(Debug, Args)]
struct McArgs {
    #[arg(long, default_value_t = 1_000_000)]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "fock")]
    route: RouteArg,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
struct DistArgs {
    #[command(flatten)]
    state: StateArgs,
    #[arg(long)]
    xi: f64,
    /// Allow xi > 1 (analytic continuation); implied by `--method antidiagonal`.
    #[arg(long)]
    continued: bool,
    #[arg(long, default_value_t = 10)]
    mmax: usize,
    #[arg(long, value_enum, default_value = "closed")]
    method: MethodArg,
    #[arg(long, default_value_t = 1e-15)]
    tail_tol: f64,
    #[arg(long)]
    abs_tol: Option<f64>,
    #[command(flatten)]
    quad: QuadArgs,
    #[command(flatten)]
    mc: McArgs,
    #[arg(long, value_enum, default_value = "json")]
    format: DistFormat,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
struct VerifyArgs {
    #[command(flatten)]
    state: StateArgs,
    #[arg(long)]
    xi: f64,
    #[arg(long, value_enum)]
    against: OracleArg,
    #[arg(long, default_value_t = 10)]
    mmax: usize,
    /// Absolute tolerance; defaults to $PHOTOCOUNT_DEFAULT_TOL, else 1e-10
    /// (bernoulli), 1e-7 (p-quadrature) or 1e-6 (antidiagonal).
    #[arg(long)]
    tol: Option<f64>,
    /// Allowed deviation per bin for `--against mc`, in standard deviations.
    #[arg(long, default_value_t = 4.0)]
    sigmas: f64,
    #[arg(long, default_value_t = 1e-15)]
    tail_tol: f64,
    #[command(flatten)]
    quad: QuadArgs,
    #[command(flatten)]
    mc: McArgs,
    #[arg(long, value_enum, default_value = "text")]
    format: ReportFormat,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
struct IdentityArgs {
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = identities::DEFAULT_DRAWS)]
    draws: usize,
    /// Run a single identity (randomized draws unless parameters are given).
    #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(IDENTITY_NAMES))]
    only: Option<String>,
    /// Absolute tolerance; defaults to $PHOTOCOUNT_DEFAULT_TOL, else the quadrature default.
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    g: Option<f64>,
    #[arg(long)]
    f: Option<f64>,
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    c: Option<String>,
    #[arg(long)]
    zeta: Option<f64>,
    /// Linear coefficient of `z` in gaussian-quadratic.
    #[arg(long = "lin-z", allow_hyphen_values = true)]
    lin_z: Option<String>,
    /// Linear coefficient of `z*` in gaussian-quadratic.
    #[arg(long = "lin-zc", allow_hyphen_values = true)]
    lin_zc: Option<String>,
    #[arg(long)]
    xi: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    #[command(flatten)]
    quad: QuadArgs,
    #[arg(long, value_enum, default_value = "text")]
    format: ReportFormat,
}

fn positive(name: &'static str, v: f64) -> Result<f64, CliError> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(CliError::Tolerance(name, v.to_string()))
    }
}

/// Explicit flag, then the environment, then `fallback`.
fn tolerance(flag: Option<f64>, fallback: f64) -> Result<f64, CliError> {
    if let Some(t) = flag {
        return positive("--tol", t);
    }
    match std::env::var(TOL_ENV) {
        Ok(s) => s
            .trim()
            .parse::<f64>()
            .map_err(|_| CliError::Tolerance(TOL_ENV, s.clone()))
            .and_then(|t| positive(TOL_ENV, t)),
        Err(_) => Ok(fallback),
    }
}

fn run_dist(a: &DistArgs) -> Result<ExitCode, CliError> {
    let state = a.state.build()?;
    let xi = if a.continued || matches!(a.method, MethodArg::Antidiagonal) {
        Efficiency::continued(a.xi)?
    } else {
        Efficiency::new(a.xi)?
    };
    let cfg = a.quad.config(positive(
        "--abs-tol",
        a.abs_tol.unwrap_or(QuadratureConfig::default().abs_tol),
    )?);
    let method = match a.method {
        MethodArg::Closed => Method::Closed,
        MethodArg::Bernoulli => Method::Bernoulli { tail_tol: a.tail_tol },
        MethodArg::PQuadrature => Method::PQuadrature(cfg),
        MethodArg::Antidiagonal => Method::Antidiagonal(cfg),
        MethodArg::Mc => Method::MonteCarlo {
            samples: a.mc.samples,
            seed: a.mc.seed,
            route: a.mc.route.into(),
        },
    };
    let dist = distribution(&state, xi, a.mmax, &method)?;
    match a.format {
        DistFormat::Json => println!("{}", dist_json(&state, a.xi, &dist)),
        DistFormat::Csv => print!("{}", dist_csv(&state, a.xi, &dist)),
    }
    Ok(ExitCode::SUCCESS)
}

fn emit(reports: &[ComparisonReport], format: ReportFormat) -> ExitCode {
    match format {
        ReportFormat::Text => {
            for r in reports {
                println!("{}", r.summary());
            }
        }
        ReportFormat::Json => {
            let body = if reports.len() == 1 {
                serde_json::to_string_pretty(&reports[0])
            } else {
                serde_json::to_string_pretty(reports)
            };
            println!("{}", body.unwrap());
        }
    }
    if reports.iter().all(|r| r.passed) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run_verify(a: &VerifyArgs) -> Result<ExitCode, CliError> {
    let state = a.state.build()?;
    let oracle = match a.against {
        OracleArg::Bernoulli => Oracle::Bernoulli,
        OracleArg::PQuadrature => Oracle::PQuadrature,
        OracleArg::Antidiagonal => Oracle::Antidiagonal,
        OracleArg::Mc => Oracle::MonteCarlo,
    };
    oracle.supports(&state)?;
    let report = match a.against {
        OracleArg::Bernoulli => {
            let tol = tolerance(a.tol, 1e-10)?;
            verify_bernoulli(&state, Efficiency::new(a.xi)?, a.mmax, a.tail_tol, tol)?
        }
        OracleArg::PQuadrature => {
            let tol = tolerance(a.tol, 1e-7)?;
            let cfg = a.quad.config(tol);
            verify_p_quadrature(&state, Efficiency::new(a.xi)?, a.mmax, &cfg, tol)?
        }
        OracleArg::Antidiagonal => {
            let tol = tolerance(a.tol, 1e-6)?;
            let cfg = a.quad.config(QuadratureConfig::default().abs_tol.min(tol));
            verify_antidiagonal(&state, a.xi, a.mmax, &cfg, tol)?
        }
        OracleArg::Mc => verify_monte_carlo(
            &state,
            Efficiency::new(a.xi)?,
            a.mmax,
            a.mc.samples,
            a.mc.seed,
            a.mc.route.into(),
            positive("--sigmas", a.sigmas)?,
        )?,
    };
    Ok(emit(&[report], a.format))
}

fn identity_flags(a: &IdentityArgs) -> Vec<(&'static str, bool)> {
    vec![
        ("m", a.m.is_some()),
        ("n", a.n.is_some()),
        ("g", a.g.is_some()),
        ("f", a.f.is_some()),
        ("epsilon", a.epsilon.is_some()),
        ("b", a.b.is_some()),
        ("c", a.c.is_some()),
        ("zeta", a.zeta.is_some()),
        ("lin-z", a.lin_z.is_some()),
        ("lin-zc", a.lin_zc.is_some()),
        ("xi", a.xi.is_some()),
        ("alpha", a.alpha.is_some()),
    ]
}

fn complex_or_zero(flag: &'static str, v: &Option<String>) -> Result<Complex64, CliError> {
    v.as_deref()
        .map_or(Ok(Complex64::new(0.0, 0.0)), |s| parse_complex(flag, s))
}

fn single_identity(name: &str, a: &IdentityArgs, cfg: &QuadratureConfig) -> Result<ComparisonReport, CliError> {
    let accepted: &[&str] = match name {
        "gaussian-linear" => &["epsilon", "b", "c"],
        "gaussian-moments" => &["n", "m", "epsilon", "b", "c"],
        "gaussian-quadratic" => &["zeta", "lin-z", "lin-zc", "f", "g"],
        "laguerre-radial" => &["m", "g"],
        "laguerre-kernel" => &["m", "xi", "alpha"],
        _ => &["m"],
    };
    for (flag, present) in identity_flags(a) {
        if present && !accepted.contains(&flag) {
            return Err(CliError::IdentityFlag {
                flag,
                identity: name.to_string(),
            });
        }
    }
    let m = a.m.unwrap_or(0);
    let eps = a.epsilon.unwrap_or(-1.0);
    let b = complex_or_zero("b", &a.b)?;
    let c = complex_or_zero("c", &a.c)?;
    Ok(match name {
        "gaussian-linear" => identities::identity_gaussian_linear(eps, b, c, cfg)?,
        "gaussian-moments" => identities::identity_gaussian_moments(a.n.unwrap_or(0), m, eps, b, c, cfg)?,
        "gaussian-quadratic" => identities::identity_gaussian_quadratic(
            a.zeta.unwrap_or(-1.0),
            complex_or_zero("lin-z", &a.lin_z)?,
            complex_or_zero("lin-zc", &a.lin_zc)?,
            a.f.unwrap_or(0.0),
            a.g.unwrap_or(0.0),
            cfg,
        )?,
        "laguerre-radial" => identities::identity_laguerre_radial(m, a.g.unwrap_or(1.0), cfg)?,
        "laguerre-kernel" => {
            identities::identity_laguerre_kernel(m, a.xi.unwrap_or(2.0), complex_or_zero("alpha", &a.alpha)?, cfg)?
        }
        _ => identities::identity_laguerre_vacuum(m, cfg)?,
    })
}

fn run_identities(a: &IdentityArgs) -> Result<ExitCode, CliError> {
    let cfg = a.quad.config(tolerance(a.tol, QuadratureConfig::default().abs_tol)?);
    let any_param = identity_flags(a).iter().any(|(_, p)| *p);
    let reports = match &a.only {
        Some(name) if any_param => vec![single_identity(name, a, &cfg)?],
        Some(name) => vec![identities::run_identity(name, a.seed, a.draws, &cfg)?],
        None => {
            if let Some((flag, _)) = identity_flags(a).into_iter().find(|(_, p)| *p) {
                return Err(CliError::NeedsOnly(flag));
            }
            identities::run_identity_suite(a.seed, a.draws, &cfg)?
        }
    };
    Ok(emit(&reports, a.format))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Dist(a) => run_dist(a),
        Command::Verify(a) => run_verify(a),
        Command::Identities(a) => run_identities(a),
    };
    result.unwrap_or_else(|e| {
        eprintln!("error: {e}");
        ExitCode::from(2)
    })
}
