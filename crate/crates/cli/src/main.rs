use std::f64::consts::FRAC_PI_2;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use abscatter::sweep::{self, OutputFormat, SumPath, SweepRecord, SweepSpec};
use abscatter::{
    check, optical_theorem_residual, scattering_amplitude, FluxNumber, HardSphere,
    IncidentDirection, Statistics, TruncationPolicy,
};
use clap::{Args, Parser, Subcommand, ValueEnum};

const EXIT_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_NOT_CONVERGED: u8 = 3;
const EXIT_DEGENERATE: u8 = 4;

/// Hard-sphere scattering with an Aharonov-Bohm flux line: sweeps, figure
/// data, amplitudes and self-checks.
#[derive(Parser)]
#[command(name = "abscatter", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Total cross section over a (ka, mu0) grid.
    Sweep(SweepArgs),
    /// Data for one of the figure presets (fig1..fig6).
    Figure(FigureArgs),
    /// Scattering amplitude at one point, with the optical-theorem residual.
    Amplitude(AmplitudeArgs),
    /// Run the invariant suite and print a pass/fail table.
    Check,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum PathArg {
    ClosedForm,
    PhaseShift,
}

#[derive(Args)]
struct PolicyArgs {
    #[arg(long, default_value_t = 1e-12)]
    rel_tol: f64,
    #[arg(long, default_value_t = 80)]
    q_max: u32,
    #[arg(long, default_value_t = 120)]
    m_max: u32,
}

#[derive(Args)]
struct SweepArgs {
    /// Comma-separated ka values.
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        conflicts_with = "ka_range"
    )]
    ka: Vec<f64>,
    /// START:STOP:STEPS, inclusive.
    #[arg(long)]
    ka_range: Option<String>,
    /// Comma-separated flux values mu0 = -Phi/Phi0.
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        conflicts_with = "mu0_range"
    )]
    mu0: Vec<f64>,
    #[arg(long, allow_hyphen_values = true)]
    mu0_range: Option<String>,
    #[arg(long, default_value = "dist")]
    statistics: Statistics,
    #[command(flatten)]
    policy: PolicyArgs,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long, value_enum, default_value = "closed-form")]
    path: PathArg,
    /// With --path phase-shift, leave degenerate points unresolved.
    #[arg(long)]
    no_fallback: bool,
}

#[derive(Args)]
struct FigureArgs {
    #[arg(long)]
    name: String,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Args)]
struct AmplitudeArgs {
    #[arg(long)]
    ka: f64,
    #[arg(long, allow_hyphen_values = true)]
    mu0: f64,
    /// Polar angle of the outgoing direction, in [0, pi].
    #[arg(long)]
    theta: f64,
    #[arg(long, allow_hyphen_values = true)]
    phi: f64,
    /// Incident polar angle (default: equatorial, pi/2).
    #[arg(long)]
    theta_p: Option<f64>,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    phi_p: f64,
    #[command(flatten)]
    policy: PolicyArgs,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(e: impl ToString) -> Self {
        Self {
            code: EXIT_USAGE,
            message: e.to_string(),
        }
    }

    fn other(e: impl ToString) -> Self {
        Self {
            code: EXIT_FAILED,
            message: e.to_string(),
        }
    }
}

fn from_core(e: abscatter::Error) -> Failure {
    match e {
        abscatter::Error::NotConverged { .. } => Failure {
            code: EXIT_NOT_CONVERGED,
            message: e.to_string(),
        },
        abscatter::Error::Degenerate { .. } => Failure {
            code: EXIT_DEGENERATE,
            message: e.to_string(),
        },
        _ => Failure::usage(e),
    }
}

fn policy(p: &PolicyArgs) -> Result<TruncationPolicy, Failure> {
    let policy = TruncationPolicy {
        q_max: p.q_max,
        m_max: p.m_max,
        rel_tol: p.rel_tol,
        ..TruncationPolicy::default()
    };
    policy.validate().map_err(Failure::usage)?;
    Ok(policy)
}

fn grid(list: &[f64], range: Option<&str>, name: &str) -> Result<Vec<f64>, Failure> {
    match range {
        Some(r) => sweep::parse_range(r).map_err(Failure::usage),
        None if !list.is_empty() => Ok(list.to_vec()),
        None => Err(Failure::usage(format!(
            "one of --{name} or --{name}-range is required"
        ))),
    }
}

fn output_format(f: Format) -> OutputFormat {
    match f {
        Format::Csv => OutputFormat::Csv,
        Format::Json => OutputFormat::Json,
    }
}

fn execute(spec: &SweepSpec, threads: Option<usize>, out: Option<&PathBuf>) -> Result<u8, Failure> {
    spec.validate().map_err(Failure::usage)?;
    if threads == Some(0) {
        return Err(Failure::usage("--threads must be >= 1"));
    }
    let records = match threads {
        Some(n) => sweep::run_sweep_threads(spec, n),
        None => sweep::run_sweep(spec),
    }
    .map_err(from_core)?;
    let text = sweep::render(spec, &records);
    match out {
        Some(path) => {
            fs::write(path, text).map_err(|e| Failure::other(format!("{}: {e}", path.display())))?
        }
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(Failure::other)?,
    }
    Ok(summarize(&records, out))
}

fn summarize(records: &[SweepRecord], out: Option<&PathBuf>) -> u8 {
    let unconverged: Vec<_> = records.iter().filter(|r| !r.converged).collect();
    let degenerate = records.iter().filter(|r| r.degenerate).count();
    let unresolved = records.iter().filter(|r| r.is_unresolved()).count();
    for r in &unconverged {
        eprintln!(
            "warning: ka={:?} mu0={:?} not converged (residual {:e}, {} channels)",
            r.ka, r.mu0, r.residual, r.channels
        );
    }
    let summary = format!(
        "{} points, {} not converged, {} degenerate ({} unresolved)",
        records.len(),
        unconverged.len(),
        degenerate,
        unresolved
    );
    match out {
        Some(p) => println!("wrote {}: {summary}", p.display()),
        None => eprintln!("{summary}"),
    }
    if unresolved > 0 {
        EXIT_DEGENERATE
    } else if !unconverged.is_empty() {
        EXIT_NOT_CONVERGED
    } else {
        0
    }
}

fn run_sweep_cmd(a: SweepArgs) -> Result<u8, Failure> {
    let mut spec = SweepSpec::new(
        grid(&a.ka, a.ka_range.as_deref(), "ka")?,
        grid(&a.mu0, a.mu0_range.as_deref(), "mu0")?,
        a.statistics,
    );
    spec.policy = policy(&a.policy)?;
    spec.format = output_format(a.format);
    spec.path = match a.path {
        PathArg::ClosedForm => SumPath::ClosedForm,
        PathArg::PhaseShift => SumPath::PhaseShift,
    };
    spec.fallback = !a.no_fallback;
    execute(&spec, a.threads, a.out.as_ref())
}

fn run_figure(a: FigureArgs) -> Result<u8, Failure> {
    let mut spec = sweep::figure_preset(&a.name).map_err(Failure::usage)?;
    spec.format = output_format(a.format);
    execute(&spec, a.threads, a.out.as_ref())
}

fn run_amplitude(a: AmplitudeArgs) -> Result<u8, Failure> {
    let policy = policy(&a.policy)?;
    let mu0 = FluxNumber::new(a.mu0).map_err(Failure::usage)?;
    let incident =
        IncidentDirection::new(a.theta_p.unwrap_or(FRAC_PI_2), a.phi_p).map_err(Failure::usage)?;
    let f = scattering_amplitude(&HardSphere, a.ka, mu0, incident, a.theta, a.phi, &policy)
        .map_err(from_core)?;
    let ot = optical_theorem_residual(&HardSphere, a.ka, mu0, &policy).map_err(from_core)?;
    println!("k f   = {:?} {:+?}i", f.value.re, f.value.im);
    println!("f / a = {:?} {:+?}i", f.value.re / a.ka, f.value.im / a.ka);
    println!("channels {}, residual {:e}", f.channels, f.residual);
    println!(
        "optical theorem residual {:e} ({})",
        ot.residual,
        if ot.relative { "relative" } else { "absolute" }
    );
    Ok(0)
}

fn run_check() -> Result<u8, Failure> {
    let results = check::run_all().map_err(from_core)?;
    let width = results.iter().map(|c| c.name.len()).max().unwrap_or(0);
    for c in &results {
        println!(
            "{}  {:width$}  {}",
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            c.detail
        );
    }
    let failed = results.iter().filter(|c| !c.passed).count();
    println!("{} checks, {} failed", results.len(), failed);
    Ok(if failed == 0 { 0 } else { EXIT_FAILED })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Sweep(a) => run_sweep_cmd(a),
        Command::Figure(a) => run_figure(a),
        Command::Amplitude(a) => run_amplitude(a),
        Command::Check => run_check(),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
