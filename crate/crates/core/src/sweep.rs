//! Parameter sweeps over (ka, μ₀) and the figure presets.

use std::io::{self, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channels::{FluxNumber, TruncationPolicy};
use crate::cross_section::{
    hard_sphere_total_closed_form, total_cross_section, CrossSectionValue, Statistics,
};
use crate::error::{Error, Result};
use crate::phase_shift::{HardSphere, PhaseShiftPath};

/// Exact CSV header line.
pub const CSV_HEADER: &str =
    "ka,mu0,statistics,sigma_over_sigma0,sigma_k2_over_4pi,channels,residual,degenerate";

/// How each hard-sphere point is summed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SumPath {
    /// Bessel-form closed expression; never degenerate.
    ClosedForm,
    /// Phase shifts inserted into the channel term F.
    PhaseShift,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub ka_grid: Vec<f64>,
    pub mu0_grid: Vec<f64>,
    pub statistics: Statistics,
    pub policy: TruncationPolicy,
    pub format: OutputFormat,
    pub path: SumPath,
    /// On the phase-shift path, re-evaluate degenerate points in closed form.
    pub fallback: bool,
    /// Lines written as `# ...` ahead of the CSV header.
    pub comments: Vec<String>,
}

impl SweepSpec {
    pub fn new(ka_grid: Vec<f64>, mu0_grid: Vec<f64>, statistics: Statistics) -> Self {
        Self {
            ka_grid,
            mu0_grid,
            statistics,
            policy: TruncationPolicy::default(),
            format: OutputFormat::Csv,
            path: SumPath::ClosedForm,
            fallback: true,
            comments: Vec::new(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_grid("ka", &self.ka_grid)?;
        check_grid("mu0", &self.mu0_grid)?;
        if self.ka_grid[0] <= 0.0 {
            return Err(Error::InvalidSpec("ka values must be positive".into()));
        }
        self.policy
            .validate()
            .map_err(|e| Error::InvalidSpec(e.to_string()))
    }

    /// Grid points in row-major order (ka outer, μ₀ inner).
    pub fn points(&self) -> Vec<(f64, f64)> {
        self.ka_grid
            .iter()
            .flat_map(|&ka| self.mu0_grid.iter().map(move |&m| (ka, m)))
            .collect()
    }
}

fn check_grid(name: &str, grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::InvalidSpec(format!("{name} grid is empty")));
    }
    if grid.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidSpec(format!(
            "{name} grid has non-finite values"
        )));
    }
    if grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidSpec(format!(
            "{name} grid is not strictly increasing"
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub ka: f64,
    pub mu0: f64,
    pub statistics: Statistics,
    pub sigma_over_sigma0: f64,
    pub sigma_k2_over_4pi: f64,
    pub channels: usize,
    pub residual: f64,
    /// A channel hit the degeneracy guard on the requested path.
    pub degenerate: bool,
    /// The truncation policy was satisfied.
    pub converged: bool,
}

impl SweepRecord {
    fn from_value(ka: f64, mu0: f64, v: CrossSectionValue, degenerate: bool) -> Self {
        Self {
            ka,
            mu0,
            statistics: v.statistics,
            sigma_over_sigma0: v.sigma_over_sigma0,
            sigma_k2_over_4pi: v.sigma_k2_over_4pi,
            channels: v.channels,
            residual: v.residual,
            degenerate,
            converged: true,
        }
    }

    /// Degenerate and without a value.
    pub fn is_unresolved(&self) -> bool {
        self.degenerate && self.sigma_over_sigma0.is_nan()
    }
}

fn settle(
    ka: f64,
    mu0: f64,
    st: Statistics,
    r: Result<CrossSectionValue>,
    degenerate: bool,
) -> Result<SweepRecord> {
    match r {
        Ok(v) => Ok(SweepRecord::from_value(ka, mu0, v, degenerate)),
        Err(Error::NotConverged {
            partial,
            channels,
            residual,
        }) => {
            let v = CrossSectionValue::from_sum(st, ka, partial.re, channels, residual);
            Ok(SweepRecord {
                converged: false,
                ..SweepRecord::from_value(ka, mu0, v, degenerate)
            })
        }
        Err(e) => Err(e),
    }
}

/// One grid point of a sweep.
pub fn evaluate_point(spec: &SweepSpec, ka: f64, mu0: f64) -> Result<SweepRecord> {
    let mu = FluxNumber::new(mu0)?;
    let st = spec.statistics;
    let closed = || hard_sphere_total_closed_form(ka, mu, st, &spec.policy);
    match spec.path {
        SumPath::ClosedForm => settle(ka, mu0, st, closed(), false),
        SumPath::PhaseShift => {
            match total_cross_section(&PhaseShiftPath(HardSphere), ka, mu, st, &spec.policy) {
                Err(Error::Degenerate { .. }) if spec.fallback => {
                    settle(ka, mu0, st, closed(), true)
                }
                Err(Error::Degenerate { .. }) => Ok(SweepRecord {
                    ka,
                    mu0,
                    statistics: st,
                    sigma_over_sigma0: f64::NAN,
                    sigma_k2_over_4pi: f64::NAN,
                    channels: 0,
                    residual: f64::NAN,
                    degenerate: true,
                    converged: true,
                }),
                r => settle(ka, mu0, st, r, false),
            }
        }
    }
}

/// Evaluates every grid point on the current rayon pool; records come back
/// in row-major order.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRecord>> {
    spec.validate()?;
    spec.points()
        .par_iter()
        .map(|&(ka, mu0)| evaluate_point(spec, ka, mu0))
        .collect()
}

/// [`run_sweep`] on a dedicated pool of `threads` workers.
pub fn run_sweep_threads(spec: &SweepSpec, threads: usize) -> Result<Vec<SweepRecord>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::InvalidSpec(format!("thread pool: {e}")))?;
    pool.install(|| run_sweep(spec))
}

pub fn write_csv<W: Write>(spec: &SweepSpec, records: &[SweepRecord], mut w: W) -> io::Result<()> {
    for c in &spec.comments {
        writeln!(w, "# {c}")?;
    }
    writeln!(w, "{CSV_HEADER}")?;
    for r in records {
        writeln!(
            w,
            "{:?},{:?},{},{:?},{:?},{},{:?},{}",
            r.ka,
            r.mu0,
            r.statistics,
            r.sigma_over_sigma0,
            r.sigma_k2_over_4pi,
            r.channels,
            r.residual,
            r.degenerate
        )?;
    }
    Ok(())
}

#[derive(Serialize)]
struct JsonOut<'a> {
    comments: &'a [String],
    spec: &'a SweepSpec,
    records: &'a [SweepRecord],
}

pub fn write_json<W: Write>(spec: &SweepSpec, records: &[SweepRecord], mut w: W) -> io::Result<()> {
    let out = JsonOut {
        comments: &spec.comments,
        spec,
        records,
    };
    serde_json::to_writer_pretty(&mut w, &out)?;
    writeln!(w)
}

/// Renders the records in the spec's output format.
pub fn render(spec: &SweepSpec, records: &[SweepRecord]) -> String {
    let mut buf = Vec::new();
    match spec.format {
        OutputFormat::Csv => write_csv(spec, records, &mut buf),
        OutputFormat::Json => write_json(spec, records, &mut buf),
    }
    .expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("output is UTF-8")
}

/// `n` points from `start` to `stop` inclusive, each computed directly.
pub fn linspace(start: f64, stop: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![start],
        _ => (0..n)
            .map(|i| start + (stop - start) * i as f64 / (n - 1) as f64)
            .collect(),
    }
}

/// Parses `START:STOP:STEPS` into an inclusive grid of STEPS points.
pub fn parse_range(s: &str) -> Result<Vec<f64>> {
    let bad = || Error::InvalidSpec(format!("range '{s}' is not START:STOP:STEPS"));
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(bad());
    }
    let start: f64 = parts[0].trim().parse().map_err(|_| bad())?;
    let stop: f64 = parts[1].trim().parse().map_err(|_| bad())?;
    let steps: usize = parts[2].trim().parse().map_err(|_| bad())?;
    if steps == 0 || !start.is_finite() || !stop.is_finite() || (steps > 1 && stop <= start) {
        return Err(bad());
    }
    Ok(linspace(start, stop, steps))
}

pub const FIGURES: [&str; 6] = ["fig1", "fig2", "fig3", "fig4", "fig5", "fig6"];

/// Preset sweeps fig1..fig6: cross section against ka or against flux for each statistics.
pub fn figure_preset(name: &str) -> Result<SweepSpec> {
    let ka_sweep = || linspace(0.05, 10.0, 200);
    let small_ka = || vec![0.1, 0.3, 0.5];
    let (ka, mu0, st, what) = match name {
        "fig1" => (
            ka_sweep(),
            vec![0.0, 0.25, 0.5, 1.0],
            Statistics::Distinguishable,
            "distinguishable total cross section vs ka",
        ),
        "fig2" => (
            small_ka(),
            linspace(0.0, 3.0, 301),
            Statistics::Distinguishable,
            "distinguishable total cross section vs flux",
        ),
        "fig3" => (
            ka_sweep(),
            vec![0.0, 0.5, 1.0, 1.5, 2.0],
            Statistics::Boson,
            "identical bosons vs ka",
        ),
        "fig4" => (
            small_ka(),
            linspace(0.0, 4.0, 401),
            Statistics::Boson,
            "identical bosons vs flux",
        ),
        "fig5" => (
            ka_sweep(),
            vec![0.0, 0.5, 1.0, 1.5, 2.0],
            Statistics::Fermion,
            "identical fermions vs ka",
        ),
        "fig6" => (
            small_ka(),
            linspace(0.0, 4.0, 401),
            Statistics::Fermion,
            "identical fermions vs flux",
        ),
        _ => {
            return Err(Error::Unknown {
                kind: "figure",
                name: name.to_string(),
            })
        }
    };
    let mut spec = SweepSpec::new(ka, mu0, st);
    spec.comments = vec![
        format!("{name}: {what}, hard sphere, sigma0 = 2 pi a^2"),
        format!("ka grid: {}", describe(&spec.ka_grid)),
        format!("mu0 grid: {}", describe(&spec.mu0_grid)),
        format!(
            "policy: rel_tol {:?}, consecutive_below {}, q_max {}, m_max {}",
            spec.policy.rel_tol,
            spec.policy.consecutive_below,
            spec.policy.q_max,
            spec.policy.m_max
        ),
    ];
    Ok(spec)
}

fn describe(grid: &[f64]) -> String {
    if grid.len() <= 6 {
        let items: Vec<String> = grid.iter().map(|x| format!("{x:?}")).collect();
        format!("{{{}}}", items.join(", "))
    } else {
        format!(
            "{:?}..{:?} ({} points, evenly spaced)",
            grid[0],
            grid[grid.len() - 1],
            grid.len()
        )
    }
}
