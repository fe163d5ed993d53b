//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

use std::f64::consts::PI;
use std::path::Path;
use std::process::Command;

use abscatter::sweep::{figure_preset, render, run_sweep_threads};
use abscatter::{
    check, flux_free_total, hard_sphere_phase_shift, hard_sphere_total_closed_form,
    optical_theorem_residual, scattering_amplitude, total_cross_section, FluxNumber, HardSphere,
    IncidentDirection, PhaseShiftPath, Statistics, TruncationPolicy,
};

type Outcome = Result<(bool, String), String>;
type Criterion = (&'static str, fn() -> Outcome);

/// σ(ka=0.1, μ₀=0.5)/σ(ka=0.1, μ₀=0), from a q̃ ≤ 200, |m| ≤ 300 oracle sum.
const HALF_FLUX_RATIO: f64 = 0.015_271_402_185_541_074;

fn mu(x: f64) -> FluxNumber {
    FluxNumber::new(x).unwrap()
}

fn sigma(ka: f64, m0: f64, st: Statistics) -> Result<f64, String> {
    hard_sphere_total_closed_form(ka, mu(m0), st, &TruncationPolicy::default())
        .map(|v| v.sigma_over_sigma0)
        .map_err(|e| e.to_string())
}

fn grid(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    (0..=steps)
        .map(|i| lo + (hi - lo) * i as f64 / steps as f64)
        .collect()
}

fn c1() -> Outcome {
    let s = sigma(0.01, 0.0, Statistics::Distinguishable)?;
    Ok((
        (s - 2.0).abs() <= 0.02 * 2.0,
        format!("sigma/sigma0 = {s:.6} (2 +- 2%)"),
    ))
}

fn c2() -> Outcome {
    let s = sigma(50.0, 0.0, Statistics::Distinguishable)?;
    Ok((
        (s - 1.0).abs() <= 0.1,
        format!("sigma/sigma0 = {s:.6} (1 +- 10%)"),
    ))
}

fn c3() -> Outcome {
    let p = TruncationPolicy::default();
    let mut worst: f64 = 0.0;
    for ka in [0.1, 1.0, 5.0, 20.0] {
        let a = total_cross_section(
            &PhaseShiftPath(HardSphere),
            ka,
            mu(0.0),
            Statistics::Distinguishable,
            &p,
        )
        .map_err(|e| e.to_string())?
        .sigma_over_sigma0;
        let b = flux_free_total(ka, &p)
            .map_err(|e| e.to_string())?
            .sigma_over_sigma0;
        worst = worst.max((a - b).abs() / b);
    }
    Ok((
        worst <= 1e-10,
        format!("max rel diff {worst:.2e} (tol 1e-10)"),
    ))
}

/// Oracle pieces for criterion 4, independent of the library kernels.
mod oracle {
    const Z: f64 = 0.1;
    const Q_MAX: usize = 200;
    const M_MAX: i64 = 300;
    const EULER: f64 = 0.577_215_664_901_532_9;

    fn compensated(terms: &[f64]) -> f64 {
        let (mut s, mut c) = (0.0f64, 0.0f64);
        for &t in terms {
            let u = s + t;
            c += if s.abs() >= t.abs() {
                (s - u) + t
            } else {
                (t - u) + s
            };
            s = u;
        }
        s + c
    }

    /// Γ(x+½)/(√π Γ(x+1)) on x = k/2.
    fn r_table(k_max: usize) -> Vec<f64> {
        let mut r = vec![0.0; k_max + 1];
        r[0] = 1.0;
        r[1] = 2.0 / std::f64::consts::PI;
        for k in 2..=k_max {
            let x = (k - 2) as f64 / 2.0;
            r[k] = r[k - 2] * (x + 0.5) / (x + 1.0);
        }
        r
    }

    /// J_n(Z), Y_n(Z) for integer n: power series for J, Y₀ series plus Wronskian and upward recurrence for Y.
    fn integer_jy(n_max: usize) -> (Vec<f64>, Vec<f64>) {
        let x = Z * Z / 4.0;
        let j: Vec<f64> = (0..=n_max)
            .map(|n| {
                let mut t = 1.0;
                for i in 1..=n {
                    t *= Z / 2.0 / i as f64;
                }
                let mut terms = vec![t];
                for k in 1..40 {
                    t *= -x / (k as f64 * (n + k) as f64);
                    terms.push(t);
                }
                compensated(&terms)
            })
            .collect();
        let mut tail = Vec::new();
        let (mut t, mut h) = (1.0, 0.0);
        for k in 1..40 {
            t *= -x / (k * k) as f64;
            h += 1.0 / k as f64;
            tail.push(-h * t);
        }
        let pi = std::f64::consts::PI;
        let y0 = 2.0 / pi * (((Z / 2.0).ln() + EULER) * j[0] + compensated(&tail));
        let y1 = (j[1] * y0 - 2.0 / (pi * Z)) / j[0];
        let mut y = vec![y0, y1];
        for n in 1..n_max {
            y.push(2.0 * n as f64 / Z * y[n] - y[n - 1]);
        }
        (j, y)
    }

    /// j_l(Z), y_l(Z): series for j, upward recurrence for y.
    fn spherical_jy(l_max: usize) -> (Vec<f64>, Vec<f64>) {
        let x = Z * Z / 2.0;
        let mut lead = 1.0;
        let j: Vec<f64> = (0..=l_max)
            .map(|l| {
                if l > 0 {
                    lead *= Z / (2 * l + 1) as f64;
                }
                let mut t = lead;
                let mut terms = vec![t];
                for k in 1..40 {
                    t *= -x / (k as f64 * (2 * l + 2 * k + 1) as f64);
                    terms.push(t);
                }
                compensated(&terms)
            })
            .collect();
        let (s, c) = Z.sin_cos();
        let mut y = vec![-c / Z, -c / (Z * Z) - s / Z];
        for l in 1..l_max {
            y.push((2 * l + 1) as f64 / Z * y[l] - y[l - 1]);
        }
        (j, y)
    }

    fn weight(j: f64, y: f64) -> f64 {
        if !y.is_finite() || j == 0.0 {
            0.0
        } else {
            j * j / (j * j + y * y)
        }
    }

    /// Σ (2α̃+1) J²/(J²+Y²) 𝒴² at ka = Z for μ₀ ∈ {0, ½}.
    fn channel_sum(half: bool) -> f64 {
        let top = 2 * Q_MAX + M_MAX as usize + 2;
        let r = r_table(2 * top + 2);
        let (ij, iy) = integer_jy(top + 1);
        let (sj, sy) = spherical_jy(top);
        let mut terms = Vec::new();
        for m in -M_MAX..=M_MAX {
            // Twice β, so half-integer β stays integral.
            let b2 = if half {
                (2 * m + 1).unsigned_abs() as usize
            } else {
                2 * m.unsigned_abs() as usize
            };
            for q in 0..=Q_MAX {
                let a2 = 4 * q + b2;
                let w = if half {
                    let n = a2.div_ceil(2);
                    weight(ij[n], iy[n])
                } else {
                    let l = a2 / 2;
                    weight(sj[l], sy[l])
                };
                let y2 = r[2 * q] * r[2 * q + b2];
                terms.push((a2 + 1) as f64 * w * y2);
            }
        }
        compensated(&terms)
    }

    pub fn half_flux_ratio() -> f64 {
        channel_sum(true) / channel_sum(false)
    }
}

fn c4() -> Outcome {
    let lib = sigma(0.1, 0.5, Statistics::Distinguishable)?
        / sigma(0.1, 0.0, Statistics::Distinguishable)?;
    let orc = oracle::half_flux_ratio();
    let ok = lib < 0.05
        && (orc - HALF_FLUX_RATIO).abs() <= 1e-12 * HALF_FLUX_RATIO
        && (lib - HALF_FLUX_RATIO).abs() <= 1e-10 * HALF_FLUX_RATIO;
    Ok((
        ok,
        format!("ratio {lib:?} (oracle {orc:?}, frozen {HALF_FLUX_RATIO:?}, bound 0.05)"),
    ))
}

fn c5() -> Outcome {
    let mut worst: f64 = 0.0;
    for ka in [0.1, 1.0, 5.0] {
        let a = sigma(ka, 0.0, Statistics::Distinguishable)?;
        worst = worst.max((sigma(ka, 1.0, Statistics::Distinguishable)? - a).abs() / a);
    }
    Ok((
        worst <= 1e-10,
        format!("max rel diff {worst:.2e} (tol 1e-10)"),
    ))
}

fn c6() -> Outcome {
    let mut worst: f64 = 0.0;
    for m0 in grid(0.0, 2.0, 40) {
        let a = sigma(0.3, m0, Statistics::Distinguishable)?;
        worst = worst.max((sigma(0.3, m0 + 1.0, Statistics::Distinguishable)? - a).abs() / a);
    }
    Ok((
        worst < 1e-9,
        format!("max rel diff {worst:.2e} over mu0 in [0,2] (tol 1e-9)"),
    ))
}

fn extremum(st: Statistics, at: f64) -> Result<(f64, f64, f64), String> {
    let g = grid(0.0, 2.0, 40);
    let values: Vec<f64> = g
        .iter()
        .map(|&m0| sigma(0.1, m0, st))
        .collect::<Result<_, _>>()?;
    let (imax, vmax) =
        values.iter().enumerate().fold(
            (0, f64::MIN),
            |acc, (i, &v)| if v > acc.1 { (i, v) } else { acc },
        );
    let here = sigma(0.1, at, st)?;
    Ok((here, vmax, g[imax]))
}

fn c7() -> Outcome {
    let zero = sigma(0.1, 1.0, Statistics::Boson)?;
    let (top, vmax, argmax) = extremum(Statistics::Boson, 0.0)?;
    let ok = zero < 0.05 && top >= vmax * (1.0 - 1e-12);
    Ok((ok, format!("sigma(mu0=1) = {zero:.3e}, sigma(mu0=0) = {top:.4} (grid max {vmax:.4} at mu0={argmax})")))
}

fn c8() -> Outcome {
    let zero = sigma(0.1, 0.0, Statistics::Fermion)?;
    let (top, vmax, argmax) = extremum(Statistics::Fermion, 1.0)?;
    let ok = zero < 0.05 && top >= vmax * (1.0 - 1e-12);
    Ok((ok, format!("sigma(mu0=0) = {zero:.3e}, sigma(mu0=1) = {top:.4} (grid max {vmax:.4} at mu0={argmax})")))
}

fn c9() -> Outcome {
    let mut worst: f64 = 0.0;
    for st in [Statistics::Boson, Statistics::Fermion] {
        for m0 in grid(0.0, 2.0, 20) {
            let a = sigma(0.3, m0, st)?;
            worst = worst.max((sigma(0.3, m0 + 2.0, st)? - a).abs() / a);
        }
    }
    Ok((
        worst <= 1e-9,
        format!("max rel diff {worst:.2e} (tol 1e-9)"),
    ))
}

const KA: [f64; 3] = [0.1, 1.0, 5.0];
const MU0: [f64; 5] = [0.0, 0.3, 0.5, 0.7, 1.0];

fn c10() -> Outcome {
    let p = TruncationPolicy::default();
    let mut worst: f64 = 0.0;
    for ka in KA {
        for m0 in MU0 {
            let ot =
                optical_theorem_residual(&HardSphere, ka, mu(m0), &p).map_err(|e| e.to_string())?;
            worst = worst.max(ot.residual);
        }
    }
    Ok((worst < 1e-8, format!("max residual {worst:.2e} (tol 1e-8)")))
}

fn c11() -> Outcome {
    let mut worst: f64 = 0.0;
    for ka in KA {
        for m0 in MU0 {
            let d = sigma(ka, m0, Statistics::Distinguishable)?;
            let s = sigma(ka, m0, Statistics::Boson)? + sigma(ka, m0, Statistics::Fermion)?;
            worst = worst.max((s - 4.0 * d).abs() / (4.0 * d));
        }
    }
    Ok((
        worst <= 1e-10,
        format!("max rel diff {worst:.2e} (tol 1e-10)"),
    ))
}

fn c12() -> Outcome {
    let suite = check::special_function_suite().map_err(|e| e.to_string())?;
    let failed: Vec<String> = suite
        .iter()
        .filter(|c| !c.passed)
        .map(|c| format!("{} [{}]", c.name, c.detail))
        .collect();
    let detail = if failed.is_empty() {
        format!("{} sub-checks passed", suite.len())
    } else {
        format!(
            "{}/{} sub-checks failed: {}",
            failed.len(),
            suite.len(),
            failed.join("; ")
        )
    };
    Ok((failed.is_empty(), detail))
}

fn c13() -> Outcome {
    let ka: f64 = 1e-3;
    let mut worst: f64 = 0.0;
    let mut dfact = 1.0;
    for l in 0..=3u32 {
        if l > 0 {
            dfact *= (2 * l - 1) as f64;
        }
        let d = hard_sphere_phase_shift(l as f64, ka).map_err(|e| e.to_string())?;
        let scaled = d.tan().abs() * dfact * dfact * (2 * l + 1) as f64 / ka.powi(2 * l as i32 + 1);
        worst = worst.max((scaled - 1.0).abs());
    }
    Ok((
        worst <= 0.01,
        format!("max |scaled - 1| = {worst:.2e} for l <= 3 (tol 1%)"),
    ))
}

fn c14() -> Outcome {
    let p = TruncationPolicy::default();
    let eq = IncidentDirection::equatorial();
    let mut worst: f64 = 0.0;
    for m0 in [0.0, 0.5] {
        for i in 0..=12 {
            let t = PI * i as f64 / 24.0;
            for j in 0..8 {
                let phi = -PI + 2.0 * PI * j as f64 / 8.0 + 0.1;
                let f = scattering_amplitude(&HardSphere, 1.0, mu(m0), eq, t, phi, &p)
                    .map_err(|e| e.to_string())?;
                let g = scattering_amplitude(&HardSphere, 1.0, mu(m0), eq, PI - t, phi, &p)
                    .map_err(|e| e.to_string())?;
                worst = worst.max((f.value - g.value).norm() / f.value.norm());
            }
        }
    }
    Ok((
        worst <= 1e-10,
        format!("max rel diff {worst:.2e} (tol 1e-10)"),
    ))
}

fn figure_run(dir: &Path, threads: usize, tag: &str) -> Result<Vec<u8>, String> {
    let out = dir.join(format!("fig1-{threads}-{tag}.csv"));
    let status = Command::new(env!("CARGO_BIN_EXE_abscatter"))
        .args([
            "figure",
            "--name",
            "fig1",
            "--threads",
            &threads.to_string(),
            "--out",
        ])
        .arg(&out)
        .output()
        .map_err(|e| e.to_string())?
        .status;
    if !status.success() {
        return Err(format!(
            "figure run with {threads} threads exited with {status}"
        ));
    }
    std::fs::read(&out).map_err(|e| e.to_string())
}

fn c15() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let base = figure_run(dir.path(), 1, "a")?;
    let mut same = figure_run(dir.path(), 1, "b")? == base;
    for n in [4, 8] {
        same &= figure_run(dir.path(), n, "a")? == base;
    }
    let spec = figure_preset("fig1").map_err(|e| e.to_string())?;
    for n in [1, 4, 8] {
        let recs = run_sweep_threads(&spec, n).map_err(|e| e.to_string())?;
        same &= render(&spec, &recs).as_bytes() == base.as_slice();
    }
    Ok((
        same,
        format!(
            "{} bytes, CLI x4 runs and library x3 runs compared",
            base.len()
        ),
    ))
}

fn main() {
    let criteria: [Criterion; 15] = [
        ("low-energy limit", c1),
        ("high-energy limit", c2),
        ("flux-free reduction", c3),
        ("half-flux suppression", c4),
        ("integer-flux invisibility", c5),
        ("single-particle periodicity", c6),
        ("boson zero", c7),
        ("fermion zero", c8),
        ("identical-particle periodicity", c9),
        ("optical theorem", c10),
        ("sum rule", c11),
        ("special-function suite", c12),
        ("phase-shift scaling", c13),
        ("mirror symmetry", c14),
        ("determinism", c15),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let (ok, detail) = run().unwrap_or_else(|e| (false, format!("error: {e}")));
        if !ok {
            failures += 1;
        }
        println!(
            "{} {:>2} {name}: {detail}",
            if ok { "PASS" } else { "FAIL" },
            i + 1
        );
    }
    println!(
        "acceptance: {} passed, {failures} failed",
        criteria.len() - failures
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
