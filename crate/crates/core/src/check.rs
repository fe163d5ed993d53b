//! Invariant suite behind `abscatter check`.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::Serialize;

use crate::amplitude::{optical_theorem_residual, scattering_amplitude, IncidentDirection};
use crate::channels::{FluxNumber, TruncationPolicy};
use crate::cross_section::{hard_sphere_total_closed_form, total_cross_section, Statistics};
use crate::error::Result;
use crate::phase_shift::{HardSphere, PhaseShiftPath};
use crate::specfun::{
    bessel_j, gauss_legendre, gegenbauer_at_zero, jacobi_at_zero, jacobi_gegenbauer_factor,
    jacobi_symmetric, legendre_via_jacobi, log_gamma, spherical_j, spherical_n,
};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn outcome(name: impl Into<String>, passed: bool, detail: String) -> CheckOutcome {
    CheckOutcome {
        name: name.into(),
        passed,
        detail,
    }
}

fn mu(x: f64) -> FluxNumber {
    FluxNumber::new(x).expect("finite flux")
}

/// P_l^m(x) by the standard upward recurrence in l (Condon–Shortley phase).
fn assoc_legendre(l: u32, m: u32, x: f64) -> f64 {
    let s = (1.0 - x * x).max(0.0).sqrt();
    let mut pmm = 1.0;
    for k in 1..=m {
        pmm *= -((2 * k - 1) as f64) * s;
    }
    if l == m {
        return pmm;
    }
    let mut p1 = x * (2 * m + 1) as f64 * pmm;
    let mut p0 = pmm;
    for ll in (m + 2)..=l {
        let p2 = ((2 * ll - 1) as f64 * x * p1 - (ll + m - 1) as f64 * p0) / (ll - m) as f64;
        p0 = p1;
        p1 = p2;
    }
    p1
}

/// P_l^m(cos θ) against its Jacobi-polynomial form for l ≤ 8.
pub fn legendre_bridge() -> Result<CheckOutcome> {
    let mut worst: f64 = 0.0;
    for l in 0..=8 {
        for m in 0..=l {
            for i in 0..=40 {
                let theta = PI * i as f64 / 40.0;
                let want = assoc_legendre(l, m, theta.cos());
                let got = legendre_via_jacobi(l, m, theta)?;
                worst = worst.max((got - want).abs() / want.abs().max(1.0));
            }
        }
    }
    Ok(outcome(
        "Legendre-Jacobi bridge, l <= 8",
        worst <= 1e-10,
        format!("max rel err {worst:.2e} (tol 1e-10)"),
    ))
}

/// ∫ P_q P_q′ (cos(θ/2) sin(θ/2))^{2β} dΩ against Γ²(q+β+1)/(Γ(q+1)Γ(q+2β+1)) · 4π/(2(q+β)+1) δ_qq′.
pub fn orthogonality() -> Result<CheckOutcome> {
    let (x, w) = gauss_legendre(200);
    // θ = π(u − sin(2πu)/2π) flattens the endpoint behaviour of the weight.
    let nodes: Vec<(f64, f64)> = x
        .iter()
        .zip(&w)
        .map(|(&x, &w)| {
            let u = 0.5 * (x + 1.0);
            let theta = PI * (u - (2.0 * PI * u).sin() / (2.0 * PI));
            let dtheta = PI * (1.0 - (2.0 * PI * u).cos()) * 0.5 * w;
            (theta, dtheta)
        })
        .collect();
    let mut worst: f64 = 0.0;
    for &(mu0, m) in &[
        (0.0, 0i64),
        (0.0, 2),
        (0.3, 0),
        (0.3, -1),
        (0.5, 0),
        (0.25, 1),
        (0.7, -3),
    ] {
        let beta = (m as f64 + mu0).abs();
        let norm = |q: u32| -> Result<f64> {
            let q = q as f64;
            let g = 2.0 * log_gamma(q + beta + 1.0)?
                - log_gamma(q + 1.0)?
                - log_gamma(q + 2.0 * beta + 1.0)?;
            Ok(g.exp() * 4.0 * PI / (2.0 * (q + beta) + 1.0))
        };
        for q in 0..=6u32 {
            for qp in q..=6u32 {
                let mut integral = 0.0;
                for &(theta, dt) in &nodes {
                    let z = theta.cos();
                    let h = (0.5 * theta.sin()).powf(2.0 * beta);
                    integral += dt
                        * theta.sin()
                        * h
                        * jacobi_symmetric(q, beta, z)?
                        * jacobi_symmetric(qp, beta, z)?;
                }
                integral *= 2.0 * PI;
                let scale = (norm(q)? * norm(qp)?).sqrt();
                let want = if q == qp { norm(q)? } else { 0.0 };
                worst = worst.max((integral - want).abs() / scale);
            }
        }
    }
    Ok(outcome(
        "orthogonality, 200-node quadrature, q <= 6",
        worst <= 1e-8,
        format!("max rel err {worst:.2e} (tol 1e-8)"),
    ))
}

/// P_q^{(β,β)}(0) three ways: recurrence, Gegenbauer form, closed form.
pub fn jacobi_zero_values() -> Result<CheckOutcome> {
    let mut worst: f64 = 0.0;
    for &beta in &[0.0, 0.25, 0.5, 1.3] {
        for q in 0..=10u32 {
            let rec = jacobi_symmetric(q, beta, 0.0)?;
            let geg = jacobi_gegenbauer_factor(q, beta)? * gegenbauer_at_zero(q, beta + 0.5)?;
            let mut errs = vec![(rec - geg).abs() / rec.abs().max(1e-300)];
            if q % 2 == 0 {
                let closed = jacobi_at_zero(q / 2, beta)?;
                errs.push((closed - geg).abs() / geg.abs());
            } else {
                errs.push(rec.abs() + geg.abs());
            }
            worst = errs.into_iter().fold(worst, f64::max);
        }
    }
    Ok(outcome(
        "Jacobi/Gegenbauer values at zero, q <= 10",
        worst <= 1e-10,
        format!("max rel err {worst:.2e} (tol 1e-10)"),
    ))
}

fn half_integer_closed(n: i32, z: f64) -> f64 {
    let (s, c) = z.sin_cos();
    let pre = (2.0 / (PI * z)).sqrt();
    pre * match n {
        -2 => -c / z - s,
        -1 => c,
        0 => s,
        1 => s / z - c,
        2 => (3.0 / (z * z) - 1.0) * s - 3.0 * c / z,
        3 => (15.0 / z.powi(3) - 6.0 / z) * s - (15.0 / (z * z) - 1.0) * c,
        _ => unreachable!(),
    }
}

/// J_{n+½} against trigonometric closed forms, n ∈ {−2, …, 3}, on z ∈ [0.5, 20]
/// (below that the closed forms themselves cancel catastrophically).
pub fn half_integer_bessel() -> Result<CheckOutcome> {
    let mut worst: f64 = 0.0;
    for n in -2..=3 {
        for i in 10..=400 {
            let z = 0.05 * i as f64;
            let want = half_integer_closed(n, z);
            let got = bessel_j(n as f64 + 0.5, z)?;
            worst = worst.max((got - want).abs() / (1e-10 * want.abs() + 1e-12));
        }
    }
    Ok(outcome(
        "half-integer Bessel closed forms",
        worst <= 1.0,
        format!("max err / (1e-10 |J| + 1e-12) = {worst:.2e}"),
    ))
}

/// z² · max deviation from the leading large-z forms of j_α and n_α on [50, 200].
pub fn asymptotic_deviation(alpha: f64) -> Result<(f64, f64)> {
    let (mut dj, mut dn): (f64, f64) = (0.0, 0.0);
    for i in 0..=1500 {
        let z = 50.0 + 0.1 * i as f64;
        let j_as = (z - alpha * FRAC_PI_2).sin() / z;
        let n_as = -(alpha * PI).cos() * (z + alpha * FRAC_PI_2).cos() / z;
        dj = dj.max(z * z * (spherical_j(alpha, z)? - j_as).abs());
        dn = dn.max(z * z * (spherical_n(alpha, z)? - n_as).abs());
    }
    Ok((dj, dn))
}

/// |j_α − sin(z − απ/2)/z| ≤ 2/z² and the analogue for n_α.
pub fn asymptotics(alpha: f64) -> Result<CheckOutcome> {
    let (dj, dn) = asymptotic_deviation(alpha)?;
    Ok(outcome(
        format!("large-z asymptotics, alpha = {alpha}"),
        dj <= 2.0 && dn <= 2.0,
        format!("max z^2|dev|: j {dj:.3}, n {dn:.3} (bound 2)"),
    ))
}

pub const ASYMPTOTIC_ORDERS: [f64; 4] = [0.0, 0.5, 1.0, 2.7];

/// The special-function checks, asymptotics split per order.
pub fn special_function_suite() -> Result<Vec<CheckOutcome>> {
    let mut out = vec![
        legendre_bridge()?,
        orthogonality()?,
        jacobi_zero_values()?,
        half_integer_bessel()?,
    ];
    for a in ASYMPTOTIC_ORDERS {
        out.push(asymptotics(a)?);
    }
    Ok(out)
}

fn closed(ka: f64, mu0: f64, st: Statistics) -> Result<f64> {
    Ok(
        hard_sphere_total_closed_form(ka, mu(mu0), st, &TruncationPolicy::default())?
            .sigma_over_sigma0,
    )
}

const KA: [f64; 3] = [0.1, 1.0, 5.0];
const MU0: [f64; 5] = [0.0, 0.3, 0.5, 0.7, 1.0];

fn physics_suite() -> Result<Vec<CheckOutcome>> {
    let policy = TruncationPolicy::default();
    let mut out = Vec::new();

    let mut worst: f64 = 0.0;
    for ka in KA {
        for m0 in MU0 {
            let d = closed(ka, m0, Statistics::Distinguishable)?;
            let s = closed(ka, m0, Statistics::Boson)? + closed(ka, m0, Statistics::Fermion)?;
            worst = worst.max((s - 4.0 * d).abs() / (4.0 * d));
        }
    }
    out.push(outcome(
        "sum rule boson + fermion = 4 dist",
        worst <= 1e-10,
        format!("max rel err {worst:.2e}"),
    ));

    let (mut w1, mut w2): (f64, f64) = (0.0, 0.0);
    for i in 0..=10 {
        let m0 = 0.1 * i as f64;
        let a = closed(0.3, m0, Statistics::Distinguishable)?;
        w1 = w1.max((closed(0.3, m0 + 1.0, Statistics::Distinguishable)? - a).abs() / a);
        for st in [Statistics::Boson, Statistics::Fermion] {
            let b = closed(0.3, m0, st)?;
            w2 = w2.max((closed(0.3, m0 + 2.0, st)? - b).abs() / b);
        }
    }
    out.push(outcome(
        "flux periodicity (1 dist, 2 identical)",
        w1 <= 1e-10 && w2 <= 1e-10,
        format!("max rel err {w1:.2e} / {w2:.2e}"),
    ));

    let mut worst: f64 = 0.0;
    for ka in KA {
        for m0 in [0.3, 0.5, 1.7] {
            for st in Statistics::ALL {
                let a = closed(ka, m0, st)?;
                worst = worst.max((closed(ka, -m0, st)? - a).abs() / a);
            }
        }
    }
    out.push(outcome(
        "flux reversal mu0 -> -mu0",
        worst <= 1e-10,
        format!("max rel err {worst:.2e}"),
    ));

    let mut worst: f64 = 0.0;
    for ka in KA {
        for m0 in MU0 {
            worst = worst.max(optical_theorem_residual(&HardSphere, ka, mu(m0), &policy)?.residual);
        }
    }
    out.push(outcome(
        "optical theorem",
        worst < 1e-8,
        format!("max residual {worst:.2e} (tol 1e-8)"),
    ));

    let mut worst: f64 = 0.0;
    for ka in KA {
        for m0 in [0.0, 0.3, 0.7, 1.0, 1.25] {
            let a = total_cross_section(
                &PhaseShiftPath(HardSphere),
                ka,
                mu(m0),
                Statistics::Distinguishable,
                &policy,
            )?
            .sigma_over_sigma0;
            let b = closed(ka, m0, Statistics::Distinguishable)?;
            worst = worst.max((a - b).abs() / b);
        }
    }
    out.push(outcome(
        "phase-shift path = closed form",
        worst <= 1e-10,
        format!("max rel err {worst:.2e}"),
    ));

    let mut worst: f64 = 0.0;
    for m0 in [0.0, 0.5] {
        for i in 0..=6 {
            for &phi in &[0.0, 0.8, 2.4, -1.9] {
                let t = PI * i as f64 / 12.0;
                let eq = IncidentDirection::equatorial();
                let f = scattering_amplitude(&HardSphere, 1.0, mu(m0), eq, t, phi, &policy)?.value;
                let g =
                    scattering_amplitude(&HardSphere, 1.0, mu(m0), eq, PI - t, phi, &policy)?.value;
                worst = worst.max((f - g).norm() / f.norm());
            }
        }
    }
    out.push(outcome(
        "mirror symmetry f(theta) = f(pi - theta)",
        worst <= 1e-10,
        format!("max rel err {worst:.2e}"),
    ));

    let mut worst: f64 = 0.0;
    for ka in KA {
        let a = closed(ka, 0.0, Statistics::Distinguishable)?;
        worst = worst.max((closed(ka, 1.0, Statistics::Distinguishable)? - a).abs() / a);
    }
    out.push(outcome(
        "integer flux invisible",
        worst <= 1e-10,
        format!("max rel err {worst:.2e}"),
    ));
    Ok(out)
}

/// Every check, special functions first.
pub fn run_all() -> Result<Vec<CheckOutcome>> {
    let mut out = special_function_suite()?;
    out.extend(physics_suite()?);
    Ok(out)
}
