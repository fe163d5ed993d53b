//! Total and differential cross sections for distinguishable and identical
//! particles.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::amplitude::{scattering_amplitude, IncidentDirection};
use crate::channels::{y_squared_beta, Channel, FluxNumber, TruncationPolicy};
use crate::error::{domain, Error, Result, DEGENERACY_THRESHOLD};
use crate::phase_shift::{ChannelResponse, HardSphere, ScattererModel};
use crate::specfun::{cos_pi, sin_pi, spherical_j, spherical_n};
use crate::summation::{sum_channels, Parity, PolarStep, SumSetup, Wave};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Statistics {
    #[serde(rename = "dist")]
    Distinguishable,
    Boson,
    Fermion,
}

impl Statistics {
    pub const ALL: [Statistics; 3] = [
        Statistics::Distinguishable,
        Statistics::Boson,
        Statistics::Fermion,
    ];

    pub fn token(self) -> &'static str {
        match self {
            Statistics::Distinguishable => "dist",
            Statistics::Boson => "boson",
            Statistics::Fermion => "fermion",
        }
    }

    fn parity(self) -> Parity {
        match self {
            Statistics::Distinguishable => Parity::Any,
            Statistics::Boson => Parity::Even,
            Statistics::Fermion => Parity::Odd,
        }
    }

    /// σk²/4π per unit of the channel sum.
    fn raw_scale(self) -> f64 {
        match self {
            Statistics::Distinguishable => 1.0,
            _ => 4.0,
        }
    }
}

impl fmt::Display for Statistics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for Statistics {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dist" | "distinguishable" => Ok(Statistics::Distinguishable),
            "boson" => Ok(Statistics::Boson),
            "fermion" => Ok(Statistics::Fermion),
            _ => Err(Error::Unknown {
                kind: "statistics",
                name: s.to_string(),
            }),
        }
    }
}

/// A total cross section with its convergence data.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CrossSectionValue {
    pub statistics: Statistics,
    /// σ / 2πa².
    pub sigma_over_sigma0: f64,
    /// σk²/4π.
    pub sigma_k2_over_4pi: f64,
    pub channels: usize,
    pub residual: f64,
}

impl CrossSectionValue {
    pub(crate) fn from_sum(
        statistics: Statistics,
        ka: f64,
        sum: f64,
        channels: usize,
        residual: f64,
    ) -> Self {
        let raw = statistics.raw_scale() * sum;
        Self {
            statistics,
            sigma_over_sigma0: 2.0 * raw / (ka * ka),
            sigma_k2_over_4pi: raw,
            channels,
            residual,
        }
    }
}

fn check_ka(op: &'static str, ka: f64) -> Result<()> {
    if !ka.is_finite() || ka <= 0.0 {
        return Err(domain(op, format!("ka = {ka} must be positive")));
    }
    Ok(())
}

fn f_term(delta: f64, alpha_tilde: f64, y2: f64) -> Result<f64> {
    let (s, cd) = (delta.sin(), delta.cos());
    let (c, sa) = (cos_pi(alpha_tilde), sin_pi(alpha_tilde));
    let a = cd - s * c * sa;
    let b = s * c * c;
    let den = a * a + b * b;
    if den < DEGENERACY_THRESHOLD {
        return Err(Error::Degenerate {
            alpha_tilde,
            denominator: den,
        });
    }
    Ok((2.0 * alpha_tilde + 1.0) * s * s * c.powi(4) * y2 / den)
}

/// F_q̃m(δ) = (2α̃+1) sin²δ cos⁴(α̃π) 𝒴² / (1 − 2 sin δ sin(α̃π) cos(α̃π−δ) + sin²δ sin²(α̃π)).
#[allow(non_snake_case)]
pub fn channel_term_F(delta: f64, channel: &Channel) -> Result<f64> {
    f_term(
        delta,
        channel.alpha_tilde,
        y_squared_beta(channel.q_tilde, channel.beta),
    )
}

fn equatorial_setup(
    ka: f64,
    mu0: FluxNumber,
    st: Statistics,
    policy: &TruncationPolicy,
) -> SumSetup {
    SumSetup {
        mu0,
        policy: *policy,
        step: PolarStep::Even,
        parity: st.parity(),
        protect: ka,
    }
}

/// Channel sum of F (or (2α̃+1)|T|²𝒴² for models reporting T directly).
pub fn total_cross_section<M: ScattererModel + ?Sized>(
    model: &M,
    ka: f64,
    mu0: FluxNumber,
    statistics: Statistics,
    policy: &TruncationPolicy,
) -> Result<CrossSectionValue> {
    check_ka("total_cross_section", ka)?;
    let setup = equatorial_setup(ka, mu0, statistics, policy);
    let out = sum_channels(&setup, |_, _| {
        Ok(|w: Wave| {
            let y2 = y_squared_beta(w.q, w.beta);
            match model.channel_response(w.alpha, ka)? {
                ChannelResponse::PhaseShift(d) => f_term(d, w.alpha, y2),
                ChannelResponse::Amplitude(t) => Ok((2.0 * w.alpha + 1.0) * t.norm_sqr() * y2),
            }
        })
    })?;
    Ok(CrossSectionValue::from_sum(
        statistics,
        ka,
        out.value,
        out.channels,
        out.residual,
    ))
}

/// (2α̃+1) cos²(α̃π) J²₊ / (J²₊ + J²₋ + 2 sin(α̃π) J₊J₋) with J_± = J_{±(α̃+½)}(ka),
/// evaluated as written. Vanishes to 0/0 at half-integer α̃.
pub fn hard_sphere_weight_literal(alpha_tilde: f64, ka: f64) -> Result<f64> {
    check_ka("hard_sphere_weight_literal", ka)?;
    let (jp, y) = HardSphere::jy(alpha_tilde, ka);
    if !y.is_finite() {
        return Ok(0.0);
    }
    let (c, sa) = (cos_pi(alpha_tilde), sin_pi(alpha_tilde));
    // J_{−ν} at ν = α̃ + ½: cos(νπ) = −sin(α̃π), sin(νπ) = cos(α̃π).
    let jm = -sa * jp - c * y;
    let den = jp * jp + jm * jm + 2.0 * sa * jp * jm;
    if den < DEGENERACY_THRESHOLD {
        return Err(Error::Degenerate {
            alpha_tilde,
            denominator: den,
        });
    }
    Ok((2.0 * alpha_tilde + 1.0) * c * c * jp * jp / den)
}

/// Hard-sphere total cross section summed directly in Bessel form,
/// (2α̃+1) J²/(J² + Y²) 𝒴² per channel at order α̃ + ½.
pub fn hard_sphere_total_closed_form(
    ka: f64,
    mu0: FluxNumber,
    statistics: Statistics,
    policy: &TruncationPolicy,
) -> Result<CrossSectionValue> {
    check_ka("hard_sphere_total_closed_form", ka)?;
    let setup = equatorial_setup(ka, mu0, statistics, policy);
    let out = sum_channels(&setup, |_, _| {
        Ok(|w: Wave| {
            let (j, y) = HardSphere::jy(w.alpha, ka);
            if !y.is_finite() {
                return Ok(0.0);
            }
            let den = j * j + y * y;
            if den < DEGENERACY_THRESHOLD {
                return Err(Error::Degenerate {
                    alpha_tilde: w.alpha,
                    denominator: den,
                });
            }
            Ok((2.0 * w.alpha + 1.0) * (j * j / den) * y_squared_beta(w.q, w.beta))
        })
    })?;
    Ok(CrossSectionValue::from_sum(
        statistics,
        ka,
        out.value,
        out.channels,
        out.residual,
    ))
}

/// Differential cross section in units of 1/k²: |f|², or |f(θ,φ) ± f(π−θ,φ+π)|²
/// for bosons (+) and fermions (−), which require equatorial incidence.
#[allow(clippy::too_many_arguments)]
pub fn differential_cross_section<M: ScattererModel + ?Sized>(
    model: &M,
    ka: f64,
    mu0: FluxNumber,
    statistics: Statistics,
    incident: IncidentDirection,
    theta: f64,
    phi: f64,
    policy: &TruncationPolicy,
) -> Result<f64> {
    let f = scattering_amplitude(model, ka, mu0, incident, theta, phi, policy)?.value;
    if statistics == Statistics::Distinguishable {
        return Ok(f.norm_sqr());
    }
    if !incident.is_equatorial() {
        return Err(domain(
            "differential_cross_section",
            "identical-particle statistics require equatorial incidence",
        ));
    }
    let g = scattering_amplitude(
        model,
        ka,
        mu0,
        incident,
        std::f64::consts::PI - theta,
        phi + std::f64::consts::PI,
        policy,
    )?
    .value;
    Ok(match statistics {
        Statistics::Boson => (f + g).norm_sqr(),
        _ => (f - g).norm_sqr(),
    })
}

/// Σ_l (2l+1) j_l²/(j_l² + n_l²), the flux-free hard sphere.
pub fn flux_free_total(ka: f64, policy: &TruncationPolicy) -> Result<CrossSectionValue> {
    check_ka("flux_free_total", ka)?;
    policy.validate()?;
    let mut terms = Vec::new();
    let mut running = 0.0;
    let mut below = 0;
    let mut residual = f64::INFINITY;
    for l in 0..=policy.q_max {
        let a = l as f64;
        let j = spherical_j(a, ka)?;
        let n = spherical_n(a, ka)?;
        let t = if n.is_finite() {
            (2.0 * a + 1.0) * j * j / (j * j + n * n)
        } else {
            0.0
        };
        terms.push(t);
        running += t;
        residual = if t == 0.0 { 0.0 } else { t / running };
        if a > ka && residual <= policy.rel_tol {
            below += 1;
        } else {
            below = 0;
        }
        if below >= policy.consecutive_below {
            let sum = crate::summation::pairwise_sum(&terms);
            return Ok(CrossSectionValue::from_sum(
                Statistics::Distinguishable,
                ka,
                sum,
                terms.len(),
                residual,
            ));
        }
    }
    Err(Error::NotConverged {
        partial: num_complex::Complex64::new(crate::summation::pairwise_sum(&terms), 0.0),
        channels: terms.len(),
        residual,
    })
}
