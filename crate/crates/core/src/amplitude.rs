//! Scattering amplitude, the flux-dressed plane wave and the optical theorem.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::channels::{AngularColumn, FluxNumber, TruncationPolicy};
use crate::cross_section::{total_cross_section, Statistics};
use crate::error::{domain, Error, Result, DEGENERACY_THRESHOLD};
use crate::phase_shift::{ChannelResponse, ScattererModel};
use crate::specfun::{cos_pi, sin_pi, spherical_j};
use crate::summation::{sum_channels, Parity, PolarStep, SumSetup};

/// Direction (θ′, φ′) of the incoming momentum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IncidentDirection {
    pub theta_p: f64,
    pub phi_p: f64,
}

impl IncidentDirection {
    pub fn new(theta_p: f64, phi_p: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&theta_p) || !phi_p.is_finite() {
            return Err(domain(
                "IncidentDirection",
                format!("({theta_p}, {phi_p}) is not a direction"),
            ));
        }
        Ok(Self { theta_p, phi_p })
    }

    /// θ′ = π/2, φ′ = 0: perpendicular to the flux line.
    pub fn equatorial() -> Self {
        Self {
            theta_p: FRAC_PI_2,
            phi_p: 0.0,
        }
    }

    /// Along the flux line.
    pub fn polar() -> Self {
        Self {
            theta_p: 0.0,
            phi_p: 0.0,
        }
    }

    pub fn is_equatorial(&self) -> bool {
        self.theta_p == FRAC_PI_2 && self.phi_p == 0.0
    }
}

/// A channel sum result in units of 1/k, with convergence data.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AmplitudeValue {
    /// k·f(θ, φ).
    pub value: Complex64,
    pub channels: usize,
    /// Relative weight of the last m-block summed.
    pub residual: f64,
}

/// e^{iδ} sin δ cos²(απ) / (1 − e^{i(δ−απ)} sin δ sin(απ)).
pub fn channel_amplitude_factor(delta: f64, alpha_tilde: f64) -> Result<Complex64> {
    let s = delta.sin();
    let (c, sa) = (cos_pi(alpha_tilde), sin_pi(alpha_tilde));
    let e = Complex64::from_polar(1.0, delta);
    let den = Complex64::new(1.0, 0.0) - e * Complex64::new(c, -sa) * (s * sa);
    if den.norm() < DEGENERACY_THRESHOLD {
        return Err(Error::Degenerate {
            alpha_tilde,
            denominator: den.norm(),
        });
    }
    Ok(e * (s * c * c) / den)
}

pub(crate) fn channel_factor<M: ScattererModel + ?Sized>(
    model: &M,
    alpha: f64,
    ka: f64,
) -> Result<Complex64> {
    match model.channel_response(alpha, ka)? {
        ChannelResponse::PhaseShift(d) => channel_amplitude_factor(d, alpha),
        ChannelResponse::Amplitude(t) => Ok(t),
    }
}

fn check_point(op: &'static str, theta: f64, phi: f64) -> Result<()> {
    if !(0.0..=PI).contains(&theta) || !phi.is_finite() {
        return Err(domain(
            op,
            format!("(theta, phi) = ({theta}, {phi}) out of range"),
        ));
    }
    Ok(())
}

fn check_ka(op: &'static str, ka: f64) -> Result<()> {
    if !ka.is_finite() || ka <= 0.0 {
        return Err(domain(op, format!("ka = {ka} must be positive")));
    }
    Ok(())
}

/// Σ_q Σ_m (2α+1) w(α) 𝒴*_qm(θ′, φ′) 𝒴_qm(θ, φ).
fn angular_sum<W>(
    mu0: FluxNumber,
    incident: IncidentDirection,
    theta: f64,
    phi: f64,
    protect: f64,
    policy: TruncationPolicy,
    weight: W,
) -> Result<AmplitudeValue>
where
    W: Fn(f64) -> Result<Complex64>,
{
    let setup = SumSetup {
        mu0,
        policy,
        step: PolarStep::All,
        parity: Parity::Any,
        protect,
    };
    let weight = &weight;
    let out = sum_channels(&setup, |m, beta| {
        let phase = Complex64::from_polar(1.0, m as f64 * (phi - incident.phi_p));
        let mut inc = AngularColumn::new(beta, incident.theta_p);
        let mut out = AngularColumn::new(beta, theta);
        Ok(move |w: crate::summation::Wave| {
            let y = inc.next().unwrap_or(0.0) * out.next().unwrap_or(0.0);
            if y == 0.0 {
                return Ok(Complex64::new(0.0, 0.0));
            }
            Ok(weight(w.alpha)? * ((2.0 * w.alpha + 1.0) * y) * phase)
        })
    })?;
    Ok(AmplitudeValue {
        value: out.value,
        channels: out.channels,
        residual: out.residual,
    })
}

/// k·f(θ, φ) for a model at wavenumber-radius product ka.
pub fn scattering_amplitude<M: ScattererModel + ?Sized>(
    model: &M,
    ka: f64,
    mu0: FluxNumber,
    incident: IncidentDirection,
    theta: f64,
    phi: f64,
    policy: &TruncationPolicy,
) -> Result<AmplitudeValue> {
    check_ka("scattering_amplitude", ka)?;
    check_point("scattering_amplitude", theta, phi)?;
    angular_sum(mu0, incident, theta, phi, ka, *policy, |alpha| {
        channel_factor(model, alpha, ka)
    })
}

/// The flux-dressed plane wave Σ (2α+1) i^α j_α(kr) 𝒴*(θ′,φ′) 𝒴(θ,φ),
/// with r in units of a (so kr = ka·r) and i^α = e^{iαπ/2}.
#[allow(clippy::too_many_arguments)]
pub fn modified_plane_wave(
    ka: f64,
    mu0: FluxNumber,
    incident: IncidentDirection,
    r: f64,
    theta: f64,
    phi: f64,
    policy: &TruncationPolicy,
) -> Result<AmplitudeValue> {
    check_ka("modified_plane_wave", ka)?;
    check_point("modified_plane_wave", theta, phi)?;
    if !r.is_finite() || r < 0.0 {
        return Err(domain(
            "modified_plane_wave",
            format!("r = {r} must be >= 0"),
        ));
    }
    let kr = ka * r;
    angular_sum(mu0, incident, theta, phi, kr, *policy, |alpha| {
        let j = if kr == 0.0 {
            if alpha == 0.0 {
                1.0
            } else {
                0.0
            }
        } else {
            spherical_j(alpha, kr)?
        };
        Ok(Complex64::new(cos_pi(0.5 * alpha), sin_pi(0.5 * alpha)) * j)
    })
}

/// Outcome of the optical-theorem check at equatorial incidence.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OpticalCheck {
    /// |σk²/4π − Im kf(π/2, 0)|, divided by σk²/4π when `relative`.
    pub residual: f64,
    /// False when the total cross section vanishes and the residual is absolute.
    pub relative: bool,
    pub sigma_k2_over_4pi: f64,
    pub forward_im: f64,
}

/// Compares σ_t with (4π/k) Im f(π/2, 0).
pub fn optical_theorem_residual<M: ScattererModel + ?Sized>(
    model: &M,
    ka: f64,
    mu0: FluxNumber,
    policy: &TruncationPolicy,
) -> Result<OpticalCheck> {
    let sigma = total_cross_section(model, ka, mu0, Statistics::Distinguishable, policy)?;
    let f = scattering_amplitude(
        model,
        ka,
        mu0,
        IncidentDirection::equatorial(),
        FRAC_PI_2,
        0.0,
        policy,
    )?;
    let s = sigma.sigma_k2_over_4pi;
    let diff = (s - f.value.im).abs();
    let relative = s != 0.0;
    Ok(OpticalCheck {
        residual: if relative { diff / s } else { diff },
        relative,
        sigma_k2_over_4pi: s,
        forward_im: f.value.im,
    })
}
