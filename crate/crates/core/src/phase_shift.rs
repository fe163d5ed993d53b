//! Scatterer models and the hard-sphere phase shift.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;

use crate::error::{domain, Result};
use crate::specfun::{jy_unchecked, spherical_j, spherical_n};

/// What a model reports for one channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ChannelResponse {
    /// A phase shift δ, to be inserted into the flux-dressed channel factor.
    PhaseShift(f64),
    /// The already-dressed channel factor T, satisfying Im T = |T|².
    Amplitude(Complex64),
}

/// A short-range scatterer, seen through its phase shifts δ_α̃(ka).
pub trait ScattererModel: Sync {
    /// δ in (−π/2, π/2].
    fn phase_shift(&self, alpha_tilde: f64, ka: f64) -> Result<f64>;

    /// Channel data used by the amplitude and cross-section sums.
    fn channel_response(&self, alpha_tilde: f64, ka: f64) -> Result<ChannelResponse> {
        self.phase_shift(alpha_tilde, ka)
            .map(ChannelResponse::PhaseShift)
    }
}

impl<M: ScattererModel + ?Sized> ScattererModel for &M {
    fn phase_shift(&self, alpha_tilde: f64, ka: f64) -> Result<f64> {
        (**self).phase_shift(alpha_tilde, ka)
    }

    fn channel_response(&self, alpha_tilde: f64, ka: f64) -> Result<ChannelResponse> {
        (**self).channel_response(alpha_tilde, ka)
    }
}

fn check_args(op: &'static str, alpha_tilde: f64, ka: f64) -> Result<()> {
    if !ka.is_finite() || ka <= 0.0 {
        return Err(domain(op, format!("ka = {ka} must be positive")));
    }
    if !alpha_tilde.is_finite() || alpha_tilde < 0.0 {
        return Err(domain(op, format!("alpha~ = {alpha_tilde} must be >= 0")));
    }
    Ok(())
}

/// tan δ = j_α̃(ka) / n_α̃(ka), with n in the flux-shifted convention.
/// Returns π/2 where n vanishes identically (half-integer α̃).
pub fn hard_sphere_phase_shift(alpha_tilde: f64, ka: f64) -> Result<f64> {
    check_args("hard_sphere_phase_shift", alpha_tilde, ka)?;
    let j = spherical_j(alpha_tilde, ka)?;
    let n = spherical_n(alpha_tilde, ka)?;
    if n == 0.0 {
        return Ok(FRAC_PI_2);
    }
    Ok((j / n).atan())
}

/// Impenetrable sphere of radius a; only ka enters.
///
/// Its channel factor is reported directly as J/(Y − iJ) at order α̃ + ½,
/// which is the flux-dressed factor with the removable singularity at
/// half-integer α̃ taken out.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct HardSphere;

impl HardSphere {
    /// (J_{α̃+½}(ka), Y_{α̃+½}(ka)).
    pub(crate) fn jy(alpha_tilde: f64, ka: f64) -> (f64, f64) {
        let p = jy_unchecked(alpha_tilde + 0.5, ka);
        (p.j, p.y)
    }

    pub(crate) fn transition(alpha_tilde: f64, ka: f64) -> Complex64 {
        let (j, y) = Self::jy(alpha_tilde, ka);
        if !y.is_finite() {
            return Complex64::new(0.0, 0.0);
        }
        let d = j * j + y * y;
        Complex64::new(j * y / d, j * j / d)
    }
}

impl ScattererModel for HardSphere {
    fn phase_shift(&self, alpha_tilde: f64, ka: f64) -> Result<f64> {
        hard_sphere_phase_shift(alpha_tilde, ka)
    }

    fn channel_response(&self, alpha_tilde: f64, ka: f64) -> Result<ChannelResponse> {
        check_args("HardSphere", alpha_tilde, ka)?;
        Ok(ChannelResponse::Amplitude(Self::transition(
            alpha_tilde,
            ka,
        )))
    }
}

/// Forces the literal phase-shift route for a model that overrides
/// [`ScattererModel::channel_response`].
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct PhaseShiftPath<M>(pub M);

impl<M: ScattererModel> ScattererModel for PhaseShiftPath<M> {
    fn phase_shift(&self, alpha_tilde: f64, ka: f64) -> Result<f64> {
        self.0.phase_shift(alpha_tilde, ka)
    }
}
