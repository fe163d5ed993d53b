//! Flux-shifted angular channels and the generalized angular functions 𝒴_qm.

use std::cmp::Ordering;
use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::specfun::{ln_gamma_unchecked as lg, JacobiSeq};

/// Dimensionless flux μ₀ = −Φ/Φ₀.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FluxNumber(f64);

impl FluxNumber {
    pub fn new(mu0: f64) -> Result<Self> {
        if !mu0.is_finite() {
            return Err(domain("FluxNumber", format!("mu0 = {mu0} is not finite")));
        }
        Ok(Self(mu0))
    }

    pub fn mu0(self) -> f64 {
        self.0
    }

    /// β = |m + μ₀|.
    pub fn beta(self, m: i64) -> f64 {
        (m as f64 + self.0).abs()
    }
}

impl TryFrom<f64> for FluxNumber {
    type Error = crate::Error;

    fn try_from(mu0: f64) -> Result<Self> {
        Self::new(mu0)
    }
}

/// One equatorial channel (q̃, m).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Channel {
    pub q_tilde: u32,
    pub m: i64,
    pub beta: f64,
    pub alpha_tilde: f64,
}

pub fn make_channel(q_tilde: u32, m: i64, mu0: FluxNumber) -> Channel {
    let beta = mu0.beta(m);
    Channel {
        q_tilde,
        m,
        beta,
        alpha_tilde: 2.0 * q_tilde as f64 + beta,
    }
}

/// Limits and stopping rule for the infinite channel sums.
///
/// `q_max` caps the polar index (q̃ for equatorial sums, q otherwise) and
/// `m_max` caps β = |m + μ₀| of the azimuthal blocks. A run of
/// `consecutive_below` terms (or blocks) each weighing less than `rel_tol`
/// of the running sum ends the corresponding loop; channels with order at
/// or below ka never count towards that run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TruncationPolicy {
    pub q_max: u32,
    pub m_max: u32,
    pub rel_tol: f64,
    pub consecutive_below: u32,
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        Self {
            q_max: 80,
            m_max: 120,
            rel_tol: 1e-12,
            consecutive_below: 3,
        }
    }
}

impl TruncationPolicy {
    pub fn validate(&self) -> Result<()> {
        if self.q_max < 1 || self.m_max < 1 {
            return Err(domain("TruncationPolicy", "q_max and m_max must be >= 1"));
        }
        if !(self.rel_tol > 0.0 && self.rel_tol < 1.0) {
            return Err(domain(
                "TruncationPolicy",
                format!("rel_tol = {} must lie in (0, 1)", self.rel_tol),
            ));
        }
        if self.consecutive_below < 1 {
            return Err(domain("TruncationPolicy", "consecutive_below must be >= 1"));
        }
        Ok(())
    }

    /// The same policy with both caps doubled.
    pub fn doubled(self) -> Self {
        Self {
            q_max: self.q_max * 2,
            m_max: self.m_max * 2,
            ..self
        }
    }
}

/// Enumeration order: increasing order, then |m|, then m (negative first).
pub(crate) fn channel_order(a: (f64, i64), b: (f64, i64)) -> Ordering {
    a.0.total_cmp(&b.0)
        .then(a.1.unsigned_abs().cmp(&b.1.unsigned_abs()))
        .then(a.1.cmp(&b.1))
}

/// Azimuthal numbers m as (m, β) in increasing β, ties as in [`channel_order`].
#[derive(Debug, Clone)]
pub struct MBlocks {
    mu0: FluxNumber,
    up: i64,
    down: i64,
}

impl MBlocks {
    pub fn new(mu0: FluxNumber) -> Self {
        let up = (-mu0.mu0()).ceil() as i64;
        Self {
            mu0,
            up,
            down: up - 1,
        }
    }
}

impl Iterator for MBlocks {
    type Item = (i64, f64);

    fn next(&mut self) -> Option<(i64, f64)> {
        let bu = self.mu0.beta(self.up);
        let bd = self.mu0.beta(self.down);
        if channel_order((bd, self.down), (bu, self.up)) == Ordering::Less {
            self.down -= 1;
            Some((self.down + 1, bd))
        } else {
            self.up += 1;
            Some((self.up - 1, bu))
        }
    }
}

/// All equatorial channels with α̃ ≤ `alpha_max`, in enumeration order.
pub fn enumerate_channels(mu0: FluxNumber, alpha_max: f64) -> Vec<Channel> {
    let mut out = Vec::new();
    for (m, beta) in MBlocks::new(mu0) {
        if beta > alpha_max {
            break;
        }
        let mut q_tilde = 0;
        loop {
            let ch = make_channel(q_tilde, m, mu0);
            if ch.alpha_tilde > alpha_max {
                break;
            }
            out.push(ch);
            q_tilde += 1;
        }
    }
    out.sort_by(|a, b| channel_order((a.alpha_tilde, a.m), (b.alpha_tilde, b.m)));
    out
}

fn check_theta(op: &'static str, theta: f64) -> Result<()> {
    if !(0.0..=PI).contains(&theta) {
        return Err(domain(op, format!("theta = {theta} outside [0, pi]")));
    }
    Ok(())
}

/// cos θ with an exact zero on the equator.
fn cos_theta(theta: f64) -> f64 {
    if theta == FRAC_PI_2 {
        0.0
    } else {
        theta.cos()
    }
}

/// (cos(θ/2) sin(θ/2))^β with 0⁰ = 1 and exact zeros at the poles.
fn half_sin_pow(theta: f64, beta: f64) -> f64 {
    if beta == 0.0 {
        1.0
    } else if theta == 0.0 || theta == PI {
        0.0
    } else {
        (0.5 * theta.sin()).powf(beta)
    }
}

/// √(Γ(q+1)Γ(q+2β+1)) / Γ(q+β+1).
fn angular_norm(q: u32, beta: f64) -> f64 {
    let q = q as f64;
    (0.5 * (lg(q + 1.0) + lg(q + 2.0 * beta + 1.0)) - lg(q + beta + 1.0)).exp()
}

/// The real θ-part of 𝒴_qm for q = 0, 1, 2, ... at fixed β.
pub(crate) struct AngularColumn {
    beta: f64,
    h: f64,
    seq: JacobiSeq,
    q: u32,
}

impl AngularColumn {
    pub(crate) fn new(beta: f64, theta: f64) -> Self {
        Self {
            beta,
            h: half_sin_pow(theta, beta),
            seq: JacobiSeq::new(beta, cos_theta(theta).clamp(-1.0, 1.0)),
            q: 0,
        }
    }
}

impl Iterator for AngularColumn {
    type Item = f64;

    fn next(&mut self) -> Option<f64> {
        let p = self.seq.next()?;
        let v = if self.h == 0.0 {
            0.0
        } else {
            angular_norm(self.q, self.beta) * self.h * p
        };
        self.q += 1;
        Some(v)
    }
}

/// 𝒴_qm(θ, φ) = √(Γ(q+1)Γ(q+2β+1))/Γ(q+β+1) (cos(θ/2) sin(θ/2))^β P_q^{(β,β)}(cos θ) e^{imφ}.
pub fn angular_y(q: u32, m: i64, mu0: FluxNumber, theta: f64, phi: f64) -> Result<Complex64> {
    check_theta("angular_y", theta)?;
    if !phi.is_finite() {
        return Err(domain("angular_y", format!("phi = {phi} is not finite")));
    }
    let beta = mu0.beta(m);
    let real = AngularColumn::new(beta, theta)
        .nth(q as usize)
        .expect("AngularColumn is infinite");
    Ok(real * Complex64::from_polar(1.0, m as f64 * phi))
}

/// 𝒴²_q̃m at the equator as a function of β.
pub(crate) fn y_squared_beta(q_tilde: u32, beta: f64) -> f64 {
    let qt = q_tilde as f64;
    (lg(qt + 0.5) + lg(qt + beta + 0.5) - lg(qt + beta + 1.0) - lg(qt + 1.0)).exp() / PI
}

/// 𝒴_{2q̃,m}(π/2, 0) = (−1)^q̃ π^{−1/2} √(Γ(q̃+½)Γ(q̃+β+½) / (Γ(q̃+β+1)Γ(q̃+1))).
pub fn angular_y_equator(q_tilde: u32, m: i64, mu0: FluxNumber) -> f64 {
    let mag = y_squared_beta(q_tilde, mu0.beta(m)).sqrt();
    if q_tilde.is_multiple_of(2) {
        mag
    } else {
        -mag
    }
}

/// Square of [`angular_y_equator`], computed directly.
pub fn y_squared(q_tilde: u32, m: i64, mu0: FluxNumber) -> f64 {
    y_squared_beta(q_tilde, mu0.beta(m))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mu(x: f64) -> FluxNumber {
        FluxNumber::new(x).unwrap()
    }

    #[test]
    fn make_channel_examples() {
        let c = make_channel(0, 0, mu(0.0));
        assert_eq!((c.beta, c.alpha_tilde), (0.0, 0.0));
        let c = make_channel(0, 0, mu(0.5));
        assert_eq!((c.beta, c.alpha_tilde), (0.5, 0.5));
        let c = make_channel(1, -2, mu(0.5));
        assert_eq!((c.beta, c.alpha_tilde), (1.5, 3.5));
    }

    #[test]
    fn flux_must_be_finite() {
        assert!(FluxNumber::new(f64::NAN).is_err());
        assert!(FluxNumber::try_from(f64::INFINITY).is_err());
    }

    #[test]
    fn policy_validation() {
        assert!(TruncationPolicy::default().validate().is_ok());
        let bad = TruncationPolicy {
            rel_tol: 1.0,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
        let bad = TruncationPolicy {
            q_max: 0,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn m_blocks_sorted_by_beta() {
        let got: Vec<_> = MBlocks::new(mu(0.5)).take(6).map(|(m, _)| m).collect();
        assert_eq!(got, vec![0, -1, 1, -2, 2, -3]);
        let got: Vec<_> = MBlocks::new(mu(0.0)).take(5).map(|(m, _)| m).collect();
        assert_eq!(got, vec![0, -1, 1, -2, 2]);
        let got: Vec<_> = MBlocks::new(mu(-1.3)).take(4).collect();
        assert_eq!(got[0].0, 1);
        assert_eq!(got[1].0, 2);
        assert!(got.windows(2).all(|w| w[0].1 <= w[1].1));
    }

    #[test]
    fn enumeration_is_ordered() {
        let chans = enumerate_channels(mu(0.3), 6.0);
        assert!(chans.windows(2).all(|w| channel_order(
            (w[0].alpha_tilde, w[0].m),
            (w[1].alpha_tilde, w[1].m)
        ) == Ordering::Less));
        assert_eq!(chans[0].m, 0);
        assert!(chans.iter().all(|c| c.alpha_tilde <= 6.0));
    }

    #[test]
    fn angular_y_trivial() {
        for &t in &[0.0, 0.4, FRAC_PI_2, 2.9, PI] {
            let y = angular_y(0, 0, mu(0.0), t, 1.7).unwrap();
            assert_eq!(y, Complex64::new(1.0, 0.0));
        }
    }

    #[test]
    fn angular_y_poles_vanish_for_positive_beta() {
        assert_eq!(angular_y(3, 1, mu(0.2), 0.0, 0.0).unwrap().norm(), 0.0);
        assert_eq!(angular_y(2, 0, mu(0.2), PI, 0.0).unwrap().norm(), 0.0);
        assert!(angular_y(0, 0, mu(0.0), 4.0, 0.0).is_err());
    }

    #[test]
    fn equator_cross_evaluation() {
        let a = angular_y(2, 0, mu(0.0), FRAC_PI_2, 0.0).unwrap();
        assert!((a.re - angular_y_equator(1, 0, mu(0.0))).abs() < 1e-15);
        for &m0 in &[0.0, 0.3, 0.5, 1.7] {
            for m in -3..=3 {
                for qt in 0..6 {
                    let full = angular_y(2 * qt, m, mu(m0), FRAC_PI_2, 0.0).unwrap().re;
                    let eq = angular_y_equator(qt, m, mu(m0));
                    assert!((full - eq).abs() < 1e-12 * eq.abs(), "{m0} {m} {qt}");
                }
            }
        }
    }

    #[test]
    fn equator_examples() {
        assert!((angular_y_equator(0, 0, mu(0.0)) - 1.0).abs() < 1e-15);
        assert!((angular_y_equator(0, 1, mu(0.0)) - 0.5f64.sqrt()).abs() < 1e-15);
        assert!((angular_y_equator(1, 0, mu(0.0)) + 0.5).abs() < 1e-15);
        assert!((y_squared(0, 1, mu(0.0)) - 0.5).abs() < 1e-15);
        assert!((y_squared(1, 0, mu(0.0)) - 0.25).abs() < 1e-15);
        for qt in 0..20 {
            let e = angular_y_equator(qt, 2, mu(0.37));
            assert!((e * e - y_squared(qt, 2, mu(0.37))).abs() <= 1e-12 * e * e);
        }
    }

    #[test]
    fn odd_channels_vanish_on_equator() {
        for q in (1..12).step_by(2) {
            assert_eq!(
                angular_y(q, 1, mu(0.4), FRAC_PI_2, 0.3).unwrap().norm(),
                0.0
            );
        }
    }

    #[test]
    fn spherical_harmonic_normalisation() {
        // Y_lm = sqrt((2l+1)/4π) 𝒴 when μ₀ = 0; Y_20 = sqrt(5/16π)(3cos²θ − 1).
        let t: f64 = 0.7;
        let y = angular_y(2, 0, mu(0.0), t, 0.0).unwrap().re;
        let y20 = (5.0 / (16.0 * PI)).sqrt() * (3.0 * t.cos().powi(2) - 1.0);
        assert!(((5.0 / (4.0 * PI)).sqrt() * y - y20).abs() < 1e-14);
    }

    #[test]
    fn equatorial_completeness() {
        // Addition theorem at γ = 0 restricted to the equator:
        // Σ_{|m|≤l, l−|m| even} 𝒴²_{(l−|m|)/2, m} = 1 for μ₀ = 0.
        for l in 0..10i64 {
            let mut s = 0.0;
            for m in -l..=l {
                if (l - m.abs()) % 2 == 0 {
                    s += y_squared(((l - m.abs()) / 2) as u32, m, mu(0.0));
                }
            }
            assert!((s - 1.0).abs() < 1e-13, "l = {l}: {s}");
        }
    }
}
