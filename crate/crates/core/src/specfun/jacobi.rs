//! Symmetric Jacobi polynomials P_q^{(β,β)}, their Gegenbauer form, and the
//! associated-Legendre bridge used to generalise spherical harmonics to real
//! flux-shifted orders.

use super::gamma::ln_gamma_unchecked;
use crate::error::{domain, Result};

/// Successive values P_0^{(β,β)}(z), P_1^{(β,β)}(z), ... from the three-term
/// recurrence
///
/// n(n+2β) P_n = (n+β) [ (2n+2β−1) z P_{n−1} − (n+β−1) P_{n−2} ].
#[derive(Debug, Clone)]
pub struct JacobiSeq {
    beta: f64,
    z: f64,
    n: u32,
    prev: f64,
    cur: f64,
}

impl JacobiSeq {
    pub fn new(beta: f64, z: f64) -> Self {
        Self {
            beta,
            z,
            n: 0,
            prev: 0.0,
            cur: 1.0,
        }
    }
}

impl Iterator for JacobiSeq {
    type Item = f64;

    fn next(&mut self) -> Option<f64> {
        let out = self.cur;
        let n = (self.n + 1) as f64;
        let s = n + self.beta;
        let next = s * ((2.0 * s - 1.0) * self.z * self.cur - (s - 1.0) * self.prev)
            / (n * (n + 2.0 * self.beta));
        self.prev = self.cur;
        self.cur = next;
        self.n += 1;
        Some(out)
    }
}

fn check_beta(op: &'static str, beta: f64) -> Result<()> {
    if !beta.is_finite() || beta < 0.0 {
        return Err(domain(op, format!("beta = {beta} must be finite and >= 0")));
    }
    Ok(())
}

/// P_q^{(β,β)}(z) for β ≥ 0 and z ∈ [−1, 1].
pub fn jacobi_symmetric(q: u32, beta: f64, z: f64) -> Result<f64> {
    check_beta("jacobi_symmetric", beta)?;
    if !(-1.0..=1.0).contains(&z) {
        return Err(domain(
            "jacobi_symmetric",
            format!("z = {z} outside [-1, 1]"),
        ));
    }
    Ok(jacobi_unchecked(q, beta, z))
}

pub(crate) fn jacobi_unchecked(q: u32, beta: f64, z: f64) -> f64 {
    JacobiSeq::new(beta, z)
        .nth(q as usize)
        .expect("JacobiSeq is infinite")
}

/// P_{2q̃}^{(β,β)}(0) in closed form, evaluated in log-gamma space:
///
/// (−1)^q̃ Γ(2β+1)Γ(2q̃+β+1)Γ(q̃+β+½) / [Γ(β+1)Γ(2q̃+2β+1)Γ(β+½)Γ(q̃+1)].
pub fn jacobi_at_zero(q_tilde: u32, beta: f64) -> Result<f64> {
    check_beta("jacobi_at_zero", beta)?;
    let qt = q_tilde as f64;
    let lg = ln_gamma_unchecked;
    let log_mag = lg(2.0 * beta + 1.0) + lg(2.0 * qt + beta + 1.0) + lg(qt + beta + 0.5)
        - lg(beta + 1.0)
        - lg(2.0 * qt + 2.0 * beta + 1.0)
        - lg(beta + 0.5)
        - lg(qt + 1.0);
    let sign = if q_tilde.is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok(sign * log_mag.exp())
}

/// Gegenbauer value C_q^{λ}(0): zero for odd q, otherwise
/// (−1)^{q/2} Γ(q/2+λ) / [Γ(λ) Γ(q/2+1)]. Requires λ > 0.
pub fn gegenbauer_at_zero(q: u32, lambda: f64) -> Result<f64> {
    if !lambda.is_finite() || lambda <= 0.0 {
        return Err(domain(
            "gegenbauer_at_zero",
            format!("lambda = {lambda} must be > 0"),
        ));
    }
    if q % 2 == 1 {
        return Ok(0.0);
    }
    let qt = (q / 2) as f64;
    let lg = ln_gamma_unchecked;
    let sign = if (q / 2).is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok(sign * (lg(qt + lambda) - lg(lambda) - lg(qt + 1.0)).exp())
}

/// Factor relating the two normalisations,
/// P_q^{(β,β)} = [Γ(2β+1)Γ(q+β+1) / (Γ(β+1)Γ(q+2β+1))] C_q^{β+½}.
pub fn jacobi_gegenbauer_factor(q: u32, beta: f64) -> Result<f64> {
    check_beta("jacobi_gegenbauer_factor", beta)?;
    let q = q as f64;
    let lg = ln_gamma_unchecked;
    Ok(
        (lg(2.0 * beta + 1.0) + lg(q + beta + 1.0) - lg(beta + 1.0) - lg(q + 2.0 * beta + 1.0))
            .exp(),
    )
}

/// Associated Legendre function P_l^m(cos θ) (Condon–Shortley phase) for
/// 0 ≤ m ≤ l, expressed through the symmetric Jacobi polynomial:
///
/// P_l^m(cos θ) = (−1)^m [Γ(l+m+1)/Γ(l+1)] (cos(θ/2) sin(θ/2))^m P_{l−m}^{(m,m)}(cos θ).
pub fn legendre_via_jacobi(l: u32, m: u32, theta: f64) -> Result<f64> {
    if m > l {
        return Err(domain(
            "legendre_via_jacobi",
            format!("m = {m} exceeds l = {l}"),
        ));
    }
    let (l_f, m_f) = (l as f64, m as f64);
    let ratio = (ln_gamma_unchecked(l_f + m_f + 1.0) - ln_gamma_unchecked(l_f + 1.0)).exp();
    let half = (0.5 * theta).cos() * (0.5 * theta).sin();
    let sign = if m.is_multiple_of(2) { 1.0 } else { -1.0 };
    let z = theta.cos().clamp(-1.0, 1.0);
    Ok(sign * ratio * half.powi(m as i32) * jacobi_unchecked(l - m, m_f, z))
}
