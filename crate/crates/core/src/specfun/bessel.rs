//! Real-order Bessel functions of the first and second kind.
//!
//! `J_ν` and `Y_ν` are evaluated together for ν ≥ 0, x > 0 with Steed's
//! method: the continued fraction CF1 gives J'_ν/J_ν, downward recurrence
//! carries the (unnormalised) solution to a small order μ, and the pair
//! (J_μ, Y_μ) is fixed by Temme's series (x < 2) or the complex continued
//! fraction CF2 (x ≥ 2) together with the Wronskian. Y is then recurred
//! upward, which is stable. Negative orders go through the reflection
//! formulas with exact `sin_pi`/`cos_pi`, so integer orders need no special
//! treatment.
//!
//! The spherical pair follows the scattering convention used throughout the
//! crate: `j_α(z) = √(π/2z) J_{α+1/2}(z)` and
//! `n_α(z) = cos((α+1)π) √(π/2z) J_{−α−1/2}(z)`. For integer α the latter is
//! the textbook Neumann function; for half-integer α it vanishes identically.

use std::f64::consts::PI;

use super::gamma::{ln_gamma_unchecked, rgamma_1p};
use super::trig::{cos_pi, sin_pi};
use crate::error::{domain, Result};

const EPS: f64 = 1e-16;
const FPMIN: f64 = 1e-300;
const RESCALE: f64 = 1e250;
const MAXIT: usize = 1_000_000;
const TEMME_XMAX: f64 = 2.0;

/// J_ν, Y_ν and their derivatives at one (ν, x).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselPair {
    pub j: f64,
    pub y: f64,
    pub jp: f64,
    pub yp: f64,
}

/// Temme's auxiliary gamma combinations for |μ| ≤ 1/2:
/// (Γ₁, Γ₂, 1/Γ(1+μ), 1/Γ(1−μ)).
fn temme_gammas(mu: f64) -> (f64, f64, f64, f64) {
    use super::gamma::RGAMMA1P;
    let gampl = rgamma_1p(mu);
    let gammi = rgamma_1p(-mu);
    let mu2 = mu * mu;
    // Γ₂ = even part, Γ₁ = -(odd part)/μ, both summed without cancellation.
    let mut gam2 = 0.0;
    let mut gam1 = 0.0;
    let mut p = 1.0;
    for k in (0..RGAMMA1P.len()).step_by(2) {
        gam2 += RGAMMA1P[k] * p;
        if k + 1 < RGAMMA1P.len() {
            gam1 -= RGAMMA1P[k + 1] * p;
        }
        p *= mu2;
    }
    (gam1, gam2, gampl, gammi)
}

/// J_ν, Y_ν, J'_ν, Y'_ν for ν ≥ 0 and x > 0.
///
/// Y overflows to −∞ (and Y' to +∞) deep in the non-oscillatory region; J
/// underflows to 0 there.
pub fn bessel_jy(nu: f64, x: f64) -> Result<BesselPair> {
    if !nu.is_finite() || !x.is_finite() || nu < 0.0 || x <= 0.0 {
        return Err(domain(
            "bessel_jy",
            format!("need finite nu >= 0 and x > 0, got nu = {nu}, x = {x}"),
        ));
    }
    Ok(jy_unchecked(nu, x))
}

pub(crate) fn jy_unchecked(nu: f64, x: f64) -> BesselPair {
    let nl = if x < TEMME_XMAX {
        (nu + 0.5).floor() as usize
    } else {
        (nu - x + 1.5).floor().max(0.0) as usize
    };
    let xmu = nu - nl as f64;
    let xmu2 = xmu * xmu;
    let xi = 1.0 / x;
    let xi2 = 2.0 * xi;
    let w = xi2 / PI;

    // CF1: h = J'_ν / J_ν, with isign tracking the sign of J_ν.
    let mut isign = 1.0;
    let mut h = (nu * xi).max(FPMIN);
    let mut b = xi2 * nu;
    let mut d = 0.0;
    let mut c = h;
    for _ in 0..MAXIT {
        b += xi2;
        d = b - d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = b - 1.0 / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        let del = c * d;
        h *= del;
        if d < 0.0 {
            isign = -isign;
        }
        if (del - 1.0).abs() < EPS {
            break;
        }
    }

    // Downward recurrence from ν to μ = ν - nl.
    let mut rjl = isign;
    let mut rjpl = h * rjl;
    let mut rjl1 = rjl;
    let mut rjp1 = rjpl;
    for l in (1..=nl).rev() {
        let order = xmu + l as f64;
        let rjtemp = order * xi * rjl + rjpl;
        rjpl = (order - 1.0) * xi * rjtemp - rjl;
        rjl = rjtemp;
        if rjl.abs() > RESCALE {
            rjl /= RESCALE;
            rjpl /= RESCALE;
            rjl1 /= RESCALE;
            rjp1 /= RESCALE;
        }
    }
    if rjl == 0.0 {
        rjl = EPS;
    }
    let f = rjpl / rjl;

    let (rjmu, rymu, ry1) = if x < TEMME_XMAX {
        let x2 = 0.5 * x;
        let pimu = PI * xmu;
        let fact = if pimu.abs() < EPS {
            1.0
        } else {
            pimu / pimu.sin()
        };
        let d = -x2.ln();
        let e = xmu * d;
        let fact2 = if e.abs() < EPS { 1.0 } else { e.sinh() / e };
        let (gam1, gam2, gampl, gammi) = temme_gammas(xmu);
        let mut ff = 2.0 / PI * fact * (gam1 * e.cosh() + gam2 * fact2 * d);
        let e = e.exp();
        let mut p = e / (gampl * PI);
        let mut q = 1.0 / (e * PI * gammi);
        let pimu2 = 0.5 * pimu;
        let fact3 = if pimu2.abs() < EPS {
            1.0
        } else {
            pimu2.sin() / pimu2
        };
        let r = PI * pimu2 * fact3 * fact3;
        let mut c = 1.0;
        let d = -x2 * x2;
        let mut sum = ff + r * q;
        let mut sum1 = p;
        for i in 1..MAXIT {
            let fi = i as f64;
            ff = (fi * ff + p + q) / (fi * fi - xmu2);
            c *= d / fi;
            p /= fi - xmu;
            q /= fi + xmu;
            let del = c * (ff + r * q);
            sum += del;
            let del1 = c * p - fi * del;
            sum1 += del1;
            if del.abs() < (1.0 + sum.abs()) * EPS {
                break;
            }
        }
        let rymu = -sum;
        let ry1 = -sum1 * xi2;
        let rymup = xmu * xi * rymu - ry1;
        let rjmu = w / (rymup - f * rymu);
        (rjmu, rymu, ry1)
    } else {
        let mut a = 0.25 - xmu2;
        let mut p = -0.5 * xi;
        let mut q = 1.0;
        let br = 2.0 * x;
        let mut bi = 2.0;
        let mut fact = a * xi / (p * p + q * q);
        let mut cr = br + q * fact;
        let mut ci = bi + p * fact;
        let mut den = br * br + bi * bi;
        let mut dr = br / den;
        let mut di = -bi / den;
        let mut dlr = cr * dr - ci * di;
        let mut dli = cr * di + ci * dr;
        let mut temp = p * dlr - q * dli;
        q = p * dli + q * dlr;
        p = temp;
        for i in 2..MAXIT {
            a += 2.0 * (i - 1) as f64;
            bi += 2.0;
            dr = a * dr + br;
            di = a * di + bi;
            if dr.abs() + di.abs() < FPMIN {
                dr = FPMIN;
            }
            fact = a / (cr * cr + ci * ci);
            cr = br + cr * fact;
            ci = bi - ci * fact;
            if cr.abs() + ci.abs() < FPMIN {
                cr = FPMIN;
            }
            den = dr * dr + di * di;
            dr /= den;
            di /= -den;
            dlr = cr * dr - ci * di;
            dli = cr * di + ci * dr;
            temp = p * dlr - q * dli;
            q = p * dli + q * dlr;
            p = temp;
            if (dlr - 1.0).abs() + dli.abs() < EPS {
                break;
            }
        }
        let gam = (p - f) / q;
        let rjmu = (w / ((p - f) * gam + q)).sqrt().copysign(rjl);
        let rymu = rjmu * gam;
        let rymup = rymu * (p + q / gam);
        let ry1 = xmu * xi * rymu - rymup;
        (rjmu, rymu, ry1)
    };

    let scale = rjmu / rjl;
    let j = rjl1 * scale;
    let jp = rjp1 * scale;

    let (mut ylo, mut yhi) = (rymu, ry1);
    for i in 1..=nl {
        let next = (xmu + i as f64) * xi2 * yhi - ylo;
        ylo = yhi;
        yhi = next;
        if !yhi.is_finite() {
            return BesselPair {
                j,
                y: f64::NEG_INFINITY,
                jp,
                yp: f64::INFINITY,
            };
        }
    }
    BesselPair {
        j,
        y: ylo,
        jp,
        yp: nu * xi * ylo - yhi,
    }
}

/// a·J − b·Y with the convention 0·(±∞) = 0 for the reflection formulas.
fn combine(a: f64, j: f64, b: f64, y: f64) -> f64 {
    let bj = if a == 0.0 { 0.0 } else { a * j };
    let by = if b == 0.0 { 0.0 } else { b * y };
    bj - by
}

/// Bessel function of the first kind J_ν(z) for real ν and z ≥ 0.
pub fn bessel_j(nu: f64, z: f64) -> Result<f64> {
    if !nu.is_finite() || !z.is_finite() || z < 0.0 {
        return Err(domain(
            "bessel_j",
            format!("need finite nu and z >= 0, got nu = {nu}, z = {z}"),
        ));
    }
    if z == 0.0 {
        return if nu == 0.0 {
            Ok(1.0)
        } else if nu > 0.0 || nu.fract() == 0.0 {
            Ok(0.0)
        } else {
            Err(domain("bessel_j", format!("J_{nu}(0) is unbounded")))
        };
    }
    if nu >= 0.0 {
        return Ok(jy_unchecked(nu, z).j);
    }
    let a = -nu;
    let p = jy_unchecked(a, z);
    Ok(combine(cos_pi(a), p.j, sin_pi(a), p.y))
}

/// Bessel function of the second kind Y_ν(z) for real ν and z > 0.
pub fn bessel_y(nu: f64, z: f64) -> Result<f64> {
    if !nu.is_finite() || !z.is_finite() || z <= 0.0 {
        return Err(domain(
            "bessel_y",
            format!("need finite nu and z > 0, got nu = {nu}, z = {z}"),
        ));
    }
    if nu >= 0.0 {
        return Ok(jy_unchecked(nu, z).y);
    }
    let a = -nu;
    let p = jy_unchecked(a, z);
    // Y_{-a} = sin(aπ) J_a + cos(aπ) Y_a
    Ok(combine(sin_pi(a), p.j, -cos_pi(a), p.y))
}

/// J_{ν}(z) and J_{−ν}(z) for ν ≥ 0 from a single kernel call.
pub(crate) fn bessel_j_pm(nu: f64, z: f64) -> (f64, f64) {
    let p = jy_unchecked(nu, z);
    (p.j, combine(cos_pi(nu), p.j, sin_pi(nu), p.y))
}

fn check_spherical(op: &'static str, alpha: f64, z: f64) -> Result<()> {
    if !alpha.is_finite() || alpha < 0.0 {
        return Err(domain(
            op,
            format!("order alpha = {alpha} must be finite and >= 0"),
        ));
    }
    if !z.is_finite() || z <= 0.0 {
        return Err(domain(op, format!("argument z = {z} must be positive")));
    }
    Ok(())
}

/// Spherical Bessel function j_α(z) = √(π/2z) J_{α+1/2}(z) for real α ≥ 0.
pub fn spherical_j(alpha: f64, z: f64) -> Result<f64> {
    check_spherical("spherical_j", alpha, z)?;
    if z < 1e-8 {
        // Leading two terms of the ascending series.
        let nu = alpha + 0.5;
        let lead =
            (alpha * (0.5 * z).ln() + 0.5 * PI.ln() - ln_gamma_unchecked(nu + 1.0)).exp() * 0.5;
        return Ok(lead * (1.0 - 0.25 * z * z / (nu + 1.0)));
    }
    Ok((PI / (2.0 * z)).sqrt() * jy_unchecked(alpha + 0.5, z).j)
}

/// Second spherical solution in the scattering convention,
/// n_α(z) = cos((α+1)π) √(π/2z) J_{−α−1/2}(z).
pub fn spherical_n(alpha: f64, z: f64) -> Result<f64> {
    check_spherical("spherical_n", alpha, z)?;
    let prefactor = cos_pi(alpha + 1.0);
    if prefactor == 0.0 {
        return Ok(0.0);
    }
    let (_, jm) = bessel_j_pm(alpha + 0.5, z);
    Ok(prefactor * (PI / (2.0 * z)).sqrt() * jm)
}
