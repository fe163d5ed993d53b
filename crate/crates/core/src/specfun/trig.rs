//! sin(πx) and cos(πx) with exact zeros and unit values at (half-)integers.
//!
//! Channel orders α̃ = 2q̃ + |m + μ₀| are exactly representable for the flux
//! values used in practice, so `sin_pi(α̃)` is exactly zero at integer α̃ and
//! `cos_pi(α̃)` exactly zero at half-integer α̃. The degeneracy bookkeeping
//! downstream relies on that.

use std::f64::consts::PI;

fn reduce(x: f64) -> f64 {
    let r = x % 2.0;
    if r < 0.0 {
        r + 2.0
    } else {
        r
    }
}

/// sin(πx).
pub fn sin_pi(x: f64) -> f64 {
    if !x.is_finite() {
        return f64::NAN;
    }
    let r = reduce(x);
    if r == 0.0 || r == 1.0 || r == 2.0 {
        0.0
    } else if r == 0.5 {
        1.0
    } else if r == 1.5 {
        -1.0
    } else if r <= 0.25 {
        (PI * r).sin()
    } else if r <= 0.75 {
        (PI * (0.5 - r)).cos()
    } else if r <= 1.25 {
        (PI * (1.0 - r)).sin()
    } else if r <= 1.75 {
        -(PI * (1.5 - r)).cos()
    } else {
        -(PI * (2.0 - r)).sin()
    }
}

/// cos(πx).
pub fn cos_pi(x: f64) -> f64 {
    if !x.is_finite() {
        return f64::NAN;
    }
    let r = reduce(x);
    if r == 0.5 || r == 1.5 {
        0.0
    } else if r == 0.0 || r == 2.0 {
        1.0
    } else if r == 1.0 {
        -1.0
    } else if r <= 0.25 {
        (PI * r).cos()
    } else if r <= 0.75 {
        (PI * (0.5 - r)).sin()
    } else if r <= 1.25 {
        -(PI * (1.0 - r)).cos()
    } else if r <= 1.75 {
        -(PI * (1.5 - r)).sin()
    } else {
        (PI * (2.0 - r)).cos()
    }
}
