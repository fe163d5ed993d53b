//! Adaptive, deterministically ordered channel sums.

use num_complex::Complex64;

use crate::channels::{channel_order, FluxNumber, MBlocks, TruncationPolicy};
use crate::error::{Error, Result};

pub(crate) trait Summand: Copy {
    const ZERO: Self;
    fn plus(self, other: Self) -> Self;
    fn magnitude(self) -> f64;
    fn to_complex(self) -> Complex64;
}

impl Summand for f64 {
    const ZERO: Self = 0.0;
    fn plus(self, other: Self) -> Self {
        self + other
    }
    fn magnitude(self) -> f64 {
        self.abs()
    }
    fn to_complex(self) -> Complex64 {
        Complex64::new(self, 0.0)
    }
}

impl Summand for Complex64 {
    const ZERO: Self = Complex64::new(0.0, 0.0);
    fn plus(self, other: Self) -> Self {
        self + other
    }
    fn magnitude(self) -> f64 {
        self.norm()
    }
    fn to_complex(self) -> Complex64 {
        self
    }
}

/// Pairwise (cascade) summation in slice order.
pub(crate) fn pairwise_sum<T: Summand>(xs: &[T]) -> T {
    if xs.len() <= 8 {
        return xs.iter().fold(T::ZERO, |a, &b| a.plus(b));
    }
    let (lo, hi) = xs.split_at(xs.len() / 2);
    pairwise_sum(lo).plus(pairwise_sum(hi))
}

/// One partial wave handed to a term callback.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Wave {
    pub q: u32,
    pub m: i64,
    pub beta: f64,
    pub alpha: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum PolarStep {
    /// α̃ = 2q̃ + β (equatorial sums).
    Even,
    /// α = q + β.
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Parity {
    Any,
    Even,
    Odd,
}

impl Parity {
    fn admits(self, m: i64) -> bool {
        match self {
            Parity::Any => true,
            Parity::Even => m % 2 == 0,
            Parity::Odd => m % 2 != 0,
        }
    }
}

pub(crate) struct SumSetup {
    pub mu0: FluxNumber,
    pub policy: TruncationPolicy,
    pub step: PolarStep,
    pub parity: Parity,
    /// Channels with order ≤ this never count towards the stopping run.
    pub protect: f64,
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct SumOutcome<T> {
    pub value: T,
    pub channels: usize,
    pub residual: f64,
}

fn rel_weight<T: Summand>(term: T, total: T) -> f64 {
    let (t, s) = (term.magnitude(), total.magnitude());
    if t == 0.0 {
        0.0
    } else if s == 0.0 {
        f64::INFINITY
    } else {
        t / s
    }
}

fn finish<T: Summand>(mut terms: Vec<(Wave, T)>) -> (T, usize) {
    terms.sort_by(|a, b| channel_order((a.0.alpha, a.0.m), (b.0.alpha, b.0.m)));
    let values: Vec<T> = terms.iter().map(|t| t.1).collect();
    (pairwise_sum(&values), terms.len())
}

/// Sums `term` over m-blocks (in β order) and polar indices.
///
/// `block(m, β)` builds the per-block term generator, which is then called
/// for q = 0, 1, ... in order. The returned value is independent of the
/// order in which terms were generated.
pub(crate) fn sum_channels<T, F, B>(setup: &SumSetup, mut block: F) -> Result<SumOutcome<T>>
where
    T: Summand,
    F: FnMut(i64, f64) -> Result<B>,
    B: FnMut(Wave) -> Result<T>,
{
    let SumSetup {
        mu0,
        policy,
        step,
        parity,
        protect,
    } = *setup;
    policy.validate()?;
    let need = policy.consecutive_below;
    let mut terms: Vec<(Wave, T)> = Vec::new();
    let mut running = T::ZERO;
    let mut blocks_below = 0;
    let mut residual = 0.0;

    let not_converged = |terms: Vec<(Wave, T)>, residual: f64| {
        let (partial, channels) = finish(terms);
        Error::NotConverged {
            partial: partial.to_complex(),
            channels,
            residual,
        }
    };

    for (m, beta) in MBlocks::new(mu0).filter(|&(m, _)| parity.admits(m)) {
        if beta > policy.m_max as f64 {
            return Err(not_converged(terms, residual));
        }
        let mut gen = block(m, beta)?;
        let mut block_total = T::ZERO;
        let mut below = 0;
        let mut done = false;
        for q in 0..=policy.q_max {
            let alpha = match step {
                PolarStep::Even => 2.0 * q as f64 + beta,
                PolarStep::All => q as f64 + beta,
            };
            let wave = Wave { q, m, beta, alpha };
            let t = gen(wave)?;
            terms.push((wave, t));
            block_total = block_total.plus(t);
            running = running.plus(t);
            let w = rel_weight(t, running);
            if alpha > protect && w <= policy.rel_tol {
                below += 1;
            } else {
                below = 0;
            }
            if below >= need {
                done = true;
                break;
            }
        }
        residual = rel_weight(block_total, running);
        if !done {
            return Err(not_converged(terms, residual));
        }
        if beta > protect && residual <= policy.rel_tol {
            blocks_below += 1;
        } else {
            blocks_below = 0;
        }
        if blocks_below >= need {
            let (value, channels) = finish(terms);
            return Ok(SumOutcome {
                value,
                channels,
                residual,
            });
        }
    }
    unreachable!("MBlocks is infinite")
}
