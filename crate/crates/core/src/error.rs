use num_complex::Complex64;
use thiserror::Error;

/// Errors raised by the scattering engine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error in {op}: {detail}")]
    Domain { op: &'static str, detail: String },

    /// A partial-wave factor has a vanishing denominator (|denominator| below
    /// [`DEGENERACY_THRESHOLD`]).
    #[error("degenerate channel at alpha~ = {alpha_tilde} (denominator {denominator:e})")]
    Degenerate { alpha_tilde: f64, denominator: f64 },

    /// Truncation caps were hit before the relative tolerance was met.
    #[error(
        "channel sum did not converge: {channels} channels, tail weight {residual:e}, partial value {partial}"
    )]
    NotConverged {
        partial: Complex64,
        channels: usize,
        residual: f64,
    },

    /// A figure preset or other named item does not exist.
    #[error("unknown {kind} '{name}'")]
    Unknown { kind: &'static str, name: String },

    #[error("invalid sweep specification: {0}")]
    InvalidSpec(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Denominators with modulus below this are reported as degenerate.
pub const DEGENERACY_THRESHOLD: f64 = 1e-14;

pub(crate) fn domain(op: &'static str, detail: impl Into<String>) -> Error {
    Error::Domain {
        op,
        detail: detail.into(),
    }
}
