//! Partial-wave scattering of a charged particle by a short-range potential
//! threaded by an Aharonov–Bohm flux line.
//!
//! Angular channels carry the flux-shifted order α̃ = 2q̃ + |m + μ₀|; the
//! amplitude and cross sections are adaptive sums over them. Lengths are
//! measured in units of the scatterer radius a and wavenumbers enter only
//! through ka.

pub mod amplitude;
pub mod channels;
pub mod check;
pub mod cross_section;
pub mod error;
pub mod phase_shift;
pub mod specfun;
mod summation;
pub mod sweep;

pub use amplitude::{
    channel_amplitude_factor, modified_plane_wave, optical_theorem_residual, scattering_amplitude,
    AmplitudeValue, IncidentDirection, OpticalCheck,
};
pub use channels::{
    angular_y, angular_y_equator, enumerate_channels, make_channel, y_squared, Channel, FluxNumber,
    MBlocks, TruncationPolicy,
};
pub use cross_section::{
    channel_term_F, differential_cross_section, flux_free_total, hard_sphere_total_closed_form,
    hard_sphere_weight_literal, total_cross_section, CrossSectionValue, Statistics,
};
pub use error::{Error, Result, DEGENERACY_THRESHOLD};
pub use phase_shift::{
    hard_sphere_phase_shift, ChannelResponse, HardSphere, PhaseShiftPath, ScattererModel,
};
pub use sweep::{
    figure_preset, run_sweep, run_sweep_threads, OutputFormat, SumPath, SweepRecord, SweepSpec,
};
