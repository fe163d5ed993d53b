//! Special-function kernel: log-gamma, real-order Bessel functions and the
//! spherical pair, symmetric Jacobi/Gegenbauer polynomials, quadrature.
//!
//! Everything here is a pure function of its arguments.

mod bessel;
mod gamma;
mod jacobi;
mod quadrature;
mod trig;

pub use bessel::{bessel_j, bessel_jy, bessel_y, spherical_j, spherical_n, BesselPair};
pub use gamma::log_gamma;
pub use jacobi::{
    gegenbauer_at_zero, jacobi_at_zero, jacobi_gegenbauer_factor, jacobi_symmetric,
    legendre_via_jacobi, JacobiSeq,
};
pub use quadrature::gauss_legendre;
pub use trig::{cos_pi, sin_pi};

pub(crate) use bessel::jy_unchecked;
pub(crate) use gamma::ln_gamma_unchecked;
