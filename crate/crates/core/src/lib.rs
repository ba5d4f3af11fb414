//! Numerical laboratory for non-spreading wave packets and single-particle
//! interference.
//!
//! The crate is organised bottom-up:
//!
//! - [`kinematics`]: closed-form relativistic relations (mass, energy
//!   partition, Compton and de Broglie wavelengths).
//! - [`wavepacket`]: regularized non-spreading packets for massive particles
//!   and photons, with finite-difference checks of the wave equation.
//! - [`experiments`]: analytic screen densities and detector probabilities for
//!   two-slit, Mach-Zehnder, standing-wave cavity and two-laser setups.
//! - [`sampler`]: reproducible arrival sampling, histogramming and
//!   goodness-of-fit against the analytic densities.

// Guards are written `!(x > 0.0)` so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod constants;
pub mod error;
pub mod experiments;
pub mod kinematics;
pub mod sampler;
pub mod wavepacket;

pub use error::{Error, Result};
