//! Analytic predictors for the interference setups.
//!
//! Each photon's characteristic component reaches the detector along every
//! open path; the pieces are added as complex amplitudes and the arrival
//! density is the normalized squared modulus of the sum.

mod cavity;
mod intensity;
mod mach_zehnder;
mod two_laser;
mod two_slit;

pub use cavity::{
    cavity_profile, resonance_check, CavityConfig, Resonance, DEFAULT_RESONANCE_TOLERANCE,
};
pub use intensity::{fringe_spacing, visibility, ScreenIntensity};
pub use mach_zehnder::{
    mach_zehnder_probabilities, BeamSplitter, DetectorProbabilities, MachZehnderConfig,
};
pub use two_laser::{two_laser_intensity, TwoLaserConfig};
pub use two_slit::{two_slit_intensity, TwoSlitConfig};

use crate::error::{Error, Result};

/// Default number of screen samples; odd so that the axis is a grid point.
pub const DEFAULT_GRID_POINTS: usize = 8193;

/// `sin(u)/u`, with `sinc(0) = 1`.
pub fn sinc(u: f64) -> f64 {
    if u.abs() < 1e-4 {
        let u2 = u * u;
        1.0 - u2 / 6.0 + u2 * u2 / 120.0
    } else {
        u.sin() / u
    }
}

pub(crate) fn positive(name: &str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "{name} must be positive and finite, got {value}"
        )))
    }
}

/// Far-field condition `L ≥ 10·d²/λ`.
pub(crate) fn check_fraunhofer(separation: f64, wavelength: f64, distance: f64) -> Result<()> {
    let needed = 10.0 * separation * separation / wavelength;
    if distance < needed {
        return Err(Error::precondition(format!(
            "far-field approximation invalid: screen_distance {distance} m must be at least \
             10·d²/λ = {needed} m"
        )));
    }
    Ok(())
}
