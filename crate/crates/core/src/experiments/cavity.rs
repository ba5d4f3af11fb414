use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{positive, ScreenIntensity};
use crate::error::{Error, Result};

/// Relative tolerance, in half-wavelengths, used by [`cavity_profile`].
pub const DEFAULT_RESONANCE_TOLERANCE: f64 = 1e-6;

const MIN_CAVITY_GRID_POINTS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CavityConfig {
    pub cavity_length: f64,
    pub wavelength: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Resonance {
    pub resonant: bool,
    /// Nearest number of half-wavelengths, at least 1.
    pub mode_number: u64,
}

impl CavityConfig {
    pub fn validate(&self) -> Result<()> {
        positive("cavity_length", self.cavity_length)?;
        positive("wavelength", self.wavelength)?;
        if self.cavity_length <= 0.5 * self.wavelength {
            return Err(Error::domain(format!(
                "cavity_length {} m must exceed half a wavelength",
                self.cavity_length
            )));
        }
        Ok(())
    }

    /// `sin²(2πx/λ)`, zero at the mirrors and every half-wavelength.
    pub fn relative_intensity(&self, x: f64) -> f64 {
        (2.0 * PI * x / self.wavelength).sin().powi(2)
    }

    /// Node positions `nλ/2` for `n = 0 ..= mode_number`.
    pub fn node_positions(&self) -> Vec<f64> {
        let mode = resonance_check(self.cavity_length, self.wavelength, f64::INFINITY).mode_number;
        (0..=mode)
            .map(|n| n as f64 * 0.5 * self.wavelength)
            .collect()
    }
}

/// Whether `cavity_length` is within `tolerance` half-wavelengths of an
/// integer number of half-wavelengths.
pub fn resonance_check(cavity_length: f64, wavelength: f64, tolerance: f64) -> Resonance {
    let half = 0.5 * wavelength;
    let modes = cavity_length / half;
    let mode_number = modes.round().max(1.0);
    Resonance {
        resonant: (cavity_length - mode_number * half).abs() <= tolerance * half,
        mode_number: mode_number as u64,
    }
}

/// Standing-wave density along the cavity axis, over `[0, L]`.
pub fn cavity_profile(config: &CavityConfig, grid_points: usize) -> Result<ScreenIntensity> {
    config.validate()?;
    if grid_points < MIN_CAVITY_GRID_POINTS {
        return Err(Error::precondition(format!(
            "grid_points must be at least {MIN_CAVITY_GRID_POINTS}, got {grid_points}"
        )));
    }
    let r = resonance_check(
        config.cavity_length,
        config.wavelength,
        DEFAULT_RESONANCE_TOLERANCE,
    );
    if !r.resonant {
        return Err(Error::domain(format!(
            "cavity not resonant: length is {} half-wavelengths",
            config.cavity_length / (0.5 * config.wavelength)
        )));
    }
    ScreenIntensity::from_pattern(0.0, config.cavity_length, grid_points, |x| {
        config.relative_intensity(x)
    })
}
