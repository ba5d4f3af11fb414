use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{check_fraunhofer, positive, ScreenIntensity, DEFAULT_GRID_POINTS};
use crate::error::Result;

/// Two independent, nearly monochromatic sources treated as point emitters a
/// distance `effective_slit_separation` apart. Their slowly drifting relative
/// phase is held fixed for one exposure.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoLaserConfig {
    pub wavelength: f64,
    pub effective_slit_separation: f64,
    pub screen_distance: f64,
    pub screen_halfwidth: f64,
    pub relative_phase: f64,
    pub grid_points: usize,
}

impl TwoLaserConfig {
    /// Screen spanning four fringe periods either side of the axis.
    pub fn new(
        wavelength: f64,
        effective_slit_separation: f64,
        screen_distance: f64,
        relative_phase: f64,
    ) -> Self {
        Self {
            wavelength,
            effective_slit_separation,
            screen_distance,
            screen_halfwidth: 4.0 * wavelength * screen_distance / effective_slit_separation,
            relative_phase,
            grid_points: DEFAULT_GRID_POINTS,
        }
    }

    pub fn validate(&self) -> Result<()> {
        positive("wavelength", self.wavelength)?;
        positive("effective_slit_separation", self.effective_slit_separation)?;
        positive("screen_distance", self.screen_distance)?;
        positive("screen_halfwidth", self.screen_halfwidth)?;
        if !self.relative_phase.is_finite() {
            return Err(crate::Error::domain("relative_phase must be finite"));
        }
        check_fraunhofer(
            self.effective_slit_separation,
            self.wavelength,
            self.screen_distance,
        )
    }

    pub fn relative_intensity(&self, x: f64) -> f64 {
        let arg =
            PI * self.effective_slit_separation * x / (self.wavelength * self.screen_distance);
        (arg + 0.5 * self.relative_phase).cos().powi(2)
    }
}

/// Single-exposure pattern `cos²(πdx/λL + φ/2)`.
pub fn two_laser_intensity(config: &TwoLaserConfig) -> Result<ScreenIntensity> {
    config.validate()?;
    let h = config.screen_halfwidth;
    ScreenIntensity::from_pattern(-h, h, config.grid_points, |x| config.relative_intensity(x))
}
