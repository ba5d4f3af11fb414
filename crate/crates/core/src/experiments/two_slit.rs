use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{check_fraunhofer, positive, sinc, ScreenIntensity, DEFAULT_GRID_POINTS};
use crate::error::{Error, Result};

/// Two long parallel slits of width `a`, centre separation `d`, illuminated
/// at `wavelength` and observed on a screen at distance `L`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoSlitConfig {
    pub wavelength: f64,
    pub slit_separation: f64,
    pub slit_width: f64,
    pub screen_distance: f64,
    pub screen_halfwidth: f64,
    pub open_a: bool,
    pub open_b: bool,
    pub grid_points: usize,
}

impl TwoSlitConfig {
    /// Both slits open, screen spanning the central diffraction lobe
    /// (`±λL/a`).
    pub fn new(
        wavelength: f64,
        slit_separation: f64,
        slit_width: f64,
        screen_distance: f64,
    ) -> Self {
        Self {
            wavelength,
            slit_separation,
            slit_width,
            screen_distance,
            screen_halfwidth: wavelength * screen_distance / slit_width,
            open_a: true,
            open_b: true,
            grid_points: DEFAULT_GRID_POINTS,
        }
    }

    pub fn validate(&self) -> Result<()> {
        positive("wavelength", self.wavelength)?;
        positive("slit_separation", self.slit_separation)?;
        positive("slit_width", self.slit_width)?;
        positive("screen_distance", self.screen_distance)?;
        positive("screen_halfwidth", self.screen_halfwidth)?;
        if self.slit_width >= self.slit_separation {
            return Err(Error::domain(format!(
                "slit_width {} m must be smaller than slit_separation {} m",
                self.slit_width, self.slit_separation
            )));
        }
        if !(self.open_a || self.open_b) {
            return Err(Error::domain("at least one slit must be open"));
        }
        check_fraunhofer(self.slit_separation, self.wavelength, self.screen_distance)
    }

    /// `λL/d`, the far-field fringe period.
    pub fn fringe_period(&self) -> f64 {
        self.wavelength * self.screen_distance / self.slit_separation
    }

    /// Far-field intensity at screen position `x`, scaled to 1 on axis.
    pub fn relative_intensity(&self, x: f64) -> f64 {
        let scale = PI * x / (self.wavelength * self.screen_distance);
        let envelope = sinc(scale * self.slit_width).powi(2);
        if self.open_a && self.open_b {
            envelope * (scale * self.slit_separation).cos().powi(2)
        } else {
            envelope
        }
    }
}

/// Screen density `|ε_a + ε_b|²` in the far field.
///
/// With both slits open the pattern is `sinc²(πax/λL)·cos²(πdx/λL)`; with one
/// slit closed the cosine factor disappears.
pub fn two_slit_intensity(config: &TwoSlitConfig) -> Result<ScreenIntensity> {
    config.validate()?;
    let h = config.screen_halfwidth;
    ScreenIntensity::from_pattern(-h, h, config.grid_points, |x| config.relative_intensity(x))
}
