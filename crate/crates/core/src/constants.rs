//! CODATA 2018 exact defining constants.

use std::f64::consts::PI;

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Planck constant, J·s.
pub const PLANCK: f64 = 6.626_070_15e-34;

/// Reduced Planck constant h / 2π, J·s.
pub const HBAR: f64 = PLANCK / (2.0 * PI);

/// Electron rest mass (CODATA 2018 recommended value), kg.
pub const ELECTRON_MASS: f64 = 9.109_383_701_5e-31;

/// The constants as a value, for callers that want to pass them around or
/// report them.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct PhysicalConstants {
    pub c: f64,
    pub h: f64,
    pub hbar: f64,
}

impl PhysicalConstants {
    pub const CODATA_2018: PhysicalConstants = PhysicalConstants {
        c: SPEED_OF_LIGHT,
        h: PLANCK,
        hbar: HBAR,
    };
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::CODATA_2018
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hbar_is_h_over_two_pi() {
        let k = PhysicalConstants::default();
        assert!((k.hbar - k.h / (2.0 * PI)).abs() / k.hbar < 1e-15);
        assert_eq!(k.c, 299_792_458.0);
        assert_eq!(k.h, 6.626_070_15e-34);
    }
}
