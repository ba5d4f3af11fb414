//! Relativistic single-particle kinematics.
//!
//! The particle is pictured as moving at `c` in an extended (x, w) plane:
//! the ordinary velocity `v` is the x-projection and `c·sqrt(1 - β²)` the
//! proper-time projection. Everything here follows from that right triangle:
//! the mass-velocity relation, the split of `mc²` into an internal term and
//! `mv²`, and the three wavelengths obtained by dividing `h` by the legs of
//! the momentum triangle.

use serde::Serialize;

use crate::constants::{PLANCK, SPEED_OF_LIGHT};
use crate::error::{Error, Result};

/// A massive particle moving at constant speed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ParticleState {
    rest_mass: f64,
    speed: f64,
}

impl ParticleState {
    pub fn new(rest_mass: f64, speed: f64) -> Result<Self> {
        if !(rest_mass.is_finite() && rest_mass > 0.0) {
            return Err(Error::domain(format!(
                "rest_mass must be positive and finite, got {rest_mass}"
            )));
        }
        if !(speed.is_finite() && (0.0..SPEED_OF_LIGHT).contains(&speed)) {
            return Err(Error::domain(format!(
                "speed outside [0, c): got {speed} m/s"
            )));
        }
        Ok(Self { rest_mass, speed })
    }

    /// Construct from `β = v/c`.
    pub fn from_beta(rest_mass: f64, beta: f64) -> Result<Self> {
        Self::new(rest_mass, beta * SPEED_OF_LIGHT)
    }

    pub fn rest_mass(&self) -> f64 {
        self.rest_mass
    }

    pub fn speed(&self) -> f64 {
        self.speed
    }

    pub fn beta(&self) -> f64 {
        self.speed / SPEED_OF_LIGHT
    }
}

/// Derived quantities for a [`ParticleState`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KinematicState {
    pub gamma: f64,
    pub relativistic_mass: f64,
    pub momentum: f64,
    /// `mc²`
    pub total_energy: f64,
    /// `m₀c²·sqrt(1 - β²)`
    pub internal_energy: f64,
    /// `mv²`
    pub kinetic_term: f64,
    /// `cos θ = v/c`, the angle of the motion in the (x, w) plane.
    pub direction_angle_cos: f64,
}

/// Compton, transformed Compton and de Broglie wavelengths, in metres.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WavelengthTriple {
    pub compton: f64,
    pub transformed_compton: f64,
    pub de_broglie: f64,
}

/// Lorentz factor `1/sqrt(1 - β²)`.
pub fn gamma(state: &ParticleState) -> f64 {
    let beta = state.beta();
    // (1-β)(1+β) keeps a few more bits than 1-β² near β → 1.
    1.0 / ((1.0 - beta) * (1.0 + beta)).sqrt()
}

pub fn kinematic_state(state: &ParticleState) -> KinematicState {
    let g = gamma(state);
    let c2 = SPEED_OF_LIGHT * SPEED_OF_LIGHT;
    let m = g * state.rest_mass;
    let v = state.speed;
    KinematicState {
        gamma: g,
        relativistic_mass: m,
        momentum: m * v,
        total_energy: m * c2,
        internal_energy: state.rest_mass * c2 / g,
        kinetic_term: m * v * v,
        direction_angle_cos: state.beta(),
    }
}

/// `h / (m₀c)`.
pub fn compton_wavelength(rest_mass: f64) -> Result<f64> {
    if !(rest_mass.is_finite() && rest_mass > 0.0) {
        return Err(Error::domain(format!(
            "rest_mass must be positive and finite, got {rest_mass}"
        )));
    }
    Ok(PLANCK / (rest_mass * SPEED_OF_LIGHT))
}

pub fn wavelengths(state: &ParticleState) -> Result<WavelengthTriple> {
    if state.speed == 0.0 {
        return Err(Error::domain(
            "de Broglie wavelength undefined at zero momentum",
        ));
    }
    let compton = compton_wavelength(state.rest_mass)?;
    let g = gamma(state);
    Ok(WavelengthTriple {
        compton,
        transformed_compton: compton / g,
        de_broglie: compton / (g * state.beta()),
    })
}

/// Relative departure of an event from the four-speed sphere
/// `c²t² = x₀² + y₀² + z₀² + w₀²`.
pub fn four_speed_residual(x0: f64, y0: f64, z0: f64, w0: f64, t: f64) -> Result<f64> {
    if !(t.is_finite() && t > 0.0) {
        return Err(Error::domain(format!("t must be positive, got {t}")));
    }
    let ct = SPEED_OF_LIGHT * t;
    // Scale by ct before squaring so metre-scale and light-year-scale events
    // are handled alike.
    let sum: f64 = [x0, y0, z0, w0].iter().map(|q| (q / ct).powi(2)).sum();
    Ok(sum - 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::ELECTRON_MASS;
    use proptest::prelude::*;

    const C: f64 = SPEED_OF_LIGHT;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn gamma_examples() {
        assert_eq!(gamma(&ParticleState::new(1.0, 0.0).unwrap()), 1.0);
        let g = gamma(&ParticleState::from_beta(1.0, 0.6).unwrap());
        assert!(rel(g, 1.25) < 1e-15);
        // 1/sqrt(1 - 0.9801), evaluated at 40 digits.
        let g = gamma(&ParticleState::from_beta(1.0, 0.99).unwrap());
        assert!(rel(g, 7.088_812_050_083_359) < 1e-13);
    }

    #[test]
    fn speed_out_of_range_is_rejected() {
        for v in [C, 1.5 * C, -1.0, f64::NAN] {
            let err = ParticleState::new(1.0, v).unwrap_err();
            assert!(matches!(&err, Error::Domain(m) if m.contains("speed outside [0, c)")));
        }
        assert!(ParticleState::new(0.0, 1.0).is_err());
        assert!(ParticleState::new(-1.0, 1.0).is_err());
    }

    #[test]
    fn energy_partition_examples() {
        let k = kinematic_state(&ParticleState::new(1.0, 0.0).unwrap());
        assert_eq!(k.internal_energy, C * C);
        assert_eq!(k.kinetic_term, 0.0);

        let k = kinematic_state(&ParticleState::from_beta(1.0, 0.6).unwrap());
        let mc2 = C * C;
        assert!(rel(k.total_energy, 1.25 * mc2) < 1e-14);
        assert!(rel(k.internal_energy, 0.8 * mc2) < 1e-14);
        assert!(rel(k.kinetic_term, 0.45 * mc2) < 1e-14);

        let k = kinematic_state(&ParticleState::from_beta(ELECTRON_MASS, 0.6).unwrap());
        assert!((k.relativistic_mass - 1.138_672_962_687_5e-30).abs() < 1e-34);
    }

    #[test]
    fn electron_wavelengths() {
        let w = wavelengths(&ParticleState::from_beta(ELECTRON_MASS, 0.6).unwrap()).unwrap();
        // h/(m c), /1.25, /0.75 at 40 digits.
        assert!(rel(w.compton, 2.426_310_238_683_092e-12) < 1e-13);
        assert!(rel(w.transformed_compton, 1.941_048_190_946_474e-12) < 1e-13);
        assert!(rel(w.de_broglie, 3.235_080_318_244_123e-12) < 1e-13);
        let pyth = 1.0 / w.transformed_compton.powi(2)
            - 1.0 / w.de_broglie.powi(2)
            - 1.0 / w.compton.powi(2);
        assert!(pyth.abs() * w.transformed_compton.powi(2) < 1e-12);
    }

    #[test]
    fn wavelengths_at_rest_is_domain_error() {
        let err = wavelengths(&ParticleState::new(ELECTRON_MASS, 0.0).unwrap()).unwrap_err();
        assert!(matches!(err, Error::Domain(m) if m.contains("zero momentum")));
    }

    #[test]
    fn compton_examples() {
        let l = compton_wavelength(ELECTRON_MASS).unwrap();
        assert!((l - 2.42631e-12).abs() < 1e-16);
        assert_eq!(
            compton_wavelength(2.0).unwrap(),
            compton_wavelength(1.0).unwrap() / 2.0
        );
        assert!(compton_wavelength(0.0).is_err());
        assert!(compton_wavelength(-3.0).is_err());
    }

    #[test]
    fn four_speed_examples() {
        let t = 2.5;
        let v = 0.8 * C;
        let w0 = C * (1.0f64 - 0.64).sqrt() * t;
        assert!(four_speed_residual(v * t, 0.0, 0.0, w0, t).unwrap().abs() < 1e-12);
        assert_eq!(four_speed_residual(C, 0.0, 0.0, 0.0, 1.0).unwrap(), 0.0);
        assert_eq!(four_speed_residual(0.0, 0.0, 0.0, 0.0, 1.0).unwrap(), -1.0);
        assert!(four_speed_residual(0.0, 0.0, 0.0, 0.0, 0.0).is_err());
    }

    proptest! {
        #[test]
        fn identities_hold(beta in 0.0f64..0.999_999, mass in 1e-31f64..1e3) {
            let s = ParticleState::from_beta(mass, beta).unwrap();
            let k = kinematic_state(&s);
            prop_assert!(
                (k.total_energy - k.internal_energy - k.kinetic_term).abs() / k.total_energy < 1e-12
            );
            prop_assert_eq!(k.direction_angle_cos, s.beta());
            prop_assert!(rel(k.momentum, k.relativistic_mass * s.speed()) < 1e-15);
            if beta > 0.0 {
                let w = wavelengths(&s).unwrap();
                let lhs = 1.0 / w.transformed_compton.powi(2);
                let rhs = 1.0 / w.de_broglie.powi(2) + 1.0 / w.compton.powi(2);
                prop_assert!(rel(lhs, rhs) < 1e-12);
            }
        }

        #[test]
        fn gamma_is_monotone(a in 0.0f64..0.999_999_9, b in 0.0f64..0.999_999_9) {
            prop_assume!(a < b);
            let ga = gamma(&ParticleState::from_beta(1.0, a).unwrap());
            let gb = gamma(&ParticleState::from_beta(1.0, b).unwrap());
            prop_assert!(ga <= gb);
            if b - a > 1e-9 {
                prop_assert!(ga < gb);
            }
        }
    }
}
