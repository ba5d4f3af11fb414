use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::FRAC_1_SQRT_2;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MachZehnderConfig {
    /// Arm phase difference `2π·ΔL/λ`, rad.
    pub phase_difference: f64,
    pub second_beamsplitter_present: bool,
}

/// Probabilities of the two output detectors. Detector 1 is the port that is
/// bright when the arms are balanced.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DetectorProbabilities {
    pub p1: f64,
    pub p2: f64,
}

/// Lossless 2×2 splitter `[[t, r], [r, t]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeamSplitter {
    pub transmission: Complex64,
    pub reflection: Complex64,
}

impl BeamSplitter {
    /// Symmetric 50/50 splitter: `t = 1/√2`, `r = i/√2`.
    pub const BALANCED: BeamSplitter = BeamSplitter {
        transmission: Complex64::new(FRAC_1_SQRT_2, 0.0),
        reflection: Complex64::new(0.0, FRAC_1_SQRT_2),
    };

    pub fn apply(&self, input: [Complex64; 2]) -> [Complex64; 2] {
        let (t, r) = (self.transmission, self.reflection);
        [t * input[0] + r * input[1], r * input[0] + t * input[1]]
    }
}

/// Photon enters port 0, is split, picks up `phase_difference` in arm 0 and,
/// if present, is recombined on the second splitter.
///
/// Without the second splitter each detector watches one arm, so the phase
/// has nowhere to act and both probabilities are 1/2.
pub fn mach_zehnder_probabilities(config: &MachZehnderConfig) -> DetectorProbabilities {
    let bs = BeamSplitter::BALANCED;
    let one = Complex64::new(1.0, 0.0);
    let [a0, a1] = bs.apply([one, Complex64::new(0.0, 0.0)]);
    let arms = [a0 * Complex64::from_polar(1.0, config.phase_difference), a1];
    let out = if config.second_beamsplitter_present {
        bs.apply(arms)
    } else {
        arms
    };
    // |1/√2|² is not exactly 1/2 in binary; renormalize so a dark port
    // leaves the other at exactly 1.
    let (n1, n2) = (out[1].norm_sqr(), out[0].norm_sqr());
    DetectorProbabilities {
        p1: n1 / (n1 + n2),
        p2: n2 / (n1 + n2),
    }
}
