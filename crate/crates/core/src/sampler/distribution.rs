use super::{unit, SeededStream};
use crate::experiments::ScreenIntensity;

/// Inverse-CDF sampler for the piecewise-linear density of a
/// [`ScreenIntensity`].
///
/// The cumulative distribution is piecewise quadratic; within a segment of
/// width `h` with end densities `f0`, `f1` the mass up to offset `t` is
/// `f0·t + (f1 − f0)·t²/(2h)`, which is inverted in closed form.
#[derive(Debug, Clone)]
pub struct ArrivalDistribution<'a> {
    positions: &'a [f64],
    density: &'a [f64],
    cumulative: Vec<f64>,
}

impl<'a> ArrivalDistribution<'a> {
    pub fn new(intensity: &'a ScreenIntensity) -> Self {
        let positions = intensity.positions();
        let density = intensity.density();
        let mut cumulative = Vec::with_capacity(positions.len());
        let mut acc = 0.0;
        cumulative.push(0.0);
        for j in 1..positions.len() {
            acc += 0.5 * (positions[j] - positions[j - 1]) * (density[j] + density[j - 1]);
            cumulative.push(acc);
        }
        Self {
            positions,
            density,
            cumulative,
        }
    }

    fn total(&self) -> f64 {
        self.cumulative[self.cumulative.len() - 1]
    }

    /// Probability of arriving below `x`.
    pub fn cdf(&self, x: f64) -> f64 {
        let last = self.positions.len() - 1;
        if x <= self.positions[0] {
            return 0.0;
        }
        if x >= self.positions[last] {
            return 1.0;
        }
        let j = self.positions.partition_point(|&p| p <= x) - 1;
        let h = self.positions[j + 1] - self.positions[j];
        let t = x - self.positions[j];
        let (f0, f1) = (self.density[j], self.density[j + 1]);
        let mass = self.cumulative[j] + f0 * t + (f1 - f0) * t * t / (2.0 * h);
        (mass / self.total()).clamp(0.0, 1.0)
    }

    /// Position below which a fraction `u` of arrivals fall.
    pub fn quantile(&self, u: f64) -> f64 {
        let target = u * self.total();
        // First segment whose upper cumulative exceeds the target. Segments
        // carrying no mass are never selected.
        let last = self.positions.len() - 1;
        let j = (self.cumulative.partition_point(|&c| c <= target)).clamp(1, last) - 1;
        let h = self.positions[j + 1] - self.positions[j];
        let r = (target - self.cumulative[j]).max(0.0);
        let (f0, f1) = (self.density[j], self.density[j + 1]);
        let a = (f1 - f0) / (2.0 * h);
        // Root of a·t² + f0·t − r = 0 in the form that is stable for either
        // sign of a.
        let disc = (f0 * f0 + 4.0 * a * r).max(0.0);
        let denom = f0 + disc.sqrt();
        let t = if denom > 0.0 { 2.0 * r / denom } else { 0.0 };
        self.positions[j] + t.clamp(0.0, h)
    }

    pub fn sample(&self, n: usize, stream: SeededStream) -> Vec<f64> {
        let mut rng = stream.rng();
        (0..n).map(|_| self.quantile(unit(&mut rng))).collect()
    }
}
