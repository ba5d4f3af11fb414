use serde::Serialize;

use crate::error::{Error, Result};

/// Normalized 1-D arrival density sampled on a uniform grid.
///
/// The density is understood as the piecewise-linear interpolant of the
/// samples, and its trapezoid integral is one.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScreenIntensity {
    positions: Vec<f64>,
    density: Vec<f64>,
}

/// `n` uniformly spaced points from `lo` to `hi` inclusive.
pub(crate) fn uniform_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let step = (hi - lo) / (n - 1) as f64;
    (0..n)
        .map(|j| if j == n - 1 { hi } else { lo + j as f64 * step })
        .collect()
}

fn trapezoid(positions: &[f64], values: &[f64]) -> f64 {
    positions
        .windows(2)
        .zip(values.windows(2))
        .map(|(x, y)| 0.5 * (x[1] - x[0]) * (y[0] + y[1]))
        .sum()
}

impl ScreenIntensity {
    /// Normalize non-negative `values` sampled at `positions`.
    pub fn from_unnormalized(positions: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if positions.len() != values.len() {
            return Err(Error::domain(format!(
                "positions ({}) and values ({}) differ in length",
                positions.len(),
                values.len()
            )));
        }
        if positions.len() < 2 {
            return Err(Error::domain("intensity needs at least two grid points"));
        }
        if positions.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::domain("positions must be strictly increasing"));
        }
        if values.iter().any(|v| !(v.is_finite() && *v >= 0.0)) {
            return Err(Error::domain(
                "density values must be finite and non-negative",
            ));
        }
        let total = trapezoid(&positions, &values);
        if !(total > 0.0) {
            return Err(Error::domain("density integrates to zero"));
        }
        let density = values.into_iter().map(|v| v / total).collect();
        Ok(Self { positions, density })
    }

    /// Sample `pattern` on `grid_points` uniform points over `[lo, hi]`.
    pub(crate) fn from_pattern(
        lo: f64,
        hi: f64,
        grid_points: usize,
        pattern: impl Fn(f64) -> f64,
    ) -> Result<Self> {
        if grid_points < 3 {
            return Err(Error::precondition(format!(
                "grid_points must be at least 3, got {grid_points}"
            )));
        }
        let positions = uniform_grid(lo, hi, grid_points);
        let values = positions.iter().map(|&x| pattern(x)).collect();
        Self::from_unnormalized(positions, values)
    }

    pub fn positions(&self) -> &[f64] {
        &self.positions
    }

    pub fn density(&self) -> &[f64] {
        &self.density
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn lower(&self) -> f64 {
        self.positions[0]
    }

    pub fn upper(&self) -> f64 {
        self.positions[self.positions.len() - 1]
    }

    pub fn integral(&self) -> f64 {
        trapezoid(&self.positions, &self.density)
    }

    pub fn peak(&self) -> f64 {
        self.density.iter().copied().fold(0.0, f64::max)
    }

    /// Piecewise-linear interpolation; zero outside the grid.
    pub fn density_at(&self, x: f64) -> f64 {
        if !(x >= self.lower() && x <= self.upper()) {
            return 0.0;
        }
        let j = self.positions.partition_point(|&p| p <= x);
        if j >= self.positions.len() {
            return self.density[self.density.len() - 1];
        }
        let (x0, x1) = (self.positions[j - 1], self.positions[j]);
        let t = (x - x0) / (x1 - x0);
        self.density[j - 1] * (1.0 - t) + self.density[j] * t
    }

    /// Pointwise mean of several intensities sampled on the same grid.
    pub fn average(intensities: &[ScreenIntensity]) -> Result<Self> {
        let first = intensities
            .first()
            .ok_or_else(|| Error::domain("cannot average zero intensities"))?;
        if intensities.iter().any(|i| i.positions != first.positions) {
            return Err(Error::domain("intensities are sampled on different grids"));
        }
        let n = intensities.len() as f64;
        let mut sum = vec![0.0; first.len()];
        for i in intensities {
            for (s, d) in sum.iter_mut().zip(&i.density) {
                *s += d;
            }
        }
        let values = sum.into_iter().map(|s| s / n).collect();
        Self::from_unnormalized(first.positions.clone(), values)
    }

    fn centre(&self) -> f64 {
        0.5 * (self.lower() + self.upper())
    }
}

/// Number of maxima nearest the centre used for the spacing estimate.
const CENTRAL_MAXIMA: usize = 5;
/// Largest allowed ratio between consecutive spacings in the central comb.
const COMB_REGULARITY: f64 = 1.2;
/// Smallest allowed height of a comb maximum relative to the tallest one.
const COMB_MIN_RELATIVE_HEIGHT: f64 = 0.1;

/// Mean distance between consecutive intensity maxima near the centre of the
/// window.
///
/// Local maxima above `1e-6 × peak` are located on the grid and refined by a
/// parabola through the three neighbouring samples. The five maxima closest to
/// the centre must form a comb: comparable heights and near-equal spacings.
/// A single-slit pattern, whose side lobes are a few percent of the central
/// lobe and unevenly spaced, is rejected.
pub fn fringe_spacing(intensity: &ScreenIntensity) -> Result<f64> {
    let x = intensity.positions();
    let y = intensity.density();
    let threshold = 1e-6 * intensity.peak();

    let mut maxima: Vec<(f64, f64)> = Vec::new();
    for j in 1..y.len() - 1 {
        if y[j] > y[j - 1] && y[j] >= y[j + 1] && y[j] > threshold {
            let (a, b, c) = (y[j - 1], y[j], y[j + 1]);
            let curvature = a - 2.0 * b + c;
            let offset = if curvature < 0.0 {
                0.5 * (a - c) / curvature
            } else {
                0.0
            };
            let h = x[j + 1] - x[j];
            maxima.push((x[j] + offset * h, b));
        }
    }
    let insufficient = || Error::analysis("insufficient fringes in window");
    if maxima.len() < 3 {
        return Err(insufficient());
    }

    let centre = intensity.centre();
    maxima.sort_by(|a, b| (a.0 - centre).abs().total_cmp(&(b.0 - centre).abs()));
    maxima.truncate(CENTRAL_MAXIMA);
    maxima.sort_by(|a, b| a.0.total_cmp(&b.0));

    let tallest = maxima.iter().map(|m| m.1).fold(0.0, f64::max);
    if maxima
        .iter()
        .any(|m| m.1 < COMB_MIN_RELATIVE_HEIGHT * tallest)
    {
        return Err(insufficient());
    }
    let gaps: Vec<f64> = maxima.windows(2).map(|w| w[1].0 - w[0].0).collect();
    let widest = gaps.iter().copied().fold(f64::MIN, f64::max);
    let narrowest = gaps.iter().copied().fold(f64::MAX, f64::min);
    if widest > COMB_REGULARITY * narrowest {
        return Err(insufficient());
    }
    Ok((maxima[maxima.len() - 1].0 - maxima[0].0) / (maxima.len() - 1) as f64)
}

/// `(I_max − I_min)/(I_max + I_min)` over `[centre − w, centre + w]`, with the
/// centre at the middle of the grid.
pub fn visibility(intensity: &ScreenIntensity, window_halfwidth: f64) -> Result<f64> {
    let centre = intensity.centre();
    let slack = 1e-12 * (intensity.upper() - intensity.lower());
    if !(window_halfwidth > 0.0)
        || centre - window_halfwidth < intensity.lower() - slack
        || centre + window_halfwidth > intensity.upper() + slack
    {
        return Err(Error::domain(format!(
            "visibility window ±{window_halfwidth} m is not inside the screen"
        )));
    }
    let reach = window_halfwidth + slack;
    let (lo, hi) = intensity
        .positions()
        .iter()
        .zip(intensity.density())
        .filter(|(x, _)| (**x - centre).abs() <= reach)
        .fold((f64::MAX, f64::MIN), |(lo, hi), (_, &d)| {
            (lo.min(d), hi.max(d))
        });
    if !(hi > 0.0) {
        return Err(Error::domain("visibility window holds no intensity"));
    }
    Ok((hi - lo) / (hi + lo))
}
