use serde::Serialize;

use super::{ArrivalDistribution, Histogram};
use crate::error::{Error, Result};
use crate::experiments::ScreenIntensity;

/// Smallest expected count allowed in a Pearson cell.
pub const MIN_EXPECTED_COUNT: f64 = 5.0;

/// Smallest histogram total accepted by [`goodness_of_fit`].
pub const MIN_FIT_TOTAL: u64 = 100;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FitReport {
    pub chi_square: f64,
    pub chi_square_per_dof: f64,
    pub dof: usize,
    /// Bins absorbed into a neighbour to reach the minimum expected count.
    pub bins_merged: usize,
}

/// Expected count in every bin of `hist`, from the exact integral of the
/// piecewise-linear density, scaled to the in-range total.
pub fn expected_counts(hist: &Histogram, intensity: &ScreenIntensity) -> Result<Vec<f64>> {
    let dist = ArrivalDistribution::new(intensity);
    let n = hist.bin_count();
    let mass: Vec<f64> = (0..n)
        .map(|i| dist.cdf(hist.edge(i + 1)) - dist.cdf(hist.edge(i)))
        .collect();
    let in_range: f64 = mass.iter().sum();
    if !(in_range > 0.0) {
        return Err(Error::domain(
            "histogram range carries no probability under the density",
        ));
    }
    let scale = hist.total as f64 / in_range;
    Ok(mass.into_iter().map(|m| m * scale).collect())
}

/// Pearson chi-square of `hist` against `intensity`.
///
/// Starting from the lower edge, consecutive bins are pooled until each cell
/// expects at least [`MIN_EXPECTED_COUNT`] arrivals; a short remainder at the
/// upper edge joins the last cell.
pub fn goodness_of_fit(hist: &Histogram, intensity: &ScreenIntensity) -> Result<FitReport> {
    if hist.total < MIN_FIT_TOTAL {
        return Err(Error::precondition(format!(
            "goodness of fit needs at least {MIN_FIT_TOTAL} counts, histogram has {}",
            hist.total
        )));
    }
    let expected = expected_counts(hist, intensity)?;

    let mut cells: Vec<(f64, f64)> = Vec::new();
    let (mut obs, mut exp) = (0.0, 0.0);
    for (&o, &e) in hist.counts.iter().zip(&expected) {
        obs += o as f64;
        exp += e;
        if exp >= MIN_EXPECTED_COUNT {
            cells.push((obs, exp));
            obs = 0.0;
            exp = 0.0;
        }
    }
    if exp > 0.0 || obs > 0.0 {
        match cells.last_mut() {
            Some(last) => {
                last.0 += obs;
                last.1 += exp;
            }
            None => cells.push((obs, exp)),
        }
    }
    if cells.len() < 2 {
        return Err(Error::analysis(
            "fewer than two cells remain after pooling; no degrees of freedom",
        ));
    }

    let chi_square: f64 = cells.iter().map(|(o, e)| (o - e).powi(2) / e).sum();
    let dof = cells.len() - 1;
    Ok(FitReport {
        chi_square,
        chi_square_per_dof: chi_square / dof as f64,
        dof,
        bins_merged: hist.bin_count() - cells.len(),
    })
}
