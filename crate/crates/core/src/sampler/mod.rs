//! Single-particle arrival sampling.
//!
//! Each arrival is an independent draw from the analytic density of an
//! experiment. Draws come from a seeded ChaCha20 stream, so a run is fully
//! determined by `(inputs, seed, stream_index)` and can be split across
//! streams and merged without changing its statistics.

mod distribution;
mod fit;
mod histogram;
mod stream;

pub use distribution::ArrivalDistribution;
pub use fit::{expected_counts, goodness_of_fit, FitReport, MIN_EXPECTED_COUNT, MIN_FIT_TOTAL};
pub use histogram::{accumulate, Histogram};
pub use stream::{SeededStream, GENERATOR_ALGORITHM};

use rand::Rng;
use rand_distr::{Binomial, Distribution};
use rayon::prelude::*;

use crate::error::Result;
use crate::experiments::{DetectorProbabilities, ScreenIntensity};

/// Draw `n` arrival positions from `intensity`.
pub fn sample_positions(intensity: &ScreenIntensity, n: usize, stream: SeededStream) -> Vec<f64> {
    ArrivalDistribution::new(intensity).sample(n, stream)
}

/// Split `n` detections between the two detectors.
pub fn sample_detectors(probs: &DetectorProbabilities, n: u64, stream: SeededStream) -> (u64, u64) {
    let p1 = probs.p1.clamp(0.0, 1.0);
    let first = if n == 0 || p1 == 0.0 {
        0
    } else if p1 == 1.0 {
        n
    } else {
        let mut rng = stream.rng();
        // Binomial::new only fails for p outside [0, 1].
        Binomial::new(n, p1).expect("p1 in [0, 1]").sample(&mut rng)
    };
    (first, n - first)
}

/// Draw `n` arrivals split over `parts` streams (`stream_index = 0..parts`)
/// and histogram them. Parts are sampled in parallel; the result depends only
/// on the arguments, not on the thread count.
pub fn parallel_histogram(
    intensity: &ScreenIntensity,
    n: usize,
    parts: usize,
    bin_count: usize,
    range: (f64, f64),
    seed: u64,
) -> Result<Histogram> {
    let parts = parts.max(1);
    let dist = ArrivalDistribution::new(intensity);
    let empty = Histogram::empty(bin_count, range)?;
    (0..parts)
        .into_par_iter()
        .map(|p| {
            let share = n / parts + usize::from(p < n % parts);
            let positions = dist.sample(share, SeededStream::new(seed, p as u64));
            let mut h = empty.clone();
            h.extend(&positions);
            Ok(h)
        })
        .try_reduce(|| empty.clone(), |mut a, b| a.merge(&b).map(|()| a))
}

/// Kolmogorov–Smirnov distance between `positions` and the distribution of
/// `intensity`.
pub fn ks_distance(positions: &[f64], intensity: &ScreenIntensity) -> f64 {
    let dist = ArrivalDistribution::new(intensity);
    let mut sorted = positions.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    sorted
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = dist.cdf(x);
            (f - i as f64 / n).abs().max(((i + 1) as f64 / n - f).abs())
        })
        .fold(0.0, f64::max)
}

/// Uniform draw in `[0, 1)`.
pub(crate) fn unit(rng: &mut impl Rng) -> f64 {
    rng.random::<f64>()
}
