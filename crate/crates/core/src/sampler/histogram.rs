use serde::Serialize;

use crate::error::{Error, Result};

/// Uniformly binned arrival counts.
///
/// Bins are left-closed, `[edge_i, edge_{i+1})`. Arrivals outside the range
/// are tallied in `outside` and excluded from `total`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Histogram {
    pub bin_edges: Vec<f64>,
    pub counts: Vec<u64>,
    pub total: u64,
    pub outside: u64,
}

impl Histogram {
    pub fn empty(bin_count: usize, range: (f64, f64)) -> Result<Self> {
        let (lo, hi) = range;
        if bin_count < 2 {
            return Err(Error::precondition(format!(
                "bin_count must be at least 2, got {bin_count}"
            )));
        }
        if !(lo.is_finite() && hi.is_finite() && hi > lo) {
            return Err(Error::precondition(format!(
                "histogram range [{lo}, {hi}] is degenerate"
            )));
        }
        let width = (hi - lo) / bin_count as f64;
        let bin_edges = (0..=bin_count)
            .map(|i| {
                if i == bin_count {
                    hi
                } else {
                    lo + i as f64 * width
                }
            })
            .collect();
        Ok(Self {
            bin_edges,
            counts: vec![0; bin_count],
            total: 0,
            outside: 0,
        })
    }

    pub fn bin_count(&self) -> usize {
        self.counts.len()
    }

    pub fn edge(&self, i: usize) -> f64 {
        self.bin_edges[i]
    }

    fn bin_of(&self, x: f64) -> Option<usize> {
        let n = self.bin_count();
        let (lo, hi) = (self.edge(0), self.edge(n));
        if !(x >= lo && x < hi) {
            return None;
        }
        let mut i = (((x - lo) / (hi - lo)) * n as f64).floor() as usize;
        i = i.min(n - 1);
        // Rounding in the division can land one bin off near an edge.
        if x < self.edge(i) {
            i -= 1;
        } else if x >= self.edge(i + 1) {
            i += 1;
        }
        Some(i)
    }

    pub fn extend(&mut self, positions: &[f64]) {
        for &x in positions {
            match self.bin_of(x) {
                Some(i) => {
                    self.counts[i] += 1;
                    self.total += 1;
                }
                None => self.outside += 1,
            }
        }
    }

    /// Add the counts of `other`, which must use identical binning.
    pub fn merge(&mut self, other: &Histogram) -> Result<()> {
        if self.bin_edges != other.bin_edges {
            return Err(Error::domain(
                "cannot merge histograms with different binning",
            ));
        }
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
        self.total += other.total;
        self.outside += other.outside;
        Ok(())
    }
}

/// Bin `positions` into `bin_count` uniform bins over `range`.
pub fn accumulate(positions: &[f64], bin_count: usize, range: (f64, f64)) -> Result<Histogram> {
    let mut h = Histogram::empty(bin_count, range)?;
    h.extend(positions);
    Ok(h)
}
