use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

/// Counts of radial samples in equal-width bins over `[0, 1]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RadialHistogram {
    counts: Vec<u64>,
    total: u64,
}

impl RadialHistogram {
    pub fn new(bins: usize) -> Result<Self> {
        if bins == 0 {
            return domain("histogram needs at least one bin");
        }
        Ok(Self {
            counts: vec![0; bins],
            total: 0,
        })
    }

    pub fn from_samples(bins: usize, samples: &[f64]) -> Result<Self> {
        let mut h = Self::new(bins)?;
        for &r in samples {
            h.add(r);
        }
        Ok(h)
    }

    pub fn from_counts(counts: Vec<u64>) -> Result<Self> {
        if counts.is_empty() {
            return domain("histogram needs at least one bin");
        }
        let total = counts.iter().sum();
        Ok(Self { counts, total })
    }

    pub fn bins(&self) -> usize {
        self.counts.len()
    }

    pub fn width(&self) -> f64 {
        1.0 / self.bins() as f64
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    /// `(left, right)` edges of bin `i`.
    pub fn edges(&self, i: usize) -> (f64, f64) {
        let w = self.width();
        (i as f64 * w, (i + 1) as f64 * w)
    }

    /// Adds one sample; values are clamped into `[0, 1]`, and `r = 1` lands
    /// in the last bin.
    pub fn add(&mut self, r: f64) {
        let b = self.bins();
        let i = ((r.clamp(0.0, 1.0) * b as f64) as usize).min(b - 1);
        self.counts[i] += 1;
        self.total += 1;
    }

    pub fn merge(&mut self, other: &Self) -> Result<()> {
        if other.bins() != self.bins() {
            return Err(Error::Config(format!(
                "cannot merge histograms with {} and {} bins",
                self.bins(),
                other.bins()
            )));
        }
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
        self.total += other.total;
        Ok(())
    }

    /// Normalized density per bin (integrates to 1).
    pub fn density(&self) -> Result<Vec<f64>> {
        if self.total == 0 {
            return Err(Error::EmptyHistogram);
        }
        let scale = self.bins() as f64 / self.total as f64;
        Ok(self.counts.iter().map(|&c| c as f64 * scale).collect())
    }

    /// Piecewise-linear CDF evaluated at the bin edges `1/B, 2/B, ..., 1`.
    pub fn cdf_at_edges(&self) -> Result<Vec<f64>> {
        if self.total == 0 {
            return Err(Error::EmptyHistogram);
        }
        let mut acc = 0u64;
        Ok(self
            .counts
            .iter()
            .map(|&c| {
                acc += c;
                acc as f64 / self.total as f64
            })
            .collect())
    }
}
