use serde::{Deserialize, Serialize};

use super::histogram::RadialHistogram;
use crate::error::{domain, Error, Result};

/// `16/pi`, normalizing `r^2 sqrt(1 - r^2)` on `[0, 1]`.
pub const EQUILIBRIUM_CONST: f64 = 16.0 / std::f64::consts::PI;

/// Entropies at or below `e^-6` are treated as noise by [`fit_decay_rate`].
pub const NOISE_FLOOR: f64 = 0.002_478_752_176_666_358_4;

/// `(16/pi) r^2 sqrt(1 - r^2)`, the radial law of one rescaled speed at equilibrium.
pub fn equilibrium_radial_density(r: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&r) {
        return domain(format!("radius {r} outside [0, 1]"));
    }
    Ok(EQUILIBRIUM_CONST * r * r * (1.0 - r * r).sqrt())
}

fn kl_sum(hist: &RadialHistogram, first_bin: usize, at: impl Fn(usize) -> f64) -> Result<f64> {
    let p = hist.density()?;
    let w = hist.width();
    let mut s = 0.0;
    for (i, &pi) in p.iter().enumerate().skip(first_bin) {
        if pi > 0.0 {
            let q = equilibrium_radial_density(at(i))?;
            s += pi * (pi / q).ln() * w;
        }
    }
    Ok(s)
}

/// Relative entropy of the histogram density against equilibrium, with the
/// equilibrium density taken at each bin's left edge and the first bin
/// (where it vanishes) skipped.
pub fn relative_entropy(hist: &RadialHistogram) -> Result<f64> {
    let w = hist.width();
    kl_sum(hist, 1, |i| i as f64 * w)
}

/// Same sum with the equilibrium density at bin midpoints, over all bins.
pub fn relative_entropy_midpoint(hist: &RadialHistogram) -> Result<f64> {
    let w = hist.width();
    kl_sum(hist, 0, |i| (i as f64 + 0.5) * w)
}

/// Relative entropy of the three radial marginals over time.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntropySeries {
    pub times: Vec<f64>,
    /// Marginal of the particle drawn from the initial density.
    pub sampled: Vec<f64>,
    /// Marginals of the two particles fixed by the constraints.
    pub implied1: Vec<f64>,
    pub implied2: Vec<f64>,
}

impl EntropySeries {
    pub fn points(&self) -> Vec<(f64, f64)> {
        self.times
            .iter()
            .copied()
            .zip(self.sampled.iter().copied())
            .collect()
    }
}

/// Result of a log-linear fit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecayFit {
    pub rate: f64,
    pub intercept: f64,
    /// Points above the noise floor that entered the fit.
    pub used: usize,
    /// Time span of the fit window.
    pub window: (f64, f64),
}

/// Least-squares slope of `ln H` against `t` over points with `H > e^-6`;
/// returns the negated slope as a positive rate.
pub fn fit_decay_rate(points: &[(f64, f64)]) -> Result<DecayFit> {
    let usable: Vec<(f64, f64)> = points
        .iter()
        .copied()
        .filter(|&(t, h)| t.is_finite() && h > NOISE_FLOOR)
        .map(|(t, h)| (t, h.ln()))
        .collect();
    if usable.len() < 3 {
        return Err(Error::InsufficientData {
            usable: usable.len(),
        });
    }
    let n = usable.len() as f64;
    let mt = usable.iter().map(|p| p.0).sum::<f64>() / n;
    let my = usable.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = usable.iter().map(|p| (p.0 - mt) * (p.1 - my)).sum();
    let sxx: f64 = usable.iter().map(|p| (p.0 - mt).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::InsufficientData { usable: 1 });
    }
    let slope = sxy / sxx;
    let lo = usable.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
    let hi = usable.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
    Ok(DecayFit {
        rate: -slope,
        intercept: my - slope * mt,
        used: usable.len(),
        window: (lo, hi),
    })
}
