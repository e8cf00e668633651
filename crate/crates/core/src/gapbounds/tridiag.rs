//! Symmetric tridiagonal matrices and their top eigenvalue.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

pub const DEFAULT_TOL: f64 = 1e-12;
pub const MAX_BISECTIONS: usize = 200;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TridiagMatrix {
    diag: Vec<f64>,
    offdiag: Vec<f64>,
}

impl TridiagMatrix {
    pub fn new(diag: Vec<f64>, offdiag: Vec<f64>) -> Result<Self> {
        if diag.is_empty() {
            return domain("tridiagonal matrix needs at least one row");
        }
        if offdiag.len() + 1 != diag.len() {
            return domain(format!(
                "off-diagonal has {} entries for a {}x{} matrix",
                offdiag.len(),
                diag.len(),
                diag.len()
            ));
        }
        if diag.iter().chain(&offdiag).any(|v| !v.is_finite()) {
            return domain("tridiagonal entries must be finite");
        }
        Ok(Self { diag, offdiag })
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn offdiag(&self) -> &[f64] {
        &self.offdiag
    }

    pub fn size(&self) -> usize {
        self.diag.len()
    }

    /// Leading principal `k x k` block.
    pub fn leading(&self, k: usize) -> Result<Self> {
        if k == 0 || k > self.size() {
            return domain(format!("block size {k} outside 1..={}", self.size()));
        }
        Self::new(self.diag[..k].to_vec(), self.offdiag[..k - 1].to_vec())
    }

    /// Gershgorin enclosure `[lo, hi]` of the spectrum.
    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.size();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let left = if i > 0 {
                self.offdiag[i - 1].abs()
            } else {
                0.0
            };
            let right = if i + 1 < n {
                self.offdiag[i].abs()
            } else {
                0.0
            };
            lo = lo.min(self.diag[i] - left - right);
            hi = hi.max(self.diag[i] + left + right);
        }
        (lo, hi)
    }

    /// Number of eigenvalues strictly below `x` (Sturm sequence count).
    pub fn sturm_count(&self, x: f64) -> usize {
        let mut count = 0;
        let mut q = 1.0;
        for i in 0..self.size() {
            let coupling = if i == 0 {
                0.0
            } else {
                self.offdiag[i - 1] * self.offdiag[i - 1] / q
            };
            q = self.diag[i] - x - coupling;
            if q == 0.0 {
                q = -f64::EPSILON * (x.abs() + 1.0);
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    pub fn top_eigenvalue(&self) -> f64 {
        tridiag_top_eigenvalue(self, DEFAULT_TOL)
    }
}

/// Largest eigenvalue by bisection on the Sturm count inside the Gershgorin
/// interval. Absolute error at most `tol` (or the 200-step limit).
pub fn tridiag_top_eigenvalue(m: &TridiagMatrix, tol: f64) -> f64 {
    let n = m.size();
    let (lo, hi) = m.gershgorin();
    let (mut lo, mut hi) = (lo - tol, hi + tol);
    for _ in 0..MAX_BISECTIONS {
        if hi - lo <= tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if m.sturm_count(mid) == n {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Top eigenvalue of `[[p, r], [r, q]]`.
pub fn sym2_top_eigenvalue(p: f64, r: f64, q: f64) -> f64 {
    let mean = 0.5 * (p + q);
    let half_gap = 0.5 * (p - q);
    mean + half_gap.hypot(r)
}
