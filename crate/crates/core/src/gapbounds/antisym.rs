//! Anti-symmetric sector: split into a part orthogonal to the `ell = 1`
//! modes and the rest, weighted by a free parameter `t`.

use super::{Evidence, Sector, SectorBound};
use crate::error::{domain, Result};

/// Split parameter used in the reference computation.
pub const REFERENCE_T: f64 = 0.943;

fn psi_term(t: f64) -> f64 {
    11.0 / (16.0 * t)
}

fn zeta_term(t: f64) -> f64 {
    0.375 * (1.0 + t)
}

/// `max(11/(16 t), 3/8 (1 + t))`, the worst case over the split.
pub fn antisym_bound(t: f64) -> Result<f64> {
    if !(t > 0.0 && t < 1.0) {
        return domain(format!("split parameter t = {t} outside (0, 1)"));
    }
    Ok(psi_term(t).max(zeta_term(t)))
}

/// Minimizes [`antisym_bound`] over `(0, 1)` by golden-section search.
/// Returns `(t_star, bound)`.
pub fn antisym_optimize() -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let f = |t: f64| psi_term(t).max(zeta_term(t));
    let (mut a, mut b) = (0.5, 1.0 - 1e-12);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while b - a > 1e-13 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    let t = 0.5 * (a + b);
    (t, f(t))
}

/// Sector bound at the optimal split.
pub fn antisym_sector() -> Result<SectorBound> {
    let (t, bound) = antisym_optimize();
    SectorBound::new(
        Sector::AntiSymmetric,
        bound,
        Evidence::AntiSymmetric {
            t,
            psi_term: psi_term(t),
            zeta_term: zeta_term(t),
        },
    )
}
