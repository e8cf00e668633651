//! Symmetric sector, `ell >= 70`.
//!
//! In the orthonormal Jacobi basis the sector operator is bounded by
//!
//! ```text
//! lambda_ell <= 1/4 [ sup_n 2 b~(1 + 2 k_off) + sup_n (1 - a~)(1 + 2 k_diag) ]
//! ```
//!
//! where `k_diag`, `k_off` are monotone envelopes of `kappa`. The suprema are
//! found by scanning `n` up to [`n_cut`]; the last 100 scanned values must be
//! strictly decreasing and below the running maximum, otherwise the scan is
//! rejected.

use serde::Serialize;

use super::{Evidence, Sector, SectorBound};
use crate::error::{domain, Error, Result};
use crate::jacobi::three_term_coeffs;
use crate::kspectrum::{kappa_ell_free, kappa_hat, kappa_tilde};

pub const LARGE_ELL_MIN: usize = 70;
const TAIL_CHECK: usize = 100;

/// Which upper bound on `kappa` enters a sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum KappaEnvelope {
    /// `sqrt(8e/3) / sqrt(n + sqrt(ell))`.
    Tilde,
    /// `sqrt(8e/3) / sqrt(n + 1)`.
    EllFree,
    /// `kappa_hat`, the tightest of the three.
    Hat,
}

impl KappaEnvelope {
    pub fn eval(self, n: usize, ell: usize) -> f64 {
        match self {
            Self::Tilde => kappa_tilde(n, ell),
            Self::EllFree => kappa_ell_free(n),
            Self::Hat => kappa_hat(n, ell),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LargeEllOptions {
    pub diagonal: KappaEnvelope,
    pub off_diagonal: KappaEnvelope,
}

impl Default for LargeEllOptions {
    /// `kappa_tilde` on the diagonal, the `ell`-free envelope off it. This
    /// pairing puts the off-diagonal supremum for `ell = 70` at `n = 53`.
    fn default() -> Self {
        Self {
            diagonal: KappaEnvelope::Tilde,
            off_diagonal: KappaEnvelope::EllFree,
        }
    }
}

impl LargeEllOptions {
    pub fn uniform(envelope: KappaEnvelope) -> Self {
        Self {
            diagonal: envelope,
            off_diagonal: envelope,
        }
    }
}

/// Scan cutoff `max(ceil(4 ell^{3/2}), 2000)`.
pub fn n_cut(ell: usize) -> usize {
    let c = (4.0 * (ell as f64).powf(1.5)).ceil() as usize;
    c.max(2000)
}

fn sup_with_tail_check(seq: &[f64], ell: usize, name: &'static str) -> Result<(usize, f64)> {
    let (arg, sup) = seq
        .iter()
        .copied()
        .enumerate()
        .fold(
            (0, f64::NEG_INFINITY),
            |acc, (i, v)| if v > acc.1 { (i, v) } else { acc },
        );
    let tail = &seq[seq.len() - TAIL_CHECK..];
    let decreasing = tail.windows(2).all(|w| w[1] < w[0]);
    let below = arg < seq.len() - TAIL_CHECK && tail[0] < sup;
    if !(decreasing && below) {
        return Err(Error::TailNotDecreasing {
            ell,
            sequence: name,
            n_cut: seq.len() - 1,
        });
    }
    Ok((arg, sup))
}

pub fn large_ell_bound(ell: usize) -> Result<SectorBound> {
    large_ell_bound_with(ell, LargeEllOptions::default())
}

pub fn large_ell_bound_with(ell: usize, opts: LargeEllOptions) -> Result<SectorBound> {
    if ell < 4 {
        return domain(format!("envelope bounds need ell >= 4, got {ell}"));
    }
    let cut = n_cut(ell);
    let mut diag = Vec::with_capacity(cut + 1);
    let mut off = Vec::with_capacity(cut + 1);
    for n in 0..=cut {
        let c = three_term_coeffs(ell, n);
        diag.push((1.0 - c.a_tilde) * (1.0 + 2.0 * opts.diagonal.eval(n, ell)));
        off.push(2.0 * c.b_tilde * (1.0 + 2.0 * opts.off_diagonal.eval(n, ell)));
    }
    let (dn, dsup) = sup_with_tail_check(&diag, ell, "diagonal")?;
    let (on, osup) = sup_with_tail_check(&off, ell, "off-diagonal")?;
    SectorBound::new(
        Sector::SymLargeEll,
        0.25 * (dsup + osup),
        Evidence::LargeEll {
            ell,
            n_cut: cut,
            diagonal_envelope: opts.diagonal,
            off_diagonal_envelope: opts.off_diagonal,
            diag_sup_n: dn,
            diag_sup: dsup,
            offdiag_sup_n: on,
            offdiag_sup: osup,
            monotone_over: Vec::new(),
        },
    )
}

/// Bounds at each `ell` (ascending); errors if any bound increases.
pub fn large_ell_monotone(ells: &[usize], opts: LargeEllOptions) -> Result<Vec<(usize, f64)>> {
    use rayon::prelude::*;
    let vals: Vec<(usize, f64)> = ells
        .par_iter()
        .map(|&l| large_ell_bound_with(l, opts).map(|b| (l, b.lambda_bound)))
        .collect::<Result<_>>()?;
    for w in vals.windows(2) {
        if w[1].1 > w[0].1 {
            return Err(Error::NotMonotone {
                from: w[0].0,
                from_value: w[0].1,
                to: w[1].0,
                to_value: w[1].1,
            });
        }
    }
    Ok(vals)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sups(b: &SectorBound) -> (usize, f64, usize, f64) {
        match &b.evidence {
            Evidence::LargeEll {
                diag_sup_n,
                diag_sup,
                offdiag_sup_n,
                offdiag_sup,
                ..
            } => (*diag_sup_n, *diag_sup, *offdiag_sup_n, *offdiag_sup),
            e => panic!("unexpected evidence {e:?}"),
        }
    }

    #[test]
    fn cutoff() {
        assert_eq!(n_cut(70), 2343);
        assert_eq!(n_cut(10), 2000);
    }

    #[test]
    fn ell_70_reference_values() {
        let b = large_ell_bound(70).unwrap();
        let (dn, d, on, o) = sups(&b);
        assert_eq!(dn, 66);
        assert!(d <= 1.4351);
        assert_eq!(on, 53);
        assert!(o <= 1.4855);
        assert!(b.lambda_bound <= 0.73016);
    }

    #[test]
    fn tighter_envelopes_give_smaller_bounds() {
        let mixed = large_ell_bound(70).unwrap().lambda_bound;
        let tilde = large_ell_bound_with(70, LargeEllOptions::uniform(KappaEnvelope::Tilde))
            .unwrap()
            .lambda_bound;
        let hat = large_ell_bound_with(70, LargeEllOptions::uniform(KappaEnvelope::Hat))
            .unwrap()
            .lambda_bound;
        assert!(hat <= tilde && tilde <= mixed);
    }

    #[test]
    fn small_ell_rejected() {
        assert!(large_ell_bound(3).is_err());
    }
}
