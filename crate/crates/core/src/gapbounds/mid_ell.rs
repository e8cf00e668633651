//! Symmetric sector, `6 <= ell <= 69`, via the crude bound
//! `lambda_ell <= 1/2 (1 + 2 max_n kappa_{n,ell})`.
//!
//! Below `n_boundary` every eigenvalue is checked directly; above it
//! `kappa_hat`, which decreases in both `n` and `ell`, is evaluated at the
//! corner `(n_boundary, ell_lo)`.

use rayon::prelude::*;
use serde::Serialize;

use super::{Evidence, Sector, SectorBound};
use crate::error::{domain, Error, Result};
use crate::kspectrum::{kappa_hat, kappa_row};

pub const MID_THRESHOLD: f64 = 0.23;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MidEllOptions {
    pub ell_lo: usize,
    pub ell_hi: usize,
    pub n_boundary: usize,
    pub threshold: f64,
}

impl Default for MidEllOptions {
    fn default() -> Self {
        Self {
            ell_lo: 6,
            ell_hi: 69,
            n_boundary: 151,
            threshold: MID_THRESHOLD,
        }
    }
}

pub fn mid_ell_check(opts: MidEllOptions) -> Result<SectorBound> {
    if opts.ell_lo > opts.ell_hi {
        return domain(format!("empty ell range {}..={}", opts.ell_lo, opts.ell_hi));
    }
    let hat = kappa_hat(opts.n_boundary, opts.ell_lo);
    if hat > opts.threshold {
        return Err(Error::BoundViolated {
            what: "kappa_hat beyond the scanned range".into(),
            n: opts.n_boundary,
            ell: opts.ell_lo,
            value: hat,
            limit: opts.threshold,
        });
    }
    let (max_abs, n, ell) = (opts.ell_lo..=opts.ell_hi)
        .into_par_iter()
        .map(|ell| {
            kappa_row(ell, opts.n_boundary)
                .into_iter()
                .enumerate()
                .map(|(n, k)| (k.abs(), n, ell))
                .fold((0.0, 0, ell), |a, b| if b.0 > a.0 { b } else { a })
        })
        .reduce(
            || (0.0, 0, 0),
            |a, b| {
                // ties resolved towards the smaller ell so the result is schedule-independent
                if b.0 > a.0 || (b.0 == a.0 && b.2 < a.2) {
                    b
                } else {
                    a
                }
            },
        );
    if max_abs > opts.threshold {
        return Err(Error::BoundViolated {
            what: "|kappa| in the scanned range".into(),
            n,
            ell,
            value: max_abs,
            limit: opts.threshold,
        });
    }
    SectorBound::new(
        Sector::SymMidEll,
        0.5 * (1.0 + 2.0 * opts.threshold),
        Evidence::MidEll {
            ell_lo: opts.ell_lo,
            ell_hi: opts.ell_hi,
            n_boundary: opts.n_boundary,
            threshold: opts.threshold,
            max_abs_kappa: max_abs,
            max_at: (n, ell),
            hat_at_boundary: hat,
        },
    )
}
