//! Join point: every sector bound, their maximum `mu_3`, and the gap.

use serde::Serialize;

use super::{
    antisym_sector, large_ell_bound_with, large_ell_monotone, mid_ell_check, small_ell_bound,
    Evidence, LargeEllOptions, MidEllOptions, Sector, SectorBound, LARGE_ELL_MIN, W2,
};
use crate::error::Result;

#[derive(Debug, Clone, Serialize)]
pub struct GapOptions {
    pub large: LargeEllOptions,
    /// `ell` values on which the large-`ell` bound must be non-increasing.
    pub monotone_ells: Vec<usize>,
    pub mid: MidEllOptions,
}

impl Default for GapOptions {
    fn default() -> Self {
        Self {
            large: LargeEllOptions::default(),
            monotone_ells: (LARGE_ELL_MIN..=200).step_by(10).collect(),
            mid: MidEllOptions::default(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GapReport {
    pub sectors: Vec<SectorBound>,
    pub mu3: f64,
    pub gap: f64,
    pub binding: Sector,
}

/// Gap from an explicit list of sector bounds.
pub fn assemble_from(sectors: Vec<SectorBound>) -> Result<GapReport> {
    let binding = sectors
        .iter()
        .max_by(|a, b| a.lambda_bound.total_cmp(&b.lambda_bound))
        .ok_or_else(|| crate::Error::Config("no sector bounds to assemble".into()))?;
    let mu3 = binding.lambda_bound;
    let binding = binding.sector;
    Ok(GapReport {
        sectors,
        mu3,
        gap: W2 - mu3,
        binding,
    })
}

/// Runs all pipelines with default settings.
pub fn assemble_gap() -> Result<GapReport> {
    assemble_gap_with(&GapOptions::default())
}

pub fn assemble_gap_with(opts: &GapOptions) -> Result<GapReport> {
    let ((anti, large), (mid, small)) = rayon::join(
        || {
            rayon::join(antisym_sector, || -> Result<SectorBound> {
                large_ell_monotone(&opts.monotone_ells, opts.large)?;
                let mut b = large_ell_bound_with(LARGE_ELL_MIN, opts.large)?;
                if let Evidence::LargeEll { monotone_over, .. } = &mut b.evidence {
                    *monotone_over = opts.monotone_ells.clone();
                }
                Ok(b)
            })
        },
        || {
            rayon::join(
                || mid_ell_check(opts.mid),
                || (0..=5).map(small_ell_bound).collect::<Result<Vec<_>>>(),
            )
        },
    );
    let mut sectors = vec![anti?, large?, mid?];
    sectors.extend(small?);
    assemble_from(sectors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gapbounds::Evidence;

    fn dummy(sector: Sector, v: f64) -> SectorBound {
        SectorBound::new(
            sector,
            v,
            Evidence::AntiSymmetric {
                t: 0.5,
                psi_term: v,
                zeta_term: v,
            },
        )
        .unwrap()
    }

    #[test]
    fn all_half_gives_quarter() {
        let r = assemble_from(vec![
            dummy(Sector::AntiSymmetric, 0.5),
            dummy(Sector::SymMidEll, 0.5),
        ])
        .unwrap();
        assert_eq!(r.gap, 0.25);
    }

    #[test]
    fn antisym_does_not_bind_against_large_ell() {
        let r = assemble_from(vec![
            dummy(Sector::AntiSymmetric, 0.729),
            dummy(Sector::SymLargeEll, 0.73016),
        ])
        .unwrap();
        assert_eq!(r.binding, Sector::SymLargeEll);
        assert!((r.gap - 0.01984).abs() < 1e-12);
    }

    #[test]
    fn empty_is_error() {
        assert!(assemble_from(vec![]).is_err());
    }

    #[test]
    fn full_assembly() {
        let r = assemble_gap().unwrap();
        assert!(r.gap >= 0.0198, "gap {}", r.gap);
        assert!(r.mu3 <= 0.73016 + 1e-6);
        assert_eq!(r.binding, Sector::SymLargeEll);
        assert_eq!(r.sectors.len(), 9);
        let max = r.sectors.iter().map(|s| s.lambda_bound).fold(0.0, f64::max);
        assert_eq!(r.gap, W2 - max);
    }
}
