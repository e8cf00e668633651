//! Upper bounds on the top eigenvalue of the averaged projection in each
//! symmetry sector, and their assembly into a lower bound on the gap.
//!
//! The gap of the three-particle process is `3/4 - mu_3`, where `mu_3` is
//! the largest eigenvalue of the projection below `3/4`. Each pipeline
//! here produces a [`SectorBound`] for one family of eigenfunctions:
//!
//! | sector | pipeline |
//! |---|---|
//! | anti-symmetric | [`antisym_optimize`] |
//! | symmetric, `ell >= 70` | [`large_ell_bound`] |
//! | symmetric, `6 <= ell <= 69` | [`mid_ell_check`] |
//! | symmetric, `ell <= 5` | [`small_ell_bound`] |

mod antisym;
mod assemble;
mod entropy_production;
mod large_ell;
mod mid_ell;
mod small_ell;
pub mod tridiag;

use serde::Serialize;

use crate::error::{Error, Result};

pub use antisym::{antisym_bound, antisym_optimize, antisym_sector, REFERENCE_T};
pub use assemble::{assemble_from, assemble_gap, assemble_gap_with, GapOptions, GapReport};
pub use entropy_production::{entropy_production_constant, EntropyProductionResult};
pub use large_ell::{
    large_ell_bound, large_ell_bound_with, large_ell_monotone, n_cut, KappaEnvelope,
    LargeEllOptions, LARGE_ELL_MIN,
};
pub use mid_ell::{mid_ell_check, MidEllOptions, MID_THRESHOLD};
pub use small_ell::{
    build_z, build_z_exact_ell0, exact_ell0_as_f64, reference_row, small_ell_bound,
    small_ell_split, IndexConvention, ReferenceRow, SmallEllSplit, BLOCK_SIZES, REFERENCE_TABLE,
    SMALL_ELL_MAX,
};
pub use tridiag::{sym2_top_eigenvalue, tridiag_top_eigenvalue, TridiagMatrix};

/// Eigenvalue of the projection on the trivial (conserved-quantity free) part.
pub const W2: f64 = 0.75;

/// One-sided slack used when comparing a computed value against a stated
/// upper bound.
pub const BOUND_SLACK: f64 = 1e-9;

/// `value <= limit` up to [`BOUND_SLACK`].
pub fn within_bound(value: f64, limit: f64) -> bool {
    value <= limit + BOUND_SLACK
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "ell", rename_all = "snake_case")]
pub enum Sector {
    AntiSymmetric,
    SymLargeEll,
    SymMidEll,
    SymSmallEll(usize),
}

impl std::fmt::Display for Sector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Sector::AntiSymmetric => write!(f, "antisymmetric"),
            Sector::SymLargeEll => write!(f, "symmetric ell>=70"),
            Sector::SymMidEll => write!(f, "symmetric 6<=ell<=69"),
            Sector::SymSmallEll(l) => write!(f, "symmetric ell={l}"),
        }
    }
}

/// Intermediate quantities behind a sector bound.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "pipeline", rename_all = "snake_case")]
pub enum Evidence {
    AntiSymmetric {
        t: f64,
        psi_term: f64,
        zeta_term: f64,
    },
    LargeEll {
        ell: usize,
        n_cut: usize,
        diagonal_envelope: KappaEnvelope,
        off_diagonal_envelope: KappaEnvelope,
        diag_sup_n: usize,
        diag_sup: f64,
        offdiag_sup_n: usize,
        offdiag_sup: f64,
        /// `ell` values over which the bound was confirmed non-increasing.
        monotone_over: Vec<usize>,
    },
    MidEll {
        ell_lo: usize,
        ell_hi: usize,
        n_boundary: usize,
        threshold: f64,
        max_abs_kappa: f64,
        max_at: (usize, usize),
        hat_at_boundary: f64,
    },
    SmallEll(SmallEllSplit),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SectorBound {
    pub sector: Sector,
    pub lambda_bound: f64,
    pub evidence: Evidence,
}

impl SectorBound {
    /// Fails unless `lambda_bound < 3/4`.
    pub fn new(sector: Sector, lambda_bound: f64, evidence: Evidence) -> Result<Self> {
        if lambda_bound.is_nan() || lambda_bound >= W2 {
            let (n, ell) = match sector {
                Sector::SymSmallEll(l) => (0, l),
                _ => (0, 0),
            };
            return Err(Error::BoundViolated {
                what: format!("{sector} sector bound"),
                n,
                ell,
                value: lambda_bound,
                limit: W2,
            });
        }
        Ok(Self {
            sector,
            lambda_bound,
            evidence,
        })
    }
}
