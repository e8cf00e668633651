//! Spectral-gap toolkit for the three-particle conjugate Kac process.
//!
//! The crate is organised around the correlation operator `K` on the unit
//! ball: its eigenvalues `kappa(n, ell)` are ratios of Jacobi polynomials
//! with parameters `(1/2, ell + 1/2)` evaluated at `-1/2`. Everything else
//! is built on top of that single oracle:
//!
//! * [`jacobi`] evaluates the polynomials, their norms and the three-term
//!   coefficients of the multiplication operator in the orthonormal basis;
//! * [`kspectrum`] tabulates `kappa`, its envelopes, and audits alternative
//!   closed forms against the ratio definition;
//! * [`gapbounds`] runs the per-sector bounding pipelines and assembles the
//!   lower bound on the gap `3/4 - mu_3`;
//! * [`montecarlo`] simulates the jump process and measures relative-entropy
//!   decay of the radial marginals;
//! * [`verify`] replays every reference check and reports pass/fail rows.

pub mod error;
pub mod gapbounds;
pub mod io;
pub mod jacobi;
pub mod kspectrum;
pub mod montecarlo;
pub mod special;
pub mod verify;

pub use error::{Error, Result};
pub use gapbounds::{assemble_gap, GapReport, Sector, SectorBound};
pub use jacobi::{three_term_coeffs, JacobiParams, ThreeTermCoeffs};
pub use kspectrum::{kappa, kappa_hat, kappa_table, kappa_tilde, KappaTable};
pub use montecarlo::{simulate, ParticleState, SimConfig};
pub use verify::{verify_all, VerifyOptions, VerifyReport};
