//! Entropy-production constants `C_{N,alpha}` and the gap bound `C/2` they imply.

use num_rational::Rational64;
use serde::Serialize;

use crate::error::{domain, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EntropyProductionResult {
    pub n: u32,
    pub alpha: u32,
    #[serde(serialize_with = "ser_ratio")]
    pub c: Rational64,
    #[serde(serialize_with = "ser_ratio")]
    pub gap_bound: Rational64,
    /// `C <= 0`: the bound says nothing.
    pub degenerate: bool,
}

fn ser_ratio<S: serde::Serializer>(r: &Rational64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

/// `C_{N,2} = 1 - 2N/(N-1)^2`, `C_{N,0} = (N-3)/(N-1)`.
pub fn entropy_production_constant(n: u32, alpha: u32) -> Result<EntropyProductionResult> {
    if n < 2 {
        return domain(format!("need at least 2 particles, got {n}"));
    }
    let nn = i64::from(n);
    let c = match alpha {
        2 => Rational64::from_integer(1) - Rational64::new(2 * nn, (nn - 1) * (nn - 1)),
        0 => Rational64::new(nn - 3, nn - 1),
        other => return Err(Error::UnsupportedAlpha(other)),
    };
    Ok(EntropyProductionResult {
        n,
        alpha,
        c,
        gap_bound: c / 2,
        degenerate: c <= Rational64::from_integer(0),
    })
}
