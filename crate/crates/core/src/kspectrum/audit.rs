//! Cross-checks of alternative eigenvalue formulas against the ratio oracle.
//!
//! Each identity is evaluated on a rectangle of indices and compared with
//! [`kappa`](super::kappa). Disagreements are reported, never corrected.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;
use std::f64::consts::PI;

use super::kappa_row;

/// Discrepancies at or below this count as agreement.
pub const CONSISTENCY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Consistent,
    Inconsistent,
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityAudit {
    pub name: &'static str,
    pub formula: &'static str,
    /// Inclusive `n` range checked.
    pub n_range: (usize, usize),
    /// Inclusive `ell` range checked.
    pub ell_range: (usize, usize),
    pub max_discrepancy: f64,
    /// `(n, ell)` where the largest discrepancy occurred.
    pub worst_at: (usize, usize),
    pub verdict: Verdict,
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityAuditReport {
    pub rows: Vec<IdentityAudit>,
}

impl IdentityAuditReport {
    pub fn get(&self, name: &str) -> Option<&IdentityAudit> {
        self.rows.iter().find(|r| r.name == name)
    }
}

struct Scan {
    worst: f64,
    at: (usize, usize),
}

impl Scan {
    fn new() -> Self {
        Self {
            worst: 0.0,
            at: (0, 0),
        }
    }

    fn push(&mut self, n: usize, ell: usize, d: f64) {
        let d = if d.is_nan() { f64::INFINITY } else { d.abs() };
        if d > self.worst {
            self.worst = d;
            self.at = (n, ell);
        }
    }

    fn finish(
        self,
        name: &'static str,
        formula: &'static str,
        n_range: (usize, usize),
        ell_range: (usize, usize),
    ) -> IdentityAudit {
        IdentityAudit {
            name,
            formula,
            n_range,
            ell_range,
            max_discrepancy: self.worst,
            worst_at: self.at,
            verdict: if self.worst <= CONSISTENCY_TOL {
                Verdict::Consistent
            } else {
                Verdict::Inconsistent
            },
        }
    }
}

fn sign(n: usize) -> f64 {
    if n % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// `kappa_{n,0}` exactly: `1/(n+1)`, `-1/(n+1)`, `0` by `n mod 3`.
fn kappa_zero_exact(n: usize) -> BigRational {
    let num = match n % 3 {
        0 => 1,
        1 => -1,
        _ => 0,
    };
    BigRational::new(BigInt::from(num), BigInt::from(n as u64 + 1))
}

fn binom(n: usize, k: usize) -> BigInt {
    let mut acc = BigInt::from(1u8);
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `(-2)^ell * sum_j binom(ell, j) C^{(j)}_{n,ell} kappa_{n+j,0}` in exact arithmetic.
fn binomial_expansion(n: usize, ell: usize) -> BigRational {
    // Factors are half-integers; work with doubled values so everything is integral.
    let mut numer = BigInt::from(1u8);
    for i in 1..=ell {
        numer *= BigInt::from(2 * (n + i) + 1);
    }
    let numer = BigRational::new(numer, BigInt::from(2u8).pow(ell as u32));
    let mut sum = BigRational::zero();
    for j in 0..=ell {
        let k0 = kappa_zero_exact(n + j);
        if k0.is_zero() {
            continue;
        }
        let mut denom = BigInt::from(1u8);
        for i in (0..=ell).filter(|&i| i != j) {
            denom *= BigInt::from(2 * n + i + j + 2);
        }
        let c = &numer / BigRational::from_integer(denom);
        sum += BigRational::from_integer(binom(ell, j)) * c * k0;
    }
    let scale = BigRational::from_integer(BigInt::from(-2).pow(ell as u32));
    sum * scale
}

/// Audits the alternative formulas over `n <= n_max`, `ell <= ell_max`.
///
/// Rows:
/// * `kappa0_sine`: `kappa_{n,0} = (-1)^n sin(n pi/3) / (n+1)`;
/// * `kappa0_sine_shifted`: `kappa_{n,0} = (2/sqrt 3) (-1)^n sin((n+1) pi/3) / (n+1)`;
/// * `kappa_ell_recurrence`: `-kappa_{n,l}/2 = (n+l+1/2)/(2n+l+1) kappa_{n,l-1} + (n+1/2)/(2n+l+1) kappa_{n+1,l-1}`,
///   discrepancy measured on the `-kappa/2` side;
/// * `kappa1_expansion`: `kappa_{n,1} = -(kappa_{n,0} + kappa_{n+1,0})`;
/// * `kappa2_expansion`: `kappa_{n,2} = (n+5/2)/(n+2) kappa_{n,0} + kappa_{n+1,0} + (n+3/2)/(n+2) kappa_{n+2,0}`;
/// * `binomial_closed_form`: the `C^{(j)}_{n,l}` sum, evaluated in exact arithmetic
///   (the terms cancel heavily, so floating point would be meaningless).
pub fn audit_identities(n_max: usize, ell_max: usize) -> IdentityAuditReport {
    let rows_needed = ell_max.max(2);
    let table: Vec<Vec<f64>> = (0..=rows_needed)
        .map(|ell| kappa_row(ell, n_max + rows_needed + 2))
        .collect();
    let k = |n: usize, ell: usize| table[ell][n];
    let mut rows = Vec::new();

    let mut s = Scan::new();
    for n in 0..=n_max {
        let f = sign(n) * (n as f64 * PI / 3.0).sin() / (n as f64 + 1.0);
        s.push(n, 0, f - k(n, 0));
    }
    rows.push(s.finish(
        "kappa0_sine",
        "kappa(n,0) = (-1)^n sin(n pi/3)/(n+1)",
        (0, n_max),
        (0, 0),
    ));

    let mut s = Scan::new();
    for n in 0..=n_max {
        let f =
            2.0 / 3f64.sqrt() * sign(n) * ((n as f64 + 1.0) * PI / 3.0).sin() / (n as f64 + 1.0);
        s.push(n, 0, f - k(n, 0));
    }
    rows.push(s.finish(
        "kappa0_sine_shifted",
        "kappa(n,0) = (2/sqrt3) (-1)^n sin((n+1) pi/3)/(n+1)",
        (0, n_max),
        (0, 0),
    ));

    let mut s = Scan::new();
    for ell in 1..=ell_max.max(1) {
        for n in 0..=n_max {
            let d = 2.0 * n as f64 + ell as f64 + 1.0;
            let rhs = (n as f64 + ell as f64 + 0.5) / d * k(n, ell - 1)
                + (n as f64 + 0.5) / d * k(n + 1, ell - 1);
            s.push(n, ell, rhs + 0.5 * k(n, ell));
        }
    }
    rows.push(s.finish(
        "kappa_ell_recurrence",
        "-kappa(n,l)/2 = (n+l+1/2)/(2n+l+1) kappa(n,l-1) + (n+1/2)/(2n+l+1) kappa(n+1,l-1)",
        (0, n_max),
        (1, ell_max.max(1)),
    ));

    let mut s = Scan::new();
    for n in 0..=n_max {
        s.push(n, 1, -(k(n, 0) + k(n + 1, 0)) - k(n, 1));
    }
    rows.push(s.finish(
        "kappa1_expansion",
        "kappa(n,1) = -(kappa(n,0) + kappa(n+1,0))",
        (0, n_max),
        (1, 1),
    ));

    let mut s = Scan::new();
    for n in 0..=n_max {
        let nf = n as f64;
        let f =
            (nf + 2.5) / (nf + 2.0) * k(n, 0) + k(n + 1, 0) + (nf + 1.5) / (nf + 2.0) * k(n + 2, 0);
        s.push(n, 2, f - k(n, 2));
    }
    rows.push(s.finish(
        "kappa2_expansion",
        "kappa(n,2) = (n+5/2)/(n+2) kappa(n,0) + kappa(n+1,0) + (n+3/2)/(n+2) kappa(n+2,0)",
        (0, n_max),
        (2, 2),
    ));

    let mut s = Scan::new();
    for ell in 0..=ell_max {
        for n in 0..=n_max {
            let exact = binomial_expansion(n, ell).to_f64().unwrap_or(f64::NAN);
            s.push(n, ell, exact - k(n, ell));
        }
    }
    rows.push(s.finish(
        "binomial_closed_form",
        "kappa(n,l) = (-2)^l sum_j binom(l,j) C(n,l,j) kappa(n+j,0)",
        (0, n_max),
        (0, ell_max),
    ));

    IdentityAuditReport { rows }
}
