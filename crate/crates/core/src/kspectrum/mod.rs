//! Eigenvalues of the correlation operator `K` for three particles.
//!
//! With `N = 3` the eigenvalue attached to the radial/angular index pair
//! `(n, ell)` is
//!
//! ```text
//! kappa(n, ell) = P_n^{(1/2, ell+1/2)}(-1/2) / P_n^{(1/2, ell+1/2)}(1) * (-1/2)^ell
//! ```
//!
//! and this ratio is the reference value for everything else in the crate.

mod audit;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::jacobi::{jacobi_ratio_seq, JacobiParams};

pub use audit::{audit_identities, IdentityAudit, IdentityAuditReport, Verdict};

/// Evaluation point `-1 + 2 / (N - 1)^2` for `N = 3`.
pub const EVAL_POINT: f64 = -0.5;
/// Angular prefactor base `-1 / (N - 1)`.
pub const ANGULAR_FACTOR: f64 = -0.5;
/// `8e/3`, the constant in both eigenvalue envelopes.
pub const ENVELOPE_CONST: f64 = 8.0 * std::f64::consts::E / 3.0;
/// Default cap on the number of cells in a [`KappaTable`].
pub const DEFAULT_CELL_BUDGET: usize = 10_000_000;

/// `kappa(n, ell)` for `n = 0..=n_max` in one recurrence pass.
pub fn kappa_row(ell: usize, n_max: usize) -> Vec<f64> {
    let params = JacobiParams::for_sector(ell);
    let prefactor = ANGULAR_FACTOR.powi(ell as i32);
    jacobi_ratio_seq(&params, n_max, EVAL_POINT)
        .expect("evaluation point lies inside [-1, 1]")
        .into_iter()
        .map(|r| r * prefactor)
        .collect()
}

/// Eigenvalue `kappa_{n, ell}` of `K`.
pub fn kappa(n: usize, ell: usize) -> f64 {
    kappa_row(ell, n)[n]
}

/// `kappa_{n, ell}` in exact rational arithmetic.
///
/// Runs the Jacobi recurrence over `Q`; cost grows quickly with `n`, so this
/// is meant for small indices.
pub fn kappa_exact(n: usize, ell: usize) -> BigRational {
    let q = |num: i64, den: i64| BigRational::new(BigInt::from(num), BigInt::from(den));
    let alpha = q(1, 2);
    let beta = q(2 * ell as i64 + 1, 2);
    let x = q(-1, 2);
    let two = q(2, 1);

    let mut prev = BigRational::one();
    let mut at_one = BigRational::one();
    let mut cur = if n == 0 {
        BigRational::one()
    } else {
        &alpha + BigRational::one() + (&alpha + &beta + &two) * (&x - BigRational::one()) / &two
    };
    if n >= 1 {
        at_one = &alpha + BigRational::one();
    }
    for k in 1..n {
        let kq = q(k as i64, 1);
        let s = &kq * &two + &alpha + &beta;
        let lead =
            (&s + BigRational::one()) * ((&s + &two) * &s * &x + &alpha * &alpha - &beta * &beta);
        let back = &two * (&kq + &alpha) * (&kq + &beta) * (&s + &two);
        let den =
            &two * (&kq + BigRational::one()) * (&kq + &alpha + &beta + BigRational::one()) * &s;
        let next = (lead * &cur - back * &prev) / den;
        prev = cur;
        cur = next;
        at_one = at_one * (&alpha + &kq + BigRational::one()) / (&kq + BigRational::one());
    }
    let mut factor = BigRational::one();
    for _ in 0..ell {
        factor *= q(-1, 2);
    }
    if cur.is_zero() {
        return cur;
    }
    cur / at_one * factor
}

/// Envelope `kappa_hat_{n, ell}`: `kappa_hat^2 = (8e/3) / sqrt((n + 1)(n + ell + 3/2))`.
pub fn kappa_hat(n: usize, ell: usize) -> f64 {
    let (nf, l) = (n as f64, ell as f64);
    (ENVELOPE_CONST / ((nf + 1.0) * (nf + l + 1.5)).sqrt()).sqrt()
}

/// Envelope `kappa_tilde_{n, ell} = sqrt(8e/3) / sqrt(n + sqrt(ell))`.
///
/// Dominates `kappa_hat` only for `ell >= 4`; infinite at `n = ell = 0`.
pub fn kappa_tilde(n: usize, ell: usize) -> f64 {
    ENVELOPE_CONST.sqrt() / (n as f64 + (ell as f64).sqrt()).sqrt()
}

/// `ell`-independent envelope `sqrt(8e/3) / sqrt(n + 1)`, which dominates
/// `kappa_hat` for every `ell`.
pub fn kappa_ell_free(n: usize) -> f64 {
    (ENVELOPE_CONST / (n as f64 + 1.0)).sqrt()
}

/// Dense table of `kappa` and its envelopes, row-major over `(ell, n)`.
#[derive(Debug, Clone, Serialize)]
pub struct KappaTable {
    pub n_max: usize,
    pub ell_max: usize,
    pub values: Vec<f64>,
    pub hat: Vec<f64>,
    pub tilde: Vec<f64>,
}

impl KappaTable {
    fn index(&self, n: usize, ell: usize) -> usize {
        assert!(
            n <= self.n_max && ell <= self.ell_max,
            "({n}, {ell}) outside table"
        );
        ell * (self.n_max + 1) + n
    }

    pub fn get(&self, n: usize, ell: usize) -> f64 {
        self.values[self.index(n, ell)]
    }

    pub fn hat(&self, n: usize, ell: usize) -> f64 {
        self.hat[self.index(n, ell)]
    }

    pub fn tilde(&self, n: usize, ell: usize) -> f64 {
        self.tilde[self.index(n, ell)]
    }

    pub fn row(&self, ell: usize) -> &[f64] {
        let start = self.index(0, ell);
        &self.values[start..start + self.n_max + 1]
    }

    /// `(n, ell, kappa, kappa_hat, kappa_tilde)` in storage order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, f64, f64, f64)> + '_ {
        let width = self.n_max + 1;
        (0..self.values.len()).map(move |i| {
            (
                i % width,
                i / width,
                self.values[i],
                self.hat[i],
                self.tilde[i],
            )
        })
    }

    /// Smallest entry together with its location, skipping `exclude`.
    pub fn min_excluding(&self, exclude: &[(usize, usize)]) -> Option<(f64, usize, usize)> {
        self.iter()
            .filter(|(n, l, ..)| !exclude.contains(&(*n, *l)))
            .map(|(n, l, k, ..)| (k, n, l))
            .min_by(|a, b| a.0.total_cmp(&b.0))
    }
}

pub fn kappa_table(n_max: usize, ell_max: usize) -> Result<KappaTable> {
    kappa_table_with_budget(n_max, ell_max, DEFAULT_CELL_BUDGET)
}

pub fn kappa_table_with_budget(n_max: usize, ell_max: usize, budget: usize) -> Result<KappaTable> {
    let requested = (n_max + 1).saturating_mul(ell_max + 1);
    if requested > budget {
        return Err(Error::CellBudget { requested, budget });
    }
    let rows: Vec<Vec<f64>> = (0..=ell_max)
        .into_par_iter()
        .map(|ell| kappa_row(ell, n_max))
        .collect();
    let values = rows.concat();
    let mut hat = Vec::with_capacity(requested);
    let mut tilde = Vec::with_capacity(requested);
    for ell in 0..=ell_max {
        for n in 0..=n_max {
            hat.push(kappa_hat(n, ell));
            tilde.push(kappa_tilde(n, ell));
        }
    }
    Ok(KappaTable {
        n_max,
        ell_max,
        values,
        hat,
        tilde,
    })
}

/// Shape of a residue-class subsequence over a window.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Monotonicity {
    Increasing,
    Decreasing,
    Constant,
    NotMonotone,
    /// Window too short to say anything.
    Inconclusive,
}

impl Monotonicity {
    pub fn is_monotone(self) -> bool {
        matches!(self, Self::Increasing | Self::Decreasing | Self::Constant)
    }
}

/// Differences smaller than this are treated as zero.
const FLAT_TOL: f64 = 1e-14;

fn classify(seq: &[f64]) -> Monotonicity {
    if seq.len() < 3 {
        return Monotonicity::Inconclusive;
    }
    let mut sign = 0i8;
    for w in seq.windows(2) {
        let d = w[1] - w[0];
        let s = if d.abs() <= FLAT_TOL {
            0
        } else if d > 0.0 {
            1
        } else {
            -1
        };
        if s == 0 {
            continue;
        }
        if sign == 0 {
            sign = s;
        } else if s != sign {
            return Monotonicity::NotMonotone;
        }
    }
    match sign {
        0 => Monotonicity::Constant,
        1 => Monotonicity::Increasing,
        _ => Monotonicity::Decreasing,
    }
}

/// For each residue `r` in `{0, 1, 2}`, whether `kappa_{3k + r, ell}` is
/// monotone over `n_min..=n_max`.
pub fn mod3_monotonicity_check(ell: usize, n_min: usize, n_max: usize) -> [Monotonicity; 3] {
    if n_max < n_min || n_max - n_min < 30 {
        return [Monotonicity::Inconclusive; 3];
    }
    let row = kappa_row(ell, n_max);
    let mut out = [Monotonicity::Inconclusive; 3];
    for (r, slot) in out.iter_mut().enumerate() {
        let seq: Vec<f64> = (n_min..=n_max)
            .filter(|n| n % 3 == r)
            .map(|n| row[n])
            .collect();
        *slot = classify(&seq);
    }
    out
}

/// Smallest `n0` such that all three residue classes are monotone on
/// `n0..=n_max` (window of at least 30), or `None`.
pub fn monotone_onset(ell: usize, n_max: usize) -> Option<usize> {
    if n_max < 30 {
        return None;
    }
    let row = kappa_row(ell, n_max);
    (0..=n_max - 30).find(|&n0| {
        (0..3).all(|r| {
            let seq: Vec<f64> = (n0..=n_max)
                .filter(|n| n % 3 == r)
                .map(|n| row[n])
                .collect();
            classify(&seq).is_monotone()
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exact_f64(n: usize, ell: usize) -> f64 {
        use num_traits::ToPrimitive;
        kappa_exact(n, ell).to_f64().unwrap()
    }

    #[test]
    fn kappa_examples() {
        assert_eq!(kappa(0, 1), -0.5);
        assert!((kappa(1, 0) + 0.5).abs() < 1e-15);
        assert!((kappa(1, 1) - 0.5).abs() < 1e-15);
        assert!((kappa(1, 2) + 0.375).abs() < 1e-15);
        assert!(kappa(2, 0).abs() < 1e-15);
    }

    #[test]
    fn zero_degree_is_pure_prefactor() {
        for ell in 0..60 {
            assert_eq!(kappa(0, ell), (-0.5f64).powi(ell as i32));
        }
    }

    #[test]
    fn float_recurrence_tracks_exact_rationals() {
        for ell in 0..8 {
            for n in 0..=20 {
                let e = exact_f64(n, ell);
                assert!((kappa(n, ell) - e).abs() < 1e-13, "({n}, {ell})");
            }
        }
    }

    #[test]
    fn exact_small_values() {
        let q = |a: i64, b: i64| BigRational::new(a.into(), b.into());
        assert_eq!(kappa_exact(1, 0), q(-1, 2));
        assert_eq!(kappa_exact(2, 0), q(0, 1));
        assert_eq!(kappa_exact(3, 0), q(1, 4));
        assert_eq!(kappa_exact(1, 2), q(-3, 8));
        assert_eq!(kappa_exact(4, 1), q(1, 5));
    }

    #[test]
    fn envelope_examples() {
        assert!((kappa_hat(151, 0) - 0.218_199_247_8).abs() < 1e-9);
        assert!(kappa_hat(151, 0) <= 0.23);
        let t = ENVELOPE_CONST.sqrt() / 4f64.powf(0.25);
        assert!((kappa_tilde(0, 4) - t).abs() < 1e-15);
        assert!((kappa_tilde(0, 4) - 1.903_779_338_9).abs() < 1e-9);
        assert!(kappa_hat(10, 9) <= kappa_tilde(10, 9));
    }

    #[test]
    fn table_first_row() {
        let t = kappa_table(0, 3).unwrap();
        let row: Vec<f64> = (0..=3).map(|l| t.get(0, l)).collect();
        assert_eq!(row, vec![1.0, -0.5, 0.25, -0.125]);
    }

    #[test]
    fn table_budget_enforced() {
        assert!(matches!(
            kappa_table_with_budget(99, 99, 1000),
            Err(Error::CellBudget {
                requested: 10_000,
                ..
            })
        ));
    }

    #[test]
    fn mod3_zero_class_is_constant() {
        let m = mod3_monotonicity_check(0, 10, 200);
        assert_eq!(m[2], Monotonicity::Constant);
        assert!(m.iter().all(|c| c.is_monotone()));
        assert_eq!(
            mod3_monotonicity_check(5, 0, 20),
            [Monotonicity::Inconclusive; 3]
        );
    }

    #[test]
    fn ell15_turns_inside_window() {
        // the n = 1 mod 3 class has a minimum near n = 179
        let m = mod3_monotonicity_check(15, 100, 300);
        assert_eq!(m[1], Monotonicity::NotMonotone);
        let onset = monotone_onset(15, 300).unwrap();
        assert!((170..=185).contains(&onset), "{onset}");
        assert!(mod3_monotonicity_check(15, onset, 300)
            .iter()
            .all(|c| c.is_monotone()));
        assert!(monotone_onset(5, 300).unwrap() <= 100);
    }
}
