//! Jacobi polynomials `P_n^{(alpha, beta)}` in Rodrigues' normalization.
//!
//! The eigenfunctions of `K` in the angular-momentum sector `ell` have radial
//! profiles `P_n^{(1/2, ell + 1/2)}(t)` with `t = |v|^2 - 1` (velocities
//! rescaled to the unit ball, `t` mapped to `[-1, 1]`). Besides plain
//! evaluation this module provides the three-term coefficients of the
//! operator "multiply by t" in the orthonormal basis `p_n = P_n / ||P_n||`,
//!
//! ```text
//! t p_n = b_{n-1} p_{n-1} + a_n p_n + b_n p_{n+1},     b_{-1} = 0,
//! ```
//!
//! together with the simpler monotone bounds `a_tilde <= a` (valid for
//! `ell >= 4`) and `b <= b_tilde` used by the large-`ell` pipeline.

use serde::Serialize;

use crate::error::{domain, Result};
use crate::special::ln_gamma;

/// Rescale threshold for the unnormalized recurrence.
const RESCALE_ABOVE: f64 = 1e150;
const RESCALE_EXP2: i32 = 498; // 2^498 ~ 1.6e150

/// Exponents of the Jacobi weight `(1 - x)^alpha (1 + x)^beta`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct JacobiParams {
    alpha: f64,
    beta: f64,
    ell: Option<usize>,
}

impl JacobiParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha > -1.0 && beta > -1.0) {
            return domain(format!(
                "Jacobi exponents must exceed -1, got alpha = {alpha}, beta = {beta}"
            ));
        }
        Ok(Self {
            alpha,
            beta,
            ell: None,
        })
    }

    /// Parameters `(1/2, ell + 1/2)` of the angular-momentum sector `ell`.
    pub fn for_sector(ell: usize) -> Self {
        Self {
            alpha: 0.5,
            beta: ell as f64 + 0.5,
            ell: Some(ell),
        }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn ell(&self) -> Option<usize> {
        self.ell
    }

    /// Coefficients `(A_n, B_n, C_n)` of
    /// `P_{n+1}(x) = (A_n x + B_n) P_n(x) - C_n P_{n-1}(x)`, for `n >= 1`.
    pub fn recurrence(&self, n: usize) -> (f64, f64, f64) {
        let (a, b) = (self.alpha, self.beta);
        let nf = n as f64;
        let s = 2.0 * nf + a + b;
        let den = 2.0 * (nf + 1.0) * (nf + a + b + 1.0);
        let big_a = (s + 1.0) * (s + 2.0) / den;
        let big_b = (a * a - b * b) * (s + 1.0) / (den * s);
        let big_c = 2.0 * (nf + a) * (nf + b) * (s + 2.0) / (den * s);
        (big_a, big_b, big_c)
    }

    fn first_degree(&self, x: f64) -> f64 {
        (self.alpha + 1.0) + (self.alpha + self.beta + 2.0) * (x - 1.0) / 2.0
    }
}

fn check_x(x: f64) -> Result<()> {
    if !(-1.0..=1.0).contains(&x) {
        return domain(format!("x = {x} lies outside [-1, 1]"));
    }
    Ok(())
}

/// A value stored as `mantissa * 2^exp2` so that large degrees never overflow.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scaled {
    pub mantissa: f64,
    pub exp2: i32,
}

impl Scaled {
    pub fn to_f64(self) -> f64 {
        self.mantissa * 2f64.powi(self.exp2)
    }

    /// `ln |value|`; `-inf` for zero.
    pub fn ln_abs(self) -> f64 {
        self.mantissa.abs().ln() + self.exp2 as f64 * std::f64::consts::LN_2
    }
}

/// `P_n(x)` as a scaled value, computed by the degree recurrence with
/// power-of-two rescaling whenever the running value exceeds `1e150`.
pub fn jacobi_eval_scaled(params: &JacobiParams, n: usize, x: f64) -> Result<Scaled> {
    check_x(x)?;
    let mut prev = 1.0;
    if n == 0 {
        return Ok(Scaled {
            mantissa: prev,
            exp2: 0,
        });
    }
    let mut cur = params.first_degree(x);
    let mut exp2 = 0;
    for k in 1..n {
        let (a, b, c) = params.recurrence(k);
        let next = (a * x + b) * cur - c * prev;
        prev = cur;
        cur = next;
        if cur.abs() > RESCALE_ABOVE {
            let f = 2f64.powi(-RESCALE_EXP2);
            cur *= f;
            prev *= f;
            exp2 += RESCALE_EXP2;
        }
    }
    Ok(Scaled {
        mantissa: cur,
        exp2,
    })
}

/// `P_n^{(alpha, beta)}(x)` under Rodrigues' normalization.
///
/// Returns `±inf` only when the true value exceeds the `f64` range.
pub fn jacobi_eval(params: &JacobiParams, n: usize, x: f64) -> Result<f64> {
    jacobi_eval_scaled(params, n, x).map(Scaled::to_f64)
}

/// `P_n(1) = prod_{k=1..n} (alpha + k) / k`.
pub fn jacobi_value_at_one(params: &JacobiParams, n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * (params.alpha + k as f64) / k as f64)
}

/// Ratios `P_k(x) / P_k(1)` for `k = 0..=n_max`.
///
/// The recurrence is carried out directly on the ratios, using
/// `P_{k+1}(1) / P_k(1) = (k + 1 + alpha) / (k + 1)`; no separate scaling
/// of numerator and denominator is needed.
pub fn jacobi_ratio_seq(params: &JacobiParams, n_max: usize, x: f64) -> Result<Vec<f64>> {
    check_x(x)?;
    let (a, b) = (params.alpha, params.beta);
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(1.0);
    if n_max == 0 {
        return Ok(out);
    }
    out.push(params.first_degree(x) / (a + 1.0));
    for k in 1..n_max {
        let kf = k as f64;
        let s = 2.0 * kf + a + b;
        let lead = (s + 1.0) * ((s + 2.0) * s * x + a * a - b * b);
        let back = 2.0 * kf * (kf + b) * (s + 2.0);
        let den = 2.0 * (kf + a + b + 1.0) * s * (kf + 1.0 + a);
        let next = (lead * out[k] - back * out[k - 1]) / den;
        out.push(next);
    }
    Ok(out)
}

/// `P_n(x) / P_n(1)`.
pub fn jacobi_ratio(params: &JacobiParams, n: usize, x: f64) -> Result<f64> {
    Ok(jacobi_ratio_seq(params, n, x)?[n])
}

/// `ln ||P_n||^2` with respect to the weight `(1 - x)^alpha (1 + x)^beta`.
pub fn jacobi_log_norm_sq(params: &JacobiParams, n: usize) -> f64 {
    let (a, b) = (params.alpha, params.beta);
    let nf = n as f64;
    // (2n + a + b + 1) Gamma(n + a + b + 1) = Gamma(n + a + b + 2) at n = 0,
    // which keeps the a + b = -1 case finite.
    let denom = if n == 0 {
        ln_gamma(a + b + 2.0)
    } else {
        (2.0 * nf + a + b + 1.0).ln() + ln_gamma(nf + a + b + 1.0)
    };
    (a + b + 1.0) * std::f64::consts::LN_2 + ln_gamma(nf + a + 1.0) + ln_gamma(nf + b + 1.0)
        - denom
        - ln_gamma(nf + 1.0)
}

/// `||P_n||^2`; may overflow to `inf` where the log-norm does not.
pub fn jacobi_norm_sq(params: &JacobiParams, n: usize) -> f64 {
    jacobi_log_norm_sq(params, n).exp()
}

/// Closed form of `||P_{n-1}||^2 / ||P_n||^2` in sector `ell`, `n >= 1`.
pub fn norm_ratio_prev(ell: usize, n: usize) -> f64 {
    let (l, nf) = (ell as f64, n as f64);
    (2.0 * nf + l + 2.0) / (2.0 * nf + l) * nf * (nf + l + 1.0) / ((nf + 0.5) * (nf + l + 0.5))
}

/// Closed form of `||P_{n+1}||^2 / ||P_n||^2` in sector `ell`.
pub fn norm_ratio_next(ell: usize, n: usize) -> f64 {
    let (l, nf) = (ell as f64, n as f64);
    (2.0 * nf + l + 2.0) / (2.0 * nf + l + 4.0) * (nf + 1.5) * (nf + l + 1.5)
        / ((nf + 1.0) * (nf + l + 2.0))
}

/// `||P_{n+1}||^2 / ||P_n||^2` for general exponents.
fn norm_sq_step(params: &JacobiParams, n: usize) -> f64 {
    let (a, b) = (params.alpha, params.beta);
    if n == 0 {
        // closed form degenerates at a + b = -1; the log-norms are small here
        return (jacobi_log_norm_sq(params, 1) - jacobi_log_norm_sq(params, 0)).exp();
    }
    let nf = n as f64;
    let s = 2.0 * nf + a + b;
    (s + 1.0) / (s + 3.0) * (nf + a + 1.0) * (nf + b + 1.0) / ((nf + a + b + 1.0) * (nf + 1.0))
}

/// Orthonormal polynomials `p_k(x) = P_k(x) / ||P_k||` for `k = 0..=n_max`.
///
/// Runs the Rodrigues recurrence on the normalized values, with consecutive
/// norm ratios in closed form, so no large logarithms are exponentiated.
pub fn orthonormal_values(params: &JacobiParams, n_max: usize, x: f64) -> Result<Vec<f64>> {
    check_x(x)?;
    let mut out = Vec::with_capacity(n_max + 1);
    let mut shrink_prev = norm_sq_step(params, 0).sqrt().recip();
    out.push((-0.5 * jacobi_log_norm_sq(params, 0)).exp());
    if n_max == 0 {
        return Ok(out);
    }
    out.push(params.first_degree(x) * out[0] * shrink_prev);
    for k in 1..n_max {
        let (big_a, big_b, big_c) = params.recurrence(k);
        let shrink = norm_sq_step(params, k).sqrt().recip();
        let next = shrink * ((big_a * x + big_b) * out[k] - big_c * shrink_prev * out[k - 1]);
        out.push(next);
        shrink_prev = shrink;
    }
    Ok(out)
}

/// Orthonormal three-term coefficients `(a_n, b_n)` for general parameters,
/// obtained from `(A_n, B_n)` and the norm ratio
/// `F_n^+ = ||P_{n+1}|| / ||P_n||`.
pub fn orthonormal_recurrence(params: &JacobiParams, n: usize) -> (f64, f64) {
    let (a, b) = (params.alpha, params.beta);
    let nf = n as f64;
    let s = 2.0 * nf + a + b;
    let diag = if s == 0.0 {
        (b - a) / (a + b + 2.0)
    } else {
        (b * b - a * a) / (s * (s + 2.0))
    };
    let big_a = (s + 1.0) * (s + 2.0) / (2.0 * (nf + 1.0) * (nf + a + b + 1.0));
    let f_plus = ((nf + a + 1.0) * (nf + b + 1.0) * (s + 1.0)
        / ((nf + 1.0) * (nf + a + b + 1.0) * (s + 3.0)))
        .sqrt();
    (diag, f_plus / big_a)
}

/// Three-term coefficients of multiplication by `t` in the orthonormal basis
/// of sector `ell`, and their monotone bounds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThreeTermCoeffs {
    pub n: usize,
    pub ell: usize,
    /// Diagonal coefficient `a_{n, ell}`.
    pub a: f64,
    /// Off-diagonal coefficient `b_{n, ell}` coupling `p_n` and `p_{n+1}`.
    pub b: f64,
    /// Lower bound on `a`; binding only for `ell >= 4`.
    pub a_tilde: f64,
    /// Upper bound on `b`.
    pub b_tilde: f64,
}

impl ThreeTermCoeffs {
    /// Whether `a_tilde <= a` is a certified bound for this sector.
    pub fn a_tilde_binding(&self) -> bool {
        self.ell >= 4
    }
}

pub fn three_term_coeffs(ell: usize, n: usize) -> ThreeTermCoeffs {
    let (l, nf) = (ell as f64, n as f64);
    let m = 2.0 * nf + l + 3.0;
    let a = l * (l + 1.0) / ((2.0 * nf + l + 1.0) * m);
    let radicand = (nf + 1.0) * (nf + 1.5) * (nf + l + 1.5) * (nf + l + 2.0)
        / ((2.0 * nf + l + 2.0) * m * m * (2.0 * nf + l + 4.0));
    let b = 2.0 * radicand.sqrt();
    let a_tilde = (l / m).powi(2);
    let b_tilde = (1.0 - l / m) * (1.0 - nf / m);
    ThreeTermCoeffs {
        n,
        ell,
        a,
        b,
        a_tilde,
        b_tilde,
    }
}

/// `b_{n-1, ell}`, with the convention `b_{-1} = 0`.
pub fn b_prev(ell: usize, n: usize) -> f64 {
    match n {
        0 => 0.0,
        _ => three_term_coeffs(ell, n - 1).b,
    }
}

/// Largest real `n` up to which `b_tilde` is increasing in `n`.
pub fn b_tilde_increasing_until(ell: usize) -> f64 {
    let l = ell as f64;
    (2.0 * l * l + 3.0 * l - 9.0) / 6.0
}

#[cfg(test)]
mod tests {
    use super::*;

    const HALF: f64 = 0.5;

    #[test]
    fn eval_examples() {
        let p = JacobiParams::new(HALF, 1.5).unwrap();
        assert_eq!(jacobi_eval(&p, 0, -0.5).unwrap(), 1.0);
        assert!((jacobi_eval(&p, 1, 1.0).unwrap() - 1.5).abs() < 1e-15);
        let q = JacobiParams::new(HALF, HALF).unwrap();
        assert!(jacobi_eval(&q, 2, -0.5).unwrap().abs() < 1e-15);
    }

    #[test]
    fn eval_rejects_out_of_range() {
        let p = JacobiParams::for_sector(0);
        assert!(jacobi_eval(&p, 3, 1.0 + 1e-12).is_err());
        assert!(jacobi_eval(&p, 3, -1.5).is_err());
        assert!(JacobiParams::new(-1.0, 0.0).is_err());
    }

    #[test]
    fn half_half_is_chebyshev_u() {
        // P_n^{(1/2,1/2)} = c_n U_n with P_n(1) = c_n (n + 1).
        let p = JacobiParams::new(HALF, HALF).unwrap();
        for n in 0..40 {
            for &x in &[-0.9, -0.5, 0.1, 0.73] {
                let theta: f64 = f64::acos(x);
                let u = ((n as f64 + 1.0) * theta).sin() / theta.sin();
                let want = u / (n as f64 + 1.0);
                let got = jacobi_ratio(&p, n, x).unwrap();
                assert!((got - want).abs() < 1e-12, "n = {n}, x = {x}");
            }
        }
    }

    #[test]
    fn value_at_one_examples() {
        let p = JacobiParams::for_sector(3);
        assert_eq!(jacobi_value_at_one(&p, 0), 1.0);
        assert_eq!(jacobi_value_at_one(&p, 1), 1.5);
        assert_eq!(jacobi_value_at_one(&p, 2), 15.0 / 8.0);
        for n in 0..30 {
            let direct = jacobi_eval(&p, n, 1.0).unwrap();
            assert!((direct / jacobi_value_at_one(&p, n) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn ratio_matches_unnormalized_recurrence() {
        for ell in [0, 1, 5, 17] {
            let p = JacobiParams::for_sector(ell);
            let seq = jacobi_ratio_seq(&p, 60, -0.5).unwrap();
            for (n, r) in seq.iter().enumerate() {
                let direct = jacobi_eval(&p, n, -0.5).unwrap() / jacobi_value_at_one(&p, n);
                assert!((r - direct).abs() < 1e-12 * direct.abs().max(1.0));
            }
        }
    }

    #[test]
    fn scaled_eval_survives_large_degrees() {
        let p = JacobiParams::for_sector(200);
        let v = jacobi_eval_scaled(&p, 3000, -1.0).unwrap();
        assert!(v.mantissa.is_finite() && v.exp2 > 0);
        // P_n(-1) = (-1)^n binom(n + beta, n)
        let want = ln_gamma(3000.0 + 200.5 + 1.0) - ln_gamma(200.5 + 1.0) - ln_gamma(3001.0);
        assert!((v.ln_abs() - want).abs() < 1e-9 * want);
    }

    #[test]
    fn norm_examples() {
        let q = JacobiParams::new(HALF, HALF).unwrap();
        assert!((jacobi_norm_sq(&q, 0) - std::f64::consts::FRAC_PI_2).abs() < 1e-14);
        assert!((norm_ratio_prev(0, 1) - 16.0 / 9.0).abs() < 1e-15);
        for ell in [0usize, 3, 12] {
            let p = JacobiParams::for_sector(ell);
            for n in 1..200 {
                let lp = jacobi_log_norm_sq(&p, n - 1);
                let ln = jacobi_log_norm_sq(&p, n);
                let r = (lp - ln).exp();
                assert!((r / norm_ratio_prev(ell, n) - 1.0).abs() < 1e-11);
                assert!(((ln - lp).exp() / norm_ratio_next(ell, n - 1) - 1.0).abs() < 1e-11);
            }
        }
    }

    #[test]
    fn three_term_examples() {
        for n in [0usize, 1, 7, 1000] {
            let c = three_term_coeffs(0, n);
            assert_eq!(c.a, 0.0);
            assert!((c.b - 0.5).abs() < 1e-15);
        }
        assert_eq!(three_term_coeffs(1, 0).a, 0.25);
        let c = three_term_coeffs(4, 0);
        assert!((c.a_tilde - 16.0 / 49.0).abs() < 1e-15);
        assert!((c.a - 4.0 / 7.0).abs() < 1e-15);
        assert!(c.a_tilde <= c.a && c.a_tilde_binding());
        assert!(!three_term_coeffs(3, 0).a_tilde_binding());
    }

    #[test]
    fn closed_forms_match_general_recurrence() {
        for ell in 0..40 {
            let p = JacobiParams::for_sector(ell);
            for n in 0..300 {
                let c = three_term_coeffs(ell, n);
                let (a, b) = orthonormal_recurrence(&p, n);
                assert!((c.a - a).abs() < 1e-13, "a at ({n}, {ell})");
                assert!((c.b - b).abs() < 1e-13, "b at ({n}, {ell})");
            }
        }
    }

    #[test]
    fn self_adjoint_coupling() {
        // c_n = F_n^- C_n / A_n must equal b_{n-1}.
        for ell in 0..25 {
            let p = JacobiParams::for_sector(ell);
            for n in 1..200 {
                let (big_a, _, big_c) = p.recurrence(n);
                let f_minus = norm_ratio_prev(ell, n).sqrt();
                let c = f_minus * big_c / big_a;
                assert!((c - b_prev(ell, n)).abs() < 1e-13);
            }
        }
    }
}
