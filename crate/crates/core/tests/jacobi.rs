use kacgap::jacobi::{
    b_prev, b_tilde_increasing_until, orthonormal_recurrence, orthonormal_values,
    three_term_coeffs, JacobiParams,
};
use num_rational::Ratio;

fn grid(points: usize) -> Vec<f64> {
    (0..points)
        .map(|i| -1.0 + 2.0 * i as f64 / (points - 1) as f64)
        .collect()
}

#[test]
fn three_term_identity_on_grid() {
    const N_MAX: usize = 200;
    let mut worst = 0.0f64;
    for ell in 0..=70 {
        let params = JacobiParams::for_sector(ell);
        for x in grid(100) {
            let p = orthonormal_values(&params, N_MAX + 1, x).unwrap();
            for n in 0..=N_MAX {
                let c = three_term_coeffs(ell, n);
                let prev = if n == 0 {
                    0.0
                } else {
                    b_prev(ell, n) * p[n - 1]
                };
                let rhs = prev + c.a * p[n] + c.b * p[n + 1];
                let scale = p[n + 1].abs().max(1.0);
                let rel = (x * p[n] - rhs).abs() / scale;
                assert!(rel <= 1e-10, "ell={ell} n={n} x={x}: residual {rel:e}");
                worst = worst.max(rel);
            }
        }
    }
    assert!(worst > 0.0);
}

#[test]
fn closed_forms_match_general_recurrence() {
    for ell in [0, 1, 2, 5, 17, 70, 400] {
        let params = JacobiParams::for_sector(ell);
        for n in [0, 1, 2, 10, 99, 1000] {
            let (a, b) = orthonormal_recurrence(&params, n);
            let c = three_term_coeffs(ell, n);
            assert!(
                (a - c.a).abs() <= 1e-14 * c.a.abs().max(1.0),
                "a at ({n}, {ell})"
            );
            assert!((b - c.b).abs() <= 1e-14, "b at ({n}, {ell})");
            assert_eq!(b_prev(ell, n + 1), c.b);
        }
    }
    assert_eq!(b_prev(3, 0), 0.0);
}

#[test]
#[allow(clippy::needless_range_loop)]
fn orthonormal_under_weight() {
    // x = cos(theta) turns the weighted integrand into a polynomial in
    // cos(theta), which the trapezoid rule integrates exactly.
    const M: usize = 256;
    let h = std::f64::consts::PI / M as f64;
    for ell in 0..=10 {
        let params = JacobiParams::for_sector(ell);
        let mut gram = [[0.0f64; 21]; 21];
        for k in 0..=M {
            let theta = k as f64 * h;
            let c = theta.cos();
            let w = (1.0 - c) * (1.0 + c).powi(ell as i32 + 1);
            let end = if k == 0 || k == M { 0.5 } else { 1.0 };
            let p = orthonormal_values(&params, 20, c.clamp(-1.0, 1.0)).unwrap();
            for i in 0..=20 {
                for j in 0..=i {
                    gram[i][j] += end * h * w * p[i] * p[j];
                }
            }
        }
        for i in 0..=20 {
            for j in 0..=i {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!(
                    (gram[i][j] - want).abs() <= 1e-8,
                    "ell={ell} <p{i},p{j}> = {}",
                    gram[i][j]
                );
            }
        }
    }
}

#[test]
fn bounds_dominate_coefficients() {
    for ell in 0..=1000 {
        for n in 0..=10_000 {
            let c = three_term_coeffs(ell, n);
            assert!(c.b <= c.b_tilde * (1.0 + 1e-14), "b at ({n}, {ell})");
            if c.a_tilde_binding() {
                assert!(c.a >= c.a_tilde * (1.0 - 1e-14), "a at ({n}, {ell})");
            }
        }
    }
}

#[test]
fn b_tilde_monotone() {
    for n in 0..500 {
        for ell in 0..300 {
            assert!(three_term_coeffs(ell + 1, n).b_tilde <= three_term_coeffs(ell, n).b_tilde);
        }
    }
    for ell in 2..300 {
        let until = b_tilde_increasing_until(ell);
        let mut n = 0;
        while ((n + 1) as f64) <= until {
            assert!(
                three_term_coeffs(ell, n + 1).b_tilde >= three_term_coeffs(ell, n).b_tilde,
                "ell={ell} n={n}"
            );
            n += 1;
        }
    }
}

#[test]
fn b_zero_sector_is_one_half() {
    for n in 0i128..2000 {
        let r = Ratio::new((n + 1) * (2 * n + 3) * (2 * n + 3) * (n + 2), 4)
            / Ratio::from_integer((2 * n + 2) * (2 * n + 3) * (2 * n + 3) * (2 * n + 4));
        assert_eq!(r, Ratio::new(1, 16), "n={n}");
        assert_eq!(three_term_coeffs(0, n as usize).b, 0.5);
    }
}
