//! Oracles shared by several test targets.

/// `det(lambda I - M)` by the continuant recurrence.
pub fn char_poly(d: &[f64], e: &[f64], lambda: f64) -> f64 {
    let (mut f0, mut f1) = (1.0, lambda - d[0]);
    for k in 1..d.len() {
        let f2 = (lambda - d[k]) * f1 - e[k - 1] * e[k - 1] * f0;
        f0 = f1;
        f1 = f2;
    }
    f1
}

/// Largest root found by scanning down from above the spectrum and
/// bisecting the first sign change.
pub fn brute_top_root(d: &[f64], e: &[f64]) -> f64 {
    let radius = |i: usize| {
        let l = if i > 0 { e[i - 1].abs() } else { 0.0 };
        let r = if i + 1 < d.len() { e[i].abs() } else { 0.0 };
        l + r
    };
    let hi = (0..d.len())
        .map(|i| d[i] + radius(i))
        .fold(f64::MIN, f64::max)
        + 1e-6;
    let lo = (0..d.len())
        .map(|i| d[i] - radius(i))
        .fold(f64::MAX, f64::min)
        - 1e-6;
    let steps = 200_000;
    let h = (hi - lo) / steps as f64;
    let mut upper = hi;
    let s_hi = char_poly(d, e, hi).signum();
    for i in 1..=steps {
        let x = hi - i as f64 * h;
        let v = char_poly(d, e, x);
        if v == 0.0 {
            return x;
        }
        if v.signum() != s_hi {
            let (mut a, mut b) = (x, upper);
            for _ in 0..200 {
                let m = 0.5 * (a + b);
                if char_poly(d, e, m).signum() == s_hi {
                    b = m;
                } else {
                    a = m;
                }
            }
            return 0.5 * (a + b);
        }
        upper = x;
    }
    panic!("no root found");
}
