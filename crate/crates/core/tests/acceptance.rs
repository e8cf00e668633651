//! Acceptance run: one line per criterion, non-zero exit if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use kacgap::gapbounds::{
    antisym_bound, antisym_optimize, assemble_gap, build_z_exact_ell0, entropy_production_constant,
    large_ell_bound, large_ell_monotone, mid_ell_check, reference_row, small_ell_split,
    tridiag_top_eigenvalue, Evidence, IndexConvention, LargeEllOptions, MidEllOptions,
    TridiagMatrix, REFERENCE_T,
};
use kacgap::jacobi::{b_prev, orthonormal_values, three_term_coeffs, JacobiParams};
use kacgap::kspectrum::{kappa, kappa_table};
use kacgap::montecarlo::{simulate, InitialDensity, SimConfig};
use kacgap::verify::{verify_all, VerifyOptions};
use num_rational::{BigRational, Ratio};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

mod common;

const SEED: u64 = 0;
const REPLICAS: usize = 100_000;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn run(id: u32, title: &str, limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let o = f();
    let took = start.elapsed();
    let in_time = limit.map_or(true, |l| took < l);
    let pass = o.pass && in_time;
    let budget = limit.map_or(String::new(), |l| format!(" < {}s", l.as_secs_f64()));
    println!(
        "criterion {id:>2} {}  {title}: {}{} [{:.2}s{budget}]",
        if pass { "PASS" } else { "FAIL" },
        o.detail,
        if in_time { "" } else { " (over time budget)" },
        took.as_secs_f64(),
    );
    pass
}

fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

fn gap_assembly(gap: &mut f64) -> Outcome {
    match assemble_gap() {
        Ok(r) => {
            *gap = r.gap;
            outcome(
                r.gap >= 0.0198 && r.mu3 <= 0.73016 + 1e-6,
                format!("gap {:.7}, mu3 {:.7}, binding {}", r.gap, r.mu3, r.binding),
            )
        }
        Err(e) => outcome(false, e.to_string()),
    }
}

fn antisymmetric() -> Outcome {
    let at = antisym_bound(REFERENCE_T).expect("t inside (0, 1)");
    let (t_star, best) = antisym_optimize();
    let bound_ok = at <= 0.729 + 1e-6;
    let t_ok = (0.9430..=0.9437).contains(&t_star);
    outcome(
        bound_ok && t_ok,
        format!(
            "bound(0.943) = {at:.7} ({}), t* = {t_star:.5} ({}), optimum {best:.7}",
            if bound_ok {
                "<= 0.729"
            } else {
                "exceeds 0.729 + 1e-6"
            },
            if t_ok { "in range" } else { "out of range" },
        ),
    )
}

fn large_ell() -> Outcome {
    let b = match large_ell_bound(70) {
        Ok(b) => b,
        Err(e) => return outcome(false, e.to_string()),
    };
    let Evidence::LargeEll {
        diag_sup_n,
        diag_sup,
        offdiag_sup_n,
        offdiag_sup,
        ..
    } = b.evidence
    else {
        return outcome(false, "unexpected evidence".into());
    };
    let mono = large_ell_monotone(&[70, 100, 150, 200], LargeEllOptions::default());
    let pass = diag_sup_n == 66
        && offdiag_sup_n == 53
        && diag_sup <= 1.4351 + 1e-6
        && offdiag_sup <= 1.4855 + 1e-6
        && b.lambda_bound <= 0.73016
        && mono.is_ok();
    outcome(
        pass,
        format!(
            "sups {diag_sup:.7} at n={diag_sup_n}, {offdiag_sup:.7} at n={offdiag_sup_n}; \
             lambda_70 {:.7}; monotone {}",
            b.lambda_bound,
            if mono.is_ok() { "yes" } else { "no" }
        ),
    )
}

fn mid_ell() -> Outcome {
    match mid_ell_check(MidEllOptions::default()) {
        Ok(b) => {
            let Evidence::MidEll {
                max_abs_kappa,
                max_at,
                ..
            } = b.evidence
            else {
                return outcome(false, "unexpected evidence".into());
            };
            outcome(
                max_abs_kappa <= 0.23 && (b.lambda_bound - 0.73).abs() < 1e-12,
                format!(
                    "max |kappa| {max_abs_kappa:.7} at (n={}, ell={}), bound {:.4}",
                    max_at.0, max_at.1, b.lambda_bound
                ),
            )
        }
        Err(e) => outcome(false, e.to_string()),
    }
}

fn small_ell() -> Outcome {
    let q = |a: i64, b: i64| BigRational::new(a.into(), b.into());
    let (d, o) = build_z_exact_ell0(5);
    let fractions = d == [q(1, 2), q(3, 4), q(3, 10), q(1, 2), q(9, 14)]
        && o == [q(-5, 16), q(-21, 80), q(-1, 5), q(-2, 7)];
    let s = match small_ell_split(0, 5, IndexConvention::Aligned) {
        Ok(s) => s,
        Err(e) => return outcome(false, e.to_string()),
    };
    let chain = s.block_top < 1.0412 && s.coupled_top <= 1.388 && s.lambda <= 0.694 + 1e-3;
    let rows: Vec<_> = (1..=5).map(reference_row).collect();
    let bad: Vec<usize> = rows
        .iter()
        .enumerate()
        .filter(|(_, r)| !r.as_ref().is_ok_and(|r| r.all_ok()))
        .map(|(i, _)| i + 1)
        .collect();
    outcome(
        fractions && chain && bad.is_empty(),
        format!(
            "fractions {}, block {:.7}, coupled {:.7}, bound {:.5}, reference rows 1..5 {}",
            if fractions { "exact" } else { "differ" },
            s.block_top,
            s.coupled_top,
            s.lambda,
            if bad.is_empty() {
                "within 0.002".to_string()
            } else {
                format!("off at {bad:?}")
            }
        ),
    )
}

fn spectrum() -> Outcome {
    let t = match kappa_table(300, 70) {
        Ok(t) => t,
        Err(e) => return outcome(false, e.to_string()),
    };
    let zero_row = (0..=70).all(|l| t.get(0, l) == (-0.5f64).powi(l as i32));
    let firsts = (kappa(1, 0) + 0.5).abs() <= 1e-14 && (kappa(0, 1) + 0.5).abs() <= 1e-14;
    let (min, n, l) = t.min_excluding(&[(1, 0), (0, 1)]).expect("non-empty");
    let runner_up = (n, l) == (1, 2) && (min + 0.375).abs() <= 1e-12;
    let margin = t
        .iter()
        .map(|(.., k, hat, _)| hat - k.abs())
        .fold(f64::INFINITY, f64::min);
    outcome(
        zero_row && firsts && runner_up && margin >= -1e-12,
        format!(
            "kappa(0,l) exact {zero_row}, runner-up {min} at ({n},{l}), dominance margin {margin:.3e}"
        ),
    )
}

fn jacobi() -> Outcome {
    let mut worst = 0.0f64;
    for ell in 0..=70 {
        let params = JacobiParams::for_sector(ell);
        for i in 0..100 {
            let x = -1.0 + 2.0 * i as f64 / 99.0;
            let p = orthonormal_values(&params, 201, x).expect("x in range");
            for n in 0..=200 {
                let c = three_term_coeffs(ell, n);
                let prev = if n == 0 {
                    0.0
                } else {
                    b_prev(ell, n) * p[n - 1]
                };
                let r = (x * p[n] - (prev + c.a * p[n] + c.b * p[n + 1])).abs();
                worst = worst.max(r / p[n + 1].abs().max(1.0));
            }
        }
    }

    const M: usize = 256;
    let h = std::f64::consts::PI / M as f64;
    let mut ortho = 0.0f64;
    for ell in 0..=10 {
        let params = JacobiParams::for_sector(ell);
        let mut gram = vec![[0.0f64; 21]; 21];
        for k in 0..=M {
            let c = (k as f64 * h).cos();
            let w = (1.0 - c) * (1.0 + c).powi(ell as i32 + 1);
            let end = if k == 0 || k == M { 0.5 } else { 1.0 };
            let p = orthonormal_values(&params, 20, c.clamp(-1.0, 1.0)).expect("x in range");
            for i in 0..=20 {
                for j in 0..=i {
                    gram[i][j] += end * h * w * p[i] * p[j];
                }
            }
        }
        for (i, row) in gram.iter().enumerate() {
            for (j, g) in row.iter().enumerate().take(i + 1) {
                ortho = ortho.max((g - if i == j { 1.0 } else { 0.0 }).abs());
            }
        }
    }

    let half = (0i128..1000).all(|n| {
        let r = Ratio::new((n + 1) * (2 * n + 3) * (2 * n + 3) * (n + 2), 4)
            / Ratio::from_integer((2 * n + 2) * (2 * n + 3) * (2 * n + 3) * (2 * n + 4));
        r == Ratio::new(1, 16) && three_term_coeffs(0, n as usize).b == 0.5
    });
    outcome(
        worst <= 1e-10 && ortho <= 1e-8 && half,
        format!("three-term residual {worst:.2e}, orthonormality {ortho:.2e}, b(n,0) = 1/2 {half}"),
    )
}

fn eigensolver() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let n = rng.random_range(1..=6);
        let d: Vec<f64> = (0..n).map(|_| rng.random_range(-2.0..2.0)).collect();
        let e: Vec<f64> = (0..n - 1).map(|_| rng.random_range(-2.0..2.0)).collect();
        let m = TridiagMatrix::new(d.clone(), e.clone()).expect("valid shape");
        let got = tridiag_top_eigenvalue(&m, 1e-12);
        worst = worst.max((got - common::brute_top_root(&d, &e)).abs());
    }
    outcome(
        worst <= 1e-9,
        format!("1000 matrices, max deviation {worst:.2e}"),
    )
}

fn monte_carlo(gap: f64) -> Outcome {
    let linear = SimConfig::new(2, REPLICAS, SEED);
    let eq = SimConfig {
        initial: InitialDensity::Equilibrium,
        ..SimConfig::new(2, REPLICAS, SEED + 1)
    };
    let (linear, eq) = rayon::join(|| simulate(&linear), || simulate(&eq));
    let (linear, eq) = match (linear, eq) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => return outcome(false, e.to_string()),
    };
    let residual =
        |o: &kacgap::montecarlo::SimOutput| o.max_momentum_residual.max(o.max_energy_residual);
    let conserved = residual(&linear).max(residual(&eq));
    let eq_max = match eq.entropy_series() {
        Ok(s) => s
            .sampled
            .iter()
            .chain(&s.implied1)
            .chain(&s.implied2)
            .fold(0.0f64, |a, &b| a.max(b)),
        Err(e) => return outcome(false, e.to_string()),
    };
    let rate = match linear.fit() {
        Ok(f) => f.rate,
        Err(e) => return outcome(false, e.to_string()),
    };
    let pass =
        conserved <= 1e-9 && eq_max < 0.01 && (0.2..=0.45).contains(&rate) && rate / 2.0 > gap;
    outcome(
        pass,
        format!(
            "{REPLICAS} replicas: residual {conserved:.1e}, equilibrium max H {eq_max:.5}, \
             rate {rate:.4}, rate/2 {:.4} vs gap {gap:.5}",
            rate / 2.0
        ),
    )
}

fn entropy_constants() -> Outcome {
    let get = |n, a| entropy_production_constant(n, a).expect("supported");
    let (c42, c40, c32) = (get(4, 2), get(4, 0), get(3, 2));
    let pass = c42.c == Ratio::new(1, 9)
        && c42.gap_bound == Ratio::new(1, 18)
        && c40.c == Ratio::new(1, 3)
        && c40.gap_bound == Ratio::new(1, 6)
        && c32.degenerate;
    outcome(
        pass,
        format!(
            "C(4,2) = {} (gap {}), C(4,0) = {} (gap {}), C(3,2) = {} degenerate",
            c42.c, c42.gap_bound, c40.c, c40.gap_bound, c32.c
        ),
    )
}

fn identity_audit() -> Outcome {
    let report = verify_all(&VerifyOptions {
        skip_statistical: true,
        ..VerifyOptions::default()
    });
    let audit = kacgap::kspectrum::audit_identities(60, 10);
    let names = ["kappa0_sine", "kappa_ell_recurrence", "kappa2_expansion"];
    let mut parts = Vec::new();
    let mut pass = true;
    for name in names {
        let in_report = report
            .rows
            .iter()
            .any(|r| r.name == format!("audit: {name}") && r.pass);
        let d = audit.get(name).map_or(0.0, |a| a.max_discrepancy);
        pass &= in_report && d > 0.0;
        parts.push(format!("{name} {d:.3e}"));
    }
    outcome(pass, parts.join(", "))
}

fn main() -> ExitCode {
    let mut gap = f64::NAN;
    let results = [
        run(1, "gap assembly", secs(60), || gap_assembly(&mut gap)),
        run(2, "anti-symmetric sector", secs(1), antisymmetric),
        run(3, "large ell", secs(10), large_ell),
        run(4, "mid ell", secs(30), mid_ell),
        run(5, "small ell", secs(5), small_ell),
        run(6, "spectrum properties", secs(10), spectrum),
        run(7, "jacobi machinery", None, jacobi),
        run(8, "eigensolver oracle", None, eigensolver),
        run(9, "monte carlo", secs(600), || monte_carlo(gap)),
        run(
            10,
            "entropy production constants",
            secs(1),
            entropy_constants,
        ),
        run(11, "identity audit", None, identity_audit),
    ];
    let failed = results.iter().filter(|p| !**p).count();
    println!(
        "{} of {} criteria passed",
        results.len() - failed,
        results.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
