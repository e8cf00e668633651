use kacgap::gapbounds::{
    antisym_bound, antisym_optimize, assemble_gap, build_z_exact_ell0, entropy_production_constant,
    large_ell_bound, large_ell_monotone, mid_ell_check, n_cut, small_ell_bound,
    tridiag_top_eigenvalue, Evidence, LargeEllOptions, MidEllOptions, Sector, TridiagMatrix, W2,
};
use num_rational::{BigRational, Rational64};
use proptest::prelude::*;

mod common;
use common::brute_top_root;

fn tridiag_entries() -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
    (1usize..=6).prop_flat_map(|n| {
        (
            prop::collection::vec(-2.0f64..2.0, n),
            prop::collection::vec(-2.0f64..2.0, n - 1),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn bisection_matches_char_poly_scan((d, e) in tridiag_entries()) {
        let m = TridiagMatrix::new(d.clone(), e.clone()).unwrap();
        let got = tridiag_top_eigenvalue(&m, 1e-12);
        let want = brute_top_root(&d, &e);
        prop_assert!((got - want).abs() <= 1e-9, "{got} vs {want}");
    }

    #[test]
    fn leading_block_interlaces((d, e) in tridiag_entries()) {
        let m = TridiagMatrix::new(d, e).unwrap();
        let top = m.top_eigenvalue();
        for k in 1..=m.size() {
            prop_assert!(m.leading(k).unwrap().top_eigenvalue() <= top + 1e-10);
        }
    }
}

#[test]
fn every_sector_below_three_quarters() {
    let r = assemble_gap().unwrap();
    assert_eq!(r.sectors.len(), 9);
    let max = r
        .sectors
        .iter()
        .map(|s| s.lambda_bound)
        .fold(f64::MIN, f64::max);
    assert!(r.sectors.iter().all(|s| s.lambda_bound < W2));
    assert_eq!(r.mu3, max);
    assert_eq!(r.gap, W2 - max);
    assert!(r.gap >= 0.0198);
    assert_eq!(r.binding, Sector::SymLargeEll);
}

#[test]
fn large_ell_sups_at_seventy() {
    assert_eq!(n_cut(70), 2343);
    let b = large_ell_bound(70).unwrap();
    let Evidence::LargeEll {
        diag_sup_n,
        diag_sup,
        offdiag_sup_n,
        offdiag_sup,
        ..
    } = b.evidence
    else {
        panic!("wrong evidence");
    };
    assert_eq!((diag_sup_n, offdiag_sup_n), (66, 53));
    assert!(diag_sup <= 1.4351 + 1e-6);
    assert!(offdiag_sup <= 1.4855 + 1e-6);
    assert!(b.lambda_bound <= 0.73016);
}

#[test]
fn large_ell_non_increasing() {
    let ells: Vec<usize> = (70..=200).step_by(10).collect();
    let rows = large_ell_monotone(&ells, LargeEllOptions::default()).unwrap();
    assert_eq!(rows.len(), ells.len());
    for w in rows.windows(2) {
        assert!(w[1].1 <= w[0].1, "{:?}", w);
    }
}

#[test]
fn mid_ell_scan() {
    let b = mid_ell_check(MidEllOptions::default()).unwrap();
    let Evidence::MidEll { max_abs_kappa, .. } = b.evidence else {
        panic!("wrong evidence");
    };
    assert!(max_abs_kappa <= 0.23);
    assert!((b.lambda_bound - 0.73).abs() < 1e-12);
}

#[test]
fn ell0_block_exact() {
    let q = |a: i64, b: i64| BigRational::new(a.into(), b.into());
    let (d, o) = build_z_exact_ell0(5);
    assert_eq!(d, vec![q(1, 2), q(3, 4), q(3, 10), q(1, 2), q(9, 14)]);
    assert_eq!(o, vec![q(-5, 16), q(-21, 80), q(-1, 5), q(-2, 7)]);
    let s = small_ell_bound(0).unwrap();
    assert!(s.lambda_bound <= 0.694 + 1e-3);
}

#[test]
fn antisym_grid_agrees_with_optimizer() {
    let (t_star, best) = antisym_optimize();
    let (t_grid, v_grid) = (1..1000)
        .map(|i| i as f64 * 1e-3)
        .map(|t| (t, antisym_bound(t).unwrap()))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .unwrap();
    assert!((t_grid - t_star).abs() <= 1e-3);
    assert!(best <= v_grid);
    assert!((0.9430..=0.9437).contains(&t_star));
    assert!(antisym_bound(0.0).is_err() && antisym_bound(1.0).is_err());
}

#[test]
fn entropy_production_rationals() {
    let c42 = entropy_production_constant(4, 2).unwrap();
    assert_eq!(
        (c42.c, c42.gap_bound),
        (Rational64::new(1, 9), Rational64::new(1, 18))
    );
    let c40 = entropy_production_constant(4, 0).unwrap();
    assert_eq!(
        (c40.c, c40.gap_bound),
        (Rational64::new(1, 3), Rational64::new(1, 6))
    );
    assert!(entropy_production_constant(3, 2).unwrap().degenerate);
    assert!(entropy_production_constant(4, 1).is_err());
}
