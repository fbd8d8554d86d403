use outlier_extremes::copula::*;
use outlier_extremes::error::Error;
use outlier_extremes::numerics::{self, *};

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

fn named() -> Vec<Generator> {
    vec![
        Generator::gumbel_exp(1.0).unwrap(),
        Generator::gumbel_exp(3.0).unwrap(),
        Generator::gumbel_exp(9.0).unwrap(),
        Generator::gumbel_exp(10.0).unwrap(),
        Generator::log_exp(0.2).unwrap(),
        Generator::log_exp(0.99).unwrap(),
        Generator::independence(),
    ]
}

#[test]
fn phi_examples() {
    let g = Generator::gumbel_exp(9.0).unwrap();
    assert!(rel(g.phi((-1f64).exp()).unwrap(), 1.0) < 1e-14);
    let i = Generator::independence();
    assert!(rel(i.phi(0.5).unwrap(), std::f64::consts::LN_2) < 1e-15);
    let l = Generator::log_exp(0.2).unwrap();
    let u = ((1.0 - std::f64::consts::E) / 0.2).exp();
    assert!(rel(l.phi(u).unwrap(), 1.0) < 1e-12);
    assert_eq!(g.phi(1.0).unwrap(), 0.0);
}

#[test]
fn phi_rejects_bad_arguments() {
    let g = Generator::independence();
    assert!(matches!(g.phi(1e-301), Err(Error::Cap { .. })));
    assert!(matches!(g.phi(0.0), Err(Error::Cap { .. })));
    assert!(matches!(g.phi(1.5), Err(Error::InvalidInput(_))));
}

#[test]
fn bad_parameters_rejected() {
    assert!(Generator::gumbel_exp(0.5).is_err());
    assert!(Generator::log_exp(0.0).is_err());
    assert!(Generator::custom("up", |x: f64| x.min(1.0)).is_err());
}

#[test]
fn round_trip_named_families() {
    let grid = Grid::new(1e-6, 50.0, 300, Spacing::Log).unwrap();
    for g in named() {
        for &x in grid.points() {
            let u = g.psi(x);
            if u <= U_MIN {
                continue;
            }
            let back = g.phi_from_ln(g.ln_psi(x)).unwrap();
            assert!(rel(back, x) < 1e-9, "{}: {back} vs {x}", g.name());
        }
    }
}

#[test]
fn gumbel_one_is_independence() {
    let g = Generator::gumbel_exp(1.0).unwrap();
    let i = Generator::independence();
    for k in 0..200 {
        let x = k as f64 * 0.1;
        assert!((g.psi(x) - i.psi(x)).abs() <= 1e-14);
    }
}

#[test]
fn analytic_derivatives_match_numeric() {
    let grid = Grid::new(1e-2, 20.0, 200, Spacing::Log).unwrap();
    for g in named() {
        for &x in grid.points() {
            let a = g.psi_prime(x);
            assert!(a < 0.0 || g.psi(x) == 0.0, "{} psi' >= 0 at {x}", g.name());
            if g.psi(x) < 1e-200 {
                continue;
            }
            let n = numerics::derivative(|t| g.psi(t), x).unwrap();
            assert!(rel(n, a) < 1e-5, "{} at {x}: {n} vs {a}", g.name());
        }
    }
}

#[test]
fn custom_generator_matches_named() {
    let c = Generator::custom("exp", |x: f64| (-x).exp()).unwrap();
    assert!(rel(c.phi(0.3).unwrap(), -(0.3f64).ln()) < 1e-10);
    assert!(rel(c.psi_prime(2.0), -(-2f64).exp()) < 1e-6);
    assert!(rel(c.dln_psi(2.0), -1.0) < 1e-6);
}

#[test]
fn log_convexity_examples() {
    let g = Generator::gumbel_exp(9.0).unwrap();
    let grid = g.default_grid(2000).unwrap();
    assert!(g.check_log_convex(&grid).passed());
    assert!(g.check_log_concave(&grid).failed());

    let l = Generator::log_exp(0.2).unwrap();
    let grid = l.default_grid(2000).unwrap();
    assert!(l.check_log_concave(&grid).passed());
    // Closed form: d2/dx2 ln psi = -e^x / 0.2.
    assert!(rel(l.d2ln_psi(1.0), -std::f64::consts::E / 0.2) < 1e-14);

    let i = Generator::independence();
    let grid = i.default_grid(2000).unwrap();
    assert!(i.check_log_convex(&grid).passed());
    assert!(i.check_log_concave(&grid).passed());
}

#[test]
fn super_additivity_examples() {
    let g9 = Generator::gumbel_exp(9.0).unwrap();
    let g10 = Generator::gumbel_exp(10.0).unwrap();
    let grid = g9.default_grid(2000).unwrap();
    assert!(check_super_additive(&g9, &g9, &grid).passed());
    assert!(check_super_additive(&g10, &g9, &grid).passed());
    let grid10 = g10.default_grid(2000).unwrap();
    let v = check_super_additive(&g9, &g10, &grid10);
    assert!(v.failed());
    assert!(matches!(v.witness, Some(Witness::Pair(..))));
    // Closed form at x = y = 1.
    let f = |t: f64| g10.phi_from_ln(g9.ln_psi(t)).unwrap();
    assert!(rel(f(2.0), 2.160_119_477_784_612_3) < 1e-12);
    let h = |t: f64| g9.phi_from_ln(g10.ln_psi(t)).unwrap();
    assert!(rel(h(2.0), 1.866_065_983_073_614_8) < 1e-12);
    assert!(h(1.0) + h(1.0) > h(2.0));
}

#[test]
fn ratio_shape_examples() {
    let i = Generator::independence();
    let grid = i.default_grid(2000).unwrap();
    let v = i.check_ratio_shape(RatioShape::PsiOverDpsi, ShapeProperty::Decreasing, &grid);
    assert!(v.passed());
    assert_eq!(i.ratio(RatioShape::PsiOverDpsi, 3.0), -1.0);

    let l = Generator::log_exp(0.2).unwrap();
    let grid = l.default_grid(2000).unwrap();
    assert!(l
        .check_ratio_shape(RatioShape::OneMinusPsiOverDpsi, ShapeProperty::Decreasing, &grid)
        .passed());
    assert!(l
        .check_ratio_shape(RatioShape::ProductRuleTerm, ShapeProperty::Increasing, &grid)
        .passed());

    let l = Generator::log_exp(0.99).unwrap();
    let grid = l.default_grid(2000).unwrap();
    assert!(l
        .check_ratio_shape(RatioShape::RatioOfDerivatives, ShapeProperty::Increasing, &grid)
        .passed());
}

#[test]
fn ratio_matches_direct_formula() {
    for g in named() {
        for &w in &[0.05, 0.5, 2.0] {
            let (p, dp) = (g.psi(w), g.psi_prime(w));
            let a = |t: f64| (1.0 - g.psi(t)) / g.psi_prime(t);
            let da = numerics::derivative(a, w).unwrap();
            assert!(rel(g.ratio(RatioShape::PsiOverDpsi, w), p / dp) < 1e-12);
            assert!(rel(g.ratio(RatioShape::OneMinusPsiOverDpsi, w), a(w)) < 1e-10);
            assert!(rel(g.ratio(RatioShape::ProductRuleTerm, w), a(w) * da) < 1e-5);
            assert!(rel(g.ratio(RatioShape::RatioOfDerivatives, w), da * dp / p) < 1e-5);
        }
    }
}

#[test]
fn d_monotone_advisory_quiet_for_named() {
    let grid = Grid::new(1e-3, 30.0, 200, Spacing::Log).unwrap();
    assert!(Generator::independence().d_monotone_advisory(4, &grid).is_none());
    assert!(Generator::gumbel_exp(3.0)
        .unwrap()
        .d_monotone_advisory(3, &grid)
        .is_none());
}

mod props {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn phi_inverts_psi(theta in 1.0f64..12.0, x in 1e-4f64..100.0) {
            let g = Generator::gumbel_exp(theta).unwrap();
            let back = g.phi_from_ln(g.ln_psi(x)).unwrap();
            prop_assert!((back - x).abs() <= 1e-9 * x);
        }

        #[test]
        fn log_exp_phi_inverts_psi(theta in 0.1f64..1.0, x in 1e-4f64..4.0) {
            let g = Generator::log_exp(theta).unwrap();
            let back = g.phi_from_ln(g.ln_psi(x)).unwrap();
            prop_assert!((back - x).abs() <= 1e-9 * x);
        }

        #[test]
        fn psi_strictly_decreasing(theta in 1.0f64..12.0, x in 1e-3f64..50.0) {
            let g = Generator::gumbel_exp(theta).unwrap();
            prop_assert!(g.psi_prime(x) < 0.0);
            prop_assert!(g.psi(x) <= 1.0 && g.psi(x) >= 0.0);
        }
    }
}
