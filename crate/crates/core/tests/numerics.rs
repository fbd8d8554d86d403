use outlier_extremes::error::Error;
use outlier_extremes::numerics::*;

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

#[test]
fn linear_grid_hits_integers() {
    let g = Grid::new(1.0, 10.0, 10, Spacing::Linear).unwrap();
    for (i, &x) in g.points().iter().enumerate() {
        assert!(close(x, (i + 1) as f64, 1e-12));
    }
}

#[test]
fn log_grid_hits_decades() {
    let g = Grid::new(1e-2, 1e2, 5, Spacing::Log).unwrap();
    let want = [1e-2, 1e-1, 1.0, 1e1, 1e2];
    for (x, w) in g.points().iter().zip(want) {
        assert!(close(*x / w, 1.0, 1e-12), "{x} vs {w}");
    }
}

#[test]
fn degenerate_grid_rejected() {
    assert!(matches!(
        Grid::new(2.0, 2.0, 16, Spacing::Linear),
        Err(Error::InvalidInput(_))
    ));
    assert!(Grid::new(0.0, 1.0, 16, Spacing::Log).is_err());
    assert!(Grid::new(1.0, 2.0, 1, Spacing::Log).is_err());
}

#[test]
fn subsample_keeps_endpoints() {
    let g = Grid::new(1e-3, 1e3, 2000, Spacing::Log).unwrap();
    let s = g.subsample(64);
    assert_eq!(s.len(), 64);
    assert_eq!(s.lo(), g.lo());
    assert_eq!(s.hi(), g.hi());
}

#[test]
fn derivative_examples() {
    assert!(close(derivative(|x| x * x, 3.0).unwrap(), 6.0, 1e-5));
    assert!(close(derivative(f64::exp, 0.0).unwrap(), 1.0, 1e-5));
    assert_eq!(derivative(f64::abs, 0.0).unwrap(), 0.0);
    assert!(derivative(|x| 1.0 / x, 0.0).is_ok_and(|d| d.is_finite()));
    assert!(derivative(|x| if x > 0.0 { f64::NAN } else { x }, 0.0).is_err());
}

#[test]
fn nested_derivative_matches_second_difference() {
    let cases: [(fn(f64) -> f64, f64); 4] = [
        (|x| x * x, 1.7),
        (f64::exp, 0.4),
        (f64::sin, 1.2),
        (f64::sin, 4.0),
    ];
    for (f, x) in cases {
        let nested = derivative(|t| derivative(f, t).unwrap(), x).unwrap();
        let direct = second_derivative(f, x).unwrap();
        assert!(
            (nested - direct).abs() <= 1e-3 * direct.abs(),
            "{nested} vs {direct} at {x}"
        );
    }
}

#[test]
fn monotone_examples() {
    let g = Grid::new(1.0, 10.0, 200, Spacing::Linear).unwrap();
    assert!(check_monotone(|x| 1.0 / x, &g, Direction::Decreasing).passed());

    let g = Grid::new(0.1, 6.0, 400, Spacing::Linear).unwrap();
    let v = check_monotone(f64::sin, &g, Direction::Increasing);
    assert!(v.failed());
    match v.witness {
        Some(Witness::Point(x)) => assert!(x > std::f64::consts::FRAC_PI_2 && x < 1.7),
        other => panic!("unexpected witness {other:?}"),
    }

    // Reversed hazard of Exp(1).
    let g = Grid::new(0.01, 20.0, 2000, Spacing::Log).unwrap();
    let rt = |x: f64| (-x).exp() / -(-x).exp_m1();
    assert!(check_monotone(rt, &g, Direction::Decreasing).passed());
}

#[test]
fn constant_is_monotone_both_ways() {
    let g = Grid::new(0.5, 5.0, 50, Spacing::Log).unwrap();
    assert!(check_monotone(|_| 3.0, &g, Direction::Increasing).passed());
    assert!(check_monotone(|_| 3.0, &g, Direction::Decreasing).passed());
}

#[test]
fn convex_examples() {
    let g = Grid::new(0.1, 10.0, 500, Spacing::Log).unwrap();
    assert!(check_convex(|x| x * x, &g, Curvature::Convex).passed());
    assert!(check_convex(f64::ln, &g, Curvature::Concave).passed());
    assert!(check_convex(f64::ln, &g, Curvature::Convex).failed());
}

#[test]
fn pareto_xr_is_decreasing_and_convex() {
    // F(x) = 1 - x^-5 on [1, inf): r(x) = 5/x, so x r(x) = 5 exactly.
    let xr = |x: f64| {
        let f = 5.0 * x.powi(-6);
        let sf = x.powi(-5);
        x * f / sf
    };
    let g = Grid::new(1.01, 50.0, 2000, Spacing::Log).unwrap();
    assert!(check_monotone(xr, &g, Direction::Decreasing).passed());
    assert!(check_convex(xr, &g, Curvature::Convex).passed());
}

#[test]
fn excluded_points_are_counted() {
    let g = Grid::new(1.0, 10.0, 100, Spacing::Linear).unwrap();
    let v = check_monotone(
        |x| if x < 2.0 { f64::NAN } else { x },
        &g,
        Direction::Increasing,
    );
    assert_eq!(v.excluded, 11);
    assert_eq!(v.status, Status::Inconclusive);

    let v = check_monotone(
        |x| if x < 1.2 { f64::NAN } else { x },
        &g,
        Direction::Increasing,
    );
    assert_eq!(v.excluded, 3);
    assert!(v.passed());
}

#[test]
fn root_examples() {
    assert!(close(find_root(|x| x - 2.0, 0.0, 5.0).unwrap(), 2.0, 1e-12));
    let r = find_root(|x| (-x).exp() - 0.5, 0.0, 5.0).unwrap();
    assert!(close(r, std::f64::consts::LN_2, 1e-11));
    // High-precision Newton reference: 1.52137970680456756960...
    let r = find_root(|x| x * x * x - x - 2.0, 1.0, 2.0).unwrap();
    assert!(close(r, 1.521_379_706_804_567_6, 1e-12));
    assert!(matches!(
        find_root(|x| x * x + 1.0, -1.0, 1.0),
        Err(Error::Bracket { .. })
    ));
}

#[test]
fn quadrature_examples() {
    assert!(close(integrate(|x| x, 0.0, 1.0).unwrap(), 0.5, 1e-12));
    assert!(close(integrate(|_| 1.0, 0.0, 1.0).unwrap(), 1.0, 1e-12));
    assert!(close(integrate(|x| (-x).exp(), 0.0, 40.0).unwrap(), 1.0, 1e-8));
}

#[test]
fn quadrature_reports_divergence() {
    let r = integrate(|x| if x > 0.5 { f64::NAN } else { 1.0 }, 0.0, 1.0);
    assert!(matches!(r, Err(Error::Quadrature(_))));
}

mod props {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn root_is_idempotent(c in 0.1f64..50.0, p in 1.0f64..4.0) {
            let f = |x: f64| x.powf(p) - c;
            let r = find_root(f, 0.0, 60.0).unwrap();
            prop_assert!(f(r).abs() <= 1e-9 * c.max(1.0));
        }

        #[test]
        fn quadrature_is_additive(a in 0.0f64..2.0, w in 0.5f64..5.0, t in 0.05f64..0.95) {
            let f = |x: f64| (x * 1.3).sin() + x * x * 0.2;
            let b = a + w;
            let m = a + t * w;
            let whole = integrate(f, a, b).unwrap();
            let split = integrate(f, a, m).unwrap() + integrate(f, m, b).unwrap();
            prop_assert!((whole - split).abs() <= 1e-8 * whole.abs().max(1.0));
        }
    }
}
