use outlier_extremes::baselines::*;
use outlier_extremes::copula::*;
use outlier_extremes::distribution::LifetimeDistribution;
use outlier_extremes::extremes::*;
use outlier_extremes::numerics::{self, *};

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

fn model(
    g: Generator,
    b1: Baseline,
    b2: Baseline,
    s: [f64; 2],
    n: [usize; 2],
    e: Extreme,
) -> MultipleOutlierModel {
    MultipleOutlierModel::new(g, b1, b2, s, n, e).unwrap()
}

#[test]
fn rejects_bad_models() {
    let e = Baseline::exponential();
    let g = Generator::independence();
    assert!(MultipleOutlierModel::new(g.clone(), e.clone(), e.clone(), [0.0, 1.0], [1, 1], Extreme::Max).is_err());
    assert!(MultipleOutlierModel::new(g, e.clone(), e, [1.0, 1.0], [1, 0], Extreme::Max).is_err());
}

#[test]
fn independence_max_is_product() {
    let m = model(
        Generator::independence(),
        Baseline::exponential(),
        Baseline::kummer(),
        [1.5, 0.7],
        [2, 3],
        Extreme::Max,
    );
    let d = m.distribution();
    for &x in &[0.1, 0.5, 1.0, 3.0, 10.0] {
        let want = d.marginal(0).cdf(x).powi(2) * d.marginal(1).cdf(x).powi(3);
        assert!((d.cdf(x) - want).abs() <= 1e-10);
        let rt = 2.0 * d.marginal(0).rev_hazard(x).unwrap()
            + 3.0 * d.marginal(1).rev_hazard(x).unwrap();
        assert!(rel(max_rev_hazard(&m, x).unwrap(), rt) < 1e-8);
    }
}

#[test]
fn independence_min_is_product() {
    let m = model(
        Generator::independence(),
        Baseline::exponential(),
        Baseline::lomax_half(),
        [1.2, 3.6],
        [2, 11],
        Extreme::Min,
    );
    let d = m.distribution();
    for &x in &[0.01, 0.1, 0.5, 2.0] {
        let want = d.marginal(0).sf(x).powi(2) * d.marginal(1).sf(x).powi(11);
        assert!((min_sf(&m, x).unwrap() - want).abs() <= 1e-10);
        let r = 2.0 * d.marginal(0).hazard(x).unwrap() + 11.0 * d.marginal(1).hazard(x).unwrap();
        assert!(rel(min_hazard(&m, x).unwrap(), r) < 1e-8);
    }
    assert!((d.sf(1e-12) - 1.0).abs() <= 1e-9);
}

#[test]
fn exchangeable_diagonal() {
    let g = Generator::gumbel_exp(3.0).unwrap();
    let e = Baseline::exponential();
    let m = model(g.clone(), e.clone(), e.clone(), [2.0, 2.0], [1, 1], Extreme::Max);
    for &x in &[0.2, 1.0, 2.0] {
        let u = e.cdf(2.0 * x);
        let want = g.psi(2.0 * g.phi(u).unwrap());
        assert!(rel(max_cdf(&m, x).unwrap(), want) < 1e-12);
    }
}

#[test]
fn direct_composition_at_median_marginals() {
    // Choose x where F1(5x) = 0.5, then F2(2x) is whatever it is; also
    // check the symmetric case where both marginals equal 0.5.
    let g = Generator::gumbel_exp(9.0).unwrap();
    let m = model(
        g.clone(),
        Baseline::exponential(),
        Baseline::exponential(),
        [5.0, 5.0],
        [1, 11],
        Extreme::Max,
    );
    let x = std::f64::consts::LN_2 / 5.0;
    let want = g.psi(12.0 * g.phi(0.5).unwrap());
    assert!(rel(max_cdf(&m, x).unwrap(), want) < 1e-12);
}

#[test]
fn min_support_edge() {
    let m = model(
        Generator::gumbel_exp(9.0).unwrap(),
        Baseline::power(400.0, 2.0).unwrap(),
        Baseline::exponential(),
        [2.0, 6.0],
        [4, 8],
        Extreme::Min,
    );
    let d = m.distribution();
    assert_eq!(d.support().1, 200.0);
    assert_eq!(d.sf(200.0), 0.0);
    assert_eq!(d.sf(250.0), 0.0);
}

#[test]
fn rates_match_log_derivatives() {
    let cases = vec![
        model(
            Generator::gumbel_exp(9.0).unwrap(),
            Baseline::exponential(),
            Baseline::kummer(),
            [5.0, 2.0],
            [1, 11],
            Extreme::Max,
        ),
        model(
            Generator::log_exp(0.99).unwrap(),
            Baseline::power(1000.0, 2.0).unwrap(),
            Baseline::power(1000.0, 2.0).unwrap(),
            [0.5f64.exp(), 0.6f64.exp()],
            [2, 11],
            Extreme::Min,
        ),
    ];
    for m in cases {
        let d = m.distribution();
        let lo = d.quantile(1e-3).unwrap();
        let hi = d.quantile(1.0 - 1e-3).unwrap();
        let grid = Grid::new(lo, hi, 50, Spacing::Log).unwrap();
        for &x in grid.points() {
            let (analytic, numeric) = match m.extreme() {
                Extreme::Max => (
                    d.rev_hazard(x).unwrap(),
                    numerics::derivative(|t| d.cdf(t).ln(), x).unwrap(),
                ),
                Extreme::Min => (
                    d.hazard(x).unwrap(),
                    -numerics::derivative(|t| d.sf(t).ln(), x).unwrap(),
                ),
            };
            assert!(rel(numeric, analytic) < 1e-4, "{x}: {numeric} vs {analytic}");
        }
    }
}

#[test]
fn quantile_examples() {
    let e = Baseline::exponential();
    let m = model(Generator::independence(), e.clone(), e, [1.0, 1.0], [1, 1], Extreme::Max);
    let d = m.distribution();
    assert!(rel(d.quantile(0.25).unwrap(), std::f64::consts::LN_2) < 1e-12);
    let q = d.quantile(0.5).unwrap();
    assert!((d.cdf(q) - 0.5).abs() <= 1e-9);
    let q = d.quantile(0.999).unwrap();
    assert!((d.cdf(q) - 0.999).abs() <= 1e-9);
    let q = d.quantile_sf(1e-200).unwrap();
    assert!(rel(d.sf(q), 1e-200) < 1e-8);
}

#[test]
fn density_integrates_to_one() {
    let m = model(
        Generator::gumbel_exp(10.0).unwrap(),
        Baseline::exponential(),
        Baseline::kummer(),
        [6.0, 3.0],
        [5, 6],
        Extreme::Max,
    );
    let d = m.distribution();
    let lo = d.quantile(1e-6).unwrap();
    let hi = d.quantile(1.0 - 1e-6).unwrap();
    let knots = Grid::new(lo, hi, 30, Spacing::Log).unwrap();
    let mass: f64 = knots
        .points()
        .windows(2)
        .map(|w| integrate(|t| d.pdf(t), w[0], w[1]).unwrap())
        .sum();
    assert!((mass - (1.0 - 2e-6)).abs() <= 1e-4, "{mass}");
}

#[test]
fn cdf_plus_sf_is_one() {
    let m = model(
        Generator::gumbel_exp(4.5).unwrap(),
        Baseline::exponential(),
        Baseline::lomax_half(),
        [1.2, 3.6],
        [2, 11],
        Extreme::Min,
    );
    let d = m.distribution();
    for k in 1..200 {
        let x = k as f64 * 0.02;
        assert!((d.cdf(x) + d.sf(x) - 1.0).abs() <= 1e-12);
    }
}

#[test]
fn wrong_extreme_rejected() {
    let e = Baseline::exponential();
    let m = model(Generator::independence(), e.clone(), e, [1.0, 1.0], [1, 1], Extreme::Max);
    assert!(min_sf(&m, 1.0).is_err());
    assert!(min_hazard(&m, 1.0).is_err());
}

#[test]
fn labels() {
    let e = Baseline::exponential();
    let m = model(Generator::independence(), e.clone(), e, [1.0, 1.0], [1, 11], Extreme::Max);
    assert_eq!(m.label(), "12:12(1,11)");
    assert_eq!(m.with_counts([2, 11]).unwrap().label(), "13:13(2,11)");
    let m = m.distribution().model().clone();
    assert_eq!(m.expanded_scales().len(), 12);
}
