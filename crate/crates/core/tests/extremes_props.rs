use outlier_extremes::baselines::Baseline;
use outlier_extremes::copula::Generator;
use outlier_extremes::distribution::LifetimeDistribution;
use outlier_extremes::extremes::*;
use proptest::prelude::*;

fn baseline() -> impl Strategy<Value = Baseline> {
    prop_oneof![
        Just(Baseline::exponential()),
        Just(Baseline::kummer()),
        Just(Baseline::lomax_half()),
        (1.0f64..100.0, 0.5f64..4.0).prop_map(|(a, l)| Baseline::power(a, l).unwrap()),
        (1.5f64..8.0, 0.5f64..2.0).prop_map(|(a, b)| Baseline::pareto(a, b).unwrap()),
    ]
}

fn generator() -> impl Strategy<Value = Generator> {
    prop_oneof![
        Just(Generator::independence()),
        (1.0f64..12.0).prop_map(|t| Generator::gumbel_exp(t).unwrap()),
        (0.1f64..1.0).prop_map(|t| Generator::log_exp(t).unwrap()),
    ]
}

fn extreme() -> impl Strategy<Value = Extreme> {
    prop_oneof![Just(Extreme::Max), Just(Extreme::Min)]
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn independence_matches_products(
        f1 in baseline(), f2 in baseline(),
        l1 in 0.5f64..8.0, l2 in 0.5f64..8.0,
        n1 in 1usize..12, n2 in 1usize..12,
        e in extreme(), u in 0.05f64..0.95,
    ) {
        let m = MultipleOutlierModel::new(Generator::independence(), f1, f2, [l1, l2], [n1, n2], e).unwrap();
        let d = m.distribution();
        let x = d.quantile(u).unwrap();
        let (a, b) = (d.marginal(0), d.marginal(1));
        let (k1, k2) = (n1 as i32, n2 as i32);
        match e {
            Extreme::Max => {
                let want = a.cdf(x).powi(k1) * b.cdf(x).powi(k2);
                prop_assert!((max_cdf(&m, x).unwrap() - want).abs() <= 1e-10);
                // A block surely below x contributes no reversed hazard.
                let r = |f: &Baseline| if f.cdf(x) == 1.0 { 0.0 } else { f.rev_hazard(x).unwrap() };
                let rate = n1 as f64 * r(a) + n2 as f64 * r(b);
                prop_assert!(rel(max_rev_hazard(&m, x).unwrap(), rate) <= 1e-8);
            }
            Extreme::Min => {
                let want = a.sf(x).powi(k1) * b.sf(x).powi(k2);
                prop_assert!((min_sf(&m, x).unwrap() - want).abs() <= 1e-10);
                let r = |f: &Baseline| if f.sf(x) == 1.0 { 0.0 } else { f.hazard(x).unwrap() };
                let rate = n1 as f64 * r(a) + n2 as f64 * r(b);
                prop_assert!(rel(min_hazard(&m, x).unwrap(), rate) <= 1e-8);
            }
        }
    }

    #[test]
    fn cdf_and_sf_are_complementary_and_monotone(
        g in generator(), f1 in baseline(), f2 in baseline(),
        l1 in 0.5f64..8.0, l2 in 0.5f64..8.0,
        n1 in 1usize..12, n2 in 1usize..12,
        e in extreme(), u in 0.02f64..0.9,
    ) {
        let d = MultipleOutlierModel::new(g, f1, f2, [l1, l2], [n1, n2], e).unwrap().distribution();
        let x = d.quantile(u).unwrap();
        let y = d.quantile(u + 0.05).unwrap();
        prop_assert!((d.cdf(x) + d.sf(x) - 1.0).abs() <= 1e-12);
        prop_assert!(x <= y);
        prop_assert!(d.cdf(x) <= d.cdf(y));
        prop_assert!((d.cdf(x) - u).abs() <= 1e-8);
    }

    /// `F(x) = psi(sum phi(1 - e^{-l x}))` under a Gumbel generator is
    /// Schur-concave in the expanded scale vector: moving the two scales
    /// toward each other with equal counts can only raise it.
    #[test]
    fn max_cdf_schur_spot_check(
        theta in 1.0f64..12.0, a in 0.5f64..8.0, b in 0.5f64..8.0,
        alpha in 0.0f64..=1.0, k in 1usize..8, x in 0.05f64..5.0,
    ) {
        let g = Generator::gumbel_exp(theta).unwrap();
        let e = Baseline::exponential();
        let m = MultipleOutlierModel::new(g, e.clone(), e, [a, b], [k, k], Extreme::Max).unwrap();
        let mixed = [alpha * a + (1.0 - alpha) * b, (1.0 - alpha) * a + alpha * b];
        let spread = max_cdf(&m, x).unwrap();
        let inner = max_cdf(&m.with_scales(mixed).unwrap(), x).unwrap();
        prop_assert!(spread <= inner + 1e-12, "{spread} > {inner}");
    }

    #[test]
    fn scaling_all_scales_rescales_the_extreme(
        g in generator(), f1 in baseline(), f2 in baseline(),
        l1 in 0.5f64..4.0, l2 in 0.5f64..4.0, c in 0.5f64..2.0,
        n1 in 1usize..8, n2 in 1usize..8, e in extreme(), u in 0.05f64..0.95,
    ) {
        let m = MultipleOutlierModel::new(g, f1, f2, [l1, l2], [n1, n2], e).unwrap();
        let scaled = m.with_scales([c * l1, c * l2]).unwrap();
        let q = m.distribution().quantile(u).unwrap();
        let qs = scaled.distribution().quantile(u).unwrap();
        prop_assert!(rel(qs * c, q) <= 1e-8);
    }
}
