use outlier_extremes::baselines::Baseline;
use outlier_extremes::copula::Generator;
use outlier_extremes::error::Error;
use outlier_extremes::extremes::{Extreme, MultipleOutlierModel};
use outlier_extremes::orders::{OrderStatus, Relation};
use outlier_extremes::theorems::audit::{run_audit, AuditConfig};
use outlier_extremes::theorems::registry::DUAL_IDS;
use outlier_extremes::theorems::*;

#[test]
fn builtins_match_their_expectations() {
    for b in builtin_scenarios() {
        let report = evaluate_theorem(b.theorem, &b.scenario).unwrap();
        let mut failing = report.failing();
        failing.sort_unstable();
        let mut expected = b.expectation.failing.to_vec();
        expected.sort_unstable();
        assert_eq!(failing, expected, "{}:\n{}", b.id, report.render());
        assert_eq!(report.conclusion.status, b.expectation.conclusion, "{}", b.id);
        assert!(!report.red_flag(), "{}", b.id);
    }
}

#[test]
fn examples_satisfy_every_hypothesis() {
    for id in ["ex_3_1", "ex_3_2", "ex_3_5"] {
        let b = builtin_scenario(id).unwrap();
        let report = evaluate_theorem(b.theorem, &b.scenario).unwrap();
        assert!(report.all_pass(), "{}", report.render());
        assert_eq!(report.conclusion.status, OrderStatus::Holds);
    }
}

#[test]
fn builtin_ids_round_trip() {
    assert_eq!(builtin_scenarios().len(), 6);
    for b in builtin_scenarios() {
        assert_eq!(builtin_scenario(b.id).unwrap().id, b.id);
        assert!(lookup(b.theorem).is_some(), "{}", b.theorem);
    }
    assert!(builtin_scenario("ex_9_9").is_none());
}

#[test]
fn unknown_id_is_invalid_input() {
    let b = builtin_scenario("ex_3_1").unwrap();
    let err = evaluate_theorem("MAX_NOTHING", &b.scenario).unwrap_err();
    assert!(matches!(err, Error::InvalidInput(_)), "{err}");
    assert!(err.to_string().contains("MAX_ST_COMBINED"));
}

#[test]
fn extreme_mismatch_is_rejected() {
    let b = builtin_scenario("ex_3_1").unwrap();
    assert_eq!(b.scenario.extreme(), Extreme::Max);
    let err = evaluate_theorem("MIN_ST_COMBINED", &b.scenario).unwrap_err();
    assert!(matches!(err, Error::InvalidInput(_)));
}

#[test]
fn lookup_ignores_case() {
    assert_eq!(lookup("max_star").unwrap().id, "MAX_STAR");
}

#[test]
fn registry_ids_are_unique_and_split_by_extreme() {
    let mut ids = theorem_ids();
    let n = ids.len();
    ids.sort_unstable();
    ids.dedup();
    assert_eq!(ids.len(), n);
    assert_eq!(n, 24);
    assert_eq!(theorems_for(Extreme::Max).count(), 12);
    assert_eq!(theorems_for(Extreme::Min).count(), 12);
    for t in THEOREMS {
        let prefix = match t.extreme {
            Extreme::Max => "MAX_",
            Extreme::Min => "MIN_",
        };
        assert!(t.id.starts_with(prefix), "{}", t.id);
        assert!(!t.hypotheses.is_empty(), "{}", t.id);
    }
}

fn gumbel_scenario(extreme: Extreme, lambda: [f64; 2], mu: [f64; 2]) -> ComparisonScenario {
    let g = Generator::gumbel_exp(2.0).unwrap();
    let e = Baseline::exponential();
    scenario(extreme, g.clone(), g, e.clone(), e, lambda, mu, [2, 3], [2, 3]).unwrap()
}

#[test]
fn dual_ids_follow_the_cone_of_lambda() {
    for dual in DUAL_IDS {
        let extreme = if dual.starts_with("MAX") { Extreme::Max } else { Extreme::Min };
        let inc = gumbel_scenario(extreme, [1.0, 2.0], [1.5, 1.5]);
        let dec = gumbel_scenario(extreme, [2.0, 1.0], [1.5, 1.5]);
        assert_eq!(resolve_id(dual, &inc).unwrap().id, format!("{dual}_INC"));
        assert_eq!(resolve_id(dual, &dec).unwrap().id, format!("{dual}_DEC"));
    }
}

#[test]
fn scenario_rejects_mixed_extremes_and_baselines() {
    let g = Generator::independence();
    let e = Baseline::exponential();
    let model = |f2: &Baseline, extreme| {
        MultipleOutlierModel::new(g.clone(), e.clone(), f2.clone(), [1.0, 2.0], [1, 1], extreme).unwrap()
    };
    let x = model(&e, Extreme::Max);
    assert!(ComparisonScenario::new(x.clone(), model(&e, Extreme::Min), "").is_err());
    assert!(ComparisonScenario::new(x.clone(), model(&Baseline::kummer(), Extreme::Max), "").is_err());
    assert!(ComparisonScenario::new(x.clone(), x, "").is_ok());
}

#[test]
fn every_result_evaluates_on_every_builtin_of_its_extreme() {
    for b in builtin_scenarios() {
        for t in theorems_for(b.scenario.extreme()) {
            let r = evaluate_theorem(t.id, &b.scenario).unwrap();
            assert_eq!(r.hypotheses.len(), t.hypotheses.len(), "{}", t.id);
            if r.conclusion.status == OrderStatus::Inconclusive {
                // Only a Lorenz comparison of a maximum with a Lomax block,
                // whose mean is infinite, is allowed to stay open.
                let note = r.conclusion.note.as_deref().unwrap_or("");
                assert_eq!((r.relation, b.id), (Relation::Lorenz, "ce_3_1"), "{}", t.id);
                assert!(note.contains("diverge"), "{note}");
            }
            assert!(!r.red_flag(), "{} on {}:\n{}", t.id, b.id, r.render());
        }
    }
}

#[test]
fn identical_models_satisfy_every_reflexive_conclusion() {
    let s = gumbel_scenario(Extreme::Min, [1.0, 3.0], [1.0, 3.0]);
    for t in theorems_for(Extreme::Min) {
        let c = evaluate_conclusion(t, &s, &EvalOptions::default()).unwrap();
        // With equal counts every pair compares a model with itself.
        assert_eq!(c.status, OrderStatus::Holds, "{}: {c}", t.id);
    }
}

#[test]
fn conclusion_does_not_depend_on_hypotheses() {
    let b = builtin_scenario("ce_3_1").unwrap();
    let spec = lookup(b.theorem).unwrap();
    let trimmed: &'static TheoremSpec = Box::leak(Box::new(TheoremSpec {
        hypotheses: &spec.hypotheses[..1],
        ..*spec
    }));
    let full = evaluate_theorem(b.theorem, &b.scenario).unwrap();
    let cut = evaluate_spec(trimmed, &b.scenario, &EvalOptions::default()).unwrap();
    assert_eq!(cut.hypotheses.len(), 1);
    assert_eq!(cut.conclusion, full.conclusion);
}

/// A result stripped of the hypotheses that rule the counterexample out is
/// unsound, and the report must say so.
#[test]
fn a_result_without_its_hypotheses_is_flagged() {
    let b = builtin_scenario("ce_3_1").unwrap();
    let spec = lookup(b.theorem).unwrap();
    let kept: Vec<_> = spec
        .hypotheses
        .iter()
        .copied()
        .filter(|h| !b.expectation.failing.contains(&h.name().as_str()))
        .collect();
    let unsound: &'static TheoremSpec = Box::leak(Box::new(TheoremSpec {
        id: "UNSOUND",
        hypotheses: Box::leak(kept.into_boxed_slice()),
        ..*spec
    }));
    let r = evaluate_spec(unsound, &b.scenario, &EvalOptions::default()).unwrap();
    assert!(r.all_pass(), "{}", r.render());
    assert!(r.red_flag());
    assert!(r.render().contains("RED FLAG"));
}

#[test]
fn slack_override_reaches_the_conclusion() {
    let b = builtin_scenario("ce_3_1").unwrap();
    let loose = EvalOptions {
        grid: None,
        slack: Some(1.0),
    };
    let r = evaluate_theorem_with(b.theorem, &b.scenario, &loose).unwrap();
    assert_eq!(r.conclusion.slack, 1.0);
    assert_eq!(r.conclusion.status, OrderStatus::Holds);
}

#[test]
fn report_claims_name_the_compared_operands() {
    let b = builtin_scenario("ex_3_1").unwrap();
    let r = evaluate_theorem(b.theorem, &b.scenario).unwrap();
    assert_eq!(r.relation, Relation::St);
    assert!(r.claim_text().starts_with("Y_"), "{}", r.claim_text());
    assert!(r.claim_text().contains(" X_"), "{}", r.claim_text());
}

#[test]
fn short_audit_has_no_red_flags() {
    let summary = run_audit(&AuditConfig {
        seed: 3,
        random_scenarios: 40,
        include_builtins: true,
    })
    .unwrap();
    assert_eq!(summary.scenarios, 46);
    assert!(summary.applicable > 0);
    assert!(summary.passed(), "{}", summary.render());
    assert_eq!(summary.confirmed + summary.inconclusive, summary.applicable);
}

#[test]
fn audit_is_deterministic_in_the_seed() {
    let cfg = AuditConfig {
        seed: 11,
        random_scenarios: 12,
        include_builtins: false,
    };
    let a = run_audit(&cfg).unwrap();
    let b = run_audit(&cfg).unwrap();
    assert_eq!(a.render(), b.render());
}
