//! Randomized soundness audit: no registered result may see every hypothesis
//! pass while its conclusion fails.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::baselines::Baseline;
use crate::copula::{Family, Generator};
use crate::error::Result;
use crate::extremes::{Extreme, MultipleOutlierModel};
use crate::orders::{OrderStatus, OrderVerdict, Relation};

use super::builtin::builtin_scenarios;
use super::registry::Pair;
use super::{
    assemble, evaluate_conclusion, evaluate_hypotheses, theorems_for, ComparisonScenario,
    ConditionReport, EvalOptions,
};

/// Factor on the shape slack above which a passing margin counts as robust.
pub const ROBUST_MARGIN_FACTOR: f64 = 10.0;

#[derive(Debug, Clone)]
pub struct AuditConfig {
    pub seed: u64,
    pub random_scenarios: usize,
    pub include_builtins: bool,
}

impl Default for AuditConfig {
    fn default() -> Self {
        AuditConfig {
            seed: 42,
            random_scenarios: 100,
            include_builtins: true,
        }
    }
}

/// A report whose hypotheses all pass while the conclusion fails.
#[derive(Debug, Clone)]
pub struct RedFlag {
    pub scenario: String,
    /// Every numeric margin exceeds [`ROBUST_MARGIN_FACTOR`] times the slack.
    pub robust: bool,
    pub report: ConditionReport,
}

#[derive(Debug, Clone, Default)]
pub struct AuditSummary {
    pub scenarios: usize,
    pub reports: usize,
    /// Reports with every hypothesis passing.
    pub applicable: usize,
    /// Applicable reports whose conclusion holds.
    pub confirmed: usize,
    /// Applicable reports whose conclusion is inconclusive.
    pub inconclusive: usize,
    pub red_flags: Vec<RedFlag>,
    /// Applicable report counts per theorem id.
    pub per_theorem: Vec<(&'static str, usize)>,
}

impl AuditSummary {
    pub fn passed(&self) -> bool {
        self.red_flags.is_empty()
    }

    pub fn robust_red_flags(&self) -> usize {
        self.red_flags.iter().filter(|r| r.robust).count()
    }

    pub fn render(&self) -> String {
        let mut out = format!(
            "audit: scenarios={} reports={} applicable={} confirmed={} inconclusive={} red_flags={} (robust {})\n",
            self.scenarios,
            self.reports,
            self.applicable,
            self.confirmed,
            self.inconclusive,
            self.red_flags.len(),
            self.robust_red_flags()
        );
        for (id, n) in &self.per_theorem {
            out.push_str(&format!("  {id:<24} applicable {n}\n"));
        }
        for flag in &self.red_flags {
            out.push_str(&format!("RED FLAG in {}\n{}", flag.scenario, flag.report.render()));
        }
        out
    }
}

fn draw_generator(rng: &mut impl Rng) -> Generator {
    match rng.random_range(0..5) {
        0..=1 => Generator::gumbel_exp(rng.random_range(1.5..=12.0)).expect("theta in range"),
        2..=3 => Generator::log_exp(rng.random_range(0.1..=1.0)).expect("theta in range"),
        _ => Generator::independence(),
    }
}

/// A Gumbel generator at least as strong as `g`, or a copy of `g`.
fn draw_stronger(rng: &mut impl Rng, g: &Generator) -> Generator {
    match *g.family() {
        Family::GumbelExp { theta } if theta < 12.0 && rng.random_bool(0.5) => {
            Generator::gumbel_exp(rng.random_range(theta..=12.0)).expect("theta in range")
        }
        _ => g.clone(),
    }
}

fn draw_baseline(rng: &mut impl Rng) -> Baseline {
    match rng.random_range(0..5) {
        0 => Baseline::exponential(),
        1 => Baseline::kummer(),
        2 => Baseline::lomax_half(),
        3 => Baseline::power(rng.random_range(1.0..=1000.0), rng.random_range(0.5..=4.0))
            .expect("parameters in range"),
        _ => Baseline::pareto(rng.random_range(1.5..=8.0), rng.random_range(0.5..=2.0))
            .expect("parameters in range"),
    }
}

fn draw_scales(rng: &mut impl Rng) -> [f64; 2] {
    [rng.random_range(0.5..=8.0), rng.random_range(0.5..=8.0)]
}

fn sort_into(v: [f64; 2], increasing: bool) -> [f64; 2] {
    if (v[0] <= v[1]) == increasing {
        v
    } else {
        [v[1], v[0]]
    }
}

/// `1 <= n1 <= n1* <= n2* <= n2 <= 12` with `n2 - n2* >= n1* - n1`.
fn draw_count_chain(rng: &mut impl Rng) -> ([usize; 2], [usize; 2]) {
    loop {
        let mut c: Vec<usize> = (0..4).map(|_| rng.random_range(1..=12)).collect();
        c.sort_unstable();
        let (n1, n1s, n2s, n2) = (c[0], c[1], c[2], c[3]);
        if n2 - n2s >= n1s - n1 {
            return ([n1, n2], [n1s, n2s]);
        }
    }
}

/// One randomized scenario. Theorem-shaped draws respect the count chain,
/// the scale cone of the extreme and the Gumbel strength ordering, and
/// share generator or baselines half the time.
pub fn random_scenario(rng: &mut impl Rng, theorem_shaped: bool) -> ComparisonScenario {
    loop {
        let extreme = if rng.random_bool(0.5) { Extreme::Max } else { Extreme::Min };
        let psi_x = draw_generator(rng);
        let f1 = draw_baseline(rng);
        let (psi_y, f2, lambda, mu, counts_x, counts_y);
        if theorem_shaped {
            psi_y = if rng.random_bool(0.5) { psi_x.clone() } else { draw_stronger(rng, &psi_x) };
            f2 = if rng.random_bool(0.5) { f1.clone() } else { draw_baseline(rng) };
            let increasing = extreme == Extreme::Min;
            lambda = sort_into(draw_scales(rng), increasing);
            mu = sort_into(draw_scales(rng), increasing);
            (counts_x, counts_y) = draw_count_chain(rng);
        } else {
            psi_y = draw_generator(rng);
            f2 = draw_baseline(rng);
            lambda = draw_scales(rng);
            mu = draw_scales(rng);
            let mut counts = || [rng.random_range(1..=12), rng.random_range(1..=12)];
            counts_x = counts();
            counts_y = counts();
        }
        let x = MultipleOutlierModel::new(psi_x, f1.clone(), f2.clone(), lambda, counts_x, extreme);
        let y = MultipleOutlierModel::new(psi_y, f1, f2, mu, counts_y, extreme);
        if let (Ok(x), Ok(y)) = (x, y) {
            if let Ok(s) = ComparisonScenario::new(x, y, "random") {
                return s;
            }
        }
    }
}

/// `count` scenarios from `seed`, alternating theorem-shaped and free draws.
pub fn random_scenarios(seed: u64, count: usize) -> Vec<ComparisonScenario> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|i| random_scenario(&mut rng, i % 2 == 0)).collect()
}

/// Reports of every registered result of the scenario's extreme. The
/// conclusion is only computed when all hypotheses pass; a placeholder
/// inconclusive verdict stands in otherwise.
pub fn evaluate_scenario(s: &ComparisonScenario) -> Result<Vec<ConditionReport>> {
    let mut cache: HashMap<(Relation, Pair), OrderVerdict> = HashMap::new();
    let mut reports = Vec::new();
    for spec in theorems_for(s.extreme()) {
        let hypotheses = evaluate_hypotheses(spec, s)?;
        let conclusion = if hypotheses.iter().all(|h| h.passed()) {
            match cache.get(&(spec.relation, spec.pair)) {
                Some(v) => v.clone(),
                None => {
                    let v = evaluate_conclusion(spec, s, &EvalOptions::default())?;
                    cache.insert((spec.relation, spec.pair), v.clone());
                    v
                }
            }
        } else {
            skipped(spec.relation)
        };
        reports.push(assemble(spec, s, hypotheses, conclusion));
    }
    Ok(reports)
}

fn skipped(relation: Relation) -> OrderVerdict {
    OrderVerdict {
        relation,
        status: OrderStatus::Inconclusive,
        witness: None,
        margin: f64::NAN,
        excluded: 0,
        slack: relation.default_slack(),
        cross_check: None,
        note: Some("not evaluated: some hypothesis does not pass".into()),
    }
}

fn describe(s: &ComparisonScenario) -> String {
    let (x, y) = (&s.model_x, &s.model_y);
    format!(
        "{} psi_x={} psi_y={} F1={} F2={} lambda={:?} mu={:?} n={:?} n*={:?}",
        s.extreme(),
        x.generator().name(),
        y.generator().name(),
        x.baseline1().family(),
        x.baseline2().family(),
        x.scales(),
        y.scales(),
        x.counts(),
        y.counts()
    )
}

pub fn run_audit(config: &AuditConfig) -> Result<AuditSummary> {
    let mut scenarios: Vec<(String, ComparisonScenario)> = Vec::new();
    if config.include_builtins {
        scenarios.extend(builtin_scenarios().into_iter().map(|b| (b.id.to_string(), b.scenario)));
    }
    for (i, s) in random_scenarios(config.seed, config.random_scenarios).into_iter().enumerate() {
        scenarios.push((format!("random #{i}: {}", describe(&s)), s));
    }
    let results: Vec<(String, Vec<ConditionReport>)> = scenarios
        .par_iter()
        .map(|(name, s)| evaluate_scenario(s).map(|r| (name.clone(), r)))
        .collect::<Result<_>>()?;

    let mut summary = AuditSummary {
        scenarios: results.len(),
        ..Default::default()
    };
    let mut per: HashMap<&'static str, usize> = HashMap::new();
    for (name, reports) in results {
        for report in reports {
            summary.reports += 1;
            if !report.all_pass() {
                continue;
            }
            summary.applicable += 1;
            *per.entry(report.theorem_id).or_default() += 1;
            match report.conclusion.status {
                OrderStatus::Holds => summary.confirmed += 1,
                OrderStatus::Inconclusive => summary.inconclusive += 1,
                OrderStatus::Fails => summary.red_flags.push(RedFlag {
                    scenario: name.clone(),
                    robust: report.all_pass_with_margin(ROBUST_MARGIN_FACTOR),
                    report,
                }),
            }
        }
    }
    let mut per: Vec<_> = per.into_iter().collect();
    per.sort_unstable();
    summary.per_theorem = per;
    Ok(summary)
}
