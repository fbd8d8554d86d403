//! Hypothesis checks and conclusion verdicts for the comparison results on
//! extreme order statistics of two multiple-outlier models.
//!
//! A [`ComparisonScenario`] pairs a model `X` (scales `lambda`, counts `n`,
//! generator `psi1`) with a model `Y` (scales `mu`, counts `n*`, generator
//! `psi2`) over shared block baselines `F1`, `F2`. [`evaluate_theorem`]
//! checks every hypothesis of a registered result and, separately, the order
//! it concludes.

pub mod audit;
pub mod builtin;
pub mod registry;

use std::fmt::{self, Write as _};

use crate::baselines::{check_same_baseline, compare_hazards, Baseline, CompareMode};
use crate::copula::{check_same_generator, check_super_additive, Generator};
use crate::error::{invalid, Result};
use crate::extremes::{Extreme, MultipleOutlierModel};
use crate::majorization::{
    expand_outlier_vector, in_decreasing_cone, in_increasing_cone, weakly_submajorizes,
    weakly_supermajorizes,
};
use crate::numerics::{Grid, ShapeVerdict, Status, Witness, DEFAULT_SHAPE_SLACK};
use crate::orders::{self, OrderStatus, OrderVerdict, Relation};

pub use builtin::{builtin_scenario, builtin_scenarios, BuiltinScenario, Expectation};
pub use registry::{lookup, theorem_ids, Hypothesis, Operand, Pair, TheoremSpec, THEOREMS};

use registry::{Cmp, Cone, Quantity, Side};

/// Points in the generator and baseline grids used for hypothesis checks.
pub const HYPOTHESIS_GRID_POINTS: usize = 400;

/// Two models over the same block baselines and extreme.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonScenario {
    pub model_x: MultipleOutlierModel,
    pub model_y: MultipleOutlierModel,
    pub note: String,
}

impl ComparisonScenario {
    pub fn new(
        model_x: MultipleOutlierModel,
        model_y: MultipleOutlierModel,
        note: impl Into<String>,
    ) -> Result<Self> {
        if model_x.extreme() != model_y.extreme() {
            return Err(invalid(format!(
                "both models must use the same extreme, got {} and {}",
                model_x.extreme(),
                model_y.extreme()
            )));
        }
        if model_x.baseline1() != model_y.baseline1() || model_x.baseline2() != model_y.baseline2() {
            return Err(invalid("both models must share the block baselines F1 and F2"));
        }
        Ok(ComparisonScenario {
            model_x,
            model_y,
            note: note.into(),
        })
    }

    pub fn extreme(&self) -> Extreme {
        self.model_x.extreme()
    }

    pub fn lambda(&self) -> [f64; 2] {
        self.model_x.scales()
    }

    pub fn mu(&self) -> [f64; 2] {
        self.model_y.scales()
    }

    /// `n`
    pub fn counts(&self) -> [usize; 2] {
        self.model_x.counts()
    }

    /// `n*`
    pub fn counts_star(&self) -> [usize; 2] {
        self.model_y.counts()
    }

    /// The `X` model with the counts of `Y`.
    pub fn x_star(&self) -> MultipleOutlierModel {
        self.model_x
            .with_counts(self.counts_star())
            .expect("counts of a valid model")
    }

    pub fn operand(&self, which: Operand) -> MultipleOutlierModel {
        match which {
            Operand::Xn => self.model_x.clone(),
            Operand::XStar => self.x_star(),
            Operand::Y => self.model_y.clone(),
        }
    }

    /// `X_{12:12}(1,11)` style label.
    pub fn operand_label(&self, which: Operand) -> String {
        match which {
            Operand::Xn => format!("X_{}", self.model_x.label()),
            Operand::XStar => format!("X_{}", self.x_star().label()),
            Operand::Y => format!("Y_{}", self.model_y.label()),
        }
    }
}

/// One evaluated hypothesis. Relations on parameters have no margin.
#[derive(Debug, Clone, PartialEq)]
pub struct HypothesisRow {
    pub name: String,
    pub status: Status,
    pub margin: Option<f64>,
    pub witness: Option<Witness>,
    pub excluded: usize,
    /// Sub-rows of a disjunctive hypothesis.
    pub disjuncts: Vec<HypothesisRow>,
}

impl HypothesisRow {
    fn flag(name: String, holds: bool) -> Self {
        HypothesisRow {
            name,
            status: if holds { Status::Pass } else { Status::Fail },
            margin: None,
            witness: None,
            excluded: 0,
            disjuncts: Vec::new(),
        }
    }

    fn shape(name: String, v: ShapeVerdict) -> Self {
        HypothesisRow {
            name,
            status: v.status,
            margin: Some(v.margin),
            witness: v.witness,
            excluded: v.excluded,
            disjuncts: Vec::new(),
        }
    }

    /// PASS if either disjunct passes, FAIL if both fail.
    fn either(name: String, a: HypothesisRow, b: HypothesisRow) -> Self {
        let status = match (a.status, b.status) {
            (Status::Pass, _) | (_, Status::Pass) => Status::Pass,
            (Status::Fail, Status::Fail) => Status::Fail,
            _ => Status::Inconclusive,
        };
        let margin = [&a, &b]
            .iter()
            .filter(|r| status != Status::Pass || r.status == Status::Pass)
            .filter_map(|r| r.margin)
            .fold(None, |m: Option<f64>, v| Some(m.map_or(v, |m| m.max(v))));
        HypothesisRow {
            name,
            status,
            margin,
            witness: None,
            excluded: a.excluded.max(b.excluded),
            disjuncts: vec![a, b],
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// PASS with every numeric margin above `factor * DEFAULT_SHAPE_SLACK`.
    pub fn passed_with_margin(&self, factor: f64) -> bool {
        self.passed() && self.margin.is_none_or(|m| m > factor * DEFAULT_SHAPE_SLACK)
    }
}

/// Result of checking one registered result against one scenario.
#[derive(Debug, Clone)]
pub struct ConditionReport {
    pub theorem_id: &'static str,
    pub summary: &'static str,
    pub relation: Relation,
    /// `A <= B` labels of the concluded comparison.
    pub claim: (String, String),
    pub hypotheses: Vec<HypothesisRow>,
    pub conclusion: OrderVerdict,
    /// False only when every hypothesis passes yet the conclusion fails.
    pub consistent: bool,
}

impl ConditionReport {
    pub fn all_pass(&self) -> bool {
        self.hypotheses.iter().all(HypothesisRow::passed)
    }

    /// All hypotheses pass with margins above `factor` times the shape slack.
    pub fn all_pass_with_margin(&self, factor: f64) -> bool {
        self.hypotheses.iter().all(|h| h.passed_with_margin(factor))
    }

    pub fn red_flag(&self) -> bool {
        !self.consistent
    }

    /// Names of failing rows, including failing disjuncts.
    pub fn failing(&self) -> Vec<&str> {
        let mut out = Vec::new();
        for h in &self.hypotheses {
            if h.status == Status::Fail {
                out.push(h.name.as_str());
            }
            out.extend(
                h.disjuncts
                    .iter()
                    .filter(|d| d.status == Status::Fail)
                    .map(|d| d.name.as_str()),
            );
        }
        out
    }

    pub fn claim_text(&self) -> String {
        format!("{} {} {}", self.claim.0, self.relation.symbol(), self.claim.1)
    }

    /// Fixed-width table for terminals.
    pub fn render(&self) -> String {
        fn row(out: &mut String, indent: &str, h: &HypothesisRow) {
            let margin = h.margin.map_or_else(|| "-".to_string(), |m| format!("{m:.3e}"));
            let witness = h.witness.map_or_else(|| "-".to_string(), |w| w.to_string());
            let name = format!("{indent}{}", h.name);
            let _ = writeln!(out, "  {name:<46} {:<13} {margin:>11}  {witness}", h.status.to_string());
        }
        let mut out = String::new();
        let _ = writeln!(out, "theorem {}: {}", self.theorem_id, self.summary);
        let _ = writeln!(out, "claim:   {}", self.claim_text());
        let _ = writeln!(out, "  {:<46} {:<13} {:>11}  witness", "hypothesis", "status", "margin");
        for h in &self.hypotheses {
            row(&mut out, "", h);
            for d in &h.disjuncts {
                row(&mut out, "  or: ", d);
            }
        }
        let c = &self.conclusion;
        let _ = writeln!(out, "conclusion: {}", c.summary_line());
        if let Some(note) = &c.note {
            let _ = writeln!(out, "  note: {note}");
        }
        let verdict = if self.consistent {
            if self.all_pass() {
                "consistent (all hypotheses pass)"
            } else {
                "consistent (some hypothesis does not pass, no claim)"
            }
        } else {
            "RED FLAG: every hypothesis passes but the conclusion fails"
        };
        let _ = writeln!(out, "{verdict}");
        out
    }
}

impl fmt::Display for ConditionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Optional overrides for the conclusion check.
#[derive(Debug, Clone, Default)]
pub struct EvalOptions {
    pub grid: Option<Grid>,
    pub slack: Option<f64>,
}

/// Resolves an id, mapping a dual-cone id to its `_INC` or `_DEC` form by
/// the cone of `lambda`.
pub fn resolve_id(id: &str, s: &ComparisonScenario) -> Result<&'static TheoremSpec> {
    if let Some(t) = lookup(id) {
        return Ok(t);
    }
    if registry::DUAL_IDS.iter().any(|d| d.eq_ignore_ascii_case(id)) {
        let suffix = if in_increasing_cone(&s.lambda()) { "_INC" } else { "_DEC" };
        let full = format!("{}{suffix}", id.to_ascii_uppercase());
        return lookup(&full).ok_or_else(|| invalid(format!("unknown theorem id `{full}`")));
    }
    Err(invalid(format!(
        "unknown theorem id `{id}`; known ids: {}",
        theorem_ids().join(", ")
    )))
}

pub fn evaluate_theorem(id: &str, s: &ComparisonScenario) -> Result<ConditionReport> {
    evaluate_theorem_with(id, s, &EvalOptions::default())
}

pub fn evaluate_theorem_with(
    id: &str,
    s: &ComparisonScenario,
    opts: &EvalOptions,
) -> Result<ConditionReport> {
    evaluate_spec(resolve_id(id, s)?, s, opts)
}

/// Evaluates a result that need not be registered.
pub fn evaluate_spec(
    spec: &'static TheoremSpec,
    s: &ComparisonScenario,
    opts: &EvalOptions,
) -> Result<ConditionReport> {
    check_extreme(spec, s)?;
    let hypotheses = evaluate_hypotheses(spec, s)?;
    let conclusion = evaluate_conclusion(spec, s, opts)?;
    Ok(assemble(spec, s, hypotheses, conclusion))
}

fn check_extreme(spec: &TheoremSpec, s: &ComparisonScenario) -> Result<()> {
    if spec.extreme != s.extreme() {
        return Err(invalid(format!(
            "{} concerns {} order statistics but the scenario uses {}",
            spec.id,
            spec.extreme,
            s.extreme()
        )));
    }
    Ok(())
}

pub(crate) fn assemble(
    spec: &'static TheoremSpec,
    s: &ComparisonScenario,
    hypotheses: Vec<HypothesisRow>,
    conclusion: OrderVerdict,
) -> ConditionReport {
    let (a, b) = spec.pair.operands();
    let all_pass = hypotheses.iter().all(HypothesisRow::passed);
    ConditionReport {
        theorem_id: spec.id,
        summary: spec.summary,
        relation: spec.relation,
        claim: (s.operand_label(a), s.operand_label(b)),
        consistent: !(all_pass && conclusion.status == OrderStatus::Fails),
        hypotheses,
        conclusion,
    }
}

/// The concluded order, checked directly on the two order statistics.
pub fn evaluate_conclusion(
    spec: &TheoremSpec,
    s: &ComparisonScenario,
    opts: &EvalOptions,
) -> Result<OrderVerdict> {
    let (a, b) = spec.pair.operands();
    let (da, db) = (s.operand(a).distribution(), s.operand(b).distribution());
    orders::check_on(spec.relation, &da, &db, opts.grid.as_ref(), opts.slack)
}

/// Grids shared by the hypothesis checks of one scenario.
struct Grids {
    gen_x: Grid,
    gen_y: Grid,
    base1: Grid,
    base2: Grid,
    both: Grid,
}

impl Grids {
    fn new(s: &ComparisonScenario) -> Result<Self> {
        let n = HYPOTHESIS_GRID_POINTS;
        let (b1, b2) = (s.model_x.baseline1(), s.model_x.baseline2());
        Ok(Grids {
            gen_x: s.model_x.generator().default_grid(n)?,
            gen_y: s.model_y.generator().default_grid(n)?,
            base1: b1.default_grid(n)?,
            base2: b2.default_grid(n)?,
            both: Baseline::comparison_grid(b1, b2, n)?,
        })
    }
}

pub fn evaluate_hypotheses(spec: &TheoremSpec, s: &ComparisonScenario) -> Result<Vec<HypothesisRow>> {
    let grids = Grids::new(s)?;
    spec.hypotheses
        .iter()
        .map(|h| evaluate_hypothesis(h, s, &grids))
        .collect()
}

fn expanded(v: [f64; 2], counts: [usize; 2]) -> Vec<f64> {
    expand_outlier_vector(v[0], v[1], counts[0], counts[1]).expect("counts of a valid model")
}

fn evaluate_hypothesis(h: &Hypothesis, s: &ComparisonScenario, g: &Grids) -> Result<HypothesisRow> {
    use Hypothesis::*;
    let name = h.name();
    let (gx, gy) = (s.model_x.generator(), s.model_y.generator());
    let (b1, b2) = (s.model_x.baseline1(), s.model_x.baseline2());
    let (n, ns) = (s.counts(), s.counts_star());
    let (lambda, mu) = (s.lambda(), s.mu());
    let row = match *h {
        SameGenerator => HypothesisRow::shape(name, check_same_generator(gx, gy, &g.gen_x)),
        SameBaseline(_) => HypothesisRow::shape(name, check_same_baseline(b1, b2, &g.both)),
        ScalesInCone(side, cone) => {
            let v = match side {
                Side::X => lambda,
                Side::Y => mu,
            };
            let holds = match cone {
                Cone::Increasing => in_increasing_cone(&v),
                Cone::Decreasing => in_decreasing_cone(&v),
            };
            HypothesisRow::flag(name, holds)
        }
        CountOrder(c) => HypothesisRow::flag(
            name,
            match c {
                Cmp::Leq => ns[0] <= ns[1],
                Cmp::Geq => ns[0] >= ns[1],
            },
        ),
        CountChain => HypothesisRow::flag(
            name,
            1 <= n[0] && n[0] <= ns[0] && ns[0] <= ns[1] && ns[1] <= n[1],
        ),
        CountsWeaklySubmajorize => {
            let to_f = |c: [usize; 2]| [c[0] as f64, c[1] as f64];
            HypothesisRow::flag(name, weakly_submajorizes(&to_f(n), &to_f(ns))?)
        }
        ScalesWeaklySupermajorize => HypothesisRow::flag(
            name,
            weakly_supermajorizes(&expanded(lambda, ns), &expanded(mu, ns))?,
        ),
        ScalesWeaklySubmajorize => HypothesisRow::flag(
            name,
            weakly_submajorizes(&expanded(lambda, ns), &expanded(mu, ns))?,
        ),
        LogScalesWeaklySubmajorize => {
            // Tail sums of equal length are shift invariant, so both vectors
            // are moved onto the nonnegative orthant together.
            let (m, v) = (s.model_x.log_scales(), s.model_y.log_scales());
            let shift = m.iter().chain(&v).fold(0f64, |acc, &a| acc.min(a));
            let m = [m[0] - shift, m[1] - shift];
            let v = [v[0] - shift, v[1] - shift];
            HypothesisRow::flag(name, weakly_submajorizes(&expanded(m, ns), &expanded(v, ns))?)
        }
        SuperAdditive => HypothesisRow::shape(name, check_super_additive(gy, gx, &g.gen_x)),
        LogConvexEither => {
            let [da, db] = h.disjunct_names().expect("disjunctive hypothesis");
            HypothesisRow::either(
                name,
                HypothesisRow::shape(da, gx.check_log_convex(&g.gen_x)),
                HypothesisRow::shape(db, gy.check_log_convex(&g.gen_y)),
            )
        }
        LogConvex => HypothesisRow::shape(name, gx.check_log_convex(&g.gen_x)),
        LogConcave => HypothesisRow::shape(name, gx.check_log_concave(&g.gen_x)),
        Generator(r, p) => HypothesisRow::shape(name, gx.check_ratio_shape(r, p, &g.gen_x)),
        Compare(q, c) => {
            let mode = match q {
                Quantity::Cdf => CompareMode::CdfLeq,
                Quantity::Hazard => CompareMode::HazardLeq,
                Quantity::RevHazard => CompareMode::RevHazardLeq,
            };
            let v = match c {
                Cmp::Leq => compare_hazards(b1, b2, mode, &g.both),
                Cmp::Geq => compare_hazards(b2, b1, mode, &g.both),
            };
            HypothesisRow::shape(name, v)
        }
        Shape(shape) => HypothesisRow::shape(name, b1.check_shape(shape, &g.base1)),
        ShapeEither(shape) => {
            let [da, db] = h.disjunct_names().expect("disjunctive hypothesis");
            HypothesisRow::either(
                name,
                HypothesisRow::shape(da, b1.check_shape(shape, &g.base1)),
                HypothesisRow::shape(db, b2.check_shape(shape, &g.base2)),
            )
        }
        ScaleRatio => {
            let spread = |v: [f64; 2]| v[0].max(v[1]) / v[0].min(v[1]);
            let (a, b) = (spread(lambda), spread(mu));
            HypothesisRow::flag(name, a >= b * (1.0 - 1e-12))
        }
    };
    Ok(row)
}

/// Every registered result for the scenario's extreme.
pub fn theorems_for(extreme: Extreme) -> impl Iterator<Item = &'static TheoremSpec> {
    THEOREMS.iter().filter(move |t| t.extreme == extreme)
}

/// Convenience for callers holding generator and baseline parts.
#[allow(clippy::too_many_arguments)]
pub fn scenario(
    extreme: Extreme,
    psi_x: Generator,
    psi_y: Generator,
    f1: Baseline,
    f2: Baseline,
    lambda: [f64; 2],
    mu: [f64; 2],
    counts_x: [usize; 2],
    counts_y: [usize; 2],
) -> Result<ComparisonScenario> {
    let x = MultipleOutlierModel::new(psi_x, f1.clone(), f2.clone(), lambda, counts_x, extreme)?;
    let y = MultipleOutlierModel::new(psi_y, f1, f2, mu, counts_y, extreme)?;
    ComparisonScenario::new(x, y, "")
}
