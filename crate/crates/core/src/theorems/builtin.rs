//! The six worked scenarios: four examples where a result applies and two
//! counterexamples where a hypothesis is dropped and the order breaks.

use crate::baselines::Baseline;
use crate::copula::Generator;
use crate::extremes::{Extreme, MultipleOutlierModel};
use crate::orders::{OrderStatus, Relation};

use super::ComparisonScenario;

/// Quantity plotted for a scenario.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigureKind {
    /// Columns `F_X`, `F_Y`.
    Cdfs,
    /// Column `F_X - F_Y`.
    CdfDifference,
    /// Column `F_X / F_Y`.
    CdfRatio,
    /// Column `SF_Y / SF_X`.
    SfRatio,
    /// Column `SF_X - SF_Y`.
    SfDifference,
    /// Columns `SF_X`, `SF_Y`.
    Sfs,
}

/// Qualitative behaviour the plotted curves should show.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Behaviour {
    /// `F_Y >= F_X` everywhere.
    CdfYAboveX,
    /// The plotted difference takes both signs.
    Crossing,
    /// The plotted ratio is nondecreasing.
    RatioIncreasing,
    /// The plotted difference is `<= 0` everywhere.
    NonPositive,
}

impl Behaviour {
    pub fn describe(self) -> &'static str {
        match self {
            Behaviour::CdfYAboveX => "F_Y >= F_X on the whole grid",
            Behaviour::Crossing => "the difference changes sign",
            Behaviour::RatioIncreasing => "the ratio is nondecreasing",
            Behaviour::NonPositive => "the difference is <= 0 on the whole grid",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FigureSpec {
    pub name: &'static str,
    pub kind: FigureKind,
    pub behaviour: Behaviour,
}

/// Expected outcome of the scenario's registered result.
#[derive(Debug, Clone, PartialEq)]
pub struct Expectation {
    /// Names of the rows (and disjunct rows) expected to FAIL.
    pub failing: &'static [&'static str],
    pub conclusion: OrderStatus,
}

#[derive(Debug, Clone)]
pub struct BuiltinScenario {
    pub id: &'static str,
    pub description: &'static str,
    pub theorem: &'static str,
    /// The order shown by the scenario's figure.
    pub relation: Relation,
    pub scenario: ComparisonScenario,
    pub expectation: Expectation,
    pub figure: FigureSpec,
}

pub const BUILTIN_IDS: [&str; 6] = ["ex_3_1", "ce_3_1", "ex_3_2", "ex_3_4", "ce_3_2", "ex_3_5"];

fn gumbel(theta: f64) -> Generator {
    Generator::gumbel_exp(theta).expect("valid theta")
}

fn log_exp(theta: f64) -> Generator {
    Generator::log_exp(theta).expect("valid theta")
}

#[allow(clippy::too_many_arguments)]
fn pair(
    extreme: Extreme,
    (psi_x, psi_y): (Generator, Generator),
    (f1, f2): (Baseline, Baseline),
    lambda: [f64; 2],
    mu: [f64; 2],
    counts_x: [usize; 2],
    counts_y: [usize; 2],
    note: &str,
) -> ComparisonScenario {
    let x = MultipleOutlierModel::new(psi_x, f1.clone(), f2.clone(), lambda, counts_x, extreme)
        .expect("valid builtin model");
    let y = MultipleOutlierModel::new(psi_y, f1, f2, mu, counts_y, extreme).expect("valid builtin model");
    ComparisonScenario::new(x, y, note).expect("valid builtin scenario")
}

pub fn builtin_scenarios() -> Vec<BuiltinScenario> {
    let power = |a, l| Baseline::power(a, l).expect("valid power baseline");
    let pareto = Baseline::pareto(5.0, 1.0).expect("valid pareto baseline");
    vec![
        BuiltinScenario {
            id: "ex_3_1",
            description: "maxima under Gumbel copulas, exponential and Kummer blocks",
            theorem: "MAX_ST_COMBINED",
            relation: Relation::St,
            scenario: pair(
                Extreme::Max,
                (gumbel(9.0), gumbel(10.0)),
                (Baseline::exponential(), Baseline::kummer()),
                [5.0, 2.0],
                [6.0, 3.0],
                [1, 11],
                [5, 6],
                "Y_{11:11}(5,6) <=_st X_{12:12}(1,11)",
            ),
            expectation: Expectation {
                failing: &[],
                conclusion: OrderStatus::Holds,
            },
            figure: FigureSpec {
                name: "fig1a",
                kind: FigureKind::Cdfs,
                behaviour: Behaviour::CdfYAboveX,
            },
        },
        BuiltinScenario {
            id: "ce_3_1",
            description: "maxima with increasing scales and a Lomax block, usual order lost",
            theorem: "MAX_ST_COMBINED",
            relation: Relation::St,
            scenario: pair(
                Extreme::Max,
                (gumbel(3.0), gumbel(10.0)),
                (Baseline::exponential(), Baseline::lomax_half()),
                [2.0, 6.0],
                [8.0, 2.0],
                [1, 8],
                [3, 4],
                "Y_{7:7}(3,4) not <=_st X_{9:9}(1,8)",
            ),
            expectation: Expectation {
                failing: &[
                    "lambda >=^w mu (multiplicities n*)",
                    "r~1 <= r~2",
                    "lambda in D+",
                ],
                conclusion: OrderStatus::Fails,
            },
            figure: FigureSpec {
                name: "fig1b",
                kind: FigureKind::CdfDifference,
                behaviour: Behaviour::Crossing,
            },
        },
        BuiltinScenario {
            id: "ex_3_2",
            description: "maxima under one log-exponential copula with Pareto blocks",
            theorem: "MAX_RH_COMBINED",
            relation: Relation::Rh,
            scenario: pair(
                Extreme::Max,
                (log_exp(0.2), log_exp(0.2)),
                (pareto.clone(), pareto),
                [3.0, 2.0],
                [6.0, 5.0],
                [2, 10],
                [3, 4],
                "Y_{7:7}(3,4) <=_rh X_{12:12}(2,10)",
            ),
            expectation: Expectation {
                failing: &[],
                conclusion: OrderStatus::Holds,
            },
            figure: FigureSpec {
                name: "fig2a",
                kind: FigureKind::CdfRatio,
                behaviour: Behaviour::RatioIncreasing,
            },
        },
        BuiltinScenario {
            id: "ex_3_4",
            description: "minima under Gumbel copulas, power and exponential blocks",
            theorem: "MIN_ST_COMBINED",
            relation: Relation::St,
            scenario: pair(
                Extreme::Min,
                (gumbel(9.0), gumbel(10.0)),
                (power(400.0, 2.0), Baseline::exponential()),
                [2.0, 6.0],
                [1.0, 3.0],
                [4, 8],
                [6, 7],
                "X_{1:12}(4,8) <=_st Y_{1:13}(6,7)",
            ),
            expectation: Expectation {
                failing: &["(n1,n2) >=_w (n1*,n2*)", "r1 <= r2"],
                conclusion: OrderStatus::Holds,
            },
            figure: FigureSpec {
                name: "fig3a",
                kind: FigureKind::SfDifference,
                behaviour: Behaviour::NonPositive,
            },
        },
        BuiltinScenario {
            id: "ce_3_2",
            description: "minima where r1 <= r2 and monotone hazards are dropped",
            theorem: "MIN_ST_COMBINED",
            relation: Relation::St,
            scenario: pair(
                Extreme::Min,
                (gumbel(4.5), gumbel(5.0)),
                (Baseline::exponential(), Baseline::lomax_half()),
                [1.2, 3.6],
                [1.4, 3.0],
                [2, 11],
                [3, 9],
                "X_{1:13}(2,11) not <=_st Y_{1:12}(3,9)",
            ),
            expectation: Expectation {
                failing: &["r1 <= r2", "r2 increasing"],
                conclusion: OrderStatus::Fails,
            },
            figure: FigureSpec {
                name: "fig3b",
                kind: FigureKind::Sfs,
                behaviour: Behaviour::Crossing,
            },
        },
        BuiltinScenario {
            id: "ex_3_5",
            description: "minima under one log-exponential copula with power blocks",
            theorem: "MIN_HR_COMBINED",
            relation: Relation::Hr,
            scenario: pair(
                Extreme::Min,
                (log_exp(0.99), log_exp(0.99)),
                (power(1000.0, 2.0), power(1000.0, 2.0)),
                [0.5f64.exp(), 0.6f64.exp()],
                [0.2f64.exp(), 0.3f64.exp()],
                [2, 11],
                [3, 7],
                "X_{1:13}(2,11) <=_hr Y_{1:10}(3,7)",
            ),
            expectation: Expectation {
                failing: &[],
                conclusion: OrderStatus::Holds,
            },
            figure: FigureSpec {
                name: "fig2b",
                kind: FigureKind::SfRatio,
                behaviour: Behaviour::RatioIncreasing,
            },
        },
    ]
}

/// Looks up a builtin scenario by id, ignoring case.
pub fn builtin_scenario(id: &str) -> Option<BuiltinScenario> {
    builtin_scenarios()
        .into_iter()
        .find(|b| b.id.eq_ignore_ascii_case(id))
}
