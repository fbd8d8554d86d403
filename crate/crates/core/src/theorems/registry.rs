//! The hypothesis lists of every comparison result, as data.

use crate::baselines::BaselineShape;
use crate::copula::{RatioShape, ShapeProperty};
use crate::extremes::Extreme;
use crate::orders::Relation;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    X,
    Y,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cone {
    /// `E+`
    Increasing,
    /// `D+`
    Decreasing,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cmp {
    Leq,
    Geq,
}

impl Cmp {
    pub fn symbol(self) -> &'static str {
        match self {
            Cmp::Leq => "<=",
            Cmp::Geq => ">=",
        }
    }
}

/// Baseline functional named in a comparison or identity hypothesis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    Cdf,
    Hazard,
    RevHazard,
}

impl Quantity {
    pub fn symbol(self) -> &'static str {
        match self {
            Quantity::Cdf => "F",
            Quantity::Hazard => "r",
            Quantity::RevHazard => "r~",
        }
    }
}

/// One machine-checkable hypothesis.
///
/// Generator hypotheses without a side refer to the generator of the `X`
/// sample; baseline shape hypotheses without an index refer to `F1`.
/// Vector relations on scales use the multiplicities `n*`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Hypothesis {
    SameGenerator,
    SameBaseline(Quantity),
    ScalesInCone(Side, Cone),
    /// `n1*` against `n2*`.
    CountOrder(Cmp),
    /// `1 <= n1 <= n1* <= n2* <= n2`.
    CountChain,
    /// `(n1, n2) >=_w (n1*, n2*)`.
    CountsWeaklySubmajorize,
    /// Expanded `lambda >=^w mu`.
    ScalesWeaklySupermajorize,
    /// Expanded `lambda >=_w mu`.
    ScalesWeaklySubmajorize,
    /// Expanded `ln lambda >=_w ln mu`.
    LogScalesWeaklySubmajorize,
    /// `phi2 o psi1` super-additive.
    SuperAdditive,
    /// `psi1` or `psi2` log-convex.
    LogConvexEither,
    LogConvex,
    LogConcave,
    Generator(RatioShape, ShapeProperty),
    /// Quantity of `F1` against that of `F2`.
    Compare(Quantity, Cmp),
    Shape(BaselineShape),
    /// The shape holds for `F1` or for `F2`.
    ShapeEither(BaselineShape),
    /// `lambda_{2:2} / lambda_{1:2} >= mu_{2:2} / mu_{1:2}`.
    ScaleRatio,
}

fn ratio_name(r: RatioShape) -> &'static str {
    match r {
        RatioShape::PsiOverDpsi => "psi/psi'",
        RatioShape::OneMinusPsiOverDpsi => "(1-psi)/psi'",
        RatioShape::ProductRuleTerm => "(1-psi)/psi' * [(1-psi)/psi']'",
        RatioShape::RatioOfDerivatives => "[(1-psi)/psi']' / (psi/psi')",
    }
}

fn property_name(p: ShapeProperty) -> &'static str {
    match p {
        ShapeProperty::Decreasing => "decreasing",
        ShapeProperty::Increasing => "increasing",
        ShapeProperty::Convex => "convex",
    }
}

/// `(symbol, property)` of a single-rate monotonicity shape, used to
/// index the two disjuncts of [`Hypothesis::ShapeEither`].
fn indexed_shape(s: BaselineShape) -> (&'static str, &'static str) {
    match s {
        BaselineShape::RDecreasing => ("r", "decreasing"),
        BaselineShape::RIncreasing => ("r", "increasing"),
        BaselineShape::RtDecreasing => ("r~", "decreasing"),
        BaselineShape::XrDecreasing | BaselineShape::XrDecreasingStar => ("x r", "decreasing"),
        BaselineShape::XrConvex => ("x r", "convex"),
        BaselineShape::XrtIncreasing => ("x r~", "increasing"),
        BaselineShape::XrtConvex => ("x r~", "convex"),
        BaselineShape::ElasticityRtDecreasing => ("x r~'/r~", "decreasing"),
        BaselineShape::ElasticityRDecreasing => ("x r'/r", "decreasing"),
    }
}

impl Hypothesis {
    pub fn name(&self) -> String {
        use Hypothesis::*;
        match *self {
            SameGenerator => "psi1 = psi2".into(),
            SameBaseline(q) => format!("{0}1 = {0}2", q.symbol()),
            ScalesInCone(side, cone) => format!(
                "{} in {}",
                match side {
                    Side::X => "lambda",
                    Side::Y => "mu",
                },
                match cone {
                    Cone::Increasing => "E+",
                    Cone::Decreasing => "D+",
                }
            ),
            CountOrder(c) => format!("n1* {} n2*", c.symbol()),
            CountChain => "1 <= n1 <= n1* <= n2* <= n2".into(),
            CountsWeaklySubmajorize => "(n1,n2) >=_w (n1*,n2*)".into(),
            ScalesWeaklySupermajorize => "lambda >=^w mu (multiplicities n*)".into(),
            ScalesWeaklySubmajorize => "lambda >=_w mu (multiplicities n*)".into(),
            LogScalesWeaklySubmajorize => "ln lambda >=_w ln mu (multiplicities n*)".into(),
            SuperAdditive => "phi2 o psi1 super-additive".into(),
            LogConvexEither => "psi1 or psi2 log-convex".into(),
            LogConvex => "psi log-convex".into(),
            LogConcave => "psi log-concave".into(),
            Generator(r, p) => format!("{} {}", ratio_name(r), property_name(p)),
            Compare(q, c) => format!("{0}1 {1} {0}2", q.symbol(), c.symbol()),
            Shape(s) => s.to_string(),
            ShapeEither(s) => {
                let (sym, prop) = indexed_shape(s);
                format!("{sym}1 or {sym}2 {prop}")
            }
            ScaleRatio => "lambda2:2/lambda1:2 >= mu2:2/mu1:2".into(),
        }
    }

    /// Names of the two disjuncts of a disjunctive hypothesis.
    pub fn disjunct_names(&self) -> Option<[String; 2]> {
        match *self {
            Hypothesis::LogConvexEither => {
                Some(["psi1 log-convex".into(), "psi2 log-convex".into()])
            }
            Hypothesis::ShapeEither(s) => {
                let (sym, prop) = indexed_shape(s);
                Some([format!("{sym}1 {prop}"), format!("{sym}2 {prop}")])
            }
            _ => None,
        }
    }
}

/// Which two order statistics a conclusion compares, as `A <= B`.
///
/// `X_n` is the `X` model with counts `n`, `X_{n*}` the same model with the
/// counts `n*` of `Y`, and `Y` the `Y` model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pair {
    YLeXStar,
    XStarLeX,
    YLeX,
    XStarLeY,
    XLeXStar,
    XLeY,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Operand {
    Xn,
    XStar,
    Y,
}

impl Pair {
    pub fn operands(self) -> (Operand, Operand) {
        use Operand::*;
        match self {
            Pair::YLeXStar => (Y, XStar),
            Pair::XStarLeX => (XStar, Xn),
            Pair::YLeX => (Y, Xn),
            Pair::XStarLeY => (XStar, Y),
            Pair::XLeXStar => (Xn, XStar),
            Pair::XLeY => (Xn, Y),
        }
    }
}

/// A registered comparison result.
#[derive(Debug, Clone, Copy)]
pub struct TheoremSpec {
    pub id: &'static str,
    pub extreme: Extreme,
    pub relation: Relation,
    pub pair: Pair,
    pub summary: &'static str,
    pub hypotheses: &'static [Hypothesis],
}

use BaselineShape as B;
use Hypothesis::*;
use RatioShape as R;
use ShapeProperty as P;

const A_DEC: Hypothesis = Generator(R::OneMinusPsiOverDpsi, P::Decreasing);
const PRODUCT_INC: Hypothesis = Generator(R::ProductRuleTerm, P::Increasing);
const DERIV_RATIO_INC: Hypothesis = Generator(R::RatioOfDerivatives, P::Increasing);
const PSI_RATIO_DEC: Hypothesis = Generator(R::PsiOverDpsi, P::Decreasing);
const PSI_RATIO_CONVEX: Hypothesis = Generator(R::PsiOverDpsi, P::Convex);

const fn cones(c: Cone) -> [Hypothesis; 2] {
    [ScalesInCone(Side::X, c), ScalesInCone(Side::Y, c)]
}

const INC: [Hypothesis; 2] = cones(Cone::Increasing);
const DEC: [Hypothesis; 2] = cones(Cone::Decreasing);

pub static THEOREMS: &[TheoremSpec] = &[
    TheoremSpec {
        id: "MAX_ST_SAME_N_INC",
        extreme: Extreme::Max,
        relation: Relation::St,
        pair: Pair::YLeXStar,
        summary: "maxima, equal counts, increasing scales, different generators",
        hypotheses: &[
            ScalesWeaklySupermajorize,
            Compare(Quantity::RevHazard, Cmp::Geq),
            CountOrder(Cmp::Geq),
            INC[0],
            INC[1],
            SuperAdditive,
            LogConvexEither,
            ShapeEither(B::RtDecreasing),
        ],
    },
    TheoremSpec {
        id: "MAX_ST_SAME_N_DEC",
        extreme: Extreme::Max,
        relation: Relation::St,
        pair: Pair::YLeXStar,
        summary: "maxima, equal counts, decreasing scales, different generators",
        hypotheses: &[
            ScalesWeaklySupermajorize,
            Compare(Quantity::RevHazard, Cmp::Leq),
            CountOrder(Cmp::Leq),
            DEC[0],
            DEC[1],
            SuperAdditive,
            LogConvexEither,
            ShapeEither(B::RtDecreasing),
        ],
    },
    TheoremSpec {
        id: "MAX_ST_SAMPLE_SIZES",
        extreme: Extreme::Max,
        relation: Relation::St,
        pair: Pair::XStarLeX,
        summary: "maxima, one model, counts n against n*",
        hypotheses: &[
            CountChain,
            CountsWeaklySubmajorize,
            ScalesInCone(Side::X, Cone::Decreasing),
            Compare(Quantity::Cdf, Cmp::Geq),
        ],
    },
    TheoremSpec {
        id: "MAX_ST_SAMPLE_SIZES_COR",
        extreme: Extreme::Max,
        relation: Relation::St,
        pair: Pair::XStarLeX,
        summary: "maxima, one model and one baseline, counts n against n*",
        hypotheses: &[
            CountChain,
            CountsWeaklySubmajorize,
            ScalesInCone(Side::X, Cone::Decreasing),
            SameBaseline(Quantity::Cdf),
        ],
    },
    TheoremSpec {
        id: "MAX_ST_COMBINED",
        extreme: Extreme::Max,
        relation: Relation::St,
        pair: Pair::YLeX,
        summary: "maxima, different counts, scales and generators",
        hypotheses: &[
            CountChain,
            CountsWeaklySubmajorize,
            ScalesWeaklySupermajorize,
            Compare(Quantity::RevHazard, Cmp::Leq),
            DEC[0],
            DEC[1],
            SuperAdditive,
            LogConvexEither,
            ShapeEither(B::RtDecreasing),
        ],
    },
    TheoremSpec {
        id: "MAX_ST_COMBINED_COR",
        extreme: Extreme::Max,
        relation: Relation::St,
        pair: Pair::YLeX,
        summary: "maxima, different counts and scales, one log-convex generator",
        hypotheses: &[
            CountChain,
            CountsWeaklySubmajorize,
            ScalesWeaklySupermajorize,
            SameGenerator,
            LogConvex,
            Compare(Quantity::RevHazard, Cmp::Leq),
            DEC[0],
            DEC[1],
            ShapeEither(B::RtDecreasing),
        ],
    },
    TheoremSpec {
        id: "MAX_RH_SAME_N_INC",
        extreme: Extreme::Max,
        relation: Relation::Rh,
        pair: Pair::YLeXStar,
        summary: "maxima, equal counts, increasing scales, one generator and baseline",
        hypotheses: &[
            SameGenerator,
            SameBaseline(Quantity::Hazard),
            CountOrder(Cmp::Geq),
            INC[0],
            INC[1],
            LogConcave,
            A_DEC,
            PRODUCT_INC,
            Shape(B::RDecreasing),
            Shape(B::XrDecreasing),
            Shape(B::XrConvex),
            ScalesWeaklySupermajorize,
        ],
    },
    TheoremSpec {
        id: "MAX_RH_SAME_N_DEC",
        extreme: Extreme::Max,
        relation: Relation::Rh,
        pair: Pair::YLeXStar,
        summary: "maxima, equal counts, decreasing scales, one generator and baseline",
        hypotheses: &[
            SameGenerator,
            SameBaseline(Quantity::Hazard),
            CountOrder(Cmp::Leq),
            DEC[0],
            DEC[1],
            LogConcave,
            A_DEC,
            PRODUCT_INC,
            Shape(B::RDecreasing),
            Shape(B::XrDecreasing),
            Shape(B::XrConvex),
            ScalesWeaklySupermajorize,
        ],
    },
    TheoremSpec {
        id: "MAX_RH_SAMPLE_SIZES",
        extreme: Extreme::Max,
        relation: Relation::Rh,
        pair: Pair::XStarLeX,
        summary: "maxima, one model and one baseline, counts n against n*",
        hypotheses: &[
            SameBaseline(Quantity::Hazard),
            CountChain,
            CountsWeaklySubmajorize,
            ScalesInCone(Side::X, Cone::Decreasing),
            LogConcave,
            A_DEC,
            Shape(B::XrDecreasing),
        ],
    },
    TheoremSpec {
        id: "MAX_RH_COMBINED",
        extreme: Extreme::Max,
        relation: Relation::Rh,
        pair: Pair::YLeX,
        summary: "maxima, different counts and scales, one generator and baseline",
        hypotheses: &[
            SameGenerator,
            SameBaseline(Quantity::Hazard),
            CountChain,
            CountsWeaklySubmajorize,
            DEC[0],
            DEC[1],
            LogConcave,
            A_DEC,
            PRODUCT_INC,
            Shape(B::XrDecreasing),
            Shape(B::XrConvex),
            Shape(B::RDecreasing),
            ScalesWeaklySupermajorize,
        ],
    },
    TheoremSpec {
        id: "MAX_STAR",
        extreme: Extreme::Max,
        relation: Relation::Star,
        pair: Pair::YLeXStar,
        summary: "maxima, equal counts, one generator and baseline, star order",
        hypotheses: &[
            SameGenerator,
            SameBaseline(Quantity::RevHazard),
            ScaleRatio,
            PSI_RATIO_DEC,
            PSI_RATIO_CONVEX,
            Shape(B::ElasticityRtDecreasing),
            Shape(B::XrtIncreasing),
        ],
    },
    TheoremSpec {
        id: "MAX_LORENZ",
        extreme: Extreme::Max,
        relation: Relation::Lorenz,
        pair: Pair::YLeXStar,
        summary: "maxima, equal counts, one generator and baseline, Lorenz order",
        hypotheses: &[
            SameGenerator,
            SameBaseline(Quantity::RevHazard),
            ScaleRatio,
            PSI_RATIO_DEC,
            PSI_RATIO_CONVEX,
            Shape(B::ElasticityRtDecreasing),
            Shape(B::XrtIncreasing),
        ],
    },
    TheoremSpec {
        id: "MIN_ST_SAME_N_INC",
        extreme: Extreme::Min,
        relation: Relation::St,
        pair: Pair::XStarLeY,
        summary: "minima, equal counts, increasing scales, different generators",
        hypotheses: &[
            ScalesWeaklySubmajorize,
            Compare(Quantity::Hazard, Cmp::Leq),
            CountOrder(Cmp::Leq),
            INC[0],
            INC[1],
            SuperAdditive,
            LogConvexEither,
            ShapeEither(B::RIncreasing),
        ],
    },
    TheoremSpec {
        id: "MIN_ST_SAME_N_DEC",
        extreme: Extreme::Min,
        relation: Relation::St,
        pair: Pair::XStarLeY,
        summary: "minima, equal counts, decreasing scales, different generators",
        hypotheses: &[
            ScalesWeaklySubmajorize,
            Compare(Quantity::Hazard, Cmp::Geq),
            CountOrder(Cmp::Geq),
            DEC[0],
            DEC[1],
            SuperAdditive,
            LogConvexEither,
            ShapeEither(B::RIncreasing),
        ],
    },
    TheoremSpec {
        id: "MIN_ST_SAMPLE_SIZES",
        extreme: Extreme::Min,
        relation: Relation::St,
        pair: Pair::XLeXStar,
        summary: "minima, one model, counts n against n*",
        hypotheses: &[
            CountChain,
            CountsWeaklySubmajorize,
            ScalesInCone(Side::X, Cone::Increasing),
            Compare(Quantity::Cdf, Cmp::Leq),
        ],
    },
    TheoremSpec {
        id: "MIN_ST_SAMPLE_SIZES_COR",
        extreme: Extreme::Min,
        relation: Relation::St,
        pair: Pair::XLeXStar,
        summary: "minima, one model and one baseline, counts n against n*",
        hypotheses: &[
            CountChain,
            CountsWeaklySubmajorize,
            ScalesInCone(Side::X, Cone::Increasing),
            SameBaseline(Quantity::Cdf),
        ],
    },
    TheoremSpec {
        id: "MIN_ST_COMBINED",
        extreme: Extreme::Min,
        relation: Relation::St,
        pair: Pair::XLeY,
        summary: "minima, different counts, scales and generators",
        hypotheses: &[
            CountChain,
            CountsWeaklySubmajorize,
            ScalesWeaklySubmajorize,
            Compare(Quantity::Hazard, Cmp::Leq),
            INC[0],
            INC[1],
            SuperAdditive,
            LogConvexEither,
            ShapeEither(B::RIncreasing),
        ],
    },
    TheoremSpec {
        id: "MIN_ST_COMBINED_COR",
        extreme: Extreme::Min,
        relation: Relation::St,
        pair: Pair::XLeY,
        summary: "minima, different counts and scales, one log-convex generator",
        hypotheses: &[
            CountChain,
            CountsWeaklySubmajorize,
            ScalesWeaklySubmajorize,
            SameGenerator,
            LogConvex,
            Compare(Quantity::Hazard, Cmp::Leq),
            INC[0],
            INC[1],
            ShapeEither(B::RIncreasing),
        ],
    },
    TheoremSpec {
        id: "MIN_HR_SAME_N_INC",
        extreme: Extreme::Min,
        relation: Relation::Hr,
        pair: Pair::XStarLeY,
        summary: "minima, equal counts, increasing scales, one generator and baseline",
        hypotheses: &[
            SameGenerator,
            SameBaseline(Quantity::Cdf),
            CountOrder(Cmp::Leq),
            INC[0],
            INC[1],
            LogConcave,
            A_DEC,
            DERIV_RATIO_INC,
            LogScalesWeaklySubmajorize,
            Shape(B::RIncreasing),
            Shape(B::XrtIncreasing),
            Shape(B::XrtConvex),
        ],
    },
    TheoremSpec {
        id: "MIN_HR_SAME_N_DEC",
        extreme: Extreme::Min,
        relation: Relation::Hr,
        pair: Pair::XStarLeY,
        summary: "minima, equal counts, decreasing scales, one generator and baseline",
        hypotheses: &[
            SameGenerator,
            SameBaseline(Quantity::Cdf),
            CountOrder(Cmp::Geq),
            DEC[0],
            DEC[1],
            LogConcave,
            A_DEC,
            DERIV_RATIO_INC,
            LogScalesWeaklySubmajorize,
            Shape(B::RIncreasing),
            Shape(B::XrtIncreasing),
            Shape(B::XrtConvex),
        ],
    },
    TheoremSpec {
        id: "MIN_HR_SAMPLE_SIZES",
        extreme: Extreme::Min,
        relation: Relation::Hr,
        pair: Pair::XLeXStar,
        summary: "minima, one model and one baseline, counts n against n*",
        hypotheses: &[
            SameBaseline(Quantity::RevHazard),
            CountChain,
            CountsWeaklySubmajorize,
            ScalesInCone(Side::X, Cone::Increasing),
            Shape(B::XrtIncreasing),
            LogConcave,
            A_DEC,
        ],
    },
    TheoremSpec {
        id: "MIN_HR_COMBINED",
        extreme: Extreme::Min,
        relation: Relation::Hr,
        pair: Pair::XLeY,
        summary: "minima, different counts and scales, one generator and baseline",
        hypotheses: &[
            SameGenerator,
            SameBaseline(Quantity::Hazard),
            CountChain,
            CountsWeaklySubmajorize,
            INC[0],
            INC[1],
            LogScalesWeaklySubmajorize,
            LogConcave,
            A_DEC,
            DERIV_RATIO_INC,
            Shape(B::RIncreasing),
            Shape(B::XrtIncreasing),
            Shape(B::XrtConvex),
        ],
    },
    TheoremSpec {
        id: "MIN_STAR",
        extreme: Extreme::Min,
        relation: Relation::Star,
        pair: Pair::YLeXStar,
        summary: "minima, equal counts, one generator and baseline, star order",
        hypotheses: &[
            SameGenerator,
            SameBaseline(Quantity::RevHazard),
            ScaleRatio,
            PSI_RATIO_DEC,
            PSI_RATIO_CONVEX,
            Shape(B::ElasticityRDecreasing),
            Shape(B::XrDecreasingStar),
        ],
    },
    TheoremSpec {
        id: "MIN_LORENZ",
        extreme: Extreme::Min,
        relation: Relation::Lorenz,
        pair: Pair::YLeXStar,
        summary: "minima, equal counts, one generator and baseline, Lorenz order",
        hypotheses: &[
            SameGenerator,
            SameBaseline(Quantity::RevHazard),
            ScaleRatio,
            PSI_RATIO_DEC,
            PSI_RATIO_CONVEX,
            Shape(B::ElasticityRDecreasing),
            Shape(B::XrDecreasingStar),
        ],
    },
];

/// Ids whose statement covers both cones; they resolve to `_INC` or `_DEC`
/// by the cone of `lambda`.
pub const DUAL_IDS: &[&str] = &[
    "MAX_ST_SAME_N",
    "MAX_RH_SAME_N",
    "MIN_ST_SAME_N",
    "MIN_HR_SAME_N",
];

pub fn lookup(id: &str) -> Option<&'static TheoremSpec> {
    THEOREMS.iter().find(|t| t.id.eq_ignore_ascii_case(id))
}

/// All registered ids, in registry order.
pub fn theorem_ids() -> Vec<&'static str> {
    THEOREMS.iter().map(|t| t.id).collect()
}
