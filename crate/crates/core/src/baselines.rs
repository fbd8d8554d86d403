//! Scale-family baseline distributions `x -> F(lambda x)` and the shape and
//! comparison checks that theorem hypotheses impose on them.

use std::fmt;
use std::sync::Arc;

use crate::distribution::LifetimeDistribution;
use crate::error::{invalid, Error, Result};
use crate::numerics::{
    self, check_convex_with, check_monotone_with, find_root, integrate, Curvature, Direction,
    Grid, ShapeVerdict, Spacing, Witness, DEFAULT_SHAPE_SLACK,
};

/// Tail probability at which default baseline grids are cut.
pub const GRID_TAIL: f64 = 1e-4;

/// Tail level of [`Baseline::comparison_grid`]. Deeper than [`GRID_TAIL`]
/// since a scaled model probes its baselines further out than their own
/// bulk.
pub const COMPARISON_TAIL: f64 = 1e-12;

type CdfFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Clone)]
pub struct CustomCdf {
    name: String,
    cdf: CdfFn,
    lo: f64,
    hi: f64,
}

impl fmt::Debug for CustomCdf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CustomCdf")
            .field("name", &self.name)
            .field("lo", &self.lo)
            .field("hi", &self.hi)
            .finish()
    }
}

#[derive(Debug, Clone)]
pub enum BaselineFamily {
    /// `1 - e^{-x}`
    Exponential,
    /// `1 - exp(1 - (1 + x^2)^{1/5})`
    Kummer,
    /// `1 - (1 + 2x)^{-1/2}`
    LomaxHalf,
    /// `(x/a)^l` on `(0, a]`
    Power { a: f64, l: f64 },
    /// `1 - (x/b)^{-a}` on `[b, inf)`
    Pareto { a: f64, b: f64 },
    Custom(CustomCdf),
}

impl PartialEq for BaselineFamily {
    fn eq(&self, other: &Self) -> bool {
        use BaselineFamily::*;
        match (self, other) {
            (Exponential, Exponential) | (Kummer, Kummer) | (LomaxHalf, LomaxHalf) => true,
            (Power { a, l }, Power { a: a2, l: l2 }) => a == a2 && l == l2,
            (Pareto { a, b }, Pareto { a: a2, b: b2 }) => a == a2 && b == b2,
            (Custom(x), Custom(y)) => Arc::ptr_eq(&x.cdf, &y.cdf),
            _ => false,
        }
    }
}

impl fmt::Display for BaselineFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaselineFamily::Exponential => write!(f, "exponential"),
            BaselineFamily::Kummer => write!(f, "kummer"),
            BaselineFamily::LomaxHalf => write!(f, "lomax_half"),
            BaselineFamily::Power { a, l } => write!(f, "power(a={a}, l={l})"),
            BaselineFamily::Pareto { a, b } => write!(f, "pareto(a={a}, b={b})"),
            BaselineFamily::Custom(c) => write!(f, "custom({})", c.name),
        }
    }
}

/// Functionals of the hazard and reversed hazard constrained by hypotheses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaselineShape {
    RDecreasing,
    RIncreasing,
    RtDecreasing,
    XrDecreasing,
    XrConvex,
    XrtIncreasing,
    XrtConvex,
    /// `x r~'(x) / r~(x)` decreasing.
    ElasticityRtDecreasing,
    /// `x r'(x) / r(x)` decreasing.
    ElasticityRDecreasing,
    /// `x r(x)` decreasing, as required by the star-order statement for minima.
    XrDecreasingStar,
}

impl fmt::Display for BaselineShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BaselineShape::RDecreasing => "r decreasing",
            BaselineShape::RIncreasing => "r increasing",
            BaselineShape::RtDecreasing => "r~ decreasing",
            BaselineShape::XrDecreasing | BaselineShape::XrDecreasingStar => "x r(x) decreasing",
            BaselineShape::XrConvex => "x r(x) convex",
            BaselineShape::XrtIncreasing => "x r~(x) increasing",
            BaselineShape::XrtConvex => "x r~(x) convex",
            BaselineShape::ElasticityRtDecreasing => "x r~'(x)/r~(x) decreasing",
            BaselineShape::ElasticityRDecreasing => "x r'(x)/r(x) decreasing",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompareMode {
    /// `r1 <= r2`
    HazardLeq,
    /// `r~1 <= r~2`
    RevHazardLeq,
    /// `F1 <= F2`
    CdfLeq,
}

/// A baseline family together with a scale `lambda`, describing
/// `x -> F(lambda x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Baseline {
    family: BaselineFamily,
    scale: f64,
}

impl Baseline {
    pub fn exponential() -> Self {
        Baseline::unit(BaselineFamily::Exponential)
    }

    pub fn kummer() -> Self {
        Baseline::unit(BaselineFamily::Kummer)
    }

    pub fn lomax_half() -> Self {
        Baseline::unit(BaselineFamily::LomaxHalf)
    }

    pub fn power(a: f64, l: f64) -> Result<Self> {
        if !(a.is_finite() && a > 0.0 && l.is_finite() && l > 0.0) {
            return Err(invalid(format!("power needs a > 0 and l > 0, got a={a}, l={l}")));
        }
        Ok(Baseline::unit(BaselineFamily::Power { a, l }))
    }

    pub fn pareto(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && a > 0.0 && b.is_finite() && b > 0.0) {
            return Err(invalid(format!("pareto needs a > 0 and b > 0, got a={a}, b={b}")));
        }
        Ok(Baseline::unit(BaselineFamily::Pareto { a, b }))
    }

    /// A baseline given only by its CDF on `(lo, hi)`. The density is a
    /// numeric derivative and the quantile a bisection. The CDF is validated:
    /// nondecreasing, vanishing at `lo`, reaching one at `hi`, and the numeric
    /// density integrates to one.
    pub fn custom<F>(name: impl Into<String>, lo: f64, hi: f64, cdf: F) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        if !(lo >= 0.0 && hi > lo && !hi.is_nan()) {
            return Err(invalid(format!("custom support must satisfy 0 <= lo < hi, got ({lo}, {hi})")));
        }
        let b = Baseline::unit(BaselineFamily::Custom(CustomCdf {
            name: name.into(),
            cdf: Arc::new(cdf),
            lo,
            hi,
        }));
        b.validate()?;
        Ok(b)
    }

    fn unit(family: BaselineFamily) -> Self {
        Baseline { family, scale: 1.0 }
    }

    pub fn family(&self) -> &BaselineFamily {
        &self.family
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// The distribution of `X / lambda`: CDF `x -> F(lambda x)`.
    pub fn scaled(&self, lambda: f64) -> Result<Baseline> {
        if !(lambda.is_finite() && lambda > 0.0) {
            return Err(invalid(format!("scale must be > 0, got {lambda}")));
        }
        Ok(Baseline {
            family: self.family.clone(),
            scale: self.scale * lambda,
        })
    }

    /// The unscaled baseline.
    pub fn base(&self) -> Baseline {
        Baseline::unit(self.family.clone())
    }

    /// Support of the unscaled family.
    fn base_support(&self) -> (f64, f64) {
        match &self.family {
            BaselineFamily::Power { a, .. } => (0.0, *a),
            BaselineFamily::Pareto { b, .. } => (*b, f64::INFINITY),
            BaselineFamily::Custom(c) => (c.lo, c.hi),
            _ => (0.0, f64::INFINITY),
        }
    }

    /// `(F(t), 1 - F(t))` for the unscaled family, each without cancellation.
    fn base_cdf_sf(&self, t: f64) -> (f64, f64) {
        let (lo, hi) = self.base_support();
        if t <= lo {
            return (0.0, 1.0);
        }
        if t >= hi {
            return (1.0, 0.0);
        }
        match &self.family {
            BaselineFamily::Exponential => (-(-t).exp_m1(), (-t).exp()),
            BaselineFamily::Kummer => {
                let g = kummer_g(t);
                (-(-g).exp_m1(), (-g).exp())
            }
            BaselineFamily::LomaxHalf => {
                let ln_sf = -0.5 * (2.0 * t).ln_1p();
                (-ln_sf.exp_m1(), ln_sf.exp())
            }
            BaselineFamily::Power { a, l } => {
                let ln_cdf = l * (t / a).ln();
                (ln_cdf.exp(), -ln_cdf.exp_m1())
            }
            BaselineFamily::Pareto { a, b } => {
                let ln_sf = -a * (t / b).ln();
                (-ln_sf.exp_m1(), ln_sf.exp())
            }
            BaselineFamily::Custom(c) => {
                let v = (c.cdf)(t).clamp(0.0, 1.0);
                (v, 1.0 - v)
            }
        }
    }

    /// Density of the unscaled family.
    fn base_pdf(&self, t: f64) -> f64 {
        let (lo, hi) = self.base_support();
        if t < lo || t > hi {
            return 0.0;
        }
        match &self.family {
            BaselineFamily::Exponential => (-t).exp(),
            BaselineFamily::Kummer => {
                0.4 * t * (-0.8 * (t * t).ln_1p()).exp() * (-kummer_g(t)).exp()
            }
            BaselineFamily::LomaxHalf => (-1.5 * (2.0 * t).ln_1p()).exp(),
            BaselineFamily::Power { a, l } => {
                if t <= 0.0 {
                    return if *l < 1.0 { f64::INFINITY } else if *l == 1.0 { 1.0 / a } else { 0.0 };
                }
                l / a * ((l - 1.0) * (t / a).ln()).exp()
            }
            BaselineFamily::Pareto { a, b } => a / b * ((-a - 1.0) * (t / b).ln()).exp(),
            BaselineFamily::Custom(c) => {
                let f = |s: f64| (c.cdf)(s);
                let h = f64::max(1e-6, 1e-6 * t.abs());
                let d = if t - h <= c.lo {
                    (f(t + h) - f(t)) / h
                } else if t + h >= c.hi {
                    (f(t) - f(t - h)) / h
                } else {
                    numerics::derivative(f, t).unwrap_or(f64::NAN)
                };
                d.max(0.0)
            }
        }
    }

    /// Hazard of the unscaled family at an interior point.
    fn base_hazard(&self, t: f64) -> f64 {
        match &self.family {
            BaselineFamily::Exponential => 1.0,
            BaselineFamily::Kummer => 0.4 * t * (-0.8 * (t * t).ln_1p()).exp(),
            BaselineFamily::LomaxHalf => 1.0 / (1.0 + 2.0 * t),
            BaselineFamily::Power { a, l } => {
                let ln_cdf = l * (t / a).ln();
                l * ln_cdf.exp() / (t * -ln_cdf.exp_m1())
            }
            BaselineFamily::Pareto { a, .. } => a / t,
            BaselineFamily::Custom(_) => {
                let (_, sf) = self.base_cdf_sf(t);
                self.base_pdf(t) / sf
            }
        }
    }

    /// Odds `F / (1 - F)` of the unscaled family, without cancellation.
    fn base_odds(&self, t: f64) -> f64 {
        match &self.family {
            BaselineFamily::Exponential => t.exp_m1(),
            BaselineFamily::Kummer => kummer_g(t).exp_m1(),
            BaselineFamily::LomaxHalf => (0.5 * (2.0 * t).ln_1p()).exp_m1(),
            BaselineFamily::Pareto { a, b } => (a * (t / b).ln()).exp_m1(),
            _ => {
                let (c, s) = self.base_cdf_sf(t);
                c / s
            }
        }
    }

    fn base_rev_hazard(&self, t: f64) -> f64 {
        match &self.family {
            BaselineFamily::Power { l, .. } => l / t,
            BaselineFamily::Custom(_) => {
                let (c, _) = self.base_cdf_sf(t);
                self.base_pdf(t) / c
            }
            _ => self.base_hazard(t) / self.base_odds(t),
        }
    }

    fn base_quantile(&self, u: f64) -> Result<f64> {
        Ok(match &self.family {
            BaselineFamily::Exponential => -(-u).ln_1p(),
            BaselineFamily::Kummer => kummer_t_from_g(-(-u).ln_1p()),
            BaselineFamily::LomaxHalf => 0.5 * (-2.0 * (-u).ln_1p()).exp_m1(),
            BaselineFamily::Power { a, l } => a * (u.ln() / l).exp(),
            BaselineFamily::Pareto { a, b } => b * (-(-u).ln_1p() / a).exp(),
            BaselineFamily::Custom(_) => return self.custom_inverse(|t| self.base_cdf_sf(t).0 - u),
        })
    }

    fn base_quantile_sf(&self, q: f64) -> Result<f64> {
        Ok(match &self.family {
            BaselineFamily::Exponential => -q.ln(),
            BaselineFamily::Kummer => kummer_t_from_g(-q.ln()),
            BaselineFamily::LomaxHalf => 0.5 * (-2.0 * q.ln()).exp_m1(),
            BaselineFamily::Power { a, l } => a * ((-q).ln_1p() / l).exp(),
            BaselineFamily::Pareto { a, b } => b * (-q.ln() / a).exp(),
            BaselineFamily::Custom(_) => return self.custom_inverse(|t| q - self.base_cdf_sf(t).1),
        })
    }

    fn custom_inverse<F: Fn(f64) -> f64>(&self, g: F) -> Result<f64> {
        let (lo, hi) = self.base_support();
        let mut top = if hi.is_finite() { hi } else { lo.max(1.0) };
        while !hi.is_finite() && g(top) < 0.0 {
            top *= 2.0;
            if top > 1e300 {
                return Err(Error::Bracket { lo, hi: top });
            }
        }
        find_root(g, lo, top)
    }

    /// Checks that the CDF runs from 0 to 1 across the support without
    /// decreasing and that the density integrates to it.
    pub fn validate(&self) -> Result<()> {
        let name = self.family.to_string();
        let (lo, hi) = self.support();
        let (c_lo, _) = self.base_cdf_sf(lo + 1e-12 * lo.max(1.0));
        if c_lo > 1e-6 {
            return Err(invalid(format!("{name}: F(lo+) = {c_lo}, expected 0")));
        }
        let top = if hi.is_finite() { hi * (1.0 - 1e-15) } else { 1e300 };
        let (c_hi, _) = self.base_cdf_sf(top);
        if (1.0 - c_hi) > 1e-9 {
            return Err(invalid(format!("{name}: F(hi-) = {c_hi}, expected 1")));
        }
        let q_lo = self.base_quantile(1e-9)?;
        let q_hi = self.base_quantile(1.0 - 1e-7)?;
        let knots = Grid::new(q_lo.max(1e-300), q_hi, 40, Spacing::Log)?;
        let mut prev = -1.0;
        let mut mass = 0.0;
        for w in knots.points().windows(2) {
            let c = self.base_cdf_sf(w[0]).0;
            if c < prev - 1e-12 {
                return Err(invalid(format!("{name}: F decreases near {}", w[0])));
            }
            prev = c;
            mass += integrate(|t| self.base_pdf(t), w[0], w[1])?;
        }
        let want = self.base_cdf_sf(q_hi).0 - self.base_cdf_sf(q_lo).0;
        if (mass - want).abs() > 1e-6 {
            return Err(invalid(format!("{name}: density integrates to {mass}, expected {want}")));
        }
        Ok(())
    }

    /// Default grid for hypotheses about this baseline alone: 2000 log points
    /// between its `1e-4` and `1 - 1e-4` quantiles.
    pub fn default_grid(&self, count: usize) -> Result<Grid> {
        let lo = self.quantile(GRID_TAIL)?;
        let hi = self.quantile_sf(GRID_TAIL)?;
        Grid::new(lo, hi, count, Spacing::Log)
    }

    /// `x r(x)` or `x r~(x)` as a closure.
    fn functional(&self, which: BaselineShape) -> Box<dyn Fn(f64) -> f64 + '_> {
        let r = move |x: f64| self.hazard(x).unwrap_or(f64::NAN);
        let rt = move |x: f64| self.rev_hazard(x).unwrap_or(f64::NAN);
        match which {
            BaselineShape::RDecreasing | BaselineShape::RIncreasing => Box::new(r),
            BaselineShape::RtDecreasing => Box::new(rt),
            BaselineShape::XrDecreasing | BaselineShape::XrConvex | BaselineShape::XrDecreasingStar => {
                Box::new(move |x| x * r(x))
            }
            BaselineShape::XrtIncreasing | BaselineShape::XrtConvex => Box::new(move |x| x * rt(x)),
            BaselineShape::ElasticityRtDecreasing => Box::new(move |x| {
                x * numerics::derivative(|t| rt(t).ln(), x).unwrap_or(f64::NAN)
            }),
            BaselineShape::ElasticityRDecreasing => Box::new(move |x| {
                x * numerics::derivative(|t| r(t).ln(), x).unwrap_or(f64::NAN)
            }),
        }
    }

    pub fn check_shape(&self, which: BaselineShape, grid: &Grid) -> ShapeVerdict {
        self.check_shape_with(which, grid, DEFAULT_SHAPE_SLACK)
    }

    pub fn check_shape_with(&self, which: BaselineShape, grid: &Grid, slack: f64) -> ShapeVerdict {
        let f = self.functional(which);
        use BaselineShape::*;
        match which {
            RDecreasing | RtDecreasing | XrDecreasing | XrDecreasingStar
            | ElasticityRtDecreasing | ElasticityRDecreasing => {
                check_monotone_with(f, grid, Direction::Decreasing, slack)
            }
            RIncreasing | XrtIncreasing => check_monotone_with(f, grid, Direction::Increasing, slack),
            XrConvex | XrtConvex => check_convex_with(f, grid, Curvature::Convex, slack),
        }
    }

    /// Default grid for a two-baseline comparison: the union of both quantile
    /// ranges, clipped to the union of the supports.
    pub fn comparison_grid(b1: &Baseline, b2: &Baseline, count: usize) -> Result<Grid> {
        let lo = b1.quantile(COMPARISON_TAIL)?.min(b2.quantile(COMPARISON_TAIL)?);
        let hi = b1.quantile_sf(COMPARISON_TAIL)?.max(b2.quantile_sf(COMPARISON_TAIL)?);
        let (l1, h1) = b1.support();
        let (l2, h2) = b2.support();
        let (slo, shi) = (l1.min(l2), h1.max(h2));
        let lo = if lo <= slo { slo + 1e-9 * slo.max(1e-3) } else { lo };
        let hi = if hi >= shi { shi * (1.0 - 1e-9) } else { hi };
        Grid::new(lo, hi, count, Spacing::Log)
    }
}

fn kummer_g(t: f64) -> f64 {
    (0.2 * (t * t).ln_1p()).exp_m1()
}

/// Inverse of `kummer_g`: `t = sqrt((1 + g)^5 - 1)`.
fn kummer_t_from_g(g: f64) -> f64 {
    (5.0 * g.ln_1p()).exp_m1().sqrt()
}

impl LifetimeDistribution for Baseline {
    fn support(&self) -> (f64, f64) {
        let (lo, hi) = self.base_support();
        (lo / self.scale, hi / self.scale)
    }

    fn cdf(&self, x: f64) -> f64 {
        self.base_cdf_sf(self.scale * x).0
    }

    fn sf(&self, x: f64) -> f64 {
        self.base_cdf_sf(self.scale * x).1
    }

    fn pdf(&self, x: f64) -> f64 {
        self.scale * self.base_pdf(self.scale * x)
    }

    fn hazard(&self, x: f64) -> Result<f64> {
        let t = self.scale * x;
        let (lo, hi) = self.base_support();
        if !(t > lo && t < hi) {
            return Err(Error::Evaluation { what: "hazard", x });
        }
        let r = self.scale * self.base_hazard(t);
        if r.is_finite() {
            Ok(r)
        } else {
            Err(Error::Evaluation { what: "hazard", x })
        }
    }

    fn rev_hazard(&self, x: f64) -> Result<f64> {
        let t = self.scale * x;
        let (lo, hi) = self.base_support();
        if !(t > lo && t < hi) {
            return Err(Error::Evaluation {
                what: "reversed hazard",
                x,
            });
        }
        let r = self.scale * self.base_rev_hazard(t);
        if r.is_finite() {
            Ok(r)
        } else {
            Err(Error::Evaluation {
                what: "reversed hazard",
                x,
            })
        }
    }

    fn quantile(&self, u: f64) -> Result<f64> {
        if !(u > 0.0 && u < 1.0) {
            return Err(invalid(format!("quantile level must lie in (0, 1), got {u}")));
        }
        let (lo, hi) = self.base_support();
        Ok(self.base_quantile(u)?.clamp(lo, hi) / self.scale)
    }

    fn quantile_sf(&self, q: f64) -> Result<f64> {
        if !(q > 0.0 && q < 1.0) {
            return Err(invalid(format!("tail probability must lie in (0, 1), got {q}")));
        }
        let (lo, hi) = self.base_support();
        Ok(self.base_quantile_sf(q)?.clamp(lo, hi) / self.scale)
    }
}

/// Pointwise comparison of two baselines on a grid.
pub fn compare_hazards(b1: &Baseline, b2: &Baseline, mode: CompareMode, grid: &Grid) -> ShapeVerdict {
    compare_hazards_with(b1, b2, mode, grid, DEFAULT_SHAPE_SLACK)
}

pub fn compare_hazards_with(
    b1: &Baseline,
    b2: &Baseline,
    mode: CompareMode,
    grid: &Grid,
    slack: f64,
) -> ShapeVerdict {
    if b1 == b2 {
        return ShapeVerdict::finish(0.0, None, slack, 0, grid.len(), grid.len());
    }
    let mut margin = f64::INFINITY;
    let mut witness = None;
    let mut excluded = 0;
    for &x in grid.points() {
        // Where one baseline has no mass its rate is read as infinite: a
        // violation if it is the side that must be smaller, vacuous otherwise.
        let void = match mode {
            CompareMode::HazardLeq => Some((b1.sf(x) == 0.0, b2.sf(x) == 0.0)),
            CompareMode::RevHazardLeq => Some((b1.cdf(x) == 0.0, b2.cdf(x) == 0.0)),
            CompareMode::CdfLeq => None,
        };
        if let Some((v1, v2)) = void {
            if v1 && !v2 {
                if -1.0 < margin {
                    margin = -1.0;
                    witness.get_or_insert(Witness::Point(x));
                }
                continue;
            }
            if v2 {
                continue;
            }
        }
        let pair = match mode {
            CompareMode::HazardLeq => b1.hazard(x).and_then(|a| Ok((a, b2.hazard(x)?))),
            CompareMode::RevHazardLeq => b1.rev_hazard(x).and_then(|a| Ok((a, b2.rev_hazard(x)?))),
            CompareMode::CdfLeq => Ok((b1.cdf(x), b2.cdf(x))),
        };
        let (a, b) = match pair {
            Ok((a, b)) if a.is_finite() && b.is_finite() => (a, b),
            _ => {
                excluded += 1;
                continue;
            }
        };
        // Rates compare relatively; probabilities absolutely.
        let scale = match mode {
            CompareMode::CdfLeq => 1.0,
            _ => a.abs().max(b.abs()).max(f64::MIN_POSITIVE),
        };
        let m = (b - a) / scale;
        if m < margin {
            margin = m;
            if m < -slack && witness.is_none() {
                witness = Some(Witness::Point(x));
            }
        }
    }
    ShapeVerdict::finish(margin, witness, slack, excluded, grid.len(), grid.len() - excluded)
}

/// Pointwise identity of two baselines, compared through the CDF.
pub fn check_same_baseline(b1: &Baseline, b2: &Baseline, grid: &Grid) -> ShapeVerdict {
    if b1 == b2 {
        return ShapeVerdict::finish(0.0, None, DEFAULT_SHAPE_SLACK, 0, grid.len(), grid.len());
    }
    let le = compare_hazards(b1, b2, CompareMode::CdfLeq, grid);
    let ge = compare_hazards(b2, b1, CompareMode::CdfLeq, grid);
    if le.failed() || !ge.failed() {
        le
    } else {
        ge
    }
}
