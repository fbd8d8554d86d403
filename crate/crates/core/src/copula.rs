//! Archimedean generators.
//!
//! Every named family is evaluated through `l(w) = ln psi(w)` and its first
//! two derivatives. Working on the log scale keeps compositions such as
//! `psi(n1 phi(u1) + n2 phi(u2))` accurate when the probabilities involved are
//! within a few ulps of 0 or 1, which is exactly where stochastic-order
//! comparisons are decided.

use std::fmt;
use std::sync::Arc;

use crate::error::{invalid, Error, Result};
use crate::numerics::{
    self, check_convex_with, check_monotone_with, find_root_with, Curvature, Direction, Grid,
    RootOptions, ShapeVerdict, Spacing, Status, Witness, DEFAULT_SHAPE_SLACK,
};

/// Smallest probability accepted by `phi`; anything below raises `Error::Cap`.
pub const U_MIN: f64 = 1e-300;

/// Side length of the pair grid used by the super-additivity check.
const SUPERADDITIVE_SIDE: usize = 64;

type PsiFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A user-supplied generator known only through `psi`.
#[derive(Clone)]
pub struct CustomPsi {
    name: String,
    psi: PsiFn,
}

impl fmt::Debug for CustomPsi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CustomPsi").field("name", &self.name).finish()
    }
}

#[derive(Debug, Clone)]
pub enum Family {
    /// `psi(x) = exp(-x^(1/theta))`, theta >= 1.
    GumbelExp { theta: f64 },
    /// `psi(x) = exp((1 - e^x) / theta)`, theta > 0.
    LogExp { theta: f64 },
    /// `psi(x) = exp(-x)`.
    Independence,
    Custom(CustomPsi),
}

impl PartialEq for Family {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Family::GumbelExp { theta: a }, Family::GumbelExp { theta: b }) => a == b,
            (Family::LogExp { theta: a }, Family::LogExp { theta: b }) => a == b,
            (Family::Independence, Family::Independence) => true,
            (Family::Custom(a), Family::Custom(b)) => Arc::ptr_eq(&a.psi, &b.psi),
            _ => false,
        }
    }
}

/// Composite functions of a generator whose shape some hypotheses constrain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RatioShape {
    /// `psi / psi'`
    PsiOverDpsi,
    /// `(1 - psi) / psi'`
    OneMinusPsiOverDpsi,
    /// `[(1 - psi)/psi'] * [(1 - psi)/psi']'`
    ProductRuleTerm,
    /// `[(1 - psi)/psi']' / (psi / psi')`
    RatioOfDerivatives,
}

impl fmt::Display for RatioShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RatioShape::PsiOverDpsi => "psi/psi'",
            RatioShape::OneMinusPsiOverDpsi => "(1-psi)/psi'",
            RatioShape::ProductRuleTerm => "(1-psi)/psi' * [(1-psi)/psi']'",
            RatioShape::RatioOfDerivatives => "[(1-psi)/psi']' / (psi/psi')",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShapeProperty {
    Decreasing,
    Increasing,
    Convex,
}

impl fmt::Display for ShapeProperty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ShapeProperty::Decreasing => "decreasing",
            ShapeProperty::Increasing => "increasing",
            ShapeProperty::Convex => "convex",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Generator {
    family: Family,
}

impl Generator {
    pub fn gumbel_exp(theta: f64) -> Result<Self> {
        if !(theta.is_finite() && theta >= 1.0) {
            return Err(invalid(format!("gumbel_exp needs theta >= 1, got {theta}")));
        }
        Ok(Generator {
            family: Family::GumbelExp { theta },
        })
    }

    pub fn log_exp(theta: f64) -> Result<Self> {
        if !(theta.is_finite() && theta > 0.0) {
            return Err(invalid(format!("log_exp needs theta > 0, got {theta}")));
        }
        Ok(Generator {
            family: Family::LogExp { theta },
        })
    }

    pub fn independence() -> Self {
        Generator {
            family: Family::Independence,
        }
    }

    /// Wraps a user-supplied `psi`. The inverse and derivatives are numeric.
    /// `psi` is spot-checked on a validation grid: `psi(0) = 1`, values in
    /// `[0, 1]`, nonincreasing.
    pub fn custom<F>(name: impl Into<String>, psi: F) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        let g = Generator {
            family: Family::Custom(CustomPsi {
                name: name.into(),
                psi: Arc::new(psi),
            }),
        };
        g.validate()?;
        Ok(g)
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    /// Parameter of the named families, `None` otherwise.
    pub fn theta(&self) -> Option<f64> {
        match self.family {
            Family::GumbelExp { theta } | Family::LogExp { theta } => Some(theta),
            _ => None,
        }
    }

    pub fn name(&self) -> String {
        match &self.family {
            Family::GumbelExp { theta } => format!("gumbel_exp({theta})"),
            Family::LogExp { theta } => format!("log_exp({theta})"),
            Family::Independence => "independence".to_string(),
            Family::Custom(c) => format!("custom({})", c.name),
        }
    }

    /// `psi(x)`; arguments below 0 are treated as 0.
    pub fn psi(&self, x: f64) -> f64 {
        match &self.family {
            Family::Custom(c) => (c.psi)(x.max(0.0)),
            _ => self.ln_psi(x).exp(),
        }
    }

    /// `1 - psi(x)` without cancellation.
    pub fn psi_complement(&self, x: f64) -> f64 {
        match &self.family {
            Family::Custom(c) => 1.0 - (c.psi)(x.max(0.0)),
            _ => -self.ln_psi(x).exp_m1(),
        }
    }

    /// `ln psi(x)`.
    pub fn ln_psi(&self, x: f64) -> f64 {
        let x = x.max(0.0);
        match &self.family {
            Family::GumbelExp { theta } => -x.powf(1.0 / theta),
            Family::LogExp { theta } => -x.exp_m1() / theta,
            Family::Independence => -x,
            Family::Custom(c) => (c.psi)(x).ln(),
        }
    }

    /// `d/dx ln psi(x) = psi'(x)/psi(x)`.
    pub fn dln_psi(&self, x: f64) -> f64 {
        match &self.family {
            Family::GumbelExp { theta } => {
                let a = 1.0 / theta;
                -a * x.powf(a - 1.0)
            }
            Family::LogExp { theta } => -x.exp() / theta,
            Family::Independence => -1.0,
            Family::Custom(_) => {
                let l = |t: f64| self.ln_psi(t);
                one_sided_safe(|t| numerics::derivative(l, t), x)
            }
        }
    }

    /// `d^2/dx^2 ln psi(x)`.
    pub fn d2ln_psi(&self, x: f64) -> f64 {
        match &self.family {
            Family::GumbelExp { theta } => {
                let a = 1.0 / theta;
                -a * (a - 1.0) * x.powf(a - 2.0)
            }
            Family::LogExp { theta } => -x.exp() / theta,
            Family::Independence => 0.0,
            Family::Custom(_) => {
                let l = |t: f64| self.ln_psi(t);
                one_sided_safe(|t| numerics::second_derivative(l, t), x)
            }
        }
    }

    /// `psi'(x)`, analytic for named families.
    pub fn psi_prime(&self, x: f64) -> f64 {
        match &self.family {
            Family::Custom(c) => {
                let p = |t: f64| (c.psi)(t.max(0.0));
                one_sided_safe(|t| numerics::derivative(p, t), x)
            }
            _ => self.psi(x) * self.dln_psi(x),
        }
    }

    /// `psi''(x)`, analytic for named families.
    pub fn psi_second(&self, x: f64) -> f64 {
        match &self.family {
            Family::Custom(c) => {
                let p = |t: f64| (c.psi)(t.max(0.0));
                one_sided_safe(|t| numerics::second_derivative(p, t), x)
            }
            _ => {
                let d = self.dln_psi(x);
                self.psi(x) * (self.d2ln_psi(x) + d * d)
            }
        }
    }

    /// `phi(u)`, the inverse of `psi`. `phi(1) = 0` exactly.
    pub fn phi(&self, u: f64) -> Result<f64> {
        if u.is_nan() || u > 1.0 {
            return Err(invalid(format!("phi argument must lie in (0, 1], got {u}")));
        }
        if u <= U_MIN {
            return Err(Error::Cap { u });
        }
        if u == 1.0 {
            return Ok(0.0);
        }
        self.phi_from_ln(u.ln())
    }

    /// `phi(1 - q)` computed from `q` directly, so that probabilities close to
    /// one keep their precision.
    pub fn phi_complement(&self, q: f64) -> Result<f64> {
        if q.is_nan() || q < 0.0 {
            return Err(invalid(format!("complement must lie in [0, 1), got {q}")));
        }
        if 1.0 - q <= U_MIN {
            return Err(Error::Cap { u: 1.0 - q });
        }
        if q == 0.0 {
            return Ok(0.0);
        }
        self.phi_from_ln((-q).ln_1p())
    }

    /// `phi(e^l)` for a log-probability `l <= 0`.
    pub fn phi_from_ln(&self, l: f64) -> Result<f64> {
        if l.is_nan() || l > 0.0 {
            return Err(invalid(format!("log-probability must be <= 0, got {l}")));
        }
        if l <= U_MIN.ln() {
            return Err(Error::Cap { u: l.exp() });
        }
        if l == 0.0 {
            return Ok(0.0);
        }
        Ok(match &self.family {
            Family::GumbelExp { theta } => (-l).powf(*theta),
            Family::LogExp { theta } => (-theta * l).ln_1p(),
            Family::Independence => -l,
            Family::Custom(_) => return self.custom_phi(l),
        })
    }

    fn custom_phi(&self, l: f64) -> Result<f64> {
        let target = |x: f64| self.ln_psi(x) - l;
        let mut hi = 1.0;
        while target(hi) > 0.0 {
            hi *= 2.0;
            if hi > 1e300 {
                return Err(Error::Cap { u: l.exp() });
            }
        }
        find_root_with(
            target,
            0.0,
            hi,
            RootOptions {
                ftol: 1e-15 * l.abs(),
                ..RootOptions::default()
            },
        )
    }

    /// Default generator-domain grid: log spacing between `phi(1 - 1e-8)`
    /// and `phi(1e-16)`, the range the constructions visit in practice.
    pub fn default_grid(&self, count: usize) -> Result<Grid> {
        let lo = self.phi_complement(1e-8)?.max(1e-280);
        let hi = self.phi(1e-16)?;
        Grid::new(lo, hi, count, Spacing::Log)
    }

    pub fn check_log_convex(&self, grid: &Grid) -> ShapeVerdict {
        check_convex_with(|w| self.ln_psi(w), grid, Curvature::Convex, DEFAULT_SHAPE_SLACK)
    }

    pub fn check_log_concave(&self, grid: &Grid) -> ShapeVerdict {
        check_convex_with(|w| self.ln_psi(w), grid, Curvature::Concave, DEFAULT_SHAPE_SLACK)
    }

    /// Evaluates one of the composite generator functions at `w`.
    pub fn ratio(&self, which: RatioShape, w: f64) -> f64 {
        let l = self.ln_psi(w);
        let d1 = self.dln_psi(w);
        let a = (-l).exp_m1() / d1;
        let a_prime = || -(-l).exp() - (-l).exp_m1() * self.d2ln_psi(w) / (d1 * d1);
        match which {
            RatioShape::PsiOverDpsi => 1.0 / d1,
            RatioShape::OneMinusPsiOverDpsi => a,
            RatioShape::ProductRuleTerm => a * a_prime(),
            RatioShape::RatioOfDerivatives => a_prime() * d1,
        }
    }

    pub fn check_ratio_shape(
        &self,
        which: RatioShape,
        property: ShapeProperty,
        grid: &Grid,
    ) -> ShapeVerdict {
        let f = |w: f64| self.ratio(which, w);
        match property {
            ShapeProperty::Decreasing => {
                check_monotone_with(f, grid, Direction::Decreasing, DEFAULT_SHAPE_SLACK)
            }
            ShapeProperty::Increasing => {
                check_monotone_with(f, grid, Direction::Increasing, DEFAULT_SHAPE_SLACK)
            }
            ShapeProperty::Convex => {
                check_convex_with(f, grid, Curvature::Convex, DEFAULT_SHAPE_SLACK)
            }
        }
    }

    /// Advisory d-monotonicity spot-check for `d` in 2..=4. Returns a
    /// description of the first violated derivative sign, if any.
    pub fn d_monotone_advisory(&self, d: usize, grid: &Grid) -> Option<String> {
        let psi = |x: f64| self.psi(x);
        let dpsi = |x: f64| self.psi_prime(x);
        let ddpsi = |x: f64| self.psi_second(x);
        let mut checks: Vec<(&str, ShapeVerdict)> = vec![
            ("psi nonincreasing", check_monotone_with(psi, grid, Direction::Decreasing, 1e-8)),
            ("psi convex", check_convex_with(psi, grid, Curvature::Convex, 1e-8)),
        ];
        if d >= 3 {
            checks.push((
                "-psi' convex",
                check_convex_with(|x| -dpsi(x), grid, Curvature::Convex, 1e-8),
            ));
        }
        if d >= 4 {
            checks.push((
                "psi'' nonincreasing",
                check_monotone_with(ddpsi, grid, Direction::Decreasing, 1e-8),
            ));
            checks.push((
                "psi'' convex",
                check_convex_with(ddpsi, grid, Curvature::Convex, 1e-8),
            ));
        }
        checks
            .into_iter()
            .find(|(_, v)| v.failed())
            .map(|(name, v)| match v.witness {
                Some(w) => format!("{} is not {d}-monotone: {name} fails at {w}", self.name()),
                None => format!("{} is not {d}-monotone: {name} fails", self.name()),
            })
    }

    fn validate(&self) -> Result<()> {
        let p0 = self.psi(0.0);
        if (p0 - 1.0).abs() > 1e-12 {
            return Err(invalid(format!("{}: psi(0) = {p0}, expected 1", self.name())));
        }
        let grid = Grid::new(1e-6, 1e3, 400, Spacing::Log)?;
        let mut prev = p0;
        for &x in grid.points() {
            let p = self.psi(x);
            if !(0.0..=1.0).contains(&p) {
                return Err(invalid(format!("{}: psi({x}) = {p} outside [0, 1]", self.name())));
            }
            if p > prev + 1e-12 {
                return Err(invalid(format!("{}: psi increases near {x}", self.name())));
            }
            prev = p;
        }
        Ok(())
    }
}

/// Evaluates a finite-difference quantity, retrying one step to the right when
/// the stencil touches the boundary at 0.
fn one_sided_safe<F: Fn(f64) -> Result<f64>>(f: F, x: f64) -> f64 {
    let h = f64::max(1e-6, 1e-6 * x.abs());
    let at = if x - h < 0.0 { h } else { x };
    f(at).unwrap_or(f64::NAN)
}

/// Checks `f(x) + f(y) <= f(x + y)` on a pair grid, with
/// `f = outer.phi o inner.psi`. Pairs whose evaluation hits the cap are
/// excluded.
pub fn check_super_additive(outer: &Generator, inner: &Generator, grid: &Grid) -> ShapeVerdict {
    check_super_additive_with(outer, inner, grid, DEFAULT_SHAPE_SLACK)
}

pub fn check_super_additive_with(
    outer: &Generator,
    inner: &Generator,
    grid: &Grid,
    slack: f64,
) -> ShapeVerdict {
    let f = |t: f64| outer.phi_from_ln(inner.ln_psi(t)).unwrap_or(f64::NAN);
    let sub = grid.subsample(SUPERADDITIVE_SIDE);
    let pts = sub.points();
    let values: Vec<f64> = pts.iter().map(|&t| f(t)).collect();
    let mut margin = f64::INFINITY;
    let mut witness = None;
    let mut excluded = 0;
    let mut total = 0;
    for (i, &x) in pts.iter().enumerate() {
        for (j, &y) in pts.iter().enumerate().skip(i) {
            total += 1;
            let (fx, fy, fxy) = (values[i], values[j], f(x + y));
            if !(fx.is_finite() && fy.is_finite() && fxy.is_finite()) {
                excluded += 1;
                continue;
            }
            let m = (fxy - fx - fy) / 1f64.max(fxy.abs());
            if m < margin {
                margin = m;
                if m < -slack && witness.is_none() {
                    witness = Some(Witness::Pair(x, y));
                }
            }
        }
    }
    ShapeVerdict::finish(margin, witness, slack, excluded, total, total - excluded)
}

/// Pointwise identity of two generators on a grid, compared through `ln psi`.
pub fn check_same_generator(a: &Generator, b: &Generator, grid: &Grid) -> ShapeVerdict {
    if a == b {
        return ShapeVerdict {
            status: Status::Pass,
            witness: None,
            excluded: 0,
            margin: 0.0,
        };
    }
    let slack = DEFAULT_SHAPE_SLACK;
    let mut margin = f64::INFINITY;
    let mut witness = None;
    let mut excluded = 0;
    for &w in grid.points() {
        let (la, lb) = (a.ln_psi(w), b.ln_psi(w));
        if !(la.is_finite() && lb.is_finite()) {
            excluded += 1;
            continue;
        }
        let m = -(la - lb).abs() / 1f64.max(la.abs()).max(lb.abs());
        if m < margin {
            margin = m;
            if m < -slack && witness.is_none() {
                witness = Some(Witness::Point(w));
            }
        }
    }
    ShapeVerdict::finish(
        margin,
        witness,
        slack,
        excluded,
        grid.len(),
        grid.len() - excluded,
    )
}
