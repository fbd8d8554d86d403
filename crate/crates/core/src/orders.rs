//! Numeric verdicts for the usual stochastic, hazard rate, reversed hazard
//! rate, star and Lorenz orders between two lifetime distributions.
//!
//! Every check reads `A <= B` in the named order. Rate orders are decided
//! twice, pointwise on the rates and through monotonicity of the matching
//! probability ratio; the verdict is inconclusive when the two disagree.

use std::fmt;

use rayon::prelude::*;

use crate::baselines::{COMPARISON_TAIL, GRID_TAIL};
use crate::distribution::LifetimeDistribution;
use crate::error::{invalid, Error, Result};
use crate::numerics::{
    integrate_with, monotone_verdict, Direction, Grid, QuadOptions, ShapeVerdict, Spacing, Status,
    DEFAULT_SHAPE_SLACK, MAX_EXCLUDED_FRACTION,
};

/// Absolute slack on probabilities and Lorenz curves.
pub const PROB_SLACK: f64 = 1e-8;
/// Relative slack on hazard and reversed hazard rates.
pub const RATE_SLACK: f64 = 1e-6;
/// Default number of points in order grids.
pub const DEFAULT_GRID_POINTS: usize = 2000;
/// Default number of points in Lorenz grids.
pub const DEFAULT_LORENZ_POINTS: usize = 201;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    St,
    Hr,
    Rh,
    Star,
    Lorenz,
}

impl Relation {
    pub const ALL: [Relation; 5] = [
        Relation::St,
        Relation::Hr,
        Relation::Rh,
        Relation::Star,
        Relation::Lorenz,
    ];

    pub fn symbol(self) -> &'static str {
        match self {
            Relation::St => "<=_st",
            Relation::Hr => "<=_hr",
            Relation::Rh => "<=_rh",
            Relation::Star => "<=_*",
            Relation::Lorenz => "<=_Lorenz",
        }
    }

    /// Whether the relation is checked on a probability grid rather than
    /// an `x` grid.
    pub fn uses_probability_grid(self) -> bool {
        matches!(self, Relation::Star | Relation::Lorenz)
    }

    pub fn default_slack(self) -> f64 {
        match self {
            Relation::Hr | Relation::Rh => RATE_SLACK,
            Relation::Star => DEFAULT_SHAPE_SLACK,
            Relation::St | Relation::Lorenz => PROB_SLACK,
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::St => "st",
            Relation::Hr => "hr",
            Relation::Rh => "rh",
            Relation::Star => "star",
            Relation::Lorenz => "lorenz",
        })
    }
}

impl std::str::FromStr for Relation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "st" => Ok(Relation::St),
            "hr" => Ok(Relation::Hr),
            "rh" => Ok(Relation::Rh),
            "star" | "*" => Ok(Relation::Star),
            "lorenz" => Ok(Relation::Lorenz),
            other => Err(invalid(format!(
                "relation must be one of st, hr, rh, star, lorenz; got `{other}`"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderStatus {
    Holds,
    Fails,
    Inconclusive,
}

impl fmt::Display for OrderStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrderStatus::Holds => "HOLDS",
            OrderStatus::Fails => "FAILS",
            OrderStatus::Inconclusive => "INCONCLUSIVE",
        })
    }
}

/// Outcome of one order check.
///
/// `margin` is the smallest signed slack of the defining inequality over the
/// grid, in the units named by `slack` (absolute for probabilities and
/// Lorenz curves, relative for rates, normalised log differences for the
/// star order). `witness` is an `x`, or a `u` for star and Lorenz, where the
/// inequality is violated beyond `slack`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrderVerdict {
    pub relation: Relation,
    pub status: OrderStatus,
    pub witness: Option<f64>,
    pub margin: f64,
    pub excluded: usize,
    pub slack: f64,
    /// Status of the ratio-monotonicity cross-check for rate orders.
    pub cross_check: Option<Status>,
    pub note: Option<String>,
}

impl OrderVerdict {
    pub fn holds(&self) -> bool {
        self.status == OrderStatus::Holds
    }

    pub fn fails(&self) -> bool {
        self.status == OrderStatus::Fails
    }

    /// HOLDS with margin above `factor * slack`.
    pub fn holds_with_margin(&self, factor: f64) -> bool {
        self.holds() && self.margin > factor * self.slack
    }

    /// One machine-readable line.
    pub fn summary_line(&self) -> String {
        let witness = self
            .witness
            .map_or_else(|| "none".to_string(), |w| format!("{w:.9e}"));
        let cross = self
            .cross_check
            .map_or_else(|| "none".to_string(), |c| c.to_string());
        format!(
            "relation={} status={} witness={} margin={:.6e} slack={:.1e} excluded={} cross_check={}",
            self.relation, self.status, witness, self.margin, self.slack, self.excluded, cross
        )
    }

    fn inconclusive(relation: Relation, slack: f64, excluded: usize, note: String) -> Self {
        OrderVerdict {
            relation,
            status: OrderStatus::Inconclusive,
            witness: None,
            margin: f64::NAN,
            excluded,
            slack,
            cross_check: None,
            note: Some(note),
        }
    }
}

impl fmt::Display for OrderVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.summary_line())
    }
}

/// Minimum of `margins` with the first point beyond `-slack` as witness.
fn pointwise(
    relation: Relation,
    samples: &[(f64, Option<f64>)],
    slack: f64,
) -> OrderVerdict {
    let mut margin = f64::INFINITY;
    let mut witness = None;
    let mut worst = f64::INFINITY;
    let mut excluded = 0;
    let mut usable = 0;
    for &(x, m) in samples {
        match m {
            Some(m) if m.is_finite() => {
                usable += 1;
                margin = margin.min(m);
                if m < -slack && m < worst {
                    worst = m;
                    witness = Some(x);
                }
            }
            _ => excluded += 1,
        }
    }
    let status = if witness.is_some() {
        OrderStatus::Fails
    } else if usable < 3 || excluded as f64 > MAX_EXCLUDED_FRACTION * samples.len() as f64 {
        OrderStatus::Inconclusive
    } else {
        OrderStatus::Holds
    };
    OrderVerdict {
        relation,
        status,
        witness,
        margin,
        excluded,
        slack,
        cross_check: None,
        note: None,
    }
}

/// `[min q(1e-12), max q(1 - 1e-12)]` over both distributions, clipped to the
/// union of the supports, with `count` log-spaced points.
pub fn default_x_grid(
    a: &dyn LifetimeDistribution,
    b: &dyn LifetimeDistribution,
    count: usize,
) -> Result<Grid> {
    let lo = a.quantile(COMPARISON_TAIL)?.min(b.quantile(COMPARISON_TAIL)?);
    let hi = a.quantile_sf(COMPARISON_TAIL)?.max(b.quantile_sf(COMPARISON_TAIL)?);
    let (la, ha) = a.support();
    let (lb, hb) = b.support();
    let (slo, shi) = (la.min(lb), ha.max(hb));
    let lo = if lo <= slo { slo + 1e-9 * slo.max(1e-3) } else { lo };
    let hi = if hi >= shi { shi * (1.0 - 1e-9) } else { hi };
    Grid::new(lo, hi, count, Spacing::Log)
}

/// Linear probability grid on `[1e-4, 1 - 1e-4]`.
pub fn default_u_grid(count: usize) -> Result<Grid> {
    Grid::new(GRID_TAIL, 1.0 - GRID_TAIL, count, Spacing::Linear)
}

/// [`default_u_grid`] extended into both tails down to `1e-12`, eight
/// points per decade.
pub fn tail_u_grid(count: usize) -> Result<Grid> {
    let inner = default_u_grid(count)?;
    let decades: Vec<f64> = (33..=96).map(|k| 10f64.powf(-(k as f64) / 8.0)).collect();
    let mut points: Vec<f64> = decades.iter().rev().copied().collect();
    points.extend_from_slice(inner.points());
    points.extend(decades.iter().map(|p| 1.0 - p));
    Grid::from_points(points, Spacing::Linear)
}

/// `A <=_st B`: `sf_A(x) <= sf_B(x) + slack` on the grid.
pub fn check_st(a: &dyn LifetimeDistribution, b: &dyn LifetimeDistribution, grid: &Grid) -> OrderVerdict {
    check_st_with(a, b, grid, PROB_SLACK)
}

pub fn check_st_with(
    a: &dyn LifetimeDistribution,
    b: &dyn LifetimeDistribution,
    grid: &Grid,
    slack: f64,
) -> OrderVerdict {
    let samples: Vec<(f64, Option<f64>)> = grid
        .points()
        .par_iter()
        .map(|&x| {
            // Whichever of cdf and sf is smaller carries full precision.
            let (sa, sb) = (a.sf(x), b.sf(x));
            let d = if sa.max(sb) > 0.5 { a.cdf(x) - b.cdf(x) } else { sb - sa };
            (x, Some(d))
        })
        .collect();
    pointwise(Relation::St, &samples, slack)
}

#[derive(Clone, Copy)]
enum Rate {
    Hazard,
    Reversed,
}

fn check_rate(
    relation: Relation,
    rate: Rate,
    a: &dyn LifetimeDistribution,
    b: &dyn LifetimeDistribution,
    grid: &Grid,
    slack: f64,
) -> OrderVerdict {
    // Where one side carries no mass the ratio is 0 or infinite. A ratio
    // that starts at 0 (rh) or ends at infinity (hr) is still increasing;
    // the other two cases break the order outright.
    let rows: Vec<(f64, Option<f64>, Option<f64>)> = grid
        .points()
        .par_iter()
        .filter_map(|&x| {
            let (ra, rb, la, lb) = match rate {
                Rate::Hazard => (a.hazard(x), b.hazard(x), a.ln_sf(x), b.ln_sf(x)),
                Rate::Reversed => (a.rev_hazard(x), b.rev_hazard(x), a.ln_cdf(x), b.ln_cdf(x)),
            };
            let (a_void, b_void) = (la == f64::NEG_INFINITY, lb == f64::NEG_INFINITY);
            if a_void || b_void {
                let broken = match rate {
                    Rate::Hazard => b_void && !a_void,
                    Rate::Reversed => a_void && !b_void,
                };
                return broken.then_some((x, Some(-1.0), None));
            }
            let m = match (ra, rb) {
                (Ok(ra), Ok(rb)) if ra.is_finite() && rb.is_finite() => {
                    let scale = ra.abs().max(rb.abs()).max(f64::MIN_POSITIVE);
                    Some(match rate {
                        // r_A >= r_B
                        Rate::Hazard => (ra - rb) / scale,
                        // r~_A <= r~_B
                        Rate::Reversed => (rb - ra) / scale,
                    })
                }
                _ => None,
            };
            let ratio = lb - la;
            Some((x, m, ratio.is_finite().then_some(ratio)))
        })
        .collect();
    let samples: Vec<(f64, Option<f64>)> = rows.iter().map(|&(x, m, _)| (x, m)).collect();
    let mut verdict = pointwise(relation, &samples, slack);

    let broken = rows.iter().filter(|&&(_, _, r)| r.is_none()).count();
    let ratio_pts: Vec<(f64, f64)> = rows.iter().filter_map(|&(x, _, r)| r.map(|r| (x, r))).collect();
    let mut cross: ShapeVerdict = monotone_verdict(
        &ratio_pts,
        0,
        rows.len(),
        Direction::Increasing,
        DEFAULT_SHAPE_SLACK,
    );
    if broken > 0 {
        cross.status = Status::Fail;
    }
    verdict.cross_check = Some(cross.status);
    let agree = matches!(
        (verdict.status, cross.status),
        (OrderStatus::Holds, Status::Pass) | (OrderStatus::Fails, Status::Fail)
    );
    if !agree && verdict.status != OrderStatus::Inconclusive {
        let what = match rate {
            Rate::Hazard => "survival",
            Rate::Reversed => "distribution function",
        };
        verdict.note = Some(format!(
            "pointwise rates say {} but the {what} ratio check says {}",
            verdict.status, cross.status
        ));
        verdict.status = OrderStatus::Inconclusive;
        verdict.witness = None;
    }
    verdict
}

/// `A <=_hr B`: `r_A(x) >= r_B(x)` up to relative slack, cross-checked by
/// `sf_B / sf_A` increasing.
pub fn check_hr(a: &dyn LifetimeDistribution, b: &dyn LifetimeDistribution, grid: &Grid) -> OrderVerdict {
    check_hr_with(a, b, grid, RATE_SLACK)
}

pub fn check_hr_with(
    a: &dyn LifetimeDistribution,
    b: &dyn LifetimeDistribution,
    grid: &Grid,
    slack: f64,
) -> OrderVerdict {
    check_rate(Relation::Hr, Rate::Hazard, a, b, grid, slack)
}

/// `A <=_rh B`: `r~_A(x) <= r~_B(x)` up to relative slack, cross-checked by
/// `F_B / F_A` increasing.
pub fn check_rh(a: &dyn LifetimeDistribution, b: &dyn LifetimeDistribution, grid: &Grid) -> OrderVerdict {
    check_rh_with(a, b, grid, RATE_SLACK)
}

pub fn check_rh_with(
    a: &dyn LifetimeDistribution,
    b: &dyn LifetimeDistribution,
    grid: &Grid,
    slack: f64,
) -> OrderVerdict {
    check_rate(Relation::Rh, Rate::Reversed, a, b, grid, slack)
}

fn quantiles(d: &dyn LifetimeDistribution, us: &[f64]) -> Vec<Option<f64>> {
    us.par_iter()
        .map(|&u| d.quantile(u).ok().filter(|q| q.is_finite() && *q > 0.0))
        .collect()
}

/// `A <=_*` B: `q_B(u) / q_A(u)` increasing in `u`.
pub fn check_star(a: &dyn LifetimeDistribution, b: &dyn LifetimeDistribution, grid_u: &Grid) -> OrderVerdict {
    check_star_with(a, b, grid_u, DEFAULT_SHAPE_SLACK)
}

pub fn check_star_with(
    a: &dyn LifetimeDistribution,
    b: &dyn LifetimeDistribution,
    grid_u: &Grid,
    slack: f64,
) -> OrderVerdict {
    let (qa, qb) = (quantiles(a, grid_u.points()), quantiles(b, grid_u.points()));
    let pts: Vec<(f64, f64)> = grid_u
        .points()
        .iter()
        .zip(qa.iter().zip(&qb))
        .filter_map(|(&u, (qa, qb))| Some((u, qb.as_ref()?.ln() - qa.as_ref()?.ln())))
        .collect();
    let excluded = grid_u.len() - pts.len();
    let v = monotone_verdict(&pts, excluded, grid_u.len(), Direction::Increasing, slack);
    let status = match v.status {
        Status::Pass => OrderStatus::Holds,
        Status::Fail => OrderStatus::Fails,
        Status::Inconclusive => OrderStatus::Inconclusive,
    };
    OrderVerdict {
        relation: Relation::Star,
        status,
        witness: v.witness.map(|w| match w {
            crate::numerics::Witness::Point(u) | crate::numerics::Witness::Pair(u, _) => u,
        }),
        margin: v.margin,
        excluded,
        slack,
        cross_check: None,
        note: None,
    }
}

const LORENZ_QUAD: QuadOptions = QuadOptions {
    abs_tol: 1e-13,
    rel_tol: 1e-11,
    max_depth: 40,
};

/// `int_0^u q(t) dt` through `t = u e^{-y}`, which removes the singular
/// behaviour of `q` at zero.
fn head_integral(d: &dyn LifetimeDistribution, u: f64) -> Result<f64> {
    let g = |y: f64| {
        let t = u * (-y).exp();
        d.quantile(t).map_or(f64::NAN, |q| q * t)
    };
    let mut total = 0.0;
    let mut y0 = 0.0;
    while y0 < 64.0 {
        let y1 = if y0 == 0.0 { 1.0 } else { 2.0 * y0 };
        total += integrate_with(g, y0, y1, LORENZ_QUAD)?;
        y0 = y1;
    }
    Ok(total)
}

/// `E = int_0^1 q(t) dt`, with the upper half rewritten through
/// `t = 1 - e^{-s}` so heavy right tails are integrated in chunks of `s`.
pub fn mean(d: &dyn LifetimeDistribution) -> Result<f64> {
    let body = head_integral(d, 0.5)?;
    let g = |s: f64| {
        let p = (-s).exp();
        d.quantile_sf(p).map_or(f64::NAN, |q| q * p)
    };
    let mut tail = 0.0;
    let mut s0 = std::f64::consts::LN_2;
    let mut g0 = g(s0);
    loop {
        let s1 = if s0 < 1.0 { 1.0 } else { (2.0 * s0).min(700.0) };
        let piece = integrate_with(g, s0, s1, LORENZ_QUAD);
        let total = body + tail;
        match piece {
            Ok(p) => {
                tail += p;
                if p.abs() <= 1e-15 * (body + tail).abs() {
                    break;
                }
            }
            // Past the representable tail of the survival function; accept
            // only if the integrand had already died out.
            Err(_) if g0.is_finite() && g0 * (s1 - s0) <= 1e-14 * total => break,
            Err(e) => return Err(e),
        }
        // `q(p) p` growing as `p -> 0` means `q` outgrows `1/p`.
        if s0 >= 16.0 {
            let g1 = g(s1);
            if g1.is_finite() && g0.is_finite() && g1 >= g0 {
                return Err(Error::Quadrature("mean appears to diverge".into()));
            }
        }
        if s1 >= 700.0 {
            let last = g(700.0);
            if !(last.is_finite() && last * 700.0 <= 1e-10 * (body + tail)) {
                return Err(Error::Quadrature("mean appears to diverge".into()));
            }
            break;
        }
        s0 = s1;
        g0 = g(s0);
    }
    let e = body + tail;
    if e.is_finite() && e > 0.0 {
        Ok(e)
    } else {
        Err(Error::Quadrature(format!("non-positive or non-finite mean {e}")))
    }
}

/// Lorenz curve `L(u) = (1/E) int_0^u q(t) dt` at the sorted levels `us`.
pub fn lorenz_curve(d: &dyn LifetimeDistribution, us: &[f64]) -> Result<Vec<f64>> {
    if us.windows(2).any(|w| w[0] >= w[1]) || us.iter().any(|u| !(*u > 0.0 && *u < 1.0)) {
        return Err(invalid("Lorenz levels must be strictly increasing in (0, 1)"));
    }
    let e = mean(d)?;
    let q = |t: f64| d.quantile(t).unwrap_or(f64::NAN);
    let mut knots = Vec::with_capacity(us.len() + 1);
    knots.push(0.0);
    knots.extend_from_slice(us);
    let pieces: Vec<Result<f64>> = knots
        .par_windows(2)
        .map(|w| {
            if w[0] == 0.0 {
                head_integral(d, w[1])
            } else {
                integrate_with(q, w[0], w[1], LORENZ_QUAD)
            }
        })
        .collect();
    let mut acc = 0.0;
    let mut out = Vec::with_capacity(us.len());
    for p in pieces {
        acc += p?;
        out.push(acc / e);
    }
    Ok(out)
}

/// `A <=_Lorenz B`: `L_A(u) >= L_B(u) - slack` on the probability grid.
pub fn check_lorenz(a: &dyn LifetimeDistribution, b: &dyn LifetimeDistribution, grid_u: &Grid) -> OrderVerdict {
    check_lorenz_with(a, b, grid_u, PROB_SLACK)
}

pub fn check_lorenz_with(
    a: &dyn LifetimeDistribution,
    b: &dyn LifetimeDistribution,
    grid_u: &Grid,
    slack: f64,
) -> OrderVerdict {
    let us = grid_u.points();
    let (la, lb) = match (lorenz_curve(a, us), lorenz_curve(b, us)) {
        (Ok(la), Ok(lb)) => (la, lb),
        (Err(e), _) | (_, Err(e)) => {
            return OrderVerdict::inconclusive(Relation::Lorenz, slack, us.len(), e.to_string())
        }
    };
    let samples: Vec<(f64, Option<f64>)> = us
        .iter()
        .zip(la.iter().zip(&lb))
        .map(|(&u, (a, b))| (u, Some(a - b)))
        .collect();
    pointwise(Relation::Lorenz, &samples, slack)
}

/// Dispatch on `relation` with its default slack and grid.
pub fn check(
    relation: Relation,
    a: &dyn LifetimeDistribution,
    b: &dyn LifetimeDistribution,
) -> Result<OrderVerdict> {
    check_on(relation, a, b, None, None)
}

/// Dispatch on `relation` with an optional grid and slack.
pub fn check_on(
    relation: Relation,
    a: &dyn LifetimeDistribution,
    b: &dyn LifetimeDistribution,
    grid: Option<&Grid>,
    slack: Option<f64>,
) -> Result<OrderVerdict> {
    let slack = slack.unwrap_or(relation.default_slack());
    let owned;
    let grid = match grid {
        Some(g) => g,
        None => {
            owned = match relation {
                Relation::Star => tail_u_grid(DEFAULT_GRID_POINTS)?,
                Relation::Lorenz => default_u_grid(DEFAULT_LORENZ_POINTS)?,
                _ => default_x_grid(a, b, DEFAULT_GRID_POINTS)?,
            };
            &owned
        }
    };
    Ok(match relation {
        Relation::St => check_st_with(a, b, grid, slack),
        Relation::Hr => check_hr_with(a, b, grid, slack),
        Relation::Rh => check_rh_with(a, b, grid, slack),
        Relation::Star => check_star_with(a, b, grid, slack),
        Relation::Lorenz => check_lorenz_with(a, b, grid, slack),
    })
}
