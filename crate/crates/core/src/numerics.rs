//! Numeric kernels shared by every analytic check: evaluation grids, finite
//! differences, monotonicity and convexity verdicts on a grid, a bisection
//! root finder and adaptive Simpson quadrature.
//!
//! Shape verdicts are deliberately tolerant of non-finite evaluations: such
//! points are skipped and counted, and a verdict only turns `Inconclusive`
//! when more than 10% of the grid had to be skipped.

use crate::error::{Error, Result};

/// Relative slack used by shape verdicts unless a caller overrides it.
pub const DEFAULT_SHAPE_SLACK: f64 = 1e-8;

/// Fraction of excluded grid points above which a verdict is inconclusive.
pub const MAX_EXCLUDED_FRACTION: f64 = 0.10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Linear,
    Log,
}

impl std::str::FromStr for Spacing {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "linear" | "lin" => Ok(Spacing::Linear),
            "log" => Ok(Spacing::Log),
            other => Err(Error::invalid(format!("unknown spacing `{other}`"))),
        }
    }
}

impl std::fmt::Display for Spacing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Spacing::Linear => "linear",
            Spacing::Log => "log",
        })
    }
}

/// Strictly increasing set of positive evaluation points.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    points: Vec<f64>,
    spacing: Spacing,
}

impl Grid {
    /// Builds a grid with exactly `count` points, the first equal to `lo` and
    /// the last equal to `hi`.
    pub fn new(lo: f64, hi: f64, count: usize, spacing: Spacing) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite()) || lo <= 0.0 || hi <= lo {
            return Err(Error::invalid(format!(
                "grid bounds must satisfy 0 < lo < hi, got [{lo}, {hi}]"
            )));
        }
        if count < 2 {
            return Err(Error::invalid("grid needs at least two points"));
        }
        let last = (count - 1) as f64;
        let mut points: Vec<f64> = match spacing {
            Spacing::Linear => (0..count)
                .map(|i| lo + (hi - lo) * (i as f64 / last))
                .collect(),
            Spacing::Log => {
                let (a, b) = (lo.ln(), hi.ln());
                (0..count)
                    .map(|i| (a + (b - a) * (i as f64 / last)).exp())
                    .collect()
            }
        };
        points[0] = lo;
        points[count - 1] = hi;
        // Rounding in exp() can collapse neighbours on very narrow log grids.
        points.dedup_by(|b, a| *b <= *a);
        if points.len() < 2 {
            return Err(Error::invalid("grid collapsed to a single point"));
        }
        Ok(Grid { points, spacing })
    }

    /// Wraps explicit points, which must be finite, positive and strictly
    /// increasing.
    pub fn from_points(points: Vec<f64>, spacing: Spacing) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::invalid("grid needs at least two points"));
        }
        if points[0].is_nan() || points[0] <= 0.0 || points.iter().any(|p| !p.is_finite()) {
            return Err(Error::invalid("grid points must be finite and positive"));
        }
        if points.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::invalid("grid points must be strictly increasing"));
        }
        Ok(Grid { points, spacing })
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn spacing(&self) -> Spacing {
        self.spacing
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn lo(&self) -> f64 {
        self.points[0]
    }

    pub fn hi(&self) -> f64 {
        self.points[self.points.len() - 1]
    }

    /// Roughly `count` points taken at even index strides, always keeping
    /// both endpoints.
    pub fn subsample(&self, count: usize) -> Grid {
        let n = self.points.len();
        if count >= n || count < 2 {
            return self.clone();
        }
        let mut points: Vec<f64> = (0..count)
            .map(|i| self.points[i * (n - 1) / (count - 1)])
            .collect();
        points.dedup();
        Grid {
            points,
            spacing: self.spacing,
        }
    }
}

/// Outcome class of a shape or order check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Inconclusive => "INCONCLUSIVE",
        })
    }
}

/// Where a property was observed to break.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Witness {
    Point(f64),
    Pair(f64, f64),
}

impl std::fmt::Display for Witness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Witness::Point(x) => write!(f, "x={x:.6e}"),
            Witness::Pair(x, y) => write!(f, "(x,y)=({x:.6e},{y:.6e})"),
        }
    }
}

/// Verdict of a numeric shape property on a grid.
///
/// `margin` is the smallest normalised slack observed: non-negative when the
/// property holds strictly everywhere, slightly negative within tolerance,
/// below `-slack` on failure.
#[derive(Debug, Clone, PartialEq)]
pub struct ShapeVerdict {
    pub status: Status,
    pub witness: Option<Witness>,
    pub excluded: usize,
    pub margin: f64,
}

impl ShapeVerdict {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }

    pub(crate) fn finish(
        margin: f64,
        witness: Option<Witness>,
        slack: f64,
        excluded: usize,
        total: usize,
        usable: usize,
    ) -> ShapeVerdict {
        let status = if margin < -slack && witness.is_some() {
            Status::Fail
        } else if usable < 3 || excluded as f64 > MAX_EXCLUDED_FRACTION * total as f64 {
            Status::Inconclusive
        } else {
            Status::Pass
        };
        ShapeVerdict {
            status,
            witness: if status == Status::Fail { witness } else { None },
            excluded,
            margin,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Increasing,
    Decreasing,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Curvature {
    Convex,
    Concave,
}

fn derivative_step(x: f64) -> f64 {
    f64::max(1e-6, 1e-6 * x.abs())
}

/// Central first difference with step `max(1e-6, 1e-6·|x|)`.
pub fn derivative<F: Fn(f64) -> f64>(f: F, x: f64) -> Result<f64> {
    let h = derivative_step(x);
    let (a, b) = (f(x + h), f(x - h));
    let d = (a - b) / (2.0 * h);
    if d.is_finite() {
        Ok(d)
    } else {
        Err(Error::Evaluation {
            what: "derivative",
            x,
        })
    }
}

/// Three-point second difference. The step is `max(1e-4, 1e-4·|x|)`, the
/// cube-root-of-epsilon scale that balances truncation against rounding.
pub fn second_derivative<F: Fn(f64) -> f64>(f: F, x: f64) -> Result<f64> {
    let h = f64::max(1e-4, 1e-4 * x.abs());
    let d = (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
    if d.is_finite() {
        Ok(d)
    } else {
        Err(Error::Evaluation {
            what: "second derivative",
            x,
        })
    }
}

/// Evaluates `f` on the grid, dropping non-finite values.
fn sample<F: Fn(f64) -> f64>(f: &F, grid: &Grid) -> (Vec<(f64, f64)>, usize) {
    let mut kept = Vec::with_capacity(grid.len());
    let mut excluded = 0;
    for &x in grid.points() {
        let y = f(x);
        if y.is_finite() {
            kept.push((x, y));
        } else {
            excluded += 1;
        }
    }
    (kept, excluded)
}

pub fn check_monotone<F: Fn(f64) -> f64>(f: F, grid: &Grid, direction: Direction) -> ShapeVerdict {
    check_monotone_with(f, grid, direction, DEFAULT_SHAPE_SLACK)
}

/// Each value must clear the best value seen before it, in `direction`, up
/// to `slack·max(1, |f|)`. Comparing with the running best rather than the
/// previous point keeps a slow drift from hiding under the slack.
pub fn check_monotone_with<F: Fn(f64) -> f64>(
    f: F,
    grid: &Grid,
    direction: Direction,
    slack: f64,
) -> ShapeVerdict {
    let (pts, excluded) = sample(&f, grid);
    monotone_verdict(&pts, excluded, grid.len(), direction, slack)
}

pub(crate) fn monotone_verdict(
    pts: &[(f64, f64)],
    excluded: usize,
    total: usize,
    direction: Direction,
    slack: f64,
) -> ShapeVerdict {
    let sign = match direction {
        Direction::Increasing => 1.0,
        Direction::Decreasing => -1.0,
    };
    let mut margin = f64::INFINITY;
    let mut witness = None;
    let Some(&(_, first)) = pts.first() else {
        return ShapeVerdict::finish(margin, witness, slack, excluded, total, 0);
    };
    let mut best = first;
    for &(x1, y1) in &pts[1..] {
        let scale = 1f64.max(best.abs()).max(y1.abs());
        let m = sign * (y1 - best) / scale;
        if m < margin {
            margin = m;
            if m < -slack && witness.is_none() {
                witness = Some(Witness::Point(x1));
            }
        }
        if sign * (y1 - best) > 0.0 {
            best = y1;
        }
    }
    ShapeVerdict::finish(margin, witness, slack, excluded, total, pts.len())
}

pub fn check_convex<F: Fn(f64) -> f64>(f: F, grid: &Grid, curvature: Curvature) -> ShapeVerdict {
    check_convex_with(f, grid, curvature, DEFAULT_SHAPE_SLACK)
}

/// Divided-difference slopes must be nondecreasing (convex) or
/// nonincreasing (concave). The value slack `slack·max(1, |f|)` is carried
/// into slope space through the two adjacent spacings, so the test is
/// meaningful on non-uniform grids.
pub fn check_convex_with<F: Fn(f64) -> f64>(
    f: F,
    grid: &Grid,
    curvature: Curvature,
    slack: f64,
) -> ShapeVerdict {
    let (pts, excluded) = sample(&f, grid);
    let sign = match curvature {
        Curvature::Convex => 1.0,
        Curvature::Concave => -1.0,
    };
    let mut margin = f64::INFINITY;
    let mut witness = None;
    for w in pts.windows(3) {
        let ((x0, y0), (x1, y1), (x2, y2)) = (w[0], w[1], w[2]);
        let (h0, h1) = (x1 - x0, x2 - x1);
        let s0 = (y1 - y0) / h0;
        let s1 = (y2 - y1) / h1;
        let scale = 1f64.max(y0.abs()).max(y1.abs()).max(y2.abs()) * (1.0 / h0 + 1.0 / h1);
        let m = sign * (s1 - s0) / scale;
        if m < margin {
            margin = m;
            if m < -slack && witness.is_none() {
                witness = Some(Witness::Point(x1));
            }
        }
    }
    ShapeVerdict::finish(margin, witness, slack, excluded, grid.len(), pts.len())
}

/// Stopping rules for [`find_root_with`].
#[derive(Debug, Clone, Copy)]
pub struct RootOptions {
    /// Stop once `|f(x)| <= ftol`; zero disables the residual test.
    pub ftol: f64,
    /// Stop once the bracket is narrower than `xtol_rel·|x|`.
    pub xtol_rel: f64,
    pub max_iter: usize,
}

impl Default for RootOptions {
    fn default() -> Self {
        RootOptions {
            ftol: 0.0,
            xtol_rel: 1e-14,
            max_iter: 200,
        }
    }
}

/// Bisection root finder. Stops on an exact zero or once the bracket shrinks
/// below `1e-14·|x|`, after at most 200 halvings.
pub fn find_root<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64) -> Result<f64> {
    find_root_with(f, lo, hi, RootOptions::default())
}

pub fn find_root_with<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, opts: RootOptions) -> Result<f64> {
    let (mut a, mut b) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let (mut fa, fb) = (f(a), f(b));
    if fa.is_nan() || fb.is_nan() || fa * fb > 0.0 {
        return Err(Error::Bracket { lo: a, hi: b });
    }
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    for _ in 0..opts.max_iter {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 || fm.abs() <= opts.ftol {
            return Ok(mid);
        }
        if fm.is_nan() {
            return Err(Error::Evaluation {
                what: "root function",
                x: mid,
            });
        }
        if (fa < 0.0) == (fm < 0.0) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
        if b - a <= opts.xtol_rel * mid.abs() {
            break;
        }
    }
    Ok(0.5 * (a + b))
}

/// Tolerances for [`integrate_with`].
#[derive(Debug, Clone, Copy)]
pub struct QuadOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_depth: u32,
}

impl Default for QuadOptions {
    fn default() -> Self {
        QuadOptions {
            abs_tol: 1e-10,
            rel_tol: 1e-8,
            max_depth: 20,
        }
    }
}

/// Adaptive composite Simpson with absolute tolerance 1e-10 and relative
/// tolerance 1e-8.
pub fn integrate<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64) -> Result<f64> {
    integrate_with(f, lo, hi, QuadOptions::default())
}

pub fn integrate_with<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, opts: QuadOptions) -> Result<f64> {
    if lo == hi {
        return Ok(0.0);
    }
    if !(lo.is_finite() && hi.is_finite()) {
        return Err(Error::Quadrature(format!("infinite bounds [{lo}, {hi}]")));
    }
    if hi < lo {
        return integrate_with(f, hi, lo, opts).map(|v| -v);
    }
    // Endpoint singularities are replaced by one-sided values just inside.
    let offset = 1e-10 * (hi - lo);
    let eval_end = |x: f64, inward: f64| {
        let y = f(x);
        if y.is_finite() {
            y
        } else {
            f(x + inward)
        }
    };
    let fa = eval_end(lo, offset);
    let fb = eval_end(hi, -offset);
    let m = 0.5 * (lo + hi);
    let fm = f(m);
    if !(fa.is_finite() && fb.is_finite() && fm.is_finite()) {
        return Err(Error::Quadrature(format!(
            "non-finite integrand on [{lo}, {hi}]"
        )));
    }
    let whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
    let tol = opts.abs_tol.max(opts.rel_tol * whole.abs());
    simpson_step(&f, lo, fa, m, fm, hi, fb, whole, tol, 0, opts.max_depth)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    fa: f64,
    m: f64,
    fm: f64,
    b: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
    max_depth: u32,
) -> Result<f64> {
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    if !(flm.is_finite() && frm.is_finite()) {
        return Err(Error::Quadrature(format!(
            "non-finite integrand near [{a}, {b}]"
        )));
    }
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if delta.abs() <= 15.0 * tol {
        return Ok(left + right + delta / 15.0);
    }
    if depth + 1 >= max_depth {
        return Err(Error::Quadrature(format!(
            "no convergence after {max_depth} refinement levels near [{a}, {b}]"
        )));
    }
    let l = simpson_step(f, a, fa, lm, flm, m, fm, left, tol / 2.0, depth + 1, max_depth)?;
    let r = simpson_step(f, m, fm, rm, frm, b, fb, right, tol / 2.0, depth + 1, max_depth)?;
    Ok(l + r)
}
