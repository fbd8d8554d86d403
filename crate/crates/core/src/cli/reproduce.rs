//! Plot data for the six worked scenarios and a check of the behaviour each
//! plot is meant to show.

use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::distribution::LifetimeDistribution;
use crate::error::Result;
use crate::extremes::Extreme;
use crate::numerics::{Grid, Spacing};
use crate::orders::{DEFAULT_GRID_POINTS, PROB_SLACK};
use crate::theorems::builtin::{Behaviour, BuiltinScenario, FigureKind};

use super::write_csv;

/// Upper end of figure grids for maxima, and for minima of unbounded support.
pub const FIGURE_HI: f64 = 50.0;

/// `[0.01, 50]` for maxima; `[0.001, 0.999 * upper support]` for minima,
/// with 50 standing in for an infinite upper support.
pub fn figure_grid(b: &BuiltinScenario) -> Result<Grid> {
    let s = &b.scenario;
    let (lo, hi) = match s.extreme() {
        Extreme::Max => (0.01, FIGURE_HI),
        Extreme::Min => {
            let upper = s
                .model_x
                .distribution()
                .support()
                .1
                .min(s.model_y.distribution().support().1);
            (0.001, if upper.is_finite() { 0.999 * upper } else { FIGURE_HI })
        }
    };
    Grid::new(lo, hi, DEFAULT_GRID_POINTS, Spacing::Log)
}

#[derive(Debug, Clone)]
pub struct FigureData {
    pub name: &'static str,
    pub headers: Vec<&'static str>,
    pub x: Vec<f64>,
    pub columns: Vec<Vec<f64>>,
}

/// Evaluates the plotted quantity of `b` on `grid`.
pub fn figure_data(b: &BuiltinScenario, grid: &Grid) -> FigureData {
    let dx = b.scenario.model_x.distribution();
    let dy = b.scenario.model_y.distribution();
    let x = grid.points().to_vec();
    let eval = |f: &(dyn Fn(f64) -> f64 + Sync)| -> Vec<f64> { x.par_iter().map(|&t| f(t)).collect() };
    let (headers, columns) = match b.figure.kind {
        FigureKind::Cdfs => (vec!["F_X", "F_Y"], vec![eval(&|t| dx.cdf(t)), eval(&|t| dy.cdf(t))]),
        FigureKind::CdfDifference => (vec!["F_X-F_Y"], vec![eval(&|t| dx.cdf(t) - dy.cdf(t))]),
        FigureKind::CdfRatio => (
            vec!["F_X/F_Y"],
            vec![eval(&|t| (dx.ln_cdf(t) - dy.ln_cdf(t)).exp())],
        ),
        FigureKind::SfRatio => (
            vec!["SF_Y/SF_X"],
            vec![eval(&|t| (dy.ln_sf(t) - dx.ln_sf(t)).exp())],
        ),
        FigureKind::SfDifference => (vec!["SF_X-SF_Y"], vec![eval(&|t| dx.sf(t) - dy.sf(t))]),
        FigureKind::Sfs => (vec!["SF_X", "SF_Y"], vec![eval(&|t| dx.sf(t)), eval(&|t| dy.sf(t))]),
    };
    FigureData {
        name: b.figure.name,
        headers,
        x,
        columns,
    }
}

/// Whether the expected behaviour shows up in the data, with a one-line
/// description of what was measured.
pub fn observed(b: &BuiltinScenario, data: &FigureData) -> (bool, String) {
    let finite = |v: &[f64]| v.iter().copied().filter(|v| v.is_finite()).collect::<Vec<_>>();
    let extrema = |v: &[f64]| {
        finite(v)
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)))
    };
    // Difference-type series for the two-column plots.
    let series: Vec<f64> = match b.figure.kind {
        FigureKind::Cdfs => data.columns[1].iter().zip(&data.columns[0]).map(|(y, x)| y - x).collect(),
        FigureKind::Sfs => data.columns[0].iter().zip(&data.columns[1]).map(|(x, y)| x - y).collect(),
        _ => data.columns[0].clone(),
    };
    match b.figure.behaviour {
        Behaviour::CdfYAboveX => {
            let (lo, _) = extrema(&series);
            (lo >= -PROB_SLACK, format!("min(F_Y - F_X) = {lo:.6e}"))
        }
        Behaviour::NonPositive => {
            let (_, hi) = extrema(&series);
            (hi <= PROB_SLACK, format!("max difference = {hi:.6e}"))
        }
        Behaviour::Crossing => {
            let (lo, hi) = extrema(&series);
            (
                lo < -PROB_SLACK && hi > PROB_SLACK,
                format!("difference ranges over [{lo:.6e}, {hi:.6e}]"),
            )
        }
        Behaviour::RatioIncreasing => {
            let v = finite(&series);
            // Against the running maximum, so a slow decline cannot hide.
            let worst = v
                .iter()
                .skip(1)
                .scan(v.first().copied().unwrap_or(f64::NAN), |best, &r| {
                    let step = r - *best;
                    *best = best.max(r);
                    Some(step)
                })
                .fold(f64::INFINITY, f64::min);
            let skipped = series.len() - v.len();
            (
                worst >= -PROB_SLACK && v.len() >= 3,
                format!("min rise over the running maximum = {worst:.6e} ({skipped} non-finite points skipped)"),
            )
        }
    }
}

/// Result of reproducing one figure.
#[derive(Debug, Clone)]
pub struct Reproduction {
    pub id: &'static str,
    pub figure: &'static str,
    pub path: Option<PathBuf>,
    pub expected: &'static str,
    pub observed: bool,
    pub detail: String,
}

impl Reproduction {
    pub fn summary_line(&self) -> String {
        format!(
            "{} {}: expected {}; observed: {} ({})",
            self.id,
            self.figure,
            self.expected,
            if self.observed { "yes" } else { "NO" },
            self.detail
        )
    }
}

/// Computes the figure of `b` and, if `out_dir` is given, writes
/// `<figure>.csv` there.
pub fn reproduce(b: &BuiltinScenario, grid: Option<&Grid>, out_dir: Option<&Path>) -> Result<Reproduction> {
    let owned;
    let grid = match grid {
        Some(g) => g,
        None => {
            owned = figure_grid(b)?;
            &owned
        }
    };
    let data = figure_data(b, grid);
    let (ok, detail) = observed(b, &data);
    let path = match out_dir {
        Some(dir) => {
            std::fs::create_dir_all(dir)?;
            let path = dir.join(format!("{}.csv", data.name));
            let cols: Vec<&[f64]> = data.columns.iter().map(Vec::as_slice).collect();
            write_csv(&path, &data.headers, &data.x, &cols)?;
            Some(path)
        }
        None => None,
    };
    Ok(Reproduction {
        id: b.id,
        figure: data.name,
        path,
        expected: b.figure.behaviour.describe(),
        observed: ok,
        detail,
    })
}
