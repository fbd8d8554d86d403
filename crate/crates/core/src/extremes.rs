//! Distributions of the largest and smallest order statistic of a
//! two-block multiple-outlier scale model with Archimedean dependence.
//!
//! For the maximum the copula acts on the marginal CDFs,
//! `F(x) = psi(n1 phi(F1(l1 x)) + n2 phi(F2(l2 x)))`; for the minimum the
//! survival copula acts on the marginal survival functions in the same way.
//! Both cases share one code path in terms of the "native" probability
//! (CDF for the maximum, survival function for the minimum).

use std::fmt;

use crate::baselines::Baseline;
use crate::copula::Generator;
use crate::distribution::LifetimeDistribution;
use crate::error::{invalid, Error, Result};
use crate::majorization::expand_outlier_vector;
use crate::numerics::{self, find_root_with, RootOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Extreme {
    Max,
    Min,
}

impl fmt::Display for Extreme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Extreme::Max => "max",
            Extreme::Min => "min",
        })
    }
}

impl std::str::FromStr for Extreme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "max" | "maximum" | "parallel" => Ok(Extreme::Max),
            "min" | "minimum" | "series" => Ok(Extreme::Min),
            other => Err(invalid(format!("extreme must be `max` or `min`, got `{other}`"))),
        }
    }
}

/// `n1` observations from `F1(l1 x)` and `n2` from `F2(l2 x)`, coupled by one
/// Archimedean generator.
#[derive(Debug, Clone, PartialEq)]
pub struct MultipleOutlierModel {
    generator: Generator,
    baselines: [Baseline; 2],
    scales: [f64; 2],
    counts: [usize; 2],
    extreme: Extreme,
}

impl MultipleOutlierModel {
    pub fn new(
        generator: Generator,
        baseline1: Baseline,
        baseline2: Baseline,
        scales: [f64; 2],
        counts: [usize; 2],
        extreme: Extreme,
    ) -> Result<Self> {
        if let Some(s) = scales.iter().find(|s| !(s.is_finite() && **s > 0.0)) {
            return Err(invalid(format!("scales must be finite and > 0, got {s}")));
        }
        if counts.contains(&0) {
            return Err(invalid(format!("counts must be >= 1, got {counts:?}")));
        }
        Ok(MultipleOutlierModel {
            generator,
            baselines: [baseline1, baseline2],
            scales,
            counts,
            extreme,
        })
    }

    pub fn generator(&self) -> &Generator {
        &self.generator
    }

    pub fn baseline1(&self) -> &Baseline {
        &self.baselines[0]
    }

    pub fn baseline2(&self) -> &Baseline {
        &self.baselines[1]
    }

    pub fn scales(&self) -> [f64; 2] {
        self.scales
    }

    pub fn counts(&self) -> [usize; 2] {
        self.counts
    }

    pub fn extreme(&self) -> Extreme {
        self.extreme
    }

    pub fn sample_size(&self) -> usize {
        self.counts[0] + self.counts[1]
    }

    /// `(ln l1, ln l2)`.
    pub fn log_scales(&self) -> [f64; 2] {
        [self.scales[0].ln(), self.scales[1].ln()]
    }

    /// Scales repeated by multiplicity: `(l1, ..., l1, l2, ..., l2)`.
    pub fn expanded_scales(&self) -> Vec<f64> {
        expand_outlier_vector(self.scales[0], self.scales[1], self.counts[0], self.counts[1])
            .expect("counts validated at construction")
    }

    /// The same model with different block sizes.
    pub fn with_counts(&self, counts: [usize; 2]) -> Result<Self> {
        MultipleOutlierModel::new(
            self.generator.clone(),
            self.baselines[0].clone(),
            self.baselines[1].clone(),
            self.scales,
            counts,
            self.extreme,
        )
    }

    /// The same model with different scales.
    pub fn with_scales(&self, scales: [f64; 2]) -> Result<Self> {
        MultipleOutlierModel::new(
            self.generator.clone(),
            self.baselines[0].clone(),
            self.baselines[1].clone(),
            scales,
            self.counts,
            self.extreme,
        )
    }

    pub fn distribution(&self) -> ExtremeDistribution {
        ExtremeDistribution::new(self.clone())
    }

    /// `X_{n:n}(n1, n2)` or `X_{1:n}(n1, n2)` in the usual notation.
    pub fn label(&self) -> String {
        let n = self.sample_size();
        let (k, m) = match self.extreme {
            Extreme::Max => (n, n),
            Extreme::Min => (1, n),
        };
        format!("{k}:{m}({},{})", self.counts[0], self.counts[1])
    }
}

/// The extreme order statistic of a [`MultipleOutlierModel`].
#[derive(Debug, Clone)]
pub struct ExtremeDistribution {
    model: MultipleOutlierModel,
    marginals: [Baseline; 2],
}

/// Generator-domain state at one `x`: `z = sum n_i w_i` and the per-block
/// `w_i = phi(p_i)`, or `None` when some marginal pushes `z` to infinity.
struct Composition {
    z: f64,
    w: [f64; 2],
    ln_p: [f64; 2],
}

impl ExtremeDistribution {
    pub fn new(model: MultipleOutlierModel) -> Self {
        let marginals = [
            model.baselines[0].scaled(model.scales[0]).expect("scale validated"),
            model.baselines[1].scaled(model.scales[1]).expect("scale validated"),
        ];
        ExtremeDistribution { model, marginals }
    }

    pub fn model(&self) -> &MultipleOutlierModel {
        &self.model
    }

    pub fn extreme(&self) -> Extreme {
        self.model.extreme
    }

    /// Scaled marginal of block `i` (0 or 1).
    pub fn marginal(&self, i: usize) -> &Baseline {
        &self.marginals[i]
    }

    fn native_ln(&self, b: &Baseline, x: f64) -> f64 {
        match self.model.extreme {
            Extreme::Max => b.ln_cdf(x),
            Extreme::Min => b.ln_sf(x),
        }
    }

    fn compose(&self, x: f64) -> Option<Composition> {
        let g = &self.model.generator;
        let mut z = 0.0;
        let mut w = [0.0; 2];
        let mut ln_p = [0.0; 2];
        for i in 0..2 {
            let l = self.native_ln(&self.marginals[i], x);
            // A capped or vanishing marginal sends phi, and hence z, to infinity.
            let wi = g.phi_from_ln(l).ok()?;
            w[i] = wi;
            ln_p[i] = l;
            z += self.model.counts[i] as f64 * wi;
        }
        z.is_finite().then_some(Composition { z, w, ln_p })
    }

    /// CDF of the maximum or survival function of the minimum.
    fn native(&self, x: f64) -> f64 {
        self.compose(x)
            .map_or(0.0, |c| self.model.generator.psi(c.z))
    }

    fn native_complement(&self, x: f64) -> f64 {
        self.compose(x)
            .map_or(1.0, |c| self.model.generator.psi_complement(c.z))
    }

    fn ln_native(&self, x: f64) -> f64 {
        self.compose(x)
            .map_or(f64::NEG_INFINITY, |c| self.model.generator.ln_psi(c.z))
    }

    /// Reversed hazard of the maximum or hazard of the minimum, from
    /// `l'(z) * sum n_i rho_i(x) / l'(w_i)` where `rho_i` is the matching rate
    /// of marginal `i`.
    fn native_rate(&self, x: f64) -> Result<f64> {
        let what = match self.model.extreme {
            Extreme::Max => "reversed hazard",
            Extreme::Min => "hazard",
        };
        let c = self.compose(x).ok_or(Error::Evaluation { what, x })?;
        let g = &self.model.generator;
        let mut sum = 0.0;
        for i in 0..2 {
            if c.ln_p[i] == 0.0 {
                // Marginal exhausted: its density is zero here.
                continue;
            }
            let rho = match self.model.extreme {
                Extreme::Max => self.marginals[i].rev_hazard(x)?,
                Extreme::Min => self.marginals[i].hazard(x)?,
            };
            sum += self.model.counts[i] as f64 * rho / g.dln_psi(c.w[i]);
        }
        let rate = g.dln_psi(c.z) * sum;
        if rate.is_finite() && rate >= 0.0 {
            return Ok(rate);
        }
        // Numeric fallback on the log of the native probability.
        let sign = match self.model.extreme {
            Extreme::Max => 1.0,
            Extreme::Min => -1.0,
        };
        numerics::derivative(|t| self.ln_native(t), x)
            .map(|d| sign * d)
            .ok()
            .filter(|r| r.is_finite())
            .ok_or(Error::Evaluation { what, x })
    }

    /// Solves `g(x) = 0` for a `g` increasing in `x` over the support.
    fn solve_increasing<G: Fn(f64) -> f64>(&self, g: G) -> Result<f64> {
        let (slo, shi) = self.support();
        let mut lo = match (slo > 0.0, shi.is_finite()) {
            (true, true) => (slo * shi).sqrt(),
            (false, true) => 0.5 * shi,
            (true, false) => 2.0 * slo,
            (false, false) => 1.0,
        };
        let mut hi = lo;
        let mut steps = 0;
        // A root closer to a support endpoint than the spacing of floats
        // there is that endpoint.
        while g(lo) > 0.0 {
            let next = slo + (lo - slo) / 16.0;
            if next <= slo || next == lo {
                return Ok(slo);
            }
            lo = next;
        }
        while g(hi) < 0.0 {
            let next = if shi.is_finite() {
                shi - (shi - hi) / 16.0
            } else {
                hi * 16.0
            };
            steps += 1;
            if shi.is_finite() && (next >= shi || next == hi) {
                return Ok(shi);
            }
            if steps > 400 || !next.is_finite() {
                return Err(Error::Bracket { lo, hi });
            }
            hi = next;
        }
        find_root_with(
            g,
            lo,
            hi,
            RootOptions {
                ftol: 0.0,
                xtol_rel: 1e-15,
                max_iter: 400,
            },
        )
    }
}

impl LifetimeDistribution for ExtremeDistribution {
    fn support(&self) -> (f64, f64) {
        let (a, b) = (self.marginals[0].support(), self.marginals[1].support());
        match self.model.extreme {
            Extreme::Max => (a.0.max(b.0), a.1.max(b.1)),
            Extreme::Min => (a.0.min(b.0), a.1.min(b.1)),
        }
    }

    fn cdf(&self, x: f64) -> f64 {
        match self.model.extreme {
            Extreme::Max => self.native(x),
            Extreme::Min => self.native_complement(x),
        }
    }

    fn sf(&self, x: f64) -> f64 {
        match self.model.extreme {
            Extreme::Max => self.native_complement(x),
            Extreme::Min => self.native(x),
        }
    }

    fn ln_cdf(&self, x: f64) -> f64 {
        match self.model.extreme {
            Extreme::Max => self.ln_native(x),
            Extreme::Min => self.native_complement(x).ln(),
        }
    }

    fn ln_sf(&self, x: f64) -> f64 {
        match self.model.extreme {
            Extreme::Max => self.native_complement(x).ln(),
            Extreme::Min => self.ln_native(x),
        }
    }

    /// `F * r~` for the maximum, `S * r` for the minimum; a central difference
    /// of the CDF where the rate is undefined.
    fn pdf(&self, x: f64) -> f64 {
        let analytic = self.native_rate(x).map(|r| r * self.native(x));
        match analytic {
            Ok(v) if v.is_finite() => v,
            _ => numerics::derivative(|t| self.cdf(t), x)
                .map(|d| if d > -1e-8 { d.max(0.0) } else { d })
                .unwrap_or(0.0),
        }
    }

    fn hazard(&self, x: f64) -> Result<f64> {
        match self.model.extreme {
            Extreme::Min => self.native_rate(x),
            Extreme::Max => {
                let s = self.sf(x);
                let f = self.native_rate(x)? * self.native(x);
                if s > 0.0 && (f / s).is_finite() {
                    Ok(f / s)
                } else {
                    Err(Error::Evaluation { what: "hazard", x })
                }
            }
        }
    }

    fn rev_hazard(&self, x: f64) -> Result<f64> {
        match self.model.extreme {
            Extreme::Max => self.native_rate(x),
            Extreme::Min => {
                let c = self.cdf(x);
                let f = self.native_rate(x)? * self.native(x);
                if c > 0.0 && (f / c).is_finite() {
                    Ok(f / c)
                } else {
                    Err(Error::Evaluation {
                        what: "reversed hazard",
                        x,
                    })
                }
            }
        }
    }

    /// Bisection on the CDF for `u <= 1/2` and on the survival function
    /// otherwise, so both tails keep full relative precision.
    fn quantile(&self, u: f64) -> Result<f64> {
        if !(u > 0.0 && u < 1.0) {
            return Err(invalid(format!("quantile level must lie in (0, 1), got {u}")));
        }
        if u <= 0.5 {
            let lu = u.ln();
            self.solve_increasing(|x| self.ln_cdf(x) - lu)
        } else {
            self.quantile_sf(1.0 - u)
        }
    }

    fn quantile_sf(&self, q: f64) -> Result<f64> {
        if !(q > 0.0 && q < 1.0) {
            return Err(invalid(format!("tail probability must lie in (0, 1), got {q}")));
        }
        let lq = q.ln();
        self.solve_increasing(|x| lq - self.ln_sf(x))
    }
}

fn expect_extreme(m: &MultipleOutlierModel, e: Extreme) -> Result<()> {
    if m.extreme == e {
        Ok(())
    } else {
        Err(invalid(format!("model is a {} model, expected {e}", m.extreme)))
    }
}

/// CDF of the largest order statistic.
pub fn max_cdf(m: &MultipleOutlierModel, x: f64) -> Result<f64> {
    expect_extreme(m, Extreme::Max)?;
    Ok(m.distribution().cdf(x))
}

/// Survival function of the smallest order statistic.
pub fn min_sf(m: &MultipleOutlierModel, x: f64) -> Result<f64> {
    expect_extreme(m, Extreme::Min)?;
    Ok(m.distribution().sf(x))
}

/// Reversed hazard rate of the largest order statistic.
pub fn max_rev_hazard(m: &MultipleOutlierModel, x: f64) -> Result<f64> {
    expect_extreme(m, Extreme::Max)?;
    m.distribution().rev_hazard(x)
}

/// Hazard rate of the smallest order statistic.
pub fn min_hazard(m: &MultipleOutlierModel, x: f64) -> Result<f64> {
    expect_extreme(m, Extreme::Min)?;
    m.distribution().hazard(x)
}
