use crate::error::Result;

/// A continuous lifetime distribution on `(lo, hi)` with `0 <= lo < hi <= inf`.
///
/// `cdf` and `sf` must each be accurate in relative terms, so neither is
/// computed as one minus the other where that would cancel.
pub trait LifetimeDistribution: Send + Sync {
    /// Support endpoints `(lo, hi)`; `hi` may be infinite.
    fn support(&self) -> (f64, f64);

    fn cdf(&self, x: f64) -> f64;

    fn sf(&self, x: f64) -> f64;

    fn pdf(&self, x: f64) -> f64;

    /// `f / (1 - F)`; errors outside the open support or where `sf` vanishes.
    fn hazard(&self, x: f64) -> Result<f64>;

    /// `f / F`; errors outside the open support or where `cdf` vanishes.
    fn rev_hazard(&self, x: f64) -> Result<f64>;

    /// Smallest `x` with `cdf(x) >= u`, for `u` in `(0, 1)`.
    fn quantile(&self, u: f64) -> Result<f64>;

    /// The `x` with `sf(x) = q`, for `q` in `(0, 1)`. Accurate for upper-tail
    /// probabilities far below machine epsilon.
    fn quantile_sf(&self, q: f64) -> Result<f64>;

    fn ln_cdf(&self, x: f64) -> f64 {
        let c = self.cdf(x);
        if c > 0.5 {
            (-self.sf(x)).ln_1p()
        } else {
            c.ln()
        }
    }

    fn ln_sf(&self, x: f64) -> f64 {
        let s = self.sf(x);
        if s > 0.5 {
            (-self.cdf(x)).ln_1p()
        } else {
            s.ln()
        }
    }

    /// Whether `x` lies strictly inside the support.
    fn in_open_support(&self, x: f64) -> bool {
        let (lo, hi) = self.support();
        x > lo && x < hi
    }
}
