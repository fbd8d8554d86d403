//! Majorization preorders on nonnegative vectors and the ordered cones
//! `D+` (decreasing, last entry positive) and `E+` (increasing, first entry
//! positive).
//!
//! All three relations compare partial sums of the ascending rearrangement,
//! so they depend only on the multisets of entries.

use crate::error::{invalid, Result};

/// Absolute slack on partial-sum comparisons.
pub const SUM_SLACK: f64 = 1e-12;

/// A finite nonnegative vector of length at least one.
#[derive(Debug, Clone, PartialEq)]
pub struct RealVector(Vec<f64>);

impl RealVector {
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(invalid("vector must have at least one entry"));
        }
        if let Some(bad) = entries.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
            return Err(invalid(format!("vector entries must be finite and >= 0, got {bad}")));
        }
        Ok(RealVector(entries))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }
}

impl From<RealVector> for Vec<f64> {
    fn from(v: RealVector) -> Self {
        v.0
    }
}

/// Entries sorted ascending.
pub fn order_coordinates(v: &[f64]) -> Result<Vec<f64>> {
    if v.is_empty() {
        return Err(invalid("cannot order an empty vector"));
    }
    let mut s = v.to_vec();
    s.sort_by(f64::total_cmp);
    Ok(s)
}

fn sorted_pair(x: &[f64], y: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
    if x.len() != y.len() {
        return Err(invalid(format!(
            "length mismatch: {} vs {}",
            x.len(),
            y.len()
        )));
    }
    Ok((order_coordinates(x)?, order_coordinates(y)?))
}

fn prefix_sums(v: &[f64]) -> Vec<f64> {
    v.iter()
        .scan(0.0, |acc, &a| {
            *acc += a;
            Some(*acc)
        })
        .collect()
}

fn tail_sums(v: &[f64]) -> Vec<f64> {
    let mut out: Vec<f64> = v
        .iter()
        .rev()
        .scan(0.0, |acc, &a| {
            *acc += a;
            Some(*acc)
        })
        .collect();
    out.reverse();
    out
}

/// `x` majorizes `y`: every ascending prefix sum of `y` is at least that of
/// `x`, and the totals agree.
pub fn majorizes(x: &[f64], y: &[f64]) -> Result<bool> {
    let (xs, ys) = sorted_pair(x, y)?;
    let (px, py) = (prefix_sums(&xs), prefix_sums(&ys));
    let n = px.len();
    let total_equal = (px[n - 1] - py[n - 1]).abs() <= SUM_SLACK;
    Ok(total_equal && (0..n - 1).all(|l| py[l] >= px[l] - SUM_SLACK))
}

/// `x` weakly submajorizes `y`: every tail sum of the ascending
/// rearrangement of `y` is at most that of `x`.
pub fn weakly_submajorizes(x: &[f64], y: &[f64]) -> Result<bool> {
    let (xs, ys) = sorted_pair(x, y)?;
    let (tx, ty) = (tail_sums(&xs), tail_sums(&ys));
    Ok(tx.iter().zip(&ty).all(|(a, b)| *b <= *a + SUM_SLACK))
}

/// `x` weakly supermajorizes `y`: every ascending prefix sum of `y` is at
/// least that of `x`.
pub fn weakly_supermajorizes(x: &[f64], y: &[f64]) -> Result<bool> {
    let (xs, ys) = sorted_pair(x, y)?;
    let (px, py) = (prefix_sums(&xs), prefix_sums(&ys));
    Ok(px.iter().zip(&py).all(|(a, b)| *b >= *a - SUM_SLACK))
}

/// `(a, ..., a, b, ..., b)` with multiplicities `n1` and `n2`.
pub fn expand_outlier_vector(a: f64, b: f64, n1: usize, n2: usize) -> Result<Vec<f64>> {
    if n1 == 0 || n2 == 0 {
        return Err(invalid(format!("counts must be >= 1, got ({n1}, {n2})")));
    }
    let mut v = vec![a; n1];
    v.extend(std::iter::repeat_n(b, n2));
    Ok(v)
}

/// Membership in `E+`: weakly increasing with a positive first entry.
pub fn in_increasing_cone(v: &[f64]) -> bool {
    !v.is_empty() && v[0] > 0.0 && v.windows(2).all(|w| w[0] <= w[1])
}

/// Membership in `D+`: weakly decreasing with a positive last entry.
pub fn in_decreasing_cone(v: &[f64]) -> bool {
    !v.is_empty() && v[v.len() - 1] > 0.0 && v.windows(2).all(|w| w[0] >= w[1])
}
