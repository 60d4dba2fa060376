//! Numerical surveys of `Z^(k)(t) Z^(ℓ)(t)`: sign measures, mean values,
//! zero pairing, and tabulated data for plotting.

mod figure;
mod moment;
mod pairing;

use rayon::prelude::*;
use serde::Serialize;

use crate::zfun::{self, MAX_ORDER};
use crate::{Error, Result};

pub use figure::{figure_data, figure_orders, product_table, FigureRow, FigureTable};
pub use moment::{leading_term, moment_check, MomentCheck};
pub use pairing::{zero_pairing, zeros_of, PairingReport, ZeroPair};

/// Lowest height accepted by the surveys (Riemann–Siegel floor).
pub const MIN_HEIGHT: f64 = 50.0;
/// Coarsest grid accepted by `sign_measure`.
pub const MAX_RESOLUTION: f64 = 0.05;
/// Width to which sign changes are bisected.
pub const REFINE_WIDTH: f64 = 1e-6;
/// Bisection budget per sign change.
pub const MAX_BISECTIONS: usize = 60;

const CHUNK: usize = 256;

/// Mean distance between consecutive zeros of `Z` near height `t`.
pub fn mean_zero_spacing(t: f64) -> f64 {
    2.0 * std::f64::consts::PI / (t / (2.0 * std::f64::consts::PI)).ln()
}

fn check_orders(k: usize, l: usize) -> Result<()> {
    if k.max(l) > MAX_ORDER {
        return Err(Error::InvalidArgument(format!(
            "derivative orders ({k}, {l}) exceed {MAX_ORDER}"
        )));
    }
    Ok(())
}

fn check_even(k: usize, l: usize) -> Result<()> {
    check_orders(k, l)?;
    if (k + l) % 2 == 1 {
        return Err(Error::InvalidArgument(format!("k + l = {} must be even", k + l)));
    }
    Ok(())
}

fn check_interval(t_min: f64, t_max: f64) -> Result<()> {
    if !(t_min.is_finite() && t_max.is_finite()) {
        return Err(Error::NonFinite(if t_min.is_finite() { t_max } else { t_min }));
    }
    if t_min < MIN_HEIGHT {
        return Err(Error::HeightOutOfRange { t: t_min, reason: "surveys start at t >= 50" });
    }
    if t_max < t_min {
        return Err(Error::InvalidArgument(format!("empty interval [{t_min}, {t_max}]")));
    }
    Ok(())
}

/// `Z^(k)(t) · Z^(ℓ)(t)` from a single jet evaluation.
pub fn product(k: usize, l: usize, t: f64) -> Result<f64> {
    let all = zfun::z_all(t, k.max(l))?;
    Ok(all[k].value * all[l].value)
}

/// Evenly spaced grid with `n` cells covering `[a, b]`; the last node is `b`.
fn grid(a: f64, b: f64, n: usize) -> Vec<f64> {
    let h = (b - a) / n as f64;
    (0..=n).map(|i| if i == n { b } else { a + i as f64 * h }).collect()
}

/// Evaluates `f` at every node, in parallel chunks, preserving order.
fn sample<F>(nodes: &[f64], f: F) -> Result<Vec<f64>>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    let chunks: Vec<Result<Vec<f64>>> = nodes
        .par_chunks(CHUNK)
        .map(|c| c.iter().map(|&t| f(t)).collect())
        .collect();
    let mut out = Vec::with_capacity(nodes.len());
    for c in chunks {
        out.extend(c?);
    }
    Ok(out)
}

/// Bisects a sign change of `f` between `lo` (where `f` has sign `neg_lo`)
/// and `hi`. `None` when the budget is exhausted or an evaluation fails.
fn bisect<F>(f: &F, mut lo: f64, mut hi: f64, neg_lo: bool, width: f64) -> Option<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let mut steps = 0;
    while hi - lo > width {
        if steps == MAX_BISECTIONS {
            return None;
        }
        let mid = 0.5 * (lo + hi);
        let v = f(mid).ok()?;
        if !v.is_finite() {
            return None;
        }
        if (v < 0.0) == neg_lo {
            lo = mid;
        } else {
            hi = mid;
        }
        steps += 1;
    }
    Some(0.5 * (lo + hi))
}

/// A sign change located inside grid cell `cell`.
enum Crossing {
    At(f64),
    Unresolved,
}

/// Grid scan of `f` over `nodes` with every sign change bisected.
fn crossings<F>(nodes: &[f64], values: &[f64], f: &F, width: f64) -> Vec<(usize, Crossing)>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    let cells: Vec<usize> = (0..nodes.len().saturating_sub(1))
        .filter(|&i| (values[i] < 0.0) != (values[i + 1] < 0.0))
        .collect();
    cells
        .par_iter()
        .map(|&i| {
            let c = match bisect(f, nodes[i], nodes[i + 1], values[i] < 0.0, width) {
                Some(r) => Crossing::At(r),
                None => Crossing::Unresolved,
            };
            (i, c)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SignReport {
    pub k: usize,
    pub l: usize,
    pub interval: (f64, f64),
    pub measure_negative: f64,
    pub measure_positive: f64,
    pub refined_sign_changes: usize,
    pub grid_resolution: f64,
    /// Grid cells whose sign change could not be refined; excluded from both
    /// measures.
    pub excluded: Vec<(f64, f64)>,
}

impl SignReport {
    pub fn length(&self) -> f64 {
        self.interval.1 - self.interval.0
    }

    pub fn excluded_measure(&self) -> f64 {
        self.excluded.iter().fold(0.0, |acc, (a, b)| acc + (b - a))
    }

    pub fn fraction_negative(&self) -> f64 {
        if self.length() == 0.0 {
            0.0
        } else {
            self.measure_negative / self.length()
        }
    }

    pub fn fraction_positive(&self) -> f64 {
        if self.length() == 0.0 {
            0.0
        } else {
            self.measure_positive / self.length()
        }
    }

    /// Fraction of the interval where the product has sign `(−1)^d`,
    /// `d = |k − ℓ|/2`.
    pub fn fraction_predicted_sign(&self) -> f64 {
        if (self.k.abs_diff(self.l) / 2) % 2 == 1 {
            self.fraction_negative()
        } else {
            self.fraction_positive()
        }
    }
}

/// Measures where `Z^(k) Z^(ℓ)` is negative and positive on
/// `[t_min, t_max]`. The product is sampled on a grid no coarser than
/// `resolution`; each sign change is bisected to `1e-6` and the measures are
/// summed over the refined partition. Points where the product vanishes
/// exactly count as positive.
pub fn sign_measure(k: usize, l: usize, t_min: f64, t_max: f64, resolution: f64) -> Result<SignReport> {
    check_even(k, l)?;
    check_interval(t_min, t_max)?;
    if !(resolution > 0.0 && resolution <= MAX_RESOLUTION) {
        return Err(Error::InvalidArgument(format!(
            "resolution {resolution} must lie in (0, {MAX_RESOLUTION}]"
        )));
    }
    let mut report = SignReport {
        k,
        l,
        interval: (t_min, t_max),
        measure_negative: 0.0,
        measure_positive: 0.0,
        refined_sign_changes: 0,
        grid_resolution: resolution,
        excluded: Vec::new(),
    };
    if t_max == t_min {
        return Ok(report);
    }
    let n = ((t_max - t_min) / resolution).ceil().max(1.0) as usize;
    let nodes = grid(t_min, t_max, n);
    report.grid_resolution = (t_max - t_min) / n as f64;
    let f = |t: f64| product(k, l, t);
    let values = sample(&nodes, f)?;

    let mut pos = t_min;
    let mut negative = values[0] < 0.0;
    let add = |r: &mut SignReport, len: f64, neg: bool| {
        if neg {
            r.measure_negative += len;
        } else {
            r.measure_positive += len;
        }
    };
    for (i, c) in crossings(&nodes, &values, &f, REFINE_WIDTH) {
        match c {
            Crossing::At(root) => {
                add(&mut report, root - pos, negative);
                pos = root;
                report.refined_sign_changes += 1;
            }
            Crossing::Unresolved => {
                add(&mut report, nodes[i] - pos, negative);
                report.excluded.push((nodes[i], nodes[i + 1]));
                pos = nodes[i + 1];
            }
        }
        negative = values[i + 1] < 0.0;
    }
    add(&mut report, t_max - pos, negative);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_arguments() {
        assert!(sign_measure(0, 1, 500.0, 510.0, 0.01).is_err());
        assert!(sign_measure(0, 2, 40.0, 60.0, 0.01).is_err());
        assert!(sign_measure(0, 2, 500.0, 510.0, 0.1).is_err());
        assert!(sign_measure(0, 2, 510.0, 500.0, 0.01).is_err());
        assert!(sign_measure(0, 10, 500.0, 510.0, 0.01).is_err());
    }

    #[test]
    fn partition_is_consistent() {
        let r = sign_measure(1, 3, 200.0, 230.0, 0.02).unwrap();
        let total = r.measure_negative + r.measure_positive + r.excluded_measure();
        assert!((total - 30.0).abs() < 1e-9);
        assert!(r.refined_sign_changes > 10);
    }

    #[test]
    fn square_is_never_negative() {
        let r = sign_measure(3, 3, 500.0, 510.0, 0.02).unwrap();
        assert_eq!(r.measure_negative, 0.0);
        assert_eq!(r.refined_sign_changes, 0);
    }

    #[test]
    fn symmetric_in_orders() {
        let a = sign_measure(0, 2, 600.0, 610.0, 0.01).unwrap();
        let b = sign_measure(2, 0, 600.0, 610.0, 0.01).unwrap();
        assert_eq!(a.measure_negative, b.measure_negative);
        assert_eq!(a.measure_positive, b.measure_positive);
    }

    #[test]
    fn degenerate_interval() {
        let r = sign_measure(0, 2, 500.0, 500.0, 0.01).unwrap();
        assert_eq!(r.fraction_negative(), 0.0);
        assert_eq!(r.length(), 0.0);
    }
}
