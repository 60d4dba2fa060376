//! `∫₀^T Z^(k) Z^(ℓ) dt` by panel-wise Gauss–Legendre quadrature.

use std::num::NonZeroUsize;
use std::sync::OnceLock;

use gauss_quad::legendre::GaussLegendre;
use rayon::prelude::*;
use serde::Serialize;

use super::{check_even, crossings, grid, mean_zero_spacing, sample, Crossing, MIN_HEIGHT};
use crate::zfun;
use crate::{Error, Result};

const NODES: usize = 16;
const MAX_DEPTH: u32 = 12;
/// Node density multiplier on the head `[0, 50]`.
const HEAD_DENSITY: f64 = 10.0;
const T_RANGE: (f64, f64) = (500.0, 1e5);

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MomentCheck {
    pub k: usize,
    pub l: usize,
    #[serde(rename = "T")]
    pub t: f64,
    pub numeric_integral: f64,
    pub leading_term: f64,
    pub ratio: f64,
    /// Contribution of `[0, 50]`, included in `numeric_integral`.
    pub head_integral: f64,
    pub panels: usize,
}

/// `(−1)^d / (4^s (2s+1)) · T · log(T/2π)^(2s+1)` with `s = (k+ℓ)/2`,
/// `d = |k−ℓ|/2`.
pub fn leading_term(k: usize, l: usize, t: f64) -> f64 {
    let s = (k + l) / 2;
    let d = k.abs_diff(l) / 2;
    let sign = if d % 2 == 0 { 1.0 } else { -1.0 };
    let log = (t / (2.0 * std::f64::consts::PI)).ln();
    sign / (4f64.powi(s as i32) * (2 * s + 1) as f64) * t * log.powi(2 * s as i32 + 1)
}

fn rule() -> &'static [(f64, f64)] {
    static RULE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    RULE.get_or_init(|| {
        GaussLegendre::new(NonZeroUsize::new(NODES).unwrap())
            .as_node_weight_pairs()
            .to_vec()
    })
}

fn gauss<F: Fn(f64) -> Result<f64>>(f: &F, a: f64, b: f64) -> Result<f64> {
    let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
    let mut s = 0.0;
    for &(x, w) in rule() {
        s += w * f(mid + half * x)?;
    }
    Ok(s * half)
}

/// Gauss–Legendre on `[a, b]`, checked against the two halves and
/// subdivided until they agree.
fn adaptive<F: Fn(f64) -> Result<f64>>(f: &F, a: f64, b: f64, whole: f64, tol: f64, depth: u32) -> Result<f64> {
    let m = 0.5 * (a + b);
    let (l, r) = (gauss(f, a, m)?, gauss(f, m, b)?);
    let err = (l + r - whole).abs();
    if err <= tol {
        return Ok(l + r);
    }
    if depth == MAX_DEPTH {
        return Err(Error::QuadratureDiverged { a, b, err });
    }
    Ok(adaptive(f, a, m, l, 0.5 * tol, depth + 1)? + adaptive(f, m, b, r, 0.5 * tol, depth + 1)?)
}

/// Splits `[a, b]` into equal panels no wider than `width(b)`.
fn panels(a: f64, b: f64, width: impl Fn(f64) -> f64) -> Vec<(f64, f64)> {
    let n = ((b - a) / width(b)).ceil().max(1.0) as usize;
    let g = grid(a, b, n);
    g.windows(2).map(|w| (w[0], w[1])).collect()
}

/// `∫₀^T Z^(k) Z^(ℓ) dt` compared with the leading term of its asymptotic
/// expansion. The range `[50, T]` is cut at the refined sign changes of the
/// product and each piece is split into panels no wider than half the local
/// zero spacing; `[0, 50]` uses the Euler–Maclaurin path with ten times the
/// panel density and a fixed number of terms.
pub fn moment_check(k: usize, l: usize, t: f64) -> Result<MomentCheck> {
    check_even(k, l)?;
    if !(t >= T_RANGE.0 && t <= T_RANGE.1) {
        return Err(Error::InvalidArgument(format!(
            "T = {t} must lie in [{}, {}]",
            T_RANGE.0, T_RANGE.1
        )));
    }
    let kmax = k.max(l);
    let half_spacing = |x: f64| 0.5 * mean_zero_spacing(x.max(MIN_HEIGHT));
    let scale = (t / (2.0 * std::f64::consts::PI)).ln().powi((k + l) as i32);

    let head_terms = zfun::em_terms(MIN_HEIGHT);
    let head_f = |x: f64| -> Result<f64> {
        let all = zfun::z_all_em_fixed(x, kmax, head_terms)?;
        Ok(all[k].value * all[l].value)
    };
    let head_panels = panels(0.0, MIN_HEIGHT, |x| half_spacing(x) / HEAD_DENSITY);

    let main_f = |x: f64| super::product(k, l, x);
    // breakpoints at the sign changes of the product
    let n = ((t - MIN_HEIGHT) / (0.5 * half_spacing(t))).ceil() as usize;
    let nodes = grid(MIN_HEIGHT, t, n);
    let values = sample(&nodes, main_f)?;
    let mut cuts = vec![MIN_HEIGHT];
    for (_, c) in crossings(&nodes, &values, &main_f, 1e-10) {
        if let Crossing::At(r) = c {
            cuts.push(r);
        }
    }
    // the main sum gains a term at 2πn², a small jump in the evaluator
    cuts.extend(zfun::rs_breakpoints(MIN_HEIGHT, t));
    cuts.push(t);
    cuts.sort_by(f64::total_cmp);
    let main_panels: Vec<(f64, f64)> = cuts
        .windows(2)
        .filter(|w| w[1] > w[0])
        .flat_map(|w| panels(w[0], w[1], half_spacing))
        .collect();

    let integrate = |f: &(dyn Fn(f64) -> Result<f64> + Sync), ps: &[(f64, f64)]| -> Result<f64> {
        let parts: Vec<Result<f64>> = ps
            .par_iter()
            .map(|&(a, b)| {
                let whole = gauss(&f, a, b)?;
                // per unit length, above the rounding noise of the evaluator
                let tol = 1e-10 * scale.max(1.0) * (b - a);
                adaptive(&f, a, b, whole, tol, 0)
            })
            .collect();
        parts.into_iter().sum()
    };
    let head = integrate(&head_f, &head_panels)?;
    let main = integrate(&main_f, &main_panels)?;
    let numeric = head + main;
    let lead = leading_term(k, l, t);
    Ok(MomentCheck {
        k,
        l,
        t,
        numeric_integral: numeric,
        leading_term: lead,
        ratio: numeric / lead,
        head_integral: head,
        panels: head_panels.len() + main_panels.len(),
    })
}
