//! Richardson-extrapolated central differences of `Z`, evaluated on the
//! Euler–Maclaurin path with the number of leading terms frozen across the
//! stencil so the sampled function is smooth in `t`.

use super::em::{default_terms, z_em_jet};
use crate::{Error, Result};

/// Richardson levels (step ratio 2).
pub(super) const LEVELS: usize = 4;

/// Base step for order `k` at height `t`: a fixed fraction of the local
/// oscillation length, widened with `k` so that cancellation stays bounded.
pub fn base_step(t: f64, k: usize) -> f64 {
    let freq = 0.5 * (t.abs().max(2.0 * std::f64::consts::PI) / (2.0 * std::f64::consts::PI)).ln() + 1.0;
    STEP_SCALE[k.min(STEP_SCALE.len() - 1)] / freq
}

/// Step scale per derivative order, in units of the oscillation length.
const STEP_SCALE: [f64; 9] = [1.0, 1.0, 1.0, 1.4, 1.4, 2.0, 2.0, 2.4, 2.8];

fn binomial(n: usize, j: usize) -> f64 {
    (0..j).fold(1.0, |a, i| a * (n - i) as f64 / (i + 1) as f64)
}

/// Non-smooth part of the evaluation error: rounding in the phases of the
/// leading terms and in `θ`, which is large (`~ t log t`). The truncation
/// error of the Euler–Maclaurin tail is smooth in `t` and is differentiated
/// along with `Z`, so it does not enter here.
fn jitter(t: f64, n_terms: usize, size: f64) -> f64 {
    let theta = 0.5 * t.abs() * (t.abs() / (2.0 * std::f64::consts::PI)).ln().abs() + 1.0;
    f64::EPSILON * (8.0 * (n_terms as f64).sqrt() + 4.0 * theta * size.max(1.0))
}

pub(super) struct FdResult {
    pub value: f64,
    pub abs_error_est: f64,
}

/// `k`-th derivative of `Z` at `t0` from a `LEVELS`-level tableau with base
/// step `h0`.
pub(super) fn z_fd(t0: f64, k: usize, h0: f64) -> Result<FdResult> {
    let n_terms = default_terms(t0.abs() + k as f64 * h0);
    let f = |t: f64| z_em_jet::<1>(t, n_terms).0.value();
    if k == 0 {
        let (z, err, _) = z_em_jet::<1>(t0, n_terms);
        return Ok(FdResult { value: z.value(), abs_error_est: err[0] });
    }

    let weights: Vec<f64> = (0..=k)
        .map(|j| if j % 2 == 0 { 1.0 } else { -1.0 } * binomial(k, j))
        .collect();
    let weight_sum: f64 = weights.iter().map(|w| w.abs()).sum();

    let mut tableau = [[0.0f64; LEVELS]; LEVELS];
    let mut noise = 0.0f64;
    for i in 0..LEVELS {
        let h = h0 / 2f64.powi(i as i32);
        let mut acc = 0.0;
        let mut size = 0.0f64;
        for (j, w) in weights.iter().enumerate() {
            let v = f(t0 + (k as f64 / 2.0 - j as f64) * h);
            acc += w * v;
            size = size.max(v.abs());
        }
        tableau[i][0] = acc / h.powi(k as i32);
        noise = noise.max(jitter(t0, n_terms, size) * weight_sum / h.powi(k as i32));
        for j in 1..=i {
            let r = 4f64.powi(j as i32);
            tableau[i][j] = tableau[i][j - 1] + (tableau[i][j - 1] - tableau[i - 1][j - 1]) / (r - 1.0);
        }
    }
    let last = LEVELS - 1;
    let value = tableau[last][last];
    let delta = (value - tableau[last - 1][last - 1]).abs();
    let prev = (tableau[last - 1][last - 1] - tableau[last - 2][last - 2]).abs();
    // the extrapolation roughly doubles the propagated noise
    let noise = 2.0 * noise;
    if !value.is_finite() {
        return Err(Error::NonFinite(t0));
    }
    if delta > prev.max(noise) && delta > 1e-6 * value.abs().max(1.0) {
        return Err(Error::RichardsonDiverged { t: t0, k, delta });
    }
    // truncation of the sampled Euler–Maclaurin approximation itself
    let (_, em_err, _) = z_em_jet::<9>(t0, n_terms);
    Ok(FdResult { value, abs_error_est: delta + noise + em_err[k] })
}
