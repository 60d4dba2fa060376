//! Riemann–Siegel formula
//!
//! `Z(t) = 2 Σ_{n≤N} n^(−1/2) cos(θ(t) − t ln n) + (−1)^(N−1) τ^(−1/4) Σⱼ Cⱼ(p) τ^(−j/2)`
//!
//! with `τ = t/2π`, `N = ⌊√τ⌋`, `p = √τ − N` and five correction terms.

use std::f64::consts::PI;

use super::jet::Jet;
use super::rs_tables::{C0, C1, C2, C3, C4};
use super::theta::theta_asymptotic;

const CORRECTIONS: [&[f64]; 5] = [&C0, &C1, &C2, &C3, &C4];

/// Empirical bound on the first omitted correction `|C₅|`.
const NEXT_CORRECTION: f64 = 2e-4;

/// `Z` and its first `N − 1` derivatives at `t0`, with per-order error
/// estimates.
pub(super) fn z_rs_jet<const N: usize>(t0: f64) -> (Jet<f64, N>, [f64; N]) {
    let t = Jet::<f64, N>::variable(t0);
    let tau = t.scale(1.0 / (2.0 * PI));
    let a = tau.powf(0.5);
    let n_main = a.value().floor() as usize;
    let w = a.add_scalar(-(n_main as f64) - 0.5);
    let (theta, theta_next) = theta_asymptotic::<N>(t0);

    let mut main = Jet::<f64, N>::constant(0.0);
    let mut weight_sum = 0.0;
    for n in 1..=n_main {
        let ln_n = (n as f64).ln();
        let phase = theta - t.scale(ln_n);
        let (_, c) = phase.sin_cos();
        let amp = 2.0 / (n as f64).sqrt();
        main = main + c.scale(amp);
        weight_sum += amp;
    }

    let inv_sqrt_tau = tau.powf(-0.5);
    let mut corr = Jet::<f64, N>::constant(0.0);
    let mut pw = Jet::<f64, N>::constant(1.0);
    for c in CORRECTIONS {
        corr = corr + w.compose_poly(c) * pw;
        pw = pw * inv_sqrt_tau;
    }
    let sign = if n_main % 2 == 1 { 1.0 } else { -1.0 };
    let z = main + (tau.powf(-0.25) * corr).scale(sign);

    // Truncation: next correction term, whose derivatives are dominated by
    // the slowly varying τ-power (p moves at rate ~ 1/(4π√τ)).
    let tau0 = tau.value();
    let trunc = NEXT_CORRECTION * tau0.powf(-2.75);
    let ln_n_max = (n_main.max(1) as f64).ln();
    let freq = 0.5 * tau0.ln().abs() + ln_n_max + 1.0;
    let phase_err = 4.0 * f64::EPSILON * (theta.value().abs() + t0 * ln_n_max + 1.0);
    let mut err = [0.0; N];
    for (k, e) in err.iter_mut().enumerate() {
        let theta_trunc = theta_next.derivative(k).abs() * weight_sum;
        *e = trunc * 4f64.powi(k as i32)
            + theta_trunc
            + weight_sum * phase_err * freq.powi(k as i32)
            + f64::EPSILON * z.derivative(k).abs();
    }
    (z, err)
}
