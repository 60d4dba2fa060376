//! Riemann–Siegel theta function.
//!
//! Two evaluations: the asymptotic series (fast, used with the
//! Riemann–Siegel formula) and `Im ln Γ(1/4 + it/2) − (t/2) ln π` through a
//! shifted Stirling series (valid for every real `t`, used with the
//! Euler–Maclaurin path).

use std::f64::consts::PI;

use num_complex::Complex64;

use super::jet::Jet;

/// Coefficients of `t^(1−2j)`, `j = 1, 2, …` in the asymptotic series.
const ASYMPTOTIC: [f64; 6] = [
    1.0 / 48.0,
    7.0 / 5760.0,
    31.0 / 80640.0,
    127.0 / 430080.0,
    511.0 / 1216512.0,
    1414477.0 / 1476034560.0,
];
/// First omitted coefficient, used as the truncation estimate.
const ASYMPTOTIC_NEXT: f64 = 57337.0 / 17891328.0;

/// Asymptotic series as a jet, with the jet of the first omitted term.
pub(super) fn theta_asymptotic<const N: usize>(t0: f64) -> (Jet<f64, N>, Jet<f64, N>) {
    let t = Jet::<f64, N>::variable(t0);
    let log_t = t.scale(1.0 / (2.0 * PI)).ln();
    let mut th = (t * log_t).scale(0.5) - t.scale(0.5);
    th = th.add_scalar(-PI / 8.0);
    let inv = t.recip();
    let inv2 = inv * inv;
    let mut pw = inv;
    for c in ASYMPTOTIC {
        th = th + pw.scale(c);
        pw = pw * inv2;
    }
    (th, pw.scale(ASYMPTOTIC_NEXT))
}

/// Bernoulli numbers `B₂, B₄, …, B₁₆`.
pub(super) const BERNOULLI: [f64; 8] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
];

/// `ln Γ(z)` for `Re z > 0` via Stirling's series after shifting `|z| ≥ 15`.
fn ln_gamma<const N: usize>(z: Jet<Complex64, N>) -> Jet<Complex64, N> {
    let mut shift = Jet::constant(Complex64::new(0.0, 0.0));
    let mut w = z;
    while w.value().norm() < 15.0 {
        shift = shift + w.ln();
        w = w.add_scalar(Complex64::new(1.0, 0.0));
    }
    let ln_w = w.ln();
    let mut s = (w.add_scalar(Complex64::new(-0.5, 0.0)) * ln_w - w)
        .add_scalar(Complex64::new(0.5 * (2.0 * PI).ln(), 0.0));
    let inv = w.recip();
    let inv2 = inv * inv;
    let mut pw = inv;
    for (i, b) in BERNOULLI.iter().enumerate() {
        let k = (i + 1) as f64;
        s = s + pw.scale(Complex64::new(b / (2.0 * k * (2.0 * k - 1.0)), 0.0));
        pw = pw * inv2;
    }
    s - shift
}

/// `θ(t)` through the log-Gamma function, for any real `t`.
pub(super) fn theta_loggamma<const N: usize>(t0: f64) -> Jet<f64, N> {
    let t = Jet::<f64, N>::variable(t0);
    let z = t
        .to_complex()
        .scale(Complex64::new(0.0, 0.5))
        .add_scalar(Complex64::new(0.25, 0.0));
    ln_gamma(z).im() - t.scale(0.5 * PI.ln())
}
