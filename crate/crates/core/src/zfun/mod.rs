//! Hardy's Z-function `Z(t) = e^(iθ(t)) ζ(1/2 + it)` and its derivatives.
//!
//! Two independent evaluation paths: the Riemann–Siegel formula (default for
//! `t ≥ 50`) and Euler–Maclaurin summation of `ζ` (any real `t`). Derivatives
//! come from Taylor-mode propagation through either path; Richardson
//! extrapolated finite differences serve as a third, independent check.

mod em;
mod fd;
pub mod jet;
mod rs;
mod rs_tables;
mod theta;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};
pub use fd::base_step;
use jet::Jet;

/// Highest supported derivative order.
pub const MAX_ORDER: usize = 8;
/// Below this height `z` uses the Euler–Maclaurin path.
pub const RS_THRESHOLD: f64 = 50.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    RiemannSiegel,
    EulerMaclaurin,
    FiniteDifference,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::RiemannSiegel => "riemann-siegel",
            Method::EulerMaclaurin => "euler-maclaurin",
            Method::FiniteDifference => "finite-difference",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ZEval {
    pub t: f64,
    pub k: usize,
    pub value: f64,
    pub abs_error_est: f64,
    pub method: Method,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThetaEval {
    pub t: f64,
    pub value: f64,
    pub derivative_order: usize,
    pub abs_error_est: f64,
}

fn check_finite(t: f64) -> Result<()> {
    if t.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite(t))
    }
}

fn check_min(t: f64, min: f64, reason: &'static str) -> Result<()> {
    check_finite(t)?;
    if t < min {
        return Err(Error::HeightOutOfRange { t, reason });
    }
    Ok(())
}

fn check_order(k: usize) -> Result<()> {
    if k > MAX_ORDER {
        return Err(Error::InvalidArgument(format!(
            "derivative order {k} exceeds {MAX_ORDER}"
        )));
    }
    Ok(())
}

/// Runs `$body` with the const `$n` bound to `$len` (1 through 9).
macro_rules! with_len {
    ($len:expr, $n:ident => $body:expr) => {
        match $len {
            1 => { const $n: usize = 1; $body }
            2 => { const $n: usize = 2; $body }
            3 => { const $n: usize = 3; $body }
            4 => { const $n: usize = 4; $body }
            5 => { const $n: usize = 5; $body }
            6 => { const $n: usize = 6; $body }
            7 => { const $n: usize = 7; $body }
            8 => { const $n: usize = 8; $body }
            9 => { const $n: usize = 9; $body }
            _ => unreachable!("jet length out of range"),
        }
    };
}

/// `θ(t)` or one of its first two derivatives, `t ≥ 10`.
pub fn theta(t: f64, order: usize) -> Result<ThetaEval> {
    check_min(t, 10.0, "theta expansion needs t >= 10")?;
    if order > 2 {
        return Err(Error::InvalidArgument(format!("theta order {order} exceeds 2")));
    }
    let (th, next) = theta::theta_asymptotic::<3>(t);
    let value = th.derivative(order);
    Ok(ThetaEval {
        t,
        value,
        derivative_order: order,
        abs_error_est: next.derivative(order).abs() + 4.0 * f64::EPSILON * value.abs().max(1e-300),
    })
}

/// All orders `0..=kmax` in one pass of the chosen path.
fn jet_eval(t: f64, kmax: usize, method: Method) -> Vec<ZEval> {
    let (vals, errs): (Vec<f64>, Vec<f64>) = with_len!(kmax + 1, L => {
        let (z, err): (Jet<f64, L>, [f64; L]) = match method {
            Method::RiemannSiegel => rs::z_rs_jet::<L>(t),
            _ => {
                let (z, err, _) = em::z_em_jet::<L>(t, em::default_terms(t));
                (z, err)
            }
        };
        ((0..L).map(|k| z.derivative(k)).collect(), err.to_vec())
    });
    vals.into_iter()
        .zip(errs)
        .enumerate()
        .map(|(k, (value, e))| ZEval { t, k, value, abs_error_est: e.max(f64::MIN_POSITIVE), method })
        .collect()
}

fn default_method(t: f64) -> Method {
    if t >= RS_THRESHOLD {
        Method::RiemannSiegel
    } else {
        Method::EulerMaclaurin
    }
}

/// `Z(t)` for `t ≥ 10`: Riemann–Siegel from `t = 50`, Euler–Maclaurin below.
pub fn z(t: f64) -> Result<ZEval> {
    check_min(t, 10.0, "Z evaluation needs t >= 10")?;
    Ok(jet_eval(t, 0, default_method(t))[0])
}

/// `Z(t)` on the Riemann–Siegel path, `t ≥ 10`.
pub fn z_rs(t: f64) -> Result<ZEval> {
    check_min(t, 10.0, "Riemann-Siegel path needs t >= 10")?;
    Ok(jet_eval(t, 0, Method::RiemannSiegel)[0])
}

/// `Z(t)` on the Euler–Maclaurin path, any real `t`.
pub fn z_em(t: f64) -> Result<ZEval> {
    check_finite(t)?;
    Ok(jet_eval(t, 0, Method::EulerMaclaurin)[0])
}

/// `ζ(1/2 + it)` by Euler–Maclaurin, with an absolute error bound.
pub fn zeta_half_line(t: f64) -> Result<(Complex64, f64)> {
    check_finite(t)?;
    let (z, err) = em::zeta_em_jet::<1>(t, em::default_terms(t));
    Ok((z.value(), err[0]))
}

/// `Z^(k)(t)` for `t ≥ 20`, `k ≤ 8`.
pub fn z_deriv(t: f64, k: usize) -> Result<ZEval> {
    check_min(t, 20.0, "derivatives need t >= 20")?;
    check_order(k)?;
    Ok(jet_eval(t, k, default_method(t))[k])
}

/// `Z^(k)(t)` on an explicit path. Riemann–Siegel needs `t ≥ 10`; the other
/// two accept any real `t`, which makes the reflection `t ↦ −t` testable.
pub fn z_deriv_with(t: f64, k: usize, method: Method) -> Result<ZEval> {
    check_finite(t)?;
    check_order(k)?;
    match method {
        Method::RiemannSiegel => {
            check_min(t, 10.0, "Riemann-Siegel path needs t >= 10")?;
            Ok(jet_eval(t, k, method)[k])
        }
        Method::EulerMaclaurin => Ok(jet_eval(t, k, method)[k]),
        Method::FiniteDifference => z_deriv_fd(t, k, base_step(t, k)),
    }
}

/// Finite-difference derivative with an explicit base step.
pub fn z_deriv_fd(t: f64, k: usize, h0: f64) -> Result<ZEval> {
    check_finite(t)?;
    check_order(k)?;
    if !(h0 > 0.0 && h0.is_finite()) {
        return Err(Error::InvalidArgument(format!("step {h0} must be positive")));
    }
    let r = fd::z_fd(t, k, h0)?;
    Ok(ZEval { t, k, value: r.value, abs_error_est: r.abs_error_est.max(f64::MIN_POSITIVE), method: Method::FiniteDifference })
}

/// `Z, Z′, …, Z^(kmax)` at `t ≥ 20` from a single evaluation.
pub fn z_all(t: f64, kmax: usize) -> Result<Vec<ZEval>> {
    check_min(t, 20.0, "derivatives need t >= 20")?;
    check_order(kmax)?;
    Ok(jet_eval(t, kmax, default_method(t)))
}

/// `Z, Z′, …, Z^(kmax)` on an explicit jet path (not finite differences).
pub fn z_all_with(t: f64, kmax: usize, method: Method) -> Result<Vec<ZEval>> {
    check_finite(t)?;
    check_order(kmax)?;
    match method {
        Method::RiemannSiegel => check_min(t, 10.0, "Riemann-Siegel path needs t >= 10")?,
        Method::EulerMaclaurin => {}
        Method::FiniteDifference => {
            return (0..=kmax).map(|k| z_deriv_fd(t, k, base_step(t, k))).collect()
        }
    }
    Ok(jet_eval(t, kmax, method))
}

/// Euler–Maclaurin jet with an explicit number of leading terms. Holding
/// `n_terms` fixed makes the result smooth in `t`, which quadrature and
/// differencing rely on; `n_terms` must exceed `|t|/2π` for accuracy.
pub fn z_all_em_fixed(t: f64, kmax: usize, n_terms: usize) -> Result<Vec<ZEval>> {
    check_finite(t)?;
    check_order(kmax)?;
    let (vals, errs): (Vec<f64>, Vec<f64>) = with_len!(kmax + 1, L => {
        let (z, err, _) = em::z_em_jet::<L>(t, n_terms);
        ((0..L).map(|k| z.derivative(k)).collect(), err.to_vec())
    });
    Ok(vals
        .into_iter()
        .zip(errs)
        .enumerate()
        .map(|(k, (value, e))| ZEval { t, k, value, abs_error_est: e.max(f64::MIN_POSITIVE), method: Method::EulerMaclaurin })
        .collect())
}

/// Number of leading terms the Euler–Maclaurin path uses at height `t`.
pub fn em_terms(t: f64) -> usize {
    em::default_terms(t)
}

/// Heights `2πn²` at which the Riemann–Siegel main sum gains a term.
pub fn rs_breakpoints(t_min: f64, t_max: f64) -> Vec<f64> {
    let two_pi = 2.0 * std::f64::consts::PI;
    let first = (t_min.max(0.0) / two_pi).sqrt().ceil() as usize;
    (first.max(1)..)
        .map(|n| two_pi * (n * n) as f64)
        .take_while(|&b| b <= t_max)
        .filter(|&b| b >= t_min)
        .collect()
}

/// Differentiated Riemann–Siegel main sum
/// `2 Σ_{n ≤ √(t/2π)} n^(−1/2) (θ′(t) − ln n)^k cos(θ(t) − t ln n + kπ/2)`,
/// a rough approximation to `Z^(k)(t)` without corrections or `θ″` terms.
pub fn z_deriv_main_sum(t: f64, k: usize) -> Result<f64> {
    check_min(t, 10.0, "main sum needs t >= 10")?;
    check_order(k)?;
    let th = theta(t, 0)?.value;
    let th1 = theta(t, 1)?.value;
    let n_max = (t / (2.0 * std::f64::consts::PI)).sqrt().floor() as usize;
    let shift = k as f64 * std::f64::consts::FRAC_PI_2;
    Ok((1..=n_max)
        .map(|n| {
            let ln_n = (n as f64).ln();
            2.0 / (n as f64).sqrt() * (th1 - ln_n).powi(k as i32) * (th - t * ln_n + shift).cos()
        })
        .sum())
}

/// Relative L² distance between the main-sum approximation and `Z^(k)` from
/// `method` over the sample heights.
pub fn main_sum_discrepancy(k: usize, ts: &[f64], method: Method) -> Result<f64> {
    let (mut num, mut den) = (0.0, 0.0);
    for &t in ts {
        let exact = z_deriv_with(t, k, method)?.value;
        let approx = z_deriv_main_sum(t, k)?;
        num += (exact - approx).powi(2);
        den += exact * exact;
    }
    Ok((num / den).sqrt())
}

/// Sign changes of `Z` on `(0, t_max]` seen on a grid of step `step`.
pub fn count_zeros_sign_scan(t_max: f64, step: f64) -> Result<usize> {
    check_finite(t_max)?;
    if !(step > 0.0) {
        return Err(Error::InvalidArgument("scan step must be positive".into()));
    }
    let n = (t_max / step).ceil() as usize;
    let mut count = 0;
    let mut prev = z_em(0.0)?.value;
    for i in 1..=n {
        let t = (i as f64 * step).min(t_max);
        let v = if t >= RS_THRESHOLD { z_rs(t)?.value } else { z_em(t)?.value };
        if v != 0.0 && prev != 0.0 && (v < 0.0) != (prev < 0.0) {
            count += 1;
        }
        if v != 0.0 {
            prev = v;
        }
    }
    Ok(count)
}

/// Zero count `θ(T)/π + 1` rounded to the nearest integer.
pub fn count_zeros_theta(t: f64) -> Result<usize> {
    Ok((theta(t, 0)?.value / std::f64::consts::PI + 1.0).round() as usize)
}
