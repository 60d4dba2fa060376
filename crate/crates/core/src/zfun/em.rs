//! Euler–Maclaurin evaluation of `ζ(1/2 + it)`:
//!
//! `ζ(s) = Σ_{n<N} n^(−s) + N^(1−s)/(s−1) + N^(−s)/2 + Σ_{j≤M} B₂ⱼ/(2j)! · s(s+1)⋯(s+2j−2) N^(−s−2j+1) + R`
//!
//! with `|R| ≤ |s+2M+1|/(σ+2M+1) · |term M+1|`.

use num_complex::Complex64;

use super::jet::{factorial, Jet};
use super::theta::{theta_loggamma, BERNOULLI};

/// Number of Bernoulli correction terms.
pub(super) const CORRECTION_TERMS: usize = 6;

/// Default number of leading terms for height `t`.
pub(super) fn default_terms(t: f64) -> usize {
    (5.0 + t.abs() / 2.0).ceil() as usize
}

type CJet<const N: usize> = Jet<Complex64, N>;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `ζ(1/2 + it)` as a jet in `t`, with per-order error bounds.
pub(super) fn zeta_em_jet<const N: usize>(t0: f64, n_terms: usize) -> (CJet<N>, [f64; N]) {
    let n_terms = n_terms.max(2);
    let mut head = [c(0.0, 0.0); N];
    let mut round = [0.0; N];
    for n in 1..n_terms {
        let ln_n = (n as f64).ln();
        let amp = 1.0 / (n as f64).sqrt();
        // t₀·ln n split into a rounded product and its exact residual
        let p = t0 * ln_n;
        let r = t0.mul_add(ln_n, -p);
        let (sp, cp) = p.sin_cos();
        let (s, co) = (sp + r * cp, cp - r * sp);
        // d/dt n^(−1/2 − it) = −i ln n · n^(−1/2 − it)
        let mut term = c(amp * co, -amp * s);
        let step = c(0.0, -ln_n);
        // ln n itself carries half an ulp of relative error
        let phase_err = f64::EPSILON * (t0.abs() * ln_n + 4.0);
        for (j, h) in head.iter_mut().enumerate() {
            *h += term;
            round[j] += amp * phase_err * ln_n.powi(j as i32) / factorial(j);
            term = term * step / (j as f64 + 1.0);
        }
    }

    let t = Jet::<f64, N>::variable(t0).to_complex();
    let s = t.scale(c(0.0, 1.0)).add_scalar(c(0.5, 0.0));
    let big_n = n_terms as f64;
    let ln_big_n = big_n.ln();
    let n_pow_s = s.scale(c(-ln_big_n, 0.0)).exp(); // N^(−s)
    let tail = (n_pow_s.scale(c(big_n, 0.0)) * s.add_scalar(c(-1.0, 0.0)).recip())
        + n_pow_s.scale(c(0.5, 0.0));

    let mut zeta = Jet(head) + tail;
    // s(s+1)⋯(s+2j−2), extended two factors at a time.
    let mut poch = s;
    let mut n_pow = 1.0 / big_n; // N^(1−2j)
    let mut next = Jet::<Complex64, N>::constant(c(0.0, 0.0));
    for j in 1..=CORRECTION_TERMS + 1 {
        let coef = BERNOULLI[j - 1] / factorial(2 * j) * n_pow;
        let term = (poch * n_pow_s).scale(c(coef, 0.0));
        if j <= CORRECTION_TERMS {
            zeta = zeta + term;
        } else {
            next = term;
        }
        let a = 2.0 * j as f64 - 1.0;
        poch = poch * s.add_scalar(c(a, 0.0)) * s.add_scalar(c(a + 1.0, 0.0));
        n_pow /= big_n * big_n;
    }

    let m = CORRECTION_TERMS as f64;
    let factor = c(0.5 + 2.0 * m + 1.0, t0).norm() / (0.5 + 2.0 * m + 1.0);
    let mut err = [0.0; N];
    for k in 0..N {
        err[k] = (factor * next.0[k].norm() + round[k] + f64::EPSILON * zeta.0[k].norm())
            * factorial(k);
    }
    (zeta, err)
}

/// `Z = Re(e^(iθ) ζ(1/2 + it))` as a jet, with per-order error bounds and the
/// size of the discarded imaginary part (a consistency signal).
pub(super) fn z_em_jet<const N: usize>(t0: f64, n_terms: usize) -> (Jet<f64, N>, [f64; N], f64) {
    let (zeta, mut err) = zeta_em_jet::<N>(t0, n_terms);
    let theta = theta_loggamma::<N>(t0);
    let rot = theta.to_complex().scale(c(0.0, 1.0)).exp();
    let z = rot * zeta;
    let zr = z.re();
    for (k, e) in err.iter_mut().enumerate() {
        // θ carries a relative rounding error of a few ulps
        *e += 8.0 * f64::EPSILON * theta.value().abs().max(1.0) * zeta.0[0].norm() * 2f64.powi(k as i32);
    }
    (zr, err, z.value().im.abs())
}
