//! Exact integration over the polytope
//! `{t ∈ [0,1]⁴ : t₁+t₃ ≤ 1, t₂+t₄ ≤ 1, t₁+t₂ ≤ 1, t₃+t₄ ≤ 1}`.
//!
//! For fixed `(t₂, t₃)` both `t₁` and `t₄` range over `[0, 1 − max(t₂, t₃)]`,
//! so the region splits along `t₂ ≤ t₃` / `t₃ ≤ t₂` into two iterated
//! integrals with polynomial limits.

use super::mpoly::{MPoly, Var};
use super::rational::Rational;
use crate::error::{Error, Result};

/// Marker for the fixed four-dimensional region.
#[derive(Debug, Clone, Copy, Default)]
pub struct PolyRegionT;

impl PolyRegionT {
    pub fn contains(&self, t: [f64; 4]) -> bool {
        t.iter().all(|&x| (0.0..=1.0).contains(&x))
            && t[0] + t[2] <= 1.0
            && t[1] + t[3] <= 1.0
            && t[0] + t[1] <= 1.0
            && t[2] + t[3] <= 1.0
    }

    /// Integrates `p` over the region in the variables `t = [t₁, t₂, t₃, t₄]`.
    /// Other variables are carried through as polynomial coefficients.
    pub fn integrate(&self, p: &MPoly, t: &[Var; 4]) -> MPoly {
        let [t1, t2, t3, t4] = t;
        let zero = MPoly::zero(&[]);
        let one = MPoly::one(&[]);
        let branch = |hi: &Var, lo: &Var| {
            // t₁, t₄ ∈ [0, 1 − hi], lo ∈ [0, hi], hi ∈ [0, 1]
            let cap = &one - &MPoly::var(&[], hi);
            let q = p.integrate_between(t1, &zero, &cap);
            let q = q.integrate_between(t4, &zero, &cap);
            let q = q.integrate_between(lo, &zero, &MPoly::var(&[], hi));
            q.integrate_unit(hi)
        };
        let a = branch(t3, t2);
        let b = branch(t2, t3);
        &a + &b
    }

    /// Value of the integral of a polynomial that involves only `t`.
    pub fn integrate_value(&self, p: &MPoly, t: &[Var; 4]) -> Result<Rational> {
        let stray: Vec<_> = p.used_vars().into_iter().filter(|v| !t.contains(v)).collect();
        if !stray.is_empty() {
            return Err(Error::PolynomialPrecondition(format!(
                "region integrand may only involve {t:?}, found {stray:?}"
            )));
        }
        Ok(self
            .integrate(p, t)
            .as_constant()
            .expect("all region variables integrated out"))
    }
}

/// The canonical region variables `t1..t4`.
pub fn region_vars() -> [Var; 4] {
    [Var::new("t1"), Var::new("t2"), Var::new("t3"), Var::new("t4")]
}
