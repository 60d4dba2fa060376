use num_traits::{One, Signed};
use serde::Serialize;

use super::fourth::t_coefficient;
use super::mollifier::MollifierPoly;
use super::second::s_coefficient;
use super::MomentConstant;
use crate::error::{Error, Result};
use crate::exactq::{to_f64, Rational};

/// Which sign of `Z⁽ᵏ⁾Z⁽ˡ⁾` the bound applies to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SignSet {
    Positive,
    Negative,
}

#[derive(Debug, Clone)]
pub struct ProportionBound {
    pub k: u32,
    pub l: u32,
    pub theta: Rational,
    pub s_value: Rational,
    pub t_value: Rational,
    /// `𝒮²/𝒯` at `ϑ`.
    pub bound: Rational,
    pub sign_set: SignSet,
}

impl ProportionBound {
    pub fn bound_f64(&self) -> f64 {
        to_f64(&self.bound)
    }
}

/// Lower bound `𝒮²/𝒯` for the proportion of `t ∈ [T, 2T]` where
/// `Z⁽ᵏ⁾Z⁽ˡ⁾` has sign `(−1)^(ℓ+s)`.
pub fn proportion_bound(
    k: u32,
    l: u32,
    p: &MollifierPoly,
    theta: &Rational,
) -> Result<ProportionBound> {
    check_theta(theta)?;
    let s = s_coefficient(k, l, p)?;
    let t = t_coefficient(k, l, p)?;
    proportion_bound_from(&s, &t, theta)
}

/// Same as [`proportion_bound`] for already computed constants.
pub fn proportion_bound_from(
    s: &MomentConstant,
    t: &MomentConstant,
    theta: &Rational,
) -> Result<ProportionBound> {
    check_theta(theta)?;
    let (k, l) = s.indices;
    let s_value = s.value.eval(theta);
    let t_value = t.value.eval(theta);
    if !t_value.is_positive() {
        return Err(Error::InvalidArgument(format!(
            "fourth-moment constant is not positive at ϑ = {theta}: {t_value}"
        )));
    }
    let half = (k + l) / 2;
    let sign_set = if (l + half) % 2 == 0 {
        SignSet::Positive
    } else {
        SignSet::Negative
    };
    Ok(ProportionBound {
        k,
        l,
        theta: theta.clone(),
        bound: &s_value * &s_value / &t_value,
        s_value,
        t_value,
        sign_set,
    })
}

fn check_theta(theta: &Rational) -> Result<()> {
    if !theta.is_positive() || *theta >= Rational::one() {
        return Err(Error::InvalidArgument(format!(
            "ϑ must lie in (0, 1), got {theta}"
        )));
    }
    Ok(())
}
