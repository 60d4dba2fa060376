//! Leading constants of the mollified second and fourth moments of
//! `Z⁽ᵏ⁾Z⁽ˡ⁾`, the resulting lower bound for the measure of the sign sets,
//! and a numerical check of the divisor-sum lemma behind the fourth moment.
//!
//! `ϑ` is the mollifier length exponent (`y = T^ϑ`).

mod bound;
mod fourth;
mod laurent;
mod lemma;
pub mod mc;
mod mollifier;
mod second;

pub use bound::{proportion_bound, ProportionBound, SignSet};
pub use fourth::t_coefficient;
pub use laurent::ThetaLaurent;
pub use lemma::{em_lemma_check, em_lemma_naive_sum, LemmaReport};
pub use mollifier::{r_poly, MollifierPoly};
pub use second::{conrey_for_r, conrey_main_term, s_bracket, s_coefficient};

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MomentKind {
    /// Mollified second moment `∫ Z⁽ᵏ⁾Z⁽ˡ⁾|M|²`.
    S,
    /// Mollified fourth moment `∫ |Z⁽ᵏ⁾Z⁽ˡ⁾M²|²`.
    T,
    SecondMoment,
}

/// `value · T (log T)^log_power`.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentConstant {
    pub kind: MomentKind,
    pub indices: (u32, u32),
    pub value: ThetaLaurent,
    pub log_power: u32,
    pub t_power: u32,
}
