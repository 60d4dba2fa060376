use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::exactq::{format_rational, pow, to_f64, Rational};

/// Finite Laurent polynomial in `ϑ` with exact coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ThetaLaurent {
    coeffs: BTreeMap<i32, Rational>,
}

impl ThetaLaurent {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `Σ cᵢ ϑ^(i + shift)` from dense coefficients `cᵢ`.
    pub fn from_dense(coeffs: &[Rational], shift: i32) -> Self {
        let mut out = Self::zero();
        for (i, c) in coeffs.iter().enumerate() {
            out.add_term(i as i32 + shift, c.clone());
        }
        out
    }

    pub fn add_term(&mut self, power: i32, c: Rational) {
        let e = self.coeffs.entry(power).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&power);
        }
    }

    pub fn coeff(&self, power: i32) -> Rational {
        self.coeffs.get(&power).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &Rational)> {
        self.coeffs.iter().map(|(p, c)| (*p, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_power(&self) -> Option<i32> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_power(&self) -> Option<i32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero();
        for (p, x) in &self.coeffs {
            out.add_term(*p, x * c);
        }
        out
    }

    /// Exact value at `ϑ ≠ 0`.
    pub fn eval(&self, theta: &Rational) -> Rational {
        assert!(!theta.is_zero(), "ThetaLaurent evaluated at zero");
        let inv = theta.recip();
        self.coeffs
            .iter()
            .map(|(&p, c)| {
                let base = if p >= 0 { theta } else { &inv };
                c * pow(base, p.unsigned_abs())
            })
            .sum()
    }

    pub fn eval_f64(&self, theta: f64) -> f64 {
        self.coeffs.iter().map(|(&p, c)| to_f64(c) * theta.powi(p)).sum()
    }

    /// `{"-4": "1/1512", …}` keyed by the power of `ϑ`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Object(
            self.coeffs
                .iter()
                .map(|(p, c)| (p.to_string(), serde_json::Value::String(format_rational(c))))
                .collect(),
        )
    }
}

impl fmt::Display for ThetaLaurent {
    /// Descending powers: `52/1215·ϑ + 491/5040 + 563/6300/ϑ + 659/16200/ϑ^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (&p, c)) in self.coeffs.iter().rev().enumerate() {
            let mag = format_rational(&c.abs());
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            match p {
                0 => write!(f, "{mag}")?,
                1 => write!(f, "{mag}·ϑ")?,
                -1 => write!(f, "{mag}/ϑ")?,
                p if p > 1 => write!(f, "{mag}·ϑ^{p}")?,
                p => write!(f, "{mag}/ϑ^{}", -p)?,
            }
        }
        Ok(())
    }
}

impl std::ops::Add for &ThetaLaurent {
    type Output = ThetaLaurent;
    fn add(self, rhs: &ThetaLaurent) -> ThetaLaurent {
        let mut out = self.clone();
        for (p, c) in &rhs.coeffs {
            out.add_term(*p, c.clone());
        }
        out
    }
}

impl std::ops::Mul for &ThetaLaurent {
    type Output = ThetaLaurent;
    fn mul(self, rhs: &ThetaLaurent) -> ThetaLaurent {
        let mut out = ThetaLaurent::zero();
        for (p, a) in &self.coeffs {
            for (q, b) in &rhs.coeffs {
                out.add_term(p + q, a * b);
            }
        }
        out
    }
}
