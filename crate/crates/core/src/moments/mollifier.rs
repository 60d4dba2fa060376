use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactq::{int, rat, MPoly, Rational, Var};

/// Mollifier polynomial `P`, univariate in `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct MollifierPoly {
    coeffs: Vec<Rational>,
}

impl MollifierPoly {
    /// From ascending coefficients `[c₀, c₁, …]`.
    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        MollifierPoly { coeffs }
    }

    /// `xᵈ`.
    pub fn monomial(d: usize) -> Self {
        let mut c = vec![Rational::zero(); d + 1];
        c[d] = Rational::one();
        Self::from_coeffs(c)
    }

    /// Accepts any polynomial in at most one variable.
    pub fn from_mpoly(p: &MPoly) -> Result<Self> {
        let used = p.used_vars();
        match used.as_slice() {
            [] => Ok(Self::from_coeffs(vec![p.constant_term()])),
            [v] => Ok(Self::from_coeffs(p.univariate_coeffs(v).expect("single variable"))),
            _ => Err(Error::PolynomialPrecondition(format!(
                "mollifier must be univariate, found variables {used:?}"
            ))),
        }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn to_mpoly(&self, v: &Var) -> MPoly {
        MPoly::from_terms(
            &[v.clone()],
            self.coeffs.iter().enumerate().map(|(i, c)| (vec![i as u8], c.clone())),
        )
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * int(i as i64))
                .collect(),
        )
    }

    /// Coefficients as `f64`, ascending.
    pub fn coeffs_f64(&self) -> Vec<f64> {
        self.coeffs.iter().map(crate::exactq::to_f64).collect()
    }

    pub fn is_normalized(&self) -> bool {
        self.eval(&Rational::one()).is_one()
    }

    /// `P(0) = 0`.
    pub fn check_second(&self) -> Result<()> {
        if !self.eval(&Rational::zero()).is_zero() {
            return Err(Error::PolynomialPrecondition(format!(
                "second-moment mollifier needs P(0) = 0, got P = {}",
                self.to_mpoly(&Var::new("x"))
            )));
        }
        Ok(())
    }

    /// `P(0) = P'(0) = 0`.
    pub fn check_fourth(&self) -> Result<()> {
        self.check_second()?;
        if !self.derivative().eval(&Rational::zero()).is_zero() {
            return Err(Error::PolynomialPrecondition(format!(
                "fourth-moment mollifier needs P'(0) = 0, got P = {}",
                self.to_mpoly(&Var::new("x"))
            )));
        }
        Ok(())
    }
}

/// `R_k(x) = (x + 1/2)^k` in the variable `v`.
pub fn r_poly(k: u32, v: &Var) -> MPoly {
    (&MPoly::var(&[], v) + &MPoly::constant(&[], rat(1, 2))).pow(k)
}
