use num_traits::{One, Zero};

use super::laurent::ThetaLaurent;
use super::mollifier::{r_poly, MollifierPoly};
use super::{MomentConstant, MomentKind};
use crate::error::{Error, Result};
use crate::exactq::{int, pow, rat, MPoly, Rational, Var};

fn theta_var() -> Var {
    Var::new("th")
}

/// Univariate polynomial with its variable renamed to `to` and the argument
/// negated: `q(x) ↦ q(−to)`.
fn reflect(q: &MPoly, to: &Var) -> Result<MPoly> {
    let c = MollifierPoly::from_mpoly(q)?;
    let minus = -MPoly::var(&[], to);
    let x = Var::new("x");
    Ok(c.to_mpoly(&x).substitute(&x, &minus))
}

/// Main term of `∫ Q₁(…)ζ · Q₂(…)ζ · |M|²` with mollifier `P`:
///
/// `Q₁(0)Q₂(0)P(1)² + ϑ⁻¹ ∫₀¹∫₀¹ (Q₁(−t₁)P′(t₂) − ϑQ₁′(−t₁)P(t₂))(Q₂(−t₁)P′(t₂) − ϑQ₂′(−t₁)P(t₂))`.
pub fn conrey_main_term(q1: &MPoly, q2: &MPoly, p: &MollifierPoly) -> Result<ThetaLaurent> {
    p.check_second()?;
    let (t1, t2, th) = (Var::new("t1"), Var::new("t2"), theta_var());
    let x = Var::new("x");
    let pt = p.to_mpoly(&x).substitute(&x, &MPoly::var(&[], &t2));
    let dpt = pt.derivative(&t2);
    let thp = MPoly::var(&[], &th);

    let factor = |q: &MPoly| -> Result<(MPoly, Rational)> {
        let q_neg = reflect(q, &t1)?;
        // Q′(−t₁) = −d/dt₁ [Q(−t₁)]
        let dq_neg = -q_neg.derivative(&t1);
        let q0 = MollifierPoly::from_mpoly(q)?.eval(&Rational::zero());
        Ok((&(&q_neg * &dpt) - &(&thp * &(&dq_neg * &pt)), q0))
    };
    let (f1, q10) = factor(q1)?;
    let (f2, q20) = factor(q2)?;
    let integral = (&f1 * &f2).integrate_box(&[t1, t2]);
    let dense = integral
        .univariate_coeffs(&th)
        .expect("only ϑ remains after integration");

    let mut out = ThetaLaurent::from_dense(&dense, -1);
    let p1 = p.eval(&Rational::one());
    out.add_term(0, q10 * q20 * &p1 * &p1);
    Ok(out)
}

/// ϑ-dependent factor of the second-moment constant:
/// `1 + ∫P′²/(ϑ(2s+1)) + 4ϑkℓ∫P²/(2s−1)` with `s = (k+ℓ)/2`.
pub fn s_bracket(k: u32, l: u32, p: &MollifierPoly) -> Result<ThetaLaurent> {
    if (k + l) % 2 == 1 {
        return Err(Error::InvalidArgument(format!(
            "k + l must be even, got ({k},{l})"
        )));
    }
    p.check_second()?;
    let s = ((k + l) / 2) as i64;
    let x = Var::new("x");
    let px = p.to_mpoly(&x);
    let dp2 = px.derivative(&x).pow(2).integrate_unit(&x).constant_term();
    let p2 = px.pow(2).integrate_unit(&x).constant_term();

    let mut out = ThetaLaurent::zero();
    out.add_term(0, Rational::one());
    out.add_term(-1, dp2 / int(2 * s + 1));
    if k * l != 0 {
        out.add_term(1, int(4 * (k * l) as i64) * p2 / int(2 * s - 1));
    }
    Ok(out)
}

/// Leading constant of `∫ Z⁽ᵏ⁾Z⁽ˡ⁾|M|² ~ 𝒮 · T(log T)^(k+ℓ)`.
pub fn s_coefficient(k: u32, l: u32, p: &MollifierPoly) -> Result<MomentConstant> {
    let bracket = s_bracket(k, l, p)?;
    let s = (k + l) / 2;
    let sign = if (l + s) % 2 == 0 { int(1) } else { int(-1) };
    let value = bracket.scale(&(sign * pow(&rat(1, 4), s)));
    Ok(MomentConstant {
        kind: MomentKind::S,
        indices: (k, l),
        value,
        log_power: 2 * s,
        t_power: 1,
    })
}

/// `conrey_main_term(R_k, R_ℓ, P)`, which for normalized `P` reproduces the
/// bracket divided by `4^s`.
pub fn conrey_for_r(k: u32, l: u32, p: &MollifierPoly) -> Result<ThetaLaurent> {
    let x = Var::new("x");
    conrey_main_term(&r_poly(k, &x), &r_poly(l, &x), p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x2() -> MollifierPoly {
        MollifierPoly::monomial(2)
    }

    #[test]
    fn conrey_examples() {
        let one = MPoly::one(&[]);
        let c = conrey_main_term(&one, &one, &MollifierPoly::monomial(1)).unwrap();
        assert_eq!(c.coeff(0), int(1));
        assert_eq!(c.coeff(-1), int(1));
        assert_eq!(c.max_power(), Some(0));

        let zero = MPoly::zero(&[]);
        assert!(conrey_main_term(&zero, &zero, &x2()).unwrap().is_zero());

        let c = conrey_for_r(1, 1, &x2()).unwrap();
        assert_eq!(c.coeff(0), rat(1, 4));
        assert_eq!(c.coeff(-1), rat(1, 9));
        assert_eq!(c.coeff(1), rat(1, 5));

        assert!(conrey_main_term(&one, &one, &MollifierPoly::monomial(0)).is_err());
    }

    #[test]
    fn conrey_reproduces_bracket() {
        let ps = [
            x2(),
            MollifierPoly::monomial(3),
            MollifierPoly::from_coeffs(vec![int(0), int(0), int(3), int(-2)]),
        ];
        for p in &ps {
            for (k, l) in [(0, 0), (1, 1), (0, 2), (2, 0), (2, 2), (1, 3), (3, 3), (0, 4)] {
                let s = (k + l) / 2;
                let lhs = conrey_for_r(k, l, p).unwrap();
                let rhs = s_bracket(k, l, p).unwrap().scale(&pow(&rat(1, 4), s));
                assert_eq!(lhs, rhs, "(k,l) = ({k},{l}), P = {p:?}");
            }
        }
    }

    #[test]
    fn s_examples() {
        let s02 = s_coefficient(0, 2, &x2()).unwrap();
        assert_eq!(s02.value.coeff(0), rat(-1, 4));
        assert_eq!(s02.value.coeff(-1), rat(-1, 9));
        assert_eq!(s02.value.max_power(), Some(0));
        assert_eq!(s02.value.eval(&rat(1, 8)), rat(-41, 36));
        assert_eq!(s02.log_power, 2);

        let s00 = s_coefficient(0, 0, &MollifierPoly::monomial(1)).unwrap();
        assert_eq!(s00.value.coeff(0), int(1));
        assert_eq!(s00.value.coeff(-1), int(1));

        assert!(s_coefficient(0, 1, &x2()).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn sign_and_symmetry(k in 0u32..7, half in 0u32..4, d in 1usize..5, num in 1i64..99) {
                let l = if (k + half) % 2 == 0 { half } else { half + 1 };
                let p = MollifierPoly::monomial(d);
                let a = s_coefficient(k, l, &p).unwrap();
                let b = s_coefficient(l, k, &p).unwrap();
                let s = (k + l) / 2;
                let expected = if (l + s) % 2 == 0 { 1 } else { -1 };
                let theta = rat(num, 100);
                prop_assert_eq!(crate::exactq::signum(&a.value.eval(&theta)), expected);
                prop_assert_eq!(s_bracket(k, l, &p).unwrap(), s_bracket(l, k, &p).unwrap());
                prop_assert_eq!(a.log_power, 2 * s);
                // sign factors differ by (−1)^(k−ℓ) = 1 since k ≡ ℓ (mod 2)
                prop_assert_eq!(a.value, b.value);
            }
        }
    }
}
