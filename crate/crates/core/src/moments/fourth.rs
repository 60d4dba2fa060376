//! Leading constant of the mollified fourth moment `∫ |Z⁽ᵏ⁾Z⁽ˡ⁾ M²|²`.
//!
//! Applying `R_k` to the shifts `α₁, β₁` and `R_ℓ` to `α₂, β₂` of the shifted
//! mollified fourth moment turns every `X^α` into `R(log X / log T) X^α`.
//! With `Σx = x₁+…+x₄`, `Σz = z₁+…+z₄` and
//!
//! ```text
//! A  = −x₁−x₂+z₁+z₂+u₁Σx−u₂Σz        B  = −x₃−x₄+z₃+z₄+u₁Σx−u₂Σz
//! L_A = u₁−u₂+ϑA                      L_B = u₁−u₂+ϑB
//! a₁ = ϑ(x₁+x₂) − u₁(1+ϑΣx) + u₃L_A    a₂ = ϑ(z₁+z₂) − u₂(1+ϑΣz) − u₃L_A
//! b₁ = ϑ(x₃+x₄) − u₁(1+ϑΣx) + u₄L_B    b₂ = ϑ(z₃+z₄) − u₂(1+ϑΣz) − u₄L_B
//! ```
//!
//! the constant is `(2ϑ⁴)⁻¹ ∂⁸/∂x∂z|₀ ∫_{[0,1]⁴} H · G` where
//! `H = (1+ϑΣx)(1+ϑΣz) L_A L_B R_k(a₁)R_k(b₁)R_ℓ(a₂)R_ℓ(b₂)` and
//! `G = ∫_T P(1−t₁−t₃+x₁+z₁)P(1−t₂−t₄+x₂+z₂)P(1−t₁−t₂+x₃+z₃)P(1−t₃−t₄+x₄+z₄)`.
//! At `ϑ = 0` the arguments collapse to the ones in the unmollified constant.
//!
//! Only the coefficient of `x₁⋯x₄z₁⋯z₄` matters, so all products are taken
//! modulo `xⱼ², zⱼ²`. Splitting the monomial between the two factors gives
//! `Σ_S G_S · H̄_{Sᶜ}` over subsets `S` of the eight shift variables.

use std::collections::HashMap;

use num_traits::Zero;
use rayon::prelude::*;

use super::laurent::ThetaLaurent;
use super::mollifier::MollifierPoly;
use super::{MomentConstant, MomentKind};
use crate::error::Result;
use crate::exactq::{rat, region_vars, vars, MPoly, PolyRegionT, Rational, Var};

struct Shift {
    x: Vec<Var>,
    z: Vec<Var>,
    caps: Vec<(Var, u8)>,
}

impl Shift {
    fn new() -> Self {
        let x = vars("x", 4);
        let z = vars("z", 4);
        let caps = x.iter().chain(&z).map(|v| (v.clone(), 1u8)).collect();
        Shift { x, z, caps }
    }

    fn mul(&self, a: &MPoly, b: &MPoly) -> MPoly {
        a.mul_truncated(b, &self.caps)
    }

    fn sum(&self, vs: &[Var]) -> MPoly {
        vs.iter().fold(MPoly::zero(&[]), |acc, v| &acc + &MPoly::var(&[], v))
    }

    /// `(arg + 1/2)^k` with truncation.
    fn r(&self, k: u32, arg: &MPoly) -> MPoly {
        let base = arg + &MPoly::constant(&[], rat(1, 2));
        (0..k).fold(MPoly::one(&[]), |acc, _| self.mul(&acc, &base))
    }
}

/// `H̄ = ∫_{[0,1]⁴} H du`, a multilinear polynomial in the shifts and `ϑ`.
fn shift_factor(k: u32, l: u32) -> MPoly {
    let sh = Shift::new();
    let u = vars("u", 4);
    let th = MPoly::var(&[], &Var::new("th"));
    let uv: Vec<MPoly> = u.iter().map(|v| MPoly::var(&[], v)).collect();
    let one = MPoly::one(&[]);

    let sx = sh.sum(&sh.x);
    let sz = sh.sum(&sh.z);
    let common = &(&uv[0] * &sx) - &(&uv[1] * &sz);
    let a = &(&(&sh.sum(&sh.z[..2]) - &sh.sum(&sh.x[..2])) + &common);
    let b = &(&(&sh.sum(&sh.z[2..]) - &sh.sum(&sh.x[2..])) + &common);
    let d = &uv[0] - &uv[1];
    let la = &d + &(&th * a);
    let lb = &d + &(&th * b);
    let fx = &one + &(&th * &sx);
    let fz = &one + &(&th * &sz);

    let a1 = &(&(&th * &sh.sum(&sh.x[..2])) - &(&uv[0] * &fx)) + &(&uv[2] * &la);
    let a2 = &(&(&th * &sh.sum(&sh.z[..2])) - &(&uv[1] * &fz)) - &(&uv[2] * &la);
    let b1 = &(&(&th * &sh.sum(&sh.x[2..])) - &(&uv[0] * &fx)) + &(&uv[3] * &lb);
    let b2 = &(&(&th * &sh.sum(&sh.z[2..])) - &(&uv[1] * &fz)) - &(&uv[3] * &lb);

    // u₃ and u₄ each occur in a single pair of R-factors.
    let (xa, yb) = rayon::join(
        || sh.mul(&sh.r(k, &a1), &sh.r(l, &a2)).integrate_unit(&u[2]),
        || sh.mul(&sh.r(k, &b1), &sh.r(l, &b2)).integrate_unit(&u[3]),
    );
    let w = sh.mul(&sh.mul(&fx, &fz), &sh.mul(&la, &lb));
    let h = sh.mul(&sh.mul(&w, &xa), &yb);
    h.integrate_box(&u[..2])
}

/// Region integrals `G_d = ∫_T ∏ⱼ P^(dⱼ)(cⱼ)` for every derivative pattern
/// `d ∈ {0,1,2}⁴`, where `c = (1−t₁−t₃, 1−t₂−t₄, 1−t₁−t₂, 1−t₃−t₄)`.
fn region_table(p: &MollifierPoly) -> HashMap<[u8; 4], Rational> {
    let t = region_vars();
    let tv: Vec<MPoly> = t.iter().map(|v| MPoly::var(&[], v)).collect();
    let one = MPoly::one(&[]);
    let args = [
        &(&one - &tv[0]) - &tv[2],
        &(&one - &tv[1]) - &tv[3],
        &(&one - &tv[0]) - &tv[1],
        &(&one - &tv[2]) - &tv[3],
    ];
    let x = Var::new("x");
    let derivs: Vec<MPoly> = {
        let p0 = p.to_mpoly(&x);
        let p1 = p0.derivative(&x);
        let p2 = p1.derivative(&x);
        [p0, p1, p2].into_iter().collect()
    };
    // composed[j][d] = P^(d)(cⱼ)
    let composed: Vec<Vec<MPoly>> = args
        .iter()
        .map(|c| derivs.iter().map(|q| q.substitute(&x, c)).collect())
        .collect();

    let patterns: Vec<[u8; 4]> = (0..81u32)
        .map(|i| [(i % 3) as u8, (i / 3 % 3) as u8, (i / 9 % 3) as u8, (i / 27) as u8])
        .collect();
    patterns
        .into_par_iter()
        .map(|d| {
            let prod = (0..4).fold(MPoly::one(&[]), |acc, j| &acc * &composed[j][d[j] as usize]);
            let v = PolyRegionT
                .integrate_value(&prod, &t)
                .expect("integrand only involves t");
            (d, v)
        })
        .collect()
}

/// Leading constant of `∫ |Z⁽ᵏ⁾Z⁽ˡ⁾M²|² ~ 𝒯 · T(log T)^(2(k+ℓ))`.
pub fn t_coefficient(k: u32, l: u32, p: &MollifierPoly) -> Result<MomentConstant> {
    p.check_fourth()?;
    let (h, g) = rayon::join(|| shift_factor(k, l), || region_table(p));

    let sh = Shift::new();
    let xi: Vec<Option<usize>> = sh.x.iter().map(|v| h.index_of(v)).collect();
    let zi: Vec<Option<usize>> = sh.z.iter().map(|v| h.index_of(v)).collect();
    let thi = h.index_of(&Var::new("th"));

    // Σ_S G_S H̄_{Sᶜ} as a polynomial in ϑ.
    let mut dense: Vec<Rational> = Vec::new();
    for (m, c) in h.terms() {
        let e = m.exponents();
        let in_h = |i: Option<usize>| i.is_some_and(|i| e[i] == 1);
        let mut d = [0u8; 4];
        for j in 0..4 {
            d[j] = (!in_h(xi[j])) as u8 + (!in_h(zi[j])) as u8;
        }
        let power = thi.map_or(0, |i| e[i] as usize);
        if dense.len() <= power {
            dense.resize(power + 1, Rational::zero());
        }
        dense[power] += c * &g[&d];
    }
    let value = ThetaLaurent::from_dense(&dense, -4).scale(&rat(1, 2));
    Ok(MomentConstant {
        kind: MomentKind::T,
        indices: (k, l),
        value,
        log_power: 2 * (k + l),
        t_power: 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_two_with_square() {
        let t = t_coefficient(0, 2, &MollifierPoly::monomial(2)).unwrap();
        eprintln!("T02 = {}", t.value);
        let expected = [
            (1, rat(52, 1215)),
            (0, rat(491, 5040)),
            (-1, rat(563, 6300)),
            (-2, rat(659, 16200)),
            (-3, rat(8, 945)),
            (-4, rat(1, 1512)),
        ];
        for (p, c) in expected {
            assert_eq!(t.value.coeff(p), c, "power {p}");
        }
        assert_eq!(t.value.min_power(), Some(-4));
        assert_eq!(t.value.max_power(), Some(1));
        assert_eq!(t.log_power, 4);
    }
}
