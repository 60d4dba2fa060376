//! Numerical check of the asymptotic for
//!
//! ```text
//! Σ_{m₁n₁, m₂n₂, m₁m₂, n₁n₂ ≤ y} (m₁m₂n₁n₂)⁻¹ f₁(λ(y/m₁n₁)) f₂(λ(y/m₂n₂)) f₃(λ(y/m₁m₂)) f₄(λ(y/n₁n₂))
//!   = (log y)⁴ ∫_T f₁(1−t₁−t₃) f₂(1−t₂−t₄) f₃(1−t₁−t₂) f₄(1−t₃−t₄) + O((log y)³)
//! ```
//!
//! with `λ(x) = log x / log y`.
//!
//! The sum is evaluated exactly (up to rounding) without visiting every
//! quadruple. Each `fⱼ(λ(y/ab))` is a polynomial in `λ(a), λ(b)`. For fixed
//! `(m₁, n₁)` the remaining sum over `(m₂, n₂)` runs over
//! `{m₂ ≤ M, n₂ ≤ N, m₂n₂ ≤ y}` with `M = ⌊y/m₁⌋`, `N = ⌊y/n₁⌋`; it splits
//! into the rectangle `m₂ ≤ ⌊y/N⌋` and a hyperbola strip, both read off
//! prefix-sum tables.

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactq::{int, region_vars, to_f64, MPoly, PolyRegionT, Rational, Var};

#[derive(Debug, Clone, Serialize)]
pub struct LemmaReport {
    pub y: u64,
    pub sum: f64,
    pub main_term: f64,
    /// `∫_T f₁f₂f₃f₄`, so that `main_term = region_integral · (log y)⁴`.
    pub region_integral: f64,
    /// `|sum − main_term| / (log y)³`.
    pub scaled_error: f64,
}

fn univariate(f: &MPoly) -> Result<Vec<Rational>> {
    let used = f.used_vars();
    match used.as_slice() {
        [] => Ok(vec![f.constant_term()]),
        [v] => Ok(f.univariate_coeffs(v).expect("single variable")),
        _ => Err(Error::PolynomialPrecondition(format!(
            "expected a univariate polynomial, found variables {used:?}"
        ))),
    }
}

fn binom(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Coefficients of `g(s) = f(1 − s)`.
fn reflected(c: &[Rational]) -> Vec<f64> {
    let mut out = vec![Rational::zero(); c.len()];
    for (i, ci) in c.iter().enumerate() {
        // (1 − s)^i = Σ_r C(i,r)(−s)^r
        for (r, o) in out.iter_mut().enumerate().take(i + 1) {
            let sign = if r % 2 == 0 { 1 } else { -1 };
            *o += ci * int(sign * binom(i, r) as i64);
        }
    }
    out.iter().map(to_f64).collect()
}

/// `g(a + b) = Σ_r e_r(a) bʳ`: returns `e_r(a)` for every `r`.
fn shift_in(g: &[f64], a: f64) -> Vec<f64> {
    (0..g.len())
        .map(|r| {
            (r..g.len())
                .map(|i| g[i] * binom(i, r) * a.powi((i - r) as i32))
                .sum()
        })
        .collect()
}

fn main_term_integral(f: [&[Rational]; 4]) -> Rational {
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
    let mut prod = MPoly::one(&[]);
    for (c, arg) in f.iter().zip(&args) {
        let fx = MPoly::from_terms(
            &[x.clone()],
            c.iter().enumerate().map(|(i, c)| (vec![i as u8], c.clone())),
        );
        prod = &prod * &fx.substitute(&x, arg);
    }
    PolyRegionT.integrate_value(&prod, &t).expect("only t variables")
}

/// Evaluates the divisor sum and its predicted main term.
pub fn em_lemma_check(f: [&MPoly; 4], y: u64) -> Result<LemmaReport> {
    if y < 10 {
        return Err(Error::InvalidArgument(format!("y must be at least 10, got {y}")));
    }
    let c: Vec<Vec<Rational>> = f.iter().map(|p| univariate(p)).collect::<Result<_>>()?;
    let region = main_term_integral([&c[0], &c[1], &c[2], &c[3]]);
    let ly = (y as f64).ln();
    let sum = fast_sum(&c, y);
    let region_integral = to_f64(&region);
    let main_term = region_integral * ly.powi(4);
    Ok(LemmaReport {
        y,
        sum,
        main_term,
        region_integral,
        scaled_error: (sum - main_term).abs() / ly.powi(3),
    })
}

fn fast_sum(c: &[Vec<Rational>], y: u64) -> f64 {
    let g: Vec<Vec<f64>> = c.iter().map(|ci| reflected(ci)).collect();
    let n = y as usize;
    let ly = (y as f64).ln();
    let lam: Vec<f64> = (0..=n).map(|i| if i == 0 { 0.0 } else { (i as f64).ln() / ly }).collect();
    let inv: Vec<f64> = (0..=n).map(|i| if i == 0 { 0.0 } else { 1.0 / i as f64 }).collect();

    // r-degree from f₂ and f₃, s-degree from f₂ and f₄.
    let dr = g[1].len() + g[2].len() - 2;
    let ds = g[1].len() + g[3].len() - 2;
    let dmax = dr.max(ds);

    // s_tab[j][X] = Σ_{i ≤ X} λ(i)ʲ / i
    let s_tab: Vec<Vec<f64>> = (0..=dmax)
        .map(|j| {
            let mut acc = 0.0;
            let mut v = Vec::with_capacity(n + 1);
            for i in 0..=n {
                if i > 0 {
                    acc += lam[i].powi(j as i32) * inv[i];
                }
                v.push(acc);
            }
            v
        })
        .collect();
    // d_tab[a][b][X] = Σ_{m ≤ X} λ(m)ᵃ/m · s_tab[b][⌊y/m⌋]
    let d_tab: Vec<Vec<Vec<f64>>> = (0..=dr)
        .into_par_iter()
        .map(|a| {
            (0..=ds)
                .map(|b| {
                    let mut acc = 0.0;
                    let mut v = Vec::with_capacity(n + 1);
                    for m in 0..=n {
                        if m > 0 {
                            acc += lam[m].powi(a as i32) * inv[m] * s_tab[b][n / m];
                        }
                        v.push(acc);
                    }
                    v
                })
                .collect()
        })
        .collect();

    // f₂ expanded in (r, s): A2[a][b] = g₂_{a+b} C(a+b, a)
    let g2 = &g[1];
    let mut a2 = vec![vec![0.0; ds + 1]; dr + 1];
    for (i, gi) in g2.iter().enumerate() {
        for a in 0..=i {
            a2[a][i - a] += gi * binom(i, a);
        }
    }

    (1..=n)
        .into_par_iter()
        .map(|m1| {
            let p = lam[m1];
            let e3 = shift_in(&g[2], p);
            let big_m = n / m1;
            let mut acc = 0.0;
            let mut coef = vec![vec![0.0; ds + 1]; dr + 1];
            for n1 in 1..=n / m1 {
                let q = lam[n1];
                let f1 = g[0]
                    .iter()
                    .enumerate()
                    .map(|(i, gi)| gi * (p + q).powi(i as i32))
                    .sum::<f64>();
                if f1 == 0.0 {
                    continue;
                }
                let e4 = shift_in(&g[3], q);
                for row in coef.iter_mut() {
                    row.iter_mut().for_each(|x| *x = 0.0);
                }
                for (a1, row) in a2.iter().enumerate() {
                    for (b1, &w) in row.iter().enumerate() {
                        if w == 0.0 {
                            continue;
                        }
                        for (a3, &x3) in e3.iter().enumerate() {
                            for (b4, &x4) in e4.iter().enumerate() {
                                coef[a1 + a3][b1 + b4] += w * x3 * x4;
                            }
                        }
                    }
                }
                let big_n = n / n1;
                let k = n / big_n;
                let mut inner = 0.0;
                for (a, row) in coef.iter().enumerate() {
                    for (b, &cab) in row.iter().enumerate() {
                        if cab == 0.0 {
                            continue;
                        }
                        let q_ab = if big_m <= k {
                            s_tab[a][big_m] * s_tab[b][big_n]
                        } else {
                            s_tab[a][k] * s_tab[b][big_n] + d_tab[a][b][big_m] - d_tab[a][b][k]
                        };
                        inner += cab * q_ab;
                    }
                }
                acc += f1 * inv[m1] * inv[n1] * inner;
            }
            acc
        })
        .sum()
}

/// Direct quadruple loop, for small `y`.
pub fn em_lemma_naive_sum(f: [&MPoly; 4], y: u64) -> Result<f64> {
    let c: Vec<Vec<f64>> = f
        .iter()
        .map(|p| univariate(p).map(|v| v.iter().map(to_f64).collect()))
        .collect::<Result<_>>()?;
    let ev = |j: usize, a: u64, b: u64| -> f64 {
        let x = ((y as f64).ln() - (a as f64).ln() - (b as f64).ln()) / (y as f64).ln();
        c[j].iter().rev().fold(0.0, |acc, &ci| acc * x + ci)
    };
    let mut sum = 0.0;
    for m1 in 1..=y {
        for n1 in 1..=y / m1 {
            for m2 in 1..=y / m1 {
                for n2 in 1..=(y / m2).min(y / n1) {
                    sum += ev(0, m1, n1) * ev(1, m2, n2) * ev(2, m1, m2) * ev(3, n1, n2)
                        / (m1 * m2 * n1 * n2) as f64;
                }
            }
        }
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactq::rat;

    fn x() -> MPoly {
        MPoly::var(&[], &Var::new("x"))
    }

    #[test]
    fn fast_sum_matches_naive_loop() {
        let one = MPoly::one(&[]);
        let f1 = &x() * &x();
        let f2 = &one - &x();
        let f3 = &(&x() * &x().scale(&rat(3, 2))) + &one;
        let f4 = x();
        for y in [10, 37, 120] {
            let fs = [&f1, &f2, &f3, &f4];
            let fast = em_lemma_check(fs, y).unwrap().sum;
            let naive = em_lemma_naive_sum(fs, y).unwrap();
            assert!((fast - naive).abs() < 1e-9 * naive.abs().max(1.0), "y={y}: {fast} vs {naive}");
            let ones = [&one, &one, &one, &one];
            let fast = em_lemma_check(ones, y).unwrap().sum;
            let naive = em_lemma_naive_sum(ones, y).unwrap();
            assert!((fast - naive).abs() < 1e-9 * naive, "y={y}: {fast} vs {naive}");
        }
    }

    #[test]
    fn zero_functions() {
        let z = MPoly::zero(&[]);
        let r = em_lemma_check([&z, &z, &z, &z], 1000).unwrap();
        assert_eq!(r.sum, 0.0);
        assert_eq!(r.main_term, 0.0);
    }

    #[test]
    fn rejects_small_y() {
        let one = MPoly::one(&[]);
        assert!(em_lemma_check([&one, &one, &one, &one], 9).is_err());
    }
}
