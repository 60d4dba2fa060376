//! Leading coefficient of the fourth moment of derivative products,
//! `∫₀ᵀ Z⁽ᵏ⁾Z⁽ˡ⁾Z⁽ᵐ⁾Z⁽ⁿ⁾ dt ~ HARDY(k,l,m,n)/π² · T (log T)^(k+l+m+n+4)`.
//!
//! The value is `(−1)^(m+n) i^(k+l+m+n) · 3 · ∫_{[0,1]⁴} (u₁−u₂)² A^k B^l C^m D^n`
//! with
//!
//! ```text
//! A = 1/2 + (u₁−u₂)u₃ − u₁      B = 1/2 + (u₂−u₁)u₃ − u₂
//! C = 1/2 + (u₁−u₂)u₄ − u₁      D = 1/2 + (u₂−u₁)u₄ − u₂
//! ```
//!
//! For odd totals the integral itself vanishes, so the (imaginary) prefactor
//! never has to be represented.

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactq::{format_rational, int, parse_rational, rat, signum, vars, MPoly, Rational, Var};

/// Largest supported differentiation order for a single index.
pub const MAX_ORDER: u8 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct HardyIndex {
    pub k: u8,
    pub l: u8,
    pub m: u8,
    pub n: u8,
}

impl HardyIndex {
    pub fn new(k: u8, l: u8, m: u8, n: u8) -> Result<Self> {
        if [k, l, m, n].iter().any(|&x| x > MAX_ORDER) {
            return Err(Error::InvalidArgument(format!(
                "HARDY indices are capped at {MAX_ORDER}, got ({k},{l},{m},{n})"
            )));
        }
        Ok(HardyIndex { k, l, m, n })
    }

    pub fn as_array(&self) -> [u8; 4] {
        [self.k, self.l, self.m, self.n]
    }

    pub fn total(&self) -> u32 {
        self.as_array().iter().map(|&x| x as u32).sum()
    }

    pub fn parity(&self) -> ParityClass {
        if self.total() % 2 == 1 {
            ParityClass::OddSum
        } else {
            ParityClass::EvenSum
        }
    }

    /// `|iᵏ + iˡ + iᵐ + iⁿ|²`, an exact non-negative integer.
    pub fn unit_sum_norm_sq(&self) -> u32 {
        let (mut re, mut im) = (0i32, 0i32);
        for x in self.as_array() {
            match x % 4 {
                0 => re += 1,
                1 => im += 1,
                2 => re -= 1,
                _ => im -= 1,
            }
        }
        (re * re + im * im) as u32
    }
}

impl std::fmt::Display for HardyIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{},{},{})", self.k, self.l, self.m, self.n)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ParityClass {
    OddSum,
    EvenSum,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HardyValue {
    pub index: HardyIndex,
    pub value: Rational,
    pub parity_class: ParityClass,
    /// `|iᵏ + iˡ + iᵐ + iⁿ|²`.
    pub conjecture_magnitude: u32,
}

fn u_vars() -> Vec<Var> {
    vars("u", 4)
}

/// `∫₀¹ F^a G^b du` where `F = 1/2 + (u₁−u₂)w − u₁`, `G = 1/2 + (u₂−u₁)w − u₂`
/// and `w` is the integration variable. Result is a polynomial in `u₁, u₂`.
fn paired_factor_integral(a: u8, b: u8, w: &Var) -> MPoly {
    let u = u_vars();
    let u1 = MPoly::var(&u[..2], &u[0]);
    let u2 = MPoly::var(&u[..2], &u[1]);
    let wp = MPoly::var(&u[..2], w);
    let half = MPoly::constant(&[], rat(1, 2));
    let d = &u1 - &u2;
    let f = &(&half + &(&d * &wp)) - &u1;
    let g = &(&half - &(&d * &wp)) - &u2;
    (&f.pow(a as u32) * &g.pow(b as u32)).integrate_unit(w)
}

/// The bare four-fold integral (no prefactor).
pub fn hardy_integral(idx: HardyIndex) -> Rational {
    let u = u_vars();
    let x = paired_factor_integral(idx.k, idx.l, &u[2]);
    let y = paired_factor_integral(idx.m, idx.n, &u[3]);
    let u1 = MPoly::var(&u[..2], &u[0]);
    let u2 = MPoly::var(&u[..2], &u[1]);
    let d2 = (&u1 - &u2).pow(2);
    (&(&d2 * &x) * &y)
        .integrate_box(&u[..2])
        .as_constant()
        .expect("all variables integrated")
}

pub fn hardy(idx: HardyIndex) -> HardyValue {
    let value = match idx.parity() {
        ParityClass::OddSum => Rational::zero(),
        ParityClass::EvenSum => {
            // (−1)^(m+n) · i^(k+l+m+n) with an even total is ±1.
            let exponent = (idx.m as u32 + idx.n as u32) + idx.total() / 2;
            let sign = if exponent % 2 == 0 { int(1) } else { int(-1) };
            sign * int(3) * hardy_integral(idx)
        }
    };
    HardyValue {
        index: idx,
        value,
        parity_class: idx.parity(),
        conjecture_magnitude: idx.unit_sum_norm_sq(),
    }
}

/// Tuples `k ≥ l ≥ m ≥ n ≥ 0` with the given sum, in descending lexicographic
/// order.
pub fn sorted_tuples(total: u8) -> Vec<HardyIndex> {
    let mut out = Vec::new();
    for k in (0..=total).rev() {
        for l in (0..=k.min(total - k)).rev() {
            for m in (0..=l.min(total - k - l)).rev() {
                let n = total - k - l - m;
                if n <= m {
                    out.push(HardyIndex { k, l, m, n });
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct TableRow {
    pub tuple: [u8; 4],
    #[serde(serialize_with = "ser_rational")]
    pub value: Rational,
}

fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(r))
}

pub fn hardy_table(total_degree: u8) -> Result<Vec<TableRow>> {
    if total_degree % 2 == 1 {
        return Err(Error::InvalidArgument(format!(
            "table degree must be even, got {total_degree}"
        )));
    }
    if total_degree > 16 {
        return Err(Error::InvalidArgument(format!(
            "table degree is capped at 16, got {total_degree}"
        )));
    }
    Ok(sorted_tuples(total_degree)
        .into_par_iter()
        .map(|idx| TableRow {
            tuple: idx.as_array(),
            value: hardy(idx).value,
        })
        .collect())
}

/// Values as printed in the published tables for totals 6, 8 and 10, kept
/// verbatim (including the doubled minus signs, written `-(-a)/b`).
const PRINTED: &[([u8; 4], &str)] = &[
    ([6, 0, 0, 0], "-1/2688"),
    ([5, 1, 0, 0], "1/8064"),
    ([4, 2, 0, 0], "-1/5760"),
    ([4, 1, 1, 0], "1/40320"),
    ([3, 3, 0, 0], "1/9600"),
    ([3, 2, 1, 0], "1/28800"),
    ([3, 1, 1, 1], "-19/201600"),
    ([2, 2, 2, 0], "-61/604800"),
    ([2, 2, 1, 1], "19/604800"),
    ([8, 0, 0, 0], "1/16896"),
    ([7, 1, 0, 0], "-1/50688"),
    ([6, 2, 0, 0], "1/39424"),
    ([6, 1, 1, 0], "-1/354816"),
    ([5, 3, 0, 0], "-3/197120"),
    ([5, 2, 1, 0], "-1/197120"),
    ([5, 1, 1, 1], "23/1774080"),
    ([4, 4, 0, 0], "3/140800"),
    ([4, 3, 1, 0], "-3/895600"),
    ([4, 2, 2, 0], "331/26611240"),
    ([4, 2, 1, 1], "-23/5322240"),
    ([3, 3, 2, 0], "-41/8870400"),
    ([3, 3, 1, 1], "19/1774080"),
    ([3, 2, 2, 1], "-17/5322240"),
    ([2, 2, 2, 2], "17/1774080"),
    ([10, 0, 0, 0], "-3/292864"),
    ([9, 1, 0, 0], "1/292864"),
    ([8, 2, 0, 0], "-1/239616"),
    ([8, 1, 1, 0], "1/2635776"),
    ([7, 3, 0, 0], "1/399360"),
    ([7, 2, 1, 0], "1/1198080"),
    ([7, 1, 1, 1], "-3/1464320"),
    ([6, 4, 0, 0], "-(-3)/931840"),
    ([6, 3, 1, 0], "1/2795520"),
    ([6, 2, 2, 0], "-(-173)/92252160"),
    ([6, 2, 1, 1], "1/1464320"),
    ([5, 5, 0, 0], "3/1304576"),
    ([5, 4, 1, 0], "3/6522880"),
    ([5, 3, 2, 0], "467/645765120"),
    ([5, 3, 1, 1], "-(-199)/129153024"),
    ([5, 2, 2, 1], "277/645765120"),
    ([4, 4, 2, 0], "-571/358758400"),
    ([4, 4, 1, 1], "241/358758400"),
    ([4, 3, 3, 0], "467/1076275200"),
    ([4, 3, 2, 1], "1403/3228825600"),
    ([4, 2, 2, 2], "-127/97843200"),
    ([3, 3, 3, 1], "-467/358758400"),
    ([3, 3, 2, 2], "127/293529600"),
];

/// Printed table entry for a tuple, if the published tables list it.
pub fn printed_value(tuple: [u8; 4]) -> Option<&'static str> {
    PRINTED.iter().find(|(t, _)| *t == tuple).map(|(_, s)| *s)
}

/// Literal algebraic value of a printed entry: `-(-a)/b` reads as `a/b`.
pub fn parse_printed(s: &str) -> Result<Rational> {
    let (outer_neg, rest) = match s.strip_prefix('-') {
        Some(r) if r.starts_with('(') => (true, r),
        _ => (false, s),
    };
    let (num, den) = rest
        .split_once('/')
        .ok_or_else(|| Error::Parse(format!("printed value {s:?} lacks a denominator")))?;
    let num = num.trim_start_matches('(').trim_end_matches(')');
    let v = parse_rational(&format!("{num}/{den}"))?;
    Ok(if outer_neg { -v } else { v })
}

#[derive(Debug, Clone, Serialize)]
pub struct TableComparison {
    pub tuple: [u8; 4],
    #[serde(serialize_with = "ser_rational")]
    pub computed: Rational,
    pub printed: Option<String>,
    pub matches: Option<bool>,
}

/// Compares computed rows against the printed tables. Entries without a
/// printed counterpart have `matches = None`.
pub fn compare_with_printed(rows: &[TableRow]) -> Vec<TableComparison> {
    rows.iter()
        .map(|r| {
            let printed = printed_value(r.tuple);
            let matches = printed.map(|p| parse_printed(p).map(|v| v == r.value).unwrap_or(false));
            TableComparison {
                tuple: r.tuple,
                computed: r.value.clone(),
                printed: printed.map(str::to_owned),
                matches,
            }
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct ConjectureRow {
    pub tuple: [u8; 4],
    #[serde(serialize_with = "ser_rational")]
    pub value: Rational,
    pub sign: i8,
    /// `|iᵏ+iˡ+iᵐ+iⁿ|²`
    pub unit_sum_norm_sq: u32,
    /// Predicted sign: −1 when the norm is 2, +1 otherwise.
    pub predicted_sign: i8,
    pub agrees: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConjectureReport {
    pub max_total: u8,
    pub rows: Vec<ConjectureRow>,
    pub checked: usize,
    pub agreements: usize,
    pub counterexamples: Vec<[u8; 4]>,
}

/// All ordered tuples with the given sum.
pub fn ordered_tuples(total: u8) -> Vec<HardyIndex> {
    let mut out = Vec::new();
    for k in 0..=total {
        for l in 0..=total - k {
            for m in 0..=total - k - l {
                out.push(HardyIndex {
                    k,
                    l,
                    m,
                    n: total - k - l - m,
                });
            }
        }
    }
    out
}

/// Checks `HARDY < 0 ⇔ |iᵏ+iˡ+iᵐ+iⁿ| = 2` (and `HARDY ≠ 0`) on every ordered
/// tuple with even sum up to `max_total`.
pub fn conjecture_scan(max_total: u8) -> Result<ConjectureReport> {
    if max_total > 16 {
        return Err(Error::InvalidArgument(format!(
            "conjecture scan is capped at total 16, got {max_total}"
        )));
    }
    let tuples: Vec<HardyIndex> = (0..=max_total)
        .step_by(2)
        .flat_map(ordered_tuples)
        .collect();
    let rows: Vec<ConjectureRow> = tuples
        .into_par_iter()
        .map(|idx| {
            let hv = hardy(idx);
            let sign = signum(&hv.value);
            let predicted_sign = if hv.conjecture_magnitude == 4 { -1 } else { 1 };
            ConjectureRow {
                tuple: idx.as_array(),
                sign,
                unit_sum_norm_sq: hv.conjecture_magnitude,
                predicted_sign,
                agrees: sign == predicted_sign,
                value: hv.value,
            }
        })
        .collect();
    let agreements = rows.iter().filter(|r| r.agrees).count();
    let counterexamples = rows.iter().filter(|r| !r.agrees).map(|r| r.tuple).collect();
    Ok(ConjectureReport {
        max_total,
        checked: rows.len(),
        agreements,
        counterexamples,
        rows,
    })
}

fn permutations4(t: [u8; 4]) -> Vec<[u8; 4]> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let mut seen = [false; 4];
                    for i in [a, b, c, d] {
                        seen[i] = true;
                    }
                    if seen.iter().all(|&s| s) {
                        out.push([t[a], t[b], t[c], t[d]]);
                    }
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct SymmetryReport {
    pub max_total: u8,
    pub multisets_checked: usize,
    /// Sorted tuples for which some reordering gives a different value.
    pub asymmetric: Vec<[u8; 4]>,
}

/// Empirical test of invariance under all 24 reorderings of the indices.
pub fn permutation_symmetry_scan(max_total: u8) -> SymmetryReport {
    let sorted: Vec<HardyIndex> = (0..=max_total)
        .step_by(2)
        .flat_map(sorted_tuples)
        .collect();
    let asymmetric: Vec<[u8; 4]> = sorted
        .par_iter()
        .filter_map(|idx| {
            let base = hardy(*idx).value;
            let differs = permutations4(idx.as_array()).into_iter().any(|p| {
                hardy(HardyIndex { k: p[0], l: p[1], m: p[2], n: p[3] }).value != base
            });
            differs.then(|| idx.as_array())
        })
        .collect();
    SymmetryReport {
        max_total,
        multisets_checked: sorted.len(),
        asymmetric,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    fn h(k: u8, l: u8, m: u8, n: u8) -> Rational {
        hardy(HardyIndex::new(k, l, m, n).unwrap()).value
    }

    #[test]
    fn spot_values() {
        assert_eq!(h(6, 0, 0, 0), rat(-1, 2688));
        assert_eq!(h(0, 0, 0, 0), rat(1, 2));
        assert_eq!(h(5, 1, 0, 0), rat(1, 8064));
        assert_eq!(h(1, 0, 0, 0), Rational::zero());
        assert_eq!(h(2, 2, 2, 2), rat(17, 1774080));
    }

    #[test]
    fn odd_totals_integrate_to_exact_zero() {
        for total in (1..=9).step_by(2) {
            for idx in ordered_tuples(total) {
                assert!(hardy_integral(idx).is_zero(), "{idx}");
                assert!(hardy(idx).value.is_zero());
            }
        }
    }

    #[test]
    fn pair_symmetries() {
        for total in 0..=8u8 {
            for idx in ordered_tuples(total) {
                let [k, l, m, n] = idx.as_array();
                let v = h(k, l, m, n);
                assert_eq!(v, h(l, k, m, n), "swap k,l at {idx}");
                assert_eq!(v, h(k, l, n, m), "swap m,n at {idx}");
                if total % 2 == 0 {
                    assert_eq!(v, h(m, n, k, l), "swap pairs at {idx}");
                }
            }
        }
    }

    #[test]
    fn table_shapes() {
        assert_eq!(sorted_tuples(6).len(), 9);
        assert_eq!(sorted_tuples(8).len(), 15);
        assert_eq!(sorted_tuples(10).len(), 23);
        let t0 = hardy_table(0).unwrap();
        assert_eq!(t0.len(), 1);
        assert_eq!(t0[0].tuple, [0, 0, 0, 0]);
        assert_eq!(t0[0].value, rat(1, 2));
        assert!(hardy_table(7).is_err());
        assert!(hardy_table(18).is_err());
        assert!(HardyIndex::new(65, 0, 0, 0).is_err());
    }

    #[test]
    fn table_one_reproduced() {
        let rows = hardy_table(6).unwrap();
        let cmp = compare_with_printed(&rows);
        assert!(cmp.iter().all(|c| c.matches == Some(true)), "{cmp:?}");
    }

    #[test]
    fn printed_parsing() {
        assert_eq!(parse_printed("-1/2688").unwrap(), rat(-1, 2688));
        assert_eq!(parse_printed("-(-3)/931840").unwrap(), rat(3, 931840));
        assert_eq!(parse_printed("331/26611240").unwrap(), rat(331, 26611240));
    }

    #[test]
    fn unit_sum_norms() {
        let n = |k, l, m, nn| HardyIndex::new(k, l, m, nn).unwrap().unit_sum_norm_sq();
        assert_eq!(n(0, 2, 0, 0), 4);
        assert_eq!(n(0, 0, 0, 0), 16);
        assert_eq!(n(6, 0, 0, 0), 4);
        assert_eq!(n(1, 3, 0, 2), 0);
        assert_eq!(n(1, 1, 0, 2), 4);
        assert_eq!(n(1, 1, 0, 0), 8);
        for total in (0..=10).step_by(2) {
            for idx in ordered_tuples(total) {
                assert!([0, 4, 8, 16].contains(&idx.unit_sum_norm_sq()));
            }
        }
    }

    #[test]
    fn conjecture_examples() {
        // (0,2,0,0): norm 2 predicts a negative value.
        let v = h(0, 2, 0, 0);
        assert!(v.is_negative(), "HARDY(0,2,0,0) = {v}");
        assert!(h(0, 0, 0, 0).is_positive());
        assert!(h(6, 0, 0, 0).is_negative());
    }
}
