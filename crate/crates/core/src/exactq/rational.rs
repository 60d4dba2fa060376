//! Exact rationals. Backed by `num_rational::BigRational`, which keeps values
//! in lowest terms with a positive denominator.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// `n/d` as an exact rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `p/q` or `p` (optional leading sign, surrounding whitespace allowed).
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty rational".into()));
    }
    match s.split_once('/') {
        Some((_, d)) if d.trim().trim_start_matches('+').chars().all(|c| c == '0') => {
            Err(Error::Parse(format!("zero denominator in {s:?}")))
        }
        _ => Rational::from_str(&s.replace(' ', ""))
            .map_err(|e| Error::Parse(format!("{s:?}: {e}"))),
    }
}

/// Canonical text form: `p/q`, or `p` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

pub fn to_f64(r: &Rational) -> f64 {
    // Scale both parts down together so huge numerators/denominators still
    // convert without overflowing to inf/inf.
    if let (Some(n), Some(d)) = (r.numer().to_f64(), r.denom().to_f64()) {
        if n.is_finite() && d.is_finite() {
            return n / d;
        }
    }
    let shift = r.numer().bits().max(r.denom().bits()).saturating_sub(1000);
    let n = (r.numer() >> shift).to_f64().unwrap_or(f64::NAN);
    let d = (r.denom() >> shift).to_f64().unwrap_or(f64::NAN);
    n / d
}

/// Sign as -1, 0 or +1.
pub fn signum(r: &Rational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

pub fn pow(r: &Rational, e: u32) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..e {
        acc *= r;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("-1/2688").unwrap(), rat(-1, 2688));
        assert_eq!(parse_rational(" 6/4 ").unwrap(), rat(3, 2));
        assert_eq!(format_rational(&rat(6, 4)), "3/2");
        assert_eq!(format_rational(&rat(-4, 2)), "-2");
        assert_eq!(format_rational(&rat(0, 5)), "0");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn lowest_terms_positive_denominator() {
        let r = rat(10, -4);
        assert_eq!(r.numer(), &BigInt::from(-5));
        assert_eq!(r.denom(), &BigInt::from(2));
    }

    #[test]
    fn huge_values_convert() {
        let big = pow(&rat(3, 2), 2000);
        let v = to_f64(&(big.clone() / (big + int(1))));
        assert!((v - 1.0).abs() < 1e-12);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_rat() -> impl Strategy<Value = Rational> {
            (-50i64..50, 1i64..30).prop_map(|(n, d)| rat(n, d))
        }

        proptest! {
            #[test]
            fn field_axioms(a in small_rat(), b in small_rat(), c in small_rat()) {
                prop_assert_eq!(&a + &b, &b + &a);
                prop_assert_eq!(&a * &b, &b * &a);
                prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
                prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
                prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
                prop_assert_eq!(&a - &a, Rational::zero());
                if !a.is_zero() {
                    prop_assert_eq!(&a * a.recip(), Rational::one());
                }
            }

            #[test]
            fn text_round_trip(a in small_rat()) {
                prop_assert_eq!(parse_rational(&format_rational(&a)).unwrap(), a);
            }
        }
    }
}
