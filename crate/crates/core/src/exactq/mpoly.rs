//! Sparse multivariate polynomials over exact rationals.
//!
//! A polynomial carries its own ordered variable list; each term is keyed by
//! an exponent vector aligned with that list. Binary operations between
//! polynomials over different variable lists first embed both into the union
//! of the two lists (left operand's order first).

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use super::rational::{pow as rat_pow, to_f64, Rational};

/// A symbolic variable, compared by name.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(Arc<str>);

impl Var {
    pub fn new(name: &str) -> Self {
        Var(Arc::from(name))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// `n` variables named `{prefix}1 .. {prefix}n`.
pub fn vars(prefix: &str, n: usize) -> Vec<Var> {
    (1..=n).map(|i| Var::new(&format!("{prefix}{i}"))).collect()
}

/// Exponent vector, one byte per variable. Ordered graded-lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(SmallVec<[u8; 16]>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(SmallVec::from_elem(0, n))
    }

    pub fn exponents(&self) -> &[u8] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(&a, &b)| a.checked_add(b).expect("exponent overflow (> 255)"))
                .collect(),
        )
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Per-variable degree caps used by truncated multiplication. Variables not
/// listed are uncapped.
pub type DegreeCaps = [(Var, u8)];

#[derive(Clone, PartialEq, Eq)]
pub struct MPoly {
    vars: Vec<Var>,
    terms: BTreeMap<Monomial, Rational>,
}

impl MPoly {
    pub fn zero(vars: &[Var]) -> Self {
        MPoly {
            vars: vars.to_vec(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &[Var], c: Rational) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(vars.len()), c);
        }
        p
    }

    pub fn one(vars: &[Var]) -> Self {
        Self::constant(vars, Rational::one())
    }

    /// The polynomial `v`. `v` is appended to the variable list if absent.
    pub fn var(vars: &[Var], v: &Var) -> Self {
        let mut vs = vars.to_vec();
        let i = match vs.iter().position(|w| w == v) {
            Some(i) => i,
            None => {
                vs.push(v.clone());
                vs.len() - 1
            }
        };
        let mut m = Monomial::one(vs.len());
        m.0[i] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(m, Rational::one());
        MPoly { vars: vs, terms }
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs. Zero
    /// coefficients are dropped and repeated exponents are summed.
    pub fn from_terms<I>(vars: &[Var], terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u8>, Rational)>,
    {
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len(), "exponent vector length mismatch");
            *acc.entry(Monomial(SmallVec::from_vec(e))).or_insert_with(Rational::zero) += c;
        }
        Self::from_map(vars.to_vec(), acc)
    }

    fn from_map(vars: Vec<Var>, acc: HashMap<Monomial, Rational>) -> Self {
        MPoly {
            vars,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn index_of(&self, v: &Var) -> Option<usize> {
        self.vars.iter().position(|w| w == v)
    }

    /// Variables that occur with a positive exponent in some term.
    pub fn used_vars(&self) -> Vec<Var> {
        self.vars
            .iter()
            .enumerate()
            .filter(|(i, _)| self.terms.keys().any(|m| m.0[*i] > 0))
            .map(|(_, v)| v.clone())
            .collect()
    }

    pub fn degree_in(&self, v: &Var) -> u32 {
        match self.index_of(v) {
            Some(i) => self.terms.keys().map(|m| m.0[i] as u32).max().unwrap_or(0),
            None => 0,
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn constant_term(&self) -> Rational {
        self.terms
            .get(&Monomial::one(self.vars.len()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// `Some(c)` when the polynomial is the constant `c`.
    pub fn as_constant(&self) -> Option<Rational> {
        if self.terms.keys().all(Monomial::is_one) {
            Some(self.constant_term())
        } else {
            None
        }
    }

    /// Coefficient of the monomial given by `(variable, exponent)` pairs
    /// (unlisted variables have exponent zero).
    pub fn coeff(&self, exps: &[(Var, u8)]) -> Rational {
        let mut m = Monomial::one(self.vars.len());
        for (v, e) in exps {
            match self.index_of(v) {
                Some(i) => m.0[i] = *e,
                None if *e == 0 => {}
                None => return Rational::zero(),
            }
        }
        self.terms.get(&m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Re-expresses the polynomial over `vars`, which must contain every
    /// variable that actually occurs.
    pub fn with_vars(&self, vars: &[Var]) -> MPoly {
        if vars == self.vars.as_slice() {
            return self.clone();
        }
        let map: Vec<Option<usize>> = self
            .vars
            .iter()
            .map(|v| vars.iter().position(|w| w == v))
            .collect();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = Monomial::one(vars.len());
                for (i, &x) in m.0.iter().enumerate() {
                    if x > 0 {
                        let j = map[i].unwrap_or_else(|| {
                            panic!("variable {} occurs but is missing from target list", self.vars[i])
                        });
                        e.0[j] = x;
                    }
                }
                (e, c.clone())
            })
            .collect();
        MPoly {
            vars: vars.to_vec(),
            terms,
        }
    }

    fn union_vars(&self, other: &MPoly) -> Vec<Var> {
        let mut vs = self.vars.clone();
        for v in &other.vars {
            if !vs.contains(v) {
                vs.push(v.clone());
            }
        }
        vs
    }

    fn aligned<'a>(
        &'a self,
        other: &'a MPoly,
    ) -> (std::borrow::Cow<'a, MPoly>, std::borrow::Cow<'a, MPoly>) {
        use std::borrow::Cow;
        if self.vars == other.vars {
            (Cow::Borrowed(self), Cow::Borrowed(other))
        } else {
            let vs = self.union_vars(other);
            (Cow::Owned(self.with_vars(&vs)), Cow::Owned(other.with_vars(&vs)))
        }
    }

    fn without_var(&self, i: usize) -> Vec<Var> {
        let mut vs = self.vars.clone();
        vs.remove(i);
        vs
    }

    pub fn scale(&self, c: &Rational) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(&self.vars);
        }
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut acc = MPoly::one(&self.vars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    fn caps_vector(&self, caps: &DegreeCaps) -> Vec<u8> {
        let mut v = vec![u8::MAX; self.vars.len()];
        for (var, cap) in caps {
            if let Some(i) = self.index_of(var) {
                v[i] = *cap;
            }
        }
        v
    }

    /// Product with every term whose exponent exceeds a cap discarded. This is
    /// multiplication in the quotient ring by the ideal generated by
    /// `v^(cap+1)` for each capped `v`.
    pub fn mul_truncated(&self, other: &MPoly, caps: &DegreeCaps) -> MPoly {
        let (a, b) = self.aligned(other);
        let cap = a.caps_vector(caps);
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        let bt: Vec<(&Monomial, &Rational)> = b.terms.iter().collect();
        for (ma, ca) in &a.terms {
            'inner: for (mb, cb) in &bt {
                for i in 0..cap.len() {
                    if ma.0[i] as u16 + mb.0[i] as u16 > cap[i] as u16 {
                        continue 'inner;
                    }
                }
                let m = ma.mul(mb);
                let c = ca * *cb;
                match acc.get_mut(&m) {
                    Some(x) => *x += c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        MPoly::from_map(a.vars.clone(), acc)
    }

    /// Drops every term whose exponent exceeds a cap.
    pub fn truncate(&self, caps: &DegreeCaps) -> MPoly {
        let cap = self.caps_vector(caps);
        MPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.0.iter().zip(&cap).all(|(e, c)| e <= c))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Partial derivative; the variable list is unchanged.
    pub fn derivative(&self, v: &Var) -> MPoly {
        let Some(i) = self.index_of(v) else {
            return MPoly::zero(&self.vars);
        };
        let mut acc = HashMap::new();
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e > 0 {
                let mut m2 = m.clone();
                m2.0[i] -= 1;
                acc.insert(m2, c * Rational::from_integer(e.into()));
            }
        }
        MPoly::from_map(self.vars.clone(), acc)
    }

    /// Antiderivative in `v` with zero constant of integration. `v` is added
    /// to the variable list if absent.
    pub fn antiderivative(&self, v: &Var) -> MPoly {
        let p = match self.index_of(v) {
            Some(_) => std::borrow::Cow::Borrowed(self),
            None => {
                let mut vs = self.vars.clone();
                vs.push(v.clone());
                std::borrow::Cow::Owned(self.with_vars(&vs))
            }
        };
        let i = p.index_of(v).unwrap();
        MPoly {
            vars: p.vars.clone(),
            terms: p
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut m2 = m.clone();
                    let e = m2.0[i].checked_add(1).expect("exponent overflow (> 255)");
                    m2.0[i] = e;
                    (m2, c / Rational::from_integer(e.into()))
                })
                .collect(),
        }
    }

    /// `∫₀¹ p dv`, as a polynomial in the remaining variables.
    pub fn integrate_unit(&self, v: &Var) -> MPoly {
        let Some(i) = self.index_of(v) else {
            return self.clone();
        };
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in &self.terms {
            let e = m.0[i] as i64;
            let mut m2 = m.0.clone();
            m2.remove(i);
            *acc.entry(Monomial(m2)).or_insert_with(Rational::zero) +=
                c / Rational::from_integer((e + 1).into());
        }
        MPoly::from_map(self.without_var(i), acc)
    }

    /// Integrates each listed variable over `[0, 1]`.
    pub fn integrate_box(&self, vs: &[Var]) -> MPoly {
        vs.iter().fold(self.clone(), |p, v| p.integrate_unit(v))
    }

    /// `∫_{lower}^{upper} p dv` where the limits are polynomials not involving
    /// `v`. The result no longer mentions `v`.
    pub fn integrate_between(&self, v: &Var, lower: &MPoly, upper: &MPoly) -> MPoly {
        let anti = self.antiderivative(v);
        let hi = anti.substitute(v, upper);
        let lo = anti.substitute(v, lower);
        let mut r = &hi - &lo;
        if let Some(i) = r.index_of(v) {
            if r.terms.keys().all(|m| m.0[i] == 0) {
                r = r.drop_var(i);
            }
        }
        r
    }

    fn drop_var(&self, i: usize) -> MPoly {
        MPoly {
            vars: self.without_var(i),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    debug_assert_eq!(m.0[i], 0);
                    let mut m2 = m.0.clone();
                    m2.remove(i);
                    (Monomial(m2), c.clone())
                })
                .collect(),
        }
    }

    /// Replaces `v` by `replacement`. `v` leaves the variable list unless the
    /// replacement itself mentions it.
    pub fn substitute(&self, v: &Var, replacement: &MPoly) -> MPoly {
        let Some(i) = self.index_of(v) else {
            return self.clone();
        };
        // Group by the exponent of v: p = Σ_e c_e · v^e.
        let mut groups: BTreeMap<u8, HashMap<Monomial, Rational>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.0[i];
            let mut m2 = m.clone();
            m2.0[i] = 0;
            groups.entry(e).or_default().insert(m2, c.clone());
        }
        let keep_v = replacement.index_of(v).is_some_and(|j| {
            replacement.terms.keys().any(|m| m.0[j] > 0)
        });
        let base = self.union_vars(replacement);
        let repl = replacement.with_vars(&base);
        let mut out = MPoly::zero(&base);
        let mut power = MPoly::one(&base);
        let mut cur = 0u8;
        for (e, coeffs) in groups {
            while cur < e {
                power = &power * &repl;
                cur += 1;
            }
            let c = MPoly::from_map(self.vars.clone(), coeffs).with_vars(&base);
            out = &out + &(&c * &power);
        }
        if keep_v {
            out
        } else {
            let j = out.index_of(v).unwrap();
            out.drop_var(j)
        }
    }

    /// Mixed first partial derivative `∂ⁿ/∂v₁…∂vₙ` evaluated at
    /// `v₁ = … = vₙ = 0`: the coefficient of `v₁⋯vₙ`, as a polynomial in the
    /// remaining variables.
    pub fn mixed_derivative_at_zero(&self, vs: &[Var]) -> MPoly {
        let idx: Vec<Option<usize>> = vs.iter().map(|v| self.index_of(v)).collect();
        if idx.iter().any(Option::is_none) {
            let remaining: Vec<Var> =
                self.vars.iter().filter(|v| !vs.contains(v)).cloned().collect();
            return MPoly::zero(&remaining);
        }
        let idx: Vec<usize> = idx.into_iter().flatten().collect();
        let keep: Vec<usize> = (0..self.vars.len()).filter(|i| !idx.contains(i)).collect();
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in &self.terms {
            if idx.iter().all(|&i| m.0[i] == 1) {
                let m2: SmallVec<[u8; 16]> = keep.iter().map(|&i| m.0[i]).collect();
                *acc.entry(Monomial(m2)).or_insert_with(Rational::zero) += c;
            }
        }
        MPoly::from_map(keep.iter().map(|&i| self.vars[i].clone()).collect(), acc)
    }

    /// Evaluates some variables at rational values; the rest stay symbolic.
    pub fn eval_partial(&self, point: &[(Var, Rational)]) -> MPoly {
        let mut idx = Vec::new();
        for (v, x) in point {
            if let Some(i) = self.index_of(v) {
                idx.push((i, x));
            }
        }
        let keep: Vec<usize> =
            (0..self.vars.len()).filter(|i| !idx.iter().any(|(j, _)| j == i)).collect();
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in &self.terms {
            let mut val = c.clone();
            for (i, x) in &idx {
                val *= rat_pow(x, m.0[*i] as u32);
            }
            let m2: SmallVec<[u8; 16]> = keep.iter().map(|&i| m.0[i]).collect();
            *acc.entry(Monomial(m2)).or_insert_with(Rational::zero) += val;
        }
        MPoly::from_map(keep.iter().map(|&i| self.vars[i].clone()).collect(), acc)
    }

    /// Exact value at a point given for every variable in `vars()` order.
    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.vars.len());
        let mut sum = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.0.iter()) {
                if e > 0 {
                    t *= rat_pow(x, e as u32);
                }
            }
            sum += t;
        }
        sum
    }

    /// Floating-point value at a point given in `vars()` order.
    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        assert_eq!(point.len(), self.vars.len());
        self.terms
            .iter()
            .map(|(m, c)| {
                m.0.iter()
                    .zip(point)
                    .fold(to_f64(c), |acc, (&e, &x)| acc * x.powi(e as i32))
            })
            .sum()
    }

    /// Coefficients `[c₀, c₁, …]` of a polynomial in the single variable `v`.
    /// Returns `None` if any other variable occurs.
    pub fn univariate_coeffs(&self, v: &Var) -> Option<Vec<Rational>> {
        let i = self.index_of(v);
        let mut out = vec![Rational::zero(); self.degree_in(v) as usize + 1];
        for (m, c) in &self.terms {
            for (j, &e) in m.0.iter().enumerate() {
                if Some(j) != i && e > 0 {
                    return None;
                }
            }
            let e = i.map(|i| m.0[i] as usize).unwrap_or(0);
            out[e] += c;
        }
        Some(out)
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly[{:?}]({})", self.vars, self)
    }
}

/// Canonical serialization: terms in descending graded-lex order, each as
/// `coeff * v^e * …` (exponent 1 omitted, constant term bare).
impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let mag = c.abs();
            if k == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let mut parts: Vec<String> = Vec::new();
            if m.is_one() || !mag.is_one() {
                parts.push(mag.to_string());
            }
            for (v, &e) in self.vars.iter().zip(m.0.iter()) {
                match e {
                    0 => {}
                    1 => parts.push(v.to_string()),
                    _ => parts.push(format!("{v}^{e}")),
                }
            }
            f.write_str(&parts.join(" * "))?;
        }
        Ok(())
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        let (a, b) = self.aligned(rhs);
        let mut terms = a.terms.clone();
        for (m, c) in &b.terms {
            match terms.get_mut(m) {
                Some(x) => {
                    *x += c;
                    if x.is_zero() {
                        terms.remove(m);
                    }
                }
                None => {
                    terms.insert(m.clone(), c.clone());
                }
            }
        }
        MPoly {
            vars: a.vars.clone(),
            terms,
        }
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        self + &(-rhs)
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        self.mul_truncated(rhs, &[])
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for MPoly {
            type Output = MPoly;
            fn $m(self, rhs: MPoly) -> MPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&MPoly> for MPoly {
            type Output = MPoly;
            fn $m(self, rhs: &MPoly) -> MPoly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}
