//! Sparse polynomials in `x1, x2, ...` with arbitrary-precision integer
//! coefficients.
//!
//! Terms are kept in a `BTreeMap` keyed by exponent vector, so two equal
//! polynomials always have identical term lists. Text and JSON output list terms
//! in decreasing lexicographic order of their exponent vectors.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `x^a = x1^a1 x2^a2 ...`, stored without trailing zero exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Monomial { exps }
    }

    pub fn one() -> Self {
        Monomial::default()
    }

    /// The variable `x_i` (1-based).
    pub fn var(i: usize) -> Self {
        assert!(i >= 1, "variables are 1-based");
        let mut exps = vec![0; i];
        exps[i - 1] = 1;
        Monomial { exps }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    /// Exponent of `x_i` (1-based).
    pub fn get(&self, i: usize) -> u32 {
        self.exps.get(i - 1).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (long, short) = if self.exps.len() >= other.exps.len() {
            (&self.exps, &other.exps)
        } else {
            (&other.exps, &self.exps)
        };
        let mut exps = long.clone();
        for (e, s) in exps.iter_mut().zip(short) {
            *e += s;
        }
        Monomial { exps }
    }

    fn with_exponent(&self, i: usize, e: u32) -> Monomial {
        let mut exps = self.exps.clone();
        if exps.len() < i {
            exps.resize(i, 0);
        }
        exps[i - 1] = e;
        Monomial::new(exps)
    }

    /// Reverse lexicographic comparison: the exponent vectors are compared at
    /// the last index where they differ, and the larger exponent wins.
    ///
    /// Under this order the leading monomial of a Schubert polynomial is
    /// `x^code(w)`; every other term moves weight towards smaller indices.
    pub fn cmp_revlex(&self, other: &Monomial) -> Ordering {
        let len = self.exps.len().max(other.exps.len());
        (1..=len)
            .rev()
            .map(|i| self.get(i).cmp(&other.get(i)))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "x{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, BigInt>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn one() -> Self {
        Polynomial::monomial(Monomial::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(Monomial::one(), c.into());
        p
    }

    pub fn var(i: usize) -> Self {
        Polynomial::monomial(Monomial::var(i))
    }

    pub fn monomial(m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(m, BigInt::one());
        Polynomial { terms }
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, C)>,
        C: Into<BigInt>,
    {
        let mut p = Polynomial::zero();
        for (m, c) in terms {
            p.add_term(m, c.into());
        }
        p
    }

    /// Adds `c * m` in place, dropping the term if it cancels.
    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Terms in increasing lexicographic order of exponent vectors.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.keys()
    }

    pub fn leading_monomial_revlex(&self) -> Result<Monomial> {
        self.terms
            .keys()
            .max_by(|a, b| a.cmp_revlex(b))
            .cloned()
            .ok_or(Error::ZeroPolynomial)
    }

    /// Value at `x1 = x2 = ... = 1`.
    pub fn sum_of_coefficients(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Applies the transposition `x_i <-> x_{i+1}`.
    pub fn swap_adjacent(&self, i: usize) -> Polynomial {
        Polynomial::from_terms(self.terms.iter().map(|(m, c)| {
            let (a, b) = (m.get(i), m.get(i + 1));
            (m.with_exponent(i, b).with_exponent(i + 1, a), c.clone())
        }))
    }

    /// Exact quotient by `x_i - x_j`, by synthetic division in `x_i`.
    /// Fails if the remainder is nonzero.
    pub fn divide_by_difference(&self, i: usize, j: usize) -> Result<Polynomial> {
        assert!(i != j && i >= 1 && j >= 1);
        // coefficient of x_i^d, as polynomials free of x_i
        let mut by_degree: BTreeMap<u32, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            by_degree
                .entry(m.get(i))
                .or_default()
                .add_term(m.with_exponent(i, 0), c.clone());
        }
        let top = by_degree.keys().next_back().copied().unwrap_or(0);
        let xj = Polynomial::var(j);
        let mut quotient = Polynomial::zero();
        let mut carry = Polynomial::zero();
        for d in (1..=top).rev() {
            carry = by_degree.remove(&d).unwrap_or_default() + &xj * &carry;
            for (m, c) in &carry.terms {
                quotient.add_term(m.with_exponent(i, d - 1), c.clone());
            }
        }
        let remainder = by_degree.remove(&0).unwrap_or_default() + &xj * &carry;
        if remainder.is_zero() {
            Ok(quotient)
        } else {
            Err(Error::InexactDivision(i, j))
        }
    }

    /// The divided difference `(f - s_i f) / (x_i - x_{i+1})`.
    pub fn divided_difference(&self, i: usize) -> Result<Polynomial> {
        (self - &self.swap_adjacent(i)).divide_by_difference(i, i + 1)
    }

    /// Unicode rendering with subscripted variables, e.g. `x₁³x₂ + x₁³x₃`.
    pub fn pretty(&self) -> String {
        const SUB: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];
        const SUP: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
        let map = |n: u32, table: &[char; 10]| -> String {
            n.to_string().bytes().map(|b| table[(b - b'0') as usize]).collect()
        };
        self.render(
            |m| {
                let mut s = String::new();
                for (i, &e) in m.exps.iter().enumerate() {
                    if e == 0 {
                        continue;
                    }
                    s.push('x');
                    s.push_str(&map(i as u32 + 1, &SUB));
                    if e > 1 {
                        s.push_str(&map(e, &SUP));
                    }
                }
                s
            },
            "",
        )
    }

    fn render(&self, mono: impl Fn(&Monomial) -> String, times: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (k, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            if m.is_one() {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&mono(m));
            } else {
                out.push_str(&format!("{abs}{times}{}", mono(m)));
            }
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("polynomial serialization is infallible")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Polynomial> {
        Ok(Polynomial::deserialize(value)?)
    }
}

/// `x1^3*x2 + 2*x1*x3 - 1`, terms in decreasing lexicographic order.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(|m| m.to_string(), "*"))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum CoeffRepr {
    Small(i64),
    Big(String),
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    coeff: CoeffRepr,
    exps: Vec<u32>,
}

/// `[{"coeff": c, "exps": [a1, ...]}, ...]`. Coefficients outside the `i64`
/// range are written as decimal strings.
impl Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<TermRepr> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| TermRepr {
                coeff: c
                    .to_i64()
                    .map_or_else(|| CoeffRepr::Big(c.to_string()), CoeffRepr::Small),
                exps: m.exps.clone(),
            })
            .collect();
        terms.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let terms = Vec::<TermRepr>::deserialize(deserializer)?;
        let mut p = Polynomial::zero();
        for t in terms {
            let c = match t.coeff {
                CoeffRepr::Small(c) => BigInt::from(c),
                CoeffRepr::Big(s) => s.parse().map_err(serde::de::Error::custom)?,
            };
            p.add_term(Monomial::new(t.exps), c);
        }
        Ok(p)
    }
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                out.add_term(a.mul(b), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial { (&self).$method(&rhs) }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial { (&self).$method(rhs) }
        }
        impl $tr<Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial { self.$method(&rhs) }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl std::iter::Sum for Polynomial {
    fn sum<I: Iterator<Item = Polynomial>>(iter: I) -> Polynomial {
        iter.fold(Polynomial::zero(), |acc, p| acc + p)
    }
}

impl From<Monomial> for Polynomial {
    fn from(m: Monomial) -> Self {
        Polynomial::monomial(m)
    }
}
