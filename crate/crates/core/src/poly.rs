//! Sparse multivariate polynomials with integer coefficients in the
//! parameters `x_1, x_2, ...` and `y_1, y_2, ...`.
//!
//! Terms are kept in a `BTreeMap` keyed by [`Monomial`], whose `Ord` is
//! graded lexicographic, so iteration order (and therefore every printed or
//! serialized form) is deterministic. Zero coefficients are never stored.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X(usize),
    Y(usize),
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::X(k) => write!(f, "x{k}"),
            Var::Y(k) => write!(f, "y{k}"),
        }
    }
}

/// Exponent vectors for the `x` and `y` families; entry `k - 1` holds the
/// exponent of `x_k` (resp. `y_k`). Trailing zeros are trimmed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial {
    x: Vec<u32>,
    y: Vec<u32>,
}

fn trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn new(mut x: Vec<u32>, mut y: Vec<u32>) -> Self {
        trim(&mut x);
        trim(&mut y);
        Monomial { x, y }
    }

    pub fn var(v: Var) -> Self {
        let mut m = Monomial::one();
        m.mul_var(v, 1);
        m
    }

    pub fn x_exponents(&self) -> &[u32] {
        &self.x
    }

    pub fn y_exponents(&self) -> &[u32] {
        &self.y
    }

    pub fn exponent(&self, v: Var) -> u32 {
        match v {
            Var::X(k) => self.x.get(k - 1).copied().unwrap_or(0),
            Var::Y(k) => self.y.get(k - 1).copied().unwrap_or(0),
        }
    }

    pub fn mul_var(&mut self, v: Var, e: u32) {
        let (vec, k) = match v {
            Var::X(k) => (&mut self.x, k),
            Var::Y(k) => (&mut self.y, k),
        };
        assert!(k >= 1, "parameters are indexed from 1");
        if vec.len() < k {
            vec.resize(k, 0);
        }
        vec[k - 1] += e;
        trim(vec);
    }

    pub fn is_one(&self) -> bool {
        self.x.is_empty() && self.y.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.x.iter().chain(&self.y).sum()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.x.iter().enumerate().all(|(i, &e)| e <= other.x.get(i).copied().unwrap_or(0))
            && self.y.iter().enumerate().all(|(i, &e)| e <= other.y.get(i).copied().unwrap_or(0))
    }

    /// `other / self`, assuming `self` divides `other`.
    fn quotient_of(&self, other: &Monomial) -> Monomial {
        let sub = |a: &[u32], b: &[u32]| -> Vec<u32> {
            (0..a.len()).map(|i| a[i] - b.get(i).copied().unwrap_or(0)).collect()
        };
        Monomial::new(sub(&other.x, &self.x), sub(&other.y, &self.y))
    }

    /// Drops every `y` factor, i.e. specializes `Y = 1`.
    pub fn without_y(&self) -> Monomial {
        Monomial {
            x: self.x.clone(),
            y: Vec::new(),
        }
    }

    pub fn vars(&self) -> impl Iterator<Item = (Var, u32)> + '_ {
        let xs = self
            .x
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| (Var::X(i + 1), e));
        let ys = self
            .y
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| (Var::Y(i + 1), e));
        xs.chain(ys)
    }

    pub fn evaluate(&self, value: &impl Fn(Var) -> BigRational) -> BigRational {
        let mut acc = BigRational::one();
        for (v, e) in self.vars() {
            let b = value(v);
            for _ in 0..e {
                acc *= &b;
            }
        }
        acc
    }
}

impl Mul for &Monomial {
    type Output = Monomial;

    fn mul(self, rhs: &Monomial) -> Monomial {
        let add = |a: &[u32], b: &[u32]| -> Vec<u32> {
            let n = a.len().max(b.len());
            (0..n)
                .map(|i| a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0))
                .collect()
        };
        Monomial::new(add(&self.x, &rhs.x), add(&self.y, &rhs.y))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let pad = |v: &[u32], i: usize| v.get(i).copied().unwrap_or(0);
        self.degree().cmp(&other.degree()).then_with(|| {
            let nx = self.x.len().max(other.x.len());
            for i in 0..nx {
                match pad(&self.x, i).cmp(&pad(&other.x, i)) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            let ny = self.y.len().max(other.y.len());
            for i in 0..ny {
                match pad(&self.y, i).cmp(&pad(&other.y, i)) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        for (i, (v, e)) in self.vars().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
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
        Polynomial::from_monomial(Monomial::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Polynomial::term(Monomial::one(), c)
    }

    pub fn var(v: Var) -> Self {
        Polynomial::from_monomial(Monomial::var(v))
    }

    pub fn from_monomial(m: Monomial) -> Self {
        Polynomial::term(m, 1)
    }

    pub fn term(m: Monomial, c: impl Into<BigInt>) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(m, c.into());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// The single monomial of a polynomial `1 * m`, if it has that shape.
    pub fn as_monomial(&self) -> Option<&Monomial> {
        match self.terms.iter().next() {
            Some((m, c)) if self.terms.len() == 1 && c.is_one() => Some(m),
            _ => None,
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(k, c)| (k * m, c.clone())).collect(),
        }
    }

    pub fn evaluate(&self, value: impl Fn(Var) -> BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            acc += m.evaluate(&value) * BigRational::from_integer(c.clone());
        }
        acc
    }

    /// Substitutes integers for the variables `assign` maps to `Some`,
    /// leaving the others symbolic.
    pub fn specialize(&self, assign: impl Fn(Var) -> Option<BigInt>) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut rest = Monomial::one();
            for (v, e) in m.vars() {
                match assign(v) {
                    Some(val) => coeff *= num_traits::pow(val, e as usize),
                    None => rest.mul_var(v, e),
                }
            }
            out.add_term(rest, coeff);
        }
        out
    }

    pub fn specialize_y_one(&self) -> Polynomial {
        self.specialize(|v| match v {
            Var::Y(_) => Some(BigInt::one()),
            Var::X(_) => None,
        })
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Polynomial) -> Option<Polynomial> {
        let (dm, dc) = d.leading_term()?;
        let (dm, dc) = (dm.clone(), dc.clone());
        let mut rem = self.clone();
        let mut quot = Polynomial::zero();
        while let Some((rm, rc)) = rem.leading_term() {
            if !dm.divides(rm) || !(rc % &dc).is_zero() {
                return None;
            }
            let qm = dm.quotient_of(rm);
            let qc = rc / &dc;
            let step = Polynomial::term(qm.clone(), qc.clone());
            rem = &rem - &(&step * d);
            quot.add_term(qm, qc);
        }
        Some(quot)
    }
}

impl From<Monomial> for Polynomial {
    fn from(m: Monomial) -> Self {
        Polynomial::from_monomial(m)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
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

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1 * m2, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

/// One serialized term: exponent vectors plus an integer coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub x: Vec<u32>,
    pub y: Vec<u32>,
    pub c: i64,
}

impl Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        use num_traits::ToPrimitive;
        use serde::ser::Error as _;
        let terms = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| {
                Ok(TermJson {
                    x: m.x.clone(),
                    y: m.y.clone(),
                    c: c.to_i64().ok_or_else(|| S::Error::custom("coefficient exceeds i64"))?,
                })
            })
            .collect::<Result<Vec<_>, S::Error>>()?;
        terms.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let terms = Vec::<TermJson>::deserialize(de)?;
        let mut p = Polynomial::zero();
        for t in terms {
            p.add_term(Monomial::new(t.x, t.y), BigInt::from(t.c));
        }
        Ok(p)
    }
}

/// Determinant by fraction-free (Bareiss) elimination. Every division is
/// exact; a failed division is reported as `None`.
pub fn bareiss_determinant(matrix: &[Vec<Polynomial>]) -> Option<Polynomial> {
    let n = matrix.len();
    if n == 0 {
        return Some(Polynomial::one());
    }
    let mut m: Vec<Vec<Polynomial>> = matrix.to_vec();
    let mut sign = 1i32;
    let mut prev = Polynomial::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let swap = (k + 1..n).find(|&i| !m[i][k].is_zero());
            match swap {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return Some(Polynomial::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.div_exact(&prev)?;
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Some(if sign < 0 { -&det } else { det })
}

/// Determinant over the rationals by Gaussian elimination.
pub fn rational_determinant(matrix: &[Vec<BigRational>]) -> BigRational {
    let n = matrix.len();
    let mut m = matrix.to_vec();
    let mut det = BigRational::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return BigRational::zero();
        };
        if p != k {
            m.swap(p, k);
            det = -det;
        }
        let pivot = m[k][k].clone();
        det *= &pivot;
        for i in k + 1..n {
            if m[i][k].is_zero() {
                continue;
            }
            let factor = &m[i][k] / &pivot;
            for j in k..n {
                let delta = &factor * &m[k][j];
                m[i][j] -= delta;
            }
        }
    }
    det
}
