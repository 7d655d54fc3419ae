//! Exact polynomial arithmetic: dense univariate polynomials over any
//! [`Coeff`] scalar and sparse bivariate polynomials over the rationals.
//!
//! This is deliberately not a computer-algebra system; it carries exactly
//! the operations the secular determinants and residual certificates need.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::scalar::{Coeff, Rational};

/// Dense univariate polynomial; `coeffs[k]` multiplies `x^k`.
/// Trailing zero coefficients are trimmed; the zero polynomial is empty.
#[derive(Clone, PartialEq, Debug)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

impl<T: Coeff> Polynomial<T> {
    pub fn new(coeffs: Vec<T>) -> Self {
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// The formal variable `x`.
    pub fn var() -> Self {
        Self::new(vec![T::zero(), T::one()])
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (zero beyond the stored degree).
    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &T) -> T {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::new(Vec::new());
        }
        let d: Vec<T> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| T::from_int(k as i64) * c.clone())
            .collect();
        Self::new(d)
    }

    pub fn scale(&self, s: &T) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    /// Map the coefficients into another scalar type.
    pub fn map<U: Coeff>(&self, f: impl Fn(&T) -> U) -> Polynomial<U> {
        Polynomial::new(self.coeffs.iter().map(f).collect())
    }

    /// Render with a chosen variable name, highest degree first.
    pub fn display_with_var(&self, var: &str) -> String
    where
        T: fmt::Display,
    {
        if self.coeffs.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = format!("{c}");
            let (sign, mag) = match cs.strip_prefix('-') {
                Some(rest) => ("-", rest.to_string()),
                None => ("+", cs),
            };
            if out.is_empty() {
                if sign == "-" {
                    out.push('-');
                }
            } else {
                out.push_str(if sign == "-" { " - " } else { " + " });
            }
            match k {
                0 => out.push_str(&mag),
                _ => {
                    if mag != "1" {
                        out.push_str(&mag);
                        out.push('*');
                    }
                    out.push_str(var);
                    if k > 1 {
                        out.push_str(&format!("^{k}"));
                    }
                }
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl<T: Coeff> Zero for Polynomial<T> {
    fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<T: Coeff> One for Polynomial<T> {
    fn one() -> Self {
        Self::constant(T::one())
    }
}

impl<T: Coeff> Add for Polynomial<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            let a = self.coeffs.get(k).cloned().unwrap_or_else(T::zero);
            let b = rhs.coeffs.get(k).cloned().unwrap_or_else(T::zero);
            out.push(a + b);
        }
        Self::new(out)
    }
}

impl<T: Coeff> Sub for Polynomial<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<T: Coeff> Neg for Polynomial<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl<T: Coeff> Mul for Polynomial<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Self::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(out)
    }
}

impl<T: Coeff> Coeff for Polynomial<T> {
    fn from_int(n: i64) -> Self {
        Self::constant(T::from_int(n))
    }
    fn from_rational(q: &Rational) -> Self {
        Self::constant(T::from_rational(q))
    }
}

/// Sparse bivariate polynomial over the rationals.
///
/// The two formal variables are positional; what they mean (`(f, d)` before
/// the charge shift, `(X, d)` after it) is decided by the caller and only
/// matters when printing or serializing.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct Bivar {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl Bivar {
    pub fn term(e0: u32, e1: u32, coeff: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert((e0, e1), coeff);
        }
        Self { terms }
    }

    /// First formal variable.
    pub fn var0() -> Self {
        Self::term(1, 0, Rational::one())
    }

    /// Second formal variable.
    pub fn var1() -> Self {
        Self::term(0, 1, Rational::one())
    }

    pub fn constant(q: Rational) -> Self {
        Self::term(0, 0, q)
    }

    /// Terms in ascending `(e0, e1)` order; no zero coefficients stored.
    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e0: u32, e1: u32) -> Rational {
        self.terms.get(&(e0, e1)).cloned().unwrap_or_else(Rational::zero)
    }

    /// Degree in the first variable (zero polynomial reports 0).
    pub fn degree0(&self) -> u32 {
        self.terms.keys().map(|k| k.0).max().unwrap_or(0)
    }

    pub fn degree1(&self) -> u32 {
        self.terms.keys().map(|k| k.1).max().unwrap_or(0)
    }

    fn insert(&mut self, key: (u32, u32), q: Rational) {
        if q.is_zero() {
            return;
        }
        let entry = self.terms.entry(key).or_insert_with(Rational::zero);
        *entry += q;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = acc * self.clone();
        }
        acc
    }

    /// Substitute `var0 -> var0 + t * var1`, expanding binomially.
    /// This is how the eigencharge variable is traded for the shifted one.
    pub fn substitute0_linear(&self, t: &Rational) -> Self {
        let mut out = Self::zero();
        for (&(i, j), coeff) in &self.terms {
            // (x + t d)^i d^j
            let mut binom = Rational::one();
            let mut tpow = Rational::one();
            // k = i down to 0 over x^k (t d)^(i-k); iterate m = i - k upward.
            for m in 0..=i {
                if m > 0 {
                    // update binomial C(i, m) and t^m incrementally
                    binom = binom * Rational::from_int((i - m + 1).into())
                        / Rational::from_int(m.into());
                    tpow = tpow * t.clone();
                }
                let contrib = coeff.clone() * binom.clone() * tpow.clone();
                out.insert((i - m, j + m), contrib);
            }
        }
        out
    }

    /// Evaluate the second variable at a rational, leaving a univariate
    /// polynomial in the first.
    pub fn eval1(&self, d: &Rational) -> Polynomial<Rational> {
        let deg0 = self.degree0() as usize;
        let mut coeffs = vec![Rational::zero(); deg0 + 1];
        for (&(i, j), coeff) in &self.terms {
            let mut dp = Rational::one();
            for _ in 0..j {
                dp *= d.clone();
            }
            coeffs[i as usize] += coeff.clone() * dp;
        }
        Polynomial::new(coeffs)
    }

    pub fn eval(&self, x: &Rational, d: &Rational) -> Rational {
        self.eval1(d).eval(x)
    }

    /// Render with explicit variable names, ordered by descending degree in
    /// the first variable, then descending in the second.
    pub fn display_with_vars(&self, v0: &str, v1: &str) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut keys: Vec<&(u32, u32)> = self.terms.keys().collect();
        keys.sort_by(|a, b| (b.0, b.1).cmp(&(a.0, a.1)));
        let mut out = String::new();
        for key in keys {
            let coeff = &self.terms[key];
            let mag = coeff.abs();
            if out.is_empty() {
                if coeff.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if coeff.is_negative() { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || *key == (0, 0) {
                factors.push(format!("{mag}"));
            }
            for (name, e) in [(v0, key.0), (v1, key.1)] {
                match e {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

impl Zero for Bivar {
    fn zero() -> Self {
        Self::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for Bivar {
    fn one() -> Self {
        Self::constant(Rational::one())
    }
}

impl Add for Bivar {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let mut out = self;
        for (key, q) in rhs.terms {
            out.insert(key, q);
        }
        out
    }
}

impl Sub for Bivar {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for Bivar {
    type Output = Self;
    fn neg(mut self) -> Self {
        for q in self.terms.values_mut() {
            *q = -q.clone();
        }
        self
    }
}

impl Mul for Bivar {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::zero();
        for (&(i0, j0), a) in &self.terms {
            for (&(i1, j1), b) in &rhs.terms {
                out.insert((i0 + i1, j0 + j1), a.clone() * b.clone());
            }
        }
        out
    }
}

impl Coeff for Bivar {
    fn from_int(n: i64) -> Self {
        Self::constant(Rational::from_int(n))
    }
    fn from_rational(q: &Rational) -> Self {
        Self::constant(q.clone())
    }
}
