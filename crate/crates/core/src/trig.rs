//! Trigonometric polynomials with integer frequencies.
//!
//! Every line family in this crate is written in the reparametrized angle
//! `T = t / b`, which turns the slope `m = a/b` into the integer frequencies
//! `a` and `b`. All coefficients of a family are then finite sums of
//! `cos(kT)` and `sin(kT)` terms, closed under differentiation and products.

use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{EnvError, Result};

fn gcd(mut a: i64, mut b: i64) -> i64 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// A rational slope `m = a/b` kept in lowest terms with `b >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RationalSlope {
    a: i64,
    b: i64,
}

impl RationalSlope {
    /// Reduces `a/b` to lowest terms and moves the sign onto the numerator.
    pub fn new(a: i64, b: i64) -> Result<Self> {
        if b == 0 {
            return Err(EnvError::ZeroDenominator);
        }
        let g = gcd(a, b).max(1);
        let s = if b < 0 { -1 } else { 1 };
        Ok(Self { a: s * a / g, b: s * b / g })
    }

    /// Like [`RationalSlope::new`] but also rejects `m ∈ {-1, 0, 1}`, for
    /// which the chord family has no envelope.
    pub fn for_envelope(a: i64, b: i64) -> Result<Self> {
        let s = Self::new(a, b)?;
        if s.is_excluded() {
            return Err(EnvError::ExcludedSlope { a: s.a, b: s.b });
        }
        Ok(s)
    }

    pub fn numerator(&self) -> i64 {
        self.a
    }

    pub fn denominator(&self) -> i64 {
        self.b
    }

    pub fn value(&self) -> f64 {
        self.a as f64 / self.b as f64
    }

    pub fn is_excluded(&self) -> bool {
        self.b == 1 && (-1..=1).contains(&self.a)
    }

    /// `|a - b|`, the basic count appearing in every cusp formula.
    pub fn gap(&self) -> u64 {
        (self.a - self.b).unsigned_abs()
    }

    /// `max(|a|, b)`, used to size sampling grids.
    pub fn max_frequency(&self) -> u64 {
        self.a.unsigned_abs().max(self.b as u64)
    }

    /// Converts the reparametrized angle `T` into the original `t = bT`.
    pub fn to_t(&self, big_t: f64) -> f64 {
        self.b as f64 * big_t
    }

    pub fn from_t(&self, t: f64) -> f64 {
        t / self.b as f64
    }
}

impl fmt::Display for RationalSlope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.a, self.b)
    }
}

/// One `cos_coef·cos(kT) + sin_coef·sin(kT)` term.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub k: u32,
    pub cos_coef: f64,
    pub sin_coef: f64,
}

/// A finite trigonometric sum with non-negative integer frequencies.
///
/// Terms are sorted by strictly increasing frequency. The constant is the
/// `k = 0` cosine coefficient; a `k = 0` sine coefficient is always zero.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct TrigPoly {
    terms: Vec<Term>,
}

impl TrigPoly {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn constant(c: f64) -> Self {
        Self::from_terms([(0, c, 0.0)])
    }

    /// `coef·cos(kT)`; negative `k` folds through `cos(-x) = cos(x)`.
    pub fn cos(k: i64, coef: f64) -> Self {
        Self::from_terms([(k.unsigned_abs() as u32, coef, 0.0)])
    }

    /// `coef·sin(kT)`; negative `k` folds through `sin(-x) = -sin(x)`.
    pub fn sin(k: i64, coef: f64) -> Self {
        let sign = if k < 0 { -1.0 } else { 1.0 };
        Self::from_terms([(k.unsigned_abs() as u32, 0.0, sign * coef)])
    }

    /// Builds a polynomial from `(k, cos_coef, sin_coef)` triples, merging
    /// repeated frequencies.
    pub fn from_terms<I: IntoIterator<Item = (u32, f64, f64)>>(terms: I) -> Self {
        let mut map: BTreeMap<u32, (f64, f64)> = BTreeMap::new();
        for (k, c, s) in terms {
            let e = map.entry(k).or_insert((0.0, 0.0));
            e.0 += c;
            if k != 0 {
                e.1 += s;
            }
        }
        Self::from_map(map)
    }

    fn from_map(map: BTreeMap<u32, (f64, f64)>) -> Self {
        let terms = map
            .into_iter()
            .filter(|(_, (c, s))| *c != 0.0 || *s != 0.0)
            .map(|(k, (cos_coef, sin_coef))| Term { k, cos_coef, sin_coef })
            .collect();
        Self { terms }
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_frequency(&self) -> u32 {
        self.terms.last().map_or(0, |t| t.k)
    }

    /// Cosine and sine coefficients at frequency `k` (zero when absent).
    pub fn coefficient(&self, k: u32) -> (f64, f64) {
        self.terms
            .binary_search_by_key(&k, |t| t.k)
            .map(|i| (self.terms[i].cos_coef, self.terms[i].sin_coef))
            .unwrap_or((0.0, 0.0))
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.terms
            .iter()
            .map(|term| {
                let (s, c) = (term.k as f64 * t).sin_cos();
                term.cos_coef * c + term.sin_coef * s
            })
            .sum()
    }

    /// Values of the polynomial and its first `order` derivatives at `t`.
    pub fn eval_jet(&self, t: f64, order: usize) -> Vec<f64> {
        let mut out = vec![0.0; order + 1];
        for term in &self.terms {
            let k = term.k as f64;
            let (s, c) = (k * t).sin_cos();
            let (mut cc, mut sc) = (term.cos_coef, term.sin_coef);
            for slot in out.iter_mut() {
                *slot += cc * c + sc * s;
                let next = (k * sc, -k * cc);
                cc = next.0;
                sc = next.1;
            }
        }
        out
    }

    /// Exact derivative: `(k, c, s) ↦ (k, k·s, −k·c)`.
    pub fn derive(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|t| t.k != 0)
            .map(|t| {
                let k = t.k as f64;
                Term { k: t.k, cos_coef: k * t.sin_coef, sin_coef: -k * t.cos_coef }
            })
            .collect();
        Self { terms }
    }

    pub fn nth_derivative(&self, n: usize) -> Self {
        (0..n).fold(self.clone(), |p, _| p.derive())
    }

    /// `[p, p', p'', …]` up to and including the `n`-th derivative.
    pub fn derivative_chain(&self, n: usize) -> Vec<Self> {
        let mut out = Vec::with_capacity(n + 1);
        out.push(self.clone());
        for i in 0..n {
            let next = out[i].derive();
            out.push(next);
        }
        out
    }

    /// Upper bound for `max |p^(j)|` over a period: `Σ (|c| + |s|)·k^j`.
    pub fn derivative_bound(&self, j: usize) -> f64 {
        self.terms
            .iter()
            .map(|t| (t.cos_coef.abs() + t.sin_coef.abs()) * (t.k as f64).powi(j as i32))
            .sum()
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self::from_terms(
            self.terms.iter().map(|t| (t.k, factor * t.cos_coef, factor * t.sin_coef)),
        )
    }

    /// Coefficient-wise comparison treating missing terms as zero.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        let (mut i, mut j) = (0, 0);
        let close = |c: f64, s: f64| c.abs() <= tol && s.abs() <= tol;
        while i < self.terms.len() || j < other.terms.len() {
            let a = self.terms.get(i);
            let b = other.terms.get(j);
            let ok = match (a, b) {
                (Some(x), Some(y)) if x.k == y.k => {
                    i += 1;
                    j += 1;
                    close(x.cos_coef - y.cos_coef, x.sin_coef - y.sin_coef)
                }
                (Some(x), Some(y)) if x.k < y.k => {
                    i += 1;
                    close(x.cos_coef, x.sin_coef)
                }
                (Some(x), None) => {
                    i += 1;
                    close(x.cos_coef, x.sin_coef)
                }
                (_, Some(y)) => {
                    j += 1;
                    close(y.cos_coef, y.sin_coef)
                }
                (None, None) => unreachable!(),
            };
            if !ok {
                return false;
            }
        }
        true
    }

    /// Samples `n` equally spaced values over `[0, 2π)`.
    pub fn sample(&self, n: usize) -> Vec<f64> {
        (0..n).map(|i| self.eval(TAU * i as f64 / n as f64)).collect()
    }
}

impl Add for &TrigPoly {
    type Output = TrigPoly;
    fn add(self, rhs: &TrigPoly) -> TrigPoly {
        TrigPoly::from_terms(
            self.terms
                .iter()
                .chain(rhs.terms.iter())
                .map(|t| (t.k, t.cos_coef, t.sin_coef)),
        )
    }
}

impl Add for TrigPoly {
    type Output = TrigPoly;
    fn add(self, rhs: TrigPoly) -> TrigPoly {
        &self + &rhs
    }
}

impl Neg for &TrigPoly {
    type Output = TrigPoly;
    fn neg(self) -> TrigPoly {
        self.scale(-1.0)
    }
}

impl Neg for TrigPoly {
    type Output = TrigPoly;
    fn neg(self) -> TrigPoly {
        self.scale(-1.0)
    }
}

impl Sub for &TrigPoly {
    type Output = TrigPoly;
    fn sub(self, rhs: &TrigPoly) -> TrigPoly {
        self + &(-rhs)
    }
}

impl Sub for TrigPoly {
    type Output = TrigPoly;
    fn sub(self, rhs: TrigPoly) -> TrigPoly {
        &self - &rhs
    }
}

impl Mul<f64> for &TrigPoly {
    type Output = TrigPoly;
    fn mul(self, rhs: f64) -> TrigPoly {
        self.scale(rhs)
    }
}

impl Mul<f64> for TrigPoly {
    type Output = TrigPoly;
    fn mul(self, rhs: f64) -> TrigPoly {
        self.scale(rhs)
    }
}

/// Product via the product-to-sum identities.
impl Mul for &TrigPoly {
    type Output = TrigPoly;
    fn mul(self, rhs: &TrigPoly) -> TrigPoly {
        let mut map: BTreeMap<u32, (f64, f64)> = BTreeMap::new();
        let mut push = |k: i64, c: f64, s: f64| {
            // fold negative frequencies: cos(-x) = cos x, sin(-x) = -sin x
            let (k, s) = if k < 0 { (-k, -s) } else { (k, s) };
            let e = map.entry(k as u32).or_insert((0.0, 0.0));
            e.0 += c;
            if k != 0 {
                e.1 += s;
            }
        };
        for x in &self.terms {
            for y in &rhs.terms {
                let (k1, k2) = (x.k as i64, y.k as i64);
                let (sum, diff) = (k1 + k2, k1 - k2);
                // cos·cos
                let cc = 0.5 * x.cos_coef * y.cos_coef;
                push(diff, cc, 0.0);
                push(sum, cc, 0.0);
                // sin·sin
                let ss = 0.5 * x.sin_coef * y.sin_coef;
                push(diff, ss, 0.0);
                push(sum, -ss, 0.0);
                // sin k1 · cos k2
                let sc = 0.5 * x.sin_coef * y.cos_coef;
                push(sum, 0.0, sc);
                push(diff, 0.0, sc);
                // cos k1 · sin k2
                let cs = 0.5 * x.cos_coef * y.sin_coef;
                push(sum, 0.0, cs);
                push(diff, 0.0, -cs);
            }
        }
        TrigPoly::from_map(map)
    }
}

impl Mul for TrigPoly {
    type Output = TrigPoly;
    fn mul(self, rhs: TrigPoly) -> TrigPoly {
        &self * &rhs
    }
}
