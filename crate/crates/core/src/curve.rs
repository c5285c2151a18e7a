//! Parametric plane curves shared by the envelope, the standard catastrophe
//! slices, the crossing counter and the renderer.

use serde::{Deserialize, Serialize};

pub type Point = [f64; 2];

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Domain {
    /// `[start, start + period)`, wrapping around.
    Periodic { start: f64, period: f64 },
    Interval { lo: f64, hi: f64 },
}

impl Domain {
    pub fn bounds(&self) -> (f64, f64) {
        match *self {
            Domain::Periodic { start, period } => (start, start + period),
            Domain::Interval { lo, hi } => (lo, hi),
        }
    }

    pub fn is_periodic(&self) -> bool {
        matches!(self, Domain::Periodic { .. })
    }

    /// Parameter distance, measured around the circle for periodic domains.
    pub fn separation(&self, t1: f64, t2: f64) -> f64 {
        let d = (t1 - t2).abs();
        match *self {
            Domain::Periodic { period, .. } => {
                let d = d.rem_euclid(period);
                d.min(period - d)
            }
            Domain::Interval { .. } => d,
        }
    }

    /// Maps `t` back into the canonical range.
    pub fn wrap(&self, t: f64) -> f64 {
        match *self {
            Domain::Periodic { start, period } => start + (t - start).rem_euclid(period),
            Domain::Interval { .. } => t,
        }
    }
}

/// A curve `t ↦ γ(t)` that may escape to infinity at isolated parameters.
pub trait ParamCurve: Sync {
    fn domain(&self) -> Domain;

    /// `None` when the curve is at infinity.
    fn point(&self, t: f64) -> Option<Point>;

    /// `[γ(t), γ'(t), …, γ^(order)(t)]`.
    fn jet(&self, t: f64, order: usize) -> Option<Vec<Point>>;
}

/// Real polynomial with ascending coefficients.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Poly(pub Vec<f64>);

impl Poly {
    pub fn eval(&self, t: f64) -> f64 {
        self.0.iter().rev().fold(0.0, |acc, c| acc * t + c)
    }

    pub fn derive(&self) -> Poly {
        Poly(self.0.iter().enumerate().skip(1).map(|(i, c)| i as f64 * c).collect())
    }
}

/// `t ↦ (x(t), y(t))` with polynomial components on a finite interval.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyCurve {
    pub x: Poly,
    pub y: Poly,
    pub lo: f64,
    pub hi: f64,
}

impl ParamCurve for PolyCurve {
    fn domain(&self) -> Domain {
        Domain::Interval { lo: self.lo, hi: self.hi }
    }

    fn point(&self, t: f64) -> Option<Point> {
        Some([self.x.eval(t), self.y.eval(t)])
    }

    fn jet(&self, t: f64, order: usize) -> Option<Vec<Point>> {
        let (mut x, mut y) = (self.x.clone(), self.y.clone());
        let mut out = Vec::with_capacity(order + 1);
        for _ in 0..=order {
            out.push([x.eval(t), y.eval(t)]);
            x = x.derive();
            y = y.derive();
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poly_eval_and_derive() {
        let p = Poly(vec![1.0, 0.0, 3.0]);
        assert_eq!(p.eval(2.0), 13.0);
        assert_eq!(p.derive().0, vec![0.0, 6.0]);
    }

    #[test]
    fn periodic_separation_wraps() {
        let d = Domain::Periodic { start: 0.0, period: 10.0 };
        assert!((d.separation(0.5, 9.5) - 1.0).abs() < 1e-12);
        assert!((d.wrap(-1.0) - 9.0).abs() < 1e-12);
    }
}
