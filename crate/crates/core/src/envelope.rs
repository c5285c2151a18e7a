//! Envelope of a line family: `F = F_T = 0` solved for `(X(T), Y(T))`.
//!
//! With `D = AB' − A'B` the envelope is `X = (BC' − B'C)/D`,
//! `Y = (A'C − AC')/D`. Numerators and denominator are themselves
//! trigonometric polynomials, so their roots and orders of vanishing are
//! computed exactly. A root of `D` is removable when both numerators vanish
//! to at least the same order; otherwise the envelope escapes to infinity.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::curve::{Domain, ParamCurve, Point};
use crate::error::{EnvError, Result};
use crate::families::{FamilyKind, LineFamily};
use crate::roots::{find_roots, RootOptions};
use crate::trig::TrigPoly;

/// Relative threshold for `|D|` and for vanishing derivatives.
pub const DENOM_EPS: f64 = 1e-9;
/// Highest order of vanishing of `D` that is resolved.
const MAX_ORDER: usize = 6;
/// Series terms kept beyond the cancelled order.
const SERIES_TERMS: usize = 14;
/// Derivatives of the line coefficients kept for `F_T … F_TTTTT`.
pub const LINE_ORDER: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnvelopeSample {
    #[serde(rename = "T")]
    pub t: f64,
    /// `None` marks a point at infinity.
    pub point: Option<Point>,
    pub denom: f64,
    pub removable: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InfinityCut {
    #[serde(rename = "T")]
    pub t: f64,
    /// Asymptotic direction; `None` when the line normal vanishes there.
    pub direction: Option<Point>,
    pub denom: f64,
}

/// A removable zero of `D`: a point where the chord degenerates and the
/// envelope touches the generating circle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RemovablePoint {
    #[serde(rename = "T")]
    pub t: f64,
    pub order: usize,
}

/// Precomputed envelope of one family.
#[derive(Debug, Clone)]
pub struct Envelope {
    family: LineFamily,
    /// `[A, A', …]`, `[B, …]`, `[C, …]` up to `LINE_ORDER`.
    lines: [Vec<TrigPoly>; 3],
    /// Derivative chains of the `X` numerator, `Y` numerator and `D`.
    nx: Vec<TrigPoly>,
    ny: Vec<TrigPoly>,
    den: Vec<TrigPoly>,
    den_scale: f64,
    window: f64,
    removable: Vec<RemovablePoint>,
    cuts: Vec<InfinityCut>,
}

fn order_of_vanishing(jet: &[f64], bounds: &[f64], tol: f64) -> Option<usize> {
    jet.iter()
        .zip(bounds)
        .position(|(v, b)| v.abs() > tol * b.max(f64::MIN_POSITIVE))
}

/// Quotient of two power series.
fn series_div(num: &[f64], den: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; num.len()];
    for j in 0..num.len() {
        let mut acc = num[j];
        for i in 1..=j.min(den.len() - 1) {
            acc -= den[i] * out[j - i];
        }
        out[j] = acc / den[0];
    }
    out
}

fn factorials(n: usize) -> Vec<f64> {
    let mut f = vec![1.0; n + 1];
    for i in 1..=n {
        f[i] = f[i - 1] * i as f64;
    }
    f
}

/// `[p(h), p'(h), …]` for the power series `p(h) = Σ c_j h^j`.
fn series_jet(coefs: &[f64], h: f64, order: usize) -> Vec<f64> {
    (0..=order)
        .map(|i| {
            (i..coefs.len()).rev().fold(0.0, |acc, j| {
                let falling: f64 = (0..i).map(|q| (j - q) as f64).product();
                acc * h + coefs[j] * falling
            })
        })
        .collect()
}

impl Envelope {
    pub fn new(family: &LineFamily) -> Result<Self> {
        let depth = MAX_ORDER + SERIES_TERMS + LINE_ORDER + 2;
        let a = &family.x_coef;
        let b = &family.y_coef;
        let c = &family.constant;
        let (a1, b1, c1) = (a.derive(), b.derive(), c.derive());
        let nx = &(b * &c1) - &(&b1 * c);
        let ny = &(&a1 * c) - &(a * &c1);
        let den = &(a * &b1) - &(&a1 * b);
        let lines = [
            a.derivative_chain(LINE_ORDER),
            b.derivative_chain(LINE_ORDER),
            c.derivative_chain(LINE_ORDER),
        ];
        let k = den.max_frequency().max(1) as f64;
        let samples = (512 * den.max_frequency() as usize).max(4096);
        let den_scale = den.sample(samples).iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let mut env = Self {
            family: family.clone(),
            lines,
            nx: nx.derivative_chain(depth),
            ny: ny.derivative_chain(depth),
            den: den.derivative_chain(depth),
            den_scale,
            window: 1e-2 / k,
            removable: Vec::new(),
            cuts: Vec::new(),
        };
        if den_scale == 0.0 {
            return Err(EnvError::Degenerate { t: 0.0 });
        }
        env.locate_denominator_roots(samples)?;
        Ok(env)
    }

    fn locate_denominator_roots(&mut self, samples: usize) -> Result<()> {
        let d0 = &self.den[0];
        let d1 = &self.den[1];
        let opts = RootOptions { samples, accept: DENOM_EPS, ..Default::default() };
        let roots = find_roots(|t| d0.eval(t), |t| d1.eval(t), 0.0, TAU, true, &opts)?;
        for root in roots {
            let t = root.t;
            let (od, onx, ony) = self.orders_at(t);
            let od = od.ok_or(EnvError::Degenerate { t })?;
            if od > MAX_ORDER {
                return Err(EnvError::Degenerate { t });
            }
            let removable = onx.map_or(true, |o| o >= od) && ony.map_or(true, |o| o >= od);
            if removable {
                if od == 0 {
                    continue;
                }
                self.removable.push(RemovablePoint { t, order: od });
            } else {
                let [a, b, _] = self.family.line_at(t);
                let norm = a.hypot(b);
                let direction = (norm > 1e-12 * (1.0 + self.family.outer_radius()))
                    .then(|| [-b / norm, a / norm]);
                self.cuts.push(InfinityCut { t, direction, denom: d0.eval(t) });
            }
        }
        Ok(())
    }

    /// Orders of vanishing of `D`, the `X` numerator and the `Y` numerator.
    fn orders_at(&self, t: f64) -> (Option<usize>, Option<usize>, Option<usize>) {
        let n = MAX_ORDER + 1;
        let order = |chain: &[TrigPoly]| {
            let jet: Vec<f64> = chain[..=n].iter().map(|p| p.eval(t)).collect();
            let bounds: Vec<f64> = (0..=n).map(|j| chain[0].derivative_bound(j)).collect();
            order_of_vanishing(&jet, &bounds, DENOM_EPS)
        };
        (order(&self.den), order(&self.nx), order(&self.ny))
    }

    pub fn family(&self) -> &LineFamily {
        &self.family
    }

    pub fn removable_points(&self) -> &[RemovablePoint] {
        &self.removable
    }

    pub fn infinity_cuts(&self) -> &[InfinityCut] {
        &self.cuts
    }

    /// `max |D|` over a period.
    pub fn denom_scale(&self) -> f64 {
        self.den_scale
    }

    pub fn denominator(&self) -> &TrigPoly {
        &self.den[0]
    }

    pub fn x_numerator(&self) -> &TrigPoly {
        &self.nx[0]
    }

    pub fn y_numerator(&self) -> &TrigPoly {
        &self.ny[0]
    }

    /// Derivative chains `[A…], [B…], [C…]` of the line coefficients.
    pub fn line_chains(&self) -> &[Vec<TrigPoly>; 3] {
        &self.lines
    }

    fn nearest_removable(&self, t: f64) -> Option<(RemovablePoint, f64)> {
        let dom = Domain::Periodic { start: 0.0, period: TAU };
        self.removable
            .iter()
            .map(|r| {
                let mut h = t - r.t;
                h -= TAU * (h / TAU).round();
                (*r, h)
            })
            .filter(|(_, h)| h.abs() < self.window)
            .min_by(|x, y| dom.separation(x.1, 0.0).total_cmp(&dom.separation(y.1, 0.0)))
    }

    /// Taylor coefficients of `X` and `Y` about `t0` after cancelling the
    /// first `skip` (vanishing) orders of numerators and denominator.
    fn quotient_series(&self, t0: f64, skip: usize, terms: usize) -> ([Vec<f64>; 2], f64) {
        let n = skip + terms;
        let fact = factorials(n);
        let coefs = |chain: &[TrigPoly]| -> Vec<f64> {
            (skip..n).map(|j| chain[j].eval(t0) / fact[j]).collect()
        };
        let d = coefs(&self.den);
        let x = series_div(&coefs(&self.nx), &d);
        let y = series_div(&coefs(&self.ny), &d);
        ([x, y], d[0])
    }

    /// Envelope point at `T`, resolving removable singularities by the
    /// limit of the quotient.
    pub fn sample(&self, t: f64) -> Result<EnvelopeSample> {
        let denom = self.den[0].eval(t);
        let small = denom.abs() < DENOM_EPS * self.den_scale;
        if let Some((root, h)) = self.nearest_removable(t) {
            let ([x, y], _) = self.quotient_series(root.t, root.order, SERIES_TERMS);
            let point = [series_jet(&x, h, 0)[0], series_jet(&y, h, 0)[0]];
            return Ok(EnvelopeSample { t, point: Some(point), denom, removable: small });
        }
        if small {
            let (od, onx, ony) = self.orders_at(t);
            let nx_small = onx.map_or(true, |o| o > 0);
            let ny_small = ony.map_or(true, |o| o > 0);
            if nx_small && ny_small {
                let od = match od {
                    Some(o) if o <= MAX_ORDER => o,
                    _ => return Err(EnvError::Degenerate { t }),
                };
                if onx.map_or(true, |o| o >= od) && ony.map_or(true, |o| o >= od) {
                    let ([x, y], _) = self.quotient_series(t, od, 1);
                    return Ok(EnvelopeSample {
                        t,
                        point: Some([x[0], y[0]]),
                        denom,
                        removable: true,
                    });
                }
            }
            return Ok(EnvelopeSample { t, point: None, denom, removable: false });
        }
        let point = [self.nx[0].eval(t) / denom, self.ny[0].eval(t) / denom];
        Ok(EnvelopeSample { t, point: Some(point), denom, removable: false })
    }

    /// Exact derivatives `[(X, Y), (X', Y'), …]` at `T` from the quotient
    /// series; `None` at infinity.
    pub fn derivatives(&self, t: f64, order: usize) -> Option<Vec<Point>> {
        let (series, h) = match self.nearest_removable(t) {
            Some((root, h)) => (self.quotient_series(root.t, root.order, order + SERIES_TERMS).0, h),
            None => {
                let (s, lead) = self.quotient_series(t, 0, order + 1);
                if lead.abs() < DENOM_EPS * self.den_scale {
                    return None;
                }
                (s, 0.0)
            }
        };
        let jx = series_jet(&series[0], h, order);
        let jy = series_jet(&series[1], h, order);
        Some(jx.into_iter().zip(jy).map(|(x, y)| [x, y]).collect())
    }

    /// `∂ᵏF/∂Tᵏ (T, X(T), Y(T)) = A⁽ᵏ⁾X + B⁽ᵏ⁾Y + C⁽ᵏ⁾` together with the
    /// magnitude of its terms.
    pub fn line_derivative(&self, k: usize, t: f64, p: Point) -> (f64, f64) {
        let [a, b, c] = &self.lines;
        let value = a[k].eval(t) * p[0] + b[k].eval(t) * p[1] + c[k].eval(t);
        let scale = a[k].derivative_bound(0) * p[0].abs()
            + b[k].derivative_bound(0) * p[1].abs()
            + c[k].derivative_bound(0);
        (value, scale)
    }
}

impl ParamCurve for Envelope {
    fn domain(&self) -> Domain {
        Domain::Periodic { start: 0.0, period: TAU }
    }

    fn point(&self, t: f64) -> Option<Point> {
        self.sample(t).ok().and_then(|s| s.point)
    }

    fn jet(&self, t: f64, order: usize) -> Option<Vec<Point>> {
        self.derivatives(t, order)
    }
}

/// Envelope point of `family` at `T`.
pub fn envelope_point(family: &LineFamily, t: f64) -> Result<EnvelopeSample> {
    Envelope::new(family)?.sample(t)
}

/// The explicit one- and two-circle envelope formulas, written in `T`.
pub fn closed_form_envelope(family: &LineFamily, t: f64) -> Result<Point> {
    let (a, b) = (family.slope.numerator() as f64, family.slope.denominator() as f64);
    let m = a / b;
    match family.kind {
        FamilyKind::OneCircle => Ok([
            (m * (b * t).cos() + (a * t).cos()) / (m + 1.0),
            (m * (b * t).sin() + (a * t).sin()) / (m + 1.0),
        ]),
        FamilyKind::TwoCircle => {
            let r = family.params.r;
            let cd = ((a - b) * t).cos();
            let den = r * (m + 1.0) * cd - (m * r * r + 1.0);
            let x = r * ((a * t).cos() * (r * cd - 1.0) + m * (b * t).cos() * (cd - r)) / den;
            let y = r * ((a * t).sin() * (r * cd - 1.0) + m * (b * t).sin() * (cd - r)) / den;
            Ok([x, y])
        }
        _ => Err(EnvError::InvalidKind("closed-form envelope")),
    }
}

/// All non-removable zeros of `D` in `[0, 2π)`.
pub fn infinity_cuts(family: &LineFamily) -> Result<Vec<InfinityCut>> {
    Ok(Envelope::new(family)?.cuts)
}

/// Number of infinity cuts predicted from `cos((m−1)t) = (mr² + 1)/(r(m+1))`
/// for concentric two-circle families; `None` for other kinds.
pub fn predicted_cut_count(family: &LineFamily) -> Option<usize> {
    let gap = family.slope.gap() as usize;
    match family.kind {
        FamilyKind::OneCircle => Some(0),
        FamilyKind::TwoCircle => {
            let (m, r) = (family.slope.value(), family.params.r);
            if r == 1.0 {
                return Some(0);
            }
            let rho = (m * r * r + 1.0) / (r * (m + 1.0));
            let excess = rho.abs() - 1.0;
            Some(if excess.abs() <= 1e-12 {
                gap
            } else if excess < 0.0 {
                2 * gap
            } else {
                0
            })
        }
        _ => None,
    }
}
