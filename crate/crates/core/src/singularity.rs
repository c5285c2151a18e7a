//! Singular points of envelopes and of general parametric curves.
//!
//! Along the envelope, `F_TT(T, X(T), Y(T))` vanishes exactly where the
//! envelope is singular (away from zeros of `D`). Multiplying through by
//! `D` gives the trigonometric polynomial `A''·Nx + B''·Ny + C''·D`, whose
//! roots are located on a dense grid. Each root is then classified by the
//! next derivatives `F_TTT`, `F_TTTT`, `F_TTTTT`:
//!
//! | vanishing                 | class         |
//! |---------------------------|---------------|
//! | `F_TT`                    | simple cusp   |
//! | `F_TT, F_TTT`             | swallowtail   |
//! | `F_TT, F_TTT, F_TTTT`     | butterfly     |

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::curve::{ParamCurve, Point};
use crate::envelope::{Envelope, DENOM_EPS};
use crate::error::{EnvError, Result};
use crate::families::{FamilyKind, LineFamily};
use crate::fd;
use crate::roots::{find_roots, RootOptions};
use crate::trig::{RationalSlope, TrigPoly};

/// Relative cutoff below which a derivative counts as zero.
pub const CLASS_EPS: f64 = 1e-7;
/// Singular points closer than this (in `T`) are reported once.
const MERGE_T: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SingularClass {
    SimpleCusp,
    Swallowtail,
    Butterfly,
    HigherDegenerate,
}

impl SingularClass {
    pub fn name(&self) -> &'static str {
        match self {
            SingularClass::SimpleCusp => "SimpleCusp",
            SingularClass::Swallowtail => "Swallowtail",
            SingularClass::Butterfly => "Butterfly",
            SingularClass::HigherDegenerate => "HigherDegenerate",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub f_tt: f64,
    pub f_ttt: f64,
    pub f_tttt: f64,
    pub f_ttttt: f64,
    /// Bounds `‖A⁽ᵏ⁾‖|X| + ‖B⁽ᵏ⁾‖|Y| + ‖C⁽ᵏ⁾‖` for `k = 2..=5`.
    pub scales: [f64; 4],
    /// `X''Y''' − X'''Y''` from finite differences of the envelope.
    pub cusp_determinant: Option<f64>,
    pub cusp_determinant_scale: Option<f64>,
}

impl Diagnostics {
    pub fn values(&self) -> [f64; 4] {
        [self.f_tt, self.f_ttt, self.f_tttt, self.f_ttttt]
    }

    /// `|F_k| / scale_k` for `k = 2..=5`.
    pub fn relative(&self) -> [f64; 4] {
        let v = self.values();
        std::array::from_fn(|i| if self.scales[i] > 0.0 { v[i].abs() / self.scales[i] } else { 0.0 })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SingularPoint {
    #[serde(rename = "T")]
    pub t: f64,
    /// `None` when the singular point sits at an infinity cut.
    pub location: Option<Point>,
    pub class: SingularClass,
    pub diagnostics: Diagnostics,
}

fn class_from_chain(rel: [f64; 4]) -> SingularClass {
    let zero = |v: f64| v < CLASS_EPS;
    match (zero(rel[1]), zero(rel[2]), zero(rel[3])) {
        (false, _, _) => SingularClass::SimpleCusp,
        (true, false, _) => SingularClass::Swallowtail,
        (true, true, false) => SingularClass::Butterfly,
        _ => SingularClass::HigherDegenerate,
    }
}

/// `A⁽ᵏ⁾·Nx + B⁽ᵏ⁾·Ny + C⁽ᵏ⁾·D`, i.e. `D · ∂ᵏF/∂Tᵏ` along the envelope.
fn cleared_derivative(env: &Envelope, k: usize) -> TrigPoly {
    let [a, b, c] = env.line_chains();
    &(&(&a[k] * env.x_numerator()) + &(&b[k] * env.y_numerator())) + &(&c[k] * env.denominator())
}

/// Step used for finite-difference checks on an envelope.
fn fd_step(env: &Envelope) -> f64 {
    0.4 / env.family().slope.max_frequency() as f64
}

/// `X''Y''' − X'''Y''` by Richardson-extrapolated differences.
fn cusp_determinant(env: &Envelope, t: f64) -> Option<(f64, f64)> {
    let h = fd_step(env) / 4.0;
    let f = |s: f64| env.point(s);
    let d2 = fd::derivative(&f, t, 2, h, 4)?;
    let d3 = fd::derivative(&f, t, 3, h, 4)?;
    let det = d2[0] * d3[1] - d3[0] * d2[1];
    Some((det, (d2[0] * d3[1]).abs() + (d3[0] * d2[1]).abs()))
}

fn diagnose(env: &Envelope, t: f64, location: Option<Point>) -> Diagnostics {
    let mut values = [0.0; 4];
    let mut scales = [0.0; 4];
    for k in 2..=5 {
        let (v, s) = match location {
            Some(p) => env.line_derivative(k, t, p),
            None => {
                let [a, b, c] = env.line_chains();
                let (nx, ny, den) = (env.x_numerator(), env.y_numerator(), env.denominator());
                let value = a[k].eval(t) * nx.eval(t) + b[k].eval(t) * ny.eval(t) + c[k].eval(t) * den.eval(t);
                let scale = a[k].derivative_bound(0) * nx.derivative_bound(0)
                    + b[k].derivative_bound(0) * ny.derivative_bound(0)
                    + c[k].derivative_bound(0) * den.derivative_bound(0);
                (value, scale)
            }
        };
        values[k - 2] = v;
        scales[k - 2] = s;
    }
    let det = location.and_then(|_| cusp_determinant(env, t));
    Diagnostics {
        f_tt: values[0],
        f_ttt: values[1],
        f_tttt: values[2],
        f_ttttt: values[3],
        scales,
        cusp_determinant: det.map(|d| d.0),
        cusp_determinant_scale: det.map(|d| d.1),
    }
}

fn classify_on(env: &Envelope, t: f64, location: Option<Point>) -> SingularPoint {
    let diagnostics = diagnose(env, t, location);
    SingularPoint { t, location, class: class_from_chain(diagnostics.relative()), diagnostics }
}

/// Classifies the envelope point at `T`, which must be singular.
pub fn classify(family: &LineFamily, t: f64) -> Result<SingularPoint> {
    let env = Envelope::new(family)?;
    classify_at(&env, t)
}

pub fn classify_at(env: &Envelope, t: f64) -> Result<SingularPoint> {
    let sample = env.sample(t)?;
    let point = classify_on(env, t, sample.point);
    if point.diagnostics.relative()[0] >= CLASS_EPS {
        return Err(EnvError::PreconditionFailed(format!(
            "F_TT = {:e} is not small at T = {t}",
            point.diagnostics.f_tt
        )));
    }
    Ok(point)
}

/// Default grid size for the singular-point search.
pub fn default_samples(slope: RationalSlope) -> usize {
    4096 * slope.max_frequency() as usize
}

/// All singular points of the envelope of `family` in `T ∈ [0, 2π)`.
pub fn find_singular_points(family: &LineFamily) -> Result<Vec<SingularPoint>> {
    let env = Envelope::new(family)?;
    singular_points_of(&env, default_samples(family.slope))
}

pub fn singular_points_of(env: &Envelope, samples: usize) -> Result<Vec<SingularPoint>> {
    let g = cleared_derivative(env, 2);
    let dg = g.derive();
    let opts = RootOptions { samples, merge: MERGE_T, ..Default::default() };
    let roots = find_roots(|t| g.eval(t), |t| dg.eval(t), 0.0, TAU, true, &opts)?;

    let near = |a: f64, b: f64| {
        let d = (a - b).rem_euclid(TAU);
        d.min(TAU - d) < MERGE_T
    };
    let mut out = Vec::new();
    for root in roots {
        let t = root.t;
        if let Some(rp) = env.removable_points().iter().find(|r| near(r.t, t)) {
            // F_TT vanishes to the order of D alone: a smooth tangency
            let n = 2 * rp.order + 2;
            let jet = g.eval_jet(rp.t, n);
            let order = (0..=n).find(|&j| jet[j].abs() > DENOM_EPS * g.derivative_bound(j));
            if order.map_or(false, |o| o <= 2 * rp.order) {
                continue;
            }
            out.push(classify_on(env, rp.t, env.sample(rp.t)?.point));
            continue;
        }
        if let Some(cut) = env.infinity_cuts().iter().find(|c| near(c.t, t)) {
            out.push(classify_on(env, cut.t, None));
            continue;
        }
        out.push(classify_on(env, t, env.sample(t)?.point));
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "PascalCase")]
pub struct ClassCounts {
    pub simple_cusp: usize,
    pub swallowtail: usize,
    pub butterfly: usize,
    pub higher_degenerate: usize,
}

impl ClassCounts {
    pub fn total(&self) -> usize {
        self.simple_cusp + self.swallowtail + self.butterfly + self.higher_degenerate
    }
}

pub fn class_counts(points: &[SingularPoint]) -> ClassCounts {
    let mut c = ClassCounts::default();
    for p in points {
        match p.class {
            SingularClass::SimpleCusp => c.simple_cusp += 1,
            SingularClass::Swallowtail => c.swallowtail += 1,
            SingularClass::Butterfly => c.butterfly += 1,
            SingularClass::HigherDegenerate => c.higher_degenerate += 1,
        }
    }
    c
}

/// Counts predicted by the one- and two-circle theorems.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnalyticPrediction {
    pub general_cusp_count: usize,
    pub extra_cusp_count: usize,
    pub tangency_count: usize,
    /// Only the one-circle construction has a crossing formula.
    pub crossing_count: Option<usize>,
    pub infinity_count: usize,
    /// `|m − 2| / |2m − 1|`; `None` for `m = 1/2`.
    pub extreme_r: Option<f64>,
    /// `(1, 1/|m|]` when the envelope can reach infinity.
    pub infinity_window: Option<(f64, f64)>,
}

impl AnalyticPrediction {
    pub fn total_cusps(&self) -> usize {
        self.general_cusp_count + self.extra_cusp_count
    }
}

pub fn predict(family: &LineFamily) -> Result<AnalyticPrediction> {
    let s = family.slope;
    let m = s.value();
    let gap = s.gap() as usize;
    let extreme_r = {
        let den = (2.0 * m - 1.0).abs();
        (den > 0.0).then(|| (m - 2.0).abs() / den)
    };
    let infinity_window = (m.abs() < 1.0).then(|| (1.0, 1.0 / m.abs()));
    let one_circle = |gap: usize| {
        let crossings = if m.abs() < 1.0 {
            (s.numerator().unsigned_abs() as usize - 1) * gap
        } else {
            (s.denominator() as usize - 1) * gap
        };
        AnalyticPrediction {
            general_cusp_count: gap,
            extra_cusp_count: 0,
            tangency_count: gap,
            crossing_count: Some(crossings),
            infinity_count: 0,
            extreme_r,
            infinity_window,
        }
    };
    match family.kind {
        FamilyKind::OneCircle => Ok(one_circle(gap)),
        FamilyKind::TwoCircle if family.params.r == 1.0 => Ok(one_circle(gap)),
        FamilyKind::TwoCircle => {
            let r = family.params.r;
            let half = s.numerator() == 1 && s.denominator() == 2;
            let extra = if half && r > 1.0 {
                2 * gap
            } else if m.abs() < 1.0 && r > 1.0 && extreme_r.map_or(false, |e| r < e) {
                2 * gap
            } else {
                0
            };
            Ok(AnalyticPrediction {
                general_cusp_count: 2 * gap,
                extra_cusp_count: extra,
                tangency_count: 0,
                crossing_count: None,
                infinity_count: crate::envelope::predicted_cut_count(family).unwrap_or(0),
                extreme_r,
                infinity_window,
            })
        }
        _ => Err(EnvError::InvalidKind("analytic prediction")),
    }
}

/// Taylor coefficients of the envelope in powers of `(t − t₀)`, `t = bT`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaylorSeries {
    #[serde(rename = "T0")]
    pub big_t0: f64,
    pub t0: f64,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
}

/// Truncated Taylor series of `(X, Y)` about `T0` from Richardson-extrapolated
/// central differences, rescaled to the original parameter `t = bT`.
pub fn taylor_at(family: &LineFamily, t0: f64, order: usize) -> Result<TaylorSeries> {
    if order > 6 {
        return Err(EnvError::InvalidParameter(format!("order {order} exceeds 6")));
    }
    let env = Envelope::new(family)?;
    let h = fd_step(&env);
    let radius = fd::stencil_radius(order, h);
    let dom = env.domain();
    if env.infinity_cuts().iter().any(|c| dom.separation(c.t, t0) <= radius * 1.5) {
        return Err(EnvError::NearInfinity { t: t0 });
    }
    let f = |s: f64| env.point(s);
    let jet = fd::jet(&f, t0, order, h, 5).ok_or(EnvError::NearInfinity { t: t0 })?;
    let b = family.slope.denominator() as f64;
    let mut fact = 1.0;
    let (mut x, mut y) = (Vec::new(), Vec::new());
    for (k, d) in jet.iter().enumerate() {
        if k > 0 {
            fact *= k as f64;
        }
        let bk = b.powi(k as i32);
        x.push(d[0] / fact / bk);
        y.push(d[1] / fact / bk);
    }
    Ok(TaylorSeries { big_t0: t0, t0: b * t0, x, y })
}

/// Solves `F_TT = F_TTT = 0` for `(T, r)` on an offset family with fixed
/// `d`, starting from `(t_guess, r_guess)`.
pub fn locate_swallowtail(
    slope: RationalSlope,
    d: f64,
    r_guess: f64,
    t_guess: f64,
) -> Result<(f64, f64)> {
    let system = |t: f64, r: f64| -> Result<([f64; 2], [f64; 2])> {
        let fam = LineFamily::offset_circle(slope, r, 0.0, d)?;
        let env = Envelope::new(&fam)?;
        let g2 = cleared_derivative(&env, 2);
        let g3 = cleared_derivative(&env, 3);
        let norm = [g2.derivative_bound(0), g3.derivative_bound(0)];
        let val = [g2.eval(t) / norm[0], g3.eval(t) / norm[1]];
        let dt = [g2.derive().eval(t) / norm[0], g3.derive().eval(t) / norm[1]];
        Ok((val, dt))
    };
    let (mut t, mut r) = (t_guess, r_guess);
    for _ in 0..60 {
        let (v, dt) = system(t, r)?;
        let hr = 1e-6 * r.max(1.0);
        let (vp, _) = system(t, r + hr)?;
        let (vm, _) = system(t, r - hr)?;
        let dr = [(vp[0] - vm[0]) / (2.0 * hr), (vp[1] - vm[1]) / (2.0 * hr)];
        let det = dt[0] * dr[1] - dr[0] * dt[1];
        if det == 0.0 || !det.is_finite() {
            break;
        }
        let step_t = (v[0] * dr[1] - dr[0] * v[1]) / det;
        let step_r = (dt[0] * v[1] - v[0] * dt[1]) / det;
        t -= step_t;
        r -= step_r;
        if step_t.abs() < 1e-14 && step_r.abs() < 1e-14 {
            return Ok((t.rem_euclid(TAU), r));
        }
    }
    let (v, _) = system(t, r)?;
    if v[0].abs() < 1e-12 && v[1].abs() < 1e-12 {
        Ok((t.rem_euclid(TAU), r))
    } else {
        Err(EnvError::UnresolvedRoot { lo: t, hi: r })
    }
}

/// A singular point of a general parametric curve, typed by the orders
/// `(p, q)` of the first non-vanishing derivative and of the first one
/// independent of it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurveSingularity {
    pub t: f64,
    pub point: Point,
    pub orders: (usize, usize),
    pub class: SingularClass,
}

const CURVE_JET: usize = 7;

/// Singular points (zero speed) of any curve, found as the zeros of
/// `|γ'|²` and typed by derivative orders. Makes no use of how the curve
/// was constructed.
pub fn find_curve_singularities<C: ParamCurve>(curve: &C, samples: usize) -> Vec<CurveSingularity> {
    let speed2 = |t: f64| {
        curve.jet(t, 1).map_or(f64::NAN, |j| j[1][0] * j[1][0] + j[1][1] * j[1][1])
    };
    let dspeed2 = |t: f64| {
        curve
            .jet(t, 2)
            .map_or(f64::NAN, |j| 2.0 * (j[1][0] * j[2][0] + j[1][1] * j[2][1]))
    };
    let (lo, hi) = curve.domain().bounds();
    let grid: Vec<Vec<Point>> = (0..=samples)
        .filter_map(|i| curve.jet(lo + (hi - lo) * i as f64 / samples as f64, CURVE_JET))
        .collect();
    let mut max_norm = [0.0f64; CURVE_JET + 1];
    for jet in &grid {
        for (k, v) in jet.iter().enumerate() {
            max_norm[k] = max_norm[k].max(v[0].hypot(v[1]));
        }
    }
    let opts = RootOptions { samples, accept: 1e-20, merge: MERGE_T, ..Default::default() };
    let Ok(roots) = find_roots(speed2, dspeed2, lo, hi, curve.domain().is_periodic(), &opts) else {
        return Vec::new();
    };
    roots
        .into_iter()
        .filter(|r| r.even)
        .filter_map(|r| {
            let jet = curve.jet(r.t, CURVE_JET)?;
            let norm = |v: Point| v[0].hypot(v[1]);
            let p = (1..=CURVE_JET).find(|&k| norm(jet[k]) > CLASS_EPS * max_norm[k])?;
            if p == 1 {
                return None;
            }
            let lead = jet[p];
            let q = (p + 1..=CURVE_JET).find(|&k| {
                let cross = lead[0] * jet[k][1] - lead[1] * jet[k][0];
                cross.abs() > CLASS_EPS * norm(lead) * max_norm[k]
            })?;
            let class = match (p, q) {
                (2, 3) => SingularClass::SimpleCusp,
                (3, 4) => SingularClass::Swallowtail,
                (4, 5) => SingularClass::Butterfly,
                _ => SingularClass::HigherDegenerate,
            };
            Some(CurveSingularity { t: r.t, point: jet[0], orders: (p, q), class })
        })
        .collect()
}
