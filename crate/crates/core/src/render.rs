//! Scenes, SVG output and the JSON scene document.
//!
//! Envelopes are sampled on a uniform grid, refined where the polyline turns
//! sharply or jumps, cut at infinity cuts and clipped to the viewport.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::curve::{ParamCurve, Point, PolyCurve};
use crate::envelope::{Envelope, InfinityCut};
use crate::error::{EnvError, Result};
use crate::families::{Catastrophe, FamilyKind, FamilySpec, LineFamily};
use crate::singularity::{
    find_curve_singularities, predict, singular_points_of, AnalyticPrediction, SingularClass,
};
use crate::trig::RationalSlope;

pub type Arc = Vec<Point>;

const MAX_TURN_DEG: f64 = 10.0;
const JUMP_FRACTION: f64 = 1.0 / 50.0;
const MAX_DEPTH: u32 = 10;
const INFLATE: f64 = 0.2;
const CAP: f64 = 5.0;
/// Arcs approaching a cut are followed until this many viewport widths out.
const FAR: f64 = 4.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Viewport {
    pub xmin: f64,
    pub xmax: f64,
    pub ymin: f64,
    pub ymax: f64,
}

impl Viewport {
    pub fn around(points: impl IntoIterator<Item = Point>) -> Option<Self> {
        let mut it = points.into_iter().filter(|p| p[0].is_finite() && p[1].is_finite());
        let first = it.next()?;
        let mut v = Viewport { xmin: first[0], xmax: first[0], ymin: first[1], ymax: first[1] };
        for p in it {
            v.xmin = v.xmin.min(p[0]);
            v.xmax = v.xmax.max(p[0]);
            v.ymin = v.ymin.min(p[1]);
            v.ymax = v.ymax.max(p[1]);
        }
        Some(v)
    }

    pub fn width(&self) -> f64 {
        self.xmax - self.xmin
    }

    pub fn height(&self) -> f64 {
        self.ymax - self.ymin
    }

    pub fn size(&self) -> f64 {
        self.width().max(self.height())
    }

    pub fn contains(&self, p: Point) -> bool {
        (self.xmin..=self.xmax).contains(&p[0]) && (self.ymin..=self.ymax).contains(&p[1])
    }

    /// Grown by `fraction` of its larger side on every edge.
    pub fn inflate(&self, fraction: f64) -> Self {
        let m = fraction * self.size().max(1e-9);
        Viewport { xmin: self.xmin - m, xmax: self.xmax + m, ymin: self.ymin - m, ymax: self.ymax + m }
    }

    pub fn intersect(&self, other: &Viewport) -> Self {
        Viewport {
            xmin: self.xmin.max(other.xmin),
            xmax: self.xmax.min(other.xmax),
            ymin: self.ymin.max(other.ymin),
            ymax: self.ymax.min(other.ymax),
        }
    }

    pub fn union(&self, other: &Viewport) -> Self {
        Viewport {
            xmin: self.xmin.min(other.xmin),
            xmax: self.xmax.max(other.xmax),
            ymin: self.ymin.min(other.ymin),
            ymax: self.ymax.max(other.ymax),
        }
    }

    fn square(half: f64) -> Self {
        Viewport { xmin: -half, xmax: half, ymin: -half, ymax: half }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Marker {
    #[serde(rename = "T")]
    pub t: f64,
    pub point: Point,
    pub class: SingularClass,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Circle {
    pub center: Point,
    pub radius: f64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Scene {
    pub arcs: Vec<Arc>,
    pub lines: Vec<[Point; 2]>,
    pub circles: Vec<Circle>,
    pub markers: Vec<Marker>,
    pub viewport: Option<Viewport>,
}

fn circles_viewport(family: &LineFamily) -> Viewport {
    let pts = family.circles().into_iter().flat_map(|(c, r)| [[c[0] - r, c[1] - r], [c[0] + r, c[1] + r]]);
    Viewport::around(pts).unwrap_or(Viewport::square(1.0))
}

fn turn_degrees(a: Point, b: Point, c: Point) -> f64 {
    let u = [b[0] - a[0], b[1] - a[1]];
    let v = [c[0] - b[0], c[1] - b[1]];
    let cross = u[0] * v[1] - u[1] * v[0];
    let dot = u[0] * v[0] + u[1] * v[1];
    cross.atan2(dot).abs().to_degrees()
}

/// Appends points strictly after `t0` up to and including `t1`.
fn refine<C: ParamCurve>(curve: &C, t0: f64, p0: Point, t1: f64, p1: Point, jump: f64, depth: u32, out: &mut Vec<(f64, Point)>) {
    if depth < MAX_DEPTH {
        let tm = 0.5 * (t0 + t1);
        if let Some(pm) = curve.point(tm) {
            let dist = (p1[0] - p0[0]).hypot(p1[1] - p0[1]);
            if dist > jump || turn_degrees(p0, pm, p1) > MAX_TURN_DEG {
                refine(curve, t0, p0, tm, pm, jump, depth + 1, out);
                refine(curve, tm, pm, t1, p1, jump, depth + 1, out);
                return;
            }
        }
    }
    out.push((t1, p1));
}

/// Samples `[lo, hi]` uniformly plus adaptive refinement; `None` values
/// split the result.
fn sample_span<C: ParamCurve>(curve: &C, lo: f64, hi: f64, n: usize, jump: f64) -> Vec<Arc> {
    let ts: Vec<f64> = (0..=n).map(|i| lo + (hi - lo) * i as f64 / n as f64).collect();
    let pts: Vec<Option<Point>> = ts.par_iter().map(|&t| curve.point(t)).collect();
    let mut arcs = Vec::new();
    let mut cur: Vec<Point> = Vec::new();
    for i in 0..=n {
        match pts[i] {
            None => {
                if cur.len() > 1 {
                    arcs.push(std::mem::take(&mut cur));
                }
                cur.clear();
            }
            Some(p) => {
                if cur.is_empty() || i == 0 || pts[i - 1].is_none() {
                    cur.push(p);
                    continue;
                }
                let mut seg = Vec::new();
                refine(curve, ts[i - 1], pts[i - 1].unwrap(), ts[i], p, jump, 0, &mut seg);
                cur.extend(seg.into_iter().map(|(_, q)| q));
            }
        }
    }
    if cur.len() > 1 {
        arcs.push(cur);
    }
    arcs
}

/// Parameters approaching `t_cut` from `from`, geometrically, until the
/// curve leaves a disc of radius `far`.
fn run_out<C: ParamCurve>(curve: &C, from: f64, t_cut: f64, far: f64) -> Vec<Point> {
    let mut out = Vec::new();
    let mut gap = t_cut - from;
    for _ in 0..60 {
        gap *= 0.5;
        let t = t_cut - gap;
        match curve.point(t) {
            Some(p) => {
                out.push(p);
                if p[0].hypot(p[1]) > far {
                    break;
                }
            }
            None => break,
        }
    }
    out
}

/// Envelope arcs, split at infinity cuts, with `n` uniform samples per
/// period plus refinement.
pub fn sample_envelope(family: &LineFamily, n: usize) -> Result<Vec<Arc>> {
    let env = Envelope::new(family)?;
    Ok(sample_envelope_of(&env, n, &default_frame(family)))
}

fn default_frame(family: &LineFamily) -> Viewport {
    circles_viewport(family).inflate(INFLATE)
}

pub fn sample_envelope_of(env: &Envelope, n: usize, frame: &Viewport) -> Vec<Arc> {
    let n = n.max(64);
    let jump = JUMP_FRACTION * frame.size();
    let period = std::f64::consts::TAU;
    let cuts: Vec<&InfinityCut> = env.infinity_cuts().iter().collect();
    if cuts.is_empty() {
        let mut arcs = sample_span(env, 0.0, period, n, jump);
        if arcs.len() == 1 {
            // closed curve: make the end meet the start exactly
            let first = arcs[0][0];
            if let Some(last) = arcs[0].last_mut() {
                *last = first;
            }
        }
        return arcs;
    }
    let far = FAR * frame.size() + frame.xmax.abs().max(frame.xmin.abs()).max(frame.ymax.abs()).max(frame.ymin.abs());
    let mut arcs = Vec::new();
    for (i, cut) in cuts.iter().enumerate() {
        let start = cut.t;
        let end = if i + 1 < cuts.len() { cuts[i + 1].t } else { cuts[0].t + period };
        let span = end - start;
        let inner = 1e-3 * span;
        let (lo, hi) = (start + inner, end - inner);
        let m = ((n as f64 * span / period).ceil() as usize).max(8);
        let pieces = sample_span(env, lo, hi, m, jump);
        let count = pieces.len();
        for (k, mut piece) in pieces.into_iter().enumerate() {
            if k == 0 {
                let mut head = run_out(env, lo, start, far);
                head.reverse();
                head.extend(piece);
                piece = head;
            }
            if k + 1 == count {
                piece.extend(run_out(env, hi, end, far));
            }
            arcs.push(piece);
        }
    }
    arcs
}

/// Liang–Barsky clipping of one segment.
fn clip_segment(p: Point, q: Point, v: &Viewport) -> Option<(Point, Point)> {
    let d = [q[0] - p[0], q[1] - p[1]];
    let (mut t0, mut t1) = (0.0f64, 1.0f64);
    for (den, num) in [
        (-d[0], p[0] - v.xmin),
        (d[0], v.xmax - p[0]),
        (-d[1], p[1] - v.ymin),
        (d[1], v.ymax - p[1]),
    ] {
        if den == 0.0 {
            if num < 0.0 {
                return None;
            }
        } else {
            let r = num / den;
            if den < 0.0 {
                t0 = t0.max(r);
            } else {
                t1 = t1.min(r);
            }
        }
    }
    if t0 > t1 {
        return None;
    }
    let at = |t: f64| match t {
        0.0 => p,
        1.0 => q,
        _ => [p[0] + t * d[0], p[1] + t * d[1]],
    };
    let (a, b) = (at(t0), at(t1));
    let clamp = |x: Point| [x[0].clamp(v.xmin, v.xmax), x[1].clamp(v.ymin, v.ymax)];
    Some((clamp(a), clamp(b)))
}

/// Clips polylines to `v`; a polyline that leaves and re-enters is split.
pub fn clip_arcs(arcs: &[Arc], v: &Viewport) -> Vec<Arc> {
    let mut out = Vec::new();
    for arc in arcs {
        let mut cur: Vec<Point> = Vec::new();
        for w in arc.windows(2) {
            match clip_segment(w[0], w[1], v) {
                Some((a, b)) => {
                    if cur.last() != Some(&a) {
                        if cur.len() > 1 {
                            out.push(std::mem::take(&mut cur));
                        }
                        cur.clear();
                        cur.push(a);
                    }
                    cur.push(b);
                }
                None => {
                    if cur.len() > 1 {
                        out.push(std::mem::take(&mut cur));
                    }
                    cur.clear();
                }
            }
        }
        if cur.len() > 1 {
            out.push(cur);
        }
    }
    out
}

/// Bounding box of the circles and the finite envelope, inflated by 20%
/// and capped at five times the outer radius.
pub fn default_viewport(family: &LineFamily, arcs: &[Arc]) -> Viewport {
    let cap = Viewport::square(CAP * family.outer_radius());
    let base = circles_viewport(family);
    let env = Viewport::around(arcs.iter().flatten().copied().filter(|p| cap.contains(*p)));
    let bbox = env.map_or(base, |e| e.union(&base));
    bbox.inflate(INFLATE).intersect(&cap)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SceneOptions {
    pub samples: usize,
    /// Number of chords drawn; zero for none.
    pub line_count: usize,
}

impl Default for SceneOptions {
    fn default() -> Self {
        Self { samples: 2048, line_count: 0 }
    }
}

/// A family together with its scene and analysis, ready for output.
#[derive(Debug, Clone, PartialEq)]
pub struct EnvelopeScene {
    pub family: FamilySpec,
    pub scene: Scene,
    pub cuts: Vec<InfinityCut>,
    pub singular: Vec<SingularEntry>,
    pub predictions: Option<AnalyticPrediction>,
}

/// One entry of the `singular` list in the JSON document.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SingularEntry {
    #[serde(rename = "T")]
    pub t: f64,
    pub x: Option<f64>,
    pub y: Option<f64>,
    pub class: SingularClass,
}

pub fn envelope_scene(family: &LineFamily, opts: SceneOptions) -> Result<EnvelopeScene> {
    let env = Envelope::new(family)?;
    let raw = sample_envelope_of(&env, opts.samples, &default_frame(family));
    let viewport = default_viewport(family, &raw);
    let points = singular_points_of(&env, crate::singularity::default_samples(family.slope))?;
    let markers = points
        .iter()
        .filter_map(|p| {
            let point = p.location?;
            viewport.contains(point).then_some(Marker { t: p.t, point, class: p.class })
        })
        .collect();
    let lines = (0..opts.line_count)
        .map(|k| {
            let t = std::f64::consts::TAU * k as f64 / opts.line_count as f64;
            let (p, q) = family.endpoints(t);
            [p, q]
        })
        .collect();
    let circles = family.circles().into_iter().map(|(center, radius)| Circle { center, radius }).collect();
    let predictions = match family.kind {
        FamilyKind::OneCircle | FamilyKind::TwoCircle => Some(predict(family)?),
        _ => None,
    };
    Ok(EnvelopeScene {
        family: family.spec(),
        scene: Scene { arcs: clip_arcs(&raw, &viewport), lines, circles, markers, viewport: Some(viewport) },
        cuts: env.infinity_cuts().to_vec(),
        singular: points
            .iter()
            .map(|p| SingularEntry { t: p.t, x: p.location.map(|l| l[0]), y: p.location.map(|l| l[1]), class: p.class })
            .collect(),
        predictions,
    })
}

/// Scene of a standard catastrophe slice, with markers from the generic
/// curve detector.
#[derive(Debug, Clone, PartialEq)]
pub struct StandardScene {
    pub model: Catastrophe,
    pub params: Vec<f64>,
    pub scene: Scene,
    pub singular: Vec<SingularEntry>,
    pub crossings: usize,
}

pub fn standard_scene(model: Catastrophe, params: &[f64], samples: usize) -> Result<StandardScene> {
    let curve: PolyCurve = model.slice(params)?;
    let (lo, hi) = curve.domain().bounds();
    let n = samples.max(64);
    let rough: Vec<Point> = (0..=n).filter_map(|i| curve.point(lo + (hi - lo) * i as f64 / n as f64)).collect();
    let viewport = Viewport::around(rough.iter().copied()).unwrap_or(Viewport::square(1.0)).inflate(INFLATE);
    let arcs = sample_span(&curve, lo, hi, n, JUMP_FRACTION * viewport.size());
    let found = find_curve_singularities(&curve, 4096);
    let crossings = crate::crossings::curve_self_crossings(
        &curve,
        crate::crossings::CrossingOptions { samples: 4096, clip_radius: None },
    );
    Ok(StandardScene {
        model,
        params: params.to_vec(),
        scene: Scene {
            arcs,
            lines: Vec::new(),
            circles: Vec::new(),
            markers: found.iter().map(|s| Marker { t: s.t, point: s.point, class: s.class }).collect(),
            viewport: Some(viewport),
        },
        singular: found
            .iter()
            .map(|s| SingularEntry { t: s.t, x: Some(s.point[0]), y: Some(s.point[1]), class: s.class })
            .collect(),
        crossings: crossings.count,
    })
}

/// 3×3 grid of offset-circle scenes around `(r0, d0)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ClockGrid {
    pub base: (f64, f64),
    /// `(Δr, Δd)` per cell, row-major with the `+d` row first.
    pub offsets: Vec<(f64, f64)>,
    pub cells: Vec<EnvelopeScene>,
}

pub fn clock_grid(slope: RationalSlope, r0: f64, d0: f64, delta: f64, opts: SceneOptions) -> Result<ClockGrid> {
    if !(delta >= 0.0) || !delta.is_finite() {
        return Err(EnvError::InvalidParameter(format!("grid step must be non-negative, got {delta}")));
    }
    let offsets: Vec<(f64, f64)> =
        [1.0, 0.0, -1.0].iter().flat_map(|&j| [-1.0, 0.0, 1.0].map(|i| (i * delta, j * delta))).collect();
    let cells = offsets
        .par_iter()
        .map(|&(dr, dd)| {
            let fam = LineFamily::offset_circle(slope, r0 + dr, 0.0, d0 + dd)?;
            envelope_scene(&fam, opts)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ClockGrid { base: (r0, d0), offsets, cells })
}

/// The shared JSON document: `{family, arcs, cuts, singular, predictions}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SceneDocument {
    pub family: serde_json::Value,
    pub arcs: Vec<Arc>,
    pub cuts: Vec<CutEntry>,
    pub singular: Vec<SingularEntry>,
    pub predictions: Option<AnalyticPrediction>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CutEntry {
    #[serde(rename = "T")]
    pub t: f64,
    pub direction: Option<Point>,
}

/// Drawing extras carried inside the `family` object.
fn extras(scene: &Scene) -> serde_json::Map<String, serde_json::Value> {
    let mut m = serde_json::Map::new();
    m.insert("viewport".into(), serde_json::to_value(scene.viewport).unwrap_or_default());
    m.insert("circles".into(), serde_json::to_value(&scene.circles).unwrap_or_default());
    if !scene.lines.is_empty() {
        m.insert("lines".into(), serde_json::to_value(&scene.lines).unwrap_or_default());
    }
    m
}

impl EnvelopeScene {
    pub fn document(&self) -> SceneDocument {
        let mut family = match serde_json::to_value(self.family) {
            Ok(serde_json::Value::Object(m)) => m,
            _ => serde_json::Map::new(),
        };
        family.extend(extras(&self.scene));
        SceneDocument {
            family: serde_json::Value::Object(family),
            arcs: self.scene.arcs.clone(),
            cuts: self.cuts.iter().map(|c| CutEntry { t: c.t, direction: c.direction }).collect(),
            singular: self.singular.clone(),
            predictions: self.predictions,
        }
    }
}

impl StandardScene {
    pub fn document(&self) -> SceneDocument {
        let names: &[&str] = match self.model {
            Catastrophe::Swallowtail => &["z"],
            Catastrophe::Butterfly => &["y", "z"],
        };
        let mut family = serde_json::Map::new();
        family.insert("model".into(), serde_json::to_value(self.model).unwrap_or_default());
        for (k, v) in names.iter().zip(&self.params) {
            family.insert((*k).into(), serde_json::json!(v));
        }
        family.insert("crossings".into(), serde_json::json!(self.crossings));
        family.extend(extras(&self.scene));
        SceneDocument {
            family: serde_json::Value::Object(family),
            arcs: self.scene.arcs.clone(),
            cuts: Vec::new(),
            singular: self.singular.clone(),
            predictions: None,
        }
    }
}

const WIDTH: f64 = 640.0;

fn num(x: f64) -> String {
    let s = format!("{x:.3}");
    if s == "-0.000" {
        "0.000".into()
    } else {
        s
    }
}

fn class_color(c: SingularClass) -> &'static str {
    match c {
        SingularClass::SimpleCusp => "#d62728",
        SingularClass::Swallowtail => "#2ca02c",
        SingularClass::Butterfly => "#9467bd",
        SingularClass::HigherDegenerate => "#ff7f0e",
    }
}

/// Body of an SVG drawing of `scene` into a `w × h` box.
fn svg_body(scene: &Scene, w: f64, h: f64, out: &mut String) {
    let v = scene.viewport.unwrap_or(Viewport::square(1.0));
    let s = (w / v.width().max(1e-12)).min(h / v.height().max(1e-12));
    let ox = (w - s * v.width()) / 2.0;
    let oy = (h - s * v.height()) / 2.0;
    let map = |p: Point| (ox + s * (p[0] - v.xmin), oy + s * (v.ymax - p[1]));
    let _ = writeln!(out, r##"<rect x="0" y="0" width="{}" height="{}" fill="#ffffff"/>"##, num(w), num(h));
    for c in &scene.circles {
        let (cx, cy) = map(c.center);
        let _ = writeln!(
            out,
            r##"<circle cx="{}" cy="{}" r="{}" fill="none" stroke="#888888" stroke-width="1" stroke-dasharray="4 3"/>"##,
            num(cx),
            num(cy),
            num(s * c.radius)
        );
    }
    for l in &scene.lines {
        let (x1, y1) = map(l[0]);
        let (x2, y2) = map(l[1]);
        let _ = writeln!(
            out,
            r##"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#4c72b0" stroke-width="0.3" stroke-opacity="0.6"/>"##,
            num(x1),
            num(y1),
            num(x2),
            num(y2)
        );
    }
    for arc in &scene.arcs {
        let mut d = String::new();
        for (i, p) in arc.iter().enumerate() {
            let (x, y) = map(*p);
            let _ = write!(d, "{}{} {}", if i == 0 { "M" } else { " L" }, num(x), num(y));
        }
        let _ = writeln!(out, r##"<path d="{d}" fill="none" stroke="#111111" stroke-width="1.2"/>"##);
    }
    for m in &scene.markers {
        let (x, y) = map(m.point);
        let color = class_color(m.class);
        let _ = writeln!(
            out,
            r##"<circle cx="{}" cy="{}" r="3.5" fill="{color}"><title>{} T={}</title></circle>"##,
            num(x),
            num(y),
            m.class.name(),
            num(m.t)
        );
        let _ = writeln!(
            out,
            r##"<text x="{}" y="{}" font-family="sans-serif" font-size="9" fill="{color}">{}</text>"##,
            num(x + 5.0),
            num(y - 5.0),
            m.class.name()
        );
    }
}

/// Deterministic SVG 1.1 document for a scene.
pub fn emit_svg(scene: &Scene) -> String {
    let v = scene.viewport.unwrap_or(Viewport::square(1.0));
    let h = (WIDTH * v.height() / v.width().max(1e-12)).clamp(64.0, 4.0 * WIDTH);
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{0}" height="{1}" viewBox="0 0 {0} {1}">"#,
        num(WIDTH),
        num(h)
    );
    svg_body(scene, WIDTH, h, &mut out);
    out.push_str("</svg>\n");
    out
}

/// All nine cells of a clock grid in one SVG document.
pub fn emit_clock_svg(grid: &ClockGrid) -> String {
    let cell = 260.0;
    let label = 16.0;
    let side = 3.0 * cell;
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{0}" height="{1}" viewBox="0 0 {0} {1}">"#,
        num(side),
        num(side + 3.0 * label)
    );
    for (k, (scene, &(dr, dd))) in grid.cells.iter().zip(&grid.offsets).enumerate() {
        let (col, row) = ((k % 3) as f64, (k / 3) as f64);
        let (x, y) = (col * cell, row * (cell + label));
        let _ = writeln!(out, r#"<g transform="translate({} {})">"#, num(x), num(y + label));
        svg_body(&scene.scene, cell, cell, &mut out);
        out.push_str("</g>\n");
        let _ = writeln!(
            out,
            r##"<text x="{}" y="{}" font-family="sans-serif" font-size="11" fill="#333333">r={} d={} singular={}</text>"##,
            num(x + 4.0),
            num(y + label - 4.0),
            num(grid.base.0 + dr),
            num(grid.base.1 + dd),
            scene.singular.len()
        );
    }
    out.push_str("</svg>\n");
    out
}
