//! Self-crossings of parametric curves.
//!
//! The curve is sampled into a polyline, segment pairs sharing a hash cell
//! are intersected, and every hit is polished by Newton's method on
//! `γ(T₁) − γ(T₂) = 0`.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::curve::{Domain, ParamCurve, Point};
use crate::envelope::Envelope;
use crate::error::Result;
use crate::families::LineFamily;

const NEWTON_ITERS: usize = 60;
const DEDUPE: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CrossingPoint {
    #[serde(rename = "T1")]
    pub t1: f64,
    #[serde(rename = "T2")]
    pub t2: f64,
    pub point: Point,
    /// `|γ(T₁) − γ(T₂)|` after refinement.
    pub residual: f64,
}

/// A candidate whose Newton iteration did not converge.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NewtonStall {
    pub t1: f64,
    pub t2: f64,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossingReport {
    pub count: usize,
    pub points: Vec<CrossingPoint>,
    /// Set when parts of the curve were dropped (infinity cuts or clipping).
    pub partial: bool,
    pub stalls: Vec<NewtonStall>,
    pub samples: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct CrossingOptions {
    pub samples: usize,
    /// Samples farther than this from the origin are discarded.
    pub clip_radius: Option<f64>,
}

/// Default polyline resolution for a family.
pub fn default_samples(family: &LineFamily) -> usize {
    8192 * family.slope.max_frequency() as usize
}

/// Self-crossings of the envelope of `family`.
pub fn count_self_crossings(family: &LineFamily) -> Result<CrossingReport> {
    count_self_crossings_with(family, default_samples(family))
}

pub fn count_self_crossings_with(family: &LineFamily, samples: usize) -> Result<CrossingReport> {
    let env = Envelope::new(family)?;
    let clip = (!env.infinity_cuts().is_empty()).then(|| 50.0 * family.outer_radius());
    let mut report = curve_self_crossings(&env, CrossingOptions { samples, clip_radius: clip });
    report.partial |= !env.infinity_cuts().is_empty();
    Ok(report)
}

struct Segment {
    i: usize,
    p: Point,
    q: Point,
}

fn segment_hit(s: &Segment, u: &Segment) -> Option<(f64, f64)> {
    let r = [s.q[0] - s.p[0], s.q[1] - s.p[1]];
    let v = [u.q[0] - u.p[0], u.q[1] - u.p[1]];
    let den = r[0] * v[1] - r[1] * v[0];
    if den == 0.0 {
        return None;
    }
    let w = [u.p[0] - s.p[0], u.p[1] - s.p[1]];
    let a = (w[0] * v[1] - w[1] * v[0]) / den;
    let b = (w[0] * r[1] - w[1] * r[0]) / den;
    let slack = 1e-9;
    ((-slack..=1.0 + slack).contains(&a) && (-slack..=1.0 + slack).contains(&b)).then_some((a, b))
}

fn newton<C: ParamCurve>(curve: &C, mut t1: f64, mut t2: f64, tol: f64) -> (f64, f64, f64, bool) {
    let mut res = f64::INFINITY;
    for _ in 0..NEWTON_ITERS {
        let (Some(j1), Some(j2)) = (curve.jet(t1, 1), curve.jet(t2, 1)) else {
            return (t1, t2, res, false);
        };
        let f = [j1[0][0] - j2[0][0], j1[0][1] - j2[0][1]];
        res = f[0].hypot(f[1]);
        if res < tol {
            return (t1, t2, res, true);
        }
        // J = [γ'(T₁), −γ'(T₂)]
        let (a, b, c, d) = (j1[1][0], -j2[1][0], j1[1][1], -j2[1][1]);
        let det = a * d - b * c;
        if det == 0.0 || !det.is_finite() {
            return (t1, t2, res, false);
        }
        t1 -= (d * f[0] - b * f[1]) / det;
        t2 -= (-c * f[0] + a * f[1]) / det;
    }
    (t1, t2, res, res < tol * 100.0)
}

/// Self-crossings of an arbitrary curve.
pub fn curve_self_crossings<C: ParamCurve>(curve: &C, opts: CrossingOptions) -> CrossingReport {
    let dom = curve.domain();
    let (lo, hi) = dom.bounds();
    let n = opts.samples.max(64);
    let h = (hi - lo) / n as f64;
    let params: Vec<f64> = (0..=n).map(|i| lo + h * i as f64).collect();
    let pts: Vec<Option<Point>> = params
        .par_iter()
        .map(|&t| {
            curve.point(dom.wrap(t)).filter(|p| {
                p[0].is_finite() && p[1].is_finite() && opts.clip_radius.map_or(true, |c| p[0].hypot(p[1]) <= c)
            })
        })
        .collect();
    let partial = pts.iter().any(Option::is_none);

    let segments: Vec<Segment> = (0..n)
        .filter_map(|i| Some(Segment { i, p: pts[i]?, q: pts[i + 1]? }))
        .collect();
    let (mut xmin, mut xmax, mut ymin, mut ymax) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    let mut longest: f64 = 0.0;
    for s in &segments {
        for p in [s.p, s.q] {
            xmin = xmin.min(p[0]);
            xmax = xmax.max(p[0]);
            ymin = ymin.min(p[1]);
            ymax = ymax.max(p[1]);
        }
        longest = longest.max((s.q[0] - s.p[0]).hypot(s.q[1] - s.p[1]));
    }
    let empty = CrossingReport { count: 0, points: Vec::new(), partial, stalls: Vec::new(), samples: n };
    if segments.len() < 3 {
        return empty;
    }
    let extent = (xmax - xmin).max(ymax - ymin).max(f64::MIN_POSITIVE);
    let cell = longest.max(extent / (segments.len() as f64).sqrt()).max(extent * 1e-9);

    let mut grid: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
    for (k, s) in segments.iter().enumerate() {
        let cx0 = ((s.p[0].min(s.q[0]) - xmin) / cell).floor() as i64;
        let cx1 = ((s.p[0].max(s.q[0]) - xmin) / cell).floor() as i64;
        let cy0 = ((s.p[1].min(s.q[1]) - ymin) / cell).floor() as i64;
        let cy1 = ((s.p[1].max(s.q[1]) - ymin) / cell).floor() as i64;
        for cx in cx0..=cx1 {
            for cy in cy0..=cy1 {
                grid.entry((cx, cy)).or_default().push(k);
            }
        }
    }

    let sep = 10.0 * (hi - lo) / n as f64;
    let mut pairs: Vec<(usize, usize)> = grid
        .values()
        .flat_map(|bucket| {
            bucket.iter().enumerate().flat_map(move |(x, &k)| bucket[x + 1..].iter().map(move |&l| (k.min(l), k.max(l))))
        })
        .collect();
    pairs.sort_unstable();
    pairs.dedup();

    let tol = 1e-12 * extent.max(1.0);
    let hits: Vec<(f64, f64)> = pairs
        .into_par_iter()
        .filter_map(|(k, l)| {
            let (s, u) = (&segments[k], &segments[l]);
            let (t1, t2) = (params[s.i], params[u.i]);
            if dom.separation(t1, t2) < sep {
                return None;
            }
            segment_hit(s, u).map(|(a, b)| (t1 + a * h, t2 + b * h))
        })
        .collect();

    let refined: Vec<(f64, f64, f64, bool)> =
        hits.par_iter().map(|&(t1, t2)| newton(curve, t1, t2, tol)).collect();

    let mut points = Vec::new();
    let mut stalls = Vec::new();
    for (t1, t2, res, ok) in refined {
        let (t1, t2) = (dom.wrap(t1), dom.wrap(t2));
        let (t1, t2) = (t1.min(t2), t1.max(t2));
        let inside = |t: f64| (lo..=hi).contains(&t);
        if !ok || res > 1e-10 * extent.max(1.0) || !inside(t1) || !inside(t2) {
            stalls.push(NewtonStall { t1, t2, residual: res });
            continue;
        }
        if dom.separation(t1, t2) < sep {
            continue;
        }
        let Some(point) = curve.point(t1) else { continue };
        points.push(CrossingPoint { t1, t2, point, residual: res });
    }
    points.sort_by(|a, b| a.t1.total_cmp(&b.t1).then(a.t2.total_cmp(&b.t2)));
    points.dedup_by(|b, a| same_pair(&dom, a, b));
    let mut unique: Vec<CrossingPoint> = Vec::with_capacity(points.len());
    for p in points {
        if !unique.iter().any(|q| same_pair(&dom, q, &p)) {
            unique.push(p);
        }
    }
    stalls.retain(|s| !unique.iter().any(|q| dom.separation(q.t1, s.t1) < 1e-4 && dom.separation(q.t2, s.t2) < 1e-4));
    CrossingReport { count: unique.len(), points: unique, partial, stalls, samples: n }
}

fn same_pair(dom: &Domain, a: &CrossingPoint, b: &CrossingPoint) -> bool {
    dom.separation(a.t1, b.t1) < DEDUPE && dom.separation(a.t2, b.t2) < DEDUPE
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::swallowtail_slice;
    use crate::trig::RationalSlope;

    fn one(a: i64, b: i64) -> LineFamily {
        LineFamily::one_circle(RationalSlope::new(a, b).unwrap()).unwrap()
    }

    #[test]
    fn nephroid_has_no_crossings() {
        assert_eq!(count_self_crossings(&one(3, 1)).unwrap().count, 0);
    }

    #[test]
    fn five_fourths_has_three() {
        let rep = count_self_crossings(&one(5, 4)).unwrap();
        assert_eq!(rep.count, 3, "{rep:?}");
        for p in &rep.points {
            assert!(p.point[1].abs() < 1e-9);
        }
    }

    #[test]
    fn swallowtail_slice_crossing() {
        let c = swallowtail_slice(-1.0);
        let rep = curve_self_crossings(&c, CrossingOptions { samples: 4096, clip_radius: None });
        assert_eq!(rep.count, 1);
        let p = rep.points[0];
        assert!((p.t1 + 0.5f64.sqrt()).abs() < 1e-9 && (p.t2 - 0.5f64.sqrt()).abs() < 1e-9);
        assert!((p.point[0] - 0.25).abs() < 1e-12 && p.point[1].abs() < 1e-12);
    }
}
