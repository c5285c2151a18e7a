//! Built-in regression cases replayed by `counts --check`.

use std::f64::consts::PI;

use crate::census::census;
use crate::crossings::{count_self_crossings, curve_self_crossings, CrossingOptions};
use crate::envelope::{envelope_point, infinity_cuts};
use crate::families::{butterfly_slice, swallowtail_slice, LineFamily};
use crate::render::{clock_grid, envelope_scene, SceneOptions};
use crate::singularity::{classify, find_curve_singularities, find_singular_points, predict, taylor_at, SingularClass};
use crate::trig::RationalSlope;

pub type Outcome = std::result::Result<String, String>;

pub struct Case {
    pub name: &'static str,
    pub run: fn() -> Outcome,
}

fn slope(a: i64, b: i64) -> std::result::Result<RationalSlope, String> {
    RationalSlope::for_envelope(a, b).map_err(|e| e.to_string())
}

fn one(a: i64, b: i64) -> std::result::Result<LineFamily, String> {
    LineFamily::one_circle(slope(a, b)?).map_err(|e| e.to_string())
}

fn two(a: i64, b: i64, r: f64) -> std::result::Result<LineFamily, String> {
    LineFamily::two_circle(slope(a, b)?, r).map_err(|e| e.to_string())
}

fn expect<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Outcome {
    if got == want {
        Ok(format!("{what} = {got:?}"))
    } else {
        Err(format!("{what}: got {got:?}, want {want:?}"))
    }
}

fn near(what: &str, got: f64, want: f64, tol: f64) -> Outcome {
    if (got - want).abs() <= tol * want.abs().max(1.0) {
        Ok(format!("{what} = {got:.10}"))
    } else {
        Err(format!("{what}: got {got}, want {want}"))
    }
}

fn cusp_count(fam: &LineFamily) -> std::result::Result<usize, String> {
    find_singular_points(fam).map(|p| p.len()).map_err(|e| e.to_string())
}

fn crossings(fam: &LineFamily) -> std::result::Result<usize, String> {
    count_self_crossings(fam).map(|r| r.count).map_err(|e| e.to_string())
}

pub fn cases() -> Vec<Case> {
    vec![
        Case { name: "one-circle 3/1 has 2 cusps", run: || expect("cusps", cusp_count(&one(3, 1)?)?, 2) },
        Case { name: "one-circle 3/1 has no crossings", run: || expect("crossings", crossings(&one(3, 1)?)?, 0) },
        Case { name: "one-circle 5/4 has 3 crossings", run: || expect("crossings", crossings(&one(5, 4)?)?, 3) },
        Case { name: "one-circle 2/5 has 3 crossings", run: || expect("crossings", crossings(&one(2, 5)?)?, 3) },
        Case {
            name: "one-circle 5/4 census",
            run: || {
                let rep = census(&one(5, 4)?).map_err(|e| e.to_string())?;
                let n = rep.numeric;
                expect("(cusps, tangencies, crossings)", (n.cusps, n.tangencies, n.crossings), (1, 1, Some(3)))?;
                rep.agrees().then(|| "numeric matches analytic".to_string()).ok_or(rep.mismatches.join("; "))
            },
        },
        Case {
            name: "one-circle 5/4 cusp is simple",
            run: || {
                let pts = find_singular_points(&one(5, 4)?).map_err(|e| e.to_string())?;
                expect("classes", pts.iter().map(|p| p.class).collect::<Vec<_>>(), vec![SingularClass::SimpleCusp])
            },
        },
        Case {
            name: "one-circle 3/1 touches the circle at T=0",
            run: || {
                let s = envelope_point(&one(3, 1)?, 0.0).map_err(|e| e.to_string())?;
                let p = s.point.ok_or("at infinity")?;
                expect("removable", s.removable, true)?;
                near("X", p[0], 1.0, 1e-12)?;
                near("Y", p[1], 0.0, 1e-12)
            },
        },
        Case {
            name: "two-circle 3/4 r=5/2 starts at -5/7",
            run: || {
                let p = envelope_point(&two(3, 4, 2.5)?, 0.0).map_err(|e| e.to_string())?.point.ok_or("at infinity")?;
                near("X", p[0], -5.0 / 7.0, 1e-12)?;
                near("Y", p[1], 0.0, 1e-12)
            },
        },
        Case {
            name: "two-circle -2/3 infinity census",
            run: || {
                let n = |r| infinity_cuts(&two(-2, 3, r)?).map(|c| c.len()).map_err(|e| e.to_string());
                expect("cuts for r = 1.2, 1.5, 1.7", (n(1.2)?, n(1.5)?, n(1.7)?), (10, 5, 0))
            },
        },
        Case {
            name: "two-circle -2/3 r=1.2 reaches infinity at a cut",
            run: || {
                let fam = two(-2, 3, 1.2)?;
                let cut = infinity_cuts(&fam).map_err(|e| e.to_string())?.first().copied().ok_or("no cut")?;
                let s = envelope_point(&fam, cut.t).map_err(|e| e.to_string())?;
                expect("point at cut", s.point, None)
            },
        },
        Case { name: "two-circle -4/3 r=3.5 has 14 cusps", run: || expect("cusps", cusp_count(&two(-4, 3, 3.5)?)?, 14) },
        Case { name: "two-circle 3/4 r=2 has 4 cusps", run: || expect("cusps", cusp_count(&two(3, 4, 2.0)?)?, 4) },
        Case {
            name: "two-circle 3/4 r=5/2: butterfly and simple cusp",
            run: || {
                let pts = find_singular_points(&two(3, 4, 2.5)?).map_err(|e| e.to_string())?;
                let got: Vec<_> = pts.iter().map(|p| p.class).collect();
                expect("classes", got, vec![SingularClass::Butterfly, SingularClass::SimpleCusp])?;
                near("right cusp T", pts[1].t, PI, 1e-9)
            },
        },
        Case {
            name: "two-circle 3/4 r=5/2 classification",
            run: || {
                let fam = two(3, 4, 2.5)?;
                let l = classify(&fam, 0.0).map_err(|e| e.to_string())?.class;
                let r = classify(&fam, PI).map_err(|e| e.to_string())?.class;
                expect("classes at 0, π", (l, r), (SingularClass::Butterfly, SingularClass::SimpleCusp))
            },
        },
        Case {
            name: "predictions",
            run: || {
                let p = predict(&one(5, 4)?).map_err(|e| e.to_string())?;
                expect("5/4", (p.total_cusps(), p.tangency_count, p.crossing_count), (1, 1, Some(3)))?;
                let q = predict(&two(3, 4, 2.0)?).map_err(|e| e.to_string())?;
                expect("3/4 r=2", (q.general_cusp_count, q.extra_cusp_count), (2, 2))?;
                near("extreme r", q.extreme_r.unwrap_or(f64::NAN), 2.5, 1e-12)?;
                let e = predict(&two(-2, 3, 1.1)?).map_err(|e| e.to_string())?;
                expect("-2/3 r=1.1 extra", e.extra_cusp_count, 10)
            },
        },
        Case {
            name: "Taylor data at the butterfly",
            run: || {
                let t = taylor_at(&two(3, 4, 2.5)?, 0.0, 6).map_err(|e| e.to_string())?;
                near("x0", t.x[0], -5.0 / 7.0, 1e-6)?;
                near("x4", t.x[4] / (25.0 / 1792.0), -1.0, 1e-6)?;
                near("y5", t.y[5] / (5.0 / 768.0), -1.0, 1e-6)
            },
        },
        Case {
            name: "Taylor data at the simple cusp",
            run: || {
                let t = taylor_at(&two(3, 4, 2.5)?, PI, 6).map_err(|e| e.to_string())?;
                near("x0", t.x[0], -5.0 / 23.0, 1e-6)?;
                near("x2", t.x[2] / (75.0 / 1058.0), -1.0, 1e-6)?;
                near("y3", t.y[3] / (25.0 / 644.0), -1.0, 1e-6)
            },
        },
        Case {
            name: "offset family d-terms",
            run: || {
                let f = LineFamily::offset_circle(slope(3, 4)?, 2.5, 0.0, 0.5).map_err(|e| e.to_string())?;
                expect("A constant", f.x_coef.coefficient(0).0, 0.5)?;
                expect("C cos bT", f.constant.coefficient(4).0, -0.5)
            },
        },
        Case {
            name: "caustic rays pass through (r cos 2t, r sin 2t)",
            run: || {
                let f = LineFamily::caustic_ray_family(1.7).map_err(|e| e.to_string())?;
                let worst = (0..64).map(|i| i as f64 * 0.1).fold(0.0f64, |m, t| {
                    let p = [1.7 * (2.0 * t).cos(), 1.7 * (2.0 * t).sin()];
                    m.max(f.residual(t, p).abs() / f.residual_scale(t, p).max(1e-300))
                });
                if worst < 1e-12 {
                    Ok(format!("worst residual {worst:.1e}"))
                } else {
                    Err(format!("residual {worst:e}"))
                }
            },
        },
        Case {
            name: "swallowtail slices",
            run: || {
                let no_clip = CrossingOptions { samples: 4096, clip_radius: None };
                let neg = swallowtail_slice(-1.0);
                let pos = swallowtail_slice(1.0);
                expect(
                    "z=-1 (cusps, crossings), z=+1 (cusps, crossings)",
                    (
                        find_curve_singularities(&neg, 4096).len(),
                        curve_self_crossings(&neg, no_clip).count,
                        find_curve_singularities(&pos, 4096).len(),
                        curve_self_crossings(&pos, no_clip).count,
                    ),
                    (2, 1, 0, 0),
                )?;
                let z0 = find_curve_singularities(&swallowtail_slice(0.0), 4096);
                expect("z=0 orders", z0.iter().map(|s| s.orders).collect::<Vec<_>>(), vec![(3, 4)])
            },
        },
        Case {
            name: "butterfly slice at the origin",
            run: || {
                let s = find_curve_singularities(&butterfly_slice(0.0, 0.0), 4096);
                expect("orders", s.iter().map(|s| s.orders).collect::<Vec<_>>(), vec![(4, 5)])
            },
        },
        Case {
            name: "butterfly tour",
            run: || {
                let count = |a: f64| find_curve_singularities(&butterfly_slice(0.5 * a.cos(), 0.5 * a.sin()), 4096).len();
                expect("cusps at a = 4.3, 4.6, 4.8, 5.1", [4.3, 4.6, 4.8, 5.1].map(count), [1, 3, 3, 3])
            },
        },
        Case {
            name: "clock diagram around (2.5, 0)",
            run: || {
                let g = clock_grid(slope(3, 4)?, 2.5, 0.0, 0.5, SceneOptions { samples: 512, line_count: 0 })
                    .map_err(|e| e.to_string())?;
                let mut center: Vec<_> = g.cells[4].singular.iter().map(|s| s.class).collect();
                center.sort_by_key(|c| *c as u8);
                expect("center", center, vec![SingularClass::SimpleCusp, SingularClass::Butterfly])?;
                let (tl, tr) = (g.cells[1].singular.len(), g.cells[2].singular.len());
                expect("top row r=2.5 vs r=3 difference", tl.abs_diff(tr), 2)
            },
        },
        Case {
            name: "embroidery scene for 3/1",
            run: || {
                let s = envelope_scene(&one(3, 1)?, SceneOptions::default()).map_err(|e| e.to_string())?;
                expect("(arcs, markers)", (s.scene.arcs.len(), s.scene.markers.len()), (1, 2))
            },
        },
    ]
}

/// Runs every case, in order.
pub fn run_all() -> Vec<(&'static str, Outcome)> {
    cases().into_iter().map(|c| (c.name, (c.run)())).collect()
}

#[cfg(test)]
mod tests {
    #[test]
    fn every_case_passes() {
        let failed: Vec<String> = super::run_all()
            .into_iter()
            .filter_map(|(name, r)| r.err().map(|e| format!("{name}: {e}")))
            .collect();
        assert!(failed.is_empty(), "{failed:#?}");
    }
}
