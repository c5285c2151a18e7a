use std::collections::BTreeSet;

use envlab::families::{Catastrophe, LineFamily};
use envlab::render::{clock_grid, emit_clock_svg, emit_svg, envelope_scene, standard_scene, SceneOptions};
use envlab::singularity::SingularClass;
use envlab::trig::RationalSlope;

fn two(a: i64, b: i64, r: f64) -> LineFamily {
    LineFamily::two_circle(RationalSlope::for_envelope(a, b).unwrap(), r).unwrap()
}

#[test]
fn svg_is_deterministic() {
    let opts = SceneOptions { samples: 1024, line_count: 16 };
    let a = emit_svg(&envelope_scene(&two(3, 4, 2.5), opts).unwrap().scene);
    let b = emit_svg(&envelope_scene(&two(3, 4, 2.5), opts).unwrap().scene);
    assert_eq!(a, b);
    assert!(a.starts_with("<?xml") && a.contains("<svg") && a.trim_end().ends_with("</svg>"));
}

#[test]
fn each_singular_point_gets_one_marker() {
    for fam in [two(3, 4, 2.5), two(-4, 3, 3.5), two(3, 4, 2.0)] {
        let s = envelope_scene(&fam, SceneOptions::default()).unwrap();
        assert_eq!(s.scene.markers.len(), s.singular.len());
        let ts: BTreeSet<i64> = s.scene.markers.iter().map(|m| (m.t * 1e9).round() as i64).collect();
        assert_eq!(ts.len(), s.scene.markers.len());
    }
}

#[test]
fn document_has_exactly_the_five_keys() {
    let doc = envelope_scene(&two(-2, 3, 1.2), SceneOptions { samples: 512, line_count: 8 }).unwrap().document();
    let v = serde_json::to_value(&doc).unwrap();
    let keys: BTreeSet<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, BTreeSet::from(["family", "arcs", "cuts", "singular", "predictions"]));
    assert_eq!(v["cuts"].as_array().unwrap().len(), 10);
    assert!(v["cuts"][0]["T"].is_f64());
    assert_eq!(v["family"]["lines"].as_array().unwrap().len(), 8);
    let back: envlab::render::SceneDocument = serde_json::from_value(v).unwrap();
    assert_eq!(back, doc);
}

#[test]
fn cut_family_arcs_never_cross_a_cut() {
    let fam = two(-2, 3, 1.2);
    assert_eq!(envlab::render::sample_envelope(&fam, 2048).unwrap().len(), 10);
    let s = envelope_scene(&fam, SceneOptions::default()).unwrap();
    assert!(!s.scene.arcs.is_empty());
    let v = s.scene.viewport.unwrap();
    for arc in &s.scene.arcs {
        assert!(arc.len() >= 2);
        for p in arc {
            assert!(p[0].is_finite() && p[1].is_finite());
            assert!(p[0] >= v.xmin - 1e-9 && p[0] <= v.xmax + 1e-9);
            assert!(p[1] >= v.ymin - 1e-9 && p[1] <= v.ymax + 1e-9);
        }
    }
}

#[test]
fn zero_step_clock_has_identical_cells() {
    let g = clock_grid(RationalSlope::new(3, 4).unwrap(), 2.0, 0.0, 0.0, SceneOptions { samples: 256, line_count: 0 }).unwrap();
    assert_eq!(g.cells.len(), 9);
    for c in &g.cells[1..] {
        assert_eq!(c, &g.cells[0]);
    }
}

#[test]
fn clock_grid_counts() {
    let g = clock_grid(RationalSlope::new(3, 4).unwrap(), 2.5, 0.0, 0.5, SceneOptions { samples: 256, line_count: 0 }).unwrap();
    let counts: Vec<usize> = g.cells.iter().map(|c| c.singular.len()).collect();
    assert_eq!(&counts[0..3], &[4, 4, 2]);
    assert_eq!(counts[3], 4);
    assert_eq!(counts[5], 2);
    let center: BTreeSet<&str> = g.cells[4].singular.iter().map(|s| s.class.name()).collect();
    assert!(center.contains(SingularClass::Butterfly.name()));
    let svg = emit_clock_svg(&g);
    assert!(svg.matches("<path").count() >= 9);
}

#[test]
fn standard_scenes() {
    let s = standard_scene(Catastrophe::Swallowtail, &[-1.0], 1024).unwrap();
    assert_eq!((s.singular.len(), s.crossings), (2, 1));
    let b = standard_scene(Catastrophe::Butterfly, &[0.0, 0.0], 1024).unwrap();
    assert_eq!(b.singular.iter().map(|s| s.class).collect::<Vec<_>>(), vec![SingularClass::Butterfly]);
    assert!(standard_scene(Catastrophe::Butterfly, &[0.0], 1024).is_err());
}
