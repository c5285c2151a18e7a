use envlab::crossings::{count_self_crossings, count_self_crossings_with, curve_self_crossings, CrossingOptions};
use envlab::curve::ParamCurve;
use envlab::envelope::Envelope;
use envlab::families::{butterfly_slice, swallowtail_slice, LineFamily};
use envlab::trig::RationalSlope;
use proptest::prelude::*;

fn one(a: i64, b: i64) -> LineFamily {
    LineFamily::one_circle(RationalSlope::for_envelope(a, b).unwrap()).unwrap()
}

#[test]
fn one_circle_crossing_counts() {
    for (a, b, want) in [(3, 1, 0), (5, 4, 3), (2, 5, 3), (-1, 2, 0), (5, 2, 3), (-3, 4, 14)] {
        let fam = one(a, b);
        let rep = count_self_crossings(&fam).unwrap();
        assert_eq!(rep.count, want, "{a}/{b}");
        assert!(rep.stalls.is_empty() && !rep.partial);
        let p = envlab::singularity::predict(&fam).unwrap();
        assert_eq!(p.crossing_count, Some(want), "{a}/{b}");
    }
}

#[test]
fn crossing_points_lie_on_both_branches() {
    let fam = one(5, 4);
    let env = Envelope::new(&fam).unwrap();
    for c in count_self_crossings(&fam).unwrap().points {
        let p1 = env.point(c.t1).unwrap();
        let p2 = env.point(c.t2).unwrap();
        assert!((p1[0] - p2[0]).hypot(p1[1] - p2[1]) < 1e-8);
        assert!((p1[0] - c.point[0]).hypot(p1[1] - c.point[1]) < 1e-8);
        assert!(c.t1 < c.t2);
    }
}

#[test]
fn doubling_the_samples_keeps_the_count() {
    for (a, b) in [(5, 4), (7, 3), (-3, 4)] {
        let fam = one(a, b);
        let n = envlab::crossings::default_samples(&fam);
        let x = count_self_crossings_with(&fam, n).unwrap().count;
        let y = count_self_crossings_with(&fam, 2 * n).unwrap().count;
        assert_eq!(x, y, "{a}/{b}");
    }
}

#[test]
fn families_with_cuts_are_partial() {
    let fam = LineFamily::two_circle(RationalSlope::new(-2, 3).unwrap(), 1.2).unwrap();
    assert!(count_self_crossings_with(&fam, 8192).unwrap().partial);
}

#[test]
fn swallowtail_slice_crossing() {
    let opts = CrossingOptions { samples: 4096, clip_radius: None };
    let rep = curve_self_crossings(&swallowtail_slice(-1.0), opts);
    assert_eq!(rep.count, 1);
    let c = rep.points[0];
    assert!((c.point[0] - 0.25).abs() < 1e-9 && c.point[1].abs() < 1e-9);
    assert!((c.t1 + 0.5f64.sqrt()).abs() < 1e-8 && (c.t2 - 0.5f64.sqrt()).abs() < 1e-8);
    assert_eq!(curve_self_crossings(&swallowtail_slice(1.0), opts).count, 0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn crossings_are_symmetric_pairs(y in -0.4f64..0.4, z in -0.6f64..-0.1) {
        let curve = butterfly_slice(y, z);
        let rep = curve_self_crossings(&curve, CrossingOptions { samples: 4096, clip_radius: None });
        for c in &rep.points {
            let p = curve.point(c.t1).unwrap();
            let q = curve.point(c.t2).unwrap();
            prop_assert!((p[0] - q[0]).hypot(p[1] - q[1]) < 1e-8);
            prop_assert!(c.t1 != c.t2);
        }
        let mut keys: Vec<(i64, i64)> = rep.points.iter().map(|c| ((c.t1 * 1e6).round() as i64, (c.t2 * 1e6).round() as i64)).collect();
        let n = keys.len();
        keys.sort();
        keys.dedup();
        prop_assert_eq!(keys.len(), n);
        for c in &rep.points {
            prop_assert!(!rep.points.iter().any(|o| (o.t1 - c.t2).abs() < 1e-9 && (o.t2 - c.t1).abs() < 1e-9));
        }
    }
}
