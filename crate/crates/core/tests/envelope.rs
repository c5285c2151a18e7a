use std::f64::consts::{PI, TAU};

use envlab::envelope::{closed_form_envelope, envelope_point, infinity_cuts, Envelope};
use envlab::families::LineFamily;
use envlab::trig::RationalSlope;
use envlab::EnvError;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn slope_strategy() -> impl Strategy<Value = RationalSlope> {
    (-7i64..=7, 1i64..=7).prop_filter_map("excluded", |(a, b)| RationalSlope::for_envelope(a, b).ok())
}

#[test]
fn closed_forms_agree_with_the_general_quotient() {
    let mut rng = StdRng::seed_from_u64(3);
    let mut families = 0;
    while families < 20 {
        let Ok(s) = RationalSlope::for_envelope(rng.gen_range(-7..=7), rng.gen_range(1..=7)) else { continue };
        let fam = if families % 2 == 0 {
            LineFamily::one_circle(s).unwrap()
        } else {
            LineFamily::two_circle(s, rng.gen_range(1.05..4.0)).unwrap()
        };
        families += 1;
        let env = Envelope::new(&fam).unwrap();
        for _ in 0..500 {
            let t = rng.gen_range(0.0..TAU);
            let Ok(sample) = env.sample(t) else { continue };
            let Some(p) = sample.point else { continue };
            let q = closed_form_envelope(&fam, t).unwrap();
            let scale = 1.0 + q[0].hypot(q[1]);
            assert!((p[0] - q[0]).hypot(p[1] - q[1]) < 1e-9 * scale, "{:?} T={t}: {p:?} vs {q:?}", fam.spec());
        }
    }
}

#[test]
fn closed_form_refuses_offset_and_caustic() {
    let s = RationalSlope::new(3, 4).unwrap();
    let off = LineFamily::offset_circle(s, 2.0, 0.1, 0.0).unwrap();
    assert!(matches!(closed_form_envelope(&off, 0.3), Err(EnvError::InvalidKind(_))));
    let caustic = LineFamily::caustic_ray_family(2.0).unwrap();
    assert!(matches!(closed_form_envelope(&caustic, 0.3), Err(EnvError::InvalidKind(_))));
}

#[test]
fn nephroid_points() {
    let fam = LineFamily::one_circle(RationalSlope::new(3, 1).unwrap()).unwrap();
    let at0 = envelope_point(&fam, 0.0).unwrap();
    assert!(at0.removable);
    let p = at0.point.unwrap();
    assert!((p[0] - 1.0).abs() < 1e-12 && p[1].abs() < 1e-12);
    let q = envelope_point(&fam, PI).unwrap().point.unwrap();
    assert!((q[0] + 1.0).abs() < 1e-12 && q[1].abs() < 1e-12);
}

#[test]
fn two_circle_left_point() {
    let fam = LineFamily::two_circle(RationalSlope::new(3, 4).unwrap(), 2.5).unwrap();
    let p = envelope_point(&fam, 0.0).unwrap().point.unwrap();
    assert!((p[0] + 5.0 / 7.0).abs() < 1e-12 && p[1].abs() < 1e-12);
    let q = closed_form_envelope(&fam, 0.0).unwrap();
    assert!((q[0] + 5.0 / 7.0).abs() < 1e-12);
}

#[test]
fn cut_counts_and_infinite_samples() {
    let s = RationalSlope::new(-2, 3).unwrap();
    for (r, want) in [(1.2, 10), (1.5, 5), (1.7, 0)] {
        let cuts = infinity_cuts(&LineFamily::two_circle(s, r).unwrap()).unwrap();
        assert_eq!(cuts.len(), want, "r={r}");
        for c in &cuts {
            assert!(c.denom.abs() < 1e-10);
            let dir = c.direction.expect("direction");
            assert!((dir[0].hypot(dir[1]) - 1.0).abs() < 1e-12);
        }
    }
    let fam = LineFamily::two_circle(s, 1.2).unwrap();
    let cut = infinity_cuts(&fam).unwrap()[0];
    assert_eq!(envelope_point(&fam, cut.t).unwrap().point, None);
}

#[test]
fn one_circle_tangencies_lie_on_the_circle() {
    for (a, b) in [(3, 1), (5, 4), (2, 5), (-3, 2), (6, 1), (-1, 4)] {
        let s = RationalSlope::for_envelope(a, b).unwrap();
        let env = Envelope::new(&LineFamily::one_circle(s).unwrap()).unwrap();
        assert_eq!(env.removable_points().len() as u64, s.gap(), "{a}/{b}");
        for rp in env.removable_points() {
            let p = env.sample(rp.t).unwrap().point.unwrap();
            assert!((p[0].hypot(p[1]) - 1.0).abs() < 1e-9);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn one_circle_envelopes_stay_finite(s in slope_strategy(), t in 0.0f64..TAU) {
        let fam = LineFamily::one_circle(s).unwrap();
        prop_assert!(infinity_cuts(&fam).unwrap().is_empty());
        let p = envelope_point(&fam, t).unwrap().point;
        prop_assert!(p.is_some());
    }

    #[test]
    fn steep_two_circle_envelopes_stay_finite(s in slope_strategy(), r in 1.01f64..5.0) {
        prop_assume!(s.value().abs() > 1.0);
        let fam = LineFamily::two_circle(s, r).unwrap();
        prop_assert!(infinity_cuts(&fam).unwrap().is_empty());
    }

    #[test]
    fn envelope_points_satisfy_both_equations(
        s in slope_strategy(),
        r in 1.05f64..4.0,
        d in -1.0f64..1.0,
        t in 0.0f64..TAU,
    ) {
        let fam = LineFamily::offset_circle(s, r, 0.0, d).unwrap();
        let env = Envelope::new(&fam).unwrap();
        if let Ok(sample) = env.sample(t) {
            if let Some(p) = sample.point {
                for k in 0..2 {
                    let (v, scale) = env.line_derivative(k, t, p);
                    prop_assert!(v.abs() < 1e-9 * scale);
                }
            } else {
                prop_assert!(sample.denom.abs() <= 1e-9 * env.denom_scale());
            }
        }
    }
}
