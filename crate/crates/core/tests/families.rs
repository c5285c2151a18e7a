use std::f64::consts::{FRAC_PI_2, PI, TAU};

use envlab::curve::ParamCurve;
use envlab::families::{butterfly_slice, swallowtail_slice, Catastrophe, LineFamily};
use envlab::trig::RationalSlope;
use proptest::prelude::*;

fn slope_strategy() -> impl Strategy<Value = RationalSlope> {
    (-8i64..=8, 1i64..=8)
        .prop_filter_map("excluded", |(a, b)| RationalSlope::for_envelope(a, b).ok())
}

fn rel_residual(fam: &LineFamily, t: f64, p: [f64; 2]) -> f64 {
    fam.residual(t, p).abs() / fam.residual_scale(t, p).max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn endpoints_lie_on_their_chord(
        s in slope_strategy(),
        r in 0.2f64..5.0,
        c in -2.0f64..2.0,
        d in -2.0f64..2.0,
        seed in 0u64..1000,
    ) {
        let fams = [
            LineFamily::one_circle(s).unwrap(),
            LineFamily::two_circle(s, r).unwrap(),
            LineFamily::offset_circle(s, r, c, d).unwrap(),
            LineFamily::caustic_ray_family(r).unwrap(),
        ];
        for fam in &fams {
            for i in 0..1000 {
                let t = TAU * ((i as f64 * 0.618_033_988_75 + seed as f64 * 0.1).fract());
                let (p, q) = fam.endpoints(t);
                prop_assert!(rel_residual(fam, t, p) < 1e-12);
                prop_assert!(rel_residual(fam, t, q) < 1e-12);
            }
        }
    }

    #[test]
    fn radius_one_is_the_one_circle_family(s in slope_strategy()) {
        let one = LineFamily::one_circle(s).unwrap();
        let two = LineFamily::two_circle(s, 1.0).unwrap();
        prop_assert!(one.same_coefficients(&two, 0.0));
    }

    #[test]
    fn centred_offset_is_the_two_circle_family(s in slope_strategy(), r in 0.1f64..6.0) {
        let off = LineFamily::offset_circle(s, r, 0.0, 0.0).unwrap();
        let two = LineFamily::two_circle(s, r).unwrap();
        prop_assert!(off.same_coefficients(&two, 0.0));
    }

    #[test]
    fn two_circle_matches_closed_form(s in slope_strategy(), r in 0.5f64..4.0, t in 0.0f64..TAU) {
        // x(r sin mt − sin t) − y(r cos mt − cos t) − r sin(m−1)t, written in T with t = bT
        let (a, b) = (s.numerator() as f64, s.denominator() as f64);
        let want = [
            r * (a * t).sin() - (b * t).sin(),
            -(r * (a * t).cos() - (b * t).cos()),
            -r * ((a - b) * t).sin(),
        ];
        let got = LineFamily::two_circle(s, r).unwrap().line_at(t);
        for k in 0..3 {
            prop_assert!((got[k] - want[k]).abs() < 1e-12 * (1.0 + r));
        }
    }

    #[test]
    fn standard_slices_are_discriminants(t in -1.5f64..1.5, y in -1.0f64..1.0, z in -1.0f64..1.0) {
        let s = swallowtail_slice(z).point(t).unwrap();
        let (g, gt) = Catastrophe::Swallowtail.potential(t, &[s[0], s[1], z]);
        prop_assert!(g.abs() < 1e-12 && gt.abs() < 1e-12);
        let h = butterfly_slice(y, z).point(t).unwrap();
        let (v, vt) = Catastrophe::Butterfly.potential(t, &[h[0], h[1], y, z]);
        prop_assert!(v.abs() < 1e-10 && vt.abs() < 1e-10);
    }
}

#[test]
fn nephroid_chord_at_quarter_turn_is_vertical() {
    let fam = LineFamily::one_circle(RationalSlope::new(3, 1).unwrap()).unwrap();
    let [a, b, c] = fam.line_at(FRAC_PI_2);
    assert!(b.abs() < 1e-15 && c.abs() < 1e-15 && a.abs() > 1.0);
    assert_eq!(fam.line_at(0.0), [0.0, 0.0, 0.0]);
}

#[test]
fn two_circle_line_at_zero() {
    let fam = LineFamily::two_circle(RationalSlope::new(3, 4).unwrap(), 2.5).unwrap();
    let [a, b, c] = fam.line_at(0.0);
    assert!(a.abs() < 1e-15 && (b + 1.5).abs() < 1e-15 && c.abs() < 1e-15);
}

#[test]
fn five_fourths_closes_after_one_period() {
    let fam = LineFamily::one_circle(RationalSlope::new(5, 4).unwrap()).unwrap();
    for i in 0..50 {
        let t = 0.37 * i as f64;
        let (p, q) = (fam.line_at(t), fam.line_at(t + TAU));
        for k in 0..3 {
            assert!((p[k] - q[k]).abs() < 1e-12);
        }
    }
    assert!((fam.slope.to_t(TAU) - 8.0 * PI).abs() < 1e-12);
}

#[test]
fn offset_d_terms() {
    let fam = LineFamily::offset_circle(RationalSlope::new(3, 4).unwrap(), 2.5, 0.0, 0.5).unwrap();
    let plain = LineFamily::two_circle(RationalSlope::new(3, 4).unwrap(), 2.5).unwrap();
    let da = &fam.x_coef - &plain.x_coef;
    let dc = &fam.constant - &plain.constant;
    assert!(da.approx_eq(&envlab::trig::TrigPoly::constant(0.5), 1e-15));
    assert!(dc.approx_eq(&envlab::trig::TrigPoly::cos(4, -0.5), 1e-15));
}

#[test]
fn caustic_ray_at_quarter_turn() {
    let fam = LineFamily::caustic_ray_family(1.0).unwrap();
    let [a, b, c] = fam.line_at(FRAC_PI_2);
    // proportional to −x + y − 1 = 0
    let k = -a;
    assert!(k.abs() > 0.1);
    assert!((b - k).abs() < 1e-12 && (c + k).abs() < 1e-12);
    assert!((a * -1.0 + c).abs() < 1e-12);
}

#[test]
fn rejects_bad_radii_and_slopes() {
    let s = RationalSlope::new(3, 4).unwrap();
    assert!(LineFamily::two_circle(s, 0.0).is_err());
    assert!(LineFamily::offset_circle(s, -1.0, 0.0, 0.0).is_err());
    assert!(LineFamily::caustic_ray_family(0.0).is_err());
    assert!(RationalSlope::for_envelope(2, 2).is_err());
    assert!(RationalSlope::for_envelope(-3, 3).is_err());
    assert!(RationalSlope::for_envelope(0, 5).is_err());
    assert!(!LineFamily::two_circle(s, 0.5).unwrap().params.in_regime());
}
