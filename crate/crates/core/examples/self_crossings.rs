//! Self-crossings of one-circle envelopes and of a swallowtail slice.

use envlab::crossings::{count_self_crossings, curve_self_crossings, CrossingOptions};
use envlab::families::{swallowtail_slice, LineFamily};
use envlab::singularity::predict;
use envlab::trig::RationalSlope;

fn main() -> envlab::Result<()> {
    for (a, b) in [(3, 1), (5, 4), (2, 5), (7, 3)] {
        let family = LineFamily::one_circle(RationalSlope::for_envelope(a, b)?)?;
        let rep = count_self_crossings(&family)?;
        let want = predict(&family)?.crossing_count;
        println!("{a}/{b}: {} crossings (formula {want:?}, {} samples)", rep.count, rep.samples);
        for p in &rep.points {
            println!("  T1 = {:.9}  T2 = {:.9}  at ({:+.9}, {:+.9})", p.t1, p.t2, p.point[0], p.point[1]);
        }
    }
    let rep = curve_self_crossings(&swallowtail_slice(-1.0), CrossingOptions { samples: 4096, clip_radius: None });
    println!("swallowtail z = -1: {:?}", rep.points.iter().map(|p| p.point).collect::<Vec<_>>());
    Ok(())
}
