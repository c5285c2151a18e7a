//! Slices of the swallowtail and butterfly discriminants, and a tour of
//! the butterfly control plane on the circle of radius 1/2.

use std::f64::consts::TAU;

use envlab::families::{butterfly_slice, swallowtail_slice};
use envlab::singularity::find_curve_singularities;

fn main() {
    for z in [-1.0, 0.0, 1.0] {
        let found = find_curve_singularities(&swallowtail_slice(z), 4096);
        let orders: Vec<_> = found.iter().map(|s| s.orders).collect();
        println!("swallowtail z = {z:+}: {orders:?}");
    }
    let origin = find_curve_singularities(&butterfly_slice(0.0, 0.0), 4096);
    println!("butterfly at the origin: {:?}", origin.iter().map(|s| (s.orders, s.class.name())).collect::<Vec<_>>());

    let mut last = None;
    for i in 0..=360 {
        let a = TAU * i as f64 / 360.0;
        let n = find_curve_singularities(&butterfly_slice(0.5 * a.cos(), 0.5 * a.sin()), 2048).len();
        if last != Some(n) {
            println!("a = {a:.3}: {n} cusps");
            last = Some(n);
        }
    }
}
