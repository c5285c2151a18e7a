//! 3×3 grid of offset-circle envelopes around (r, d) = (2.5, 0), written
//! to `clock.svg`, then the swallowtail where two cusps of the r = 2.6
//! family merge as d grows.

use envlab::families::LineFamily;
use envlab::render::{clock_grid, emit_clock_svg, SceneOptions};
use envlab::singularity::{classify, find_singular_points, locate_swallowtail};
use envlab::trig::RationalSlope;

fn cusps(slope: RationalSlope, r: f64, d: f64) -> envlab::Result<Vec<f64>> {
    let pts = find_singular_points(&LineFamily::offset_circle(slope, r, 0.0, d)?)?;
    Ok(pts.iter().map(|p| p.t).collect())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let slope = RationalSlope::new(3, 4)?;
    let grid = clock_grid(slope, 2.5, 0.0, 0.5, SceneOptions { samples: 1024, line_count: 0 })?;
    for (cell, (dr, dd)) in grid.cells.iter().zip(&grid.offsets) {
        let names: Vec<_> = cell.singular.iter().map(|s| s.class.name()).collect();
        println!("r = {:.2} d = {:+.2}: {}", 2.5 + dr, dd, names.join(", "));
    }
    std::fs::write("clock.svg", emit_clock_svg(&grid))?;
    println!("wrote clock.svg");

    let r = 2.6;
    let (n0, n1) = (cusps(slope, r, 0.0)?.len(), cusps(slope, r, 0.5)?.len());
    let (mut lo, mut hi) = (0.0, 0.5);
    for _ in 0..20 {
        let mid = 0.5 * (lo + hi);
        if cusps(slope, r, mid)?.len() == n0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let rich = cusps(slope, r, if n0 > n1 { lo } else { hi })?;
    let t_guess = rich
        .windows(2)
        .min_by(|x, y| (x[1] - x[0]).total_cmp(&(y[1] - y[0])))
        .map(|w| 0.5 * (w[0] + w[1]))
        .ok_or("no cusp pair")?;
    let d = 0.5 * (lo + hi);
    let (t, r_star) = locate_swallowtail(slope, d, r, t_guess)?;
    let class = classify(&LineFamily::offset_circle(slope, r_star, 0.0, d)?, t)?.class;
    println!("{n0} -> {n1} cusps; {} at r = {r_star:.6}, d = {d:.6}, T = {t:.6}", class.name());
    Ok(())
}
