//! Taylor data and classification at the two singular points of the 3/4,
//! r = 5/2 envelope.

use std::f64::consts::PI;

use envlab::families::LineFamily;
use envlab::singularity::{classify, taylor_at};
use envlab::trig::RationalSlope;

fn main() -> envlab::Result<()> {
    let family = LineFamily::two_circle(RationalSlope::new(3, 4)?, 2.5)?;
    for t0 in [0.0, PI] {
        let p = classify(&family, t0)?;
        let s = taylor_at(&family, t0, 6)?;
        println!("T = {t0:.6}: {}", p.class.name());
        let rel = p.diagnostics.relative().map(|v| format!("{v:.3e}"));
        println!("  relative F_tt..F_ttttt: {}", rel.join(" "));
        for k in 0..=6 {
            println!("  t^{k}: x {:+.10}  y {:+.10}", s.x[k], s.y[k]);
        }
    }
    Ok(())
}
