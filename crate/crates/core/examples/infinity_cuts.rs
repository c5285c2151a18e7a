//! Where the -2/3 envelope runs off to infinity, for radii inside, on and
//! past the edge of the window.

use envlab::envelope::{envelope_point, infinity_cuts};
use envlab::families::LineFamily;
use envlab::trig::RationalSlope;

fn main() -> envlab::Result<()> {
    let slope = RationalSlope::for_envelope(-2, 3)?;
    for r in [1.2, 1.5, 1.7] {
        let family = LineFamily::two_circle(slope, r)?;
        let cuts = infinity_cuts(&family)?;
        println!("r = {r}: {} cuts", cuts.len());
        for c in &cuts {
            let dir = c.direction.map_or("-".to_string(), |d| format!("({:+.4}, {:+.4})", d[0], d[1]));
            println!("  T = {:.9}  D = {:+.1e}  asymptote direction {dir}", c.t, c.denom);
        }
        if let Some(c) = cuts.first() {
            let near = envelope_point(&family, c.t + 1e-4)?.point.expect("finite near the cut");
            println!("  1e-4 past the first cut: ({:.1}, {:.1})", near[0], near[1]);
        }
    }
    Ok(())
}
