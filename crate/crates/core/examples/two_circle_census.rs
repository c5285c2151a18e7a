//! Numeric counts next to the closed-form predictions for a handful of
//! one- and two-circle families.

use envlab::census::census;
use envlab::families::LineFamily;
use envlab::trig::RationalSlope;

fn main() -> envlab::Result<()> {
    let cells = [(5, 4, 1.0), (2, 5, 1.0), (-4, 3, 3.5), (3, 4, 2.0), (3, 4, 2.5), (-2, 3, 1.1)];
    println!("{:>6} {:>5}  {:>14} {:>14} {:>12}  agrees", "a/b", "r", "cusps", "tangencies", "infinities");
    for (a, b, r) in cells {
        let rep = census(&LineFamily::two_circle(RationalSlope::for_envelope(a, b)?, r)?)?;
        let p = rep.analytic.as_ref();
        let n = &rep.numeric;
        println!(
            "{:>6} {:>5}  {:>14} {:>14} {:>12}  {}",
            format!("{a}/{b}"),
            r,
            format!("{} / {}", n.cusps, p.map_or(0, |p| p.total_cusps())),
            format!("{} / {}", n.tangencies, p.map_or(0, |p| p.tangency_count)),
            format!("{} / {}", n.infinities, p.map_or(0, |p| p.infinity_count)),
            rep.agrees(),
        );
        for m in &rep.mismatches {
            println!("    {m}");
        }
    }
    Ok(())
}
