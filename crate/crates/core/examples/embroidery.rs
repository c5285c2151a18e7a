//! Draws the chord family of the 3/1 one-circle construction and its
//! envelope, the nephroid, to `embroidery.svg`.
//!
//! ```bash
//! cargo run --example embroidery -- 5 4
//! ```

use envlab::families::LineFamily;
use envlab::render::{emit_svg, envelope_scene, SceneOptions};
use envlab::trig::RationalSlope;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<i64> = std::env::args().skip(1).filter_map(|s| s.parse().ok()).collect();
    let (a, b) = match args[..] {
        [a, b, ..] => (a, b),
        _ => (3, 1),
    };
    let family = LineFamily::one_circle(RationalSlope::for_envelope(a, b)?)?;
    let scene = envelope_scene(&family, SceneOptions { samples: 4096, line_count: 180 })?;
    for s in &scene.singular {
        println!("{} at T = {:.6}", s.class.name(), s.t);
    }
    let path = format!("embroidery_{a}_{b}.svg");
    std::fs::write(&path, emit_svg(&scene.scene))?;
    println!("wrote {path}");
    Ok(())
}
