//! Reflected rays from a point source at (r, 0) in the unit circle, and
//! the caustic they envelope.

use envlab::families::LineFamily;
use envlab::render::{emit_svg, envelope_scene, SceneOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let r: f64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(2.0);
    let family = LineFamily::caustic_ray_family(r)?;
    let scene = envelope_scene(&family, SceneOptions { samples: 4096, line_count: 96 })?;
    println!("source at ({r}, 0): {} singular points", scene.singular.len());
    for s in &scene.singular {
        println!("  T = {:.6} at ({:.6}, {:.6}) {}", s.t, s.x.unwrap_or(f64::NAN), s.y.unwrap_or(f64::NAN), s.class.name());
    }
    std::fs::write("caustic.svg", emit_svg(&scene.scene))?;
    Ok(())
}
