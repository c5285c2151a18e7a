//! Command-line front end.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::census::{census_with, CensusOptions};
use crate::crossings::{count_self_crossings_with, default_samples as crossing_samples};
use crate::envelope::Envelope;
use crate::error::EnvError;
use crate::families::{Catastrophe, FamilySpec, LineFamily};
use crate::regression;
use crate::render::{
    clock_grid, emit_clock_svg, emit_svg, envelope_scene, standard_scene, SceneDocument, SceneOptions,
};
use crate::service;
use crate::singularity::{classify_at, default_samples, singular_points_of, SingularPoint};
use crate::trig::RationalSlope;

#[derive(Debug, Parser)]
#[command(name = "envlab", version, about = "Envelopes of line families and their singular points")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone)]
pub struct FamilyArgs {
    /// Slope numerator.
    #[arg(long, allow_negative_numbers = true)]
    pub a: i64,
    /// Slope denominator.
    #[arg(long)]
    pub b: i64,
    /// Radius of the second circle.
    #[arg(long, default_value_t = 1.0)]
    pub r: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub c: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub d: f64,
}

#[derive(Debug, Args, Clone, Default)]
pub struct Output {
    #[arg(long, value_name = "PATH")]
    pub svg: Option<PathBuf>,
    #[arg(long, value_name = "PATH")]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Model {
    Swallowtail,
    Butterfly,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample the envelope and write a scene.
    Envelope {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        n: Option<usize>,
        /// Number of chords to draw.
        #[arg(long, default_value_t = 0)]
        lines: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Singular points with their classes and diagnostics.
    Classify {
        #[command(flatten)]
        family: FamilyArgs,
        /// Classify this single parameter value instead of searching.
        #[arg(long = "at", allow_negative_numbers = true)]
        at: Option<f64>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
    },
    /// Numeric counts next to the closed-form predictions.
    Counts {
        #[arg(long, allow_negative_numbers = true)]
        a: Option<i64>,
        #[arg(long)]
        b: Option<i64>,
        #[arg(long, default_value_t = 1.0)]
        r: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        c: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        d: f64,
        #[arg(long)]
        n: Option<usize>,
        /// Exit with status 1 when numeric and analytic counts disagree; without
        /// a family, replay the built-in regression list.
        #[arg(long)]
        check: bool,
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
    },
    /// Self-crossings of the envelope.
    Crossings {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
    },
    /// 3×3 grid of offset-circle envelopes around (r, d).
    Clock {
        #[arg(long, allow_negative_numbers = true, default_value_t = 3)]
        a: i64,
        #[arg(long, default_value_t = 4)]
        b: i64,
        #[arg(long, default_value_t = 2.5)]
        r: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        d: f64,
        /// Grid step in both r and d.
        #[arg(long, default_value_t = 0.5)]
        delta: f64,
        #[arg(long)]
        n: Option<usize>,
        #[command(flatten)]
        out: Output,
    },
    /// Slices of the swallowtail and butterfly discriminants.
    Standard {
        #[arg(long, value_enum)]
        model: Model,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        y: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        z: f64,
        #[arg(long)]
        n: Option<usize>,
        #[command(flatten)]
        out: Output,
    },
    /// Reflected rays from a point source compared with the 2/1 chords.
    Caustic {
        #[arg(long, default_value_t = 2.0)]
        r: f64,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 0)]
        lines: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Run the HTTP service.
    Serve {
        #[arg(long)]
        port: Option<u16>,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Check(String),
    Io(String),
}

impl From<EnvError> for Failure {
    fn from(e: EnvError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn samples(flag: Option<usize>, default: usize) -> usize {
    flag.or_else(|| std::env::var("ENVLAB_SAMPLES").ok().and_then(|s| s.parse().ok())).unwrap_or(default)
}

fn build(a: i64, b: i64, r: f64, c: f64, d: f64) -> Result<LineFamily, Failure> {
    RationalSlope::for_envelope(a, b)?;
    Ok(FamilySpec::from_params(a, b, r, c, d).build()?)
}

impl FamilyArgs {
    fn family(&self) -> Result<LineFamily, Failure> {
        build(self.a, self.b, self.r, self.c, self.d)
    }
}

fn one_mode(out: &Output) -> Result<(), Failure> {
    match (&out.svg, &out.json) {
        (Some(_), Some(_)) | (None, None) => Err(Failure::Usage("exactly one of --svg or --json is required".into())),
        _ => Ok(()),
    }
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Outcome {
    let text = serde_json::to_string_pretty(value).map_err(|e| Failure::Io(e.to_string()))?;
    std::fs::write(path, text + "\n")?;
    Ok(())
}

fn write_scene(out: &Output, svg: impl FnOnce() -> String, doc: impl FnOnce() -> SceneDocument) -> Outcome {
    if let Some(p) = &out.svg {
        std::fs::write(p, svg())?;
    }
    if let Some(p) = &out.json {
        write_json(p, &doc())?;
    }
    Ok(())
}

fn print_points(w: &mut dyn Write, family: &LineFamily, points: &[SingularPoint]) -> Outcome {
    writeln!(w, "{:>14} {:>14} {:>14} {:>14}  {:<16} {:>11} {:>11} {:>11} {:>11}", "T", "t", "X", "Y", "class", "F_tt", "F_ttt", "F_tttt", "F_ttttt")?;
    for p in points {
        let (x, y) = p.location.map_or(("inf".into(), "inf".into()), |l| (format!("{:.10}", l[0]), format!("{:.10}", l[1])));
        let d = p.diagnostics.values();
        writeln!(
            w,
            "{:>14.10} {:>14.10} {:>14} {:>14}  {:<16} {:>11.3e} {:>11.3e} {:>11.3e} {:>11.3e}",
            p.t,
            family.slope.to_t(p.t),
            x,
            y,
            p.class.name(),
            d[0],
            d[1],
            d[2],
            d[3]
        )?;
    }
    Ok(())
}

fn run_command(cmd: Command, w: &mut dyn Write) -> Outcome {
    match cmd {
        Command::Envelope { family, n, lines, out } => {
            one_mode(&out)?;
            let fam = family.family()?;
            let scene = envelope_scene(&fam, SceneOptions { samples: samples(n, 2048), line_count: lines })?;
            writeln!(w, "{} arcs, {} cuts, {} singular points", scene.scene.arcs.len(), scene.cuts.len(), scene.singular.len())?;
            write_scene(&out, || emit_svg(&scene.scene), || scene.document())
        }
        Command::Classify { family, at, n, json } => {
            let fam = family.family()?;
            let env = Envelope::new(&fam)?;
            let points = match at {
                Some(t) => vec![classify_at(&env, t)?],
                None => singular_points_of(&env, samples(n, default_samples(fam.slope)))?,
            };
            print_points(w, &fam, &points)?;
            if let Some(p) = json {
                write_json(&p, &points)?;
            }
            Ok(())
        }
        Command::Counts { a, b, r, c, d, n, check, json } => {
            let (a, b) = match (a, b) {
                (Some(a), Some(b)) => (a, b),
                (None, None) if check => return run_regression(w),
                _ => return Err(Failure::Usage("--a and --b are required (or use --check alone)".into())),
            };
            let fam = build(a, b, r, c, d)?;
            let opts = CensusOptions { singular_samples: n, crossing_samples: n.map(|n| n * 2), skip_crossings: false };
            let rep = census_with(&fam, opts)?;
            let pair = |got: usize, want: Option<usize>| want.map_or(format!("{got}"), |w| format!("{got}/{w}"));
            let p = rep.analytic;
            writeln!(w, "family {}/{} r={} c={} d={} ({:?})", rep.family.a, rep.family.b, rep.family.r, rep.family.c, rep.family.d, rep.family.kind)?;
            writeln!(w, "cusps {}", pair(rep.numeric.cusps, p.map(|p| p.total_cusps())))?;
            writeln!(w, "tangencies {}", pair(rep.numeric.tangencies, p.map(|p| p.tangency_count)))?;
            match rep.numeric.crossings {
                Some(x) => writeln!(w, "crossings {}{}", pair(x, p.and_then(|p| p.crossing_count)), if rep.crossings_partial { " (partial)" } else { "" })?,
                None => writeln!(w, "crossings -")?,
            }
            writeln!(w, "infinities {}", pair(rep.numeric.infinities, p.map(|p| p.infinity_count)))?;
            let k = rep.numeric.classes;
            writeln!(w, "classes SimpleCusp={} Swallowtail={} Butterfly={} HigherDegenerate={}", k.simple_cusp, k.swallowtail, k.butterfly, k.higher_degenerate)?;
            if let Some(path) = json {
                write_json(&path, &rep)?;
            }
            if check && !rep.agrees() {
                return Err(Failure::Check(rep.mismatches.join("; ")));
            }
            Ok(())
        }
        Command::Crossings { family, n, json } => {
            let fam = family.family()?;
            let rep = count_self_crossings_with(&fam, samples(n, crossing_samples(&fam)))?;
            writeln!(w, "crossings {}{}", rep.count, if rep.partial { " (partial)" } else { "" })?;
            for p in &rep.points {
                writeln!(w, "  T1={:.12} T2={:.12} at ({:.10}, {:.10}) residual {:.1e}", p.t1, p.t2, p.point[0], p.point[1], p.residual)?;
            }
            for s in &rep.stalls {
                writeln!(w, "  NEWTON_STALL near T1={:.6} T2={:.6} residual {:.1e}", s.t1, s.t2, s.residual)?;
            }
            if let Some(p) = json {
                write_json(&p, &rep)?;
            }
            Ok(())
        }
        Command::Clock { a, b, r, d, delta, n, out } => {
            one_mode(&out)?;
            let slope = RationalSlope::for_envelope(a, b)?;
            let grid = clock_grid(slope, r, d, delta, SceneOptions { samples: samples(n, 1024), line_count: 0 })?;
            for (cell, (dr, dd)) in grid.cells.iter().zip(&grid.offsets) {
                let names: Vec<&str> = cell.singular.iter().map(|s| s.class.name()).collect();
                writeln!(w, "r={:.3} d={:.3}: {} [{}]", r + dr, d + dd, names.len(), names.join(", "))?;
            }
            if let Some(p) = &out.svg {
                std::fs::write(p, emit_clock_svg(&grid))?;
            }
            if let Some(p) = &out.json {
                let docs: Vec<SceneDocument> = grid.cells.iter().map(|c| c.document()).collect();
                write_json(p, &serde_json::json!({ "base": [grid.base.0, grid.base.1], "offsets": grid.offsets, "cells": docs }))?;
            }
            Ok(())
        }
        Command::Standard { model, y, z, n, out } => {
            one_mode(&out)?;
            let (model, params) = match model {
                Model::Swallowtail => (Catastrophe::Swallowtail, vec![z]),
                Model::Butterfly => (Catastrophe::Butterfly, vec![y, z]),
            };
            let scene = standard_scene(model, &params, samples(n, 2048))?;
            writeln!(w, "cusps {} crossings {}", scene.singular.len(), scene.crossings)?;
            for s in &scene.singular {
                writeln!(w, "  t={:.10} at ({:.10}, {:.10}) {}", s.t, s.x.unwrap_or(f64::NAN), s.y.unwrap_or(f64::NAN), s.class.name())?;
            }
            write_scene(&out, || emit_svg(&scene.scene), || scene.document())
        }
        Command::Caustic { r, n, lines, out } => {
            one_mode(&out)?;
            let rays = LineFamily::caustic_ray_family(r)?;
            let chords = LineFamily::two_circle(RationalSlope::new(2, 1)?, r)?;
            let worst = (0..1000).map(|i| std::f64::consts::TAU * i as f64 / 1000.0).fold(0.0f64, |m, t| {
                let (u, v) = (rays.line_at(t), chords.line_at(t));
                let cross = [u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]];
                let norm = |x: [f64; 3]| x.iter().map(|c| c * c).sum::<f64>().sqrt();
                m.max(norm(cross) / (norm(u) * norm(v)).max(f64::MIN_POSITIVE))
            });
            writeln!(w, "reflected rays vs 2/1 chords at r={r}: worst relative cross product {worst:.2e}")?;
            let scene = envelope_scene(&rays, SceneOptions { samples: samples(n, 2048), line_count: lines })?;
            writeln!(w, "{} arcs, {} singular points", scene.scene.arcs.len(), scene.singular.len())?;
            write_scene(&out, || emit_svg(&scene.scene), || scene.document())
        }
        Command::Serve { port } => {
            let port = service::resolve_port(port);
            let rt = tokio::runtime::Builder::new_multi_thread().enable_all().build()?;
            rt.block_on(service::serve(port))?;
            Ok(())
        }
    }
}

fn run_regression(w: &mut dyn Write) -> Outcome {
    let mut failed = Vec::new();
    for (name, outcome) in regression::run_all() {
        match outcome {
            Ok(detail) => writeln!(w, "ok    {name}: {detail}")?,
            Err(why) => {
                writeln!(w, "FAIL  {name}: {why}")?;
                failed.push(name);
            }
        }
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Check(format!("{} regression case(s) failed", failed.len())))
    }
}

/// Parses `args` (including the program name) and runs the command, writing
/// reports to `out`. Returns the process exit code.
pub fn run_with<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match run_command(cli.command, out) {
        Ok(()) => 0,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            2
        }
        Err(Failure::Check(m)) => {
            eprintln!("check failed: {m}");
            1
        }
        Err(Failure::Io(m)) => {
            eprintln!("error: {m}");
            1
        }
    }
}

pub fn run() -> i32 {
    run_with(std::env::args_os(), &mut std::io::stdout().lock())
}
