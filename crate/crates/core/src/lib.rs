//! Envelopes of one-parameter families of lines.
//!
//! Families are built from chords between two circles (or reflected rays),
//! their envelopes are computed exactly from trigonometric polynomial
//! coefficients, and the singular points are located and classified as
//! simple cusps, swallowtails or butterflies. Self-crossings are counted
//! numerically and everything can be rendered to SVG or JSON.

pub mod census;
pub mod cli;
pub mod crossings;
pub mod curve;
pub mod envelope;
pub mod error;
pub mod families;
pub mod fd;
pub mod regression;
pub mod render;
pub mod roots;
pub mod service;
pub mod singularity;
pub mod trig;

pub use error::{EnvError, Result};
