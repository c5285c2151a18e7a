//! Line families `A(T)x + B(T)y + C(T) = 0` and the polynomial catastrophe
//! models used as references for their singularities.
//!
//! Every chord family goes through [`chord_family`], which turns two moving
//! endpoints into line coefficients. The closed forms for the one- and
//! two-circle constructions only appear in tests, as oracles.

use serde::{Deserialize, Serialize};

use crate::curve::{Point, Poly, PolyCurve};
use crate::error::{EnvError, Result};
use crate::trig::{RationalSlope, TrigPoly};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FamilyKind {
    OneCircle,
    TwoCircle,
    OffsetCircle,
    Caustic,
}

/// Radius and center of the second circle (or the light source distance
/// for caustics).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FamilyParams {
    pub r: f64,
    pub c: f64,
    pub d: f64,
}

impl FamilyParams {
    /// The two-circle results assume `r > 1`.
    pub fn in_regime(&self) -> bool {
        self.r > 1.0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LineFamily {
    /// Coefficient of `x`.
    pub x_coef: TrigPoly,
    /// Coefficient of `y`.
    pub y_coef: TrigPoly,
    pub constant: TrigPoly,
    pub slope: RationalSlope,
    pub params: FamilyParams,
    pub kind: FamilyKind,
}

/// Line through two moving points `p1(T)`, `p2(T)`:
/// `A = y₂ − y₁`, `B = −(x₂ − x₁)`, `C = x₂y₁ − x₁y₂`.
pub fn chord_family(
    p1: (&TrigPoly, &TrigPoly),
    p2: (&TrigPoly, &TrigPoly),
) -> (TrigPoly, TrigPoly, TrigPoly) {
    let (x1, y1) = p1;
    let (x2, y2) = p2;
    let a = y2 - y1;
    let b = x1 - x2;
    let c = &(x2 * y1) - &(x1 * y2);
    (a, b, c)
}

fn check_radius(r: f64) -> Result<()> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(EnvError::InvalidRadius(r));
    }
    Ok(())
}

impl LineFamily {
    /// Chords of the unit circle from `(cos bT, sin bT)` to `(cos aT, sin aT)`.
    pub fn one_circle(slope: RationalSlope) -> Result<Self> {
        let mut fam = Self::offset_circle(slope, 1.0, 0.0, 0.0)?;
        fam.kind = FamilyKind::OneCircle;
        Ok(fam)
    }

    /// Unit circle to the concentric circle of radius `r`.
    pub fn two_circle(slope: RationalSlope, r: f64) -> Result<Self> {
        let mut fam = Self::offset_circle(slope, r, 0.0, 0.0)?;
        fam.kind = FamilyKind::TwoCircle;
        Ok(fam)
    }

    /// Unit circle to the circle of radius `r` centered at `(c, d)`.
    pub fn offset_circle(slope: RationalSlope, r: f64, c: f64, d: f64) -> Result<Self> {
        if slope.is_excluded() {
            return Err(EnvError::ExcludedSlope { a: slope.numerator(), b: slope.denominator() });
        }
        check_radius(r)?;
        if !c.is_finite() || !d.is_finite() {
            return Err(EnvError::InvalidParameter("center must be finite".into()));
        }
        let (a, b) = (slope.numerator(), slope.denominator());
        let x1 = TrigPoly::cos(b, 1.0);
        let y1 = TrigPoly::sin(b, 1.0);
        let x2 = &TrigPoly::constant(c) + &TrigPoly::cos(a, r);
        let y2 = &TrigPoly::constant(d) + &TrigPoly::sin(a, r);
        let (x_coef, y_coef, constant) = chord_family((&x1, &y1), (&x2, &y2));
        Ok(Self {
            x_coef,
            y_coef,
            constant,
            slope,
            params: FamilyParams { r, c, d },
            kind: FamilyKind::OffsetCircle,
        })
    }

    /// Rays from a point source at `(r, 0)` reflected in the unit circle.
    ///
    /// Built from the reflection law itself: the incoming direction
    /// `v = P − S` is mirrored in the normal `P` at `P = (cos T, sin T)`.
    pub fn caustic_ray_family(r: f64) -> Result<Self> {
        check_radius(r)?;
        let px = TrigPoly::cos(1, 1.0);
        let py = TrigPoly::sin(1, 1.0);
        let vx = &px - &TrigPoly::constant(r);
        let vy = py.clone();
        let vn = &(&vx * &px) + &(&vy * &py);
        let wx = &vx - &(&(&vn * &px) * 2.0);
        let wy = &vy - &(&(&vn * &py) * 2.0);
        let x_coef = wy;
        let y_coef = -&wx;
        let constant = -(&(&x_coef * &px) + &(&y_coef * &py));
        Ok(Self {
            x_coef,
            y_coef,
            constant,
            slope: RationalSlope::new(2, 1)?,
            params: FamilyParams { r, c: 0.0, d: 0.0 },
            kind: FamilyKind::Caustic,
        })
    }

    /// `(A(T), B(T), C(T))`.
    pub fn line_at(&self, t: f64) -> [f64; 3] {
        [self.x_coef.eval(t), self.y_coef.eval(t), self.constant.eval(t)]
    }

    /// `F(T, x, y)`.
    pub fn residual(&self, t: f64, p: Point) -> f64 {
        let [a, b, c] = self.line_at(t);
        a * p[0] + b * p[1] + c
    }

    /// Magnitude against which residuals of `F` at `(T, p)` are compared.
    pub fn residual_scale(&self, t: f64, p: Point) -> f64 {
        let [a, b, c] = self.line_at(t);
        (a * p[0]).abs() + (b * p[1]).abs() + c.abs()
    }

    /// The two points whose chord is the line at `T`.
    pub fn endpoints(&self, t: f64) -> (Point, Point) {
        let (a, b) = (self.slope.numerator() as f64, self.slope.denominator() as f64);
        let FamilyParams { r, c, d } = self.params;
        match self.kind {
            FamilyKind::Caustic => {
                ([t.cos(), t.sin()], [r * (2.0 * t).cos(), r * (2.0 * t).sin()])
            }
            _ => ([(b * t).cos(), (b * t).sin()], [c + r * (a * t).cos(), d + r * (a * t).sin()]),
        }
    }

    /// Circles the construction is drawn on, as `(center, radius)`.
    pub fn circles(&self) -> Vec<(Point, f64)> {
        let FamilyParams { r, c, d } = self.params;
        match self.kind {
            FamilyKind::OneCircle => vec![([0.0, 0.0], 1.0)],
            _ => vec![([0.0, 0.0], 1.0), ([c, d], r)],
        }
    }

    /// Largest distance from the origin of any construction circle.
    pub fn outer_radius(&self) -> f64 {
        self.circles()
            .iter()
            .map(|(c, r)| c[0].hypot(c[1]) + r)
            .fold(1.0, f64::max)
    }

    pub fn max_frequency(&self) -> u32 {
        self.x_coef
            .max_frequency()
            .max(self.y_coef.max_frequency())
            .max(self.constant.max_frequency())
    }

    /// Coefficients agree term by term within `tol`.
    pub fn same_coefficients(&self, other: &LineFamily, tol: f64) -> bool {
        self.x_coef.approx_eq(&other.x_coef, tol)
            && self.y_coef.approx_eq(&other.y_coef, tol)
            && self.constant.approx_eq(&other.constant, tol)
    }

    pub fn spec(&self) -> FamilySpec {
        FamilySpec {
            kind: self.kind,
            a: self.slope.numerator(),
            b: self.slope.denominator(),
            r: self.params.r,
            c: self.params.c,
            d: self.params.d,
        }
    }
}

/// Serializable description of a family, used by the JSON scene schema.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub a: i64,
    pub b: i64,
    pub r: f64,
    pub c: f64,
    pub d: f64,
}

impl FamilySpec {
    pub fn build(&self) -> Result<LineFamily> {
        match self.kind {
            FamilyKind::Caustic => LineFamily::caustic_ray_family(self.r),
            kind => {
                let slope = RationalSlope::for_envelope(self.a, self.b)?;
                match kind {
                    FamilyKind::OneCircle => LineFamily::one_circle(slope),
                    FamilyKind::TwoCircle => LineFamily::two_circle(slope, self.r),
                    _ => LineFamily::offset_circle(slope, self.r, self.c, self.d),
                }
            }
        }
    }

    /// Picks the narrowest kind that describes `(a, b, r, c, d)`.
    pub fn from_params(a: i64, b: i64, r: f64, c: f64, d: f64) -> Self {
        let kind = if c != 0.0 || d != 0.0 {
            FamilyKind::OffsetCircle
        } else if r == 1.0 {
            FamilyKind::OneCircle
        } else {
            FamilyKind::TwoCircle
        };
        Self { kind, a, b, r, c, d }
    }
}

/// The standard polynomial catastrophe models.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Catastrophe {
    /// `G = t⁴ + x + yt + zt²`.
    Swallowtail,
    /// `H = t⁵ + w + xt + yt² + zt³`.
    Butterfly,
}

/// Parameter half-width used for standard slices.
pub const SLICE_HALF_WIDTH: f64 = 1.5;

impl Catastrophe {
    pub fn degree(&self) -> u32 {
        match self {
            Catastrophe::Swallowtail => 4,
            Catastrophe::Butterfly => 5,
        }
    }

    /// Number of slice parameters held fixed.
    pub fn arity(&self) -> usize {
        match self {
            Catastrophe::Swallowtail => 1,
            Catastrophe::Butterfly => 2,
        }
    }

    /// `(value, t-derivative)` of the model at `t` with coordinates `coords`
    /// (`[x, y, z]` for the swallowtail, `[w, x, y, z]` for the butterfly).
    pub fn potential(&self, t: f64, coords: &[f64]) -> (f64, f64) {
        match self {
            Catastrophe::Swallowtail => {
                let [x, y, z] = [coords[0], coords[1], coords[2]];
                (t.powi(4) + x + y * t + z * t * t, 4.0 * t.powi(3) + y + 2.0 * z * t)
            }
            Catastrophe::Butterfly => {
                let [w, x, y, z] = [coords[0], coords[1], coords[2], coords[3]];
                (
                    t.powi(5) + w + x * t + y * t * t + z * t.powi(3),
                    5.0 * t.powi(4) + x + 2.0 * y * t + 3.0 * z * t * t,
                )
            }
        }
    }

    /// Planar slice of the discriminant. `params` is `[z]` or `[y, z]`.
    pub fn slice(&self, params: &[f64]) -> Result<PolyCurve> {
        if params.len() != self.arity() {
            return Err(EnvError::InvalidParameter(format!(
                "{self:?} takes {} slice parameter(s)",
                self.arity()
            )));
        }
        Ok(match self {
            Catastrophe::Swallowtail => swallowtail_slice(params[0]),
            Catastrophe::Butterfly => butterfly_slice(params[0], params[1]),
        })
    }
}

/// `t ↦ (3t⁴ + zt², −4t³ − 2zt)`, the slice of `G = G_t = 0` at height `z`.
pub fn swallowtail_slice(z: f64) -> PolyCurve {
    PolyCurve {
        x: Poly(vec![0.0, 0.0, z, 0.0, 3.0]),
        y: Poly(vec![0.0, -2.0 * z, 0.0, -4.0]),
        lo: -SLICE_HALF_WIDTH,
        hi: SLICE_HALF_WIDTH,
    }
}

/// `t ↦ (4t⁵ + 2zt³ + yt², −5t⁴ − 2yt − 3zt²)`, the `(w, x)` slice of
/// `H = H_t = 0` with `(y, z)` fixed.
pub fn butterfly_slice(y: f64, z: f64) -> PolyCurve {
    PolyCurve {
        x: Poly(vec![0.0, 0.0, y, 2.0 * z, 0.0, 4.0]),
        y: Poly(vec![0.0, -2.0 * y, -3.0 * z, 0.0, -5.0]),
        lo: -SLICE_HALF_WIDTH,
        hi: SLICE_HALF_WIDTH,
    }
}
