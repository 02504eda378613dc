//! The λ-Funk metric and its building blocks.
//!
//! A boat of unit speed moves on the disk `‖x‖ < 1/λ` while a radial wind
//! `W(x) = −λx` pushes it toward the origin. The time needed to travel with
//! velocity `y` at position `x` is the Randers norm
//!
//! ```text
//! F(x, y) = ( sqrt(λ²⟨x,y⟩² + ‖y‖²(1 − λ²‖x‖²)) + λ⟨x,y⟩ ) / (1 − λ²‖x‖²)
//! ```
//!
//! which collapses to the Euclidean norm at `λ = 0` and to the classical Funk
//! metric of the unit disk at `λ = 1`. The metric is spherically symmetric,
//! `F = ‖y‖ φ(‖x‖, ⟨x,y⟩/‖y‖)`, and [`pde_residual`] evaluates the
//! projective-flatness identity `r φ_ss − φ_r + s φ_rs = 0` on that profile.

use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{FunkError, Result};

/// A position in the plane.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point {
    pub x1: f64,
    pub x2: f64,
}

/// A tangent direction (velocity) at some position.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vector {
    pub y1: f64,
    pub y2: f64,
}

pub const ORIGIN: Point = Point { x1: 0.0, x2: 0.0 };

impl Point {
    pub const fn new(x1: f64, x2: f64) -> Self {
        Self { x1, x2 }
    }

    pub fn norm(self) -> f64 {
        self.x1.hypot(self.x2)
    }

    /// Position vector of the point.
    pub fn to_vector(self) -> Vector {
        Vector::new(self.x1, self.x2)
    }

    pub fn dot(self, v: Vector) -> f64 {
        self.x1 * v.y1 + self.x2 * v.y2
    }

    pub fn scale(self, factor: f64) -> Point {
        Point::new(self.x1 * factor, self.x2 * factor)
    }

    /// Counter-clockwise rotation by `theta` about the origin.
    pub fn rotate(self, theta: f64) -> Point {
        let (sin, cos) = theta.sin_cos();
        Point::new(cos * self.x1 - sin * self.x2, sin * self.x1 + cos * self.x2)
    }

    pub fn distance_to(self, other: Point) -> f64 {
        (other - self).norm()
    }

    pub fn is_finite(self) -> bool {
        self.x1.is_finite() && self.x2.is_finite()
    }
}

impl Vector {
    pub const fn new(y1: f64, y2: f64) -> Self {
        Self { y1, y2 }
    }

    pub fn norm(self) -> f64 {
        self.y1.hypot(self.y2)
    }

    pub fn norm_squared(self) -> f64 {
        self.y1 * self.y1 + self.y2 * self.y2
    }

    pub fn dot(self, other: Vector) -> f64 {
        self.y1 * other.y1 + self.y2 * other.y2
    }

    pub fn is_zero(self) -> bool {
        self.y1 == 0.0 && self.y2 == 0.0
    }

    pub fn rotate(self, theta: f64) -> Vector {
        let (sin, cos) = theta.sin_cos();
        Vector::new(cos * self.y1 - sin * self.y2, sin * self.y1 + cos * self.y2)
    }
}

impl Sub for Point {
    type Output = Vector;
    fn sub(self, rhs: Point) -> Vector {
        Vector::new(self.x1 - rhs.x1, self.x2 - rhs.x2)
    }
}

impl Add<Vector> for Point {
    type Output = Point;
    fn add(self, rhs: Vector) -> Point {
        Point::new(self.x1 + rhs.y1, self.x2 + rhs.y2)
    }
}

impl Sub<Vector> for Vector {
    type Output = Vector;
    fn sub(self, rhs: Vector) -> Vector {
        Vector::new(self.y1 - rhs.y1, self.y2 - rhs.y2)
    }
}

impl Add for Vector {
    type Output = Vector;
    fn add(self, rhs: Vector) -> Vector {
        Vector::new(self.y1 + rhs.y1, self.y2 + rhs.y2)
    }
}

impl Mul<f64> for Vector {
    type Output = Vector;
    fn mul(self, rhs: f64) -> Vector {
        Vector::new(self.y1 * rhs, self.y2 * rhs)
    }
}

impl Neg for Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        Vector::new(-self.y1, -self.y2)
    }
}

/// Numerical knobs shared by every operation that takes a [`MetricContext`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Points must satisfy `‖x‖ ≤ (1 − domain_margin) / λ`.
    pub domain_margin: f64,
    /// Slack allowed in `|s| ≤ r` for [`PhiArgs`].
    pub cauchy_schwarz_slack: f64,
    /// `‖q − p‖ ≤ coincidence · max(1, ‖p‖, ‖q‖)` counts as the same point.
    pub coincidence: f64,
    /// Relative finite-difference step used by [`hessian_gram`].
    pub hessian_step: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            domain_margin: 1e-12,
            cauchy_schwarz_slack: 1e-12,
            coincidence: 1e-15,
            hessian_step: 1e-3,
        }
    }
}

/// Wind strength λ together with the domain it induces.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricContext {
    lambda: f64,
    tolerances: Tolerances,
}

impl MetricContext {
    pub fn new(lambda: f64) -> Result<Self> {
        if !lambda.is_finite() || lambda < 0.0 {
            return Err(FunkError::InvalidLambda(lambda));
        }
        Ok(Self {
            lambda,
            tolerances: Tolerances::default(),
        })
    }

    pub fn with_tolerances(mut self, tolerances: Tolerances) -> Self {
        self.tolerances = tolerances;
        self
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn tolerances(&self) -> &Tolerances {
        &self.tolerances
    }

    /// `1/λ`, or `+∞` when there is no wind.
    pub fn domain_radius(&self) -> f64 {
        if self.lambda > 0.0 {
            1.0 / self.lambda
        } else {
            f64::INFINITY
        }
    }

    /// Largest admissible norm for a point of the domain.
    pub fn admissible_radius(&self) -> f64 {
        (1.0 - self.tolerances.domain_margin) * self.domain_radius()
    }

    pub fn contains(&self, p: Point) -> bool {
        p.is_finite() && p.norm() <= self.admissible_radius()
    }

    pub fn check_point(&self, p: Point) -> Result<()> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(FunkError::Domain {
                point: p,
                norm: p.norm(),
                radius: self.domain_radius(),
            })
        }
    }

    /// The wind vector `−λx`.
    pub fn wind_at(&self, x: Point) -> Vector {
        Vector::new(-self.lambda * x.x1, -self.lambda * x.x2)
    }

    /// `1 − λ²ρ²`, factored so that it stays accurate next to the boundary.
    pub(crate) fn gap(&self, rho: f64) -> f64 {
        let lr = self.lambda * rho;
        (1.0 - lr) * (1.0 + lr)
    }
}

/// Metric evaluation without the domain check; callers guarantee `x ∈ Ω_λ`.
pub(crate) fn funk_unchecked(ctx: &MetricContext, x: Point, y: Vector) -> f64 {
    let lambda = ctx.lambda;
    let gap = ctx.gap(x.norm());
    let ny = y.norm();
    if ny == 0.0 {
        return 0.0;
    }
    let lxy = lambda * x.dot(y);
    let root = lxy.hypot(ny * gap.sqrt());
    if lxy >= 0.0 {
        (root + lxy) / gap
    } else {
        // (root + lxy)(root − lxy) = ‖y‖² gap
        ny * ny / (root - lxy)
    }
}

/// Travel-time norm `F(x, y)` of the velocity `y` at position `x`.
pub fn lambda_funk_eval(ctx: &MetricContext, x: Point, y: Vector) -> Result<f64> {
    ctx.check_point(x)?;
    Ok(funk_unchecked(ctx, x, y))
}

/// Positive root of `(1 − ‖w‖²)F² + 2⟨w,y⟩F − ‖y‖² = 0`, i.e. the unique
/// `F > 0` with `‖y/F − w‖ = 1`.
pub fn zermelo_metric_from_wind(w: Vector, y: Vector) -> Result<f64> {
    let wn = w.norm();
    if wn.is_nan() || wn >= 1.0 {
        return Err(FunkError::WindTooStrong(wn));
    }
    if y.is_zero() {
        return Err(FunkError::ZeroVector);
    }
    let gap = (1.0 - wn) * (1.0 + wn);
    let ny = y.norm();
    let wy = w.dot(y);
    let root = wy.hypot(ny * gap.sqrt());
    if wy <= 0.0 {
        Ok((root - wy) / gap)
    } else {
        Ok(ny * ny / (root + wy))
    }
}

/// Arguments of the spherically symmetric profile: `r = ‖x‖`, `s = ⟨x,y⟩/‖y‖`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhiArgs {
    pub r: f64,
    pub s: f64,
}

impl PhiArgs {
    pub fn new(r: f64, s: f64) -> Self {
        Self { r, s }
    }

    pub fn from_position(x: Point, y: Vector) -> Result<Self> {
        if y.is_zero() {
            return Err(FunkError::ZeroVector);
        }
        Ok(Self {
            r: x.norm(),
            s: x.dot(y) / y.norm(),
        })
    }

    fn validate(&self, ctx: &MetricContext) -> Result<()> {
        let slack = ctx.tolerances.cauchy_schwarz_slack * self.r.max(1.0);
        let ok = self.r.is_finite()
            && self.s.is_finite()
            && self.r >= 0.0
            && self.r <= ctx.admissible_radius()
            && self.s.abs() <= self.r + slack;
        if ok {
            Ok(())
        } else {
            Err(FunkError::InvalidPhiArgs {
                r: self.r,
                s: self.s,
                radius: ctx.domain_radius(),
            })
        }
    }
}

/// `1 + λ²(s² − r²)`, written as `(1 − λ²r²) + (λs)²` to avoid cancellation.
fn radicand(ctx: &MetricContext, args: PhiArgs) -> f64 {
    let ls = ctx.lambda * args.s;
    ctx.gap(args.r) + ls * ls
}

/// The profile `φ(r, s)` with `F(x, y) = ‖y‖ φ(‖x‖, ⟨x,y⟩/‖y‖)`.
pub fn phi(ctx: &MetricContext, args: PhiArgs) -> Result<f64> {
    args.validate(ctx)?;
    let root = radicand(ctx, args).sqrt();
    let ls = ctx.lambda * args.s;
    if ls >= 0.0 {
        Ok((root + ls) / ctx.gap(args.r))
    } else {
        Ok(1.0 / (root - ls))
    }
}

/// First and second partial derivatives of `φ` used by the flatness test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhiPartials {
    pub phi_r: f64,
    pub phi_s: f64,
    pub phi_rs: f64,
    pub phi_ss: f64,
}

/// Closed-form partials of `φ`. All four vanish at `λ = 0`, and `φ_r`,
/// `φ_rs` vanish at `r = 0`.
pub fn phi_partials(ctx: &MetricContext, args: PhiArgs) -> Result<PhiPartials> {
    args.validate(ctx)?;
    let PhiArgs { r, s } = args;
    let l = ctx.lambda;
    let l2 = l * l;
    let gap = ctx.gap(r);
    let gap2 = gap * gap;
    let x = radicand(ctx, args);
    let sqrt_x = x.sqrt();
    let x32 = x * sqrt_x;

    let phi_r = l2 * r * (1.0 + l2 * (2.0 * s * s - r * r)) / (gap2 * sqrt_x)
        + 2.0 * l2 * l * s * r / gap2;
    let phi_s = l2 * s / (gap * sqrt_x) + l / gap;
    let phi_rs = l2 * l2 * r * s * (3.0 + l2 * (2.0 * s * s - 3.0 * r * r)) / (gap2 * x32)
        + 2.0 * l2 * l * r / gap2;
    let phi_ss = l2 / x32;

    Ok(PhiPartials {
        phi_r,
        phi_s,
        phi_rs,
        phi_ss,
    })
}

/// `r φ_ss − φ_r + s φ_rs`; zero exactly when the metric is projectively flat.
pub fn pde_residual(ctx: &MetricContext, args: PhiArgs) -> Result<f64> {
    let p = phi_partials(ctx, args)?;
    Ok(args.r * p.phi_ss - p.phi_r + args.s * p.phi_rs)
}

/// Symmetric 2×2 matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Gram2x2 {
    pub g11: f64,
    pub g12: f64,
    pub g22: f64,
}

impl Gram2x2 {
    pub fn determinant(&self) -> f64 {
        self.g11 * self.g22 - self.g12 * self.g12
    }

    pub fn trace(&self) -> f64 {
        self.g11 + self.g22
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> (f64, f64) {
        let mean = 0.5 * self.trace();
        let half_diff = 0.5 * (self.g11 - self.g22);
        let spread = half_diff.hypot(self.g12);
        (mean - spread, mean + spread)
    }

    /// Both leading principal minors positive.
    pub fn is_positive_definite(&self) -> bool {
        self.g11 > 0.0 && self.determinant() > 0.0
    }
}

/// Fundamental tensor `g_ij = ½ ∂²F²/∂y_i∂y_j` by central differences.
pub fn hessian_gram(ctx: &MetricContext, x: Point, y: Vector) -> Result<Gram2x2> {
    ctx.check_point(x)?;
    if y.is_zero() {
        return Err(FunkError::ZeroVector);
    }
    let h = ctx.tolerances.hessian_step * y.norm().max(1.0);
    let f2 = |d1: f64, d2: f64| {
        let f = funk_unchecked(ctx, x, Vector::new(y.y1 + d1, y.y2 + d2));
        f * f
    };
    let center = f2(0.0, 0.0);
    let g11 = (f2(h, 0.0) - 2.0 * center + f2(-h, 0.0)) / (2.0 * h * h);
    let g22 = (f2(0.0, h) - 2.0 * center + f2(0.0, -h)) / (2.0 * h * h);
    // The mixed stencil is invariant under swapping the axes, so g12 = g21.
    let g12 = (f2(h, h) - f2(h, -h) - f2(-h, h) + f2(-h, -h)) / (8.0 * h * h);
    Ok(Gram2x2 { g11, g12, g22 })
}
