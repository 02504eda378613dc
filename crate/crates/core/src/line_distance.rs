//! Travel time between a point and a line, in both directions.
//!
//! The wind is rotationally symmetric, so every line can be rotated onto a
//! horizontal line `y' = h`. There the minimizing point is where the
//! travel-time circle around the given point first touches the line, and the
//! tangency condition is a quadratic in `r = exp(λ d)` whose root above 1 is
//!
//! ```text
//! line → point (a', b'):  r = (1 − λ² h b' + λ|h − b'|) / (1 − λ² b'²),  touch at (r a', h)
//! point → line (a', b'):  r = (1 − λ² h b' + λ|h − b'|) / (1 − λ² h²),   touch at (a'/r, h)
//! ```
//!
//! with `(a', b')` the rotated coordinates of the point. The touching point is
//! rotated back to give the realizer.

use std::f64::consts::FRAC_PI_2;

use crate::error::{FunkError, Result};
use crate::metric::{MetricContext, Point};

/// A line in angle–offset form.
///
/// For `theta ∈ (−π/2, π/2)` the line is `y = tan(theta)·x + offset`; for
/// `theta = π/2` it is the vertical line `x = offset`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Line {
    theta: f64,
    offset: f64,
}

impl Line {
    /// `y = m x + c`.
    pub fn from_slope(m: f64, c: f64) -> Result<Self> {
        if !m.is_finite() || !c.is_finite() {
            return Err(FunkError::InvalidArgument(format!("slope and intercept must be finite, got ({m}, {c})")));
        }
        Ok(Self { theta: m.atan(), offset: c })
    }

    /// Inclination `theta ∈ (−π/2, π/2]` and offset as described on [`Line`].
    pub fn from_angle(theta: f64, offset: f64) -> Result<Self> {
        if !(theta > -FRAC_PI_2 && theta <= FRAC_PI_2) || !offset.is_finite() {
            return Err(FunkError::InvalidArgument(format!(
                "need theta in (-pi/2, pi/2] and a finite offset, got ({theta}, {offset})"
            )));
        }
        Ok(Self { theta, offset })
    }

    pub fn vertical(x: f64) -> Result<Self> {
        Self::from_angle(FRAC_PI_2, x)
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn is_vertical(&self) -> bool {
        self.theta == FRAC_PI_2
    }

    /// `(cos θ, sin θ, h)`: rotating the plane by `−θ` maps the line onto `y' = h`.
    fn frame(&self) -> (f64, f64, f64) {
        if self.is_vertical() {
            (0.0, 1.0, -self.offset)
        } else {
            let (sin, cos) = self.theta.sin_cos();
            (cos, sin, self.offset * cos)
        }
    }

    /// Signed distance `h` of the line from the origin, measured along the
    /// normal `(−sin θ, cos θ)`.
    pub fn normal_offset(&self) -> f64 {
        self.frame().2
    }

    pub fn direction(&self) -> (f64, f64) {
        let (cos, sin, _) = self.frame();
        (cos, sin)
    }

    /// Point at arc-length parameter `t` from the foot of the perpendicular
    /// dropped from the origin.
    pub fn point_at(&self, t: f64) -> Point {
        let (cos, sin, h) = self.frame();
        unrotate(cos, sin, t, h)
    }

    /// Signed Euclidean distance of `p` from the line.
    pub fn signed_distance(&self, p: Point) -> f64 {
        let (cos, sin, h) = self.frame();
        (p.x2 * cos - p.x1 * sin) - h
    }

    /// Parameter range of the part of the line inside the admissible disk,
    /// or `None` when the line misses it.
    pub fn chord(&self, ctx: &MetricContext) -> Option<(f64, f64)> {
        let limit = ctx.admissible_radius();
        let h = self.normal_offset();
        if h.abs() >= limit {
            return None;
        }
        let half = ((limit - h) * (limit + h)).sqrt();
        Some((-half, half))
    }

    fn check_meets(&self, ctx: &MetricContext) -> Result<()> {
        let h = self.normal_offset().abs();
        if h < ctx.admissible_radius() {
            Ok(())
        } else {
            Err(FunkError::LineOutsideDomain {
                distance: h,
                radius: ctx.domain_radius(),
            })
        }
    }
}

fn unrotate(cos: f64, sin: f64, x: f64, y: f64) -> Point {
    Point::new(x * cos - y * sin, x * sin + y * cos)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineDistanceResult {
    pub travel_time: f64,
    /// `exp(λ · travel_time)`.
    pub exponent_r: f64,
    /// The point of the line where the minimum is attained.
    pub realizer: Point,
}

struct Reduced {
    lambda: f64,
    cos: f64,
    sin: f64,
    h: f64,
    a: f64,
    b: f64,
}

fn reduce(ctx: &MetricContext, line: &Line, point: Point) -> Result<Reduced> {
    let lambda = ctx.lambda();
    if lambda == 0.0 {
        return Err(FunkError::NotApplicable("line distances need lambda > 0"));
    }
    ctx.check_point(point)?;
    line.check_meets(ctx)?;
    let (cos, sin, h) = line.frame();
    Ok(Reduced {
        lambda,
        cos,
        sin,
        h,
        a: point.x1 * cos + point.x2 * sin,
        b: point.x2 * cos - point.x1 * sin,
    })
}

/// Shortest travel time from some point of `line` to `q`.
///
/// Fails with [`FunkError::RealizerOutsideDomain`] when the tangency point
/// lies outside the domain, in which case the infimum is not attained.
pub fn dist_line_to_point(ctx: &MetricContext, line: &Line, q: Point) -> Result<LineDistanceResult> {
    let Reduced { lambda, cos, sin, h, a, b } = reduce(ctx, line, q)?;
    let delta = h - b;
    // r − 1, from the printed quotient with the 1 subtracted symbolically.
    let excess = (lambda * delta.abs() - lambda * lambda * b * delta) / ((1.0 - lambda * b) * (1.0 + lambda * b));
    let r = 1.0 + excess;
    let realizer = unrotate(cos, sin, r * a, h);
    if !ctx.contains(realizer) {
        return Err(FunkError::RealizerOutsideDomain { realizer });
    }
    Ok(LineDistanceResult {
        travel_time: excess.ln_1p() / lambda,
        exponent_r: r,
        realizer,
    })
}

/// Shortest travel time from `p` to some point of `line`.
pub fn dist_point_to_line(ctx: &MetricContext, p: Point, line: &Line) -> Result<LineDistanceResult> {
    let Reduced { lambda, cos, sin, h, a, b } = reduce(ctx, line, p)?;
    let delta = h - b;
    let excess = (lambda * delta.abs() + lambda * lambda * h * delta) / ((1.0 - lambda * h) * (1.0 + lambda * h));
    let r = 1.0 + excess;
    // The outgoing circle lies inside the domain, so the touching point does too.
    let realizer = unrotate(cos, sin, a / r, h);
    Ok(LineDistanceResult {
        travel_time: excess.ln_1p() / lambda,
        exponent_r: r,
        realizer,
    })
}
