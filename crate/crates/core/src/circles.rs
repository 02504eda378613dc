//! Funk circumferences.
//!
//! Because `d(p, x) = ρ` is equivalent to `‖p/r − x‖ = (r − 1)/(λr)` with
//! `r = exp(λρ)`, both kinds of travel-time circle are Euclidean circles:
//!
//! * outgoing, `{x : d(p, x) = ρ}`: centre `p/r`, radius `(r − 1)/(λr)`,
//!   always strictly inside the domain;
//! * incoming, `{x : d(x, p) = ρ}`: the part inside the domain of the circle
//!   with centre `r·p` and radius `(r − 1)/λ`.

use crate::error::{FunkError, Result};
use crate::metric::{MetricContext, Point};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EuclideanCircle {
    pub center: Point,
    pub radius: f64,
    /// Only the arc inside the domain belongs to the locus.
    pub clipped: bool,
}

fn check_inputs(ctx: &MetricContext, center: Point, rho: f64) -> Result<()> {
    ctx.check_point(center)?;
    if !rho.is_finite() || rho < 0.0 {
        return Err(FunkError::InvalidArgument(format!("radius must be a finite non-negative time, got {rho}")));
    }
    Ok(())
}

/// Points reachable from `center` in exactly `rho` time units.
///
/// Without wind this is the ordinary circle of radius `rho`.
pub fn circle_type1(ctx: &MetricContext, center: Point, rho: f64) -> Result<EuclideanCircle> {
    check_inputs(ctx, center, rho)?;
    let lambda = ctx.lambda();
    if lambda == 0.0 {
        return Ok(EuclideanCircle { center, radius: rho, clipped: false });
    }
    let excess = (lambda * rho).exp_m1();
    let r = 1.0 + excess;
    Ok(EuclideanCircle {
        center: center.scale(1.0 / r),
        radius: excess / (lambda * r),
        clipped: false,
    })
}

/// Points from which `center` is reached in exactly `rho` time units.
///
/// Without wind this is the ordinary circle of radius `rho`.
pub fn circle_type2(ctx: &MetricContext, center: Point, rho: f64) -> Result<EuclideanCircle> {
    check_inputs(ctx, center, rho)?;
    let lambda = ctx.lambda();
    if lambda == 0.0 {
        return Ok(EuclideanCircle { center, radius: rho, clipped: false });
    }
    let excess = (lambda * rho).exp_m1();
    let r = 1.0 + excess;
    let euclid_center = center.scale(r);
    let radius = excess / lambda;
    let clipped = euclid_center.norm() + radius > ctx.admissible_radius();
    Ok(EuclideanCircle {
        center: euclid_center,
        radius,
        clipped,
    })
}

/// `n` points at angles `2πi/n`, in increasing-angle order. With
/// `in_domain_only`, points outside the admissible disk are dropped.
pub fn sample_circle(ctx: &MetricContext, circle: &EuclideanCircle, n: usize, in_domain_only: bool) -> Vec<Point> {
    (0..n)
        .map(|i| {
            let angle = std::f64::consts::TAU * i as f64 / n as f64;
            let (sin, cos) = angle.sin_cos();
            Point::new(
                circle.center.x1 + circle.radius * cos,
                circle.center.x2 + circle.radius * sin,
            )
        })
        .filter(|p| !in_domain_only || ctx.contains(*p))
        .collect()
}
