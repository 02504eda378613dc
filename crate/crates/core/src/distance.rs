//! Point-to-point travel time.
//!
//! Shortest paths are straight segments, so the travel time from `p` to `q`
//! integrates the metric along the chord. With `u = q − p`,
//! `k = ‖u‖²(1 − λ²‖p‖²) + λ²⟨p,u⟩²` and
//! `t₂ = (√k − λ⟨p,u⟩) / (λ‖u‖²)` the larger root of the chord's
//! denominator, the result is
//!
//! ```text
//! d(p, q) = (1/λ) ln( t₂ / (t₂ − 1) ),    t₂ > 1.
//! ```
//!
//! [`distance`] evaluates this through `t₂ − 1` rationalized to avoid
//! cancellation; [`distance_quotient_form`] evaluates the expanded quotient
//! directly and is kept as a cross-check.

use crate::error::{FunkError, Result};
use crate::metric::{MetricContext, Point};

/// Travel time between two points, plus the intermediates of its derivation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistanceResult {
    pub travel_time: f64,
    /// `exp(λ · travel_time)`; reported as 1 when `λ = 0`.
    pub exponent_r: f64,
    /// `‖u‖²(1 − λ²‖p‖²) + λ²⟨p,u⟩²`; `None` when `λ = 0`.
    pub k: Option<f64>,
    /// Larger root of the chord denominator; `None` when `λ = 0` or `p = q`.
    pub t2: Option<f64>,
}

fn coincident(ctx: &MetricContext, p: Point, q: Point) -> bool {
    let scale = 1f64.max(p.norm()).max(q.norm());
    p.distance_to(q) <= ctx.tolerances().coincidence * scale
}

/// Travel time from `p` to `q`.
pub fn distance(ctx: &MetricContext, p: Point, q: Point) -> Result<DistanceResult> {
    ctx.check_point(p)?;
    ctx.check_point(q)?;
    let lambda = ctx.lambda();

    if lambda == 0.0 {
        return Ok(DistanceResult {
            travel_time: p.distance_to(q),
            exponent_r: 1.0,
            k: None,
            t2: None,
        });
    }
    if coincident(ctx, p, q) {
        return Ok(DistanceResult {
            travel_time: 0.0,
            exponent_r: 1.0,
            k: Some(0.0),
            t2: None,
        });
    }

    let u = q - p;
    let un = u.norm();
    let uu = un * un;
    let pu = p.dot(u);
    let qu = q.dot(u);
    let gap_p = ctx.gap(p.norm());
    let root_k = (lambda * pu).hypot(un * gap_p.sqrt());
    let k = root_k * root_k;

    // t₂ from the printed root, rationalized when λ⟨p,u⟩ > 0.
    let t2 = if pu <= 0.0 {
        (root_k - lambda * pu) / (lambda * uu)
    } else {
        gap_p / (lambda * (root_k + lambda * pu))
    };

    // 1/(t₂ − 1) = λ‖u‖² / (√k − λ⟨q,u⟩) = λ(√k + λ⟨q,u⟩) / (1 − λ²‖q‖²).
    let excess = if qu <= 0.0 {
        lambda * uu / (root_k - lambda * qu)
    } else {
        lambda * (root_k + lambda * qu) / ctx.gap(q.norm())
    };

    Ok(DistanceResult {
        travel_time: excess.ln_1p() / lambda,
        exponent_r: 1.0 + excess,
        k: Some(k),
        t2: Some(t2),
    })
}

/// The expanded closed form
/// `(1/λ) ln( (√k − λ⟨p,q−p⟩) / (√k − λ⟨q,q−p⟩) )`, evaluated literally.
///
/// Loses relative accuracy as `q → p`; [`distance`] is the production path.
pub fn distance_quotient_form(ctx: &MetricContext, p: Point, q: Point) -> Result<f64> {
    ctx.check_point(p)?;
    ctx.check_point(q)?;
    let lambda = ctx.lambda();
    if lambda == 0.0 {
        return Err(FunkError::NotApplicable("the quotient form needs lambda > 0"));
    }
    if coincident(ctx, p, q) {
        return Ok(0.0);
    }
    let u = q - p;
    let pu = p.dot(u);
    let qu = q.dot(u);
    let k = lambda * lambda * pu * pu + (1.0 - lambda * lambda * p.to_vector().norm_squared()) * u.norm_squared();
    let root_k = k.sqrt();
    Ok(((root_k - lambda * pu) / (root_k - lambda * qu)).ln() / lambda)
}

/// `exp(λ d)`, the scale factor relating travel time to Euclidean circles.
pub fn exponent_for_distance(ctx: &MetricContext, d: f64) -> Result<f64> {
    if ctx.lambda() == 0.0 {
        return Err(FunkError::NotApplicable("the exponent form needs lambda > 0"));
    }
    if d.is_nan() || d < 0.0 {
        return Err(FunkError::InvalidArgument(format!("travel time must be non-negative, got {d}")));
    }
    Ok((ctx.lambda() * d).exp())
}

/// `‖p/r − q‖ − (r − 1)/(λr)` with `r = exp(λ d(p, q))`.
///
/// `d(p, q) = (ln r)/λ` holds exactly when `q` lies on the Euclidean circle of
/// centre `p/r` and radius `(r − 1)/(λr)`, so this vanishes up to rounding.
pub fn exponent_circle_residual(ctx: &MetricContext, p: Point, q: Point) -> Result<f64> {
    if ctx.lambda() == 0.0 {
        return Err(FunkError::NotApplicable("the exponent form needs lambda > 0"));
    }
    let result = distance(ctx, p, q)?;
    let r = result.exponent_r;
    let lhs = p.scale(1.0 / r).distance_to(q);
    let rhs = (r - 1.0) / (ctx.lambda() * r);
    Ok(lhs - rhs)
}

/// `(d(p, q), d(Rp, Rq))` for the rotation `R` by `theta` about the origin.
pub fn rotation_witness(ctx: &MetricContext, p: Point, q: Point, theta: f64) -> Result<(f64, f64)> {
    let before = distance(ctx, p, q)?.travel_time;
    let after = distance(ctx, p.rotate(theta), q.rotate(theta))?.travel_time;
    Ok((before, after))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::ORIGIN;
    use approx::assert_relative_eq;
    use std::f64::consts::{LN_2, PI};

    fn ctx(lambda: f64) -> MetricContext {
        MetricContext::new(lambda).unwrap()
    }

    #[test]
    fn origin_outward_and_inward() {
        let c = ctx(1.0);
        let p = Point::new(0.5, 0.0);
        assert_relative_eq!(distance(&c, ORIGIN, p).unwrap().travel_time, LN_2, epsilon = 1e-15);
        assert_relative_eq!(distance(&c, p, ORIGIN).unwrap().travel_time, 1.5f64.ln(), epsilon = 1e-15);
    }

    #[test]
    fn same_point_is_zero() {
        for lambda in [0.0, 0.3, 1.0, 4.0] {
            let c = ctx(lambda);
            let p = Point::new(0.1, -0.05);
            let d = distance(&c, p, p).unwrap();
            assert_eq!(d.travel_time, 0.0);
            assert_eq!(d.exponent_r, 1.0);
        }
    }

    #[test]
    fn moderate_lambda_origin_formula() {
        let d = distance(&ctx(0.4), ORIGIN, Point::new(2.0, 0.0)).unwrap();
        assert_relative_eq!(d.travel_time, 2.5 * 5f64.ln(), epsilon = 1e-14);
        assert_relative_eq!(d.exponent_r, 5.0, epsilon = 1e-14);
    }

    #[test]
    fn windless_is_euclidean() {
        let d = distance(&ctx(0.0), ORIGIN, Point::new(3.0, 4.0)).unwrap();
        assert_eq!(d.travel_time, 5.0);
        assert_eq!(d.exponent_r, 1.0);
        assert_eq!((d.k, d.t2), (None, None));
    }

    #[test]
    fn intermediates_reported() {
        let d = distance(&ctx(0.7), Point::new(0.2, 0.3), Point::new(-0.5, 0.1)).unwrap();
        assert!(d.k.unwrap() > 0.0);
        let t2 = d.t2.unwrap();
        assert!(t2 > 1.0);
        assert_relative_eq!(d.exponent_r, t2 / (t2 - 1.0), max_relative = 1e-13);
        assert_relative_eq!(d.exponent_r, (0.7 * d.travel_time).exp(), max_relative = 1e-13);
    }

    #[test]
    fn domain_errors() {
        let c = ctx(1.0);
        assert!(matches!(distance(&c, ORIGIN, Point::new(1.5, 0.0)), Err(FunkError::Domain { .. })));
        assert!(matches!(distance(&c, Point::new(0.0, -1.0), ORIGIN), Err(FunkError::Domain { .. })));
    }

    #[test]
    fn exponent_examples() {
        assert_relative_eq!(exponent_for_distance(&ctx(1.0), LN_2).unwrap(), 2.0, epsilon = 1e-15);
        assert_eq!(exponent_for_distance(&ctx(0.5), 0.0).unwrap(), 1.0);
        assert!(matches!(exponent_for_distance(&ctx(0.0), 1.0), Err(FunkError::NotApplicable(_))));
        assert!(exponent_for_distance(&ctx(1.0), -1.0).is_err());
    }

    #[test]
    fn exponent_circle_examples() {
        assert!(exponent_circle_residual(&ctx(1.0), ORIGIN, Point::new(0.5, 0.0)).unwrap().abs() <= 1e-12);
        let r = exponent_circle_residual(&ctx(0.4), Point::new(1.0, 0.1), Point::new(-0.19, 0.81)).unwrap();
        assert!(r.abs() <= 1e-10);
    }

    #[test]
    fn rotation_examples() {
        let c = ctx(1.0);
        let p = Point::new(0.3, 0.0);
        let q = Point::new(0.1, 0.2);
        let (a, b) = rotation_witness(&c, p, q, PI / 3.0).unwrap();
        assert!((a - b).abs() <= 1e-12);
        let (a, b) = rotation_witness(&c, p, q, 0.0).unwrap();
        assert_eq!(a, b);
        let (a, b) = rotation_witness(&c, p, q, 2.0 * PI).unwrap();
        assert!((a - b).abs() <= 1e-12);
    }

    #[test]
    fn quotient_form_matches() {
        let c = ctx(1.3);
        let p = Point::new(0.2, -0.4);
        let q = Point::new(-0.3, 0.5);
        let a = distance(&c, p, q).unwrap().travel_time;
        let b = distance_quotient_form(&c, p, q).unwrap();
        assert_relative_eq!(a, b, max_relative = 1e-13);
    }

    #[test]
    fn tiny_separation_stays_accurate() {
        // d ≈ F(p, u) for a short hop
        let c = ctx(1.0);
        let p = Point::new(0.5, 0.0);
        let q = Point::new(0.5 + 1e-9, 0.0);
        let d = distance(&c, p, q).unwrap().travel_time;
        assert_relative_eq!(d, 2e-9, max_relative = 1e-8);
    }
}
