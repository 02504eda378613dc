//! Seeded random configurations for property checks.

use rand::Rng;

use crate::metric::{MetricContext, Point, Vector};

/// Uniform point in the open disk of the given radius.
pub fn point_in_disk<R: Rng + ?Sized>(rng: &mut R, radius: f64) -> Point {
    let rho = radius * rng.gen::<f64>().sqrt();
    let angle = rng.gen_range(0.0..std::f64::consts::TAU);
    Point::new(rho * angle.cos(), rho * angle.sin())
}

/// Uniform point in the domain of `ctx`, at most `fill` of the way to its
/// boundary. For `λ = 0` the disk of radius `fill` is used instead.
pub fn point_in_domain<R: Rng + ?Sized>(rng: &mut R, ctx: &MetricContext, fill: f64) -> Point {
    let radius = if ctx.lambda() > 0.0 { fill * ctx.domain_radius() } else { fill };
    point_in_disk(rng, radius)
}

/// Non-zero vector with uniformly distributed direction and a length in
/// `[0.1, 10)`, log-uniform.
pub fn direction<R: Rng + ?Sized>(rng: &mut R) -> Vector {
    let angle = rng.gen_range(0.0..std::f64::consts::TAU);
    let len = 10f64.powf(rng.gen_range(-1.0..1.0));
    Vector::new(len * angle.cos(), len * angle.sin())
}
