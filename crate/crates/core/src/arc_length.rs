//! Numerical travel time along explicit paths.
//!
//! This module never calls the closed-form distance: it integrates the metric
//! along segments with a fixed quadrature rule, so it can serve as an
//! independent check of [`crate::distance`]. [`local_min_search`] perturbs
//! the interior vertices of a polyline to confirm that no nearby path beats
//! the straight chord.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{FunkError, Result};
use crate::metric::{funk_unchecked, MetricContext, Point, Vector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QuadratureRule {
    Midpoint,
    Simpson,
    /// Five-point Gauss–Legendre.
    Gauss5,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadratureSpec {
    pub panels: usize,
    pub rule: QuadratureRule,
}

impl QuadratureSpec {
    pub fn new(panels: usize, rule: QuadratureRule) -> Result<Self> {
        if panels == 0 {
            return Err(FunkError::InvalidArgument("quadrature needs at least one panel".into()));
        }
        Ok(Self { panels, rule })
    }
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            panels: 64,
            rule: QuadratureRule::Gauss5,
        }
    }
}

// Nodes on [0, 1] and weights summing to 1.
const GAUSS5: [(f64, f64); 5] = {
    const A: f64 = 0.538_469_310_105_683_1;
    const B: f64 = 0.906_179_845_938_664;
    const WA: f64 = 0.478_628_670_499_366_5;
    const WB: f64 = 0.236_926_885_056_189_08;
    const W0: f64 = 0.568_888_888_888_888_9;
    [
        (0.5 * (1.0 - B), 0.5 * WB),
        (0.5 * (1.0 - A), 0.5 * WA),
        (0.5, 0.5 * W0),
        (0.5 * (1.0 + A), 0.5 * WA),
        (0.5 * (1.0 + B), 0.5 * WB),
    ]
};
const MIDPOINT: [(f64, f64); 1] = [(0.5, 1.0)];
const SIMPSON: [(f64, f64); 3] = [(0.0, 1.0 / 6.0), (0.5, 4.0 / 6.0), (1.0, 1.0 / 6.0)];

impl QuadratureRule {
    fn nodes(self) -> &'static [(f64, f64)] {
        match self {
            QuadratureRule::Midpoint => &MIDPOINT,
            QuadratureRule::Simpson => &SIMPSON,
            QuadratureRule::Gauss5 => &GAUSS5,
        }
    }
}

/// Endpoints already validated; the chord of a disk stays inside it.
fn segment_time_unchecked(ctx: &MetricContext, p: Point, q: Point, quad: QuadratureSpec) -> f64 {
    let velocity: Vector = q - p;
    if velocity.is_zero() {
        return 0.0;
    }
    let width = 1.0 / quad.panels as f64;
    let nodes = quad.rule.nodes();
    let mut total = 0.0;
    for panel in 0..quad.panels {
        let start = panel as f64 * width;
        let mut panel_sum = 0.0;
        for &(node, weight) in nodes {
            let t = start + node * width;
            panel_sum += weight * funk_unchecked(ctx, p + velocity * t, velocity);
        }
        total += panel_sum * width;
    }
    total
}

/// `∫₀¹ F(p + t(q − p), q − p) dt`.
pub fn segment_time(ctx: &MetricContext, p: Point, q: Point, quad: QuadratureSpec) -> Result<f64> {
    ctx.check_point(p)?;
    ctx.check_point(q)?;
    Ok(segment_time_unchecked(ctx, p, q, quad))
}

/// A piecewise-linear path.
#[derive(Debug, Clone, PartialEq)]
pub struct Polyline {
    vertices: Vec<Point>,
}

impl Polyline {
    /// At least two vertices; consecutive vertices may coincide only when the
    /// whole path is a single point.
    pub fn new(vertices: Vec<Point>) -> Result<Self> {
        if vertices.len() < 2 {
            return Err(FunkError::InvalidArgument("a polyline needs at least two vertices".into()));
        }
        if vertices.iter().any(|v| !v.is_finite()) {
            return Err(FunkError::InvalidArgument("polyline vertices must be finite".into()));
        }
        let all_same = vertices.iter().all(|v| *v == vertices[0]);
        if !all_same && vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(FunkError::InvalidArgument("repeated consecutive vertex".into()));
        }
        Ok(Self { vertices })
    }

    /// `interior + 2` equally spaced vertices on the segment from `p` to `q`.
    pub fn straight(p: Point, q: Point, interior: usize) -> Result<Self> {
        let n = interior + 1;
        let u = q - p;
        let vertices = (0..=n)
            .map(|i| if i == n { q } else { p + u * (i as f64 / n as f64) })
            .collect();
        Self::new(vertices)
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn first(&self) -> Point {
        self.vertices[0]
    }

    pub fn last(&self) -> Point {
        self.vertices[self.vertices.len() - 1]
    }
}

/// Sum of [`segment_time`] over consecutive vertices.
pub fn polyline_time(ctx: &MetricContext, path: &Polyline, quad: QuadratureSpec) -> Result<f64> {
    for &v in &path.vertices {
        ctx.check_point(v)?;
    }
    Ok(path
        .vertices
        .windows(2)
        .map(|w| segment_time_unchecked(ctx, w[0], w[1], quad))
        .sum())
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchOutcome {
    pub best_time: f64,
    pub best_path: Polyline,
}

/// Largest number of movable vertices accepted by [`local_min_search`].
pub const MAX_INTERIOR_POINTS: usize = 16;

/// Final perturbation radius relative to the initial one.
const SHRINK_TO: f64 = 1e-6;

/// Randomized coordinate descent over the interior vertices of a polyline
/// from `p` to `q`.
///
/// Starts from the straight segment. Each trial moves one interior vertex by a
/// uniform offset in a disk whose radius decays geometrically from
/// `0.1 ‖q − p‖`; moves that leave the domain are pulled back radially to
/// `(1 − 1e-9)/λ`, and a move is kept only if it lowers the total time.
/// Deterministic for a given `seed`.
pub fn local_min_search(
    ctx: &MetricContext,
    p: Point,
    q: Point,
    interior_points: usize,
    trials: usize,
    seed: u64,
) -> Result<SearchOutcome> {
    ctx.check_point(p)?;
    ctx.check_point(q)?;
    if interior_points == 0 || interior_points > MAX_INTERIOR_POINTS {
        return Err(FunkError::InvalidArgument(format!(
            "interior_points must be in 1..={MAX_INTERIOR_POINTS}, got {interior_points}"
        )));
    }
    if trials == 0 {
        return Err(FunkError::InvalidArgument("trials must be positive".into()));
    }

    let quad = QuadratureSpec::default();
    let mut vertices = Polyline::straight(p, q, interior_points)?.vertices;
    let mut segment_times: Vec<f64> = vertices
        .windows(2)
        .map(|w| segment_time_unchecked(ctx, w[0], w[1], quad))
        .collect();
    let mut best_time: f64 = segment_times.iter().sum();

    let span = p.distance_to(q);
    let initial_radius = 0.1 * span;
    let decay = SHRINK_TO.powf(1.0 / trials as f64);
    let clamp_radius = (1.0 - 1e-9) * ctx.domain_radius();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut radius = initial_radius;

    for _ in 0..trials {
        let index = rng.gen_range(1..=interior_points);
        let angle = rng.gen_range(0.0..std::f64::consts::TAU);
        let reach = radius * rng.gen::<f64>().sqrt();
        radius *= decay;
        if reach == 0.0 {
            continue;
        }

        let mut candidate = vertices[index] + Vector::new(angle.cos(), angle.sin()) * reach;
        let norm = candidate.norm();
        if norm > clamp_radius {
            candidate = candidate.scale(clamp_radius / norm);
        }
        if candidate == vertices[index - 1] || candidate == vertices[index + 1] {
            continue;
        }

        let before = segment_time_unchecked(ctx, vertices[index - 1], candidate, quad);
        let after = segment_time_unchecked(ctx, candidate, vertices[index + 1], quad);
        let total = best_time - segment_times[index - 1] - segment_times[index] + before + after;
        if total < best_time {
            vertices[index] = candidate;
            segment_times[index - 1] = before;
            segment_times[index] = after;
            // Re-sum to keep drift from the running update out of the result.
            best_time = segment_times.iter().sum();
        }
    }

    Ok(SearchOutcome {
        best_time,
        best_path: Polyline { vertices },
    })
}

/// Euclidean distance from `x` to the segment `[p, q]`.
pub fn distance_to_segment(x: Point, p: Point, q: Point) -> f64 {
    let u = q - p;
    let uu = u.norm_squared();
    if uu == 0.0 {
        return x.distance_to(p);
    }
    let t = ((x - p).dot(u) / uu).clamp(0.0, 1.0);
    x.distance_to(p + u * t)
}
