//! Independent oracles shared by the integration suites. None of these call
//! the closed forms they are used to check.
#![allow(dead_code)]

use lfunk_core::{distance, Line, MetricContext, Point};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn ctx(lambda: f64) -> MetricContext {
    MetricContext::new(lambda).unwrap()
}

/// Travel time of the classical Funk metric on the unit disk, evaluated
/// literally from its closed form.
pub fn unit_funk_distance(p: Point, q: Point) -> f64 {
    if p == q {
        return 0.0;
    }
    let (ux, uy) = (q.x1 - p.x1, q.x2 - p.x2);
    let pu = p.x1 * ux + p.x2 * uy;
    let qu = q.x1 * ux + q.x2 * uy;
    let uu = ux * ux + uy * uy;
    let pp = p.x1 * p.x1 + p.x2 * p.x2;
    let root = (pu * pu + (1.0 - pp) * uu).sqrt();
    ((root - pu) / (root - qu)).ln()
}

/// The radial profile written out directly, without any of the library's
/// cancellation-avoiding rearrangements.
pub fn raw_phi(lambda: f64, r: f64, s: f64) -> f64 {
    let l2 = lambda * lambda;
    let den = 1.0 - l2 * r * r;
    (1.0 + l2 * (s * s - r * r)).sqrt() / den + lambda * s / den
}

pub struct FdPartials {
    pub phi_r: f64,
    pub phi_s: f64,
    pub phi_rs: f64,
    pub phi_ss: f64,
}

/// Central differences of [`raw_phi`]. First derivatives use `h1`, second
/// derivatives `h2`.
pub fn fd_partials(lambda: f64, r: f64, s: f64, h1: f64, h2: f64) -> FdPartials {
    let f = |r: f64, s: f64| raw_phi(lambda, r, s);
    FdPartials {
        phi_r: (f(r + h1, s) - f(r - h1, s)) / (2.0 * h1),
        phi_s: (f(r, s + h1) - f(r, s - h1)) / (2.0 * h1),
        phi_ss: (f(r, s + h2) - 2.0 * f(r, s) + f(r, s - h2)) / (h2 * h2),
        phi_rs: (f(r + h2, s + h2) - f(r + h2, s - h2) - f(r - h2, s + h2) + f(r - h2, s - h2)) / (4.0 * h2 * h2),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    LineToPoint,
    PointToLine,
}

/// Minimum of the point-to-point travel time over the chord of `line`,
/// by dense sampling followed by golden-section refinement.
pub fn brute_force_line(ctx: &MetricContext, line: &Line, point: Point, dir: Direction, samples: usize) -> (f64, Point) {
    let (lo, hi) = line.chord(ctx).expect("line meets the domain");
    let (lo, hi) = (lo * (1.0 - 1e-9), hi * (1.0 - 1e-9));
    let time = |t: f64| {
        let x = line.point_at(t);
        match dir {
            Direction::LineToPoint => distance(ctx, x, point),
            Direction::PointToLine => distance(ctx, point, x),
        }
        .unwrap()
        .travel_time
    };
    let step = (hi - lo) / samples as f64;
    let (mut best_i, mut best) = (0, f64::INFINITY);
    for i in 0..=samples {
        let v = time(lo + i as f64 * step);
        if v < best {
            best = v;
            best_i = i;
        }
    }
    let mut a = lo + best_i.saturating_sub(1) as f64 * step;
    let mut b = (lo + (best_i + 1) as f64 * step).min(hi);
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (time(c), time(d));
    for _ in 0..80 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = time(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = time(d);
        }
    }
    let t = 0.5 * (a + b);
    let v = time(t).min(best);
    (v, line.point_at(t))
}

/// Random line meeting the domain, at most `fill` of the radius from the origin.
pub fn random_line<R: Rng>(rng: &mut R, ctx: &MetricContext, fill: f64) -> Line {
    let theta = rng.gen_range(-1.5..1.5f64);
    let h = rng.gen_range(-fill..fill) * ctx.domain_radius();
    Line::from_slope(theta.tan(), h / theta.cos()).unwrap()
}
