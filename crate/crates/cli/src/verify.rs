//! Verification suites run by `lfunk verify`.

use lfunk_core::arc_length::distance_to_segment;
use lfunk_core::sampling::point_in_domain;
use lfunk_core::{
    circle_type1, circle_type2, dist_line_to_point, dist_point_to_line, distance, exponent_circle_residual,
    local_min_search, pde_residual, sample_circle, segment_time, FunkError, Line, MetricContext, PhiArgs, Point,
    QuadratureSpec,
};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use crate::output::{num, point};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    All,
    Pde,
    Flatness,
    /// Exponent-circle round trip for the closed-form distance.
    Theorem51,
    Oracle,
    Circles,
}

impl Suite {
    pub const EACH: [Suite; 5] = [Suite::Pde, Suite::Flatness, Suite::Theorem51, Suite::Oracle, Suite::Circles];

    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Pde => "pde",
            Suite::Flatness => "flatness",
            Suite::Theorem51 => "theorem51",
            Suite::Oracle => "oracle",
            Suite::Circles => "circles",
        }
    }

    pub fn default_tolerance(self) -> f64 {
        match self {
            Suite::Pde | Suite::Theorem51 | Suite::Circles | Suite::All => 1e-10,
            Suite::Oracle => 1e-8,
            Suite::Flatness => 1e-4,
        }
    }

    fn default_trials(self) -> usize {
        match self {
            Suite::Pde | Suite::Circles => 20,
            Suite::Flatness => 10,
            Suite::Theorem51 => 1000,
            Suite::Oracle | Suite::All => 200,
        }
    }

    fn default_lambdas(self) -> &'static [f64] {
        match self {
            Suite::Pde => &[0.2, 0.5, 1.0, 2.5],
            Suite::Flatness => &[1.0],
            Suite::Theorem51 => &[0.3, 1.0, 2.0],
            Suite::Oracle => &[0.2, 1.0, 2.5],
            Suite::Circles | Suite::All => &[0.4, 1.0, 2.5],
        }
    }
}

pub struct Settings {
    pub trials: Option<usize>,
    pub seed: u64,
    pub tolerance: Option<f64>,
    pub lambdas: Option<Vec<f64>>,
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub suite: Suite,
    pub cases_run: usize,
    pub max_residual: f64,
    pub passed: bool,
    pub seed: u64,
    pub tolerance: f64,
    pub worst_case: Value,
}

impl VerifyReport {
    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.suite.name(),
            "cases_run": self.cases_run,
            "max_residual": num(self.max_residual),
            "passed": self.passed,
            "seed": self.seed,
            "tolerance": num(self.tolerance),
            "worst_case": self.worst_case,
        })
    }
}

/// Running maximum of residuals along with the inputs that produced it.
struct Tracker {
    cases: usize,
    worst: f64,
    worst_case: Value,
}

impl Tracker {
    fn new() -> Self {
        Tracker {
            cases: 0,
            worst: 0.0,
            worst_case: Value::Null,
        }
    }

    /// A NaN residual sticks as the worst case.
    fn record(&mut self, residual: f64, case: impl FnOnce() -> Value) {
        self.cases += 1;
        if self.worst.is_nan() {
            return;
        }
        let residual = residual.abs();
        if residual.is_nan() || residual > self.worst || self.worst_case.is_null() {
            self.worst = residual;
            self.worst_case = case();
        }
    }
}

fn case(lambda: f64, fields: &[(&str, Value)], residual: f64) -> Value {
    let mut map = Map::new();
    map.insert("lambda".into(), num(lambda));
    for (key, value) in fields {
        map.insert((*key).into(), value.clone());
    }
    map.insert("residual".into(), num(residual));
    Value::Object(map)
}

pub fn run(suite: Suite, settings: &Settings) -> Result<VerifyReport, FunkError> {
    let trials = settings.trials.unwrap_or(suite.default_trials());
    let lambdas = settings.lambdas.as_deref().unwrap_or(suite.default_lambdas());
    let tolerance = settings.tolerance.unwrap_or(suite.default_tolerance());
    let mut rng = ChaCha8Rng::seed_from_u64(settings.seed);
    let mut tracker = Tracker::new();

    for &lambda in lambdas {
        let ctx = MetricContext::new(lambda)?;
        if lambda == 0.0 && suite != Suite::Flatness && suite != Suite::Oracle {
            return Err(FunkError::NotApplicable("this suite needs lambda > 0"));
        }
        match suite {
            Suite::Pde => pde(&ctx, trials, &mut tracker)?,
            Suite::Theorem51 => exponent_circles(&ctx, trials, &mut rng, &mut tracker)?,
            Suite::Oracle => oracle(&ctx, trials, &mut rng, &mut tracker)?,
            Suite::Circles => circles(&ctx, trials, &mut rng, &mut tracker)?,
            Suite::Flatness => flatness(&ctx, trials, &mut rng, &mut tracker)?,
            Suite::All => unreachable!("expanded by the caller"),
        }
    }

    let max_residual = tracker.worst;
    Ok(VerifyReport {
        suite,
        cases_run: tracker.cases,
        max_residual,
        passed: max_residual <= tolerance,
        seed: settings.seed,
        tolerance,
        worst_case: tracker.worst_case,
    })
}

/// `n × n` grid with `r` up to `0.9/λ` and `s` spanning `[−r, r]`.
fn pde(ctx: &MetricContext, n: usize, tracker: &mut Tracker) -> Result<(), FunkError> {
    let lambda = ctx.lambda();
    for i in 1..=n {
        let r = 0.9 * i as f64 / (n as f64 * lambda);
        for j in 0..n {
            let s = if n == 1 { 0.0 } else { r * (-1.0 + 2.0 * j as f64 / (n - 1) as f64) };
            let residual = pde_residual(ctx, PhiArgs::new(r, s))?;
            tracker.record(residual, || case(lambda, &[("r", num(r)), ("s", num(s))], residual));
        }
    }
    Ok(())
}

fn exponent_circles(ctx: &MetricContext, trials: usize, rng: &mut ChaCha8Rng, tracker: &mut Tracker) -> Result<(), FunkError> {
    for _ in 0..trials {
        let p = point_in_domain(rng, ctx, 1.0);
        let q = point_in_domain(rng, ctx, 1.0);
        let residual = exponent_circle_residual(ctx, p, q)?;
        tracker.record(residual, || case(ctx.lambda(), &[("p", point(p)), ("q", point(q))], residual));
    }
    Ok(())
}

/// Closed forms against independent numerics: quadrature along the chord for
/// point distances, and a sampled search along the line for line distances.
fn oracle(ctx: &MetricContext, trials: usize, rng: &mut ChaCha8Rng, tracker: &mut Tracker) -> Result<(), FunkError> {
    let lambda = ctx.lambda();
    for _ in 0..trials {
        let p = point_in_domain(rng, ctx, 0.9);
        let q = point_in_domain(rng, ctx, 0.9);
        let closed = distance(ctx, p, q)?.travel_time;
        let numeric = segment_time(ctx, p, q, QuadratureSpec::default())?;
        let residual = closed - numeric;
        tracker.record(residual, || {
            case(lambda, &[("check", "segment".into()), ("p", point(p)), ("q", point(q))], residual)
        });

        if lambda == 0.0 {
            continue;
        }
        let line = random_line(rng, ctx);
        let x = point_in_domain(rng, ctx, 0.9);
        let fields = |check: &str| {
            vec![
                ("check", Value::from(check)),
                ("line", json!({"theta": num(line.theta()), "offset": num(line.offset())})),
                ("point", point(x)),
            ]
        };
        match dist_line_to_point(ctx, &line, x) {
            Ok(res) => {
                let searched = line_search(ctx, &line, |y| distance(ctx, y, x).map(|d| d.travel_time))?;
                let residual = res.travel_time - searched;
                tracker.record(residual, || case(lambda, &fields("line-to-point"), residual));
            }
            Err(FunkError::RealizerOutsideDomain { .. }) => {}
            Err(e) => return Err(e),
        }
        let res = dist_point_to_line(ctx, x, &line)?;
        let searched = line_search(ctx, &line, |y| distance(ctx, x, y).map(|d| d.travel_time))?;
        let residual = res.travel_time - searched;
        tracker.record(residual, || case(lambda, &fields("point-to-line"), residual));
    }
    Ok(())
}

fn random_line(rng: &mut ChaCha8Rng, ctx: &MetricContext) -> Line {
    let theta = rng.gen_range(-std::f64::consts::FRAC_PI_2..std::f64::consts::FRAC_PI_2);
    let offset = rng.gen_range(-0.9..0.9) * ctx.domain_radius();
    Line::from_angle(theta, offset).expect("angle in range")
}

/// Minimum of `time` over the chord of `line`: a coarse scan refined by
/// golden-section search around the best sample.
fn line_search(ctx: &MetricContext, line: &Line, time: impl Fn(Point) -> Result<f64, FunkError>) -> Result<f64, FunkError> {
    const SAMPLES: usize = 2000;
    let (lo, hi) = line.chord(ctx).ok_or(FunkError::NotApplicable("line misses the domain"))?;
    let (lo, hi) = (lo * (1.0 - 1e-9), hi * (1.0 - 1e-9));
    let at = |t: f64| time(line.point_at(t));
    let step = (hi - lo) / SAMPLES as f64;
    let (mut best_i, mut best) = (0, f64::INFINITY);
    for i in 0..=SAMPLES {
        let v = at(lo + i as f64 * step)?;
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
    let (mut fc, mut fd) = (at(c)?, at(d)?);
    for _ in 0..80 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = at(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = at(d)?;
        }
    }
    Ok(at(0.5 * (a + b))?.min(best))
}

/// Both circle kinds sampled at 32 angles; every in-domain sample must sit at
/// exactly the requested travel time from (or to) the centre.
fn circles(ctx: &MetricContext, trials: usize, rng: &mut ChaCha8Rng, tracker: &mut Tracker) -> Result<(), FunkError> {
    let lambda = ctx.lambda();
    for _ in 0..trials {
        let p = point_in_domain(rng, ctx, 0.95);
        let rho = rng.gen_range(0.0..2.0) / lambda;
        let outgoing = circle_type1(ctx, p, rho)?;
        for x in sample_circle(ctx, &outgoing, 32, false) {
            let residual = distance(ctx, p, x)?.travel_time - rho;
            tracker.record(residual, || {
                case(lambda, &[("type", 1.into()), ("center", point(p)), ("radius_time", num(rho)), ("sample", point(x))], residual)
            });
        }
        let rho = rng.gen_range(0.0..0.8) / lambda;
        let incoming = circle_type2(ctx, p, rho)?;
        for x in sample_circle(ctx, &incoming, 32, true) {
            let residual = distance(ctx, x, p)?.travel_time - rho;
            tracker.record(residual, || {
                case(lambda, &[("type", 2.into()), ("center", point(p)), ("radius_time", num(rho)), ("sample", point(x))], residual)
            });
        }
    }
    Ok(())
}

/// Randomized path search with 8 interior vertices and 2000 moves per pair.
/// The residual combines the time gap with the path's distance from the
/// chord, scaled so that a tube of `1e-3 ‖q − p‖` costs `1e-4`.
fn flatness(ctx: &MetricContext, trials: usize, rng: &mut ChaCha8Rng, tracker: &mut Tracker) -> Result<(), FunkError> {
    for _ in 0..trials {
        let p = point_in_domain(rng, ctx, 0.8);
        let q = point_in_domain(rng, ctx, 0.8);
        let seed = rng.gen();
        let out = local_min_search(ctx, p, q, 8, 2000, seed)?;
        let exact = distance(ctx, p, q)?.travel_time;
        let span = p.distance_to(q);
        let tube = out
            .best_path
            .vertices()
            .iter()
            .map(|&v| distance_to_segment(v, p, q) / span)
            .fold(0.0, f64::max);
        let gap = (out.best_time - exact).abs();
        let residual = gap.max(0.1 * tube);
        tracker.record(residual, || {
            case(
                ctx.lambda(),
                &[("p", point(p)), ("q", point(q)), ("time_gap", num(gap)), ("tube", num(tube))],
                residual,
            )
        });
    }
    Ok(())
}
