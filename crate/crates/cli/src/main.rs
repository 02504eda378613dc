//! `lfunk`: travel times, circles and line distances under the linear-wind
//! metric, plus the numerical verification suites.

mod args;
mod output;
mod verify;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use lfunk_core::{
    circle_type1, circle_type2, dist_line_to_point, dist_point_to_line, distance, sample_circle, DistanceResult,
    FunkError, Line, MetricContext, Point,
};
use serde_json::{json, Map, Value};

use output::{csv_points, csv_records, num, opt_num, point, Svg};
use verify::{Settings, Suite};

const TOLERANCE_VAR: &str = "LFUNK_TOL";

#[derive(Parser)]
#[command(name = "lfunk", version, about = "Shortest travel times in a linear wind field")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Svg,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Direction {
    /// From the line to the point.
    ToPoint,
    /// From the point to the line.
    ToLine,
}

#[derive(Subcommand)]
enum Command {
    /// Travel time between two points.
    Dist {
        #[arg(long, allow_hyphen_values = true)]
        lambda: f64,
        #[arg(long, value_parser = args::parse_point, allow_hyphen_values = true)]
        from: Point,
        #[arg(long, value_parser = args::parse_point, allow_hyphen_values = true)]
        to: Point,
        /// Also report the opposite direction and the difference.
        #[arg(long)]
        reverse: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Points at a fixed travel time from (type 1) or to (type 2) a centre.
    Circle {
        #[arg(long, allow_hyphen_values = true)]
        lambda: f64,
        #[arg(long = "type", value_parser = clap::value_parser!(u8).range(1..=2))]
        kind: u8,
        #[arg(long, value_parser = args::parse_point, allow_hyphen_values = true)]
        center: Point,
        #[arg(long, allow_hyphen_values = true)]
        radius_time: f64,
        #[arg(long, default_value_t = 64, value_parser = clap::value_parser!(u32).range(1..))]
        samples: u32,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Shortest travel time between a line and a point.
    LineDist {
        #[arg(long, allow_hyphen_values = true)]
        lambda: f64,
        /// `m,c` for y = m x + c, or `angle:theta,offset`.
        #[arg(long, value_parser = args::parse_line, allow_hyphen_values = true)]
        line: Line,
        #[arg(long, value_parser = args::parse_point, allow_hyphen_values = true)]
        point: Point,
        #[arg(long, value_enum)]
        direction: Direction,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Run numerical verification suites and report the worst residual.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Overrides both the suite default and LFUNK_TOL.
        #[arg(long, allow_hyphen_values = true)]
        tol: Option<f64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        lambdas: Option<Vec<f64>>,
    },
}

enum Failure {
    /// Bad input or a point outside the domain.
    Input(String),
    Verification(String),
}

impl From<FunkError> for Failure {
    fn from(e: FunkError) -> Self {
        Failure::Input(e.to_string())
    }
}

fn emit(text: &str) {
    // A closed pipe is not worth a panic.
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn emit_json(value: &Value) {
    emit(&format!("{value}\n"));
}

fn context(lambda: f64) -> Result<MetricContext, Failure> {
    Ok(MetricContext::new(lambda)?)
}

fn distance_fields(d: &DistanceResult) -> Map<String, Value> {
    let mut map = Map::new();
    map.insert("travel_time".into(), num(d.travel_time));
    map.insert("exponent_r".into(), num(d.exponent_r));
    map.insert("k".into(), opt_num(d.k));
    map.insert("t2".into(), opt_num(d.t2));
    map
}

fn distance_rows(prefix: &str, d: &DistanceResult) -> Vec<(String, Option<f64>)> {
    vec![
        (format!("{prefix}travel_time"), Some(d.travel_time)),
        (format!("{prefix}exponent_r"), Some(d.exponent_r)),
        (format!("{prefix}k"), d.k),
        (format!("{prefix}t2"), d.t2),
    ]
}

fn cmd_dist(lambda: f64, from: Point, to: Point, reverse: bool, format: Format) -> Result<(), Failure> {
    let ctx = context(lambda)?;
    let forward = distance(&ctx, from, to)?;
    let backward = if reverse { Some(distance(&ctx, to, from)?) } else { None };
    match format {
        Format::Json => {
            let mut map = Map::new();
            map.insert("lambda".into(), num(lambda));
            map.insert("from".into(), point(from));
            map.insert("to".into(), point(to));
            map.extend(distance_fields(&forward));
            if let Some(b) = &backward {
                map.insert("reverse".into(), Value::Object(distance_fields(b)));
                map.insert("difference".into(), num(forward.travel_time - b.travel_time));
            }
            emit_json(&Value::Object(map));
        }
        Format::Csv => {
            let mut rows = vec![
                ("lambda".to_string(), Some(lambda)),
                ("from_x".to_string(), Some(from.x1)),
                ("from_y".to_string(), Some(from.x2)),
                ("to_x".to_string(), Some(to.x1)),
                ("to_y".to_string(), Some(to.x2)),
            ];
            rows.extend(distance_rows("", &forward));
            if let Some(b) = &backward {
                rows.extend(distance_rows("reverse_", b));
                rows.push(("difference".to_string(), Some(forward.travel_time - b.travel_time)));
            }
            emit(&csv_records(&rows));
        }
        Format::Svg => {
            let mut svg = Svg::for_domain(&ctx, &[from, to]);
            svg.polyline(&[from, to], output::PATH_STROKE, false);
            svg.dot(from, output::CENTER_FILL);
            svg.dot(to, output::REALIZER_FILL);
            emit(&svg.finish());
        }
    }
    Ok(())
}

/// Maximal runs of consecutive in-domain samples, joined across the wrap.
fn inside_runs(ctx: &MetricContext, samples: &[Point]) -> (Vec<Vec<Point>>, bool) {
    let inside: Vec<bool> = samples.iter().map(|p| ctx.contains(*p)).collect();
    if inside.iter().all(|b| *b) {
        return (vec![samples.to_vec()], true);
    }
    let start = inside.iter().position(|b| !b).expect("some sample outside");
    let mut runs = Vec::new();
    let mut current = Vec::new();
    for offset in 1..=samples.len() {
        let i = (start + offset) % samples.len();
        if inside[i] {
            current.push(samples[i]);
        } else if !current.is_empty() {
            runs.push(std::mem::take(&mut current));
        }
    }
    (runs, false)
}

fn cmd_circle(lambda: f64, kind: u8, center: Point, rho: f64, samples: usize, format: Format) -> Result<(), Failure> {
    let ctx = context(lambda)?;
    let circle = if kind == 1 { circle_type1(&ctx, center, rho)? } else { circle_type2(&ctx, center, rho)? };
    let locus = sample_circle(&ctx, &circle, samples, true);
    match format {
        Format::Json => {
            let value = json!({
                "lambda": num(lambda),
                "type": kind,
                "center": point(center),
                "radius_time": num(rho),
                "euclidean_center": point(circle.center),
                "euclidean_radius": num(circle.radius),
                "clipped": circle.clipped,
                "samples": locus.iter().map(|p| point(*p)).collect::<Vec<_>>(),
            });
            emit_json(&value);
        }
        Format::Csv => emit(&csv_points(&locus)),
        Format::Svg => {
            let all = sample_circle(&ctx, &circle, samples, false);
            let extent = [
                center,
                Point::new(circle.center.x1 + circle.radius, circle.center.x2),
                Point::new(circle.center.x1 - circle.radius, circle.center.x2),
                Point::new(circle.center.x1, circle.center.x2 + circle.radius),
                Point::new(circle.center.x1, circle.center.x2 - circle.radius),
            ];
            let mut svg = Svg::for_domain(&ctx, &extent);
            let (runs, closed) = inside_runs(&ctx, &all);
            for run in &runs {
                svg.polyline(run, output::LOCUS_STROKE, closed);
            }
            svg.dot(center, output::CENTER_FILL);
            emit(&svg.finish());
        }
    }
    Ok(())
}

fn cmd_line_dist(lambda: f64, line: Line, at: Point, direction: Direction, format: Format) -> Result<(), Failure> {
    let ctx = context(lambda)?;
    let (result, label) = match direction {
        Direction::ToPoint => (dist_line_to_point(&ctx, &line, at)?, "to-point"),
        Direction::ToLine => (dist_point_to_line(&ctx, at, &line)?, "to-line"),
    };
    match format {
        Format::Json => {
            let value = json!({
                "lambda": num(lambda),
                "line": {"theta": num(line.theta()), "offset": num(line.offset())},
                "point": point(at),
                "direction": label,
                "travel_time": num(result.travel_time),
                "exponent_r": num(result.exponent_r),
                "realizer": point(result.realizer),
            });
            emit_json(&value);
        }
        Format::Csv => {
            let rows = [
                ("lambda", lambda),
                ("line_theta", line.theta()),
                ("line_offset", line.offset()),
                ("point_x", at.x1),
                ("point_y", at.x2),
                ("travel_time", result.travel_time),
                ("exponent_r", result.exponent_r),
                ("realizer_x", result.realizer.x1),
                ("realizer_y", result.realizer.x2),
            ]
            .map(|(k, v)| (k.to_string(), Some(v)));
            emit(&csv_records(&rows));
        }
        Format::Svg => {
            let mut svg = Svg::for_domain(&ctx, &[at, result.realizer]);
            svg.line(&ctx, &line);
            svg.polyline(&[at, result.realizer], output::LOCUS_STROKE, false);
            svg.dot(at, output::CENTER_FILL);
            svg.dot(result.realizer, output::REALIZER_FILL);
            emit(&svg.finish());
        }
    }
    Ok(())
}

fn tolerance_from_env() -> Result<Option<f64>, Failure> {
    match std::env::var(TOLERANCE_VAR) {
        Ok(text) => parse_tolerance(&text).map(Some).map_err(|e| Failure::Input(format!("{TOLERANCE_VAR}: {e}"))),
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(e) => Err(Failure::Input(format!("{TOLERANCE_VAR}: {e}"))),
    }
}

fn parse_tolerance(text: &str) -> Result<f64, String> {
    match text.trim().parse::<f64>() {
        Ok(t) if t.is_finite() && t >= 0.0 => Ok(t),
        _ => Err(format!("'{text}' is not a non-negative tolerance")),
    }
}

fn cmd_verify(suite: Suite, settings: Settings) -> Result<(), Failure> {
    let suites: Vec<Suite> = if suite == Suite::All { Suite::EACH.to_vec() } else { vec![suite] };
    let mut failures = Vec::new();
    for s in suites {
        let report = verify::run(s, &settings)?;
        let value = report.to_json();
        emit_json(&value);
        if !report.passed {
            failures.push(format!(
                "suite {}: max_residual {} exceeds tolerance {}; worst case {}",
                s.name(),
                value["max_residual"],
                value["tolerance"],
                value["worst_case"]
            ));
        }
    }
    if failures.is_empty() {
        Ok(())
    } else {
        Err(Failure::Verification(failures.join("; ")))
    }
}

fn dispatch(command: Command) -> Result<(), Failure> {
    match command {
        Command::Dist { lambda, from, to, reverse, format } => cmd_dist(lambda, from, to, reverse, format),
        Command::Circle { lambda, kind, center, radius_time, samples, format } => {
            cmd_circle(lambda, kind, center, radius_time, samples as usize, format)
        }
        Command::LineDist { lambda, line, point, direction, format } => cmd_line_dist(lambda, line, point, direction, format),
        Command::Verify { suite, trials, seed, tol, lambdas } => {
            let tolerance = match tol {
                Some(t) if t.is_finite() && t >= 0.0 => Some(t),
                Some(t) => return Err(Failure::Input(format!("--tol {t} is not a non-negative tolerance"))),
                None => tolerance_from_env()?,
            };
            if trials == Some(0) {
                return Err(Failure::Input("trials must be positive".into()));
            }
            cmd_verify(suite, Settings { trials, seed, tolerance, lambdas })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
        Err(Failure::Verification(message)) => {
            eprintln!("verification failed: {message}");
            ExitCode::from(3)
        }
    }
}
