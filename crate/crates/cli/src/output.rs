//! Number formatting and the CSV/SVG writers.

use std::fmt::Write;
use std::str::FromStr;

use lfunk_core::{Line, MetricContext, Point};
use serde_json::Value;

/// Seventeen significant digits in positional notation where that stays
/// short, scientific otherwise. Exactly round-trips every `f64`.
pub fn format_number(x: f64) -> String {
    let sci = format!("{x:.16e}");
    let (mantissa, exponent) = sci.split_once('e').expect("scientific format");
    let exponent: i32 = exponent.parse().expect("integer exponent");
    if !(-5..17).contains(&exponent) {
        return sci;
    }
    let (sign, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => ("-", rest),
        None => ("", mantissa),
    };
    let digits: String = mantissa.chars().filter(|c| *c != '.').collect();
    if exponent >= 0 {
        let split = exponent as usize + 1;
        let (int, frac) = digits.split_at(split);
        if frac.is_empty() {
            format!("{sign}{int}.0")
        } else {
            format!("{sign}{int}.{frac}")
        }
    } else {
        let zeros = "0".repeat((-exponent - 1) as usize);
        format!("{sign}0.{zeros}{digits}")
    }
}

/// JSON number with full precision; `null` for non-finite values.
pub fn num(x: f64) -> Value {
    if x.is_finite() {
        Value::Number(serde_json::Number::from_str(&format_number(x)).expect("valid JSON number"))
    } else {
        Value::Null
    }
}

pub fn opt_num(x: Option<f64>) -> Value {
    x.map_or(Value::Null, num)
}

pub fn point(p: Point) -> Value {
    Value::Array(vec![num(p.x1), num(p.x2)])
}

/// `key,value` records for scalar outputs.
pub fn csv_records(rows: &[(String, Option<f64>)]) -> String {
    let mut out = String::from("key,value\n");
    for (key, value) in rows {
        let value = value.map(format_number).unwrap_or_default();
        let _ = writeln!(out, "{key},{value}");
    }
    out
}

/// `x,y` rows for a sampled locus.
pub fn csv_points(points: &[Point]) -> String {
    let mut out = String::from("x,y\n");
    for p in points {
        let _ = writeln!(out, "{},{}", format_number(p.x1), format_number(p.x2));
    }
    out
}

pub const BOUNDARY_STROKE: &str = "#444444";
pub const LOCUS_STROKE: &str = "#1f77b4";
pub const CENTER_FILL: &str = "#d62728";
pub const PATH_STROKE: &str = "#2ca02c";
pub const REALIZER_FILL: &str = "#ff7f0e";

/// Minimal SVG canvas in plane coordinates with the y-axis pointing up.
pub struct Svg {
    half: f64,
    body: String,
}

impl Svg {
    /// Viewport `[−1.1, 1.1]² · R` for the domain radius `R`; without wind,
    /// `R` is taken as the largest norm among `extent`.
    pub fn for_domain(ctx: &MetricContext, extent: &[Point]) -> Self {
        let radius = if ctx.lambda() > 0.0 {
            ctx.domain_radius()
        } else {
            extent.iter().map(|p| p.norm()).fold(1.0, f64::max)
        };
        let mut svg = Svg {
            half: 1.1 * radius,
            body: String::new(),
        };
        if ctx.lambda() > 0.0 {
            svg.circle(Point::new(0.0, 0.0), radius, BOUNDARY_STROKE, "none");
        }
        svg
    }

    fn stroke_width(&self) -> String {
        format_number(self.half / 250.0)
    }

    pub fn circle(&mut self, center: Point, radius: f64, stroke: &str, fill: &str) {
        let _ = writeln!(
            self.body,
            r#"  <circle cx="{}" cy="{}" r="{}" stroke="{stroke}" fill="{fill}" stroke-width="{}"/>"#,
            format_number(center.x1),
            format_number(center.x2),
            format_number(radius),
            self.stroke_width()
        );
    }

    pub fn dot(&mut self, at: Point, fill: &str) {
        let r = self.half / 80.0;
        self.circle(at, r, "none", fill);
    }

    pub fn polyline(&mut self, points: &[Point], stroke: &str, closed: bool) {
        if points.len() < 2 {
            return;
        }
        let coords: Vec<String> = points
            .iter()
            .map(|p| format!("{},{}", format_number(p.x1), format_number(p.x2)))
            .collect();
        let tag = if closed { "polygon" } else { "polyline" };
        let _ = writeln!(
            self.body,
            r#"  <{tag} points="{}" stroke="{stroke}" fill="none" stroke-width="{}"/>"#,
            coords.join(" "),
            self.stroke_width()
        );
    }

    /// The part of `line` inside the viewport (or the domain, when there is one).
    pub fn line(&mut self, ctx: &MetricContext, line: &Line) {
        let (lo, hi) = line.chord(ctx).unwrap_or((-2.0 * self.half, 2.0 * self.half));
        self.polyline(&[line.point_at(lo), line.point_at(hi)], PATH_STROKE, false);
    }

    pub fn finish(self) -> String {
        let h = format_number(self.half);
        let w = format_number(2.0 * self.half);
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-{h} -{h} {w} {w}\" width=\"600\" height=\"600\">\n <g transform=\"scale(1,-1)\">\n{} </g>\n</svg>\n",
            self.body
        )
    }
}
