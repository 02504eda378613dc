//! Parsers for the point and line syntaxes accepted on the command line.

use lfunk_core::{Line, Point};

fn parse_number(text: &str) -> Result<f64, String> {
    let value: f64 = text.trim().parse().map_err(|_| format!("'{text}' is not a number"))?;
    if value.is_finite() {
        Ok(value)
    } else {
        Err(format!("'{text}' is not finite"))
    }
}

fn parse_pair(text: &str) -> Result<(f64, f64), String> {
    let (a, b) = text
        .split_once(',')
        .ok_or_else(|| format!("expected two comma-separated numbers, got '{text}'"))?;
    Ok((parse_number(a)?, parse_number(b)?))
}

/// `x,y`
pub fn parse_point(text: &str) -> Result<Point, String> {
    let (x, y) = parse_pair(text)?;
    Ok(Point::new(x, y))
}

/// `m,c` for `y = m x + c`, or `angle:theta,offset`.
pub fn parse_line(text: &str) -> Result<Line, String> {
    match text.strip_prefix("angle:") {
        Some(rest) => {
            let (theta, offset) = parse_pair(rest)?;
            Line::from_angle(theta, offset).map_err(|e| e.to_string())
        }
        None => {
            let (m, c) = parse_pair(text)?;
            Line::from_slope(m, c).map_err(|e| e.to_string())
        }
    }
}
