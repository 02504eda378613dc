use thiserror::Error;

use crate::metric::Point;

pub type Result<T> = std::result::Result<T, FunkError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FunkError {
    #[error("lambda must be finite and non-negative, got {0}")]
    InvalidLambda(f64),

    #[error(
        "point ({}, {}) lies outside the domain: norm {norm} but the domain radius is {radius}",
        point.x1,
        point.x2
    )]
    Domain { point: Point, norm: f64, radius: f64 },

    #[error("wind speed {0} is not below the boat speed 1")]
    WindTooStrong(f64),

    #[error("direction vector must be non-zero")]
    ZeroVector,

    #[error("invalid (r, s) = ({r}, {s}): need 0 <= r < {radius} and |s| <= r")]
    InvalidPhiArgs { r: f64, s: f64, radius: f64 },

    #[error("not applicable: {0}")]
    NotApplicable(&'static str),

    #[error("line does not meet the domain: distance {distance} from the origin, domain radius {radius}")]
    LineOutsideDomain { distance: f64, radius: f64 },

    #[error(
        "the minimizing point ({}, {}) falls outside the domain; the infimum over the chord is not attained",
        realizer.x1,
        realizer.x2
    )]
    RealizerOutsideDomain { realizer: Point },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
