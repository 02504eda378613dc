//! Travel-time geometry of a boat crossing a disk-shaped lake against a
//! radial wind `W(x) = −λx`.
//!
//! The induced Finsler (Randers) metric, called the λ-Funk metric here,
//! interpolates between the Euclidean plane (`λ = 0`) and the Funk metric of
//! the unit disk (`λ = 1`). The crate provides
//!
//! * [`metric`]: the metric itself, its spherically symmetric profile and the
//!   projective-flatness residual;
//! * [`distance`]: closed-form point-to-point travel times;
//! * [`arc_length`]: quadrature of the metric along arbitrary polylines, used
//!   as an independent oracle;
//! * [`circles`]: travel-time circles as Euclidean circles;
//! * [`line_distance`]: point-to-line and line-to-point travel times with the
//!   points that realize them.

pub mod arc_length;
pub mod circles;
pub mod distance;
pub mod error;
pub mod line_distance;
pub mod metric;
pub mod sampling;

pub use arc_length::{
    local_min_search, polyline_time, segment_time, Polyline, QuadratureRule, QuadratureSpec, SearchOutcome,
};
pub use circles::{circle_type1, circle_type2, sample_circle, EuclideanCircle};
pub use distance::{
    distance, distance_quotient_form, exponent_circle_residual, exponent_for_distance, rotation_witness,
    DistanceResult,
};
pub use error::{FunkError, Result};
pub use line_distance::{dist_line_to_point, dist_point_to_line, Line, LineDistanceResult};
pub use metric::{
    hessian_gram, lambda_funk_eval, pde_residual, phi, phi_partials, zermelo_metric_from_wind, Gram2x2,
    MetricContext, PhiArgs, PhiPartials, Point, Tolerances, Vector, ORIGIN,
};
