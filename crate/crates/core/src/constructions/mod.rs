//! The altar-building procedures: each returns exact values together with the
//! peg-and-cord trace that realizes them.

mod circles;
mod orientation;
mod squares;

pub use circles::{
    circle_from_square, fine_ratio, maitrayaniya_radius, savisesha_terms, sqrt2_savisesha,
    square_from_circle, CircleSquaringMethod, COARSE_RATIO, MAITRAYANIYA_RATIO,
};
pub use orientation::{
    compass_perpendicular, east_west_from_shadow, north_south_perpendicular,
    north_south_perpendicular_with_slack, nyancana_rectangle, triple_catalog, NyancanaRectangle,
    PythagoreanTriple,
};
pub use squares::{
    augment_unit, default_fractions, diagonal_rectangle_theorem_check, difference_of_squares_side,
    dronaciti_partition, rectangle_to_square, sqrt_n_altitude, square_area_table,
    sum_of_squares_side, Altitude, Dronaciti, TheoremCheck,
};

use num_traits::Zero;
use thiserror::Error;

use crate::geometry::trace::{ConstructionTrace, TraceError};
use crate::geometry::{GeometryError, Segment};
use crate::scalar::{Comparison, ConstructibleScalar, ScalarError};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("point does not lie on the circle")]
    PointOffCircle,
    #[error("the two points coincide")]
    CoincidentPoints,
    #[error("arcs of this radius do not meet: radius must exceed the flank distance")]
    ArcsDontMeet,
    #[error("({a}, {b}, {c}) is not a Pythagorean triple")]
    InvalidTriple { a: u64, b: u64, c: u64 },
    #[error("{0} must be positive")]
    NonpositiveInput(&'static str),
    #[error("first side must be larger than the second")]
    NotLarger,
    #[error("n must be at least 1 for the triangle to exist")]
    NotRealizable,
    #[error("target area must exceed the starting area")]
    NotAugmentation,
    #[error("the 9/16 rule turns a square into a circle, not the reverse")]
    MethodMismatch,
    #[error("could not certify {0}")]
    Undecided(&'static str),
    #[error(transparent)]
    Trace(#[from] TraceError),
}

impl From<GeometryError> for ConstructionError {
    fn from(e: GeometryError) -> Self {
        ConstructionError::Trace(TraceError::Geometry(e))
    }
}

impl From<ScalarError> for ConstructionError {
    fn from(e: ScalarError) -> Self {
        ConstructionError::Trace(TraceError::Geometry(GeometryError::Scalar(e)))
    }
}

/// A scalar result and the trace that produces it.
#[derive(Clone, Debug)]
pub struct Constructed {
    pub value: ConstructibleScalar,
    pub trace: ConstructionTrace,
}

/// A cord result and the trace that produces it.
#[derive(Clone, Debug)]
pub struct ConstructedSegment {
    pub segment: Segment<ConstructibleScalar>,
    pub trace: ConstructionTrace,
}

fn require_positive(
    value: &ConstructibleScalar,
    what: &'static str,
) -> Result<(), ConstructionError> {
    match value.compare(&ConstructibleScalar::zero()) {
        Comparison::Greater => Ok(()),
        Comparison::Undecided => Err(ConstructionError::Undecided(what)),
        _ => Err(ConstructionError::NonpositiveInput(what)),
    }
}
