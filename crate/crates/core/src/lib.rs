//! Exact peg-and-cord geometry of the Śulvasūtras.
//!
//! Values are [`ConstructibleScalar`]s: rationals closed under square roots,
//! compared exactly where possible and by certified intervals otherwise.
//! The planar layer in [`geometry`] is generic over [`scalar::Scalar`]; the
//! aliases below fix it to the exact scalar used by every construction.

pub mod analysis;
pub mod constructions;
pub mod geometry;
pub mod registry;
pub mod scalar;
pub mod texts;
pub mod units;

pub use scalar::{Comparison, ConstructibleScalar, Interval, Rational, ScalarError};

pub type Point = geometry::Point<ConstructibleScalar>;
pub type Segment = geometry::Segment<ConstructibleScalar>;
pub type Circle = geometry::Circle<ConstructibleScalar>;
pub type Line = geometry::Line<ConstructibleScalar>;

pub use geometry::trace::ConstructionTrace;
