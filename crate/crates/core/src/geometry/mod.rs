//! Planar geometry over any [`Scalar`]: pegs, cords and circles.
//!
//! The plane is oriented with +x pointing East and +y pointing North.
//! Intersections are computed from squared quantities only, so a circle whose
//! radius is itself a square root never forces a nested radical.

pub mod trace;

use std::cmp::Ordering;

use thiserror::Error;

use crate::scalar::{Comparison, Scalar, ScalarError};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("the two objects coincide; their intersection is not finite")]
    CoincidentObjects,
    #[error("cord endpoints coincide")]
    DegenerateCord,
    #[error("direction is undefined: both points coincide")]
    DegenerateDirection,
    #[error("polygon needs at least three vertices and nonzero area")]
    DegeneratePolygon,
    #[error("segment endpoints must be distinct")]
    DegenerateSegment,
    #[error("circle radius must be positive")]
    NonpositiveRadius,
    #[error("distance must be nonnegative")]
    NegativeDistance,
    #[error("cord slack factor must exceed 1/2")]
    InvalidSlack,
    #[error("could not certify {0}")]
    Undecided(&'static str),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

#[derive(Clone, Debug)]
pub struct Point<S> {
    pub x: S,
    pub y: S,
}

impl<S: Scalar> Point<S> {
    pub fn new(x: S, y: S) -> Self {
        Point { x, y }
    }

    pub fn origin() -> Self {
        Point::new(S::zero(), S::zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        Point::new(
            self.x.clone() + other.x.clone(),
            self.y.clone() + other.y.clone(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        Point::new(
            self.x.clone() - other.x.clone(),
            self.y.clone() - other.y.clone(),
        )
    }

    pub fn scale(&self, k: &S) -> Self {
        Point::new(self.x.clone() * k.clone(), self.y.clone() * k.clone())
    }

    pub fn dot(&self, other: &Self) -> S {
        self.x.clone() * other.x.clone() + self.y.clone() * other.y.clone()
    }

    pub fn cross(&self, other: &Self) -> S {
        self.x.clone() * other.y.clone() - self.y.clone() * other.x.clone()
    }

    pub fn norm_sq(&self) -> S {
        self.dot(self)
    }

    /// Counterclockwise quarter turn of the vector.
    pub fn perp(&self) -> Self {
        Point::new(-self.y.clone(), self.x.clone())
    }

    pub fn distance_sq(&self, other: &Self) -> S {
        self.sub(other).norm_sq()
    }

    pub fn midpoint(&self, other: &Self) -> Result<Self, GeometryError> {
        let two = S::from_ratio(2, 1);
        Ok(Point::new(
            (self.x.clone() + other.x.clone()).checked_div(&two)?,
            (self.y.clone() + other.y.clone()).checked_div(&two)?,
        ))
    }

    /// Lexicographic order on `(x, y)` under certified comparison.
    pub fn compare(&self, other: &Self) -> Comparison {
        match self.x.compare(&other.x) {
            Comparison::Equal => self.y.compare(&other.y),
            c => c,
        }
    }

    pub fn coincides(&self, other: &Self) -> bool {
        self.compare(other) == Comparison::Equal
    }

    /// Certainly distinct (some coordinate certifiably differs).
    pub fn is_distinct_from(&self, other: &Self) -> bool {
        matches!(self.compare(other), Comparison::Less | Comparison::Greater)
    }
}

#[derive(Clone, Debug)]
pub struct Segment<S> {
    start: Point<S>,
    end: Point<S>,
}

impl<S: Scalar> Segment<S> {
    pub fn new(start: Point<S>, end: Point<S>) -> Result<Self, GeometryError> {
        if !start.is_distinct_from(&end) {
            return Err(GeometryError::DegenerateSegment);
        }
        Ok(Segment { start, end })
    }

    pub fn start(&self) -> &Point<S> {
        &self.start
    }

    pub fn end(&self) -> &Point<S> {
        &self.end
    }

    pub fn direction(&self) -> Point<S> {
        self.end.sub(&self.start)
    }

    pub fn length_sq(&self) -> S {
        self.direction().norm_sq()
    }

    /// Length, taking the shortcut `|dx|` or `|dy|` for axis-parallel cords.
    pub fn length(&self) -> Result<S, GeometryError> {
        let d = self.direction();
        if d.y.sign() == Comparison::Equal {
            return Ok(abs(&d.x));
        }
        if d.x.sign() == Comparison::Equal {
            return Ok(abs(&d.y));
        }
        Ok(d.norm_sq().checked_sqrt()?)
    }

    pub fn midpoint(&self) -> Result<Point<S>, GeometryError> {
        self.start.midpoint(&self.end)
    }

    pub fn line(&self) -> Line<S> {
        Line {
            through: self.start.clone(),
            toward: self.end.clone(),
        }
    }
}

fn abs<S: Scalar>(v: &S) -> S {
    if v.sign() == Comparison::Less {
        -v.clone()
    } else {
        v.clone()
    }
}

/// Infinite line through two distinct points.
#[derive(Clone, Debug)]
pub struct Line<S> {
    pub through: Point<S>,
    pub toward: Point<S>,
}

impl<S: Scalar> Line<S> {
    pub fn direction(&self) -> Point<S> {
        self.toward.sub(&self.through)
    }

    /// Whether `p` satisfies the line equation exactly.
    pub fn contains(&self, p: &Point<S>) -> Comparison {
        self.direction().cross(&p.sub(&self.through)).sign()
    }
}

#[derive(Clone, Debug)]
pub struct Circle<S> {
    center: Point<S>,
    radius: S,
}

impl<S: Scalar> Circle<S> {
    pub fn new(center: Point<S>, radius: S) -> Result<Self, GeometryError> {
        if radius.sign() != Comparison::Greater {
            return Err(GeometryError::NonpositiveRadius);
        }
        Ok(Circle { center, radius })
    }

    pub fn center(&self) -> &Point<S> {
        &self.center
    }

    pub fn radius(&self) -> &S {
        &self.radius
    }

    pub fn radius_sq(&self) -> S {
        self.radius.clone() * self.radius.clone()
    }

    /// `|p − c|² − r²` compared against zero.
    pub fn contains(&self, p: &Point<S>) -> Comparison {
        p.distance_sq(&self.center).compare(&self.radius_sq())
    }
}

/// An object that can take part in an intersection.
#[derive(Clone, Debug)]
pub enum Curve<S> {
    Line(Line<S>),
    Circle(Circle<S>),
}

impl<S: Scalar> Curve<S> {
    /// Whether `p` lies exactly on the curve.
    pub fn passes_through(&self, p: &Point<S>) -> Comparison {
        match self {
            Curve::Line(l) => l.contains(p),
            Curve::Circle(c) => c.contains(p),
        }
    }
}

impl<S: Scalar> From<Line<S>> for Curve<S> {
    fn from(l: Line<S>) -> Self {
        Curve::Line(l)
    }
}

impl<S: Scalar> From<Circle<S>> for Curve<S> {
    fn from(c: Circle<S>) -> Self {
        Curve::Circle(c)
    }
}

/// Intersection points of two curves, in lexicographic `(x, y)` order.
pub fn intersect<S: Scalar>(a: &Curve<S>, b: &Curve<S>) -> Result<Vec<Point<S>>, GeometryError> {
    let mut points = match (a, b) {
        (Curve::Line(l1), Curve::Line(l2)) => intersect_lines(l1, l2)?,
        (Curve::Line(l), Curve::Circle(c)) | (Curve::Circle(c), Curve::Line(l)) => {
            intersect_line_circle(l, c)?
        }
        (Curve::Circle(c1), Curve::Circle(c2)) => intersect_circles(c1, c2)?,
    };
    sort_points(&mut points)?;
    Ok(points)
}

fn sort_points<S: Scalar>(points: &mut [Point<S>]) -> Result<(), GeometryError> {
    if points.len() == 2 {
        match points[0].compare(&points[1]) {
            Comparison::Greater => points.swap(0, 1),
            Comparison::Undecided => return Err(GeometryError::Undecided("intersection order")),
            _ => {}
        }
    }
    Ok(())
}

fn intersect_lines<S: Scalar>(l1: &Line<S>, l2: &Line<S>) -> Result<Vec<Point<S>>, GeometryError> {
    let d1 = l1.direction();
    let d2 = l2.direction();
    if d1.norm_sq().sign() == Comparison::Equal || d2.norm_sq().sign() == Comparison::Equal {
        return Err(GeometryError::DegenerateDirection);
    }
    let denom = d1.cross(&d2);
    match denom.sign() {
        Comparison::Equal => {
            return match l1.contains(&l2.through) {
                Comparison::Equal => Err(GeometryError::CoincidentObjects),
                Comparison::Undecided => Err(GeometryError::Undecided("line coincidence")),
                _ => Ok(Vec::new()),
            };
        }
        Comparison::Undecided => return Err(GeometryError::Undecided("line parallelism")),
        _ => {}
    }
    let t = l2.through.sub(&l1.through).cross(&d2).checked_div(&denom)?;
    Ok(vec![l1.through.add(&d1.scale(&t))])
}

fn intersect_line_circle<S: Scalar>(
    l: &Line<S>,
    c: &Circle<S>,
) -> Result<Vec<Point<S>>, GeometryError> {
    let d = l.direction();
    let dd = d.norm_sq();
    if dd.sign() == Comparison::Equal {
        return Err(GeometryError::DegenerateDirection);
    }
    let t0 = c.center.sub(&l.through).dot(&d).checked_div(&dd)?;
    let foot = l.through.add(&d.scale(&t0));
    let h_sq = c.radius_sq() - foot.distance_sq(&c.center);
    match h_sq.sign() {
        Comparison::Less => Ok(Vec::new()),
        Comparison::Equal => Ok(vec![foot]),
        Comparison::Greater => {
            let s = h_sq.checked_div(&dd)?.checked_sqrt()?;
            let offset = d.scale(&s);
            Ok(vec![foot.sub(&offset), foot.add(&offset)])
        }
        Comparison::Undecided => Err(GeometryError::Undecided("line-circle tangency")),
    }
}

fn intersect_circles<S: Scalar>(
    c1: &Circle<S>,
    c2: &Circle<S>,
) -> Result<Vec<Point<S>>, GeometryError> {
    let dc = c2.center.sub(&c1.center);
    let dd = dc.norm_sq();
    let (r1, r2) = (c1.radius_sq(), c2.radius_sq());
    match dd.sign() {
        Comparison::Equal => {
            return match r1.compare(&r2) {
                Comparison::Equal => Err(GeometryError::CoincidentObjects),
                Comparison::Undecided => Err(GeometryError::Undecided("circle coincidence")),
                _ => Ok(Vec::new()),
            };
        }
        Comparison::Undecided => return Err(GeometryError::Undecided("circle centers")),
        _ => {}
    }
    // foot of the common chord sits at fraction `a` along c1 → c2
    let two = S::from_ratio(2, 1);
    let a = (dd.clone() + r1.clone() - r2).checked_div(&(two * dd.clone()))?;
    let foot = c1.center.add(&dc.scale(&a));
    let h_sq = r1.checked_div(&dd)? - a.clone() * a;
    match h_sq.sign() {
        Comparison::Less => Ok(Vec::new()),
        Comparison::Equal => Ok(vec![foot]),
        Comparison::Greater => {
            let offset = dc.perp().scale(&h_sq.checked_sqrt()?);
            Ok(vec![foot.sub(&offset), foot.add(&offset)])
        }
        Comparison::Undecided => Err(GeometryError::Undecided("circle tangency")),
    }
}

/// Default slack of the stretched cord: each half is 3/4 of the base.
pub fn default_slack<S: Scalar>() -> S {
    S::from_ratio(3, 4)
}

/// The two apexes reached by a cord tied at `a` and `b` and pulled out by
/// its midpoint, each half of length `slack·|ab|`. Returned as
/// `(north, south)`: the apex with larger `y` first (larger `x` on ties).
/// The line through the apexes is the perpendicular bisector of `ab`.
pub fn cord_stretch_midpoint<S: Scalar>(
    a: &Point<S>,
    b: &Point<S>,
    slack: &S,
) -> Result<(Point<S>, Point<S>), GeometryError> {
    if !a.is_distinct_from(b) {
        return Err(GeometryError::DegenerateCord);
    }
    if slack.compare(&S::from_ratio(1, 2)) != Comparison::Greater {
        return Err(GeometryError::InvalidSlack);
    }
    let half = a.distance_sq(b).checked_sqrt()? * slack.clone();
    let c1 = Circle::new(a.clone(), half.clone())?;
    let c2 = Circle::new(b.clone(), half)?;
    let pts = intersect(&c1.into(), &c2.into())?;
    let [p, q]: [Point<S>; 2] = pts
        .try_into()
        .map_err(|_| GeometryError::Undecided("cord apexes"))?;
    let order = match p.y.compare(&q.y) {
        Comparison::Equal => p.x.compare(&q.x),
        c => c,
    };
    match order {
        Comparison::Greater => Ok((p, q)),
        Comparison::Less => Ok((q, p)),
        _ => Err(GeometryError::Undecided("apex orientation")),
    }
}

/// Point on the ray from `origin` through `toward` at exactly `distance`.
pub fn mark_on_line<S: Scalar>(
    origin: &Point<S>,
    toward: &Point<S>,
    distance: &S,
) -> Result<Point<S>, GeometryError> {
    if !origin.is_distinct_from(toward) {
        return Err(GeometryError::DegenerateDirection);
    }
    match distance.sign() {
        Comparison::Less => return Err(GeometryError::NegativeDistance),
        Comparison::Undecided => return Err(GeometryError::Undecided("distance sign")),
        Comparison::Equal => return Ok(origin.clone()),
        Comparison::Greater => {}
    }
    let d = toward.sub(origin);
    let k = (distance.clone() * distance.clone())
        .checked_div(&d.norm_sq())?
        .checked_sqrt()?;
    Ok(origin.add(&d.scale(&k)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RightAngle {
    Right,
    NotRight,
    Undecided,
}

/// Whether the arms from `vertex` meet at a right angle.
pub fn right_angle_check<S: Scalar>(
    vertex: &Point<S>,
    arm1: &Point<S>,
    arm2: &Point<S>,
) -> RightAngle {
    if !vertex.is_distinct_from(arm1) || !vertex.is_distinct_from(arm2) {
        return RightAngle::Undecided;
    }
    match arm1.sub(vertex).dot(&arm2.sub(vertex)).sign() {
        Comparison::Equal => RightAngle::Right,
        Comparison::Less | Comparison::Greater => RightAngle::NotRight,
        Comparison::Undecided => RightAngle::Undecided,
    }
}

/// Signed shoelace area, positive for counterclockwise vertex order.
pub fn area_of_polygon<S: Scalar>(vertices: &[Point<S>]) -> Result<S, GeometryError> {
    if vertices.len() < 3 {
        return Err(GeometryError::DegeneratePolygon);
    }
    let mut twice = S::zero();
    for (i, p) in vertices.iter().enumerate() {
        let q = &vertices[(i + 1) % vertices.len()];
        twice = twice + p.cross(q);
    }
    if twice.sign() == Comparison::Equal {
        return Err(GeometryError::DegeneratePolygon);
    }
    Ok(twice.checked_div(&S::from_ratio(2, 1))?)
}

/// Orders two points lexicographically when certain.
pub fn point_ordering<S: Scalar>(a: &Point<S>, b: &Point<S>) -> Option<Ordering> {
    a.compare(b).ordering()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ConstructibleScalar as Cs;

    fn s(text: &str) -> Cs {
        text.parse().unwrap()
    }

    fn p(x: &str, y: &str) -> Point<Cs> {
        Point::new(s(x), s(y))
    }

    fn assert_point(pt: &Point<Cs>, x: &str, y: &str) {
        assert!(
            pt.coincides(&p(x, y)),
            "got ({}, {}), want ({x}, {y})",
            pt.x,
            pt.y
        );
    }

    fn horizontal() -> Curve<Cs> {
        Curve::Line(Line {
            through: p("0", "0"),
            toward: p("1", "0"),
        })
    }

    #[test]
    fn line_meets_unit_circle() {
        let c = Circle::new(p("0", "0"), s("1")).unwrap();
        let pts = intersect(&horizontal(), &c.into()).unwrap();
        assert_eq!(pts.len(), 2);
        assert_point(&pts[0], "-1", "0");
        assert_point(&pts[1], "1", "0");
    }

    #[test]
    fn tangent_circles_meet_once() {
        let a = Circle::new(p("0", "0"), s("1")).unwrap();
        let b = Circle::new(p("2", "0"), s("1")).unwrap();
        let pts = intersect(&a.into(), &b.into()).unwrap();
        assert_eq!(pts.len(), 1);
        assert_point(&pts[0], "1", "0");
    }

    #[test]
    fn identical_circles_coincide() {
        let a = Circle::new(p("0", "0"), s("1")).unwrap();
        assert_eq!(
            intersect(&a.clone().into(), &a.into()).unwrap_err(),
            GeometryError::CoincidentObjects
        );
        assert_eq!(
            intersect(&horizontal(), &horizontal()).unwrap_err(),
            GeometryError::CoincidentObjects
        );
    }

    #[test]
    fn disjoint_and_parallel() {
        let a = Circle::new(p("0", "0"), s("1")).unwrap();
        let far = Circle::new(p("5", "0"), s("1")).unwrap();
        assert!(intersect(&a.into(), &far.into()).unwrap().is_empty());
        let up = Curve::Line(Line {
            through: p("0", "1"),
            toward: p("1", "1"),
        });
        assert!(intersect(&horizontal(), &up).unwrap().is_empty());
    }

    #[test]
    fn cord_apexes() {
        let (n, south) =
            cord_stretch_midpoint(&p("0", "0"), &p("2", "0"), &default_slack()).unwrap();
        assert_point(&n, "1", "sqrt(5)/2");
        assert_point(&south, "1", "-sqrt(5)/2");
        let (e, w) = cord_stretch_midpoint(&p("0", "0"), &p("0", "2"), &default_slack()).unwrap();
        assert_point(&e, "sqrt(5)/2", "1");
        assert_point(&w, "-sqrt(5)/2", "1");
        assert_eq!(
            cord_stretch_midpoint(&p("1", "1"), &p("1", "1"), &default_slack()).unwrap_err(),
            GeometryError::DegenerateCord
        );
        assert_eq!(
            cord_stretch_midpoint(&p("0", "0"), &p("1", "0"), &s("1/2")).unwrap_err(),
            GeometryError::InvalidSlack
        );
    }

    #[test]
    fn marking() {
        assert_point(
            &mark_on_line(&p("0", "0"), &p("1", "0"), &s("5")).unwrap(),
            "5",
            "0",
        );
        assert_point(
            &mark_on_line(&p("0", "0"), &p("1", "1"), &s("sqrt(2)")).unwrap(),
            "1",
            "1",
        );
        assert_eq!(
            mark_on_line(&p("0", "0"), &p("0", "0"), &s("1")).unwrap_err(),
            GeometryError::DegenerateDirection
        );
    }

    #[test]
    fn right_angles() {
        let o = p("0", "0");
        assert_eq!(
            right_angle_check(&o, &p("3", "0"), &p("0", "4")),
            RightAngle::Right
        );
        assert_eq!(
            right_angle_check(&o, &p("4", "0"), &p("3", "4")),
            RightAngle::NotRight
        );
    }

    #[test]
    fn polygon_areas() {
        let unit = [p("0", "0"), p("1", "0"), p("1", "1"), p("0", "1")];
        assert_eq!(
            area_of_polygon(&unit).unwrap().as_rational(),
            Some(crate::scalar::rational::integer(1))
        );
        let tri = [p("0", "0"), p("4", "0"), p("0", "3")];
        assert_eq!(
            area_of_polygon(&tri).unwrap().as_rational(),
            Some(crate::scalar::rational::integer(6))
        );
        let r = "sqrt(2)";
        let sq = [p("0", "0"), p(r, "0"), p(r, r), p("0", r)];
        assert_eq!(
            area_of_polygon(&sq).unwrap().as_rational(),
            Some(crate::scalar::rational::integer(2))
        );
        assert_eq!(
            area_of_polygon(&unit[..2]).unwrap_err(),
            GeometryError::DegeneratePolygon
        );
    }

    #[test]
    fn float_instantiation_agrees() {
        let c = Circle::new(Point::new(0.0f64, 0.0), 2.0).unwrap();
        let d = Circle::new(Point::new(2.0f64, 0.0), 2.0).unwrap();
        let pts = intersect(&c.into(), &d.into()).unwrap();
        assert_eq!(pts.len(), 2);
        assert!((pts[1].y - 3f64.sqrt()).abs() < 1e-12);
    }
}
