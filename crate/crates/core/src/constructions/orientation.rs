//! Laying out directions and right angles on the ground.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::{require_positive, ConstructedSegment, ConstructionError};
use crate::geometry::trace::{ConstructionTrace, TraceBuilder};
use crate::geometry::{default_slack, Point, Segment};
use crate::scalar::{Comparison, ConstructibleScalar as Cs};
use crate::texts::Text;

/// The east-west line from the two points where the tip of a pole's shadow
/// crosses a circle drawn about its base. The chord runs West → East.
pub fn east_west_from_shadow(
    pole_base: &Point<Cs>,
    circle_radius: &Cs,
    shadow_crossing_1: &Point<Cs>,
    shadow_crossing_2: &Point<Cs>,
) -> Result<ConstructedSegment, ConstructionError> {
    require_positive(circle_radius, "circle radius")?;
    let r2 = circle_radius * circle_radius;
    for p in [shadow_crossing_1, shadow_crossing_2] {
        match p.distance_sq(pole_base).compare(&r2) {
            Comparison::Equal => {}
            Comparison::Undecided => {
                return Err(ConstructionError::Undecided("shadow point on circle"))
            }
            _ => return Err(ConstructionError::PointOffCircle),
        }
    }
    let (west, east) = match shadow_crossing_1.compare(shadow_crossing_2) {
        Comparison::Less => (shadow_crossing_1, shadow_crossing_2),
        Comparison::Greater => (shadow_crossing_2, shadow_crossing_1),
        Comparison::Equal => return Err(ConstructionError::CoincidentPoints),
        Comparison::Undecided => return Err(ConstructionError::Undecided("shadow point order")),
    };
    let mut t = TraceBuilder::new();
    let pole = t.peg(pole_base)?;
    let circle = t.circle(&pole, circle_radius)?;
    let w = t.peg(west)?;
    let e = t.peg(east)?;
    let chord = t.cord(&w, &e)?;
    t.label("pole", &pole)?;
    t.label("circle", &circle)?;
    t.label("west_point", &w)?;
    t.label("east_point", &e)?;
    t.label("east_west", &chord)?;
    let segment = t.segment(&chord)?.clone();
    Ok(ConstructedSegment {
        segment,
        trace: t.finish(),
    })
}

/// Perpendicular bisector of `ew`, found by pulling a cord tied at its ends
/// out by the midpoint on either side. Runs from the south apex to the north.
pub fn north_south_perpendicular(
    ew: &Segment<Cs>,
) -> Result<ConstructedSegment, ConstructionError> {
    north_south_perpendicular_with_slack(ew, &default_slack())
}

pub fn north_south_perpendicular_with_slack(
    ew: &Segment<Cs>,
    slack: &Cs,
) -> Result<ConstructedSegment, ConstructionError> {
    let mut t = TraceBuilder::new();
    let a = t.peg(ew.start())?;
    let b = t.peg(ew.end())?;
    let base = t.cord(&a, &b)?;
    let (north, south) = t.stretch(&a, &b, slack)?;
    let ns = t.cord(&south, &north)?;
    let mid = t.intersect(&ns, &base)?;
    t.label("east_west", &base)?;
    t.label("north_point", &north)?;
    t.label("south_point", &south)?;
    t.label("north_south", &ns)?;
    if let Some(m) = mid.first() {
        t.label("midpoint", m)?;
    }
    let segment = t.segment(&ns)?.clone();
    Ok(ConstructedSegment {
        segment,
        trace: t.finish(),
    })
}

/// Perpendicular to a line at `line_point`: mark two points at equal
/// distance on either side and draw arcs of a larger radius from both.
pub fn compass_perpendicular(
    line_point: &Point<Cs>,
    line_direction: &Point<Cs>,
    arc_radius: &Cs,
    flank_distance: &Cs,
) -> Result<ConstructedSegment, ConstructionError> {
    require_positive(flank_distance, "flank distance")?;
    match arc_radius.compare(flank_distance) {
        Comparison::Greater => {}
        Comparison::Undecided => return Err(ConstructionError::Undecided("arc radius")),
        _ => return Err(ConstructionError::ArcsDontMeet),
    }
    let mut t = TraceBuilder::new();
    let p = t.peg(line_point)?;
    let ahead = t.peg(&line_point.add(line_direction))?;
    let behind = t.peg(&line_point.sub(line_direction))?;
    let line = t.cord(&behind, &ahead)?;
    let f1 = t.mark(&p, &ahead, flank_distance)?;
    let f2 = t.mark(&p, &behind, flank_distance)?;
    let c1 = t.circle(&f1, arc_radius)?;
    let c2 = t.circle(&f2, arc_radius)?;
    let meets = t.intersect(&c1, &c2)?;
    let [lo, hi] = meets.as_slice() else {
        return Err(ConstructionError::ArcsDontMeet);
    };
    let perp = t.cord(lo, hi)?;
    t.label("line", &line)?;
    t.label("foot", &p)?;
    t.label("perpendicular", &perp)?;
    let segment = t.segment(&perp)?.clone();
    Ok(ConstructedSegment {
        segment,
        trace: t.finish(),
    })
}

/// Integer right triangle `a² + b² = c²`, with the manuals that use it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PythagoreanTriple {
    pub a: u64,
    pub b: u64,
    pub c: u64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub attested_in: Vec<Text>,
}

impl PythagoreanTriple {
    pub fn new(a: u64, b: u64, c: u64) -> Result<Self, ConstructionError> {
        let t = PythagoreanTriple {
            a,
            b,
            c,
            attested_in: Vec::new(),
        };
        if t.is_valid() {
            Ok(t)
        } else {
            Err(ConstructionError::InvalidTriple { a, b, c })
        }
    }

    pub fn is_valid(&self) -> bool {
        let (a, b, c) = (self.a as u128, self.b as u128, self.c as u128);
        a > 0 && b > 0 && a * a + b * b == c * c
    }

    pub fn is_primitive(&self) -> bool {
        self.a.gcd(&self.b).gcd(&self.c) == 1
    }

    pub fn is_attested_in(&self, text: Text) -> bool {
        self.attested_in.contains(&text)
    }

    fn attested(mut self, texts: &[Text]) -> Self {
        self.attested_in = texts.to_vec();
        self
    }
}

/// The five triples found in the manuals, with their attestations.
pub fn triple_catalog() -> Vec<PythagoreanTriple> {
    use Text::{Apastamba, Baudhayana, Katyayana};
    let t = |a, b, c| PythagoreanTriple::new(a, b, c).expect("catalog triples are valid");
    vec![
        t(3, 4, 5).attested(&[Baudhayana, Apastamba, Katyayana]),
        t(5, 12, 13).attested(&[Baudhayana, Apastamba, Katyayana]),
        t(8, 15, 17).attested(&[Baudhayana, Apastamba]),
        t(12, 35, 37).attested(&[Baudhayana, Apastamba]),
        t(7, 24, 25).attested(&[Baudhayana]),
    ]
}

#[derive(Clone, Debug)]
pub struct NyancanaRectangle {
    /// Counterclockwise from `origin`: origin, along east, far corner, across.
    pub vertices: [Point<Cs>; 4],
    pub trace: ConstructionTrace,
}

/// Rectangle laid out with a marked cord: the triple's legs `a·k` along east
/// and `b·k` turned by the hypotenuse `c·k` give the right angle at `origin`.
pub fn nyancana_rectangle(
    origin: &Point<Cs>,
    east_direction: &Point<Cs>,
    width: &Cs,
    length: &Cs,
    triple: &PythagoreanTriple,
    cord_scale: &Cs,
) -> Result<NyancanaRectangle, ConstructionError> {
    if !triple.is_valid() {
        return Err(ConstructionError::InvalidTriple {
            a: triple.a,
            b: triple.b,
            c: triple.c,
        });
    }
    require_positive(width, "width")?;
    require_positive(length, "length")?;
    require_positive(cord_scale, "cord scale")?;
    let leg = |n: u64| cord_scale * &Cs::integer(n as i64);

    let mut t = TraceBuilder::new();
    let o = t.peg(origin)?;
    let e = t.peg(&origin.add(east_direction))?;
    let foot = t.mark(&o, &e, &leg(triple.a))?;
    let arm = t.circle(&o, &leg(triple.b))?;
    let hyp = t.circle(&foot, &leg(triple.c))?;
    let candidates = t.intersect(&arm, &hyp)?;
    // the apex on the left of the eastward leg
    let mut apex = None;
    for id in &candidates {
        let turn = east_direction.cross(&t.point(id)?.sub(origin));
        if turn.sign(crate::scalar::DEFAULT_MAX_PRECISION) == Comparison::Greater {
            apex = Some(id.clone());
        }
    }
    let apex = apex.ok_or(ConstructionError::Undecided("triangle apex"))?;
    let leg_a = t.cord(&o, &foot)?;
    let leg_b = t.cord(&o, &apex)?;
    let hyp_cord = t.cord(&foot, &apex)?;

    let along = t.mark(&o, &e, length)?;
    let across = t.mark(&o, &apex, width)?;
    let c1 = t.circle(&along, width)?;
    let c2 = t.circle(&across, length)?;
    let hits = t.intersect(&c1, &c2)?;
    let far = super::squares::opposite_corner(&t, &hits, &along, &across, &o)?;
    let corners = [o.clone(), along, far, across];
    for i in 0..4 {
        let side = t.cord(&corners[i], &corners[(i + 1) % 4])?;
        t.label(&format!("side_{}", i + 1), &side)?;
    }
    t.label("origin", &o)?;
    t.label("leg_a", &leg_a)?;
    t.label("leg_b", &leg_b)?;
    t.label("hypotenuse", &hyp_cord)?;
    let vertices = [
        t.point(&corners[0])?.clone(),
        t.point(&corners[1])?.clone(),
        t.point(&corners[2])?.clone(),
        t.point(&corners[3])?.clone(),
    ];
    Ok(NyancanaRectangle {
        vertices,
        trace: t.finish(),
    })
}
