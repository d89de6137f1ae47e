//! Step-by-step record of a peg-and-cord construction.
//!
//! Every step names its inputs (objects produced earlier) and its outputs.
//! The builder executes each primitive as it is recorded, so a finished trace
//! already holds exact values for all objects; [`replay`] re-executes the
//! steps from scratch and checks the results agree.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{
    cord_stretch_midpoint, intersect, mark_on_line, Circle, Curve, GeometryError, Point, Segment,
};
use crate::scalar::{Comparison, ConstructibleScalar, Scalar, ScalarError};

type Cs = ConstructibleScalar;

/// Digits in the decimal sidecar when none is requested.
pub const DEFAULT_SIDECAR_DIGITS: u32 = 20;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TraceError {
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("object `{id}` is not a {expected}")]
    WrongKind { id: String, expected: &'static str },
    #[error("step {step}: missing parameter `{name}`")]
    MissingParam { step: usize, name: &'static str },
    #[error("step {step}: bad parameter `{name}`: {reason}")]
    BadParam {
        step: usize,
        name: String,
        reason: String,
    },
    #[error("step {step}: expected {expected} inputs, got {got}")]
    InputCount {
        step: usize,
        expected: &'static str,
        got: usize,
    },
    #[error("step {step}: produced {got} outputs, trace records {recorded}")]
    OutputCount {
        step: usize,
        got: usize,
        recorded: usize,
    },
    #[error("step {step}: object `{id}` does not match its recorded value")]
    Mismatch { step: usize, id: String },
    #[error("label `{label}` refers to unknown object `{id}`")]
    DanglingLabel { label: String, id: String },
    #[error("duplicate object id `{0}`")]
    DuplicateId(String),
    #[error("malformed trace document: {0}")]
    Json(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

impl From<ScalarError> for TraceError {
    fn from(e: ScalarError) -> Self {
        TraceError::Geometry(GeometryError::Scalar(e))
    }
}

/// The primitive gestures a trace is made of.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Op {
    /// A peg at given coordinates.
    PlacePeg,
    /// A cord between two pegs; with a `slack` parameter, the two apexes of
    /// the cord pulled out by its midpoint (north first).
    StretchCord,
    /// A mark at a distance along the ray from one peg toward another.
    MarkDistance,
    /// A circle about a peg, by radius or through a second peg.
    DrawCircle,
    /// All meeting points of two cords (as lines) or circles.
    IntersectObjects,
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Op::PlacePeg => "place_peg",
            Op::StretchCord => "stretch_cord",
            Op::MarkDistance => "mark_distance",
            Op::DrawCircle => "draw_circle",
            Op::IntersectObjects => "intersect_objects",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug)]
pub enum Object {
    Point(Point<Cs>),
    Segment(Segment<Cs>),
    Circle(Circle<Cs>),
}

impl Object {
    pub fn kind(&self) -> &'static str {
        match self {
            Object::Point(_) => "point",
            Object::Segment(_) => "segment",
            Object::Circle(_) => "circle",
        }
    }

    /// Exact, coordinate-wise agreement.
    pub fn agrees_with(&self, other: &Object) -> bool {
        match (self, other) {
            (Object::Point(a), Object::Point(b)) => a.coincides(b),
            (Object::Segment(a), Object::Segment(b)) => {
                a.start().coincides(b.start()) && a.end().coincides(b.end())
            }
            (Object::Circle(a), Object::Circle(b)) => {
                a.center().coincides(b.center())
                    && a.radius().compare(b.radius()) == Comparison::Equal
            }
            _ => false,
        }
    }

    fn curve(&self, id: &str) -> Result<Curve<Cs>, TraceError> {
        match self {
            Object::Segment(s) => Ok(Curve::Line(s.line())),
            Object::Circle(c) => Ok(Curve::Circle(c.clone())),
            Object::Point(_) => Err(TraceError::WrongKind {
                id: id.to_string(),
                expected: "cord or circle",
            }),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Step {
    pub op: Op,
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Default)]
pub struct ConstructionTrace {
    steps: Vec<Step>,
    objects: BTreeMap<String, Object>,
    labels: BTreeMap<String, String>,
}

impl ConstructionTrace {
    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn labels(&self) -> &BTreeMap<String, String> {
        &self.labels
    }

    pub fn object(&self, id: &str) -> Option<&Object> {
        self.objects.get(id)
    }

    /// Objects in the order they were produced.
    pub fn objects(&self) -> impl Iterator<Item = (&str, &Object)> + '_ {
        self.steps
            .iter()
            .flat_map(|s| s.outputs.iter())
            .filter_map(|id| self.objects.get(id).map(|o| (id.as_str(), o)))
    }

    pub fn labeled(&self, label: &str) -> Option<&Object> {
        self.labels.get(label).and_then(|id| self.objects.get(id))
    }

    pub fn is_labeled(&self, id: &str) -> bool {
        self.labels.values().any(|v| v == id)
    }

    pub fn labeled_point(&self, label: &str) -> Option<&Point<Cs>> {
        match self.labeled(label)? {
            Object::Point(p) => Some(p),
            _ => None,
        }
    }

    pub fn labeled_segment(&self, label: &str) -> Option<&Segment<Cs>> {
        match self.labeled(label)? {
            Object::Segment(s) => Some(s),
            _ => None,
        }
    }

    pub fn labeled_circle(&self, label: &str) -> Option<&Circle<Cs>> {
        match self.labeled(label)? {
            Object::Circle(c) => Some(c),
            _ => None,
        }
    }

    pub fn to_json(&self) -> String {
        self.to_json_with_digits(DEFAULT_SIDECAR_DIGITS)
    }

    /// JSON document with exact values and a decimal sidecar of `digits`
    /// significant digits.
    pub fn to_json_with_digits(&self, digits: u32) -> String {
        let steps = self
            .steps
            .iter()
            .map(|s| StepDoc {
                step: s.clone(),
                values: s
                    .outputs
                    .iter()
                    .map(|id| {
                        (
                            id.clone(),
                            ObjectDoc::from_object(&self.objects[id], digits),
                        )
                    })
                    .collect(),
            })
            .collect();
        let doc = TraceDoc {
            steps,
            labels: self.labels.clone(),
        };
        serde_json::to_string_pretty(&doc).expect("trace document serializes")
    }

    /// Loads a trace document. Recorded values are parsed back exactly; use
    /// [`replay`] to check them against re-execution.
    pub fn from_json(text: &str) -> Result<Self, TraceError> {
        let doc: TraceDoc =
            serde_json::from_str(text).map_err(|e| TraceError::Json(e.to_string()))?;
        let mut trace = ConstructionTrace::default();
        for sd in doc.steps {
            for id in &sd.step.outputs {
                let rec = sd
                    .values
                    .get(id)
                    .ok_or_else(|| TraceError::Json(format!("no recorded value for `{id}`")))?;
                if trace.objects.contains_key(id) {
                    return Err(TraceError::DuplicateId(id.clone()));
                }
                trace.objects.insert(id.clone(), rec.to_object()?);
            }
            trace.steps.push(sd.step);
        }
        for (label, id) in &doc.labels {
            if !trace.objects.contains_key(id) {
                return Err(TraceError::DanglingLabel {
                    label: label.clone(),
                    id: id.clone(),
                });
            }
        }
        trace.labels = doc.labels;
        Ok(trace)
    }
}

#[derive(Serialize, Deserialize)]
struct TraceDoc {
    steps: Vec<StepDoc>,
    #[serde(default)]
    labels: BTreeMap<String, String>,
}

#[derive(Serialize, Deserialize)]
struct StepDoc {
    #[serde(flatten)]
    step: Step,
    values: BTreeMap<String, ObjectDoc>,
}

#[derive(Serialize, Deserialize)]
struct PointDoc {
    x: String,
    y: String,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum ObjectDoc {
    Point {
        x: String,
        y: String,
        decimal: [String; 2],
    },
    Segment {
        start: PointDoc,
        end: PointDoc,
    },
    Circle {
        center: PointDoc,
        radius: String,
        decimal: String,
    },
}

fn point_doc(p: &Point<Cs>) -> PointDoc {
    PointDoc {
        x: p.x.to_string(),
        y: p.y.to_string(),
    }
}

fn parse_scalar(text: &str) -> Result<Cs, TraceError> {
    text.parse()
        .map_err(|e: ScalarError| TraceError::Json(format!("`{text}`: {e}")))
}

fn parse_point(doc: &PointDoc) -> Result<Point<Cs>, TraceError> {
    Ok(Point::new(parse_scalar(&doc.x)?, parse_scalar(&doc.y)?))
}

impl ObjectDoc {
    fn from_object(obj: &Object, digits: u32) -> Self {
        match obj {
            Object::Point(p) => ObjectDoc::Point {
                x: p.x.to_string(),
                y: p.y.to_string(),
                decimal: [p.x.to_decimal(digits), p.y.to_decimal(digits)],
            },
            Object::Segment(s) => ObjectDoc::Segment {
                start: point_doc(s.start()),
                end: point_doc(s.end()),
            },
            Object::Circle(c) => ObjectDoc::Circle {
                center: point_doc(c.center()),
                radius: c.radius().to_string(),
                decimal: c.radius().to_decimal(digits),
            },
        }
    }

    fn to_object(&self) -> Result<Object, TraceError> {
        Ok(match self {
            ObjectDoc::Point { x, y, .. } => {
                Object::Point(Point::new(parse_scalar(x)?, parse_scalar(y)?))
            }
            ObjectDoc::Segment { start, end } => {
                Object::Segment(Segment::new(parse_point(start)?, parse_point(end)?)?)
            }
            ObjectDoc::Circle { center, radius, .. } => {
                Object::Circle(Circle::new(parse_point(center)?, parse_scalar(radius)?)?)
            }
        })
    }
}

/// Executes one step against already-produced objects.
fn execute(
    index: usize,
    step: &Step,
    objects: &BTreeMap<String, Object>,
) -> Result<Vec<Object>, TraceError> {
    let get = |i: usize| -> Result<&Object, TraceError> {
        let id = &step.inputs[i];
        objects
            .get(id)
            .ok_or_else(|| TraceError::UnknownObject(id.clone()))
    };
    let point = |i: usize| -> Result<&Point<Cs>, TraceError> {
        match get(i)? {
            Object::Point(p) => Ok(p),
            _ => Err(TraceError::WrongKind {
                id: step.inputs[i].clone(),
                expected: "point",
            }),
        }
    };
    let param = |name: &'static str| -> Result<Cs, TraceError> {
        let text = step
            .params
            .get(name)
            .ok_or(TraceError::MissingParam { step: index, name })?;
        text.parse().map_err(|e: ScalarError| TraceError::BadParam {
            step: index,
            name: name.to_string(),
            reason: e.to_string(),
        })
    };
    let arity = |expected: &'static str, ok: bool| -> Result<(), TraceError> {
        if ok {
            Ok(())
        } else {
            Err(TraceError::InputCount {
                step: index,
                expected,
                got: step.inputs.len(),
            })
        }
    };
    let n = step.inputs.len();
    match step.op {
        Op::PlacePeg => {
            arity("0", n == 0)?;
            Ok(vec![Object::Point(Point::new(param("x")?, param("y")?))])
        }
        Op::StretchCord => {
            arity("2", n == 2)?;
            let (a, b) = (point(0)?, point(1)?);
            if step.params.contains_key("slack") {
                let (north, south) = cord_stretch_midpoint(a, b, &param("slack")?)?;
                Ok(vec![Object::Point(north), Object::Point(south)])
            } else {
                Ok(vec![Object::Segment(Segment::new(a.clone(), b.clone())?)])
            }
        }
        Op::MarkDistance => {
            arity("2", n == 2)?;
            Ok(vec![Object::Point(mark_on_line(
                point(0)?,
                point(1)?,
                &param("distance")?,
            )?)])
        }
        Op::DrawCircle => {
            arity("1 or 2", n == 1 || n == 2)?;
            let center = point(0)?;
            let radius = if n == 2 {
                let d2 = center.distance_sq(point(1)?);
                Scalar::checked_sqrt(&d2)?
            } else {
                param("radius")?
            };
            Ok(vec![Object::Circle(Circle::new(center.clone(), radius)?)])
        }
        Op::IntersectObjects => {
            arity("2", n == 2)?;
            let a = get(0)?.curve(&step.inputs[0])?;
            let b = get(1)?.curve(&step.inputs[1])?;
            Ok(intersect(&a, &b)?.into_iter().map(Object::Point).collect())
        }
    }
}

/// Re-executes every step and checks each output against its recorded value.
/// Returns the freshly computed objects keyed by id.
pub fn replay(trace: &ConstructionTrace) -> Result<BTreeMap<String, Object>, TraceError> {
    let mut fresh = BTreeMap::new();
    for (i, step) in trace.steps.iter().enumerate() {
        let produced = execute(i, step, &fresh)?;
        if produced.len() != step.outputs.len() {
            return Err(TraceError::OutputCount {
                step: i,
                got: produced.len(),
                recorded: step.outputs.len(),
            });
        }
        for (id, obj) in step.outputs.iter().zip(produced) {
            let recorded = trace
                .objects
                .get(id)
                .ok_or_else(|| TraceError::UnknownObject(id.clone()))?;
            if !obj.agrees_with(recorded) {
                return Err(TraceError::Mismatch {
                    step: i,
                    id: id.clone(),
                });
            }
            if fresh.insert(id.clone(), obj).is_some() {
                return Err(TraceError::DuplicateId(id.clone()));
            }
        }
    }
    for (label, id) in &trace.labels {
        if !fresh.contains_key(id) {
            return Err(TraceError::DanglingLabel {
                label: label.clone(),
                id: id.clone(),
            });
        }
    }
    Ok(fresh)
}

/// Appends primitive steps, executing each one immediately.
#[derive(Debug, Default)]
pub struct TraceBuilder {
    trace: ConstructionTrace,
    counters: [usize; 3],
}

impl TraceBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    fn fresh_id(&mut self, obj: &Object) -> String {
        let (slot, prefix) = match obj {
            Object::Point(_) => (0, "P"),
            Object::Segment(_) => (1, "S"),
            Object::Circle(_) => (2, "C"),
        };
        self.counters[slot] += 1;
        format!("{prefix}{}", self.counters[slot])
    }

    fn push(
        &mut self,
        op: Op,
        inputs: &[&str],
        params: &[(&str, &Cs)],
    ) -> Result<Vec<String>, TraceError> {
        let step = Step {
            op,
            inputs: inputs.iter().map(|s| s.to_string()).collect(),
            outputs: Vec::new(),
            params: params
                .iter()
                .map(|(k, v)| (k.to_string(), v.to_string()))
                .collect(),
        };
        let produced = execute(self.trace.steps.len(), &step, &self.trace.objects)?;
        let mut step = step;
        for obj in produced {
            let id = self.fresh_id(&obj);
            step.outputs.push(id.clone());
            self.trace.objects.insert(id, obj);
        }
        let ids = step.outputs.clone();
        self.trace.steps.push(step);
        Ok(ids)
    }

    pub fn peg(&mut self, p: &Point<Cs>) -> Result<String, TraceError> {
        Ok(self
            .push(Op::PlacePeg, &[], &[("x", &p.x), ("y", &p.y)])?
            .remove(0))
    }

    pub fn peg_at(&mut self, x: Cs, y: Cs) -> Result<String, TraceError> {
        self.peg(&Point::new(x, y))
    }

    pub fn cord(&mut self, a: &str, b: &str) -> Result<String, TraceError> {
        Ok(self.push(Op::StretchCord, &[a, b], &[])?.remove(0))
    }

    /// Apexes `(north, south)` of a cord pulled out by its midpoint.
    pub fn stretch(
        &mut self,
        a: &str,
        b: &str,
        slack: &Cs,
    ) -> Result<(String, String), TraceError> {
        let mut ids = self.push(Op::StretchCord, &[a, b], &[("slack", slack)])?;
        let south = ids.pop().expect("two apexes");
        Ok((ids.pop().expect("two apexes"), south))
    }

    pub fn mark(
        &mut self,
        origin: &str,
        toward: &str,
        distance: &Cs,
    ) -> Result<String, TraceError> {
        Ok(self
            .push(
                Op::MarkDistance,
                &[origin, toward],
                &[("distance", distance)],
            )?
            .remove(0))
    }

    pub fn circle(&mut self, center: &str, radius: &Cs) -> Result<String, TraceError> {
        Ok(self
            .push(Op::DrawCircle, &[center], &[("radius", radius)])?
            .remove(0))
    }

    pub fn circle_through(&mut self, center: &str, through: &str) -> Result<String, TraceError> {
        Ok(self
            .push(Op::DrawCircle, &[center, through], &[])?
            .remove(0))
    }

    /// All meeting points, in lexicographic order.
    pub fn intersect(&mut self, a: &str, b: &str) -> Result<Vec<String>, TraceError> {
        self.push(Op::IntersectObjects, &[a, b], &[])
    }

    pub fn label(&mut self, name: &str, id: &str) -> Result<(), TraceError> {
        if !self.trace.objects.contains_key(id) {
            return Err(TraceError::UnknownObject(id.to_string()));
        }
        self.trace.labels.insert(name.to_string(), id.to_string());
        Ok(())
    }

    pub fn object(&self, id: &str) -> Result<&Object, TraceError> {
        self.trace
            .objects
            .get(id)
            .ok_or_else(|| TraceError::UnknownObject(id.to_string()))
    }

    pub fn point(&self, id: &str) -> Result<&Point<Cs>, TraceError> {
        match self.object(id)? {
            Object::Point(p) => Ok(p),
            _ => Err(TraceError::WrongKind {
                id: id.to_string(),
                expected: "point",
            }),
        }
    }

    pub fn segment(&self, id: &str) -> Result<&Segment<Cs>, TraceError> {
        match self.object(id)? {
            Object::Segment(s) => Ok(s),
            _ => Err(TraceError::WrongKind {
                id: id.to_string(),
                expected: "segment",
            }),
        }
    }

    pub fn finish(self) -> ConstructionTrace {
        self.trace
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> Cs {
        text.parse().unwrap()
    }

    fn sample() -> ConstructionTrace {
        let mut t = TraceBuilder::new();
        let a = t.peg_at(s("0"), s("0")).unwrap();
        let b = t.peg_at(s("2"), s("0")).unwrap();
        let (n, south) = t.stretch(&a, &b, &s("3/4")).unwrap();
        let ns = t.cord(&n, &south).unwrap();
        let ab = t.cord(&a, &b).unwrap();
        let foot = t.intersect(&ns, &ab).unwrap();
        let c = t.circle(&a, &s("sqrt(2)")).unwrap();
        let hits = t.intersect(&c, &ns).unwrap();
        let m = t.mark(&a, &hits[1], &s("1")).unwrap();
        t.label("foot", &foot[0]).unwrap();
        t.label("upper", &hits[1]).unwrap();
        t.label("mark", &m).unwrap();
        t.finish()
    }

    #[test]
    fn builder_records_exact_values() {
        let t = sample();
        assert!(t
            .labeled_point("foot")
            .unwrap()
            .coincides(&Point::new(s("1"), s("0"))));
        assert!(t
            .labeled_point("upper")
            .unwrap()
            .coincides(&Point::new(s("1"), s("1"))));
        assert!(t
            .labeled_point("mark")
            .unwrap()
            .coincides(&Point::new(s("sqrt(2)/2"), s("sqrt(2)/2"))));
    }

    #[test]
    fn json_round_trip_replays() {
        let t = sample();
        let json = t.to_json();
        let back = ConstructionTrace::from_json(&json).unwrap();
        let fresh = replay(&back).unwrap();
        for (id, obj) in t.objects() {
            assert!(fresh[id].agrees_with(obj), "{id}");
        }
        assert_eq!(back.to_json(), json);
    }

    #[test]
    fn tampered_values_are_caught() {
        let json = sample().to_json().replace("\"sqrt(2)/2\"", "\"7/10\"");
        let back = ConstructionTrace::from_json(&json).unwrap();
        assert!(matches!(replay(&back), Err(TraceError::Mismatch { .. })));
    }

    #[test]
    fn forward_references_rejected() {
        let mut t = TraceBuilder::new();
        assert_eq!(
            t.cord("P1", "P2").unwrap_err(),
            TraceError::UnknownObject("P1".into())
        );
        let a = t.peg_at(s("0"), s("0")).unwrap();
        assert!(matches!(
            t.intersect(&a, &a),
            Err(TraceError::WrongKind { .. })
        ));
    }
}
