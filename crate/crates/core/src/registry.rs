//! Every operation under a stable kebab-case name with typed parameters, for
//! the command line and the script language.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::analysis::{self, AnalysisError};
use crate::constructions::{self as c, ConstructionError, PythagoreanTriple};
use crate::geometry::trace::ConstructionTrace;
use crate::geometry::{Point, Segment};
use crate::scalar::rational::{integer, Rational};
use crate::scalar::{ConstructibleScalar as Cs, ScalarError};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum RegistryError {
    #[error("unknown operation `{0}`")]
    UnknownOperation(String),
    #[error("{op}: {reason}")]
    Arity { op: String, reason: String },
    #[error("{op}: argument `{param}`: {reason}")]
    BadArgument {
        op: String,
        param: String,
        reason: String,
    },
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParamKind {
    Scalar,
    Point,
    Text,
}

impl fmt::Display for ParamKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ParamKind::Scalar => "scalar",
            ParamKind::Point => "point",
            ParamKind::Text => "text",
        })
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ParamSpec {
    pub name: &'static str,
    pub kind: ParamKind,
    pub default: Option<&'static str>,
}

const fn req(name: &'static str, kind: ParamKind) -> ParamSpec {
    ParamSpec {
        name,
        kind,
        default: None,
    }
}

const fn opt(name: &'static str, kind: ParamKind, default: &'static str) -> ParamSpec {
    ParamSpec {
        name,
        kind,
        default: Some(default),
    }
}

#[derive(Clone, Debug)]
pub enum Value {
    Scalar(Cs),
    Point(Point<Cs>),
    Segment(Segment<Cs>),
    Text(String),
}

impl Value {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Value::Scalar(_) => "scalar",
            Value::Point(_) => "point",
            Value::Segment(_) => "segment",
            Value::Text(_) => "text",
        }
    }

    /// Exact rendering plus a decimal approximation where one applies.
    pub fn describe(&self, digits: u32) -> String {
        match self {
            Value::Scalar(v) => {
                let exact = v.to_string();
                let dec = v.to_decimal(digits);
                if exact == dec || v.as_rational().is_some_and(|q| q.is_integer()) {
                    exact
                } else {
                    format!("{exact} ≈ {dec}")
                }
            }
            Value::Point(p) => format!("({}, {})", p.x, p.y),
            Value::Segment(s) => format!(
                "({}, {}) → ({}, {})",
                s.start().x,
                s.start().y,
                s.end().x,
                s.end().y
            ),
            Value::Text(t) => t.clone(),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Scalar(v) => write!(f, "{v}"),
            other => f.write_str(&other.describe(0)),
        }
    }
}

/// Result of running an operation.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub value: Value,
    pub fields: BTreeMap<String, Value>,
    pub trace: Option<ConstructionTrace>,
}

impl Outcome {
    fn new(value: Value) -> Self {
        Outcome {
            value,
            fields: BTreeMap::new(),
            trace: None,
        }
    }

    fn field(mut self, name: &str, v: Value) -> Self {
        self.fields.insert(name.to_string(), v);
        self
    }

    fn traced(mut self, trace: ConstructionTrace) -> Self {
        self.trace = Some(trace);
        self
    }

    /// The primary value, or a named field.
    pub fn get(&self, field: Option<&str>) -> Option<&Value> {
        match field {
            None | Some("value") => Some(&self.value),
            Some(f) => self.fields.get(f),
        }
    }
}

/// Arguments after defaults are applied, keyed by parameter name.
pub struct Args<'a> {
    op: &'a str,
    values: BTreeMap<String, Value>,
    pub precision: u32,
}

impl Args<'_> {
    fn bad(&self, param: &str, reason: impl Into<String>) -> RegistryError {
        RegistryError::BadArgument {
            op: self.op.to_string(),
            param: param.to_string(),
            reason: reason.into(),
        }
    }

    fn scalar(&self, name: &str) -> Result<Cs, RegistryError> {
        match self.values.get(name) {
            Some(Value::Scalar(v)) => Ok(v.clone()),
            Some(other) => Err(self.bad(
                name,
                format!("expected a scalar, got a {}", other.kind_name()),
            )),
            None => Err(self.bad(name, "missing")),
        }
    }

    fn rational(&self, name: &str) -> Result<Rational, RegistryError> {
        self.scalar(name)?
            .as_rational()
            .ok_or_else(|| self.bad(name, "expected a rational number"))
    }

    fn integer(&self, name: &str) -> Result<u64, RegistryError> {
        let q = self.rational(name)?;
        if !q.is_integer() {
            return Err(self.bad(name, "expected a whole number"));
        }
        u64::try_from(q.to_integer())
            .map_err(|_| self.bad(name, "expected a nonnegative whole number"))
    }

    fn point(&self, name: &str) -> Result<Point<Cs>, RegistryError> {
        match self.values.get(name) {
            Some(Value::Point(p)) => Ok(p.clone()),
            Some(other) => Err(self.bad(
                name,
                format!("expected a point, got a {}", other.kind_name()),
            )),
            None => Err(self.bad(name, "missing")),
        }
    }

    fn text(&self, name: &str) -> Result<String, RegistryError> {
        match self.values.get(name) {
            Some(Value::Text(t)) => Ok(t.clone()),
            Some(Value::Scalar(v)) => Ok(v.to_string()),
            Some(other) => {
                Err(self.bad(name, format!("expected text, got a {}", other.kind_name())))
            }
            None => Err(self.bad(name, "missing")),
        }
    }
}

type Runner = fn(&Args) -> Result<Outcome, RegistryError>;

pub struct Operation {
    pub name: &'static str,
    pub summary: &'static str,
    pub params: &'static [ParamSpec],
    run: Runner,
}

impl fmt::Debug for Operation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Operation")
            .field("name", &self.name)
            .finish()
    }
}

impl Operation {
    pub fn param(&self, name: &str) -> Option<&ParamSpec> {
        self.params.iter().find(|p| p.name == name)
    }

    /// Checks that `given` names can bind: no unknown or repeated names, and
    /// every parameter without a default is present.
    pub fn check_arity(&self, given: &[&str]) -> Result<(), RegistryError> {
        let arity = |reason: String| RegistryError::Arity {
            op: self.name.to_string(),
            reason,
        };
        for (i, g) in given.iter().enumerate() {
            if self.param(g).is_none() {
                return Err(arity(format!("no parameter named `{g}`")));
            }
            if given[..i].contains(g) {
                return Err(arity(format!("`{g}` given twice")));
            }
        }
        for p in self.params {
            if p.default.is_none() && !given.contains(&p.name) {
                return Err(arity(format!("missing required argument `{}`", p.name)));
            }
        }
        Ok(())
    }

    /// Runs with the given named values; absent parameters take defaults.
    pub fn invoke(
        &self,
        given: BTreeMap<String, Value>,
        precision: u32,
    ) -> Result<Outcome, RegistryError> {
        let names: Vec<&str> = given.keys().map(String::as_str).collect();
        self.check_arity(&names)?;
        let mut values = given;
        for p in self.params {
            if !values.contains_key(p.name) {
                let text = p.default.expect("arity checked");
                let v = parse_value(p.kind, text).map_err(|reason| RegistryError::BadArgument {
                    op: self.name.to_string(),
                    param: p.name.to_string(),
                    reason,
                })?;
                values.insert(p.name.to_string(), v);
            }
        }
        for p in self.params {
            let v = &values[p.name];
            let ok = matches!(
                (p.kind, v),
                (ParamKind::Scalar, Value::Scalar(_))
                    | (ParamKind::Point, Value::Point(_))
                    | (ParamKind::Text, Value::Text(_) | Value::Scalar(_))
            );
            if !ok {
                return Err(RegistryError::BadArgument {
                    op: self.name.to_string(),
                    param: p.name.to_string(),
                    reason: format!("expected a {}, got a {}", p.kind, v.kind_name()),
                });
            }
        }
        let args = Args {
            op: self.name,
            values,
            precision: precision.max(1),
        };
        (self.run)(&args)
    }
}

/// Parses a command-line style argument: an exact expression, a point
/// `(x, y)` or `x,y`, or plain text.
pub fn parse_value(kind: ParamKind, text: &str) -> Result<Value, String> {
    let text = text.trim();
    match kind {
        ParamKind::Scalar => text
            .parse::<Cs>()
            .map(Value::Scalar)
            .map_err(|e: ScalarError| e.to_string()),
        ParamKind::Point => {
            let inner = text
                .strip_prefix('(')
                .and_then(|t| t.strip_suffix(')'))
                .unwrap_or(text);
            let parts = split_top_level(inner);
            let [x, y] = parts.as_slice() else {
                return Err(format!("expected a point `(x, y)`, got `{text}`"));
            };
            let x: Cs = x.parse().map_err(|e: ScalarError| e.to_string())?;
            let y: Cs = y.parse().map_err(|e: ScalarError| e.to_string())?;
            Ok(Value::Point(Point::new(x, y)))
        }
        ParamKind::Text => Ok(Value::Text(text.to_string())),
    }
}

/// Splits on commas that are not inside parentheses.
fn split_top_level(text: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in text.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(text[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(text[start..].trim());
    parts
}

use ParamKind::{Point as P, Scalar as S, Text as T};

static OPERATIONS: &[Operation] = &[
    Operation {
        name: "east-west-from-shadow",
        summary: "east-west chord through the two shadow crossings of a circle about a pole",
        params: &[
            opt("pole", P, "(0, 0)"),
            opt("radius", S, "1"),
            req("first", P),
            req("second", P),
        ],
        run: |a| {
            let r = c::east_west_from_shadow(
                &a.point("pole")?,
                &a.scalar("radius")?,
                &a.point("first")?,
                &a.point("second")?,
            )?;
            Ok(segment_outcome(r.segment, "west", "east").traced(r.trace))
        },
    },
    Operation {
        name: "north-south-perpendicular",
        summary: "perpendicular bisector of a cord by stretching it out at the midpoint",
        params: &[req("start", P), req("end", P), opt("slack", S, "3/4")],
        run: |a| {
            let ew = Segment::new(a.point("start")?, a.point("end")?)
                .map_err(ConstructionError::from)?;
            let r = c::north_south_perpendicular_with_slack(&ew, &a.scalar("slack")?)?;
            Ok(segment_outcome(r.segment, "south", "north").traced(r.trace))
        },
    },
    Operation {
        name: "compass-perpendicular",
        summary: "perpendicular at a point by arcs from two equidistant flank points",
        params: &[
            opt("point", P, "(0, 0)"),
            opt("direction", P, "(1, 0)"),
            req("radius", S),
            req("flank", S),
        ],
        run: |a| {
            let r = c::compass_perpendicular(
                &a.point("point")?,
                &a.point("direction")?,
                &a.scalar("radius")?,
                &a.scalar("flank")?,
            )?;
            Ok(segment_outcome(r.segment, "start", "end").traced(r.trace))
        },
    },
    Operation {
        name: "nyancana-rectangle",
        summary: "rectangle whose corners are turned with a cord marked by a Pythagorean triple",
        params: &[
            opt("origin", P, "(0, 0)"),
            opt("east", P, "(1, 0)"),
            req("width", S),
            req("length", S),
            opt("a", S, "3"),
            opt("b", S, "4"),
            opt("c", S, "5"),
            opt("scale", S, "1"),
        ],
        run: |a| {
            let triple = PythagoreanTriple {
                a: a.integer("a")?,
                b: a.integer("b")?,
                c: a.integer("c")?,
                attested_in: Vec::new(),
            };
            let r = c::nyancana_rectangle(
                &a.point("origin")?,
                &a.point("east")?,
                &a.scalar("width")?,
                &a.scalar("length")?,
                &triple,
                &a.scalar("scale")?,
            )?;
            let area =
                crate::geometry::area_of_polygon(&r.vertices).map_err(ConstructionError::from)?;
            let mut out = Outcome::new(Value::Scalar(area));
            for (i, v) in r.vertices.iter().enumerate() {
                out = out.field(&format!("vertex_{}", i + 1), Value::Point(v.clone()));
            }
            Ok(out.traced(r.trace))
        },
    },
    Operation {
        name: "triple-catalog",
        summary: "the five triples of the manuals with their attestations",
        params: &[],
        run: |_| {
            let lines: Vec<String> = c::triple_catalog()
                .iter()
                .map(|t| {
                    format!(
                        "({}, {}, {})  {}",
                        t.a,
                        t.b,
                        t.c,
                        crate::texts::join(&t.attested_in, ", ")
                    )
                })
                .collect();
            Ok(Outcome::new(Value::Text(lines.join("\n"))))
        },
    },
    Operation {
        name: "sum-of-squares",
        summary: "side of the square equal to two squares together",
        params: &[req("a", S), req("b", S)],
        run: |a| constructed(c::sum_of_squares_side(&a.scalar("a")?, &a.scalar("b")?)?),
    },
    Operation {
        name: "difference-of-squares",
        summary: "side of the square equal to the larger square less the smaller",
        params: &[req("a", S), req("b", S)],
        run: |a| {
            constructed(c::difference_of_squares_side(
                &a.scalar("a")?,
                &a.scalar("b")?,
            )?)
        },
    },
    Operation {
        name: "rectangle-to-square",
        summary: "side of the square equal in area to a rectangle",
        params: &[req("length", S), req("width", S)],
        run: |a| {
            constructed(c::rectangle_to_square(
                &a.scalar("length")?,
                &a.scalar("width")?,
            )?)
        },
    },
    Operation {
        name: "sqrt-n-altitude",
        summary: "square root of n as the altitude of an isosceles triangle",
        params: &[req("n", S)],
        run: |a| {
            let r = c::sqrt_n_altitude(&a.rational("n")?)?;
            Ok(Outcome::new(Value::Scalar(r.altitude))
                .field("base", Value::Scalar(Cs::from_rational(r.base)))
                .field("equal_side", Value::Scalar(Cs::from_rational(r.equal_side)))
                .traced(r.trace))
        },
    },
    Operation {
        name: "augment-unit",
        summary: "scale factor enlarging an altar from one area to another",
        params: &[req("from", S), req("to", S)],
        run: |a| {
            let r = c::augment_unit(&a.rational("from")?, &a.rational("to")?)?;
            let squared = r.value.square();
            Ok(Outcome::new(Value::Scalar(r.value))
                .field("area_ratio", Value::Scalar(squared))
                .traced(r.trace))
        },
    },
    Operation {
        name: "dronaciti-partition",
        summary: "split a square into squares of one tenth and nine tenths of its area",
        params: &[req("side", S)],
        run: |a| {
            let r = c::dronaciti_partition(&a.scalar("side")?)?;
            Ok(Outcome::new(Value::Scalar(r.small_side.clone()))
                .field("small_side", Value::Scalar(r.small_side))
                .field("large_side", Value::Scalar(r.large_side))
                .traced(r.trace))
        },
    },
    Operation {
        name: "circle-from-square",
        summary: "radius of the circle equal in area to a square",
        params: &[req("side", S)],
        run: |a| {
            let r = c::circle_from_square(&a.scalar("side")?)?;
            let diameter = &r.value * &Cs::integer(2);
            Ok(Outcome::new(Value::Scalar(r.value))
                .field("diameter", Value::Scalar(diameter))
                .traced(r.trace))
        },
    },
    Operation {
        name: "square-from-circle",
        summary: "side of the square equal in area to a circle (method: fine or coarse)",
        params: &[req("diameter", S), opt("method", T, "fine")],
        run: |a| {
            let method = a
                .text("method")?
                .parse()
                .map_err(|e: String| a.bad("method", e))?;
            let side = c::square_from_circle(&a.scalar("diameter")?, method)?;
            let area = side.square();
            Ok(Outcome::new(Value::Scalar(side)).field("area", Value::Scalar(area)))
        },
    },
    Operation {
        name: "maitrayaniya-radius",
        summary: "radius of the circle for a square under the 9/16 rule",
        params: &[req("side", S)],
        run: |a| {
            Ok(Outcome::new(Value::Scalar(c::maitrayaniya_radius(
                &a.scalar("side")?,
            )?)))
        },
    },
    Operation {
        name: "sqrt2-savisesha",
        summary: "the dvikaraṇī with its excess: 1 + 1/3 + 1/(3·4) − 1/(3·4·34)",
        params: &[],
        run: |_| Ok(Outcome::new(Value::Scalar(c::sqrt2_savisesha()))),
    },
    Operation {
        name: "square-area-table",
        summary: "areas of squares on whole and fractional sides",
        params: &[opt("max_n", S, "4"), opt("fractions", T, "1/2, 1/3, 1/4")],
        run: |a| {
            let fractions = split_top_level(&a.text("fractions")?)
                .into_iter()
                .filter(|f| !f.is_empty())
                .map(|f| {
                    crate::scalar::rational::parse_ratio(f)
                        .ok_or_else(|| a.bad("fractions", format!("`{f}` is not a ratio")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            let rows = c::square_area_table(a.integer("max_n")?, &fractions)?;
            let lines: Vec<String> = rows
                .iter()
                .map(|(s, ar)| {
                    format!(
                        "{} → {}",
                        crate::scalar::rational::format_ratio(s),
                        crate::scalar::rational::format_ratio(ar)
                    )
                })
                .collect();
            Ok(Outcome::new(Value::Text(lines.join("\n"))))
        },
    },
    Operation {
        name: "diagonal-theorem-check",
        summary: "checks that the diagonal of a rectangle makes both sides' squares together",
        params: &[req("length", S), req("width", S)],
        run: |a| {
            let verdict =
                c::diagonal_rectangle_theorem_check(&a.scalar("length")?, &a.scalar("width")?);
            Ok(Outcome::new(Value::Text(format!("{verdict:?}"))))
        },
    },
    Operation {
        name: "compare-sqrt2",
        summary: "error and digit agreement of a candidate value of √2",
        params: &[req("candidate", S)],
        run: |a| {
            let r = analysis::compare_sqrt2(&a.scalar("candidate")?, a.precision)?;
            let abs = r
                .absolute_error
                .expect("scalar reports carry absolute error");
            Ok(
                Outcome::new(Value::Scalar(Cs::integer(r.agreement_digits as i64)))
                    .field(
                        "agreement_digits",
                        Value::Scalar(Cs::integer(r.agreement_digits as i64)),
                    )
                    .field("absolute_error", Value::Text(abs.to_scientific(5)))
                    .field(
                        "relative_error",
                        Value::Text(r.relative_error.to_scientific(5)),
                    ),
            )
        },
    },
    Operation {
        name: "implied-pi",
        summary: "π implied by a catalog rule (circling, fine-squaring, ...)",
        params: &[req("rule", T)],
        run: |a| {
            let rec = catalog_record(a)?;
            let iv = analysis::implied_pi(&rec, a.precision)?;
            Ok(Outcome::new(Value::Text(iv.to_decimal(a.precision))))
        },
    },
    Operation {
        name: "area-error",
        summary: "relative area error of a catalog rule, in percent",
        params: &[req("rule", T)],
        run: |a| {
            let rec = catalog_record(a)?;
            let r = analysis::area_error(&rec, a.precision)?;
            let pct = r.relative_error.scale(&integer(100));
            let area = r.constructed_area.expect("geometric reports carry an area");
            Ok(Outcome::new(Value::Text(pct.to_fixed(4)))
                .field("area", Value::Text(area.to_decimal(a.precision)))
                .field(
                    "agreement_digits",
                    Value::Scalar(Cs::integer(r.agreement_digits as i64)),
                ))
        },
    },
    Operation {
        name: "generate-triples",
        summary: "all primitive Pythagorean triples up to a hypotenuse limit",
        params: &[opt("limit", S, "50")],
        run: |a| {
            let lines: Vec<String> = analysis::generate_triples(a.integer("limit")?)
                .iter()
                .map(|t| format!("({}, {}, {})", t.a, t.b, t.c))
                .collect();
            Ok(Outcome::new(Value::Text(lines.join("\n"))))
        },
    },
];

fn constructed(r: c::Constructed) -> Result<Outcome, RegistryError> {
    Ok(Outcome::new(Value::Scalar(r.value)).traced(r.trace))
}

fn segment_outcome(seg: Segment<Cs>, start: &str, end: &str) -> Outcome {
    let length = seg.length().ok();
    let mut out = Outcome::new(Value::Segment(seg.clone()))
        .field(start, Value::Point(seg.start().clone()))
        .field(end, Value::Point(seg.end().clone()));
    if let Some(l) = length {
        out = out.field("length", Value::Scalar(l));
    }
    out
}

fn catalog_record(a: &Args) -> Result<analysis::ApproximationRecord, RegistryError> {
    let key = a.text("rule")?;
    analysis::comparison_records()
        .into_iter()
        .find(|r| r.key == key)
        .ok_or_else(|| {
            let keys: Vec<String> = analysis::comparison_records()
                .into_iter()
                .map(|r| r.key)
                .collect();
            a.bad(
                "rule",
                format!("unknown rule `{key}` (one of {})", keys.join(", ")),
            )
        })
}

pub fn operations() -> &'static [Operation] {
    OPERATIONS
}

pub fn lookup(name: &str) -> Result<&'static Operation, RegistryError> {
    OPERATIONS
        .iter()
        .find(|op| op.name == name)
        .ok_or_else(|| RegistryError::UnknownOperation(name.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Comparison;

    fn run(name: &str, args: &[(&str, &str)]) -> Result<Outcome, RegistryError> {
        let op = lookup(name)?;
        let mut given = BTreeMap::new();
        for (k, v) in args {
            let kind = op.param(k).map(|p| p.kind).unwrap_or(ParamKind::Text);
            given.insert(k.to_string(), parse_value(kind, v).unwrap());
        }
        op.invoke(given, 20)
    }

    #[test]
    fn names_are_unique_kebab_case() {
        let mut names: Vec<&str> = operations().iter().map(|o| o.name).collect();
        assert!(names.iter().all(|n| n
            .chars()
            .all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '-')));
        names.sort();
        names.dedup();
        assert_eq!(names.len(), operations().len());
    }

    #[test]
    fn defaults_fill_in() {
        let out = run("square-from-circle", &[("diameter", "1")]).unwrap();
        let Value::Scalar(v) = out.value else {
            panic!()
        };
        assert_eq!(v.compare(&Cs::ratio(9785, 11136)), Comparison::Equal);
    }

    #[test]
    fn arity_and_unknown() {
        assert!(matches!(
            run("sum-of-squares", &[("a", "3")]),
            Err(RegistryError::Arity { .. })
        ));
        assert!(matches!(
            run("frobnicate", &[]),
            Err(RegistryError::UnknownOperation(_))
        ));
        assert!(matches!(
            run("sum-of-squares", &[("a", "3"), ("b", "4"), ("z", "1")]),
            Err(RegistryError::Arity { .. })
        ));
    }

    #[test]
    fn construction_errors_surface() {
        assert_eq!(
            run("difference-of-squares", &[("a", "1"), ("b", "1")]).unwrap_err(),
            RegistryError::Construction(ConstructionError::NotLarger)
        );
    }

    #[test]
    fn every_traced_operation_replays() {
        let cases: &[(&str, &[(&str, &str)])] = &[
            (
                "east-west-from-shadow",
                &[
                    ("first", "(sqrt(3)/2, 1/2)"),
                    ("second", "(-sqrt(3)/2, 1/2)"),
                ],
            ),
            (
                "north-south-perpendicular",
                &[("start", "(0,0)"), ("end", "(2,0)")],
            ),
            ("compass-perpendicular", &[("radius", "2"), ("flank", "1")]),
            ("nyancana-rectangle", &[("width", "3"), ("length", "4")]),
            ("sum-of-squares", &[("a", "1"), ("b", "1")]),
            ("difference-of-squares", &[("a", "13"), ("b", "12")]),
            ("rectangle-to-square", &[("length", "4"), ("width", "1")]),
            ("sqrt-n-altitude", &[("n", "7")]),
            ("augment-unit", &[("from", "15/2"), ("to", "17/2")]),
            ("dronaciti-partition", &[("side", "1")]),
            ("circle-from-square", &[("side", "1")]),
        ];
        for (name, args) in cases {
            let out = run(name, args).unwrap();
            let trace = out.trace.expect(name);
            crate::geometry::trace::replay(&trace).unwrap();
        }
    }
}
