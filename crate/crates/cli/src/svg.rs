//! SVG figures of construction traces.
//!
//! Each trace gets its own panel, left to right, scaled to fit. Labeled
//! objects are drawn thick, everything else thin, and every point is a peg.
//! Output is byte-for-byte deterministic.

use std::fmt::Write as _;

use thiserror::Error;

use sulva_core::geometry::trace::Object;
use sulva_core::{ConstructibleScalar as Cs, ConstructionTrace};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum RenderError {
    #[error("nothing to render: no traces given")]
    EmptyTraceSet,
    #[error("invalid render settings: {0}")]
    InvalidSpec(&'static str),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Stroke {
    pub color: String,
    pub width: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RenderSpec {
    /// Size of one panel in SVG user units.
    pub width: f64,
    pub height: f64,
    pub margin: f64,
    pub thick: Stroke,
    pub thin: Stroke,
    pub peg_radius: f64,
    pub peg_color: String,
    /// Print decimal values next to labeled objects.
    pub labels: bool,
    pub label_precision: u32,
}

impl RenderSpec {
    pub fn validate(&self) -> Result<(), RenderError> {
        let positive = |v: f64| v.is_finite() && v > 0.0;
        if !positive(self.width) || !positive(self.height) {
            return Err(RenderError::InvalidSpec("canvas must be positive"));
        }
        if !(self.margin >= 0.0 && 2.0 * self.margin < self.width.min(self.height)) {
            return Err(RenderError::InvalidSpec(
                "margin must fit inside the canvas",
            ));
        }
        if self.label_precision == 0 {
            return Err(RenderError::InvalidSpec(
                "label precision must be at least 1",
            ));
        }
        Ok(())
    }
}

impl Default for RenderSpec {
    fn default() -> Self {
        RenderSpec {
            width: 400.0,
            height: 400.0,
            margin: 40.0,
            thick: Stroke {
                color: "#1a1a1a".into(),
                width: 2.5,
            },
            thin: Stroke {
                color: "#8a8a8a".into(),
                width: 1.0,
            },
            peg_radius: 3.0,
            peg_color: "#7a2e0e".into(),
            labels: true,
            label_precision: 7,
        }
    }
}

// Digits used to place objects; display only.
const PLACEMENT_DIGITS: u32 = 12;

fn approx(v: &Cs) -> f64 {
    v.evaluate(PLACEMENT_DIGITS).to_f64()
}

fn num(v: f64) -> String {
    let s = format!("{v:.3}");
    if s == "-0.000" {
        "0.000".into()
    } else {
        s
    }
}

/// Integers print exactly, everything else as a decimal.
fn label_value(v: &Cs, digits: u32) -> String {
    match v.as_rational() {
        Some(q) if q.is_integer() => q.to_string(),
        _ => v.to_decimal(digits),
    }
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

struct Bounds {
    min_x: f64,
    max_x: f64,
    min_y: f64,
    max_y: f64,
}

impl Bounds {
    fn new() -> Self {
        Bounds {
            min_x: f64::INFINITY,
            max_x: f64::NEG_INFINITY,
            min_y: f64::INFINITY,
            max_y: f64::NEG_INFINITY,
        }
    }

    fn include(&mut self, x: f64, y: f64) {
        self.min_x = self.min_x.min(x);
        self.max_x = self.max_x.max(x);
        self.min_y = self.min_y.min(y);
        self.max_y = self.max_y.max(y);
    }
}

/// Maps construction coordinates into a panel, y pointing up.
struct Frame {
    scale: f64,
    origin_x: f64,
    origin_y: f64,
    min_x: f64,
    max_y: f64,
}

impl Frame {
    fn fit(b: &Bounds, left: f64, spec: &RenderSpec) -> Frame {
        let span_x = (b.max_x - b.min_x).max(1e-9);
        let span_y = (b.max_y - b.min_y).max(1e-9);
        let inner_w = (spec.width - 2.0 * spec.margin).max(1.0);
        let inner_h = (spec.height - 2.0 * spec.margin).max(1.0);
        let scale = (inner_w / span_x).min(inner_h / span_y);
        Frame {
            scale,
            origin_x: left + spec.margin + (inner_w - span_x * scale) / 2.0,
            origin_y: spec.margin + (inner_h - span_y * scale) / 2.0,
            min_x: b.min_x,
            max_y: b.max_y,
        }
    }

    fn x(&self, x: f64) -> String {
        num(self.origin_x + (x - self.min_x) * self.scale)
    }

    fn y(&self, y: f64) -> String {
        num(self.origin_y + (self.max_y - y) * self.scale)
    }

    fn len(&self, d: f64) -> String {
        num(d * self.scale)
    }
}

fn bounds(trace: &ConstructionTrace) -> Bounds {
    let mut b = Bounds::new();
    for (_, obj) in trace.objects() {
        match obj {
            Object::Point(p) => b.include(approx(&p.x), approx(&p.y)),
            Object::Segment(s) => {
                b.include(approx(&s.start().x), approx(&s.start().y));
                b.include(approx(&s.end().x), approx(&s.end().y));
            }
            Object::Circle(c) => {
                let (x, y, r) = (
                    approx(&c.center().x),
                    approx(&c.center().y),
                    approx(c.radius()),
                );
                b.include(x - r, y - r);
                b.include(x + r, y + r);
            }
        }
    }
    if !b.min_x.is_finite() {
        b.include(0.0, 0.0);
    }
    b
}

fn label_names(trace: &ConstructionTrace, id: &str) -> Vec<String> {
    trace
        .labels()
        .iter()
        .filter(|(_, target)| target.as_str() == id)
        .map(|(name, _)| name.clone())
        .collect()
}

fn panel(out: &mut String, index: usize, trace: &ConstructionTrace, spec: &RenderSpec) {
    let f = Frame::fit(&bounds(trace), index as f64 * spec.width, spec);
    let n = index + 1;
    let _ = writeln!(out, "  <g id=\"trace-{n}\">");
    let class = |id: &str| {
        if trace.is_labeled(id) {
            "thick"
        } else {
            "thin"
        }
    };
    let digits = spec.label_precision;
    let mut texts = Vec::new();
    // curves first so pegs sit on top
    for (id, obj) in trace.objects() {
        match obj {
            Object::Segment(s) => {
                let _ = writeln!(
                    out,
                    "    <line id=\"t{n}-{id}\" class=\"{}\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>",
                    class(id),
                    f.x(approx(&s.start().x)),
                    f.y(approx(&s.start().y)),
                    f.x(approx(&s.end().x)),
                    f.y(approx(&s.end().y)),
                );
                if let (Ok(len), Ok(mid)) = (s.length(), s.midpoint()) {
                    texts.push((
                        id,
                        approx(&mid.x),
                        approx(&mid.y),
                        label_value(&len, digits),
                    ));
                }
            }
            Object::Circle(c) => {
                let _ = writeln!(
                    out,
                    "    <circle id=\"t{n}-{id}\" class=\"{}\" cx=\"{}\" cy=\"{}\" r=\"{}\"/>",
                    class(id),
                    f.x(approx(&c.center().x)),
                    f.y(approx(&c.center().y)),
                    f.len(approx(c.radius())),
                );
                let top = approx(&c.center().y) + approx(c.radius());
                texts.push((
                    id,
                    approx(&c.center().x),
                    top,
                    format!("r = {}", label_value(c.radius(), digits)),
                ));
            }
            Object::Point(_) => {}
        }
    }
    for (id, obj) in trace.objects() {
        if let Object::Point(p) = obj {
            let (x, y) = (approx(&p.x), approx(&p.y));
            let _ = writeln!(
                out,
                "    <circle id=\"t{n}-{id}\" class=\"peg\" cx=\"{}\" cy=\"{}\" r=\"{}\"/>",
                f.x(x),
                f.y(y),
                num(spec.peg_radius),
            );
            texts.push((
                id,
                x,
                y,
                format!(
                    "({}, {})",
                    label_value(&p.x, digits),
                    label_value(&p.y, digits)
                ),
            ));
        }
    }
    if spec.labels {
        for (id, x, y, value) in texts {
            let names = label_names(trace, id);
            if names.is_empty() {
                continue;
            }
            let _ = writeln!(
                out,
                "    <text class=\"label\" x=\"{}\" y=\"{}\">{}: {}</text>",
                num(f.origin_x + (x - f.min_x) * f.scale + 5.0),
                num(f.origin_y + (f.max_y - y) * f.scale - 5.0),
                escape(&names.join(", ")),
                escape(&value),
            );
        }
    }
    out.push_str("  </g>\n");
}

/// Draws `traces` side by side.
pub fn render_svg(traces: &[&ConstructionTrace], spec: &RenderSpec) -> Result<String, RenderError> {
    spec.validate()?;
    if traces.is_empty() {
        return Err(RenderError::EmptyTraceSet);
    }
    let total_w = spec.width * traces.len() as f64;
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">",
        w = num(total_w),
        h = num(spec.height),
    );
    let _ = writeln!(
        out,
        "  <style>.thick{{fill:none;stroke:{};stroke-width:{}}} .thin{{fill:none;stroke:{};stroke-width:{}}} .peg{{fill:{};stroke:none}} .label{{font:11px serif;fill:#333}}</style>",
        spec.thick.color,
        num(spec.thick.width),
        spec.thin.color,
        num(spec.thin.width),
        spec.peg_color,
    );
    let _ = writeln!(
        out,
        "  <rect width=\"{}\" height=\"{}\" fill=\"#ffffff\"/>",
        num(total_w),
        num(spec.height)
    );
    for (i, t) in traces.iter().enumerate() {
        panel(&mut out, i, t, spec);
    }
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use sulva_core::constructions::circle_from_square;

    #[test]
    fn empty_set_is_an_error() {
        assert_eq!(
            render_svg(&[], &RenderSpec::default()),
            Err(RenderError::EmptyTraceSet)
        );
    }

    #[test]
    fn deterministic_with_classes() {
        let r = circle_from_square(&Cs::integer(1)).unwrap();
        let spec = RenderSpec::default();
        let a = render_svg(&[&r.trace, &r.trace], &spec).unwrap();
        let b = render_svg(&[&r.trace, &r.trace], &spec).unwrap();
        assert_eq!(a, b);
        assert!(a.contains("class=\"thick\"") && a.contains("class=\"peg\""));
        assert!(a.contains("id=\"trace-2\""));
        assert!(a.contains("0.5690356"));
        let quiet = render_svg(
            &[&r.trace],
            &RenderSpec {
                labels: false,
                ..spec
            },
        )
        .unwrap();
        assert!(!quiet.contains("<text"));
    }

    #[test]
    fn bad_specs_are_rejected() {
        let r = circle_from_square(&Cs::integer(1)).unwrap();
        for spec in [
            RenderSpec {
                width: 0.0,
                ..RenderSpec::default()
            },
            RenderSpec {
                height: -5.0,
                ..RenderSpec::default()
            },
            RenderSpec {
                margin: 300.0,
                ..RenderSpec::default()
            },
            RenderSpec {
                label_precision: 0,
                ..RenderSpec::default()
            },
        ] {
            assert!(matches!(
                render_svg(&[&r.trace], &spec),
                Err(RenderError::InvalidSpec(_))
            ));
        }
    }
}
