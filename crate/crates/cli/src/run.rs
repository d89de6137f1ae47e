//! Executing parsed scripts against the operation registry.

use std::collections::BTreeMap;

use thiserror::Error;

use sulva_core::geometry::Point;
use sulva_core::registry::{self, Outcome, RegistryError, Value};
use sulva_core::{ConstructibleScalar as Cs, ConstructionTrace};

use crate::script::{bind_names, parse_script, Expr, ParseError, Script, StatementKind};
use crate::svg::{render_svg, RenderError, RenderSpec};

#[derive(Debug, Error)]
pub enum ScriptError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    /// A statement failed while running; `binding` names the `let` target or
    /// the figure being rendered.
    #[error("line {line}: `{binding}`: {source}")]
    Run {
        line: usize,
        binding: String,
        source: RunFailure,
    },
}

impl ScriptError {
    /// Geometric failures as opposed to malformed input.
    pub fn is_construction_failure(&self) -> bool {
        matches!(
            self,
            ScriptError::Run {
                source: RunFailure::Registry(
                    RegistryError::Construction(_) | RegistryError::Analysis(_)
                ),
                ..
            }
        )
    }
}

#[derive(Debug, Error)]
pub enum RunFailure {
    #[error(transparent)]
    Registry(#[from] RegistryError),
    #[error("{0}")]
    Value(String),
    #[error(transparent)]
    Render(#[from] RenderError),
}

/// A figure requested by a `render` statement.
#[derive(Clone, Debug)]
pub struct Figure {
    pub name: String,
    pub svg: String,
}

#[derive(Debug, Default)]
pub struct ScriptRun {
    /// Bindings in the order they were made; a rebound name appears twice.
    pub bindings: Vec<(String, Outcome)>,
    pub figures: Vec<Figure>,
    /// Lines produced by `report` statements.
    pub report: Vec<String>,
}

impl ScriptRun {
    pub fn get(&self, name: &str) -> Option<&Outcome> {
        self.bindings
            .iter()
            .rev()
            .find(|(n, _)| n == name)
            .map(|(_, o)| o)
    }

    /// Every trace, by binding name.
    pub fn traces(&self) -> Vec<(&str, &ConstructionTrace)> {
        self.bindings
            .iter()
            .filter_map(|(n, o)| o.trace.as_ref().map(|t| (n.as_str(), t)))
            .collect()
    }

    pub fn report_text(&self) -> String {
        self.report.iter().map(|l| format!("{l}\n")).collect()
    }
}

fn scalar(v: Value, what: &str) -> Result<Cs, RunFailure> {
    match v {
        Value::Scalar(s) => Ok(s),
        other => Err(RunFailure::Value(format!(
            "{what} needs scalars, got a {}",
            other.kind_name()
        ))),
    }
}

fn eval(e: &Expr, env: &ScriptRun) -> Result<Value, RunFailure> {
    let binary = |a: &Expr, b: &Expr, what: &str| -> Result<(Cs, Cs), RunFailure> {
        Ok((scalar(eval(a, env)?, what)?, scalar(eval(b, env)?, what)?))
    };
    Ok(match e {
        Expr::Integer(n) => Value::Scalar(Cs::from_rational(n.clone().into())),
        Expr::Text(t) => Value::Text(t.clone()),
        Expr::Name(n) => env
            .get(n)
            .map(|o| o.value.clone())
            .ok_or_else(|| RunFailure::Value(format!("`{n}` is not bound")))?,
        Expr::Field(n, f) => {
            let o = env
                .get(n)
                .ok_or_else(|| RunFailure::Value(format!("`{n}` is not bound")))?;
            o.get(Some(f)).cloned().ok_or_else(|| {
                let known: Vec<&str> = o.fields.keys().map(String::as_str).collect();
                RunFailure::Value(format!(
                    "`{n}` has no field `{f}` (fields: {})",
                    known.join(", ")
                ))
            })?
        }
        Expr::Neg(a) => Value::Scalar(scalar(eval(a, env)?, "negation")?.neg_ref()),
        Expr::Add(a, b) => {
            let (x, y) = binary(a, b, "addition")?;
            Value::Scalar(x.add_ref(&y))
        }
        Expr::Sub(a, b) => {
            let (x, y) = binary(a, b, "subtraction")?;
            Value::Scalar(x.sub_ref(&y))
        }
        Expr::Mul(a, b) => {
            let (x, y) = binary(a, b, "multiplication")?;
            Value::Scalar(x.mul_ref(&y))
        }
        Expr::Div(a, b) => {
            let (x, y) = binary(a, b, "division")?;
            Value::Scalar(
                x.checked_div(&y)
                    .map_err(|e| RunFailure::Value(e.to_string()))?,
            )
        }
        Expr::Sqrt(a) => Value::Scalar(
            scalar(eval(a, env)?, "sqrt")?
                .checked_sqrt()
                .map_err(|e| RunFailure::Value(e.to_string()))?,
        ),
        Expr::Tuple(items) => match items.as_slice() {
            [x, y] => Value::Point(Point::new(
                scalar(eval(x, env)?, "a point")?,
                scalar(eval(y, env)?, "a point")?,
            )),
            _ => {
                return Err(RunFailure::Value(format!(
                    "a point has two coordinates, got {}",
                    items.len()
                )))
            }
        },
    })
}

/// Runs a parsed script. `precision` sets the decimal digits of reported
/// values; `spec` styles rendered figures.
pub fn execute(
    script: &Script,
    precision: u32,
    spec: &RenderSpec,
) -> Result<ScriptRun, ScriptError> {
    let mut run = ScriptRun::default();
    for st in &script.statements {
        let fail = |binding: &str, source: RunFailure| ScriptError::Run {
            line: st.line,
            binding: binding.to_string(),
            source,
        };
        match &st.kind {
            StatementKind::Let { name, op, args } => {
                let operation = registry::lookup(op).map_err(|e| fail(name, e.into()))?;
                let names =
                    bind_names(operation, args).map_err(|m| fail(name, RunFailure::Value(m)))?;
                let mut given = BTreeMap::new();
                for (n, a) in names.into_iter().zip(args) {
                    given.insert(n, eval(&a.value, &run).map_err(|e| fail(name, e))?);
                }
                let outcome = operation
                    .invoke(given, precision)
                    .map_err(|e| fail(name, e.into()))?;
                run.bindings.push((name.clone(), outcome));
            }
            StatementKind::Render { names, output } => {
                let mut traces = Vec::new();
                for n in names {
                    let o = run.get(n).ok_or_else(|| {
                        fail(output, RunFailure::Value(format!("`{n}` is not bound")))
                    })?;
                    match &o.trace {
                        Some(t) => traces.push(t),
                        None => {
                            return Err(fail(
                                output,
                                RunFailure::Value(format!("`{n}` has no construction to draw")),
                            ))
                        }
                    }
                }
                let svg = render_svg(&traces, spec).map_err(|e| fail(output, e.into()))?;
                run.figures.push(Figure {
                    name: output.clone(),
                    svg,
                });
            }
            StatementKind::Report { items } => {
                let mut lines = Vec::new();
                for r in items {
                    let o = run
                        .get(&r.name)
                        .ok_or_else(|| fail(&r.name, RunFailure::Value("not bound".into())))?;
                    match &r.field {
                        Some(f) => {
                            let v = o.get(Some(f)).ok_or_else(|| {
                                fail(&r.name, RunFailure::Value(format!("no field `{f}`")))
                            })?;
                            lines.push(format!("{r} = {}", v.describe(precision)));
                        }
                        None => {
                            lines.push(format!("{} = {}", r.name, o.value.describe(precision)));
                            for (f, v) in &o.fields {
                                lines.push(format!("  {f} = {}", v.describe(precision)));
                            }
                        }
                    }
                }
                run.report.extend(lines);
            }
        }
    }
    Ok(run)
}

/// Parses and runs `source`.
pub fn run_script(source: &str, precision: u32) -> Result<ScriptRun, ScriptError> {
    let script = parse_script(source)?;
    execute(&script, precision, &RenderSpec::default())
}
