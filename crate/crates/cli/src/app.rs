//! Command-line front end. [`run`] is `main` without the process: it takes
//! arguments and writers and returns the exit code.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use sulva_core::analysis::table::{emit_error_table, ReportFormat};
use sulva_core::analysis::{comparison_records, generate_triples};
use sulva_core::constructions::triple_catalog;
use sulva_core::registry::{self, RegistryError};
use sulva_core::texts;
use sulva_core::units::{LengthQuantity, UnitTable};
use sulva_core::ConstructibleScalar as Cs;

use crate::run::execute;
use crate::script::parse_script;
use crate::svg::{render_svg, RenderSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_CONSTRUCTION: i32 = 2;

pub const DEFAULT_PRECISION: u32 = 50;
pub const PRECISION_ENV: &str = "SULVA_PRECISION";

#[derive(Parser, Debug)]
#[command(
    name = "sulva",
    version,
    about = "Exact peg-and-cord constructions, figures and accuracy reports"
)]
struct Cli {
    /// Significant digits of printed decimals [default: $SULVA_PRECISION or 50]
    #[arg(long, global = true)]
    precision: Option<u32>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run one operation: `sulva construct <name> [--<param> <value>]...`
    ///
    /// Also accepts `--svg <file>` for a figure, `--trace <file>` for the
    /// JSON trace, `--no-labels` and `--precision <digits>` anywhere after
    /// the name. Values are exact: `3/2`, `sqrt(2)`, `(0, 1)`.
    Construct {
        /// Operation name, see `sulva list`
        name: String,
        #[arg(
            trailing_var_arg = true,
            allow_hyphen_values = true,
            value_name = "ARGS"
        )]
        args: Vec<String>,
    },
    /// Run a construction script
    Run {
        script: PathBuf,
        /// Write `render` figures here as <name>.svg; without it figures are skipped
        #[arg(long)]
        svg_dir: Option<PathBuf>,
        /// Leave decimal labels out of figures
        #[arg(long)]
        no_labels: bool,
    },
    /// Accuracy table of the approximation rules
    Report {
        /// text, json or csv
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Length units
    Units {
        #[command(subcommand)]
        command: UnitsCommand,
    },
    /// Primitive Pythagorean triples up to a hypotenuse limit
    Triples {
        #[arg(long, default_value_t = 100)]
        limit: u64,
    },
    /// List operations and their parameters
    List,
}

#[derive(Subcommand, Debug)]
enum UnitsCommand {
    /// Convert a length, e.g. `sulva units convert 1 purusa angula`
    Convert {
        quantity: String,
        from: String,
        to: String,
    },
    /// Show the unit table
    List,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Construction(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Construction(_) => EXIT_CONSTRUCTION,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Construction(m) => m,
        }
    }
}

fn usage(m: impl ToString) -> Failure {
    Failure::Usage(m.to_string())
}

fn registry_failure(e: RegistryError) -> Failure {
    match e {
        RegistryError::Construction(_) | RegistryError::Analysis(_) => {
            Failure::Construction(e.to_string())
        }
        other => usage(other),
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    std::fs::write(path, contents)
        .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))
}

struct ConstructArgs {
    params: Vec<(String, String)>,
    svg: Option<PathBuf>,
    trace: Option<PathBuf>,
    precision: Option<u32>,
    labels: bool,
}

fn parse_precision(text: &str) -> Result<u32, Failure> {
    match text.trim().parse::<u32>() {
        Ok(p) if p > 0 => Ok(p),
        _ => Err(usage(format!(
            "precision must be a positive whole number, got `{text}`"
        ))),
    }
}

fn split_construct_args(raw: &[String]) -> Result<ConstructArgs, Failure> {
    let mut out = ConstructArgs {
        params: Vec::new(),
        svg: None,
        trace: None,
        precision: None,
        labels: true,
    };
    let mut it = raw.iter();
    while let Some(tok) = it.next() {
        let Some(flag) = tok.strip_prefix("--") else {
            return Err(usage(format!("expected `--<param> <value>`, got `{tok}`")));
        };
        if flag == "no-labels" {
            out.labels = false;
            continue;
        }
        let (key, value) = match flag.split_once('=') {
            Some((k, v)) => (k.to_string(), v.to_string()),
            None => {
                let v = it
                    .next()
                    .ok_or_else(|| usage(format!("`--{flag}` needs a value")))?;
                (flag.to_string(), v.clone())
            }
        };
        match key.as_str() {
            "svg" => out.svg = Some(value.into()),
            "trace" => out.trace = Some(value.into()),
            "precision" => out.precision = Some(parse_precision(&value)?),
            _ => out.params.push((key, value)),
        }
    }
    Ok(out)
}

fn construct(
    name: &str,
    raw: &[String],
    precision: u32,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    let op = registry::lookup(name).map_err(|e| usage(format!("{e}; try `sulva list`")))?;
    let args = split_construct_args(raw)?;
    let precision = args.precision.unwrap_or(precision);
    let mut given = BTreeMap::new();
    for (key, text) in &args.params {
        // command-line spelling of snake_case names
        let key = key.replace('-', "_");
        let spec = op
            .param(&key)
            .ok_or_else(|| usage(format!("{name}: no parameter named `{key}`")))?;
        let value = registry::parse_value(spec.kind, text)
            .map_err(|reason| usage(format!("{name}: argument `{key}`: {reason}")))?;
        if given.insert(key.clone(), value).is_some() {
            return Err(usage(format!("{name}: `{key}` given twice")));
        }
    }
    let outcome = op.invoke(given, precision).map_err(registry_failure)?;
    let mut text = format!("{name} = {}\n", outcome.value.describe(precision));
    for (field, v) in &outcome.fields {
        text.push_str(&format!("  {field} = {}\n", v.describe(precision)));
    }
    out.write_all(text.as_bytes()).map_err(usage)?;
    if args.svg.is_some() || args.trace.is_some() {
        let trace = outcome
            .trace
            .as_ref()
            .ok_or_else(|| usage(format!("{name} records no construction to draw or save")))?;
        if let Some(path) = &args.svg {
            let spec = RenderSpec {
                labels: args.labels,
                ..RenderSpec::default()
            };
            let svg = render_svg(&[trace], &spec).map_err(usage)?;
            write_file(path, &svg)?;
        }
        if let Some(path) = &args.trace {
            write_file(path, &trace.to_json())?;
        }
    }
    Ok(())
}

fn run_file(
    path: &Path,
    svg_dir: Option<&Path>,
    labels: bool,
    precision: u32,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    let source = std::fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    let script = parse_script(&source).map_err(|e| usage(format!("{}:{e}", path.display())))?;
    let spec = RenderSpec {
        labels,
        ..RenderSpec::default()
    };
    let run = execute(&script, precision, &spec).map_err(|e| {
        let m = format!("{}: {e}", path.display());
        if e.is_construction_failure() {
            Failure::Construction(m)
        } else {
            usage(m)
        }
    })?;
    out.write_all(run.report_text().as_bytes()).map_err(usage)?;
    if let Some(dir) = svg_dir {
        std::fs::create_dir_all(dir)
            .map_err(|e| usage(format!("cannot create {}: {e}", dir.display())))?;
        for fig in &run.figures {
            write_file(&dir.join(format!("{}.svg", fig.name)), &fig.svg)?;
        }
    }
    Ok(())
}

fn units(cmd: &UnitsCommand, out: &mut dyn Write) -> Result<(), Failure> {
    let table = UnitTable::default();
    let text = match cmd {
        UnitsCommand::Convert { quantity, from, to } => {
            let magnitude: Cs = quantity
                .parse()
                .map_err(|e| usage(format!("quantity `{quantity}`: {e}")))?;
            let unit = table.lookup(from).map_err(usage)?.clone();
            let q = LengthQuantity::new(magnitude, unit).map_err(usage)?;
            let converted = table.convert(&q, to).map_err(usage)?;
            format!("{} {}\n", converted.magnitude(), converted.unit().name)
        }
        UnitsCommand::List => table
            .units()
            .iter()
            .map(|u| {
                format!(
                    "{} = {} aṅgula  [{}]\n",
                    u.name,
                    u.ratio_to_angula,
                    texts::join(&u.attested_in, ", ")
                )
            })
            .collect(),
    };
    out.write_all(text.as_bytes()).map_err(usage)
}

fn triples(limit: u64, out: &mut dyn Write) -> Result<(), Failure> {
    let catalog = triple_catalog();
    let mut text = String::new();
    for t in generate_triples(limit) {
        text.push_str(&format!("({}, {}, {})", t.a, t.b, t.c));
        if let Some(known) = catalog.iter().find(|k| (k.a, k.b, k.c) == (t.a, t.b, t.c)) {
            text.push_str(&format!("  {}", texts::join(&known.attested_in, ", ")));
        }
        text.push('\n');
    }
    out.write_all(text.as_bytes()).map_err(usage)
}

fn signature(op: &registry::Operation) -> String {
    let params: Vec<String> = op
        .params
        .iter()
        .map(|p| match p.default {
            Some(d) => format!("{}: {} = {d}", p.name, p.kind),
            None => format!("{}: {}", p.name, p.kind),
        })
        .collect();
    format!("{}({})\n    {}\n", op.name, params.join(", "), op.summary)
}

fn list(out: &mut dyn Write) -> Result<(), Failure> {
    let text: String = registry::operations().iter().map(signature).collect();
    out.write_all(text.as_bytes()).map_err(usage)
}

fn dispatch(cli: Cli, precision: u32, out: &mut dyn Write) -> Result<(), Failure> {
    match &cli.command {
        Command::Construct { name, args } => construct(name, args, precision, out),
        Command::Run {
            script,
            svg_dir,
            no_labels,
        } => run_file(script, svg_dir.as_deref(), !no_labels, precision, out),
        Command::Report { format } => {
            let format: ReportFormat = format.parse().map_err(usage)?;
            let table =
                emit_error_table(&comparison_records(), precision, format).map_err(usage)?;
            out.write_all(table.as_bytes()).map_err(usage)
        }
        Command::Units { command } => units(command, out),
        Command::Triples { limit } => triples(*limit, out),
        Command::List => list(out),
    }
}

/// Runs the command line in `args` (program name first). `env_precision` is
/// the value of `SULVA_PRECISION`, read once by the caller.
pub fn run<I, T>(
    args: I,
    env_precision: Option<&str>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(rendered.as_bytes())
            } else {
                err.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let precision = match (cli.precision, env_precision) {
        (Some(p), _) => parse_precision(&p.to_string()),
        (None, Some(env)) => {
            parse_precision(env).map_err(|f| usage(format!("{PRECISION_ENV}: {}", f.message())))
        }
        (None, None) => Ok(DEFAULT_PRECISION),
    };
    let result = precision.and_then(|p| dispatch(cli, p, out));
    match result {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message());
            f.code()
        }
    }
}
