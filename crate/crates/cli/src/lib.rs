//! Scripts, figures and the `sulva` command line over `sulva-core`.

pub mod app;
pub mod run;
pub mod script;
pub mod svg;

pub use run::{execute, run_script, ScriptError, ScriptRun};
pub use script::{parse_script, unparse, ParseError, Script};
pub use svg::{render_svg, RenderError, RenderSpec};
