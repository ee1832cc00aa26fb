//! Model files, reports and the `sullivan` command line.

pub mod cli;
pub mod model_file;
pub mod report;

pub use cli::run;
pub use model_file::{parse_model, ModelFile, ParseError, ParseErrorKind, Position};
pub use report::{build_report, Report};
