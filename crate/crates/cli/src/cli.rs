//! Command-line driver. Exit codes: 0 success, 1 I/O or failed
//! expectation, 2 invalid input, 3 undetermined result.

use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use sullivan_core::ext::{default_cap, ExtComputation};
use sullivan_core::homology::{certify_ellipticity, Cohomology};
use sullivan_core::spectral;
use sullivan_core::{Error as CoreError, SullivanModel};

use crate::model_file::{parse_model, ModelFile, ParseError};
use crate::report::{build_report, resolve_max_degree, status_name, PageTable};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_UNDETERMINED: i32 = 3;

#[derive(Debug)]
pub enum CliError {
    Io { path: PathBuf, source: std::io::Error },
    Parse { path: PathBuf, source: ParseError },
    Invalid(CoreError),
    NeedsMaxDegree(String),
    Undetermined(Vec<String>),
    Expectations(Vec<String>),
    Compute(CoreError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Expectations(_) | CliError::Compute(_) => EXIT_FAILURE,
            CliError::Parse { .. } | CliError::Invalid(_) | CliError::NeedsMaxDegree(_) => EXIT_INVALID,
            CliError::Undetermined(_) => EXIT_UNDETERMINED,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Io { path, source } => write!(f, "{}: {source}", path.display()),
            CliError::Parse { path, source } => write!(f, "{}:{source}", path.display()),
            CliError::Invalid(e) => write!(f, "{e}"),
            CliError::NeedsMaxDegree(why) => write!(f, "--max-degree is required: {why}"),
            CliError::Undetermined(items) => write!(f, "undetermined: {}", items.join("; ")),
            CliError::Expectations(items) => write!(f, "expectation failed: {}", items.join("; ")),
            CliError::Compute(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}

#[derive(Parser, Debug)]
#[command(name = "sullivan", version, about = "Invariants of Sullivan minimal algebras over Q")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse the file and check d² = 0, degrees and minimality.
    Validate { file: PathBuf },
    /// Dimensions and representatives of H^n for n <= max degree.
    Cohomology {
        file: PathBuf,
        #[arg(long)]
        max_degree: Option<u32>,
    },
    /// e₀ and r by every available route.
    Invariants { file: PathBuf },
    /// One page of a spectral sequence.
    Ss {
        file: PathBuf,
        #[arg(long, value_enum)]
        which: Which,
        /// Page number or `inf`.
        #[arg(long, default_value = "inf")]
        page: PageArg,
        /// Degree range for `mm`; Γ-degree cap for `ext`.
        #[arg(long)]
        max_degree: Option<u32>,
    },
    /// Full report.
    Report {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        max_degree: Option<u32>,
        /// Include wall-clock timings (makes output nondeterministic).
        #[arg(long)]
        timing: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Which {
    Mm,
    Ext,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PageArg {
    Finite(u32),
    Infinity,
}

impl std::str::FromStr for PageArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "inf" | "infinity" => Ok(PageArg::Infinity),
            _ => s.parse().map(PageArg::Finite).map_err(|_| format!("`{s}` is not a page number or `inf`")),
        }
    }
}

pub fn load(path: &Path) -> Result<ModelFile, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })?;
    parse_model(&text).map_err(|source| CliError::Parse { path: path.into(), source })
}

fn load_model(path: &Path) -> Result<(ModelFile, SullivanModel), CliError> {
    let file = load(path)?;
    let model = file.model().map_err(CliError::Invalid)?;
    Ok((file, model))
}

fn max_degree(file: &ModelFile, model: &SullivanModel, flag: Option<u32>) -> Result<u32, CliError> {
    resolve_max_degree(model, flag.or(file.options.max_degree)).map_err(|_| {
        let cert = certify_ellipticity(model);
        CliError::NeedsMaxDegree(format!("{} is {}", file.name, status_name(cert.status)))
    })
}

/// Runs one command, writing results to `out`.
pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let w = |out: &mut dyn Write, s: &str| -> Result<(), CliError> {
        out.write_all(s.as_bytes())
            .map_err(|source| CliError::Io { path: PathBuf::from("<stdout>"), source })
    };
    match &cli.command {
        Command::Validate { file } => {
            let f = load(file)?;
            let report = f.raw_model().validate();
            if !report.is_valid() {
                return Err(CliError::Invalid(CoreError::InvalidModel(report.violations)));
            }
            w(out, &format!("ok: {} ({} generators)\n", f.name, f.generators.len()))
        }
        Command::Cohomology { file, max_degree: flag } => {
            let (f, model) = load_model(file)?;
            let top = max_degree(&f, &model, *flag)?;
            let coh = Cohomology::new(&model, top);
            let mut s = String::new();
            for n in 0..=top {
                let basis = coh.basis(n).map_err(CliError::Compute)?;
                s.push_str(&format!("H^{n}: {}", basis.len()));
                let reps: Vec<String> = basis
                    .iter()
                    .map(|c| model.algebra().display(&c.representative).to_string())
                    .collect();
                if !reps.is_empty() {
                    s.push_str(&format!("  [{}]", reps.join("], [")));
                }
                s.push('\n');
            }
            w(out, &s)
        }
        Command::Invariants { file } => {
            let (f, model) = load_model(file)?;
            let top = max_degree(&f, &model, None).unwrap_or(0);
            let mut report = build_report(&f, &model, top, false);
            report.pages.clear();
            w(out, &report.to_text())?;
            finish(&report)
        }
        Command::Ss { file, which, page, max_degree: flag } => {
            let (f, model) = load_model(file)?;
            let table = match which {
                Which::Mm => {
                    let top = max_degree(&f, &model, *flag)?;
                    let range = (0, i64::from(top));
                    match page {
                        PageArg::Finite(r) => PageTable::from_page("mm", &spectral::mm_page(&model, *r, top), false, range),
                        PageArg::Infinity => PageTable::from_page("mm", &spectral::mm_infinity_page(&model, top), true, range),
                    }
                }
                Which::Ext => {
                    let cap = flag.or(f.options.cap).unwrap_or_else(|| default_cap(&model));
                    let ext = ExtComputation::new(&model, cap, 2).map_err(CliError::Compute)?;
                    let range = (ext.window.lo, ext.window.hi);
                    match page {
                        PageArg::Finite(r) => PageTable::from_page("ext", &spectral::ext_page(&ext, *r), false, range),
                        PageArg::Infinity => PageTable::from_page("ext", &spectral::ext_infinity_page(&ext), true, range),
                    }
                }
            };
            w(out, &table.render())
        }
        Command::Report { file, format, max_degree: flag, timing } => {
            let (f, model) = load_model(file)?;
            let top = max_degree(&f, &model, *flag)?;
            let report = build_report(&f, &model, top, *timing);
            match format {
                Format::Text => w(out, &report.to_text())?,
                Format::Json => w(out, &report.to_json())?,
            }
            finish(&report)
        }
    }
}

fn finish(report: &crate::report::Report) -> Result<(), CliError> {
    let undetermined = report.undetermined();
    if !undetermined.is_empty() {
        return Err(CliError::Undetermined(undetermined));
    }
    let failed: Vec<String> = report
        .failed_expectations()
        .iter()
        .map(|e| format!("{} expected {}, found {:?}", e.key, e.expected, e.found))
        .collect();
    if !failed.is_empty() {
        return Err(CliError::Expectations(failed));
    }
    Ok(())
}

/// Parses arguments and runs; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
