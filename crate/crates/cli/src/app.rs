use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use nearsub_core::rational::parse_rational;
use nearsub_core::classifier::Replay;
use nearsub_core::{classify, replay, WeightSpec};
use nearsub_oracle::{concordance, cross_validate, Concordance, DEFAULT_RELATIVE_TOL};
use thiserror::Error;

use crate::fixtures::{self, Fixture};
use crate::report::{oracle_dto, Report, EVIDENCE_NOTE};
use crate::specfile::SpecFile;

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INCONSISTENT: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "nearsub", version, about = "Classify bilateral weighted shifts as near subnormal or not")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
    #[value(name = "3")]
    Three,
    Thm4,
    All,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classify a spec file and print the certificate.
    Classify {
        path: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Cross-check a spec against dense finite sections.
    Oracle {
        path: PathBuf,
        /// Largest matrix dimension 2N + 1 for the residual run.
        #[arg(long, default_value_t = 401)]
        max_dim: usize,
        /// Null-space threshold relative to the largest squared weight.
        #[arg(long, default_value_t = DEFAULT_RELATIVE_TOL)]
        tol: f64,
        /// Ascending half-widths N for the norm trace.
        #[arg(long, value_delimiter = ',')]
        sweep: Vec<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Write the built-in fixture spec files.
    Examples {
        #[arg(long, value_enum, default_value = "all")]
        which: Which,
        #[arg(long)]
        emit: PathBuf,
        /// Override λ in the two-constant fixture.
        #[arg(long, default_value = "1")]
        lambda: String,
        /// Override μ in the two-constant fixture.
        #[arg(long, default_value = "2")]
        mu: String,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Inconsistent(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) => EXIT_IO,
            CliError::Input(_) => EXIT_INPUT,
            CliError::Inconsistent(_) => EXIT_INCONSISTENT,
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn load(path: &Path) -> Result<(SpecFile, WeightSpec), CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    let file = SpecFile::parse(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let spec = file.to_spec().map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    Ok((file, spec))
}

fn base_report(file: &SpecFile, spec: &WeightSpec) -> Result<(Report, nearsub_core::Verdict), CliError> {
    let verdict = classify(spec).map_err(|e| CliError::Input(e.to_string()))?;
    let check = replay(&verdict.certificate, spec);
    let mut report = Report::new(file.name.as_deref(), &verdict, &check);
    report.annotations.extend(file.notes.clone());
    if let Replay::Inconsistent(why) = check {
        return Err(CliError::Inconsistent(format!("certificate replay failed: {why}")));
    }
    Ok((report, verdict))
}

fn emit(out: &mut dyn Write, report: &Report, format: Format) -> Result<(), CliError> {
    let text = match format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json(),
    };
    out.write_all(text.as_bytes()).map_err(|e| CliError::Io(e.to_string()))
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<(), CliError> {
    match command {
        Command::Classify { path, format } => {
            let (file, spec) = load(&path)?;
            let (report, _) = base_report(&file, &spec)?;
            emit(out, &report, format)
        }
        Command::Oracle { path, max_dim, tol, sweep, format } => {
            if max_dim < 5 {
                return Err(CliError::Input(format!("--max-dim must be at least 5, got {max_dim}")));
            }
            let (file, spec) = load(&path)?;
            let (mut report, verdict) = base_report(&file, &spec)?;
            let truncation = cross_validate(&spec, (max_dim - 1) / 2, tol, &sweep).map_err(|e| CliError::Input(e.to_string()))?;
            let agreement = concordance(&spec, &verdict, &truncation);
            report.oracle = Some(oracle_dto(&truncation, &agreement));
            report.annotations.push(EVIDENCE_NOTE.to_string());
            emit(out, &report, format)?;
            match agreement {
                Concordance::Disagrees(why) => Err(CliError::Inconsistent(format!("oracle disagrees: {why}"))),
                _ => Ok(()),
            }
        }
        Command::Examples { which, emit: dir, lambda, mu } => {
            let parse = |flag: &str, text: &str| parse_rational(text).map_err(|e| CliError::Input(format!("--{flag}: {e}")));
            let (lambda, mu) = (parse("lambda", &lambda)?, parse("mu", &mu)?);
            let zero = nearsub_core::rational::int(0);
            if !(zero < lambda && lambda < mu) {
                return Err(CliError::Input(format!("need 0 < lambda < mu, got lambda = {lambda}, mu = {mu}")));
            }
            let chosen: Vec<Fixture> = match which {
                Which::One => vec![fixtures::example1()],
                Which::Two => vec![fixtures::example2()],
                Which::Three => vec![fixtures::example3(lambda, mu)],
                Which::Thm4 => vec![fixtures::theorem4()],
                Which::All => vec![fixtures::example1(), fixtures::example2(), fixtures::example3(lambda, mu), fixtures::theorem4()],
            };
            std::fs::create_dir_all(&dir).map_err(|e| CliError::Io(format!("cannot create {}: {e}", dir.display())))?;
            for f in chosen {
                let target = dir.join(f.file_name());
                std::fs::write(&target, f.spec_file().to_json())
                    .map_err(|e| CliError::Io(format!("cannot write {}: {e}", target.display())))?;
                writeln!(out, "wrote {}", target.display()).map_err(|e| CliError::Io(e.to_string()))?;
            }
            Ok(())
        }
    }
}
