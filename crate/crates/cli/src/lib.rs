//! The `entangle` command: analyze circuit files and compare analysis modes.
//!
//! [`run`] does all the work against caller-supplied writers, so the binary
//! is a thin wrapper and tests can drive the command in-process.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use entangle_core::oracle::DEFAULT_MAX_QUBITS;
use entangle_core::report::soundness_text;
use entangle_core::{
    analyze, parse_circuit, AnalysisError, AnalysisMode, Analyzer, Circuit, CompareDocument,
    Oracle, OracleError, ResultDocument,
};

pub const EXIT_OK: u8 = 0;
pub const EXIT_PARSE: u8 = 1;
pub const EXIT_INVALID: u8 = 2;
pub const EXIT_UNSOUND: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "entangle", version, about = "Static entanglement analysis for quantum circuits")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Analyze a circuit file in one mode.
    Analyze(AnalyzeArgs),
    /// Run the levels and no-levels analyses and report where they differ.
    Compare(CompareArgs),
}

#[derive(Args, Debug)]
struct AnalyzeArgs {
    file: PathBuf,
    #[arg(long, value_enum, default_value_t = ModeArg::Levels, conflicts_with = "no_levels")]
    mode: ModeArg,
    /// Same as `--mode no-levels`.
    #[arg(long)]
    no_levels: bool,
    /// Include the state after every gate.
    #[arg(long)]
    trace: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Simulate the circuit and check the result against the exact state.
    #[arg(long)]
    check_oracle: bool,
    #[arg(long, default_value_t = DEFAULT_MAX_QUBITS)]
    max_oracle_qubits: usize,
}

#[derive(Args, Debug)]
struct CompareArgs {
    file: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Levels,
    NoLevels,
    UnsafeLeveling,
}

impl From<ModeArg> for AnalysisMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Levels => AnalysisMode::Levels,
            ModeArg::NoLevels => AnalysisMode::NoLevels,
            ModeArg::UnsafeLeveling => AnalysisMode::UnsafeLeveling,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// A failed command: the exit code and a one-line diagnostic.
struct Failure(u8, String);

/// Run the command line `args` (program name first) and return the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return e.exit_code().clamp(0, 255) as u8;
        }
    };
    let result = match cli.command {
        Command::Analyze(a) => cmd_analyze(&a, out),
        Command::Compare(c) => cmd_compare(&c, out),
    };
    match result {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

fn load(path: &Path) -> Result<Circuit, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure(EXIT_PARSE, format!("{}: {e}", path.display())))?;
    let circuit =
        parse_circuit(&text).map_err(|e| Failure(EXIT_PARSE, format!("{}:{e}", path.display())))?;
    circuit
        .validate()
        .map_err(|e| Failure(EXIT_INVALID, format!("{}: {e}", path.display())))?;
    Ok(circuit)
}

fn analysis_failure(e: AnalysisError) -> Failure {
    Failure(EXIT_INVALID, e.to_string())
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes())
        .map_err(|e| Failure(EXIT_PARSE, format!("writing output: {e}")))
}

fn cmd_analyze(args: &AnalyzeArgs, out: &mut dyn Write) -> Result<u8, Failure> {
    let mode = if args.no_levels {
        AnalysisMode::NoLevels
    } else {
        args.mode.into()
    };
    let circuit = load(&args.file)?;
    let analysis = Analyzer::new(mode)
        .with_trace(args.trace)
        .run(&circuit)
        .map_err(analysis_failure)?;
    let mut doc = ResultDocument::from_analysis(&analysis);

    if args.check_oracle {
        let oracle = Oracle::new(entangle_core::oracle::DEFAULT_EPS, args.max_oracle_qubits);
        let report = oracle
            .simulate(&circuit)
            .and_then(|exact| oracle.check_soundness(&analysis.state, &exact))
            .map_err(|e| match e {
                OracleError::TooManyQubits { .. } => {
                    Failure(EXIT_INVALID, format!("{e}; raise --max-oracle-qubits to check"))
                }
                e => Failure(EXIT_INVALID, e.to_string()),
            })?;
        doc.soundness = Some(report);
    }

    let text = match args.format {
        Format::Json => {
            let mut s = serde_json::to_string(&doc).expect("document serializes");
            s.push('\n');
            s
        }
        Format::Text => doc.to_text(),
    };
    emit(out, &text)?;

    match &doc.soundness {
        Some(report) if !report.is_sound() => Err(Failure(
            EXIT_UNSOUND,
            format!("soundness violated\n{}", soundness_text(report).trim_end()),
        )),
        _ => Ok(EXIT_OK),
    }
}

fn cmd_compare(args: &CompareArgs, out: &mut dyn Write) -> Result<u8, Failure> {
    let circuit = load(&args.file)?;
    let levels = analyze(&circuit, AnalysisMode::Levels).map_err(analysis_failure)?;
    let no_levels = analyze(&circuit, AnalysisMode::NoLevels).map_err(analysis_failure)?;
    let doc = CompareDocument::new(&levels, &no_levels);
    let text = match args.format {
        Format::Json => {
            let mut s = serde_json::to_string(&doc).expect("document serializes");
            s.push('\n');
            s
        }
        Format::Text => doc.to_text(),
    };
    emit(out, &text)?;
    Ok(EXIT_OK)
}
