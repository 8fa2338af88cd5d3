//! The demo's operations as plain functions returning JSON text.

use std::fmt;

use entangle_core::random::random_circuit;
use entangle_core::{
    analyze as run_analysis, parse_circuit, AnalysisMode, Analyzer, Circuit, CompareDocument,
    Oracle, ResultDocument,
};
use rand::rngs::StdRng;
use rand::SeedableRng;

/// Largest random circuit the demo will generate.
pub const MAX_RANDOM_QUBITS: usize = 64;
pub const MAX_RANDOM_COLUMNS: usize = 500;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Parse,
    Validation,
    Argument,
    Oracle,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApiError {
    pub kind: ErrorKind,
    pub message: String,
}

impl fmt::Display for ApiError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            ErrorKind::Parse => "parse error",
            ErrorKind::Validation => "invalid circuit",
            ErrorKind::Argument => "bad argument",
            ErrorKind::Oracle => "oracle error",
        };
        write!(f, "{kind}: {}", self.message)
    }
}

impl std::error::Error for ApiError {}

fn err(kind: ErrorKind, message: impl ToString) -> ApiError {
    ApiError {
        kind,
        message: message.to_string(),
    }
}

fn load(source: &str) -> Result<Circuit, ApiError> {
    let c = parse_circuit(source).map_err(|e| err(ErrorKind::Parse, e))?;
    c.validate().map_err(|e| err(ErrorKind::Validation, e))?;
    Ok(c)
}

fn mode(name: &str) -> Result<AnalysisMode, ApiError> {
    name.parse().map_err(|_| {
        err(
            ErrorKind::Argument,
            format!("unknown mode `{name}`, expected levels, no-levels or unsafe-leveling"),
        )
    })
}

pub fn analyze(source: &str, mode_name: &str, trace: bool) -> Result<String, ApiError> {
    let m = mode(mode_name)?;
    let c = load(source)?;
    let a = Analyzer::new(m)
        .with_trace(trace)
        .run(&c)
        .map_err(|e| err(ErrorKind::Validation, e))?;
    let doc = ResultDocument::from_analysis(&a);
    Ok(serde_json::to_string(&doc).expect("documents serialize"))
}

pub fn compare(source: &str) -> Result<String, ApiError> {
    let c = load(source)?;
    let run = |m| run_analysis(&c, m).map_err(|e| err(ErrorKind::Validation, e));
    let doc = CompareDocument::new(&run(AnalysisMode::Levels)?, &run(AnalysisMode::NoLevels)?);
    Ok(serde_json::to_string(&doc).expect("documents serialize"))
}

pub fn check(source: &str, mode_name: &str) -> Result<String, ApiError> {
    let m = mode(mode_name)?;
    let c = load(source)?;
    let a = Analyzer::new(m)
        .run(&c)
        .map_err(|e| err(ErrorKind::Validation, e))?;
    let oracle = Oracle::default();
    let report = oracle
        .simulate(&c)
        .and_then(|exact| oracle.check_soundness(&a.state, &exact))
        .map_err(|e| err(ErrorKind::Oracle, e))?;
    let mut doc = ResultDocument::from_analysis(&a);
    doc.soundness = Some(report);
    Ok(serde_json::to_string(&doc).expect("documents serialize"))
}

/// A random circuit written one column per line.
pub fn random_source(qubits: usize, columns: usize, seed: u64) -> Result<String, ApiError> {
    if !(1..=MAX_RANDOM_QUBITS).contains(&qubits) {
        return Err(err(ErrorKind::Argument, format!("qubits must be 1 to {MAX_RANDOM_QUBITS}")));
    }
    if !(1..=MAX_RANDOM_COLUMNS).contains(&columns) {
        return Err(err(ErrorKind::Argument, format!("columns must be 1 to {MAX_RANDOM_COLUMNS}")));
    }
    let mut rng = StdRng::seed_from_u64(seed);
    let lines: Vec<String> = (0..columns)
        .map(|_| random_circuit(&mut rng, qubits, 1).to_string())
        .collect();
    Ok(lines.join("\noo ") + "\n")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_parse() {
        assert_eq!(mode("no-levels"), Ok(AnalysisMode::NoLevels));
        assert_eq!(mode("fast").unwrap_err().kind, ErrorKind::Argument);
    }

    #[test]
    fn error_messages_name_the_kind() {
        let e = analyze("H oo CX", "levels", false).unwrap_err();
        assert_eq!(e.kind, ErrorKind::Validation);
        assert!(e.to_string().starts_with("invalid circuit: "));
    }
}
