//! Machine-readable and plain-text renderings of analysis results.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::analyzer::{Analysis, AnalysisMode};
use crate::circuit::Gate;
use crate::domain::{AbstractState, BasisLabel, DomainError, Partition};
use crate::oracle::SoundnessReport;

/// One abstract state with partitions as sorted block lists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StateRecord {
    pub labels: Vec<BasisLabel>,
    pub separability: Vec<Vec<usize>>,
    pub levels: Vec<Vec<usize>>,
}

impl StateRecord {
    pub fn to_state(&self) -> Result<AbstractState, DomainError> {
        let n = self.labels.len();
        AbstractState::from_parts(
            self.labels.clone(),
            Partition::from_blocks(n, &self.separability)?,
            Partition::from_blocks(n, &self.levels)?,
        )
    }
}

impl From<&AbstractState> for StateRecord {
    fn from(st: &AbstractState) -> Self {
        StateRecord {
            labels: st.labels().to_vec(),
            separability: st.separability().blocks(),
            levels: st.levels().blocks(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub gate: Gate,
    pub index: usize,
    pub state: StateRecord,
}

/// The result of one analysis run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultDocument {
    pub qubits: usize,
    pub mode: AnalysisMode,
    #[serde(flatten)]
    pub state: StateRecord,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<TraceRecord>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub soundness: Option<SoundnessReport>,
}

impl ResultDocument {
    pub fn from_analysis(a: &Analysis) -> Self {
        ResultDocument {
            qubits: a.state.qubits(),
            mode: a.mode,
            state: StateRecord::from(&a.state),
            trace: a.trace.as_ref().map(|steps| {
                steps
                    .iter()
                    .map(|s| TraceRecord {
                        gate: s.gate,
                        index: s.index,
                        state: StateRecord::from(&s.state),
                    })
                    .collect()
            }),
            soundness: None,
        }
    }

    /// Rebuild the final abstract state.
    pub fn to_state(&self) -> Result<AbstractState, DomainError> {
        let st = self.state.to_state()?;
        if st.qubits() != self.qubits {
            return Err(DomainError::LengthMismatch {
                labels: self.qubits,
                sep: st.qubits(),
                lvl: st.qubits(),
            });
        }
        Ok(st)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "qubits: {}", self.qubits);
        let _ = writeln!(out, "mode: {}", self.mode);
        write_state(&mut out, &self.state, "");
        if let Some(trace) = &self.trace {
            let _ = writeln!(out, "trace:");
            for (k, step) in trace.iter().enumerate() {
                let _ = writeln!(out, "  step {}: {} @ {}", k + 1, step.gate, step.index);
                write_state(&mut out, &step.state, "    ");
            }
        }
        if let Some(report) = &self.soundness {
            out.push_str(&soundness_text(report));
        }
        out
    }
}

/// Qubit pairs `(i, j)`, `i < j`, that `fine` separates but `coarse` joins.
pub fn precision_delta(fine: &AbstractState, coarse: &AbstractState) -> Vec<(usize, usize)> {
    let n = fine.qubits().min(coarse.qubits());
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if !fine.separability().same_block(i, j) && coarse.separability().same_block(i, j) {
                pairs.push((i, j));
            }
        }
    }
    pairs
}

/// Both safe analyses of one circuit side by side.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompareDocument {
    pub qubits: usize,
    pub levels: StateRecord,
    pub no_levels: StateRecord,
    pub precision_delta: Vec<(usize, usize)>,
}

impl CompareDocument {
    pub fn new(levels: &AbstractState, no_levels: &AbstractState) -> Self {
        CompareDocument {
            qubits: levels.qubits(),
            levels: levels.into(),
            no_levels: no_levels.into(),
            precision_delta: precision_delta(levels, no_levels),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "qubits: {}", self.qubits);
        let _ = writeln!(out, "levels:");
        write_state(&mut out, &self.levels, "  ");
        let _ = writeln!(out, "no-levels:");
        write_state(&mut out, &self.no_levels, "  ");
        if self.precision_delta.is_empty() {
            let _ = writeln!(out, "precision delta: none");
        } else {
            let pairs: Vec<_> = self
                .precision_delta
                .iter()
                .map(|(i, j)| format!("({i}, {j})"))
                .collect();
            let _ = writeln!(out, "precision delta: {}", pairs.join(" "));
        }
        out
    }
}

pub fn soundness_text(report: &SoundnessReport) -> String {
    let mut out = String::new();
    let flag = |b: bool| if b { "ok" } else { "VIOLATED" };
    let _ = writeln!(
        out,
        "soundness: entanglement {}, levels {}, labels {}",
        flag(report.entanglement_ok),
        flag(report.level_ok),
        flag(report.label_ok)
    );
    for v in &report.violations {
        let _ = writeln!(out, "  - {:?} {:?}: {}", v.kind, v.qubits, v.explanation);
    }
    out
}

pub fn labels_text(labels: &[BasisLabel]) -> String {
    let parts: Vec<_> = labels.iter().map(|l| l.as_str()).collect();
    format!("[{}]", parts.join(", "))
}

pub fn blocks_text(blocks: &[Vec<usize>]) -> String {
    let parts: Vec<_> = blocks
        .iter()
        .map(|b| {
            let members: Vec<_> = b.iter().map(|q| q.to_string()).collect();
            format!("[{}]", members.join(", "))
        })
        .collect();
    format!("[{}]", parts.join(", "))
}

fn write_state(out: &mut String, st: &StateRecord, indent: &str) {
    let _ = writeln!(out, "{indent}labels: {}", labels_text(&st.labels));
    let _ = writeln!(out, "{indent}separability: {}", blocks_text(&st.separability));
    let _ = writeln!(out, "{indent}levels: {}", blocks_text(&st.levels));
}
