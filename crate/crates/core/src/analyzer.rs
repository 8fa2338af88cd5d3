//! The abstract interpreter.
//!
//! Gates are applied to an [`AbstractState`] in the order given by
//! [`Circuit::placements`]. One working state is updated in place, so a run
//! costs `O(n)` per gate and `O(n * m)` for `m` gate applications.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::circuit::{Circuit, Gate, ValidationError};
use crate::domain::{AbstractState, BasisLabel, DomainError};

/// Which rule set to interpret CX with.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AnalysisMode {
    /// Track levels and use them to disentangle CX targets.
    #[default]
    Levels,
    /// Ignore levels; the levels partition stays all-singletons.
    NoLevels,
    /// Level a CX pair whenever the target is labeled `s`, whatever the
    /// control, and keep a target's level through an unrelated CX.
    /// Unsound; kept to reproduce how that rule goes wrong.
    UnsafeLeveling,
}

impl AnalysisMode {
    pub const ALL: [AnalysisMode; 3] = [
        AnalysisMode::Levels,
        AnalysisMode::NoLevels,
        AnalysisMode::UnsafeLeveling,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            AnalysisMode::Levels => "levels",
            AnalysisMode::NoLevels => "no-levels",
            AnalysisMode::UnsafeLeveling => "unsafe-leveling",
        }
    }
}

impl fmt::Display for AnalysisMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for AnalysisMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        AnalysisMode::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| format!("unknown analysis mode `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("gate {gate} at qubit {index} does not fit in {qubits} qubits")]
    OutOfRange {
        gate: Gate,
        index: usize,
        qubits: usize,
    },
    #[error("CX control and target are both qubit {0}")]
    SameQubit(usize),
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error(transparent)]
    Invalid(#[from] ValidationError),
}

/// Apply `gate` with its lowest wire at `index`. For CX the control is
/// `index` and the target `index + 1`.
pub fn apply_gate(
    st: &mut AbstractState,
    gate: Gate,
    index: usize,
    mode: AnalysisMode,
) -> Result<(), AnalysisError> {
    let n = st.qubits();
    if index + gate.height() > n {
        return Err(AnalysisError::OutOfRange {
            gate,
            index,
            qubits: n,
        });
    }
    let (labels, _, lvl) = st.parts_mut();
    match gate {
        Gate::I | Gate::X | Gate::Y | Gate::Z => {}
        Gate::H => match labels[index] {
            BasisLabel::Standard => labels[index] = BasisLabel::Diagonal,
            BasisLabel::Diagonal => labels[index] = BasisLabel::Standard,
            BasisLabel::Top => lvl.split(index)?,
        },
        Gate::T => {
            if labels[index] == BasisLabel::Diagonal {
                labels[index] = BasisLabel::Top;
            }
        }
        Gate::Swap => st.swap_adjacent(index)?,
        Gate::Cx => cx(st, index, index + 1, mode)?,
    }
    Ok(())
}

/// CX between two arbitrary distinct qubits.
pub fn apply_cx_at(
    st: &mut AbstractState,
    control: usize,
    target: usize,
    mode: AnalysisMode,
) -> Result<(), AnalysisError> {
    let n = st.qubits();
    if control >= n || target >= n {
        return Err(AnalysisError::OutOfRange {
            gate: Gate::Cx,
            index: control.max(target),
            qubits: n,
        });
    }
    if control == target {
        return Err(AnalysisError::SameQubit(control));
    }
    cx(st, control, target, mode)
}

fn cx(
    st: &mut AbstractState,
    c: usize,
    t: usize,
    mode: AnalysisMode,
) -> Result<(), AnalysisError> {
    use BasisLabel::*;

    let (labels, sep, lvl) = st.parts_mut();
    let (lc, lt) = (labels[c], labels[t]);

    if lc == Standard || lt == Diagonal {
        // a basis-state control or an eigenstate target: no interaction
        return Ok(());
    }
    if lc == Diagonal && lt == Standard {
        // |±> control on a basis-state target makes a Bell pair
        labels[c] = Top;
        labels[t] = Top;
        sep.join(c, t)?;
        if mode != AnalysisMode::NoLevels {
            lvl.join(c, t)?;
        }
        return Ok(());
    }
    if lvl.shares_block(c, t) {
        // the target's bit is a fixed function of the control's in every
        // substate, so flipping by the control makes it constant
        labels[t] = Standard;
        sep.split(t)?;
        lvl.split(t)?;
        return Ok(());
    }
    labels[c] = Top;
    labels[t] = Top;
    sep.join(c, t)?;
    match mode {
        // a superposed control flips the target in only some substates,
        // which breaks any level the target had
        AnalysisMode::Levels => lvl.split(t)?,
        AnalysisMode::UnsafeLeveling if lt == Standard => lvl.join(c, t)?,
        AnalysisMode::UnsafeLeveling | AnalysisMode::NoLevels => {}
    }
    Ok(())
}

/// One gate application and the state right after it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub gate: Gate,
    pub index: usize,
    pub state: AbstractState,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Analysis {
    pub mode: AnalysisMode,
    pub state: AbstractState,
    /// Present when the analyzer was asked to trace.
    pub trace: Option<Vec<TraceStep>>,
}

/// Runs circuits through the abstract semantics.
#[derive(Clone, Copy, Debug, Default)]
pub struct Analyzer {
    mode: AnalysisMode,
    trace: bool,
}

impl Analyzer {
    pub fn new(mode: AnalysisMode) -> Self {
        Analyzer { mode, trace: false }
    }

    /// Record a snapshot after every gate.
    pub fn with_trace(mut self, trace: bool) -> Self {
        self.trace = trace;
        self
    }

    pub fn mode(&self) -> AnalysisMode {
        self.mode
    }

    pub fn run(&self, circuit: &Circuit) -> Result<Analysis, AnalysisError> {
        let n = circuit.validate()?;
        let mut state = AbstractState::new(n);
        let mut trace = self.trace.then(Vec::new);
        for p in circuit.placements() {
            apply_gate(&mut state, p.gate, p.index, self.mode)?;
            if let Some(steps) = trace.as_mut() {
                steps.push(TraceStep {
                    gate: p.gate,
                    index: p.index,
                    state: state.clone(),
                });
            }
        }
        Ok(Analysis {
            mode: self.mode,
            state,
            trace,
        })
    }
}

/// Validate and analyze `circuit`, returning the final abstract state.
pub fn analyze(circuit: &Circuit, mode: AnalysisMode) -> Result<AbstractState, AnalysisError> {
    Analyzer::new(mode).run(circuit).map(|a| a.state)
}
