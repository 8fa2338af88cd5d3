//! Static entanglement analysis for quantum circuits.
//!
//! Circuits written with `**` (parallel) and `oo` (sequential) composition
//! are interpreted over an abstract domain that tracks, for every qubit, a
//! basis label (`s`, `d` or `top`), a partition over-approximating which
//! qubits may be entangled, and a partition of qubit pairs known to be on the
//! same level. The analysis is linear in circuit size.
//!
//! The [`oracle`] module holds an exact statevector simulator used to check
//! the analysis against ground truth on small circuits.
//!
//! ```
//! use entangle_core::{analyze, parse_circuit, AnalysisMode};
//!
//! let bell = parse_circuit("H ** I oo CX").unwrap();
//! let st = analyze(&bell, AnalysisMode::Levels).unwrap();
//! assert_eq!(st.separability().blocks(), vec![vec![0, 1]]);
//! ```

pub mod analyzer;
pub mod circuit;
pub mod domain;
pub mod oracle;
pub mod random;
pub mod report;

pub use analyzer::{
    analyze, apply_cx_at, apply_gate, Analysis, AnalysisError, AnalysisMode, Analyzer, TraceStep,
};
pub use circuit::{parse_circuit, Circuit, CircuitBuilder, Gate, ParseError, ValidationError};
pub use domain::{AbstractState, BasisLabel, DomainError, Partition};
pub use oracle::{DenseState, Oracle, OracleError, SoundnessReport};
pub use report::{CompareDocument, ResultDocument};
