//! Exact reference semantics: a dense statevector simulator and checks that
//! read separability, levels and bases off a concrete state, plus a report
//! comparing an abstract state against them.
//!
//! Separability across a bipartition `S | S^c` is tested by viewing the
//! amplitudes as a `2^|S| x 2^|S^c|` matrix and checking it has rank one:
//! with the largest-magnitude entry `M[r][c]` as pivot, the state factorizes
//! iff `M == M[:, c] * M[r, :] / M[r][c]`, and the Frobenius norm of the
//! difference is compared against the tolerance.

mod state;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::circuit::{Circuit, ValidationError};
use crate::domain::{AbstractState, BasisLabel};

pub use state::{simulate, single_qubit_matrix, DenseState, DEFAULT_MAX_QUBITS};

/// Default amplitude and rank tolerance.
pub const DEFAULT_EPS: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("{n} qubits exceeds the oracle limit of {max}")]
    TooManyQubits { n: usize, max: usize },
    #[error("amplitude vector of length {0} is not a power of two")]
    BadLength(usize),
    #[error("amplitudes have squared norm {0}, expected 1")]
    NotNormalized(f64),
    #[error("abstract state has {abstract_qubits} qubits but the concrete state has {concrete_qubits}")]
    DimensionMismatch {
        abstract_qubits: usize,
        concrete_qubits: usize,
    },
    #[error(transparent)]
    Invalid(#[from] ValidationError),
}

/// Basis of a single qubit as read from a concrete state.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BasisClass {
    /// Separable and `|0>` or `|1>` up to phase.
    Standard,
    /// Separable and `|+>` or `|->` up to phase.
    Diagonal,
    Neither,
}

/// Nonzero computational-basis terms of a state.
#[derive(Clone, Debug, PartialEq)]
pub struct SubstateTable {
    n: usize,
    rows: Vec<(usize, Complex64)>,
}

impl SubstateTable {
    pub fn rows(&self) -> &[(usize, Complex64)] {
        &self.rows
    }

    /// Value of qubit `q` in the term with basis index `index`.
    pub fn bit(&self, index: usize, q: usize) -> bool {
        index >> (self.n - 1 - q) & 1 == 1
    }

    /// The term's bits as a string, qubit 0 first.
    pub fn bitstring(&self, index: usize) -> String {
        (0..self.n)
            .map(|q| if self.bit(index, q) { '1' } else { '0' })
            .collect()
    }

    /// Whether both values of `q` occur among the terms.
    pub fn in_superposition(&self, q: usize) -> bool {
        let mut seen = [false; 2];
        for &(k, _) in &self.rows {
            seen[self.bit(k, q) as usize] = true;
        }
        seen[0] && seen[1]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ViolationKind {
    Entanglement,
    Level,
    Label,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub qubits: Vec<usize>,
    pub explanation: String,
}

/// Outcome of comparing an abstract state with the exact state it should
/// describe.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SoundnessReport {
    pub entanglement_ok: bool,
    pub level_ok: bool,
    pub label_ok: bool,
    pub violations: Vec<Violation>,
}

impl SoundnessReport {
    pub fn is_sound(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Tolerance and size limit shared by the concrete checks.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Oracle {
    pub eps: f64,
    pub max_qubits: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle {
            eps: DEFAULT_EPS,
            max_qubits: DEFAULT_MAX_QUBITS,
        }
    }
}

impl Oracle {
    pub fn new(eps: f64, max_qubits: usize) -> Self {
        Oracle { eps, max_qubits }
    }

    pub fn simulate(&self, circuit: &Circuit) -> Result<DenseState, OracleError> {
        simulate(circuit, self.max_qubits)
    }

    fn check_size(&self, s: &DenseState) -> Result<(), OracleError> {
        if s.qubits() > self.max_qubits {
            Err(OracleError::TooManyQubits {
                n: s.qubits(),
                max: self.max_qubits,
            })
        } else {
            Ok(())
        }
    }

    pub fn substates(&self, s: &DenseState) -> SubstateTable {
        SubstateTable {
            n: s.qubits(),
            rows: s
                .amplitudes()
                .iter()
                .enumerate()
                .filter(|(_, a)| a.norm() > self.eps)
                .map(|(k, &a)| (k, a))
                .collect(),
        }
    }

    /// Whether the state factorizes across `qubits | rest`.
    pub fn factorizes(&self, s: &DenseState, qubits: &[usize]) -> bool {
        let n = s.qubits();
        let mask = qubits.iter().fold(0usize, |m, &q| m | 1 << (n - 1 - q));
        rank_one_residual(s.amplitudes(), mask) < self.eps
    }

    /// The finest partition of the qubits across which the state is a
    /// tensor product. Blocks are ordered by smallest member.
    pub fn finest_separable_partition(
        &self,
        s: &DenseState,
    ) -> Result<Vec<Vec<usize>>, OracleError> {
        self.check_size(s)?;
        let n = s.qubits();
        if n == 0 {
            return Ok(Vec::new());
        }
        let full = (1usize << n) - 1;
        let top = 1usize << (n - 1);
        // every bipartition once, keyed by the side holding qubit 0
        let cuts: Vec<usize> = (0..top)
            .map(|rest| top | rest)
            .filter(|&m| m != full && rank_one_residual(s.amplitudes(), m) < self.eps)
            .collect();
        let bit = |q: usize| 1usize << (n - 1 - q);
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for q in 0..n {
            let home = blocks.iter_mut().find(|b| {
                let r = b[0];
                cuts.iter().all(|&m| (m & bit(q) == 0) == (m & bit(r) == 0))
            });
            match home {
                Some(b) => b.push(q),
                None => blocks.push(vec![q]),
            }
        }
        Ok(blocks)
    }

    /// Pairs `(i, j)`, `i < j`, that are both in superposition and whose
    /// bits are equal in every term or different in every term.
    pub fn levels(&self, s: &DenseState) -> Result<Vec<(usize, usize)>, OracleError> {
        self.check_size(s)?;
        let table = self.substates(s);
        let n = s.qubits();
        let superposed: Vec<bool> = (0..n).map(|q| table.in_superposition(q)).collect();
        let leveled = |i: usize, j: usize| {
            superposed[i] && superposed[j] && {
                let mut rel = table
                    .rows
                    .iter()
                    .map(|&(k, _)| table.bit(k, i) ^ table.bit(k, j));
                let first = rel.next();
                rel.all(|x| Some(x) == first)
            }
        };
        let mut pairs = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if leveled(i, j) {
                    pairs.push((i, j));
                }
            }
        }
        // same-level is transitive
        for &(a, b) in &pairs {
            for &(c, d) in &pairs {
                if b == c {
                    assert!(pairs.contains(&(a, d)), "levels not transitive at {a},{b},{d}");
                }
            }
        }
        Ok(pairs)
    }

    pub fn basis(&self, s: &DenseState, q: usize) -> Result<BasisClass, OracleError> {
        self.check_size(s)?;
        let n = s.qubits();
        assert!(q < n, "qubit {q} out of range");
        let bit = 1usize << (n - 1 - q);
        let amps = s.amplitudes();
        if n > 1 && rank_one_residual(amps, bit) >= self.eps {
            return Ok(BasisClass::Neither);
        }
        // the factor on q is proportional to the pivot's column
        let pivot = argmax(amps);
        let v0 = amps[pivot & !bit];
        let v1 = amps[pivot | bit];
        let norm = (v0.norm_sqr() + v1.norm_sqr()).sqrt();
        let (v0, v1) = (v0 / norm, v1 / norm);
        Ok(if v0.norm() < self.eps || v1.norm() < self.eps {
            BasisClass::Standard
        } else if (v0 - v1).norm() < self.eps || (v0 + v1).norm() < self.eps {
            BasisClass::Diagonal
        } else {
            BasisClass::Neither
        })
    }

    /// Compare an abstract state with the exact state it claims to describe.
    pub fn check_soundness(
        &self,
        st: &AbstractState,
        s: &DenseState,
    ) -> Result<SoundnessReport, OracleError> {
        if st.qubits() != s.qubits() {
            return Err(OracleError::DimensionMismatch {
                abstract_qubits: st.qubits(),
                concrete_qubits: s.qubits(),
            });
        }
        let n = s.qubits();
        let mut violations = Vec::new();

        let exact = self.finest_separable_partition(s)?;
        for block in &exact {
            for (a, &i) in block.iter().enumerate() {
                for &j in &block[a + 1..] {
                    if !st.separability().same_block(i, j) {
                        violations.push(Violation {
                            kind: ViolationKind::Entanglement,
                            qubits: vec![i, j],
                            explanation: format!(
                                "qubits {i} and {j} are entangled but the analysis separates them"
                            ),
                        });
                    }
                }
            }
        }

        let leveled = self.levels(s)?;
        for i in 0..n {
            for j in i + 1..n {
                if st.levels().same_block(i, j) && !leveled.contains(&(i, j)) {
                    violations.push(Violation {
                        kind: ViolationKind::Level,
                        qubits: vec![i, j],
                        explanation: format!(
                            "qubits {i} and {j} are marked on the same level but are not"
                        ),
                    });
                }
            }
        }

        for q in 0..n {
            let expected = match st.label(q) {
                BasisLabel::Standard => BasisClass::Standard,
                BasisLabel::Diagonal => BasisClass::Diagonal,
                BasisLabel::Top => continue,
            };
            let actual = self.basis(s, q)?;
            if actual != expected {
                violations.push(Violation {
                    kind: ViolationKind::Label,
                    qubits: vec![q],
                    explanation: format!(
                        "qubit {q} is labeled {} but its exact basis is {actual:?}",
                        st.label(q)
                    ),
                });
            }
        }

        let ok = |kind| !violations.iter().any(|v: &Violation| v.kind == kind);
        Ok(SoundnessReport {
            entanglement_ok: ok(ViolationKind::Entanglement),
            level_ok: ok(ViolationKind::Level),
            label_ok: ok(ViolationKind::Label),
            violations,
        })
    }
}

fn argmax(amps: &[Complex64]) -> usize {
    amps.iter()
        .enumerate()
        .max_by(|a, b| a.1.norm_sqr().total_cmp(&b.1.norm_sqr()))
        .map(|(k, _)| k)
        .unwrap_or(0)
}

/// Frobenius distance between the amplitude matrix for the bipartition
/// `mask | !mask` and its pivot rank-one reconstruction.
fn rank_one_residual(amps: &[Complex64], mask: usize) -> f64 {
    let p = argmax(amps);
    let pivot = amps[p];
    if pivot.norm() == 0.0 {
        return 0.0;
    }
    let mut sum = 0.0;
    for (k, &a) in amps.iter().enumerate() {
        let same_col = (k & mask) | (p & !mask);
        let same_row = (p & mask) | (k & !mask);
        let predicted = amps[same_col] * amps[same_row] / pivot;
        sum += (a - predicted).norm_sqr();
    }
    sum.sqrt()
}

#[cfg(test)]
mod tests {
    use std::f64::consts::FRAC_1_SQRT_2;

    use super::*;
    use crate::analyzer::{analyze, AnalysisMode};
    use crate::circuit::parse_circuit;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn state(amps: &[f64]) -> DenseState {
        DenseState::from_amplitudes(amps.iter().map(|&a| c(a)).collect()).unwrap()
    }

    fn bell() -> DenseState {
        let h = FRAC_1_SQRT_2;
        state(&[h, 0.0, 0.0, h])
    }

    fn sim(src: &str) -> DenseState {
        Oracle::default().simulate(&parse_circuit(src).unwrap()).unwrap()
    }

    #[test]
    fn finest_partitions() {
        let o = Oracle::default();
        assert_eq!(o.finest_separable_partition(&bell()).unwrap(), vec![vec![0, 1]]);
        assert_eq!(
            o.finest_separable_partition(&DenseState::zero(2)).unwrap(),
            vec![vec![0], vec![1]]
        );
        let padded = bell().tensor(&DenseState::zero(2));
        assert_eq!(
            o.finest_separable_partition(&padded).unwrap(),
            vec![vec![0, 1], vec![2], vec![3]]
        );
        // Bell pair on qubits 0 and 2 with |+> on qubit 1
        let s = sim("H ** I ** H oo CX ** I oo I ** SW");
        assert_eq!(o.finest_separable_partition(&s).unwrap(), vec![vec![0, 2], vec![1]]);
        assert_eq!(
            o.finest_separable_partition(&DenseState::zero(0)).unwrap(),
            Vec::<Vec<usize>>::new()
        );
    }

    #[test]
    fn level_pairs() {
        let o = Oracle::default();
        assert_eq!(o.levels(&bell()).unwrap(), vec![(0, 1)]);
        let h = FRAC_1_SQRT_2;
        assert_eq!(o.levels(&state(&[0.0, h, h, 0.0])).unwrap(), vec![(0, 1)]);
        assert_eq!(o.levels(&DenseState::zero(2)).unwrap(), vec![]);
        let t = 1.0 / 3f64.sqrt();
        let psi4 = state(&[t, t, 0.0, t]);
        assert_eq!(o.levels(&psi4).unwrap(), vec![]);
        assert_eq!(o.finest_separable_partition(&psi4).unwrap(), vec![vec![0, 1]]);
    }

    #[test]
    fn basis_classes() {
        let o = Oracle::default();
        assert_eq!(o.basis(&sim("H"), 0).unwrap(), BasisClass::Diagonal);
        assert_eq!(o.basis(&sim("H oo T"), 0).unwrap(), BasisClass::Neither);
        assert_eq!(o.basis(&bell(), 0).unwrap(), BasisClass::Neither);
        assert_eq!(o.basis(&sim("X ** H"), 0).unwrap(), BasisClass::Standard);
        assert_eq!(o.basis(&sim("X ** H"), 1).unwrap(), BasisClass::Diagonal);
        assert_eq!(o.basis(&sim("H oo Z"), 0).unwrap(), BasisClass::Diagonal);
        assert_eq!(o.basis(&sim("X oo Y"), 0).unwrap(), BasisClass::Standard);
    }

    #[test]
    fn global_phase_is_ignored() {
        let o = Oracle::default();
        let s = sim("H ** I ** H oo CX ** T").with_global_phase(1.234);
        assert_eq!(
            o.finest_separable_partition(&s).unwrap(),
            vec![vec![0, 1], vec![2]]
        );
        assert_eq!(o.basis(&sim("H").with_global_phase(2.0), 0).unwrap(), BasisClass::Diagonal);
    }

    #[test]
    fn substate_table() {
        let o = Oracle::default();
        let t = o.substates(&bell().tensor(&DenseState::zero(1)));
        let bits: Vec<_> = t.rows().iter().map(|&(k, _)| t.bitstring(k)).collect();
        assert_eq!(bits, vec!["000", "110"]);
        assert!(t.in_superposition(0));
        assert!(!t.in_superposition(2));
    }

    #[test]
    fn soundness_of_simple_circuits() {
        let o = Oracle::default();
        for src in ["I ** I", "H ** I oo CX", "H ** I oo CX oo CX", "H oo T", "X ** H oo CX"] {
            let circuit = parse_circuit(src).unwrap();
            for mode in [AnalysisMode::Levels, AnalysisMode::NoLevels] {
                let st = analyze(&circuit, mode).unwrap();
                let report = o.check_soundness(&st, &o.simulate(&circuit).unwrap()).unwrap();
                assert!(report.is_sound(), "{src} in {mode}: {report:?}");
            }
        }
    }

    #[test]
    fn soundness_flags_each_kind() {
        let o = Oracle::default();
        // claims everything separable, standard and unleveled for a Bell pair
        let report = o.check_soundness(&AbstractState::new(2), &bell()).unwrap();
        assert!(!report.entanglement_ok);
        assert!(report.level_ok);
        assert!(!report.label_ok);
        assert_eq!(report.violations[0].qubits, vec![0, 1]);

        let st = analyze(&parse_circuit("H ** I oo CX").unwrap(), AnalysisMode::Levels).unwrap();
        let report = o.check_soundness(&st, &DenseState::zero(2)).unwrap();
        assert!(report.entanglement_ok && report.label_ok && !report.level_ok);
    }

    #[test]
    fn dimension_checks() {
        let o = Oracle::default();
        assert!(matches!(
            o.check_soundness(&AbstractState::new(3), &bell()),
            Err(OracleError::DimensionMismatch { .. })
        ));
        let small = Oracle::new(DEFAULT_EPS, 1);
        assert!(matches!(
            small.levels(&bell()),
            Err(OracleError::TooManyQubits { n: 2, max: 1 })
        ));
    }
}
