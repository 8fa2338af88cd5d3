//! The abstract domain: per-qubit basis labels plus two partitions of the
//! qubits, one over-approximating non-separability and one recording pairs
//! known to be on the same level.

mod partition;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use partition::Partition;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DomainError {
    #[error("qubit index {index} out of range for {len} qubits")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("array {0:?} is not a canonical partition encoding")]
    NotCanonical(Vec<usize>),
    #[error("partition has an empty block")]
    EmptyBlock,
    #[error("qubit {0} appears in more than one block")]
    DuplicateMember(usize),
    #[error("qubit {0} is not in any block")]
    MissingMember(usize),
    #[error("state components disagree on qubit count ({labels} labels, {sep} and {lvl} partition entries)")]
    LengthMismatch { labels: usize, sep: usize, lvl: usize },
    #[error("unknown basis label `{0}`")]
    UnknownLabel(String),
}

/// What is known about a qubit's basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BasisLabel {
    /// `|0>` or `|1>` up to phase.
    #[serde(rename = "s")]
    Standard,
    /// `|+>` or `|->` up to phase.
    #[serde(rename = "d")]
    Diagonal,
    /// Anything.
    #[serde(rename = "top")]
    Top,
}

impl BasisLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            BasisLabel::Standard => "s",
            BasisLabel::Diagonal => "d",
            BasisLabel::Top => "top",
        }
    }
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BasisLabel {
    type Err = DomainError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "s" => Ok(BasisLabel::Standard),
            "d" => Ok(BasisLabel::Diagonal),
            "top" | "⊤" => Ok(BasisLabel::Top),
            other => Err(DomainError::UnknownLabel(other.to_owned())),
        }
    }
}

/// Labels, separability partition and levels partition over `n` qubits.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbstractState {
    labels: Vec<BasisLabel>,
    sep: Partition,
    lvl: Partition,
}

impl AbstractState {
    /// The state for `|0...0>`: every label `s`, every qubit in its own block
    /// of both partitions.
    pub fn new(n: usize) -> Self {
        AbstractState {
            labels: vec![BasisLabel::Standard; n],
            sep: Partition::singletons(n),
            lvl: Partition::singletons(n),
        }
    }

    pub fn from_parts(
        labels: Vec<BasisLabel>,
        sep: Partition,
        lvl: Partition,
    ) -> Result<Self, DomainError> {
        if labels.len() != sep.len() || labels.len() != lvl.len() {
            return Err(DomainError::LengthMismatch {
                labels: labels.len(),
                sep: sep.len(),
                lvl: lvl.len(),
            });
        }
        Ok(AbstractState { labels, sep, lvl })
    }

    pub fn qubits(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[BasisLabel] {
        &self.labels
    }

    pub fn label(&self, q: usize) -> BasisLabel {
        self.labels[q]
    }

    /// Qubits that may be non-separable share a block.
    pub fn separability(&self) -> &Partition {
        &self.sep
    }

    /// Qubits known to be on the same level share a block.
    pub fn levels(&self) -> &Partition {
        &self.lvl
    }

    pub(crate) fn parts_mut(&mut self) -> (&mut [BasisLabel], &mut Partition, &mut Partition) {
        (&mut self.labels, &mut self.sep, &mut self.lvl)
    }

    /// Exchange everything known about qubits `i` and `i + 1`.
    pub fn swap_adjacent(&mut self, i: usize) -> Result<(), DomainError> {
        if i + 1 >= self.labels.len() {
            return Err(DomainError::IndexOutOfRange {
                index: i + 1,
                len: self.labels.len(),
            });
        }
        self.labels.swap(i, i + 1);
        self.sep.swap_adjacent(i)?;
        self.lvl.swap_adjacent(i)
    }

    /// Checks the structural invariants tying the components together: every
    /// levels block is inside a separability block and, when
    /// `max_level_block` is given, no levels block is larger than that.
    pub fn check_invariants(&self, max_level_block: Option<usize>) -> Result<(), String> {
        for block in self.lvl.blocks() {
            if block.len() < 2 {
                continue;
            }
            if let Some(max) = max_level_block {
                if block.len() > max {
                    return Err(format!("levels block {block:?} has more than {max} members"));
                }
            }
            if block.iter().any(|&q| !self.sep.same_block(q, block[0])) {
                return Err(format!(
                    "levels block {block:?} is not inside one separability block of {}",
                    self.sep
                ));
            }
        }
        Ok(())
    }
}

impl fmt::Display for AbstractState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("b=[")?;
        for (k, l) in self.labels.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "] sep={} lvl={}", self.sep, self.lvl)
    }
}
