use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use super::OracleError;
use crate::circuit::{Circuit, Gate};

/// Qubit count accepted by the oracle unless configured otherwise.
pub const DEFAULT_MAX_QUBITS: usize = 12;

const NORM_TOLERANCE: f64 = 1e-9;

type Matrix2 = [[Complex64; 2]; 2];

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// The unitary of a single-qubit gate; `None` for two-qubit gates.
pub fn single_qubit_matrix(gate: Gate) -> Option<Matrix2> {
    let o = c(0.0, 0.0);
    let l = c(1.0, 0.0);
    let h = c(FRAC_1_SQRT_2, 0.0);
    Some(match gate {
        Gate::I => [[l, o], [o, l]],
        Gate::X => [[o, l], [l, o]],
        Gate::Y => [[o, c(0.0, -1.0)], [c(0.0, 1.0), o]],
        Gate::Z => [[l, o], [o, -l]],
        Gate::H => [[h, h], [h, -h]],
        Gate::T => [[l, o], [o, c(FRAC_1_SQRT_2, FRAC_1_SQRT_2)]],
        Gate::Swap | Gate::Cx => return None,
    })
}

/// A pure state of `n` qubits as `2^n` amplitudes. Qubit 0 is the most
/// significant bit of the amplitude index.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseState {
    n: usize,
    amps: Vec<Complex64>,
}

impl DenseState {
    /// `|0...0>`.
    pub fn zero(n: usize) -> Self {
        Self::basis(n, 0)
    }

    /// Computational basis state `|k>`.
    pub fn basis(n: usize, k: usize) -> Self {
        let mut amps = vec![c(0.0, 0.0); 1 << n];
        amps[k] = c(1.0, 0.0);
        DenseState { n, amps }
    }

    /// Wrap amplitudes; the length must be a power of two and the norm 1.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self, OracleError> {
        let len = amps.len();
        if !len.is_power_of_two() {
            return Err(OracleError::BadLength(len));
        }
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(OracleError::NotNormalized(norm));
        }
        Ok(DenseState {
            n: len.trailing_zeros() as usize,
            amps,
        })
    }

    pub fn qubits(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `self` on the low qubits, `other` on the ones after it.
    pub fn tensor(&self, other: &DenseState) -> DenseState {
        let mut amps = Vec::with_capacity(self.amps.len() * other.amps.len());
        for a in &self.amps {
            amps.extend(other.amps.iter().map(|b| a * b));
        }
        DenseState {
            n: self.n + other.n,
            amps,
        }
    }

    /// Multiply every amplitude by the same unit phase.
    pub fn with_global_phase(&self, theta: f64) -> DenseState {
        let phase = Complex64::from_polar(1.0, theta);
        DenseState {
            n: self.n,
            amps: self.amps.iter().map(|a| a * phase).collect(),
        }
    }

    fn mask(&self, q: usize) -> usize {
        1 << (self.n - 1 - q)
    }

    pub fn apply_single(&mut self, m: &Matrix2, q: usize) {
        assert!(q < self.n, "qubit {q} out of range");
        let bit = self.mask(q);
        for k in 0..self.amps.len() {
            if k & bit == 0 {
                let (a0, a1) = (self.amps[k], self.amps[k | bit]);
                self.amps[k] = m[0][0] * a0 + m[0][1] * a1;
                self.amps[k | bit] = m[1][0] * a0 + m[1][1] * a1;
            }
        }
    }

    pub fn apply_cx(&mut self, control: usize, target: usize) {
        assert!(control < self.n && target < self.n && control != target);
        let (cb, tb) = (self.mask(control), self.mask(target));
        for k in 0..self.amps.len() {
            if k & cb != 0 && k & tb == 0 {
                self.amps.swap(k, k | tb);
            }
        }
    }

    pub fn apply_swap(&mut self, a: usize, b: usize) {
        assert!(a < self.n && b < self.n);
        let (ab, bb) = (self.mask(a), self.mask(b));
        for k in 0..self.amps.len() {
            if k & ab != 0 && k & bb == 0 {
                self.amps.swap(k, (k & !ab) | bb);
            }
        }
    }

    /// Apply a gate with its lowest wire at `index`, as the analyzer does.
    pub fn apply_gate(&mut self, gate: Gate, index: usize) {
        match gate {
            Gate::Cx => self.apply_cx(index, index + 1),
            Gate::Swap => self.apply_swap(index, index + 1),
            g => self.apply_single(&single_qubit_matrix(g).expect("single-qubit gate"), index),
        }
    }
}

/// Run `circuit` from `|0...0>` with gates applied in analyzer order.
pub fn simulate(circuit: &Circuit, max_qubits: usize) -> Result<DenseState, OracleError> {
    let n = circuit.validate()?;
    if n > max_qubits {
        return Err(OracleError::TooManyQubits { n, max: max_qubits });
    }
    let mut state = DenseState::zero(n);
    for p in circuit.placements() {
        state.apply_gate(p.gate, p.index);
    }
    Ok(state)
}
