//! Random well-formed circuits, built column by column.

use rand::Rng;

use crate::circuit::{Circuit, CircuitBuilder, Gate, NodeId};

const SINGLE: [Gate; 6] = [Gate::I, Gate::X, Gate::Y, Gate::Z, Gate::H, Gate::T];

/// Fill `n` wires bottom-up with gates drawn uniformly from the alphabet,
/// falling back to single-qubit gates when one wire is left. Returns the
/// tensor of the column.
pub fn random_column<R: Rng + ?Sized>(b: &mut CircuitBuilder, rng: &mut R, n: usize) -> NodeId {
    assert!(n > 0, "a column needs at least one wire");
    let mut parts = Vec::new();
    let mut wire = 0;
    while wire < n {
        let gate = if n - wire >= 2 {
            Gate::ALL[rng.gen_range(0..Gate::ALL.len())]
        } else {
            SINGLE[rng.gen_range(0..SINGLE.len())]
        };
        parts.push(b.gate(gate));
        wire += gate.height();
    }
    b.tensor_all(&parts).expect("non-empty column")
}

/// `columns` random columns over `n` wires, sequenced left to right.
pub fn random_circuit<R: Rng + ?Sized>(rng: &mut R, n: usize, columns: usize) -> Circuit {
    assert!(columns > 0, "a circuit needs at least one column");
    let mut b = CircuitBuilder::new();
    let cols: Vec<_> = (0..columns).map(|_| random_column(&mut b, rng, n)).collect();
    let root = b.seq_all(&cols).expect("non-empty circuit");
    b.finish(root)
}

/// A long circuit that reuses `distinct` random columns in a random order.
/// Columns are shared in the arena, so memory grows with `columns` only
/// through the sequence spine.
pub fn repeated_columns<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    distinct: usize,
    columns: usize,
) -> Circuit {
    assert!(distinct > 0 && columns > 0);
    let mut b = CircuitBuilder::new();
    let pool: Vec<_> = (0..distinct).map(|_| random_column(&mut b, rng, n)).collect();
    let mut root = pool[rng.gen_range(0..distinct)];
    for _ in 1..columns {
        let next = pool[rng.gen_range(0..distinct)];
        root = b.seq(root, next);
    }
    b.finish(root)
}
