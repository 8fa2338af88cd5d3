//! WebAssembly bindings used by the demo page in `www/`.
//!
//! Every export takes circuit source text and returns a JSON string. The
//! work happens in [`api`], which is plain Rust and tested natively; the
//! exported functions only turn its errors into JavaScript exceptions.

pub mod api;

use wasm_bindgen::prelude::*;

/// Analyze `source` in `mode` (`levels`, `no-levels` or `unsafe-leveling`).
#[wasm_bindgen]
pub fn analyze(source: &str, mode: &str, trace: bool) -> Result<String, JsError> {
    api::analyze(source, mode, trace).map_err(|e| JsError::new(&e.to_string()))
}

/// Both safe analyses and the pairs only the levels analysis separates.
#[wasm_bindgen]
pub fn compare(source: &str) -> Result<String, JsError> {
    api::compare(source).map_err(|e| JsError::new(&e.to_string()))
}

/// Analyze, simulate, and attach the soundness report.
#[wasm_bindgen]
pub fn check(source: &str, mode: &str) -> Result<String, JsError> {
    api::check(source, mode).map_err(|e| JsError::new(&e.to_string()))
}

/// Source text of a random circuit, one column per line.
#[wasm_bindgen]
pub fn random_circuit(qubits: usize, columns: usize, seed: u32) -> Result<String, JsError> {
    api::random_source(qubits, columns, u64::from(seed)).map_err(|e| JsError::new(&e.to_string()))
}
