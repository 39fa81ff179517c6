//! Spin-s Dicke states on chains of `(2s+1)`-level qudits.
//!
//! - [`qudit`]: dense statevectors with little-endian digit indexing.
//! - [`gates`], [`circuit`]: level-swap, two-level rotation and complement
//!   gates with multi-qudit controls, and a JSON circuit format.
//! - [`dicke`]: the states themselves, three independent ways (closed form,
//!   lowering operator in [`spin`], qudit-Dicke decomposition).
//! - [`synth`]: deterministic preparation circuits and their gate counts.
//! - [`entropy`]: analytic Schmidt spectrum and entanglement entropy.
//!
//! Spins are passed doubled (`s2 = 2s`) so that half-integers stay integral.

pub mod circuit;
pub mod dicke;
pub mod entropy;
pub mod error;
pub mod exact;
pub mod gates;
pub mod qbinomial;
pub mod qudit;
pub mod spin;
pub mod synth;

pub use circuit::{Circuit, GateTally};
pub use dicke::{closed_form_state, decompose, reference_state, DickeSpec, KVector};
pub use entropy::{EntropyBase, EntropyReport};
pub use error::{Error, Result};
pub use exact::ExactAmplitude;
pub use gates::{apply, run, Control, Gate, GateKind};
pub use qudit::{fidelity, BasisIndex, StateVector};
pub use synth::{build_u, build_u_simplified, build_w, full_t_count, gate_count_n, prepare, Synthesis, TSpec};
