//! Compiler for diagonal unitaries on registers of d-dimensional qudits.
//!
//! A diagonal with few distinct phases factors into a global phase and one
//! block per phase boundary. Each block needs a single phase gate on an
//! ancilla, sandwiched between an interval entangler and its inverse, and the
//! entangler lowers through signed base-d expansions into increments with at
//! most two control levels. An exact dense simulator verifies every stage.
//!
//! Modules:
//! - [`dits`], [`gate`], [`circuit`]: registers, the gate IR and circuits;
//! - [`expansion`]: signed base-d expansions and their cost models;
//! - [`synthesis`]: the lowering pipeline;
//! - [`sim`]: statevector simulator and definition-level oracles.

pub mod circuit;
pub mod dits;
pub mod error;
pub mod expansion;
pub mod gate;
pub mod sim;
pub mod synthesis;

pub use circuit::{Circuit, CountReport};
pub use dits::{DitString, QuditParams};
pub use error::{Error, Result};
pub use expansion::{
    brute_force_optimal, expansion_cost, greedy_expansion, standard_expansion, Cost, CostModel,
    SearchLimits, Sign, SignedExpansion, SignedTerm,
};
pub use gate::{Control, Gate};
pub use sim::{
    check_diagonal_equiv, circuit_unitary, oracle_cinc, oracle_cinc_permutation,
    oracle_entangler_permutation, oracle_multicontrolled, oracle_multicontrolled_permutation,
    EquivReport, Permutation, StateVector, UnitaryMatrix, DEFAULT_DIM_CAP,
};
pub use synthesis::{
    cancel_adjacent, lower_multicontrolled, phase_context, synth_block, synth_cinc, synth_diagonal,
    DiagonalSpec, ExpansionStrategy, MultiControlledInc, PhaseBlock, PhaseRun,
    DEFAULT_RUN_TOLERANCE,
};
