//! Time-ordered gate lists over a data register plus ancilla wires.

use crate::dits::QuditParams;
use crate::error::Result;
use crate::gate::Gate;
use num_complex::Complex64;

/// A circuit over `n` data wires (0..n, wire 0 most significant) followed by
/// `ancilla_wires` ancillas. Gates are applied first element first. The global
/// phase is bookkeeping only and never becomes a gate.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    params: QuditParams,
    ancilla_wires: usize,
    gates: Vec<Gate>,
    global_phase: f64,
}

impl Circuit {
    pub fn new(params: QuditParams, ancilla_wires: usize) -> Self {
        Circuit {
            params,
            ancilla_wires,
            gates: Vec::new(),
            global_phase: 0.0,
        }
    }

    pub fn params(&self) -> QuditParams {
        self.params
    }

    pub fn d(&self) -> u32 {
        self.params.d()
    }

    pub fn data_wires(&self) -> usize {
        self.params.data_wires()
    }

    pub fn ancilla_wires(&self) -> usize {
        self.ancilla_wires
    }

    pub fn wire_count(&self) -> usize {
        self.data_wires() + self.ancilla_wires
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Global phase angle in radians.
    pub fn global_phase(&self) -> f64 {
        self.global_phase
    }

    pub fn global_phase_factor(&self) -> Complex64 {
        Complex64::cis(self.global_phase)
    }

    pub fn set_global_phase(&mut self, theta: f64) {
        self.global_phase = theta;
    }

    /// Validates and appends a gate. Zero-control conditioned gates are
    /// normalized to bare increments before storage.
    pub fn push(&mut self, gate: Gate) -> Result<()> {
        let gate = match gate {
            Gate::Controlled {
                controls,
                target,
                power,
            } => Gate::controlled(controls, target, power, self.d()),
            other => other,
        };
        gate.validate(self.d(), self.wire_count())?;
        self.gates.push(gate);
        Ok(())
    }

    pub fn extend<I: IntoIterator<Item = Gate>>(&mut self, gates: I) -> Result<()> {
        for gate in gates {
            self.push(gate)?;
        }
        Ok(())
    }

    /// Reversed gate list with every gate inverted; global phase negated.
    pub fn inverse(&self) -> Circuit {
        let d = self.d();
        Circuit {
            params: self.params,
            ancilla_wires: self.ancilla_wires,
            gates: self.gates.iter().rev().map(|g| g.inverse(d)).collect(),
            global_phase: -self.global_phase,
        }
    }

    pub fn counts(&self) -> CountReport {
        CountReport::of_gates(&self.gates, self.data_wires())
    }
}

/// Gate tally by category.
///
/// All gate-count fields are additive under circuit concatenation;
/// `ancillas_used` counts distinct ancilla wires touched and is not.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CountReport {
    /// Bare increments, negations and phase gates.
    pub single_qudit: u64,
    /// Phase gates alone (also included in `single_qudit`).
    pub phase: u64,
    /// Singly-controlled increments.
    pub controlled_1: u64,
    /// Doubly-controlled increments.
    pub controlled_2: u64,
    /// Conditioned increments with three or more controls (pre-lowering only).
    pub controlled_many: u64,
    /// Total control levels over all conditioned gates.
    pub control_levels: u64,
    /// Distinct ancilla wires referenced by at least one gate.
    pub ancillas_used: u64,
}

impl CountReport {
    pub fn of_gates(gates: &[Gate], data_wires: usize) -> Self {
        let mut report = CountReport::default();
        let mut ancillas: Vec<usize> = Vec::new();
        for gate in gates {
            match gate {
                Gate::Phase { .. } => {
                    report.single_qudit += 1;
                    report.phase += 1;
                }
                Gate::IncPow { .. } | Gate::Mul { .. } => report.single_qudit += 1,
                Gate::Controlled { controls, .. } => {
                    report.control_levels += controls.len() as u64;
                    match controls.len() {
                        1 => report.controlled_1 += 1,
                        2 => report.controlled_2 += 1,
                        _ => report.controlled_many += 1,
                    }
                }
            }
            for wire in gate.wires() {
                if wire >= data_wires && !ancillas.contains(&wire) {
                    ancillas.push(wire);
                }
            }
        }
        report.ancillas_used = ancillas.len() as u64;
        report
    }

    /// Componentwise sum of the additive gate counts; `ancillas_used` is
    /// combined as a maximum since concatenated circuits share wires.
    pub fn combine(&self, other: &CountReport) -> CountReport {
        CountReport {
            single_qudit: self.single_qudit + other.single_qudit,
            phase: self.phase + other.phase,
            controlled_1: self.controlled_1 + other.controlled_1,
            controlled_2: self.controlled_2 + other.controlled_2,
            controlled_many: self.controlled_many + other.controlled_many,
            control_levels: self.control_levels + other.control_levels,
            ancillas_used: self.ancillas_used.max(other.ancillas_used),
        }
    }

    pub fn total_gates(&self) -> u64 {
        self.single_qudit + self.controlled_1 + self.controlled_2 + self.controlled_many
    }
}
