//! On-disk JSON formats. All phases are radian angles, which round-trip
//! bit-exactly because the gate IR stores the very same angles.

use crate::error::CliError;
use incant_core::synthesis::{DiagonalSpec, PhaseRun, DEFAULT_RUN_TOLERANCE};
use incant_core::{Circuit, Control, Gate, QuditParams};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Input description of a diagonal: either run-length encoded or dense.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagonalFile {
    pub d: u32,
    pub n: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub runs: Option<Vec<RunEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub entries: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunEntry {
    /// Phase angle in radians; the diagonal entry is `e^{i theta}`.
    pub theta: f64,
    pub count: u64,
}

impl DiagonalFile {
    pub fn to_spec(&self) -> Result<DiagonalSpec, CliError> {
        let params = QuditParams::new(self.d, self.n)?;
        match (&self.runs, &self.entries) {
            (Some(runs), None) => {
                let runs = runs
                    .iter()
                    .map(|r| {
                        if !r.theta.is_finite() {
                            return Err(CliError::from(incant_core::Error::NonFiniteAngle));
                        }
                        Ok(PhaseRun {
                            phase: Complex64::cis(r.theta),
                            length: r.count,
                        })
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(DiagonalSpec::new(params, runs)?)
            }
            (None, Some(entries)) => {
                if let Some(bad) = entries.iter().find(|t| !t.is_finite()) {
                    let _ = bad;
                    return Err(CliError::from(incant_core::Error::NonFiniteAngle));
                }
                let phases: Vec<Complex64> = entries.iter().map(|&t| Complex64::cis(t)).collect();
                Ok(DiagonalSpec::from_entries(
                    params,
                    &phases,
                    DEFAULT_RUN_TOLERANCE,
                )?)
            }
            _ => Err(CliError::Input(
                "diagonal file must provide exactly one of `runs` or `entries`".into(),
            )),
        }
    }
}

/// Serialized circuit. Field values survive parse/serialize bit-exactly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CircuitFile {
    pub d: u32,
    pub data_wires: u32,
    pub ancilla_wires: u32,
    pub global_phase_theta: f64,
    pub gates: Vec<GateFile>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GateFile {
    Inc {
        target: usize,
        power: u32,
    },
    Mul {
        target: usize,
    },
    Phase {
        target: usize,
        phi_theta: f64,
        alphas_theta: Vec<f64>,
    },
    Controlled {
        target: usize,
        power: u32,
        controls: Vec<ControlEntry>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ControlEntry {
    pub wire: usize,
    pub value: u32,
}

impl CircuitFile {
    pub fn from_circuit(c: &Circuit) -> Self {
        let gates = c
            .gates()
            .iter()
            .map(|gate| match gate {
                Gate::IncPow { target, power } => GateFile::Inc {
                    target: *target,
                    power: *power,
                },
                Gate::Mul { target } => GateFile::Mul { target: *target },
                Gate::Phase {
                    target,
                    theta,
                    alphas,
                } => GateFile::Phase {
                    target: *target,
                    phi_theta: *theta,
                    alphas_theta: alphas.clone(),
                },
                Gate::Controlled {
                    controls,
                    target,
                    power,
                } => GateFile::Controlled {
                    target: *target,
                    power: *power,
                    controls: controls
                        .iter()
                        .map(|c| ControlEntry {
                            wire: c.wire,
                            value: c.value,
                        })
                        .collect(),
                },
            })
            .collect();
        CircuitFile {
            d: c.d(),
            data_wires: c.data_wires() as u32,
            ancilla_wires: c.ancilla_wires() as u32,
            global_phase_theta: c.global_phase(),
            gates,
        }
    }

    pub fn to_circuit(&self) -> Result<Circuit, CliError> {
        if !self.global_phase_theta.is_finite() {
            return Err(CliError::from(incant_core::Error::NonFiniteAngle));
        }
        let params = QuditParams::new(self.d, self.data_wires)?;
        let mut circuit = Circuit::new(params, self.ancilla_wires as usize);
        circuit.set_global_phase(self.global_phase_theta);
        for gate in &self.gates {
            let gate = match gate {
                GateFile::Inc { target, power } => Gate::IncPow {
                    target: *target,
                    power: *power,
                },
                GateFile::Mul { target } => Gate::Mul { target: *target },
                GateFile::Phase {
                    target,
                    phi_theta,
                    alphas_theta,
                } => Gate::Phase {
                    target: *target,
                    theta: *phi_theta,
                    alphas: alphas_theta.clone(),
                },
                GateFile::Controlled {
                    target,
                    power,
                    controls,
                } => Gate::Controlled {
                    controls: controls
                        .iter()
                        .map(|c| Control {
                            wire: c.wire,
                            value: c.value,
                        })
                        .collect(),
                    target: *target,
                    power: *power,
                },
            };
            circuit.push(gate)?;
        }
        Ok(circuit)
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("circuit files are serializable");
        text.push('\n');
        text
    }
}

/// One gate per line, controls as `wire=value` pairs. Meant for docs and
/// diffs, not parsing.
pub fn render_pretty(c: &Circuit) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "d={} data_wires={} ancilla_wires={} global_phase_theta={:?}\n",
        c.d(),
        c.data_wires(),
        c.ancilla_wires(),
        c.global_phase()
    ));
    for gate in c.gates() {
        let line = match gate {
            Gate::IncPow { target, power } => format!("inc target={target} power={power}"),
            Gate::Mul { target } => format!("mul target={target}"),
            Gate::Phase {
                target,
                theta,
                alphas,
            } => format!("phase target={target} theta={theta:?} alphas={alphas:?}"),
            Gate::Controlled {
                controls,
                target,
                power,
            } => {
                let conditions: Vec<String> = controls
                    .iter()
                    .map(|c| format!("{}={}", c.wire, c.value))
                    .collect();
                format!(
                    "controlled[{}] target={target} power={power}",
                    conditions.join(",")
                )
            }
        };
        out.push_str(&line);
        out.push('\n');
    }
    out
}
