//! The lowering pipeline: diagonal -> phase blocks -> multi-controlled
//! increments -> singly/doubly-controlled increments plus single-qudit gates.
//!
//! A diagonal with k distinct phase runs factors into a global phase and k-1
//! blocks `diag(1,..,1, ratio,..,ratio)`. Each block is a phase gate on an
//! ancilla conjugated by an interval entangler, and the entangler splits into
//! one multi-controlled increment per term of a signed base-d expansion of its
//! length parameter.

use crate::circuit::Circuit;
use crate::dits::{DitString, QuditParams};
use crate::error::{Error, Result};
use crate::expansion::{
    brute_force_optimal, greedy_expansion, standard_expansion, CostModel, Sign, SignedExpansion,
};
use crate::gate::{Control, Gate};
use num_complex::Complex64;
use std::ops::Range;

/// Phases within this distance of each other (as |ratio - 1|) belong to the
/// same run.
pub const DEFAULT_RUN_TOLERANCE: f64 = 1e-9;

const UNIT_MODULUS_TOLERANCE: f64 = 1e-9;

/// One maximal run of equal diagonal entries.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseRun {
    pub phase: Complex64,
    pub length: u64,
}

/// Run-length description of a diagonal unitary.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalSpec {
    params: QuditParams,
    runs: Vec<PhaseRun>,
}

impl DiagonalSpec {
    /// Validates unit-modulus phases, positive run lengths summing to `d^n`,
    /// and distinct adjacent phases.
    pub fn new(params: QuditParams, runs: Vec<PhaseRun>) -> Result<Self> {
        let mut total = 0u64;
        for (index, run) in runs.iter().enumerate() {
            let modulus = run.phase.norm();
            if (modulus - 1.0).abs() > UNIT_MODULUS_TOLERANCE {
                return Err(Error::NonUnitModulus {
                    modulus,
                    tolerance: UNIT_MODULUS_TOLERANCE,
                });
            }
            if run.length == 0 {
                return Err(Error::EmptyRun { index });
            }
            total = total.checked_add(run.length).ok_or(Error::DiagonalLength {
                expected: params.dimension(),
                got: u64::MAX,
            })?;
        }
        if total != params.dimension() {
            return Err(Error::DiagonalLength {
                expected: params.dimension(),
                got: total,
            });
        }
        for (index, pair) in runs.windows(2).enumerate() {
            if (pair[1].phase / pair[0].phase - 1.0).norm() <= DEFAULT_RUN_TOLERANCE {
                return Err(Error::EqualAdjacentRuns { index });
            }
        }
        Ok(DiagonalSpec { params, runs })
    }

    /// Compresses a dense diagonal into maximal runs. Entries are compared
    /// against the head of the current run, so tolerance never drifts along a
    /// run. Equal phases separated by a different run stay separate runs.
    pub fn from_entries(
        params: QuditParams,
        entries: &[Complex64],
        tolerance: f64,
    ) -> Result<Self> {
        if entries.len() as u64 != params.dimension() {
            return Err(Error::DiagonalLength {
                expected: params.dimension(),
                got: entries.len() as u64,
            });
        }
        for entry in entries {
            let modulus = entry.norm();
            if (modulus - 1.0).abs() > UNIT_MODULUS_TOLERANCE {
                return Err(Error::NonUnitModulus {
                    modulus,
                    tolerance: UNIT_MODULUS_TOLERANCE,
                });
            }
        }
        let mut runs: Vec<PhaseRun> = Vec::new();
        for &entry in entries {
            match runs.last_mut() {
                Some(run) if (entry / run.phase - 1.0).norm() <= tolerance => run.length += 1,
                _ => runs.push(PhaseRun {
                    phase: entry,
                    length: 1,
                }),
            }
        }
        DiagonalSpec::new(params, runs)
    }

    pub fn params(&self) -> QuditParams {
        self.params
    }

    pub fn runs(&self) -> &[PhaseRun] {
        &self.runs
    }

    pub fn run_count(&self) -> usize {
        self.runs.len()
    }

    /// Dense diagonal entries, run by run.
    pub fn entries(&self) -> Vec<Complex64> {
        let mut out = Vec::with_capacity(self.params.dimension() as usize);
        for run in &self.runs {
            out.extend(std::iter::repeat_n(run.phase, run.length as usize));
        }
        out
    }

    /// Telescoping factorization: global phase of the first run, then one
    /// block per phase boundary. Block i multiplies the trailing `l` entries
    /// by `phase[i+1] / phase[i]`.
    pub fn phase_blocks(&self) -> (Complex64, Vec<PhaseBlock>) {
        let global = self.runs[0].phase;
        let mut blocks = Vec::with_capacity(self.runs.len().saturating_sub(1));
        let mut trailing: u64 = self.runs.iter().map(|r| r.length).sum();
        for pair in self.runs.windows(2) {
            trailing -= pair[0].length;
            let ratio = pair[1].phase / pair[0].phase;
            blocks.push(PhaseBlock {
                ratio: ratio / ratio.norm(),
                l: trailing,
            });
        }
        (global, blocks)
    }
}

/// One telescoping factor: the last `l` diagonal entries gain `ratio`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseBlock {
    pub ratio: Complex64,
    pub l: u64,
}

/// Compresses a dense diagonal and factors it into a global phase and
/// blocks in one step.
pub fn phase_context(
    entries: &[Complex64],
    params: QuditParams,
    tolerance: f64,
) -> Result<(Complex64, Vec<PhaseBlock>)> {
    Ok(DiagonalSpec::from_entries(params, entries, tolerance)?.phase_blocks())
}

/// An increment on the entangler target conditioned on the top `n - m` data
/// dits holding `control_values`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiControlledInc {
    pub control_values: DitString,
    /// Trailing unconditioned qudits; the control width is `n - m`.
    pub m: u32,
    pub sign: Sign,
}

impl MultiControlledInc {
    pub fn control_count(&self) -> usize {
        self.control_values.width()
    }

    /// Single-gate IR form: controls on the top data wires, increment on the
    /// wire just past the data register.
    pub fn as_gate(&self, params: QuditParams) -> Gate {
        let controls = self
            .control_values
            .digits()
            .iter()
            .enumerate()
            .map(|(wire, &value)| Control { wire, value })
            .collect();
        let power = match self.sign {
            Sign::Pos => 1,
            Sign::Neg => params.d() - 1,
        };
        Gate::controlled(controls, params.data_wires(), power, params.d())
    }
}

/// Expansion generator selection for entangler synthesis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpansionStrategy {
    Standard,
    Greedy,
    /// Exhaustive minimum of control levels; only viable for small registers.
    BruteForce,
}

impl ExpansionStrategy {
    pub fn expand(&self, l: u64, d: u32, n: u32) -> Result<SignedExpansion> {
        match self {
            ExpansionStrategy::Standard => standard_expansion(l, d, n),
            ExpansionStrategy::Greedy => greedy_expansion(l, d, n),
            ExpansionStrategy::BruteForce => brute_force_optimal(l, d, n, CostModel::ControlLevels),
        }
    }
}

/// Splits the entangler for `l` along a signed expansion.
///
/// Walking the expansion keeps a cursor `p` starting at `d^n - l`; term i
/// covers the interval between `p` and `p + s_i d^(m_i)`, which is exactly a
/// multi-controlled increment because `p` is divisible by `d^(m_i)`. The
/// cursor ends at `d^n`.
pub fn synth_cinc(l: u64, e: &SignedExpansion) -> Result<Vec<MultiControlledInc>> {
    if !e.is_valid_for(l) {
        return Err(Error::InvalidExpansion(
            "entangler synthesis needs a valid expansion of l",
        ));
    }
    let d = e.d;
    let n = e.n;
    let dimension = (d as u64).pow(n);
    let mut cursor = dimension - l;
    let mut gates = Vec::with_capacity(e.terms.len());
    for term in &e.terms {
        let step = (d as u64).pow(term.exponent);
        debug_assert_eq!(cursor % step, 0);
        let block_index = cursor / step;
        let control_value = match term.sign {
            Sign::Pos => block_index,
            Sign::Neg => block_index - 1,
        };
        let width = (n - term.exponent) as usize;
        gates.push(MultiControlledInc {
            control_values: DitString::from_value(control_value, d, width)?,
            m: term.exponent,
            sign: term.sign,
        });
        cursor = match term.sign {
            Sign::Pos => cursor + step,
            Sign::Neg => cursor - step,
        };
    }
    debug_assert_eq!(cursor, dimension);
    Ok(gates)
}

/// Lowers one multi-controlled increment to gates with at most two controls.
///
/// Emission order: negation sandwich for a decrement, increment pads bringing
/// every control to value 1, then the core (bare increment, single
/// conditioned gate, or the two-control ladder with its mirrored uncompute),
/// then the pads undone. A gate with c > 2 controls takes `2c - 3`
/// two-control gates and `c - 2` pool ancillas, all restored to zero.
pub fn lower_multicontrolled(
    g: &MultiControlledInc,
    params: QuditParams,
    ancilla_pool: Range<usize>,
) -> Result<Vec<Gate>> {
    let d = params.d();
    let target = params.data_wires();
    let controls = g.control_values.digits();
    let c = controls.len();
    let needed = c.saturating_sub(2);
    if ancilla_pool.len() < needed {
        return Err(Error::InsufficientAncillas {
            needed,
            available: ancilla_pool.len(),
        });
    }
    debug_assert!(c == 0 || ancilla_pool.start > target);

    let mut gates = Vec::new();
    if g.sign == Sign::Neg {
        gates.push(Gate::Mul { target });
    }
    for (wire, &value) in controls.iter().enumerate() {
        if value != 1 {
            gates.push(Gate::IncPow {
                target: wire,
                power: (1 + d - value) % d,
            });
        }
    }

    let on_one = |wire: usize| Control { wire, value: 1 };
    match c {
        0 => gates.push(Gate::IncPow { target, power: 1 }),
        1 => gates.push(Gate::Controlled {
            controls: vec![on_one(0)],
            target,
            power: 1,
        }),
        2 => gates.push(Gate::Controlled {
            controls: vec![on_one(0), on_one(1)],
            target,
            power: 1,
        }),
        _ => {
            let ancillas: Vec<usize> = ancilla_pool.take(needed).collect();
            let mut compute = Vec::with_capacity(needed);
            compute.push(Gate::Controlled {
                controls: vec![on_one(0), on_one(1)],
                target: ancillas[0],
                power: 1,
            });
            for j in 0..c - 3 {
                compute.push(Gate::Controlled {
                    controls: vec![on_one(j + 2), on_one(ancillas[j])],
                    target: ancillas[j + 1],
                    power: 1,
                });
            }
            gates.extend(compute.iter().cloned());
            gates.push(Gate::Controlled {
                controls: vec![on_one(c - 1), on_one(ancillas[needed - 1])],
                target,
                power: 1,
            });
            gates.extend(compute.iter().rev().map(|gate| gate.inverse(d)));
        }
    }

    for (wire, &value) in controls.iter().enumerate() {
        if value != 1 {
            gates.push(Gate::IncPow {
                target: wire,
                power: (value + d - 1) % d,
            });
        }
    }
    if g.sign == Sign::Neg {
        gates.push(Gate::Mul { target });
    }
    Ok(gates)
}

fn lowered_entangler(
    l: u64,
    params: QuditParams,
    strategy: ExpansionStrategy,
) -> Result<Vec<Gate>> {
    let expansion = strategy.expand(l, params.d(), params.n())?;
    let pool_start = params.data_wires() + 1;
    let pool = pool_start..pool_start + params.ladder_pool_size();
    let mut gates = Vec::new();
    for mc in synth_cinc(l, &expansion)? {
        gates.extend(lower_multicontrolled(&mc, params, pool.clone())?);
    }
    Ok(gates)
}

/// One block `diag(1,..,1, ratio x l)` as a gate fragment over the data
/// wires, the phase target at wire n, and the ladder pool above it.
///
/// The fragment is entangler, phase gate on wire n, then the entangler again
/// conjugated by negations on wire n, which realizes its inverse.
pub fn synth_block(
    block: &PhaseBlock,
    params: QuditParams,
    strategy: ExpansionStrategy,
) -> Result<Vec<Gate>> {
    let max = params.dimension();
    if block.l < 1 || block.l >= max {
        return Err(Error::EntanglerOutOfRange {
            l: block.l,
            max: max - 1,
        });
    }
    let target = params.data_wires();
    let entangler = lowered_entangler(block.l, params, strategy)?;
    let mut gates = entangler.clone();
    gates.push(Gate::plain_phase(target, block.ratio.arg(), params.d()));
    gates.push(Gate::Mul { target });
    gates.extend(entangler);
    gates.push(Gate::Mul { target });
    Ok(gates)
}

/// Full synthesis: one phase-target ancilla plus a ladder pool of
/// `max(0, n - 2)` ancillas shared by all blocks. The first run's phase
/// becomes circuit metadata, never a gate.
pub fn synth_diagonal(
    spec: &DiagonalSpec,
    strategy: ExpansionStrategy,
    cancel: bool,
) -> Result<Circuit> {
    let params = spec.params();
    let (global, blocks) = spec.phase_blocks();
    let mut circuit = Circuit::new(params, 1 + params.ladder_pool_size());
    circuit.set_global_phase(global.arg());
    for block in &blocks {
        circuit.extend(synth_block(block, params, strategy)?)?;
    }
    if cancel {
        circuit = cancel_adjacent(&circuit);
    }
    Ok(circuit)
}

/// Removes adjacent exact inverse pairs until none remain.
///
/// A single stack pass reaches the fixpoint: after a cancellation the newly
/// exposed neighbors are compared in turn. Phase gates never cancel (see
/// [`Gate::is_inverse_of`]), so the unitary is preserved exactly.
pub fn cancel_adjacent(c: &Circuit) -> Circuit {
    let d = c.d();
    let mut stack: Vec<Gate> = Vec::with_capacity(c.len());
    for gate in c.gates() {
        match stack.last() {
            Some(top) if top.is_inverse_of(gate, d) => {
                stack.pop();
            }
            _ => stack.push(gate.clone()),
        }
    }
    let mut out = Circuit::new(c.params(), c.ancilla_wires());
    out.set_global_phase(c.global_phase());
    out.extend(stack)
        .expect("gates were valid in the source circuit");
    out
}
