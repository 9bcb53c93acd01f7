//! Dense statevector simulator and definition-level oracles.
//!
//! Everything here exists to verify the lowering stages, not to be fast.
//! Increment, negation and conditioned gates permute basis states, so their
//! simulation moves amplitudes without arithmetic and comparisons against the
//! oracles can demand exact equality.

use crate::circuit::Circuit;
use crate::dits::QuditParams;
use crate::error::{Error, Result};
use crate::gate::Gate;
use crate::synthesis::{DiagonalSpec, MultiControlledInc};
use num_complex::Complex64;

/// Default cap on the simulated state-space dimension.
pub const DEFAULT_DIM_CAP: u64 = 4096;

fn checked_dim(d: u32, wires: usize) -> Result<usize> {
    let dim = (d as u64)
        .checked_pow(wires as u32)
        .ok_or(Error::DimensionOverflow { d, n: wires as u32 })?;
    usize::try_from(dim).map_err(|_| Error::DimensionCap { dim, cap: u64::MAX })
}

fn enforce_cap(dim: usize, cap: u64) -> Result<()> {
    if dim as u64 > cap {
        return Err(Error::DimensionCap {
            dim: dim as u64,
            cap,
        });
    }
    Ok(())
}

/// State of `wires` dimension-d qudits; wire 0 is the most significant dit of
/// the basis index.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    d: u32,
    wires: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    pub fn basis(d: u32, wires: usize, index: usize) -> Result<Self> {
        let dim = checked_dim(d, wires)?;
        if index >= dim {
            return Err(Error::ValueOutOfRange {
                value: index as u64,
                base: d,
                width: wires,
            });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(StateVector { d, wires, amps })
    }

    pub fn from_amplitudes(d: u32, wires: usize, amps: Vec<Complex64>) -> Result<Self> {
        let dim = checked_dim(d, wires)?;
        if amps.len() != dim {
            return Err(Error::DiagonalLength {
                expected: dim as u64,
                got: amps.len() as u64,
            });
        }
        Ok(StateVector { d, wires, amps })
    }

    pub fn dimension(&self) -> usize {
        self.amps.len()
    }

    pub fn wires(&self) -> usize {
        self.wires
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    fn stride(&self, wire: usize) -> usize {
        (self.d as usize).pow((self.wires - 1 - wire) as u32)
    }

    fn digit(&self, index: usize, wire: usize) -> u32 {
        ((index / self.stride(wire)) % self.d as usize) as u32
    }

    /// Applies one gate and returns the new state.
    pub fn apply(&self, gate: &Gate) -> Result<StateVector> {
        gate.validate(self.d, self.wires)?;
        let d = self.d as usize;
        let mut out = vec![Complex64::new(0.0, 0.0); self.amps.len()];
        match gate {
            Gate::IncPow { target, power } => {
                let stride = self.stride(*target);
                for (index, amp) in self.amps.iter().enumerate() {
                    let digit = self.digit(index, *target) as usize;
                    let shifted = (digit + *power as usize) % d;
                    out[index - digit * stride + shifted * stride] = *amp;
                }
            }
            Gate::Mul { target } => {
                let stride = self.stride(*target);
                for (index, amp) in self.amps.iter().enumerate() {
                    let digit = self.digit(index, *target) as usize;
                    let negated = (d - digit) % d;
                    out[index - digit * stride + negated * stride] = *amp;
                }
            }
            Gate::Phase {
                target,
                theta,
                alphas,
            } => {
                let factors = Gate::phase_factors(*theta, alphas, self.d);
                for (index, amp) in self.amps.iter().enumerate() {
                    out[index] = amp * factors[self.digit(index, *target) as usize];
                }
            }
            Gate::Controlled {
                controls,
                target,
                power,
            } => {
                let stride = self.stride(*target);
                for (index, amp) in self.amps.iter().enumerate() {
                    let fires = controls
                        .iter()
                        .all(|c| self.digit(index, c.wire) == c.value);
                    if fires {
                        let digit = self.digit(index, *target) as usize;
                        let shifted = (digit + *power as usize) % d;
                        out[index - digit * stride + shifted * stride] = *amp;
                    } else {
                        out[index] = *amp;
                    }
                }
            }
        }
        Ok(StateVector {
            d: self.d,
            wires: self.wires,
            amps: out,
        })
    }

    pub fn apply_all<'a, I: IntoIterator<Item = &'a Gate>>(&self, gates: I) -> Result<StateVector> {
        let mut state = self.clone();
        for gate in gates {
            state = state.apply(gate)?;
        }
        Ok(state)
    }
}

/// Dense row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl UnitaryMatrix {
    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        UnitaryMatrix { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.entries[row * self.dim + col] = value;
    }

    /// `self * other` (so `other` acts first on column vectors).
    pub fn mul(&self, other: &UnitaryMatrix) -> UnitaryMatrix {
        assert_eq!(self.dim, other.dim);
        let dim = self.dim;
        let mut out = UnitaryMatrix {
            dim,
            entries: vec![Complex64::new(0.0, 0.0); dim * dim],
        };
        for row in 0..dim {
            for k in 0..dim {
                let lhs = self.get(row, k);
                if lhs == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for col in 0..dim {
                    let add = lhs * other.get(k, col);
                    out.entries[row * dim + col] += add;
                }
            }
        }
        out
    }

    pub fn dagger(&self) -> UnitaryMatrix {
        let mut out = UnitaryMatrix {
            dim: self.dim,
            entries: vec![Complex64::new(0.0, 0.0); self.dim * self.dim],
        };
        for row in 0..self.dim {
            for col in 0..self.dim {
                out.set(row, col, self.get(col, row).conj());
            }
        }
        out
    }

    pub fn apply(&self, vector: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(vector.len(), self.dim);
        (0..self.dim)
            .map(|row| {
                (0..self.dim)
                    .map(|col| self.get(row, col) * vector[col])
                    .sum()
            })
            .collect()
    }

    pub fn max_abs_diff(&self, other: &UnitaryMatrix) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn deviation_from_identity(&self) -> f64 {
        self.max_abs_diff(&UnitaryMatrix::identity(self.dim))
    }
}

/// A basis permutation `|j> -> |map[j]>`: the exact integer-matrix form every
/// oracle and phase-free circuit takes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    map: Vec<usize>,
}

impl Permutation {
    pub fn identity(dim: usize) -> Self {
        Permutation {
            map: (0..dim).collect(),
        }
    }

    pub fn from_map(map: Vec<usize>) -> Self {
        Permutation { map }
    }

    pub fn dim(&self) -> usize {
        self.map.len()
    }

    pub fn image(&self, index: usize) -> usize {
        self.map[index]
    }

    /// Composition "self first, then next".
    pub fn then(&self, next: &Permutation) -> Permutation {
        assert_eq!(self.dim(), next.dim());
        Permutation {
            map: self.map.iter().map(|&j| next.map[j]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut map = vec![0; self.map.len()];
        for (source, &target) in self.map.iter().enumerate() {
            map[target] = source;
        }
        Permutation { map }
    }

    pub fn to_unitary(&self) -> UnitaryMatrix {
        let dim = self.dim();
        let mut out = UnitaryMatrix {
            dim,
            entries: vec![Complex64::new(0.0, 0.0); dim * dim],
        };
        for (col, &row) in self.map.iter().enumerate() {
            out.set(row, col, Complex64::new(1.0, 0.0));
        }
        out
    }
}

/// Full unitary of a circuit, built column by column; the global phase stays
/// metadata and is not multiplied in.
pub fn circuit_unitary(c: &Circuit) -> Result<UnitaryMatrix> {
    circuit_unitary_with_cap(c, DEFAULT_DIM_CAP)
}

pub fn circuit_unitary_with_cap(c: &Circuit, cap: u64) -> Result<UnitaryMatrix> {
    let dim = checked_dim(c.d(), c.wire_count())?;
    enforce_cap(dim, cap)?;
    let mut out = UnitaryMatrix {
        dim,
        entries: vec![Complex64::new(0.0, 0.0); dim * dim],
    };
    for col in 0..dim {
        let state = StateVector::basis(c.d(), c.wire_count(), col)?.apply_all(c.gates())?;
        for (row, amp) in state.amplitudes().iter().enumerate() {
            if *amp != Complex64::new(0.0, 0.0) {
                out.set(row, col, *amp);
            }
        }
    }
    Ok(out)
}

/// Interval entangler on `n + 1` wires: increments the last wire for
/// `p <= j < q`, decrements it for `q <= j < p`, and fixes everything else.
pub fn oracle_cinc_permutation(p: u64, q: u64, params: QuditParams) -> Result<Permutation> {
    let max = params.dimension();
    for value in [p, q] {
        if value > max {
            return Err(Error::IntervalOutOfRange { value, max });
        }
    }
    let dim = checked_dim(params.d(), params.data_wires() + 1)?;
    enforce_cap(dim, DEFAULT_DIM_CAP)?;
    let d = params.d() as usize;
    let map = (0..dim)
        .map(|index| {
            let j = (index / d) as u64;
            let t = index % d;
            if p <= j && j < q {
                index - t + (t + 1) % d
            } else if q <= j && j < p {
                index - t + (t + d - 1) % d
            } else {
                index
            }
        })
        .collect();
    Ok(Permutation::from_map(map))
}

/// Dense form of [`oracle_cinc_permutation`].
pub fn oracle_cinc(p: u64, q: u64, params: QuditParams) -> Result<UnitaryMatrix> {
    Ok(oracle_cinc_permutation(p, q, params)?.to_unitary())
}

/// Entangler for the threshold form: increment iff `j >= d^n - l`.
pub fn oracle_entangler_permutation(l: u64, params: QuditParams) -> Result<Permutation> {
    let max = params.dimension();
    if l < 1 || l > max {
        return Err(Error::EntanglerOutOfRange { l, max });
    }
    oracle_cinc_permutation(max - l, max, params)
}

/// Definition-level form of a multi-controlled increment on `n + 1` wires:
/// shifts the last wire iff the top dits of the data register match the
/// control values.
pub fn oracle_multicontrolled_permutation(
    g: &MultiControlledInc,
    params: QuditParams,
) -> Result<Permutation> {
    let dim = checked_dim(params.d(), params.data_wires() + 1)?;
    enforce_cap(dim, DEFAULT_DIM_CAP)?;
    let d = params.d() as usize;
    let width = g.control_values.width() as u32;
    if width + g.m != params.n() {
        return Err(Error::InvalidExpansion(
            "control width plus free exponent must equal the register width",
        ));
    }
    let step = (params.d() as u64).pow(g.m);
    let wanted = g.control_values.value();
    let shift = match g.sign {
        crate::expansion::Sign::Pos => 1,
        crate::expansion::Sign::Neg => d - 1,
    };
    let map = (0..dim)
        .map(|index| {
            let j = (index / d) as u64;
            let t = index % d;
            if j / step == wanted {
                index - t + (t + shift) % d
            } else {
                index
            }
        })
        .collect();
    Ok(Permutation::from_map(map))
}

/// Dense form of [`oracle_multicontrolled_permutation`].
pub fn oracle_multicontrolled(
    g: &MultiControlledInc,
    params: QuditParams,
) -> Result<UnitaryMatrix> {
    Ok(oracle_multicontrolled_permutation(g, params)?.to_unitary())
}

/// Outcome of checking a circuit against a diagonal description.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquivReport {
    pub passed: bool,
    /// Largest `|amplitude * global_phase - diagonal entry|` over data basis states.
    pub max_deviation: f64,
    /// Largest amplitude left outside the expected `|j>|0..0>` state; nonzero
    /// values signal ancillas not returned to zero or a scrambled register.
    pub max_leakage: f64,
    pub tolerance: f64,
}

/// Applies `c` to every `|j>|0..0>` and compares the result against the
/// diagonal the spec describes.
pub fn check_diagonal_equiv(c: &Circuit, spec: &DiagonalSpec, tol: f64) -> Result<EquivReport> {
    check_diagonal_equiv_with_cap(c, spec, tol, DEFAULT_DIM_CAP)
}

pub fn check_diagonal_equiv_with_cap(
    c: &Circuit,
    spec: &DiagonalSpec,
    tol: f64,
    cap: u64,
) -> Result<EquivReport> {
    if c.params() != spec.params() {
        return Err(Error::DiagonalLength {
            expected: spec.params().dimension(),
            got: c.params().dimension(),
        });
    }
    let dim = checked_dim(c.d(), c.wire_count())?;
    enforce_cap(dim, cap)?;
    let entries = spec.entries();
    let ancilla_space = (c.d() as usize).pow(c.ancilla_wires() as u32);
    let global = c.global_phase_factor();

    let mut max_deviation = 0.0f64;
    let mut max_leakage = 0.0f64;
    for (j, entry) in entries.iter().enumerate() {
        let home = j * ancilla_space;
        let state = StateVector::basis(c.d(), c.wire_count(), home)?.apply_all(c.gates())?;
        for (index, amp) in state.amplitudes().iter().enumerate() {
            if index == home {
                max_deviation = max_deviation.max((amp * global - entry).norm());
            } else {
                max_leakage = max_leakage.max(amp.norm());
            }
        }
    }
    Ok(EquivReport {
        passed: max_deviation <= tol && max_leakage <= tol,
        max_deviation,
        max_leakage,
        tolerance: tol,
    })
}
