//! Error type shared by every stage of the compiler.

use thiserror::Error;

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("qudit dimension must be at least 2, got {0}")]
    InvalidDimension(u32),

    #[error("register must hold at least one qudit")]
    EmptyRegister,

    #[error("{d}^{n} does not fit in 64 bits")]
    DimensionOverflow { d: u32, n: u32 },

    #[error("value {value} does not fit in {width} base-{base} dits")]
    ValueOutOfRange { value: u64, base: u32, width: usize },

    #[error("digit {digit} out of range for base {base}")]
    InvalidDigit { digit: u32, base: u32 },

    #[error("wire {wire} out of range for a {wires}-wire circuit")]
    WireOutOfRange { wire: usize, wires: usize },

    #[error("wire {0} referenced more than once by a single gate")]
    DuplicateWire(usize),

    #[error("control value {value} out of range for dimension {d}")]
    ControlValueOutOfRange { value: u32, d: u32 },

    #[error("phase gate needs {expected} higher phases for dimension {d}, got {got}")]
    AlphaCount { d: u32, expected: usize, got: usize },

    #[error("phase angle must be finite")]
    NonFiniteAngle,

    #[error("diagonal entry has modulus {modulus:.12}, expected 1 within {tolerance:e}")]
    NonUnitModulus { modulus: f64, tolerance: f64 },

    #[error("diagonal has {got} entries, expected {expected}")]
    DiagonalLength { expected: u64, got: u64 },

    #[error("phase run {index} is empty")]
    EmptyRun { index: usize },

    #[error("phase runs {index} and {} have equal phases", index + 1)]
    EqualAdjacentRuns { index: usize },

    #[error("entangler parameter {l} out of range [1, {max}]")]
    EntanglerOutOfRange { l: u64, max: u64 },

    #[error("interval bound {value} out of range [0, {max}]")]
    IntervalOutOfRange { value: u64, max: u64 },

    #[error("invalid signed expansion: {0}")]
    InvalidExpansion(&'static str),

    #[error("state space of dimension {dim} exceeds the simulator cap {cap}")]
    DimensionCap { dim: u64, cap: u64 },

    #[error("lowering needs {needed} ancilla wires, pool provides {available}")]
    InsufficientAncillas { needed: usize, available: usize },

    #[error("exhaustive search infeasible: {0}")]
    SearchInfeasible(String),
}

impl Error {
    /// True for resource-limit errors, as opposed to invalid-input errors.
    pub fn is_capacity(&self) -> bool {
        matches!(
            self,
            Error::DimensionCap { .. }
                | Error::InsufficientAncillas { .. }
                | Error::SearchInfeasible(_)
        )
    }
}
