//! Gate IR: single-qudit increments, negation, phases and value-conditioned
//! controlled increments.

use crate::error::{Error, Result};
use num_complex::Complex64;

/// One control condition: the gate fires only if `wire` holds `value`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Control {
    pub wire: usize,
    pub value: u32,
}

/// Elementary gate over a register of dimension-d wires.
///
/// Basis-label arithmetic is mod d throughout. Phase angles are stored in
/// radians and exponentiated on demand, so a gate and its serialized form
/// carry exactly the same payload.
#[derive(Debug, Clone, PartialEq)]
pub enum Gate {
    /// `|t> -> |t + power mod d>` on `target`. Power `d - 1` is the inverse increment.
    IncPow { target: usize, power: u32 },
    /// Negation `|t> -> |-t mod d>` on `target`; self-inverse.
    Mul { target: usize },
    /// `diag(1, e^{i theta}, e^{i alphas[0]}, ..)` on `target`; `alphas` covers
    /// levels `2..d`.
    Phase {
        target: usize,
        theta: f64,
        alphas: Vec<f64>,
    },
    /// Increment by `power` on `target` iff every control wire holds its value.
    Controlled {
        controls: Vec<Control>,
        target: usize,
        power: u32,
    },
}

impl Gate {
    /// Increment normalized mod d.
    pub fn inc_pow(target: usize, power: u32, d: u32) -> Gate {
        Gate::IncPow {
            target,
            power: power % d,
        }
    }

    /// Controlled increment; an empty control list collapses to a bare increment.
    pub fn controlled(controls: Vec<Control>, target: usize, power: u32, d: u32) -> Gate {
        if controls.is_empty() {
            return Gate::inc_pow(target, power, d);
        }
        let mut controls = controls;
        controls.sort_unstable();
        Gate::Controlled {
            controls,
            target,
            power: power % d,
        }
    }

    /// Phase gate with all higher levels left untouched.
    pub fn plain_phase(target: usize, theta: f64, d: u32) -> Gate {
        Gate::Phase {
            target,
            theta,
            alphas: vec![0.0; d.saturating_sub(2) as usize],
        }
    }

    pub fn target(&self) -> usize {
        match self {
            Gate::IncPow { target, .. }
            | Gate::Mul { target }
            | Gate::Phase { target, .. }
            | Gate::Controlled { target, .. } => *target,
        }
    }

    /// Every wire the gate touches: controls first, target last.
    pub fn wires(&self) -> Vec<usize> {
        match self {
            Gate::Controlled {
                controls, target, ..
            } => controls
                .iter()
                .map(|c| c.wire)
                .chain(std::iter::once(*target))
                .collect(),
            _ => vec![self.target()],
        }
    }

    pub fn control_count(&self) -> usize {
        match self {
            Gate::Controlled { controls, .. } => controls.len(),
            _ => 0,
        }
    }

    pub fn is_single_qudit(&self) -> bool {
        !matches!(self, Gate::Controlled { .. })
    }

    pub fn validate(&self, d: u32, wires: usize) -> Result<()> {
        for wire in self.wires() {
            if wire >= wires {
                return Err(Error::WireOutOfRange { wire, wires });
            }
        }
        match self {
            Gate::IncPow { power, .. } => {
                if *power >= d {
                    return Err(Error::InvalidDigit {
                        digit: *power,
                        base: d,
                    });
                }
            }
            Gate::Mul { .. } => {}
            Gate::Phase { theta, alphas, .. } => {
                if !theta.is_finite() || alphas.iter().any(|a| !a.is_finite()) {
                    return Err(Error::NonFiniteAngle);
                }
                let expected = d.saturating_sub(2) as usize;
                if alphas.len() != expected {
                    return Err(Error::AlphaCount {
                        d,
                        expected,
                        got: alphas.len(),
                    });
                }
            }
            Gate::Controlled {
                controls, power, ..
            } => {
                if *power >= d {
                    return Err(Error::InvalidDigit {
                        digit: *power,
                        base: d,
                    });
                }
                let mut seen = self.wires();
                seen.sort_unstable();
                if let Some(win) = seen.windows(2).find(|w| w[0] == w[1]) {
                    return Err(Error::DuplicateWire(win[0]));
                }
                if let Some(c) = controls.iter().find(|c| c.value >= d) {
                    return Err(Error::ControlValueOutOfRange { value: c.value, d });
                }
            }
        }
        Ok(())
    }

    pub fn inverse(&self, d: u32) -> Gate {
        match self {
            Gate::IncPow { target, power } => Gate::IncPow {
                target: *target,
                power: (d - power % d) % d,
            },
            Gate::Mul { target } => Gate::Mul { target: *target },
            Gate::Phase {
                target,
                theta,
                alphas,
            } => Gate::Phase {
                target: *target,
                theta: -theta,
                alphas: alphas.iter().map(|a| -a).collect(),
            },
            Gate::Controlled {
                controls,
                target,
                power,
            } => Gate::Controlled {
                controls: controls.clone(),
                target: *target,
                power: (d - power % d) % d,
            },
        }
    }

    /// Exact inverse-pair test used by the cancellation pass. Phase gates are
    /// never reported as inverses: their product is only approximately the
    /// identity in floating point, and the pass must preserve the unitary
    /// exactly.
    pub fn is_inverse_of(&self, other: &Gate, d: u32) -> bool {
        match (self, other) {
            (
                Gate::IncPow {
                    target: t1,
                    power: p1,
                },
                Gate::IncPow {
                    target: t2,
                    power: p2,
                },
            ) => t1 == t2 && (p1 + p2) % d == 0,
            (Gate::Mul { target: t1 }, Gate::Mul { target: t2 }) => t1 == t2,
            (
                Gate::Controlled {
                    controls: c1,
                    target: t1,
                    power: p1,
                },
                Gate::Controlled {
                    controls: c2,
                    target: t2,
                    power: p2,
                },
            ) => t1 == t2 && c1 == c2 && (p1 + p2) % d == 0,
            _ => false,
        }
    }

    /// Diagonal factors applied by a phase gate, one per level.
    pub fn phase_factors(theta: f64, alphas: &[f64], d: u32) -> Vec<Complex64> {
        let mut factors = Vec::with_capacity(d as usize);
        factors.push(Complex64::new(1.0, 0.0));
        factors.push(Complex64::cis(theta));
        factors.extend(alphas.iter().map(|&a| Complex64::cis(a)));
        factors.truncate(d as usize);
        factors
    }
}
