//! Register parameters and base-d digit strings.

use crate::error::{Error, Result};

/// Dimension and width of the data register every pipeline stage works on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuditParams {
    d: u32,
    n: u32,
}

impl QuditParams {
    /// Validates `d >= 2`, `n >= 1` and that `d^n` fits in a `u64`.
    pub fn new(d: u32, n: u32) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidDimension(d));
        }
        if n == 0 {
            return Err(Error::EmptyRegister);
        }
        (d as u64)
            .checked_pow(n)
            .ok_or(Error::DimensionOverflow { d, n })?;
        Ok(QuditParams { d, n })
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// `d^n`, the number of data basis states.
    pub fn dimension(&self) -> u64 {
        (self.d as u64).pow(self.n)
    }

    pub fn data_wires(&self) -> usize {
        self.n as usize
    }

    /// Ladder ancillas needed in the worst case (`n` controls).
    pub fn ladder_pool_size(&self) -> usize {
        (self.n as usize).saturating_sub(2)
    }
}

/// Fixed-width base-d digit string, most significant dit first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DitString {
    digits: Vec<u32>,
    base: u32,
}

impl DitString {
    /// Digits of `value` in base `base`, most significant first, padded to `width`.
    pub fn from_value(value: u64, base: u32, width: usize) -> Result<Self> {
        if base < 2 {
            return Err(Error::InvalidDimension(base));
        }
        let cap = (base as u64)
            .checked_pow(width as u32)
            .ok_or(Error::DimensionOverflow {
                d: base,
                n: width as u32,
            })?;
        if value >= cap {
            return Err(Error::ValueOutOfRange { value, base, width });
        }
        let mut digits = vec![0; width];
        let mut rest = value;
        for slot in digits.iter_mut().rev() {
            *slot = (rest % base as u64) as u32;
            rest /= base as u64;
        }
        Ok(DitString { digits, base })
    }

    /// Builds directly from digits, rejecting any digit `>= base`.
    pub fn from_digits(digits: Vec<u32>, base: u32) -> Result<Self> {
        if base < 2 {
            return Err(Error::InvalidDimension(base));
        }
        if let Some(&digit) = digits.iter().find(|&&digit| digit >= base) {
            return Err(Error::InvalidDigit { digit, base });
        }
        Ok(DitString { digits, base })
    }

    pub fn value(&self) -> u64 {
        self.digits
            .iter()
            .fold(0u64, |acc, &digit| acc * self.base as u64 + digit as u64)
    }

    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn width(&self) -> usize {
        self.digits.len()
    }
}

impl std::fmt::Display for DitString {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (i, digit) in self.digits.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{digit}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_reject_bad_input() {
        assert!(matches!(
            QuditParams::new(1, 3),
            Err(Error::InvalidDimension(1))
        ));
        assert!(matches!(QuditParams::new(2, 0), Err(Error::EmptyRegister)));
        assert!(matches!(
            QuditParams::new(2, 64),
            Err(Error::DimensionOverflow { .. })
        ));
        assert_eq!(QuditParams::new(5, 4).unwrap().dimension(), 625);
    }

    #[test]
    fn digits_of_611_base_5() {
        let dits = DitString::from_value(611, 5, 4).unwrap();
        assert_eq!(dits.digits(), &[4, 4, 2, 1]);
        assert_eq!(dits.value(), 611);
    }

    #[test]
    fn zero_pads_to_width() {
        let dits = DitString::from_value(0, 3, 2).unwrap();
        assert_eq!(dits.digits(), &[0, 0]);
    }

    #[test]
    fn all_ones_binary() {
        let dits = DitString::from_value(7, 2, 3).unwrap();
        assert_eq!(dits.digits(), &[1, 1, 1]);
    }

    #[test]
    fn value_out_of_range_is_rejected() {
        assert!(matches!(
            DitString::from_value(8, 2, 3),
            Err(Error::ValueOutOfRange { .. })
        ));
    }

    #[test]
    fn bad_digit_is_rejected() {
        assert!(matches!(
            DitString::from_digits(vec![0, 3], 3),
            Err(Error::InvalidDigit { digit: 3, base: 3 })
        ));
    }
}
