use std::fmt;

use crate::error::{Error, Result};

/// Tolerance used to recognise `-1/alpha` as a positive integer.
pub const RECIPROCAL_INT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlphaClass {
    Positive,
    /// `alpha = -1/m`.
    NegReciprocalInt(u32),
    NegOther,
}

/// A validated nonzero α.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaParam {
    value: f64,
    class: AlphaClass,
}

impl AlphaParam {
    /// Classifies `value`; negative values whose reciprocal is within
    /// [`RECIPROCAL_INT_TOL`] of an integer `-m` are snapped to exactly `-1/m`.
    pub fn new(value: f64) -> Result<Self> {
        if !value.is_finite() || value == 0.0 {
            return Err(Error::InvalidAlpha(value));
        }
        if value > 0.0 {
            return Ok(Self {
                value,
                class: AlphaClass::Positive,
            });
        }
        let recip = -1.0 / value;
        let m = recip.round();
        if m >= 1.0 && m <= f64::from(u32::MAX) && (recip - m).abs() <= RECIPROCAL_INT_TOL {
            let m = m as u32;
            return Ok(Self::neg_reciprocal(m));
        }
        Ok(Self {
            value,
            class: AlphaClass::NegOther,
        })
    }

    /// `alpha = -1/m` for `m >= 1`.
    pub fn neg_reciprocal(m: u32) -> Self {
        assert!(m >= 1, "m must be a positive integer");
        Self {
            value: -1.0 / f64::from(m),
            class: AlphaClass::NegReciprocalInt(m),
        }
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn class(&self) -> AlphaClass {
        self.class
    }

    pub fn is_positive(&self) -> bool {
        self.class == AlphaClass::Positive
    }

    /// `Some(m)` when `alpha = -1/m`.
    pub fn reciprocal_int(&self) -> Option<u32> {
        match self.class {
            AlphaClass::NegReciprocalInt(m) => Some(m),
            _ => None,
        }
    }
}

impl fmt::Display for AlphaParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.class {
            AlphaClass::NegReciprocalInt(m) => write!(f, "-1/{m}"),
            _ => write!(f, "{}", self.value),
        }
    }
}
