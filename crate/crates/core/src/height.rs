//! Heights on the critical line stored as an exact decimal base plus a
//! binary offset.
//!
//! Near `t = 1e22` an `f64` cannot even resolve integers, yet zero gaps are
//! about 0.13. Keeping the large part as an exact decimal and the local part
//! as an `f64` in `[0, 2^20)` keeps absolute precision near 1e-10 locally and
//! makes file round trips lossless.

use std::cmp::Ordering;
use std::fmt;

use crate::dd::Dd;
use crate::error::{Error, Result};

/// Exclusive upper bound on offsets.
pub const OFFSET_LIMIT: f64 = 1_048_576.0;

/// A nonnegative exact decimal, kept verbatim together with its
/// double-double value.
#[derive(Clone, Debug)]
pub struct DecimalBase {
    text: String,
    value: Dd,
}

impl DecimalBase {
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        let value = Dd::parse_decimal(text)
            .ok_or_else(|| Error::Height(format!("not an unsigned exact decimal: {text:?}")))?;
        Ok(Self {
            text: text.to_string(),
            value,
        })
    }

    pub fn zero() -> Self {
        Self {
            text: "0".into(),
            value: Dd::ZERO,
        }
    }

    /// Integer base `floor(t)`; exact for any `t < 2^53`.
    pub fn floor_of(t: f64) -> Self {
        let n = t.floor().max(0.0);
        Self {
            text: format!("{n:.0}"),
            value: Dd::from_f64(n),
        }
    }

    /// Integer base from a double-double value.
    pub fn floor_of_dd(t: Dd) -> Self {
        let n = t.floor();
        let text = if n.hi.abs() < 9.007_199_254_740_992e15 {
            format!("{:.0}", n.to_f64())
        } else {
            // hi is an integer, lo carries the remaining integer part
            let hi = n.hi as i128 + n.lo as i128;
            format!("{hi}")
        };
        Self { text, value: n }
    }

    pub fn as_str(&self) -> &str {
        &self.text
    }

    pub fn value(&self) -> Dd {
        self.value
    }
}

impl PartialEq for DecimalBase {
    fn eq(&self, other: &Self) -> bool {
        self.text == other.text || self.value == other.value
    }
}

impl fmt::Display for DecimalBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

/// `t = base + offset` with `offset` in `[0, 2^20)`.
#[derive(Clone, Debug, PartialEq)]
pub struct HeightValue {
    base: DecimalBase,
    offset: f64,
}

impl HeightValue {
    pub fn new(base: DecimalBase, offset: f64) -> Result<Self> {
        if !(0.0..OFFSET_LIMIT).contains(&offset) {
            return Err(Error::Height(format!(
                "offset {offset} outside [0, 2^20) for base {base}"
            )));
        }
        Ok(Self { base, offset })
    }

    /// Parses an exact decimal height; the whole value becomes the base.
    pub fn parse(text: &str) -> Result<Self> {
        Ok(Self {
            base: DecimalBase::parse(text)?,
            offset: 0.0,
        })
    }

    /// Splits an `f64` height into integer base and fractional offset.
    pub fn from_f64(t: f64) -> Result<Self> {
        if !(t.is_finite() && t >= 0.0) {
            return Err(Error::Height(format!("height must be finite and >= 0, got {t}")));
        }
        let base = DecimalBase::floor_of(t);
        let offset = t - base.value.to_f64();
        Self::new(base, offset)
    }

    /// Splits a double-double height into integer base and offset.
    pub fn from_dd(t: Dd) -> Result<Self> {
        if !(t.is_finite() && t.hi >= 0.0) {
            return Err(Error::Height(format!("height must be finite and >= 0, got {t}")));
        }
        let base = DecimalBase::floor_of_dd(t);
        let offset = (t - base.value).to_f64();
        Self::new(base, offset.max(0.0))
    }

    pub fn base(&self) -> &DecimalBase {
        &self.base
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn to_dd(&self) -> Dd {
        self.base.value.add_f64(self.offset)
    }

    pub fn to_f64(&self) -> f64 {
        self.to_dd().to_f64()
    }

    /// Same height expressed relative to another base.
    pub fn rebase(&self, base: &DecimalBase) -> Result<HeightValue> {
        if *base == self.base {
            return Ok(HeightValue {
                base: base.clone(),
                offset: self.offset,
            });
        }
        let offset = (self.to_dd() - base.value).to_f64();
        HeightValue::new(base.clone(), offset)
    }

    /// Offset relative to `base`, without the range check.
    pub fn offset_from(&self, base: &DecimalBase) -> f64 {
        if *base == self.base {
            self.offset
        } else {
            (self.to_dd() - base.value).to_f64()
        }
    }

    /// `self - other`; exact to rounding of the offsets when the bases agree.
    pub fn diff(&self, other: &HeightValue) -> f64 {
        if self.base == other.base {
            self.offset - other.offset
        } else {
            (self.to_dd() - other.to_dd()).to_f64()
        }
    }

    /// `ln t` to double precision.
    pub fn ln(&self) -> f64 {
        self.to_dd().ln().to_f64()
    }
}

impl PartialOrd for HeightValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        if self.base == other.base {
            self.offset.partial_cmp(&other.offset)
        } else {
            self.to_dd().partial_cmp(&other.to_dd())
        }
    }
}

impl fmt::Display for HeightValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.offset == 0.0 {
            write!(f, "{}", self.base)
        } else {
            write!(f, "{} + {:.17e}", self.base, self.offset)
        }
    }
}
