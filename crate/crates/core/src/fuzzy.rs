//! Product MV-algebra connectives on the unit interval.

use crate::error::{Error, Result};

/// Inputs this close outside `[0, 1]` are treated as rounding and clamped.
const CLAMP_SLACK: f64 = 1e-12;

/// A truth value in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct FuzzyValue(f64);

impl FuzzyValue {
    pub const FALSE: FuzzyValue = FuzzyValue(0.0);
    pub const TRUE: FuzzyValue = FuzzyValue(1.0);

    pub fn new(v: f64) -> Result<Self> {
        if !(-CLAMP_SLACK..=1.0 + CLAMP_SLACK).contains(&v) {
            return Err(Error::OutOfRange {
                value: v,
                range: "[0, 1]",
            });
        }
        Ok(FuzzyValue(v.clamp(0.0, 1.0)))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for FuzzyValue {
    type Error = Error;

    fn try_from(v: f64) -> Result<Self> {
        FuzzyValue::new(v)
    }
}

impl From<FuzzyValue> for f64 {
    fn from(v: FuzzyValue) -> f64 {
        v.0
    }
}

/// Product conjunction `x · y`.
pub fn product(x: FuzzyValue, y: FuzzyValue) -> FuzzyValue {
    FuzzyValue(x.0 * y.0)
}

/// Łukasiewicz negation `1 - x`.
pub fn luk_neg(x: FuzzyValue) -> FuzzyValue {
    FuzzyValue(1.0 - x.0)
}

/// Truncated sum `min(x + y, 1)`.
pub fn luk_sum(x: FuzzyValue, y: FuzzyValue) -> FuzzyValue {
    FuzzyValue((x.0 + y.0).min(1.0))
}

/// `(¬x · y) ⊕ (¬y · x)`, the truth value CNOT assigns to product inputs.
/// Never truncates on `[0, 1]²`, so it equals `(1-x)y + (1-y)x`.
pub fn cnot_polynomial(x: FuzzyValue, y: FuzzyValue) -> FuzzyValue {
    luk_sum(product(luk_neg(x), y), product(luk_neg(y), x))
}
