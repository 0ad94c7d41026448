//! Exact binomial coefficients.
//!
//! `binomial` is total on integer pairs: anything outside `0 <= k <= n`
//! evaluates to zero, which is what makes the edge-count formulas valid for
//! graphs (`k = 2`, where `C(m, -1)` terms appear) and for short leading
//! blocks where the upper argument goes negative.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest integer that converts to `f64` exactly, together with all smaller ones.
pub const F64_EXACT_LIMIT: u128 = 1 << 53;

/// An exact nonnegative count. Arithmetic is checked; nothing ever wraps.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExactCount(pub u128);

impl ExactCount {
    pub const ZERO: ExactCount = ExactCount(0);
    pub const ONE: ExactCount = ExactCount(1);

    pub fn value(self) -> u128 {
        self.0
    }

    pub fn checked_add(self, other: ExactCount) -> Result<ExactCount> {
        self.0.checked_add(other.0).map(ExactCount).ok_or_else(|| Error::Overflow(format!("{} + {}", self.0, other.0)))
    }

    pub fn checked_mul(self, other: ExactCount) -> Result<ExactCount> {
        self.0.checked_mul(other.0).map(ExactCount).ok_or_else(|| Error::Overflow(format!("{} * {}", self.0, other.0)))
    }

    /// Converts to `f64`, refusing values above 2^53.
    pub fn to_f64(self) -> Result<f64> {
        if self.0 > F64_EXACT_LIMIT {
            return Err(Error::FloatLoss(self.0));
        }
        Ok(self.0 as f64)
    }
}

impl From<u64> for ExactCount {
    fn from(v: u64) -> Self {
        ExactCount(v as u128)
    }
}

impl fmt::Display for ExactCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl PartialEq<u128> for ExactCount {
    fn eq(&self, other: &u128) -> bool {
        self.0 == *other
    }
}

/// Checked sum over an iterator of fallible counts.
pub fn checked_sum<I>(iter: I) -> Result<ExactCount>
where
    I: IntoIterator<Item = Result<ExactCount>>,
{
    iter.into_iter().try_fold(ExactCount::ZERO, |acc, c| acc.checked_add(c?))
}

/// `C(n, k)`, with `C(n, k) = 0` whenever `k < 0`, `n < 0` or `k > n`.
pub fn binomial(n: i64, k: i64) -> Result<ExactCount> {
    if n < 0 || k < 0 || k > n {
        return Ok(ExactCount::ZERO);
    }
    let k = k.min(n - k) as u128;
    let n = n as u128;
    let mut acc: u128 = 1;
    // After step i, acc = C(n - k + i, i). Reducing by gcd keeps the
    // intermediate product no larger than the next value times i.
    for i in 1..=k {
        let top = n - k + i;
        let g = acc.gcd(&i);
        let (acc_r, i_r) = (acc / g, i / g);
        debug_assert_eq!(top % i_r, 0);
        acc = acc_r.checked_mul(top / i_r).ok_or_else(|| Error::Overflow(format!("C({n}, {k})")))?;
    }
    Ok(ExactCount(acc))
}
