//! Three infinite families with few distinct eigenvalues, and their spectra
//! from explicit quotient polynomials.
//!
//! * family 1: `(0, ..., 0, 1)_k`
//! * family 2: `(0, ..., 0, 1, ..., 1)_k`, first 1 at position `j`
//! * family 3: `(0, ..., 0, 1, 0, ..., 0, 1)_k`, ones at `k` and `n`

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::combinatorics::{binomial, checked_sum, ExactCount};
use crate::error::{Error, Result};
use crate::sequences::{BinarySequence, ShortSequence};

use super::jacobi::{eigenvalues_symmetric, JacobiConfig};
use super::quotient::QuotientMatrix;
use super::{Source, Spectrum, DEFAULT_MERGE_TOL};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    /// `C(n-1, 1)_k`: at most 3 distinct eigenvalues.
    LastVertexDominant,
    /// `C(j-1, n-j+1)_k`: at most 4.
    TrailingOnes,
    /// `C(k, n-k-1, 1)_k`: at most 5.
    TwoPseudodominants,
}

impl Family {
    pub fn number(self) -> u8 {
        match self {
            Family::LastVertexDominant => 1,
            Family::TrailingOnes => 2,
            Family::TwoPseudodominants => 3,
        }
    }

    pub fn from_number(n: u8) -> Result<Family> {
        match n {
            1 => Ok(Family::LastVertexDominant),
            2 => Ok(Family::TrailingOnes),
            3 => Ok(Family::TwoPseudodominants),
            other => Err(Error::Family(format!("unknown family {other}; expected 1, 2 or 3"))),
        }
    }

    /// Upper bound on distinct eigenvalues for every member of the family.
    pub fn distinct_bound(self) -> usize {
        self.number() as usize + 2
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Family> {
        let n = s.trim().parse::<u8>().map_err(|_| Error::Family(format!("unknown family `{s}`")))?;
        Family::from_number(n)
    }
}

fn family_bits(family: Family, n: usize, k: usize, j: Option<usize>) -> Result<Vec<bool>> {
    if k < 2 {
        return Err(Error::Family(format!("uniformity k={k} must be at least 2")));
    }
    match family {
        Family::LastVertexDominant => {
            if n < k {
                return Err(Error::Family(format!("family 1 requires n ≥ k, got n={n}, k={k}")));
            }
            Ok((1..=n).map(|i| i == n).collect())
        }
        Family::TrailingOnes => {
            let j = j.ok_or_else(|| Error::Family("family 2 requires j (position of the first 1)".into()))?;
            if j < k || j + 1 > n {
                return Err(Error::Family(format!("family 2 requires k ≤ j ≤ n-1, got n={n}, k={k}, j={j}")));
            }
            Ok((1..=n).map(|i| i >= j).collect())
        }
        Family::TwoPseudodominants => {
            if n < k + 2 {
                return Err(Error::Family(format!("family 3 requires n ≥ k+2, got n={n}, k={k}")));
            }
            Ok((1..=n).map(|i| i == k || i == n).collect())
        }
    }
}

/// Short sequence of the family member. When the first 1 sits at position
/// `k` (family 1 with `n = k`, family 2 with `j = k`) the leading zeros merge
/// into it and the result is the single block `C(n)_k`.
pub fn family_sequence(family: Family, n: usize, k: usize, j: Option<usize>) -> Result<ShortSequence> {
    let bits = family_bits(family, n, k, j)?;
    Ok(BinarySequence::new(k, bits)?.to_short())
}

fn c(n: usize, k: usize, dn: i64, dk: i64) -> Result<ExactCount> {
    binomial(n as i64 + dn, k as i64 + dk)
}

fn exact_i128(c: ExactCount) -> Result<i128> {
    i128::try_from(c.value()).map_err(|_| Error::Overflow(format!("{c} does not fit i128")))
}

/// Roots of `x^2 - s x + p`, larger first. Evaluated in the cancellation-free form.
fn quadratic_roots(s: i128, p: i128) -> Result<(f64, f64)> {
    let disc = s
        .checked_mul(s)
        .and_then(|ss| p.checked_mul(4).and_then(|p4| ss.checked_sub(p4)))
        .ok_or_else(|| Error::Overflow("quadratic discriminant".into()))?;
    let (s, p, d) = (s as f64, p as f64, (disc as f64).max(0.0).sqrt());
    let big = if s >= 0.0 { (s + d) / 2.0 } else { (s - d) / 2.0 };
    let small = if big == 0.0 { 0.0 } else { p / big };
    Ok(if big >= small { (big, small) } else { (small, big) })
}

/// Spectrum assembled from the family's explicit block values and the roots
/// of its quotient polynomial.
pub fn family_spectrum_symbolic(family: Family, n: usize, k: usize, j: Option<usize>) -> Result<Spectrum> {
    family_bits(family, n, k, j)?;
    let mut values: Vec<(f64, usize, Source)> = Vec::new();
    match family {
        Family::LastVertexDominant => {
            // x^2 - a(n-2) x - b^2 (n-1)
            let a = exact_i128(c(n, k, -3, -3)?)?;
            let b = exact_i128(c(n, k, -2, -2)?)?;
            let n_ = n as i128;
            let s = a * (n_ - 2);
            let p = -(b * b * (n_ - 1));
            let (alpha, beta) = quadratic_roots(s, p)?;
            values.push((alpha, 1, Source::Quotient));
            values.push((beta, 1, Source::Quotient));
            values.push((-(a as f64), n - 2, Source::Block(1)));
        }
        Family::TrailingOnes => {
            let j = j.expect("checked by family_bits");
            let q = n + 1 - j;
            // a = sum_{i=1}^{q} C(n - i - 2, k - 3)
            let a = exact_i128(checked_sum((1..=q).map(|i| c(n, k, -(i as i64) - 2, -3)))?)?;
            let b = exact_i128(c(n, k, -2, -2)?)?;
            let (n_, q_) = (n as i128, q as i128);
            // x^2 - x(a(n-q-1) + b(q-1)) + a(n-q-1) b(q-1) - b^2 q (n-q)
            let s = a * (n_ - q_ - 1) + b * (q_ - 1);
            let p = a * (n_ - q_ - 1) * b * (q_ - 1) - b * b * q_ * (n_ - q_);
            let (alpha, beta) = quadratic_roots(s, p)?;
            values.push((alpha, 1, Source::Quotient));
            values.push((beta, 1, Source::Quotient));
            values.push((-(a as f64), n - q - 1, Source::Block(1)));
            values.push((-(b as f64), q - 1, Source::Block(2)));
        }
        Family::TwoPseudodominants => {
            let a = c(n, k, -3, -3)?;
            let b = c(n, k, -2, -2)?;
            let (ai, bi) = (a.value(), b.value());
            let (n_, k_) = (n as u128, k as u128);
            let e = |v: u128| ExactCount(v);
            let entries = vec![
                vec![e((ai + 1) * (k_ - 1)), e(ai * (n_ - k_ - 1)), e(bi)],
                vec![e(ai * k_), e(ai * (n_ - k_ - 2)), e(bi)],
                vec![e(bi * k_), e(bi * (n_ - k_ - 1)), e(0)],
            ];
            let quotient = QuotientMatrix::new(vec![k, n - k - 1, 1], entries)?;
            for lambda in eigenvalues_symmetric(&quotient.symmetrized()?, JacobiConfig::default().tol)? {
                values.push((lambda, 1, Source::Quotient));
            }
            values.push((-(ai as f64) - 1.0, k - 1, Source::Block(1)));
            values.push((-(ai as f64), n - k - 2, Source::Block(2)));
        }
    }
    Ok(Spectrum::from_values(values, DEFAULT_MERGE_TOL))
}
