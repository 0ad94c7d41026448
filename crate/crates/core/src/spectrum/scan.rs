//! Empirical probe of whether quotient eigenvalues are always simple.
//!
//! For each connected sequence in range the quotient eigenvalues are computed
//! and the smallest gap between consecutive ones recorded. Rows with a gap
//! below the tolerance are flagged as candidate counterexamples. This is
//! evidence only.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::ThresholdHypergraph;
use crate::sequences::{enumerate_sequences, sequence_count};

use super::jacobi::{eigenvalues_symmetric, JacobiConfig};
use super::quotient::quotient_matrix;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    /// Bit-form sequence text.
    pub sequence: String,
    pub n: usize,
    pub k: usize,
    pub r: usize,
    /// `None` when `r = 1`.
    pub min_quotient_gap: Option<f64>,
    pub flagged: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub tol: f64,
    pub rows: Vec<ScanRow>,
}

impl ScanReport {
    pub fn flagged_count(&self) -> usize {
        self.rows.iter().filter(|r| r.flagged).count()
    }

    /// Smallest gap seen over all rows with `r >= 2`.
    pub fn min_gap(&self) -> Option<f64> {
        self.rows.iter().filter_map(|r| r.min_quotient_gap).min_by(f64::total_cmp)
    }
}

/// Total number of connected sequences with `k <= n <= n_max` for each `k`.
pub fn connected_sequence_total(n_max: usize, k_set: &[usize]) -> u128 {
    k_set.iter().flat_map(|&k| (k..=n_max).map(move |n| sequence_count(n, k, true))).fold(0u128, u128::saturating_add)
}

/// Rows are ordered by `k` (as given), then `n`, then sequence bits.
pub fn scan_quotient_simplicity(n_max: usize, k_set: &[usize], tol: f64, budget: u128) -> Result<ScanReport> {
    let total = connected_sequence_total(n_max, k_set);
    if total > budget {
        return Err(Error::CapExceeded { what: "scan sequences", needed: total, cap: budget });
    }
    let sequences: Vec<_> =
        k_set.iter().flat_map(|&k| (k..=n_max).flat_map(move |n| enumerate_sequences(n, k, true))).collect();
    let rows = sequences
        .into_par_iter()
        .map(|seq| {
            let h = ThresholdHypergraph::new(seq);
            let q = quotient_matrix(&h)?;
            let eig = eigenvalues_symmetric(&q.symmetrized()?, JacobiConfig::default().tol)?;
            let min_gap = eig.windows(2).map(|w| w[0] - w[1]).min_by(f64::total_cmp);
            Ok(ScanRow {
                sequence: h.sequence().to_string(),
                n: h.n(),
                k: h.k(),
                r: q.r(),
                min_quotient_gap: min_gap,
                flagged: min_gap.is_some_and(|g| g < tol),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ScanReport { tol, rows })
}
