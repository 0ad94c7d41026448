//! Adjacency spectra: closed-form assembly, numeric oracle, families and scan.

pub mod blocks;
pub mod families;
pub mod jacobi;
pub mod quotient;
pub mod scan;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{AdjacencyMatrix, ThresholdHypergraph};

pub use blocks::{block_eigenvalues, n_even, n_odd, t2, BlockCase, BlockEigenvalue};
pub use families::{family_sequence, family_spectrum_symbolic, Family};
pub use jacobi::{eigenvalues_symmetric, JacobiConfig};
pub use quotient::{quotient_matrix, symmetrize_quotient, QuotientMatrix};
pub use scan::{scan_quotient_simplicity, ScanReport, ScanRow};

/// Default absolute tolerance for merging closed-form eigenvalues.
pub const DEFAULT_MERGE_TOL: f64 = 1e-9;

/// Relative factor applied to `||A||_F` when clustering numeric eigenvalues.
pub const NUMERIC_CLUSTER_FACTOR: f64 = 1e-6;

/// Where an eigenvalue came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    /// Closed form for block `j`.
    Block(usize),
    /// Eigenvalue of the equitable quotient.
    Quotient,
    /// Dense eigensolve of the full adjacency matrix.
    Numeric,
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Source::Block(j) => write!(f, "block {j}"),
            Source::Quotient => f.write_str("quotient"),
            Source::Numeric => f.write_str("numeric"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumPair {
    pub eigenvalue: f64,
    pub multiplicity: usize,
    pub sources: Vec<Source>,
}

/// Distinct eigenvalues with multiplicities, sorted descending.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    pairs: Vec<SpectrumPair>,
    merge_tol: f64,
}

impl Spectrum {
    /// Sorts descending and merges chains of values whose neighbours lie within
    /// `merge_tol`. A merged value is the multiplicity-weighted mean.
    pub fn from_values(values: impl IntoIterator<Item = (f64, usize, Source)>, merge_tol: f64) -> Spectrum {
        let mut items: Vec<(f64, usize, Source)> = values.into_iter().filter(|v| v.1 > 0).collect();
        items.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.2.cmp(&b.2)));

        let mut pairs: Vec<SpectrumPair> = Vec::new();
        let mut last_value = f64::NAN;
        for (value, mult, source) in items {
            match pairs.last_mut() {
                Some(p) if (last_value - value).abs() <= merge_tol => {
                    let total = p.multiplicity + mult;
                    p.eigenvalue = (p.eigenvalue * p.multiplicity as f64 + value * mult as f64) / total as f64;
                    p.multiplicity = total;
                    if !p.sources.contains(&source) {
                        p.sources.push(source);
                    }
                }
                _ => pairs.push(SpectrumPair { eigenvalue: value, multiplicity: mult, sources: vec![source] }),
            }
            last_value = value;
        }
        for p in &mut pairs {
            p.sources.sort();
        }
        Spectrum { pairs, merge_tol }
    }

    pub fn pairs(&self) -> &[SpectrumPair] {
        &self.pairs
    }

    pub fn merge_tol(&self) -> f64 {
        self.merge_tol
    }

    /// Number of distinct eigenvalues after merging.
    pub fn distinct_count(&self) -> usize {
        self.pairs.len()
    }

    pub fn total_multiplicity(&self) -> usize {
        self.pairs.iter().map(|p| p.multiplicity).sum()
    }

    /// All eigenvalues repeated by multiplicity, descending.
    pub fn expanded(&self) -> Vec<f64> {
        self.pairs.iter().flat_map(|p| std::iter::repeat_n(p.eigenvalue, p.multiplicity)).collect()
    }

    /// `sum m_i lambda_i`.
    pub fn trace(&self) -> f64 {
        self.pairs.iter().map(|p| p.multiplicity as f64 * p.eigenvalue).sum()
    }

    /// `sum m_i lambda_i^2`.
    pub fn sum_of_squares(&self) -> f64 {
        self.pairs.iter().map(|p| p.multiplicity as f64 * p.eigenvalue * p.eigenvalue).sum()
    }

    /// Checks the zero-trace and Frobenius identities against `a`.
    pub fn check_identities(&self, a: &AdjacencyMatrix, trace_tol: f64, frobenius_rel_tol: f64) -> Result<bool> {
        let fro = a.frobenius_sq()?.to_f64()?;
        let trace_ok = self.trace().abs() <= trace_tol;
        let fro_ok = (self.sum_of_squares() - fro).abs() <= frobenius_rel_tol * fro.max(1.0);
        Ok(self.total_multiplicity() == a.n() && trace_ok && fro_ok)
    }
}

/// Number of distinct eigenvalue classes.
pub fn distinct_count(s: &Spectrum) -> usize {
    s.distinct_count()
}

/// Block eigenvalues with multiplicity `a_j - 1` plus the `r` quotient
/// eigenvalues. Requires `b_n = 1`.
pub fn full_spectrum_closed(h: &ThresholdHypergraph, merge_tol: f64) -> Result<Spectrum> {
    if !h.is_connected() {
        return Err(Error::Disconnected);
    }
    let ss = h.short();
    let mut values = Vec::with_capacity(ss.r() * 2);
    for b in block_eigenvalues(&ss)? {
        values.push((b.value()?, b.multiplicity_lower_bound, Source::Block(b.block)));
    }
    let q = quotient_matrix(h)?;
    for lambda in eigenvalues_symmetric(&q.symmetrized()?, JacobiConfig::default().tol)? {
        values.push((lambda, 1, Source::Quotient));
    }
    Ok(Spectrum::from_values(values, merge_tol))
}

/// Eigenvalues of the full `n x n` adjacency matrix, descending, unclustered.
pub fn numeric_eigenvalues(h: &ThresholdHypergraph) -> Result<Vec<f64>> {
    let a = h.adjacency_closed_form()?.to_f64()?;
    eigenvalues_symmetric(&a, JacobiConfig::default().tol)
}

/// Numeric oracle spectrum; values within `tol` are clustered. Accepts
/// disconnected sequences.
pub fn full_spectrum_numeric(h: &ThresholdHypergraph, tol: f64) -> Result<Spectrum> {
    let values = numeric_eigenvalues(h)?;
    Ok(Spectrum::from_values(values.into_iter().map(|v| (v, 1, Source::Numeric)), tol))
}

/// `1e-6 * ||A||_F`, floored so that the zero matrix still clusters.
pub fn default_numeric_tol(a: &AdjacencyMatrix) -> Result<f64> {
    let fro = a.frobenius_sq()?.to_f64()?.sqrt();
    Ok(NUMERIC_CLUSTER_FACTOR * fro.max(1.0))
}

/// Largest absolute difference between two descending eigenvalue lists.
pub fn max_deviation(a: &[f64], b: &[f64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}
