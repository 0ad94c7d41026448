//! Equitable quotient of the adjacency matrix under the block partition.

// Index loops read more clearly than iterator chains for in-place matrix updates.
#![allow(clippy::needless_range_loop)]

use serde::{Deserialize, Serialize};

use crate::combinatorics::{checked_sum, ExactCount};
use crate::error::{Error, Result};
use crate::hypergraph::ThresholdHypergraph;

/// `r x r` matrix of block row sums. Entry `(i, j)` is the constant row sum of
/// the `a_i x a_j` block `A_ij`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientMatrix {
    block_sizes: Vec<usize>,
    entries: Vec<Vec<ExactCount>>,
}

impl QuotientMatrix {
    pub fn new(block_sizes: Vec<usize>, entries: Vec<Vec<ExactCount>>) -> Result<Self> {
        let r = block_sizes.len();
        if entries.len() != r || entries.iter().any(|row| row.len() != r) {
            return Err(Error::InvalidSequence(format!("quotient must be {r}x{r}")));
        }
        if block_sizes.contains(&0) {
            return Err(Error::InvalidSequence("block sizes must be positive".into()));
        }
        let q = QuotientMatrix { block_sizes, entries };
        q.check_balance()?;
        Ok(q)
    }

    pub fn r(&self) -> usize {
        self.block_sizes.len()
    }

    pub fn block_sizes(&self) -> &[usize] {
        &self.block_sizes
    }

    /// Entry `(i, j)`, 1-indexed.
    pub fn entry(&self, i: usize, j: usize) -> ExactCount {
        self.entries[i - 1][j - 1]
    }

    pub fn entries(&self) -> &[Vec<ExactCount>] {
        &self.entries
    }

    /// `q_ij * a_i = q_ji * a_j`: both sides are the total of block `A_ij`.
    fn check_balance(&self) -> Result<()> {
        let r = self.r();
        for i in 0..r {
            for j in i + 1..r {
                let lhs = self.entries[i][j].checked_mul(ExactCount(self.block_sizes[i] as u128))?;
                let rhs = self.entries[j][i].checked_mul(ExactCount(self.block_sizes[j] as u128))?;
                if lhs != rhs {
                    return Err(Error::NotEquitable(i + 1, j + 1));
                }
            }
        }
        Ok(())
    }

    /// `S_ij = sqrt(a_i / a_j) q_ij`: symmetric and similar to the quotient.
    pub fn symmetrized(&self) -> Result<Vec<Vec<f64>>> {
        symmetrize_quotient(self)
    }

    /// Coefficients `[1, c_1, ..., c_r]` of `det(xI - Q) = x^r + c_1 x^{r-1} + ... + c_r`,
    /// computed exactly (Faddeev-LeVerrier over the integers).
    pub fn characteristic_polynomial(&self) -> Result<Vec<i128>> {
        let r = self.r();
        let overflow = || Error::Overflow("characteristic polynomial".into());
        let q: Vec<Vec<i128>> = self
            .entries
            .iter()
            .map(|row| row.iter().map(|c| i128::try_from(c.value()).map_err(|_| overflow())).collect())
            .collect::<Result<_>>()?;

        let mut coeffs = vec![1i128];
        // M_1 = I; c_m = -tr(Q M_m) / m; M_{m+1} = Q M_m + c_m I
        let mut m: Vec<Vec<i128>> = (0..r).map(|i| (0..r).map(|j| i128::from(i == j)).collect()).collect();
        for step in 1..=r {
            let qm = matmul(&q, &m).ok_or_else(overflow)?;
            let trace = (0..r).try_fold(0i128, |acc, i| acc.checked_add(qm[i][i])).ok_or_else(overflow)?;
            let c = -trace / step as i128;
            debug_assert_eq!(trace % step as i128, 0);
            coeffs.push(c);
            m = qm;
            for (i, row) in m.iter_mut().enumerate() {
                row[i] = row[i].checked_add(c).ok_or_else(overflow)?;
            }
        }
        Ok(coeffs)
    }
}

fn matmul(a: &[Vec<i128>], b: &[Vec<i128>]) -> Option<Vec<Vec<i128>>> {
    let r = a.len();
    let mut out = vec![vec![0i128; r]; r];
    for i in 0..r {
        for j in 0..r {
            let mut s = 0i128;
            for l in 0..r {
                s = s.checked_add(a[i][l].checked_mul(b[l][j])?)?;
            }
            out[i][j] = s;
        }
    }
    Some(out)
}

/// Block row sums of the closed-form adjacency matrix, with row-sum
/// constancy checked exactly inside every block.
pub fn quotient_matrix(h: &ThresholdHypergraph) -> Result<QuotientMatrix> {
    let ss = h.short();
    let a = h.adjacency_closed_form()?;
    let r = ss.r();
    let ranges: Vec<(usize, usize)> = (1..=r).map(|t| ss.block_range(t)).collect();
    let mut entries = vec![vec![ExactCount::ZERO; r]; r];
    for (bi, &(fi, li)) in ranges.iter().enumerate() {
        for (bj, &(fj, lj)) in ranges.iter().enumerate() {
            let mut constant = None;
            for u in fi..=li {
                let s = checked_sum((fj..=lj).map(|v| Ok(a.entry(u, v))))?;
                match constant {
                    None => constant = Some(s),
                    Some(c) if c != s => return Err(Error::NotEquitable(bi + 1, bj + 1)),
                    Some(_) => {}
                }
            }
            entries[bi][bj] = constant.expect("blocks are nonempty");
        }
    }
    QuotientMatrix::new(ss.runs().to_vec(), entries)
}

pub fn symmetrize_quotient(q: &QuotientMatrix) -> Result<Vec<Vec<f64>>> {
    let r = q.r();
    let sizes = q.block_sizes();
    let mut s = vec![vec![0.0; r]; r];
    for i in 0..r {
        for j in 0..r {
            let scale = (sizes[i] as f64 / sizes[j] as f64).sqrt();
            s[i][j] = scale * q.entries[i][j].to_f64()?;
        }
    }
    // the two triangles agree up to rounding; average them so the result is exactly symmetric
    for i in 0..r {
        for j in i + 1..r {
            let mean = 0.5 * (s[i][j] + s[j][i]);
            s[i][j] = mean;
            s[j][i] = mean;
        }
    }
    Ok(s)
}
