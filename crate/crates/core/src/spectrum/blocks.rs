//! Closed-form eigenvalues contributed by blocks of twin vertices.
//!
//! Inside a block of size `a_j >= 2` the difference vectors `e_s - e_{s+i}`
//! are eigenvectors for `-a_{s,s+1}`, so every such block yields that value
//! with multiplicity at least `a_j - 1`. The counting helpers below evaluate
//! `a_{s,s+1}` directly from the run lengths; [`block_eigenvalues`] cross-checks
//! each value against the pair-count route on the materialized hypergraph.

use serde::{Deserialize, Serialize};

use crate::combinatorics::{binomial, checked_sum, ExactCount};
use crate::error::{Error, Result};
use crate::hypergraph::ThresholdHypergraph;
use crate::sequences::{LeadingBlock, ShortSequence};

/// Which of the four closed forms produced a block eigenvalue.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BlockCase {
    /// `b_k = 0`, block of zeros (odd index).
    ZerosLeadingOddBlock,
    /// `b_k = 0`, block of ones (even index).
    ZerosLeadingEvenBlock,
    /// `b_k = 1`, block of ones (odd index, including the merged first block).
    OnesLeadingOddBlock,
    /// `b_k = 1`, block of zeros (even index).
    OnesLeadingEvenBlock,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockEigenvalue {
    /// Block index `j`, 1-based.
    pub block: usize,
    /// `a_{s,s+1}`; the eigenvalue is its negation.
    pub pair_count: ExactCount,
    /// `a_j - 1`.
    pub multiplicity_lower_bound: usize,
    pub case: BlockCase,
}

impl BlockEigenvalue {
    pub fn value(&self) -> Result<f64> {
        Ok(-self.pair_count.to_f64()?)
    }
}

fn require(ss: &ShortSequence, leading: LeadingBlock, what: &str) -> Result<()> {
    if ss.leading() != leading {
        return Err(Error::InvalidSequence(format!("{what} applies only to {leading:?}-leading sequences, got {ss}")));
    }
    Ok(())
}

/// Sum of `C(p - 3, k - 3)` over the positions `p` of block `t`: the edges
/// ending inside block `t` that contain two fixed earlier vertices.
fn ending_in_block(ss: &ShortSequence, t: usize) -> Result<ExactCount> {
    let (first, last) = ss.block_range(t);
    let k = ss.k() as i64;
    checked_sum((first..=last).map(|p| binomial(p as i64 - 3, k - 3)))
}

/// `N_{2l}` for `b_k = 0`: `sum_{j=1}^{a_{2l}} C(a_1 + ... + a_{2l-1} + j - 3, k - 3)`.
pub fn n_even(ss: &ShortSequence, l: usize) -> Result<ExactCount> {
    require(ss, LeadingBlock::Zeros, "N_even")?;
    if l == 0 || 2 * l > ss.r() {
        return Err(Error::InvalidSequence(format!("block 2*{l} out of range for {ss}")));
    }
    ending_in_block(ss, 2 * l)
}

/// `N_{2l-1}` for `b_k = 1`: `C(P_{2l-2} - 2, k - 3) + ... + C(P_{2l-1} - 3, k - 3)`.
pub fn n_odd(ss: &ShortSequence, l: usize) -> Result<ExactCount> {
    require(ss, LeadingBlock::MergedOnes, "N_odd")?;
    if l == 0 || 2 * l - 1 > ss.r() {
        return Err(Error::InvalidSequence(format!("block 2*{l}-1 out of range for {ss}")));
    }
    ending_in_block(ss, 2 * l - 1)
}

/// `T_2 = C(P - 2, k - 2)` where `P` is the prefix sum through the `t`-th
/// block of ones (block `2t` when `b_k = 0`, block `2t - 1` when `b_k = 1`).
pub fn t2(ss: &ShortSequence, t: usize) -> Result<ExactCount> {
    let block = match ss.leading() {
        LeadingBlock::Zeros => 2 * t,
        LeadingBlock::MergedOnes => (2 * t).wrapping_sub(1),
    };
    if t == 0 || block > ss.r() {
        return Err(Error::InvalidSequence(format!("no {t}-th block of ones in {ss}")));
    }
    binomial(ss.prefix(block) as i64 - 2, ss.k() as i64 - 2)
}

fn sum_range<F>(from: usize, to: usize, f: F) -> Result<ExactCount>
where
    F: Fn(usize) -> Result<ExactCount>,
{
    checked_sum((from..=to).map(f))
}

/// One entry per block with `a_j >= 2`, valued from the run-length formulas
/// and checked against `-a_{s,s+1}` computed on the hypergraph itself.
pub fn block_eigenvalues(ss: &ShortSequence) -> Result<Vec<BlockEigenvalue>> {
    if !ss.is_connected() {
        return Err(Error::Disconnected);
    }
    let r = ss.r();
    let h = ThresholdHypergraph::new(ss.to_binary());
    let mut out = Vec::new();
    for j in 1..=r {
        let a_j = ss.run(j);
        if a_j < 2 {
            continue;
        }
        let (count, case) = match ss.leading() {
            LeadingBlock::Zeros => {
                let m = r / 2;
                if j % 2 == 1 {
                    let t = j.div_ceil(2);
                    (sum_range(t, m, |l| n_even(ss, l))?, BlockCase::ZerosLeadingOddBlock)
                } else {
                    let t = j / 2;
                    let later = sum_range(t + 1, m, |l| n_even(ss, l))?;
                    (later.checked_add(t2(ss, t)?)?, BlockCase::ZerosLeadingEvenBlock)
                }
            }
            LeadingBlock::MergedOnes => {
                let m = r.div_ceil(2);
                if j % 2 == 1 {
                    let t = j.div_ceil(2);
                    let later = sum_range(t + 1, m, |l| n_odd(ss, l))?;
                    (later.checked_add(t2(ss, t)?)?, BlockCase::OnesLeadingOddBlock)
                } else {
                    let t = j / 2;
                    (sum_range(t + 1, m, |l| n_odd(ss, l))?, BlockCase::OnesLeadingEvenBlock)
                }
            }
        };

        let s = ss.prefix(j - 1) + 1;
        let pair = h.edge_count_pair(s, s + 1)?;
        if pair != count {
            return Err(Error::RouteMismatch { block: j, formula: count.value(), pair: pair.value() });
        }
        out.push(BlockEigenvalue { block: j, pair_count: count, multiplicity_lower_bound: a_j - 1, case });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::Limits;
    use crate::sequences::{parse_binary, parse_short};

    fn ss(text: &str) -> ShortSequence {
        parse_short(text).unwrap()
    }

    #[test]
    fn n_even_values() {
        assert_eq!(n_even(&ss("C(4,1)_3"), 1).unwrap(), 1);
        assert_eq!(n_even(&ss("C(4,2)_3"), 1).unwrap(), 2);
        assert_eq!(n_even(&ss("C(3,2)_3"), 1).unwrap(), 2);
        assert!(n_even(&ss("C(4,1)_3"), 2).is_err());
        assert!(n_even(&ss("C(3,1,1)_3"), 1).is_err());
    }

    #[test]
    fn k4_block_sums_match_bruteforce_pairs() {
        let lim = Limits::default();
        // (k=4; 0,0,0,0,1,1) = C(4,2)_4: edges through v1, v2 ending at v5 and v6
        assert_eq!(n_even(&ss("C(4,2)_4"), 1).unwrap(), 2 + 3);
        let h = ThresholdHypergraph::new(parse_binary("k=4;0,0,0,0,1,1").unwrap());
        assert_eq!(h.adjacency_bruteforce(&lim).unwrap().entry(1, 2), 5);

        // (k=4; 0,0,0,1,1) has b_4 = 1, so it is the single merged block C(5)_4
        let merged = parse_binary("k=4;0,0,0,1,1").unwrap().to_short();
        assert_eq!(merged.to_string(), "C(5)_4");
        assert_eq!(n_odd(&merged, 1).unwrap(), 3);
        let h = ThresholdHypergraph::new(merged.to_binary());
        assert_eq!(h.adjacency_bruteforce(&lim).unwrap().entry(1, 2), 3);
    }

    #[test]
    fn n_odd_values() {
        let f3 = ss("C(3,1,1)_3");
        assert_eq!(n_odd(&f3, 2).unwrap(), 1);
        // merged leading block: only p = 3 contributes C(0, 0)
        assert_eq!(n_odd(&f3, 1).unwrap(), 1);
        for (n, k) in [(7, 3), (8, 4), (9, 5), (7, 2)] {
            let fam = ShortSequence::new(k, vec![k, n - k - 1, 1], LeadingBlock::MergedOnes).unwrap();
            assert_eq!(n_odd(&fam, 2).unwrap(), binomial(n as i64 - 3, k as i64 - 3).unwrap());
        }
        assert!(n_odd(&ss("C(4,1)_3"), 1).is_err());
    }

    #[test]
    fn t2_values() {
        assert_eq!(t2(&ss("C(3,2)_3"), 1).unwrap(), 3);
        assert_eq!(t2(&ss("C(2,2)_2"), 1).unwrap(), 1);
        for (n, k) in [(5, 3), (8, 4), (9, 6)] {
            let fam = ShortSequence::new(k, vec![k, n - k - 1, 1], LeadingBlock::MergedOnes).unwrap();
            assert_eq!(t2(&fam, 2).unwrap(), binomial(n as i64 - 2, k as i64 - 2).unwrap());
        }
        assert!(t2(&ss("C(3,2)_3"), 2).is_err());
        assert!(t2(&ss("C(3,2)_3"), 0).is_err());
    }

    fn values(short: &str) -> Vec<(usize, u128, usize)> {
        block_eigenvalues(&ss(short))
            .unwrap()
            .into_iter()
            .map(|b| (b.block, b.pair_count.value(), b.multiplicity_lower_bound))
            .collect()
    }

    #[test]
    fn family_examples() {
        assert_eq!(values("C(4,1)_3"), vec![(1, 1, 3)]);
        assert_eq!(values("C(3,2)_3"), vec![(1, 2, 2), (2, 3, 1)]);
        assert_eq!(values("C(3,1,1)_3"), vec![(1, 2, 2)]);
    }

    #[test]
    fn disconnected_rejected() {
        let s = parse_binary("k=3;0,0,1,0").unwrap().to_short();
        assert_eq!(block_eigenvalues(&s), Err(Error::Disconnected));
    }
}
