//! Binary creation sequences and their run-length (short) form.
//!
//! Text grammars:
//!
//! ```text
//! k=K;b1,b2,...,bn        bit form
//! C(a1,a2,...,ar)_K       short form
//! ```
//!
//! The short form does not carry the leading-block kind, so it is inferred
//! from the parity of `r` the way it is for connected sequences: even `r`
//! means `b_k = 0`, odd `r` means `b_k = 1`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The defining word `(b_1, ..., b_n)_k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BinarySequence {
    k: usize,
    bits: Vec<bool>,
}

impl BinarySequence {
    /// Validates `k >= 2`, `n >= k - 1` and `b_1 = ... = b_{k-1} = 0`.
    pub fn new(k: usize, bits: Vec<bool>) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidSequence(format!("uniformity k={k} must be at least 2")));
        }
        if bits.len() + 1 < k {
            return Err(Error::InvalidSequence(format!("n={} is smaller than k-1={}", bits.len(), k - 1)));
        }
        if let Some(pos) = bits[..k - 1].iter().position(|&b| b) {
            return Err(Error::InvalidSequence(format!(
                "b_{} = 1 but the first k-1={} entries must be 0",
                pos + 1,
                k - 1
            )));
        }
        Ok(BinarySequence { k, bits })
    }

    /// Builds from 0/1 integers.
    pub fn from_bits(k: usize, bits: &[u8]) -> Result<Self> {
        let bits = bits
            .iter()
            .map(|&b| match b {
                0 => Ok(false),
                1 => Ok(true),
                other => Err(Error::Parse(format!("bit {other} is not 0 or 1"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(k, bits)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.bits.len()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// `b_i`, 1-indexed.
    pub fn bit(&self, i: usize) -> bool {
        self.bits[i - 1]
    }

    /// Connected iff the last vertex is pseudodominant.
    pub fn is_connected(&self) -> bool {
        self.bits.last().copied().unwrap_or(false)
    }

    pub fn to_short(&self) -> ShortSequence {
        to_short(self)
    }

    pub fn complement(&self) -> BinarySequence {
        complement_sequence(self)
    }

    pub fn delete_vertex(&self, i: usize) -> Result<BinarySequence> {
        delete_vertex(self, i)
    }
}

impl fmt::Display for BinarySequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k={};", self.k)?;
        for (idx, &b) in self.bits.iter().enumerate() {
            if idx > 0 {
                f.write_str(",")?;
            }
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BinarySequence {
    type Err = Error;

    /// Accepts either text grammar.
    fn from_str(s: &str) -> Result<Self> {
        parse_sequence(s)
    }
}

/// Which bit the first block of a short sequence carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LeadingBlock {
    /// `b_k = 0`: runs alternate 0-block, 1-block, ...
    Zeros,
    /// `b_k = 1`: the first run holds the `k-1` forced zeros and the first
    /// 1-block, then runs alternate 0-block, 1-block, ...
    MergedOnes,
}

/// The short sequence `C(a_1, ..., a_r)_k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ShortSequence {
    k: usize,
    runs: Vec<usize>,
    leading: LeadingBlock,
}

impl ShortSequence {
    pub fn new(k: usize, runs: Vec<usize>, leading: LeadingBlock) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidSequence(format!("uniformity k={k} must be at least 2")));
        }
        if runs.is_empty() {
            return Err(Error::InvalidSequence("short sequence has no runs".into()));
        }
        if runs.contains(&0) {
            return Err(Error::InvalidSequence("every run must be positive".into()));
        }
        let a1 = runs[0];
        match leading {
            LeadingBlock::MergedOnes if a1 < k => {
                return Err(Error::InvalidSequence(format!("b_k=1 form needs a_1 >= k={k}, got {a1}")));
            }
            // a lone run of k-1 zeros is the degenerate edgeless case
            LeadingBlock::Zeros if a1 < k && !(runs.len() == 1 && a1 + 1 == k) => {
                return Err(Error::InvalidSequence(format!("b_k=0 form needs a_1 >= k={k}, got {a1}")));
            }
            _ => {}
        }
        Ok(ShortSequence { k, runs, leading })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn runs(&self) -> &[usize] {
        &self.runs
    }

    pub fn leading(&self) -> LeadingBlock {
        self.leading
    }

    /// Number of blocks `r`.
    pub fn r(&self) -> usize {
        self.runs.len()
    }

    pub fn n(&self) -> usize {
        self.runs.iter().sum()
    }

    /// `a_t`, 1-indexed.
    pub fn run(&self, t: usize) -> usize {
        self.runs[t - 1]
    }

    /// `a_1 + ... + a_t`; `prefix(0) = 0`.
    pub fn prefix(&self, t: usize) -> usize {
        self.runs[..t].iter().sum()
    }

    /// Whether block `t` (1-indexed) is made of pseudodominant vertices.
    /// The merged first block counts as a 1-block: its zeros are twins of its ones.
    pub fn block_is_ones(&self, t: usize) -> bool {
        match self.leading {
            LeadingBlock::Zeros => t.is_multiple_of(2),
            LeadingBlock::MergedOnes => t % 2 == 1,
        }
    }

    /// Vertex range `first..=last` of block `t`.
    pub fn block_range(&self, t: usize) -> (usize, usize) {
        (self.prefix(t - 1) + 1, self.prefix(t))
    }

    pub fn is_connected(&self) -> bool {
        self.block_is_ones(self.r())
    }

    pub fn block_of_vertex(&self, i: usize) -> Result<usize> {
        block_of_vertex(self, i)
    }

    pub fn to_binary(&self) -> BinarySequence {
        to_binary(self)
    }
}

impl fmt::Display for ShortSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("C(")?;
        for (idx, a) in self.runs.iter().enumerate() {
            if idx > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")_{}", self.k)
    }
}

/// Parses the bit grammar `k=K;b1,...,bn`.
pub fn parse_binary(text: &str) -> Result<BinarySequence> {
    let text = text.trim();
    let (head, body) =
        text.split_once(';').ok_or_else(|| Error::Parse(format!("expected `k=K;b1,...,bn`, got `{text}`")))?;
    let k = head
        .trim()
        .strip_prefix("k=")
        .ok_or_else(|| Error::Parse(format!("expected `k=K` before `;`, got `{head}`")))?
        .trim()
        .parse::<usize>()
        .map_err(|e| Error::Parse(format!("bad uniformity `{head}`: {e}")))?;
    let body = body.trim();
    let bits = if body.is_empty() {
        Vec::new()
    } else {
        body.split(',')
            .map(|tok| match tok.trim() {
                "0" => Ok(false),
                "1" => Ok(true),
                other => Err(Error::Parse(format!("bit `{other}` is not 0 or 1"))),
            })
            .collect::<Result<Vec<_>>>()?
    };
    BinarySequence::new(k, bits)
}

/// Parses the short grammar `C(a1,...,ar)_K`, inferring the leading-block
/// kind from the parity of `r`.
pub fn parse_short(text: &str) -> Result<ShortSequence> {
    let text = text.trim();
    let inner =
        text.strip_prefix("C(").ok_or_else(|| Error::Parse(format!("expected `C(a1,...,ar)_K`, got `{text}`")))?;
    let (runs, k) = inner.split_once(")_").ok_or_else(|| Error::Parse(format!("expected `)_K` in `{text}`")))?;
    let k = k.trim().parse::<usize>().map_err(|e| Error::Parse(format!("bad uniformity in `{text}`: {e}")))?;
    let runs = runs
        .split(',')
        .map(|tok| tok.trim().parse::<usize>().map_err(|e| Error::Parse(format!("bad run length `{tok}`: {e}"))))
        .collect::<Result<Vec<_>>>()?;
    let leading = if runs.len() % 2 == 0 { LeadingBlock::Zeros } else { LeadingBlock::MergedOnes };
    ShortSequence::new(k, runs, leading)
}

/// Parses either grammar into a binary sequence.
pub fn parse_sequence(text: &str) -> Result<BinarySequence> {
    if text.trim_start().starts_with('C') {
        Ok(parse_short(text)?.to_binary())
    } else {
        parse_binary(text)
    }
}

fn maximal_runs(bits: &[bool]) -> Vec<usize> {
    let mut runs = Vec::new();
    let mut iter = bits.iter().peekable();
    while let Some(&b) = iter.next() {
        let mut len = 1;
        while iter.next_if(|&&x| x == b).is_some() {
            len += 1;
        }
        runs.push(len);
    }
    runs
}

pub fn to_short(s: &BinarySequence) -> ShortSequence {
    let k = s.k();
    let mut runs = maximal_runs(s.bits());
    let leading = if s.n() >= k && s.bit(k) {
        // k-1 leading zeros merge with the first block of ones
        let ones = runs.remove(1);
        runs[0] += ones;
        LeadingBlock::MergedOnes
    } else {
        LeadingBlock::Zeros
    };
    ShortSequence { k, runs, leading }
}

pub fn to_binary(ss: &ShortSequence) -> BinarySequence {
    let k = ss.k();
    let mut bits = Vec::with_capacity(ss.n());
    for (idx, &a) in ss.runs().iter().enumerate() {
        let t = idx + 1;
        if t == 1 && ss.leading() == LeadingBlock::MergedOnes {
            bits.extend(std::iter::repeat_n(false, k - 1));
            bits.extend(std::iter::repeat_n(true, a - (k - 1)));
        } else {
            bits.extend(std::iter::repeat_n(ss.block_is_ones(t), a));
        }
    }
    BinarySequence::new(k, bits).expect("validated short sequence maps to a valid binary sequence")
}

/// Keeps the first `k-1` zeros and flips everything after them.
pub fn complement_sequence(s: &BinarySequence) -> BinarySequence {
    let km1 = s.k() - 1;
    let bits = s.bits().iter().enumerate().map(|(idx, &b)| if idx < km1 { false } else { !b }).collect();
    BinarySequence { k: s.k(), bits }
}

/// Sequence of the subhypergraph induced by removing vertex `i` (1-indexed).
pub fn delete_vertex(s: &BinarySequence, i: usize) -> Result<BinarySequence> {
    let n = s.n();
    let k = s.k();
    if i == 0 || i > n {
        return Err(Error::VertexOutOfRange { index: i, n });
    }
    if n < k {
        // n - 1 < k - 1
        return Err(Error::InvalidSequence(format!(
            "deleting a vertex from n={n} leaves fewer than k-1={} vertices",
            k - 1
        )));
    }
    let mut bits = s.bits().to_vec();
    let flip_first_one = !bits[i - 1] && i < k && bits[k - 1];
    bits.remove(i - 1);
    if flip_first_one {
        // the only edge ending at v_k contained v_i
        bits[k - 2] = false;
    }
    BinarySequence::new(k, bits)
}

pub fn block_of_vertex(ss: &ShortSequence, i: usize) -> Result<usize> {
    let n = ss.n();
    if i == 0 || i > n {
        return Err(Error::VertexOutOfRange { index: i, n });
    }
    let mut acc = 0;
    for (idx, &a) in ss.runs().iter().enumerate() {
        acc += a;
        if i <= acc {
            return Ok(idx + 1);
        }
    }
    unreachable!("prefix sums reach n")
}

/// Every valid sequence on `n` vertices for uniformity `k`, in lexicographic
/// order of the free bits `b_k, ..., b_n`. With `connected_only`, `b_n` is fixed to 1.
pub fn enumerate_sequences(n: usize, k: usize, connected_only: bool) -> Vec<BinarySequence> {
    if k < 2 || n + 1 < k {
        return Vec::new();
    }
    let free = n + 1 - k;
    if connected_only && free == 0 {
        return Vec::new();
    }
    let varying = if connected_only { free - 1 } else { free };
    (0u64..1 << varying)
        .map(|mask| {
            let mut bits = vec![false; n];
            for p in 0..varying {
                // most significant free bit first
                bits[k - 1 + p] = mask >> (varying - 1 - p) & 1 == 1;
            }
            if connected_only {
                bits[n - 1] = true;
            }
            BinarySequence { k, bits }
        })
        .collect()
}

/// Number of sequences `enumerate_sequences` would produce.
pub fn sequence_count(n: usize, k: usize, connected_only: bool) -> u128 {
    if k < 2 || n + 1 < k {
        return 0;
    }
    let free = (n + 1 - k) as u32;
    match (connected_only, free) {
        (true, 0) => 0,
        (true, f) => 1u128.checked_shl(f - 1).unwrap_or(u128::MAX),
        (false, f) => 1u128.checked_shl(f).unwrap_or(u128::MAX),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(k: usize, bits: &[u8]) -> BinarySequence {
        BinarySequence::from_bits(k, bits).unwrap()
    }

    #[test]
    fn parse_bit_form() {
        assert_eq!(parse_binary("k=4;0,0,0,1,1,0").unwrap(), seq(4, &[0, 0, 0, 1, 1, 0]));
        assert_eq!(parse_binary(" k=3; 0, 0, 1 ").unwrap(), seq(3, &[0, 0, 1]));
        assert!(matches!(parse_binary("k=3;0,1,1"), Err(Error::InvalidSequence(_))));
        assert!(matches!(parse_binary("k=1;0"), Err(Error::InvalidSequence(_))));
        assert!(matches!(parse_binary("k=3;0"), Err(Error::InvalidSequence(_))));
        assert!(matches!(parse_binary("k=3;0,0,2"), Err(Error::Parse(_))));
        assert!(matches!(parse_binary("0,0,1"), Err(Error::Parse(_))));
        // n = k-1 is the degenerate edgeless case
        assert_eq!(parse_binary("k=3;0,0").unwrap().n(), 2);
    }

    #[test]
    fn short_form_examples() {
        let h1 = seq(3, &[0, 0, 0, 0, 0, 1, 1, 0, 1, 1, 1, 0, 0, 0, 1]);
        assert_eq!(h1.to_short().to_string(), "C(5,2,1,3,3,1)_3");
        assert_eq!(h1.to_short().leading(), LeadingBlock::Zeros);

        let h2 = seq(4, &[0, 0, 0, 1, 1, 1, 1, 0, 1, 1, 0, 0, 0, 1]);
        assert_eq!(h2.to_short().to_string(), "C(7,1,2,3,1)_4");
        assert_eq!(h2.to_short().leading(), LeadingBlock::MergedOnes);

        assert_eq!(seq(3, &[0, 0, 0, 0, 1]).to_short().to_string(), "C(4,1)_3");
    }

    #[test]
    fn short_to_binary() {
        assert_eq!(parse_short("C(4,1)_3").unwrap().to_binary(), seq(3, &[0, 0, 0, 0, 1]));
        assert_eq!(
            parse_short("C(7,1,2,3,1)_4").unwrap().to_binary(),
            seq(4, &[0, 0, 0, 1, 1, 1, 1, 0, 1, 1, 0, 0, 0, 1])
        );
        assert!(matches!(parse_short("C(2,1)_4"), Err(Error::InvalidSequence(_))));
        assert!(ShortSequence::new(4, vec![2, 1], LeadingBlock::MergedOnes).is_err());
        assert!(matches!(parse_short("C(4,0)_3"), Err(Error::InvalidSequence(_))));
        assert!(matches!(parse_short("C(4,1)"), Err(Error::Parse(_))));
    }

    #[test]
    fn parity_of_r_for_connected() {
        for k in 2..=4 {
            for n in k..=9 {
                for s in enumerate_sequences(n, k, true) {
                    let ss = s.to_short();
                    let expect_even = !s.bit(k);
                    assert_eq!(ss.r() % 2 == 0, expect_even, "{s}");
                    assert!(ss.is_connected());
                }
            }
        }
    }

    #[test]
    fn complement_examples() {
        assert_eq!(seq(3, &[0, 0, 0, 0, 1]).complement(), seq(3, &[0, 0, 1, 1, 0]));
        assert_eq!(seq(4, &[0, 0, 0, 1, 1, 1]).complement(), seq(4, &[0, 0, 0, 0, 0, 0]));
        assert_eq!(seq(2, &[0, 1]).complement(), seq(2, &[0, 0]));
    }

    #[test]
    fn delete_vertex_examples() {
        assert_eq!(seq(3, &[0, 0, 1, 1]).delete_vertex(3).unwrap(), seq(3, &[0, 0, 1]));
        assert_eq!(seq(3, &[0, 0, 1, 0, 1]).delete_vertex(1).unwrap(), seq(3, &[0, 0, 0, 1]));
        assert_eq!(seq(3, &[0, 0, 1, 0, 1]).delete_vertex(4).unwrap(), seq(3, &[0, 0, 1, 1]));
        assert_eq!(seq(3, &[0, 0, 1]).delete_vertex(3).unwrap(), seq(3, &[0, 0]));
        assert!(matches!(seq(3, &[0, 0, 1]).delete_vertex(4), Err(Error::VertexOutOfRange { .. })));
        assert!(matches!(seq(3, &[0, 0, 1]).delete_vertex(0), Err(Error::VertexOutOfRange { .. })));
        assert!(matches!(seq(3, &[0, 0]).delete_vertex(1), Err(Error::InvalidSequence(_))));
    }

    #[test]
    fn block_lookup() {
        let ss = parse_short("C(5,2,1,3,3,1)_3").unwrap();
        assert_eq!(ss.block_of_vertex(6).unwrap(), 2);
        assert_eq!(ss.block_of_vertex(1).unwrap(), 1);
        assert_eq!(ss.block_of_vertex(15).unwrap(), 6);
        assert_eq!(ss.block_of_vertex(5).unwrap(), 1);
        assert!(ss.block_of_vertex(16).is_err());
        assert!(ss.block_of_vertex(0).is_err());
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_sequences(7, 4, false).len(), 16);
        assert_eq!(enumerate_sequences(7, 4, true).len(), 8);
        assert_eq!(enumerate_sequences(3, 4, false).len(), 1);
        assert!(enumerate_sequences(3, 4, true).is_empty());
        assert_eq!(sequence_count(30, 3, true), 1 << 27);
        for s in enumerate_sequences(6, 3, false) {
            assert_eq!(BinarySequence::new(s.k(), s.bits().to_vec()).unwrap(), s);
        }
    }

    #[test]
    fn either_grammar() {
        let a: BinarySequence = "C(3,2)_3".parse().unwrap();
        let b: BinarySequence = "k=3;0,0,0,1,1".parse().unwrap();
        assert_eq!(a, b);
        assert_eq!(b.to_string(), "k=3;0,0,0,1,1");
    }
}
