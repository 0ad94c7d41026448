//! Shared inputs for the benchmarks.

use thresh_core::{BinarySequence, ThresholdHypergraph};

/// A connected sequence of length `n` whose blocks alternate with sizes
/// 1, 2, 3, ... so that the quotient grows with `n`.
pub fn staircase(n: usize, k: usize) -> ThresholdHypergraph {
    assert!(n >= k && k >= 2);
    let mut bits = vec![false; k - 1];
    let (mut bit, mut run, mut left) = (true, 1, 1);
    while bits.len() < n - 1 {
        bits.push(bit);
        left -= 1;
        if left == 0 {
            bit = !bit;
            run += 1;
            left = run;
        }
    }
    bits.push(true);
    ThresholdHypergraph::new(BinarySequence::new(k, bits).expect("valid by construction"))
}
