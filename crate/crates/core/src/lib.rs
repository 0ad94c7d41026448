//! `k`-uniform threshold hypergraphs built from binary creation sequences.
//!
//! A sequence `(b_1, ..., b_n)_k` with `b_1 = ... = b_{k-1} = 0` defines a
//! hypergraph on `v_1, ..., v_n` whose edges are exactly the `k`-subsets whose
//! largest vertex has bit 1. This crate provides
//!
//! * exact adjacency matrices (pair counts) from closed forms, with a
//!   brute-force edge enumeration oracle,
//! * block eigenvalues from binomial formulas over the run-length form,
//!   the equitable quotient matrix, and a Jacobi eigensolver,
//! * three families with few distinct eigenvalues, a quotient-simplicity
//!   scan and exhaustive invariant sweeps.
//!
//! ```
//! use thresh_core::{parse_sequence, full_spectrum_closed, ThresholdHypergraph};
//!
//! let h = ThresholdHypergraph::new(parse_sequence("k=3;0,0,0,0,1").unwrap());
//! let spec = full_spectrum_closed(&h, 1e-9).unwrap();
//! assert_eq!(spec.distinct_count(), 3);
//! ```

pub mod combinatorics;
pub mod error;
pub mod hypergraph;
pub mod sequences;
pub mod spectrum;
pub mod verify;

pub use combinatorics::{binomial, ExactCount};
pub use error::{Error, Result};
pub use hypergraph::{
    check_total_replaceability, format_edges, replaceable_leq, AdjacencyMatrix, Edge, GeneralHypergraph, Limits,
    ThresholdHypergraph,
};
pub use sequences::{
    block_of_vertex, complement_sequence, delete_vertex, enumerate_sequences, parse_binary, parse_sequence,
    parse_short, to_binary, to_short, BinarySequence, LeadingBlock, ShortSequence,
};
pub use spectrum::{
    block_eigenvalues, distinct_count, family_sequence, family_spectrum_symbolic, full_spectrum_closed,
    full_spectrum_numeric, numeric_eigenvalues, quotient_matrix, scan_quotient_simplicity, symmetrize_quotient,
    BlockEigenvalue, Family, QuotientMatrix, ScanReport, Source, Spectrum, SpectrumPair,
};
