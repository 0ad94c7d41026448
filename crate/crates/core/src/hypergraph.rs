//! Threshold hypergraphs, explicit hypergraphs, and their adjacency matrices.
//!
//! Vertices are 1-indexed (`v_1, ..., v_n` in creation order). Edges are
//! stored as sorted vertex lists and edge sets are kept in lexicographic order.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{binomial, checked_sum, ExactCount};
use crate::error::{Error, Result};
use crate::sequences::{BinarySequence, ShortSequence};

/// A sorted list of `k` distinct vertices.
pub type Edge = Vec<usize>;

/// Resource caps for routines that enumerate edges or subsets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    pub edge_cap: u128,
    pub subset_cap: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { edge_cap: 10_000_000, subset_cap: 10_000_000 }
    }
}

/// The `k`-uniform threshold hypergraph defined by a binary sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ThresholdHypergraph {
    sequence: BinarySequence,
}

impl From<BinarySequence> for ThresholdHypergraph {
    fn from(sequence: BinarySequence) -> Self {
        ThresholdHypergraph { sequence }
    }
}

impl ThresholdHypergraph {
    pub fn new(sequence: BinarySequence) -> Self {
        ThresholdHypergraph { sequence }
    }

    pub fn sequence(&self) -> &BinarySequence {
        &self.sequence
    }

    pub fn short(&self) -> ShortSequence {
        self.sequence.to_short()
    }

    pub fn n(&self) -> usize {
        self.sequence.n()
    }

    pub fn k(&self) -> usize {
        self.sequence.k()
    }

    pub fn is_connected(&self) -> bool {
        self.sequence.is_connected()
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v == 0 || v > self.n() {
            return Err(Error::VertexOutOfRange { index: v, n: self.n() });
        }
        Ok(())
    }

    /// `e` is an edge iff it is a `k`-subset whose largest vertex has bit 1.
    pub fn is_edge(&self, e: &[usize]) -> Result<bool> {
        if e.len() != self.k() {
            return Err(Error::InvalidEdge(format!("{e:?} has {} vertices, expected k={}", e.len(), self.k())));
        }
        for &v in e {
            self.check_vertex(v)?;
        }
        if e.iter().all_unique() {
            let last = *e.iter().max().expect("k >= 2");
            Ok(self.sequence.bit(last))
        } else {
            Err(Error::InvalidEdge(format!("{e:?} repeats a vertex")))
        }
    }

    /// Vertices `i` with `b_i = 1`, increasing.
    pub fn pseudodominants(&self) -> Vec<usize> {
        (1..=self.n()).filter(|&i| self.sequence.bit(i)).collect()
    }

    /// `|E| = sum over pseudodominant l of C(l-1, k-1)`.
    pub fn edge_count(&self) -> Result<ExactCount> {
        let km1 = self.k() as i64 - 1;
        checked_sum(self.pseudodominants().into_iter().map(|l| binomial(l as i64 - 1, km1)))
    }

    /// All edges, lexicographically ordered. Refuses when `|E|` exceeds `limits.edge_cap`.
    pub fn enumerate_edges(&self, limits: &Limits) -> Result<Vec<Edge>> {
        let count = self.edge_count()?.value();
        if count > limits.edge_cap {
            return Err(Error::CapExceeded { what: "edge enumeration", needed: count, cap: limits.edge_cap });
        }
        let mut edges = Vec::with_capacity(count as usize);
        for l in self.pseudodominants() {
            for mut head in (1..l).combinations(self.k() - 1) {
                head.push(l);
                edges.push(head);
            }
        }
        edges.sort_unstable();
        Ok(edges)
    }

    /// `a_{i,j}`: edges ending at `v_j` plus edges ending beyond it, with `i < j`.
    pub fn edge_count_pair(&self, i: usize, j: usize) -> Result<ExactCount> {
        self.check_vertex(i)?;
        self.check_vertex(j)?;
        if i == j {
            return Err(Error::InvalidEdge(format!("pair count needs distinct vertices, got {i} twice")));
        }
        let j = i.max(j);
        let k = self.k() as i64;
        let ending_here = if self.sequence.bit(j) { binomial(j as i64 - 2, k - 2)? } else { ExactCount::ZERO };
        let ending_later =
            checked_sum((j + 1..=self.n()).filter(|&l| self.sequence.bit(l)).map(|l| binomial(l as i64 - 3, k - 3)))?;
        ending_here.checked_add(ending_later)
    }

    /// Adjacency matrix from pair-count formulas; never enumerates edges.
    pub fn adjacency_closed_form(&self) -> Result<AdjacencyMatrix> {
        let n = self.n();
        let mut m = AdjacencyMatrix::zeros(n);
        for i in 1..=n {
            for j in i + 1..=n {
                let c = self.edge_count_pair(i, j)?;
                m.set(i, j, c);
                m.set(j, i, c);
            }
        }
        Ok(m)
    }

    /// Adjacency matrix by counting pairs over the enumerated edge list.
    pub fn adjacency_bruteforce(&self, limits: &Limits) -> Result<AdjacencyMatrix> {
        let edges = self.enumerate_edges(limits)?;
        Ok(AdjacencyMatrix::from_edges(self.n(), &edges))
    }

    /// `(S, C)`: the vertices with bit 0 and with bit 1.
    pub fn split_partition(&self) -> (Vec<usize>, Vec<usize>) {
        (1..=self.n()).partition(|&i| !self.sequence.bit(i))
    }

    pub fn to_general(&self, limits: &Limits) -> Result<GeneralHypergraph> {
        let edges = self.enumerate_edges(limits)?;
        GeneralHypergraph::new(self.n(), self.k(), edges)
    }
}

/// Symmetric `n x n` matrix of exact pair counts with zero diagonal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AdjacencyMatrix {
    n: usize,
    entries: Vec<ExactCount>,
}

impl AdjacencyMatrix {
    pub fn zeros(n: usize) -> Self {
        AdjacencyMatrix { n, entries: vec![ExactCount::ZERO; n * n] }
    }

    pub fn from_edges(n: usize, edges: &[Edge]) -> Self {
        let mut m = Self::zeros(n);
        for e in edges {
            for (a, b) in e.iter().tuple_combinations() {
                m.entries[(a - 1) * n + (b - 1)].0 += 1;
                m.entries[(b - 1) * n + (a - 1)].0 += 1;
            }
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry at 1-indexed `(i, j)`.
    pub fn entry(&self, i: usize, j: usize) -> ExactCount {
        self.entries[(i - 1) * self.n + (j - 1)]
    }

    fn set(&mut self, i: usize, j: usize, c: ExactCount) {
        self.entries[(i - 1) * self.n + (j - 1)] = c;
    }

    /// Row `i` (1-indexed).
    pub fn row(&self, i: usize) -> &[ExactCount] {
        &self.entries[(i - 1) * self.n..i * self.n]
    }

    pub fn is_symmetric(&self) -> bool {
        (1..=self.n).all(|i| (i + 1..=self.n).all(|j| self.entry(i, j) == self.entry(j, i)))
    }

    /// `sum_{i != j} a_{ij}^2`, exactly.
    pub fn frobenius_sq(&self) -> Result<ExactCount> {
        checked_sum(self.entries.iter().map(|&c| c.checked_mul(c)))
    }

    /// Dense row-major `f64` copy; entries above 2^53 are rejected.
    pub fn to_f64(&self) -> Result<Vec<Vec<f64>>> {
        (1..=self.n).map(|i| self.row(i).iter().map(|c| c.to_f64()).collect()).collect()
    }

    /// `n` lines of `n` comma-separated integers.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for i in 1..=self.n {
            let line = self.row(i).iter().join(",");
            let _ = writeln!(out, "{line}");
        }
        out
    }
}

/// Explicit `k`-uniform hypergraph on vertices `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneralHypergraph {
    n: usize,
    k: usize,
    edges: BTreeSet<Edge>,
}

impl GeneralHypergraph {
    pub fn new(n: usize, k: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for mut e in edges {
            e.sort_unstable();
            if e.len() != k {
                return Err(Error::InvalidEdge(format!("{e:?} does not have k={k} vertices")));
            }
            if e.iter().any(|&v| v == 0 || v > n) {
                return Err(Error::InvalidEdge(format!("{e:?} leaves vertex range 1..={n}")));
            }
            if !e.iter().all_unique() {
                return Err(Error::InvalidEdge(format!("{e:?} repeats a vertex")));
            }
            set.insert(e);
        }
        Ok(GeneralHypergraph { n, k, edges: set })
    }

    /// Reads the edge-list data format: `n=N` and `k=K` header lines, then one
    /// comma-separated edge per line. `#` starts a comment.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut n = None;
        let mut k = None;
        let mut edges = Vec::new();
        for raw in text.lines() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let parse_usize = |s: &str| {
                s.trim().parse::<usize>().map_err(|e| Error::Parse(format!("bad integer `{s}` in `{line}`: {e}")))
            };
            if let Some(v) = line.strip_prefix("n=") {
                n = Some(parse_usize(v)?);
            } else if let Some(v) = line.strip_prefix("k=") {
                k = Some(parse_usize(v)?);
            } else {
                edges.push(line.split(',').map(parse_usize).collect::<Result<Vec<_>>>()?);
            }
        }
        let n = n.ok_or_else(|| Error::Parse("missing `n=` header".into()))?;
        let k = k.ok_or_else(|| Error::Parse("missing `k=` header".into()))?;
        Self::new(n, k, edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn edges(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    pub fn contains(&self, e: &[usize]) -> bool {
        self.edges.contains(e)
    }

    /// The same hypergraph with every vertex `v` renamed to `perm[v - 1]`.
    pub fn relabel(&self, perm: &[usize]) -> GeneralHypergraph {
        let edges = self.edges.iter().map(|e| e.iter().map(|&v| perm[v - 1]).sorted_unstable().collect()).collect();
        GeneralHypergraph { n: self.n, k: self.k, edges }
    }
}

/// `x << y`: for every `(k-1)`-subset `S` of `V - {x, y}`, `S + x` an edge
/// implies `S + y` an edge.
pub fn replaceable_leq(g: &GeneralHypergraph, x: usize, y: usize, limits: &Limits) -> Result<bool> {
    for v in [x, y] {
        if v == 0 || v > g.n {
            return Err(Error::VertexOutOfRange { index: v, n: g.n });
        }
    }
    if x == y {
        return Err(Error::InvalidEdge(format!("replaceability needs distinct vertices, got {x} twice")));
    }
    let subsets = binomial(g.n as i64 - 2, g.k as i64 - 1)?.value();
    if subsets > limits.subset_cap {
        return Err(Error::CapExceeded { what: "replaceability subsets", needed: subsets, cap: limits.subset_cap });
    }
    // Only sets S with S + x an edge matter, i.e. edges through x avoiding y.
    let holds = g.edges.iter().filter(|e| e.contains(&x) && !e.contains(&y)).all(|e| {
        let swapped: Edge = e.iter().map(|&v| if v == x { y } else { v }).sorted_unstable().collect();
        g.edges.contains(&swapped)
    });
    Ok(holds)
}

/// Whether `x << y` or `y << x` for every pair of vertices.
pub fn check_total_replaceability(g: &GeneralHypergraph, limits: &Limits) -> Result<bool> {
    for x in 1..=g.n {
        for y in x + 1..=g.n {
            if !replaceable_leq(g, x, y, limits)? && !replaceable_leq(g, y, x, limits)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// One edge per line, comma-separated vertices.
pub fn format_edges(edges: &[Edge]) -> String {
    let mut out = String::new();
    for e in edges {
        let _ = writeln!(out, "{}", e.iter().join(","));
    }
    out
}
