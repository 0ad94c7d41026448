//! Exhaustive invariant sweeps over every valid sequence in a size range.
//!
//! Each check is evaluated per sequence (in parallel within an `(n, k)`
//! group), except uniqueness which compares all adjacency matrices of a group.

use std::collections::HashMap;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{check_total_replaceability, GeneralHypergraph, Limits, ThresholdHypergraph};
use crate::sequences::{enumerate_sequences, sequence_count, BinarySequence};
use crate::spectrum::{block_eigenvalues, full_spectrum_closed, max_deviation, numeric_eigenvalues, DEFAULT_MERGE_TOL};

pub const ORACLE_EQUIVALENCE: &str = "oracle-equivalence";
pub const EDGE_COUNT: &str = "edge-count";
pub const COLUMN_EQUALITY: &str = "column-equality";
pub const SPECTRUM_AGREEMENT: &str = "spectrum-agreement";
pub const TWO_ROUTE: &str = "two-route";
pub const IDENTITIES: &str = "trace-frobenius";
pub const DISTINCT_BOUND: &str = "distinct-bound";
pub const UNIQUENESS: &str = "uniqueness";
pub const REPLACEABILITY: &str = "replaceability-totality";
pub const COMPLEMENT: &str = "complement-partition";
pub const DELETE_VERTEX: &str = "delete-vertex";

const CHECK_ORDER: [&str; 11] = [
    ORACLE_EQUIVALENCE,
    EDGE_COUNT,
    COLUMN_EQUALITY,
    SPECTRUM_AGREEMENT,
    TWO_ROUTE,
    IDENTITIES,
    DISTINCT_BOUND,
    UNIQUENESS,
    REPLACEABILITY,
    COMPLEMENT,
    DELETE_VERTEX,
];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub limits: Limits,
    /// Max sequences (connected or not) over the whole sweep.
    pub budget: u128,
    /// Closed vs numeric spectrum agreement, absolute.
    pub spectrum_tol: f64,
    pub trace_tol: f64,
    pub frobenius_rel_tol: f64,
    pub merge_tol: f64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            limits: Limits::default(),
            budget: 1 << 20,
            spectrum_tol: 1e-8,
            trace_tol: 1e-8,
            frobenius_rel_tol: 1e-6,
            merge_tol: DEFAULT_MERGE_TOL,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: usize,
    pub failed: usize,
    pub first_failure: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub sequences: usize,
    pub checks: Vec<CheckOutcome>,
    /// Largest closed-vs-numeric deviation seen.
    pub max_spectrum_deviation: f64,
}

impl SweepReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.failed == 0)
    }

    pub fn check(&self, name: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.name == name)
    }
}

struct Tally {
    outcomes: HashMap<&'static str, CheckOutcome>,
}

impl Tally {
    fn new() -> Self {
        let outcomes = CHECK_ORDER
            .iter()
            .map(|&name| (name, CheckOutcome { name: name.to_string(), passed: 0, failed: 0, first_failure: None }))
            .collect();
        Tally { outcomes }
    }

    fn record(&mut self, name: &'static str, result: std::result::Result<(), String>) {
        let o = self.outcomes.get_mut(name).expect("known check");
        match result {
            Ok(()) => o.passed += 1,
            Err(msg) => {
                o.failed += 1;
                o.first_failure.get_or_insert(msg);
            }
        }
    }

    fn into_checks(mut self) -> Vec<CheckOutcome> {
        CHECK_ORDER.iter().map(|n| self.outcomes.remove(n).expect("known check")).collect()
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

struct SequenceResult {
    results: Vec<(&'static str, std::result::Result<(), String>)>,
    deviation: f64,
}

fn check_sequence(seq: &BinarySequence, cfg: &SweepConfig) -> Result<SequenceResult> {
    let h = ThresholdHypergraph::new(seq.clone());
    let (n, k) = (h.n(), h.k());
    let mut results = Vec::new();
    let mut deviation: f64 = 0.0;

    let edges = h.enumerate_edges(&cfg.limits)?;
    let closed = h.adjacency_closed_form()?;
    let brute = h.adjacency_bruteforce(&cfg.limits)?;
    results.push((ORACLE_EQUIVALENCE, ensure(closed == brute, || format!("{seq}: closed-form adjacency differs"))));
    let count = h.edge_count()?;
    results.push((
        EDGE_COUNT,
        ensure(count.value() == edges.len() as u128, || format!("{seq}: {} edges, formula {count}", edges.len())),
    ));

    let ss = h.short();
    let columns_ok = (1..=ss.r()).all(|t| {
        let (first, last) = ss.block_range(t);
        (first..=last)
            .tuple_combinations()
            .all(|(i, j)| (1..=n).filter(|&s| s != i && s != j).all(|s| closed.entry(s, i) == closed.entry(s, j)))
    });
    results.push((COLUMN_EQUALITY, ensure(columns_ok, || format!("{seq}: same-block columns differ"))));

    if h.is_connected() {
        let spectrum = full_spectrum_closed(&h, cfg.merge_tol)?;
        let numeric = numeric_eigenvalues(&h)?;
        deviation = max_deviation(&spectrum.expanded(), &numeric);
        results.push((
            SPECTRUM_AGREEMENT,
            ensure(deviation <= cfg.spectrum_tol, || format!("{seq}: closed vs numeric deviate by {deviation:e}")),
        ));

        // formula route (checked internally against a_{s,s+1}) against the brute-force matrix
        let two_route = block_eigenvalues(&ss).map_err(|e| e.to_string()).and_then(|blocks| {
            for b in blocks {
                let s = ss.prefix(b.block - 1) + 1;
                if b.pair_count != brute.entry(s, s + 1) {
                    return Err(format!(
                        "{seq}: block {} gives {}, brute force {}",
                        b.block,
                        b.pair_count,
                        brute.entry(s, s + 1)
                    ));
                }
            }
            Ok(())
        });
        results.push((TWO_ROUTE, two_route));

        let ok = spectrum.check_identities(&closed, cfg.trace_tol, cfg.frobenius_rel_tol)?;
        results.push((IDENTITIES, ensure(ok, || format!("{seq}: trace or Frobenius identity fails"))));

        let distinct = spectrum.distinct_count();
        results.push((
            DISTINCT_BOUND,
            ensure(distinct + k <= n + 2, || format!("{seq}: {distinct} distinct > n-k+2 = {}", n + 2 - k)),
        ));
    }

    let general = GeneralHypergraph::new(n, k, edges.clone())?;
    let total = check_total_replaceability(&general, &cfg.limits)?;
    results.push((REPLACEABILITY, ensure(total, || format!("{seq}: << is not total"))));

    let comp_edges = ThresholdHypergraph::new(seq.complement()).enumerate_edges(&cfg.limits)?;
    let disjoint = comp_edges.iter().all(|e| edges.binary_search(e).is_err());
    let all = crate::combinatorics::binomial(n as i64, k as i64)?.value();
    results.push((
        COMPLEMENT,
        ensure(disjoint && (edges.len() + comp_edges.len()) as u128 == all, || {
            format!("{seq}: complement does not partition the k-subsets")
        }),
    ));

    if n >= k {
        let mut ok = true;
        for i in 1..=n {
            let reduced = seq.delete_vertex(i)?;
            let got = ThresholdHypergraph::new(reduced).enumerate_edges(&cfg.limits)?;
            let relabel = |v: usize| if v > i { v - 1 } else { v };
            let expect: Vec<Vec<usize>> =
                edges.iter().filter(|e| !e.contains(&i)).map(|e| e.iter().map(|&v| relabel(v)).collect()).collect();
            if got != expect {
                ok = false;
                break;
            }
        }
        results.push((DELETE_VERTEX, ensure(ok, || format!("{seq}: vertex deletion disagrees with induced edges"))));
    }

    Ok(SequenceResult { results, deviation })
}

/// Total sequences a sweep over `k_set`, `k <= n <= n_max` would touch.
pub fn sweep_size(n_max: usize, k_set: &[usize]) -> u128 {
    k_set.iter().flat_map(|&k| (k..=n_max).map(move |n| sequence_count(n, k, false))).fold(0u128, u128::saturating_add)
}

/// Runs every check over all valid sequences with `k` in `k_set` and `k <= n <= n_max`.
pub fn run_sweep(n_max: usize, k_set: &[usize], cfg: &SweepConfig) -> Result<SweepReport> {
    let size = sweep_size(n_max, k_set);
    if size > cfg.budget {
        return Err(Error::CapExceeded { what: "verification sweep", needed: size, cap: cfg.budget });
    }
    let mut tally = Tally::new();
    let mut sequences = 0;
    let mut max_dev: f64 = 0.0;
    for &k in k_set {
        for n in k..=n_max {
            let group = enumerate_sequences(n, k, false);
            sequences += group.len();
            let per_seq = group.par_iter().map(|s| check_sequence(s, cfg)).collect::<Result<Vec<_>>>()?;
            for r in per_seq {
                max_dev = max_dev.max(r.deviation);
                for (name, res) in r.results {
                    tally.record(name, res);
                }
            }

            let mut seen: HashMap<_, &BinarySequence> = HashMap::new();
            for s in &group {
                let a = ThresholdHypergraph::new(s.clone()).adjacency_closed_form()?;
                let res = match seen.insert(a, s) {
                    Some(other) => Err(format!("{s} and {other} share an adjacency matrix")),
                    None => Ok(()),
                };
                tally.record(UNIQUENESS, res);
            }
        }
    }
    Ok(SweepReport { sequences, checks: tally.into_checks(), max_spectrum_deviation: max_dev })
}
