//! One line per acceptance criterion, at the stated tolerances. Runs without
//! the libtest harness so the lines always reach the console.
//!
//! A criterion can end in one of three states. `PASS` and `FAIL` are what they
//! say. `FAIL (recorded)` is a failure whose cause is understood and written
//! down, reported with the numbers that show it. Only unexplained failures
//! make the process exit non-zero.

use std::time::{Duration, Instant};

use itertools::Itertools;
use thresh_cli::run;
use thresh_core::spectrum::{full_spectrum_closed, DEFAULT_MERGE_TOL};
use thresh_core::verify::{self, run_sweep, SweepConfig};
use thresh_core::{
    check_total_replaceability, enumerate_sequences, family_sequence, family_spectrum_symbolic, parse_binary,
    quotient_matrix, scan_quotient_simplicity, Family, GeneralHypergraph, Limits, ThresholdHypergraph,
};

type Outcome = Result<String, String>;

/// Marks an `Err` whose cause is a known defect in the reference data.
const RECORDED: &str = "[recorded] ";

fn thresh(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("thresh").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn lambdas(text: &str) -> Vec<(f64, usize)> {
    text.lines()
        .filter_map(|l| l.strip_prefix("lambda="))
        .map(|l| {
            let mut parts = l.split_whitespace();
            let v = parts.next().unwrap().parse().unwrap();
            let m = parts.next().unwrap().trim_start_matches("mult=").parse().unwrap();
            (v, m)
        })
        .collect()
}

fn expect(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Runs `spectrum --verify` through the CLI; returns the printed pairs.
fn cli_spectrum(seq: &str) -> Result<(Vec<(f64, usize)>, Duration), String> {
    let start = Instant::now();
    let (code, out, err) = thresh(&["spectrum", seq, "--verify"]);
    let elapsed = start.elapsed();
    expect(code == 0, || format!("exit {code}: {err}"))?;
    expect(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok((lambdas(&out), elapsed))
}

/// Largest deviation from the reference, or an error if multiplicities or counts differ.
fn reference_deviation(got: &[(f64, usize)], reference: &[(f64, usize)]) -> Result<f64, String> {
    expect(got.len() == reference.len(), || format!("got {got:?}, expected {reference:?}"))?;
    let mut dev: f64 = 0.0;
    for ((v, m), (ev, em)) in got.iter().zip(reference) {
        expect(m == em, || format!("got {got:?}, expected {reference:?}"))?;
        dev = dev.max((v - ev).abs());
    }
    Ok(dev)
}

fn cli_spectrum_matches(seq: &str, reference: &[(f64, usize)], tol: f64) -> Result<Duration, String> {
    let (got, elapsed) = cli_spectrum(seq)?;
    let dev = reference_deviation(&got, reference)?;
    expect(dev <= tol, || format!("got {got:?}, expected {reference:?} within {tol}"))?;
    Ok(elapsed)
}

fn criterion_1() -> Outcome {
    let t = cli_spectrum_matches("k=3;0,0,0,0,1", &[(7.68, 1), (-1.0, 3), (-4.68, 1)], 5e-3)?;
    let h = ThresholdHypergraph::new(parse_binary("k=3;0,0,0,0,1").map_err(|e| e.to_string())?);
    let s = full_spectrum_closed(&h, DEFAULT_MERGE_TOL).map_err(|e| e.to_string())?;
    let r = 153f64.sqrt();
    let (hi, lo) = (s.pairs()[0].eigenvalue, s.pairs()[2].eigenvalue);
    let dev = ((hi - (3.0 + r) / 2.0).abs()).max((lo - (3.0 - r) / 2.0).abs());
    expect(dev <= 1e-10, || format!("(3±√153)/2 off by {dev:e}"))?;
    Ok(format!("rounded values within 5e-3, (3±√153)/2 within {dev:.1e}, {t:?}"))
}

fn criterion_2() -> Outcome {
    let (got, t) = cli_spectrum("k=3;0,0,0,1,1")?;
    let h = ThresholdHypergraph::new(parse_binary("k=3;0,0,0,1,1").map_err(|e| e.to_string())?);
    let poly = quotient_matrix(&h).and_then(|q| q.characteristic_polynomial()).map_err(|e| e.to_string())?;
    expect(poly == [1, -7, -42], || format!("characteristic polynomial {poly:?}"))?;

    // roots of x^2 - 7x - 42 plus the block values, to full precision
    let r = 217f64.sqrt();
    let exact = [((7.0 + r) / 2.0, 1), (-2.0, 2), (-3.0, 1), ((7.0 - r) / 2.0, 1)];
    let s = full_spectrum_closed(&h, DEFAULT_MERGE_TOL).map_err(|e| e.to_string())?;
    let internal: Vec<(f64, usize)> = s.pairs().iter().map(|p| (p.eigenvalue, p.multiplicity)).collect();
    let exact_dev = reference_deviation(&internal, &exact)?;
    expect(exact_dev <= 1e-10, || format!("(7±√217)/2 off by {exact_dev:e}"))?;

    let printed = [(10.86, 1), (-2.0, 2), (-3.0, 1), (-3.86, 1)];
    let dev = reference_deviation(&got, &printed)?;
    let summary = format!("polynomial x^2 - 7x - 42 exact, (7±√217)/2 within {exact_dev:.1e}, {t:?}");
    if dev <= 5e-3 {
        Ok(format!("values within 5e-3, {summary}"))
    } else {
        Err(format!(
            "{RECORDED}deviation {dev:.2e} > 5e-3 from the printed 10.86 and -3.86, which truncate \
             (7±√217)/2 = {:.5}, {:.5} instead of rounding; {summary}",
            exact[0].0, exact[3].0
        ))
    }
}

fn criterion_3() -> Outcome {
    let t = cli_spectrum_matches("k=3;0,0,1,0,1", &[(8.71, 1), (-0.49, 1), (-2.0, 2), (-4.22, 1)], 5e-3)?;
    Ok(format!("values within 5e-3, {t:?}"))
}

fn criterion_4() -> Outcome {
    let (code, out, err) = thresh(&["edges", "k=4;0,0,0,1,1,0"]);
    expect(code == 0, || err)?;
    expect(out == "1,2,3,4\n1,2,3,5\n1,2,4,5\n1,3,4,5\n2,3,4,5\n", || format!("got {out:?}"))?;
    Ok("5 edges, lexicographic".into())
}

fn criterion_5() -> Outcome {
    for (bits, short) in [
        ("k=3;0,0,0,0,0,1,1,0,1,1,1,0,0,0,1", "C(5,2,1,3,3,1)_3"),
        ("k=4;0,0,0,1,1,1,1,0,1,1,0,0,0,1", "C(7,1,2,3,1)_4"),
    ] {
        let got = parse_binary(bits).map_err(|e| e.to_string())?.to_short().to_string();
        expect(got == short, || format!("{bits} gave {got}, expected {short}"))?;
    }
    Ok("C(5,2,1,3,3,1)_3 and C(7,1,2,3,1)_4".into())
}

struct Sweep {
    report: verify::SweepReport,
    elapsed: Duration,
}

fn sweep() -> Result<Sweep, String> {
    let start = Instant::now();
    let report = run_sweep(8, &[2, 3, 4, 5], &SweepConfig::default()).map_err(|e| e.to_string())?;
    Ok(Sweep { report, elapsed: start.elapsed() })
}

fn check_passed(s: &Sweep, name: &str) -> Result<usize, String> {
    let c = s.report.check(name).ok_or_else(|| format!("{name} missing"))?;
    expect(c.failed == 0, || format!("{name}: {} failures, first: {:?}", c.failed, c.first_failure))?;
    expect(c.passed > 0, || format!("{name} never ran"))?;
    Ok(c.passed)
}

fn criterion_6(s: &Sweep) -> Outcome {
    let eq = check_passed(s, verify::ORACLE_EQUIVALENCE)?;
    let spec = check_passed(s, verify::SPECTRUM_AGREEMENT)?;
    let dev = s.report.max_spectrum_deviation;
    expect(dev <= 1e-8, || format!("max deviation {dev:e}"))?;
    expect(s.elapsed < Duration::from_secs(300), || format!("took {:?}", s.elapsed))?;
    Ok(format!("{eq} matrices identical, {spec} connected spectra agree (max dev {dev:.1e}), {:?}", s.elapsed))
}

fn criterion_7(s: &Sweep) -> Outcome {
    let n = check_passed(s, verify::TWO_ROUTE)?;
    Ok(format!("{n} connected sequences, every block with a_j >= 2"))
}

fn criterion_8(s: &Sweep) -> Outcome {
    let n = check_passed(s, verify::UNIQUENESS)?;
    Ok(format!("{n} sequences, no shared adjacency matrix within any (n, k)"))
}

fn criterion_9() -> Outcome {
    let lim = Limits::default();
    let start = Instant::now();
    let report = run_sweep(7, &[2, 3, 4, 5, 6, 7], &SweepConfig::default()).map_err(|e| e.to_string())?;
    let c = report.check(verify::REPLACEABILITY).ok_or("missing check")?;
    expect(c.failed == 0, || format!("{:?}", c.first_failure))?;

    let fixture = GeneralHypergraph::parse_edge_list(include_str!("../../core/data/counterexample_n7_k4.txt"))
        .map_err(|e| e.to_string())?;
    expect(check_total_replaceability(&fixture, &lim).map_err(|e| e.to_string())?, || "fixture not total".into())?;

    let sequences = enumerate_sequences(7, 4, false);
    expect(sequences.len() == 16, || format!("{} sequences", sequences.len()))?;
    let perms: Vec<Vec<usize>> = (1..=7).permutations(7).collect();
    let mut tried = 0usize;
    for seq in &sequences {
        let g = ThresholdHypergraph::new(seq.clone()).to_general(&lim).map_err(|e| e.to_string())?;
        for p in &perms {
            tried += 1;
            expect(g.relabel(p).edges() != fixture.edges(), || format!("{seq} relabelled by {p:?} matches"))?;
        }
    }
    Ok(format!(
        "total on {} hypergraphs with n <= 7 and on the fixture; {tried} relabelled sequences miss it, {:?}",
        c.passed,
        start.elapsed()
    ))
}

fn criterion_10(s: &Sweep) -> Outcome {
    let n = check_passed(s, verify::DISTINCT_BOUND)?;
    let mut members = 0;
    for nn in 2..=12 {
        for k in 2..=nn {
            let mut cases = vec![(Family::LastVertexDominant, None)];
            cases.extend((k..nn).map(|j| (Family::TrailingOnes, Some(j))));
            if nn >= k + 2 {
                cases.push((Family::TwoPseudodominants, None));
            }
            for (family, j) in cases {
                family_sequence(family, nn, k, j).map_err(|e| e.to_string())?;
                let d = family_spectrum_symbolic(family, nn, k, j).map_err(|e| e.to_string())?.distinct_count();
                expect(d <= family.distinct_bound(), || format!("family {family} n={nn} k={k} j={j:?}: {d} distinct"))?;
                members += 1;
            }
        }
    }
    Ok(format!("{n} sweep spectra within n-k+2; {members} family members within 3/4/5"))
}

fn criterion_11() -> Outcome {
    let report = scan_quotient_simplicity(7, &[2], 1e-9, 1 << 20).map_err(|e| e.to_string())?;
    expect(report.flagged_count() == 0, || format!("{} flagged", report.flagged_count()))?;
    let gap = report.min_gap().unwrap_or(f64::INFINITY);
    Ok(format!("{} graphs, none flagged, smallest gap {gap:.3}", report.rows.len()))
}

fn criterion_12(s: &Sweep) -> Outcome {
    let n = check_passed(s, verify::IDENTITIES)?;
    let mut fam = 0;
    for nn in 2..=12 {
        for k in 2..=nn {
            let h = ThresholdHypergraph::new(
                family_sequence(Family::LastVertexDominant, nn, k, None).map_err(|e| e.to_string())?.to_binary(),
            );
            let spectrum =
                family_spectrum_symbolic(Family::LastVertexDominant, nn, k, None).map_err(|e| e.to_string())?;
            let a = h.adjacency_closed_form().map_err(|e| e.to_string())?;
            let ok = spectrum.check_identities(&a, 1e-8, 1e-6).map_err(|e| e.to_string())?;
            expect(ok, || format!("family 1 n={nn} k={k}"))?;
            fam += 1;
        }
    }
    Ok(format!("trace within 1e-8 and Frobenius within 1e-6 relative on {n} sweep spectra and {fam} family spectra"))
}

fn main() {
    let sweep = sweep();
    let with_sweep = |f: fn(&Sweep) -> Outcome| -> Outcome {
        match &sweep {
            Ok(s) => f(s),
            Err(e) => Err(format!("sweep failed: {e}")),
        }
    };
    let results: Vec<(&str, Outcome)> = vec![
        ("spectrum of C(4,1)_3", criterion_1()),
        ("spectrum of C(3,2)_3", criterion_2()),
        ("spectrum of C(3,1,1)_3", criterion_3()),
        ("edge list of (k=4; 0,0,0,1,1,0)", criterion_4()),
        ("short sequences", criterion_5()),
        ("oracle equivalence, n <= 8, k in 2..=5", with_sweep(criterion_6)),
        ("two-route block eigenvalues", with_sweep(criterion_7)),
        ("sequence to adjacency is injective", with_sweep(criterion_8)),
        ("replaceability totality and counterexample", criterion_9()),
        ("distinct-eigenvalue bounds", with_sweep(criterion_10)),
        ("graph quotients have simple eigenvalues", criterion_11()),
        ("trace and Frobenius identities", with_sweep(criterion_12)),
    ];

    let mut failed = 0;
    let mut recorded = 0;
    for (i, (name, outcome)) in results.iter().enumerate() {
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => match why.strip_prefix(RECORDED) {
                Some(why) => {
                    recorded += 1;
                    println!("FAIL {:>2} {name} (recorded): {why}", i + 1);
                }
                None => {
                    failed += 1;
                    println!("FAIL {:>2} {name}: {why}", i + 1);
                }
            },
        }
    }
    println!(
        "acceptance: {} passed, {recorded} failed with a recorded cause, {failed} failed",
        results.len() - failed - recorded
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
