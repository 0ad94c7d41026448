//! The `thresh` command line: spectra, edge lists, adjacency matrices,
//! exhaustive verification, family members and the quotient-simplicity scan.
//!
//! Everything runs through [`run`], which takes the argument list and two
//! writers so that tests can drive it without spawning a process. Data goes
//! to `out`, diagnostics to `err`.

use std::ffi::OsString;
use std::io::{self, Write};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use thresh_core::spectrum::{max_deviation, DEFAULT_MERGE_TOL};
use thresh_core::verify::{run_sweep, SweepConfig, SweepReport};
use thresh_core::{
    family_sequence, family_spectrum_symbolic, full_spectrum_closed, numeric_eigenvalues, parse_sequence,
    scan_quotient_simplicity, Family, Limits, ScanReport, Source, Spectrum, SpectrumPair, ThresholdHypergraph,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_DISAGREE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

/// Default closed-vs-numeric agreement tolerance.
pub const DEFAULT_NUMERIC_TOL: f64 = 1e-8;
/// Default gap below which the scan flags a quotient.
pub const DEFAULT_SCAN_TOL: f64 = 1e-9;
pub const DEFAULT_EDGE_CAP: u128 = 10_000_000;
pub const DEFAULT_BUDGET: u128 = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Text,
    Csv,
    /// JSON.
    Structured,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Config {
    pub oracle_edge_cap: u128,
    pub merge_tol: f64,
    pub numeric_tol: f64,
    pub output_format: OutputFormat,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            oracle_edge_cap: DEFAULT_EDGE_CAP,
            merge_tol: DEFAULT_MERGE_TOL,
            numeric_tol: DEFAULT_NUMERIC_TOL,
            output_format: OutputFormat::Text,
        }
    }
}

impl Config {
    pub fn validate(&self) -> Result<(), CliError> {
        let positive = |x: f64| x.is_finite() && x > 0.0;
        if !positive(self.merge_tol) || !positive(self.numeric_tol) {
            return Err(CliError::Usage("tolerances must be positive and finite".into()));
        }
        if self.oracle_edge_cap == 0 {
            return Err(CliError::Usage("edge cap must be positive".into()));
        }
        Ok(())
    }

    fn limits(&self) -> Limits {
        Limits { edge_cap: self.oracle_edge_cap, subset_cap: self.oracle_edge_cap }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] thresh_core::Error),
    #[error("{0}")]
    Usage(String),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(thresh_core::Error::CapExceeded { what, .. })
                if *what == "verification sweep" || *what == "scan sequences" =>
            {
                EXIT_BUDGET
            }
            _ => EXIT_INPUT,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "thresh", version, about = "Spectra of k-uniform threshold hypergraphs")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,

    /// Numeric tolerance: closed-vs-numeric agreement for `spectrum` and
    /// `verify`, flagging gap for `scan`.
    #[arg(long, global = true)]
    pub tol: Option<f64>,

    /// Largest edge set the brute-force oracle may enumerate.
    #[arg(long, global = true, default_value_t = DEFAULT_EDGE_CAP)]
    pub edge_cap: u128,

    /// Absolute tolerance for merging equal closed-form eigenvalues.
    #[arg(long, global = true, default_value_t = DEFAULT_MERGE_TOL)]
    pub merge_tol: f64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form spectrum of a connected sequence.
    Spectrum {
        /// `k=K;b1,...,bn` or `C(a1,...,ar)_K`.
        sequence: String,
        /// Also eigensolve the full adjacency matrix and compare.
        #[arg(long)]
        verify: bool,
    },
    /// Edge list, one edge per line, lexicographic.
    Edges { sequence: String },
    /// Adjacency matrix of pair counts.
    Adjacency { sequence: String },
    /// Exhaustive invariant sweep over all sequences in range.
    Verify {
        #[arg(long)]
        n_max: usize,
        /// Comma-separated uniformities.
        #[arg(long, value_delimiter = ',', required = true)]
        k: Vec<usize>,
        /// Maximum number of sequences to visit.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
    },
    /// A member of one of the three few-eigenvalue families.
    Family {
        /// 1, 2 or 3.
        family: u8,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Position of the first 1 (family 2 only).
        #[arg(long)]
        j: Option<usize>,
    },
    /// Smallest gap between quotient eigenvalues for every connected sequence.
    Scan {
        #[arg(long)]
        n_max: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        k: Vec<usize>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
    },
}

/// JSON document written by `spectrum --format structured`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumDoc {
    pub n: usize,
    pub k: usize,
    pub sequence: String,
    pub short: String,
    pub pairs: Vec<SpectrumPair>,
    pub distinct_count: usize,
    pub merge_tol: f64,
    pub numeric_tol: f64,
    pub max_dev: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgesDoc {
    pub n: usize,
    pub k: usize,
    pub sequence: String,
    pub edges: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdjacencyDoc {
    pub n: usize,
    pub k: usize,
    pub sequence: String,
    pub matrix: Vec<Vec<u128>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilyDoc {
    pub family: u8,
    pub n: usize,
    pub k: usize,
    pub j: Option<usize>,
    pub short: String,
    pub sequence: String,
    pub pairs: Vec<SpectrumPair>,
    pub distinct_count: usize,
    pub distinct_bound: usize,
}

/// `%.12g`-style formatting: 12 significant digits, trailing zeros dropped.
pub fn format_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}"))
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa), exp.abs())
    }
}

fn trim_zeros(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

/// Tolerance in C style, e.g. `1e-08`.
fn format_tol(x: f64) -> String {
    let sci = format!("{x:e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    let sign = if exp < 0 { '-' } else { '+' };
    format!("{mantissa}e{sign}{:02}", exp.abs())
}

fn source_label(sources: &[Source]) -> String {
    sources.iter().map(Source::to_string).collect::<Vec<_>>().join("+")
}

fn write_pairs(out: &mut dyn Write, pairs: &[SpectrumPair], format: OutputFormat) -> Result<(), CliError> {
    match format {
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["eigenvalue", "multiplicity", "source"])?;
            for p in pairs {
                w.write_record([format_sig(p.eigenvalue), p.multiplicity.to_string(), source_label(&p.sources)])?;
            }
            w.flush()?;
        }
        _ => {
            for p in pairs {
                writeln!(
                    out,
                    "lambda={} mult={} source={}",
                    format_sig(p.eigenvalue),
                    p.multiplicity,
                    source_label(&p.sources)
                )?;
            }
        }
    }
    Ok(())
}

fn write_json<T: Serialize>(out: &mut dyn Write, doc: &T) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut *out, doc)?;
    writeln!(out)?;
    Ok(())
}

fn hypergraph(text: &str) -> Result<ThresholdHypergraph, CliError> {
    Ok(ThresholdHypergraph::new(parse_sequence(text)?))
}

fn cmd_spectrum(
    text: &str,
    verify: bool,
    cfg: &Config,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, CliError> {
    let h = hypergraph(text)?;
    let spectrum: Spectrum = full_spectrum_closed(&h, cfg.merge_tol)?;
    let max_dev = if verify {
        let numeric = numeric_eigenvalues(&h)?;
        Some(max_deviation(&spectrum.expanded(), &numeric))
    } else {
        None
    };
    let agreed = max_dev.is_none_or(|d| d < cfg.numeric_tol);

    match cfg.output_format {
        OutputFormat::Structured => {
            let doc = SpectrumDoc {
                n: h.n(),
                k: h.k(),
                sequence: h.sequence().to_string(),
                short: h.short().to_string(),
                pairs: spectrum.pairs().to_vec(),
                distinct_count: spectrum.distinct_count(),
                merge_tol: cfg.merge_tol,
                numeric_tol: cfg.numeric_tol,
                max_dev,
            };
            write_json(out, &doc)?;
        }
        format => {
            write_pairs(out, spectrum.pairs(), format)?;
            if let Some(d) = max_dev {
                let tol = format_tol(cfg.numeric_tol);
                let line = if agreed { format!("max_dev < {tol}") } else { format!("max_dev >= {tol}") };
                match format {
                    OutputFormat::Text => writeln!(out, "{line}")?,
                    _ => writeln!(err, "{line}")?,
                }
                writeln!(err, "max_dev = {}", format_sig(d))?;
            }
        }
    }
    Ok(if agreed { EXIT_OK } else { EXIT_DISAGREE })
}

fn cmd_edges(text: &str, cfg: &Config, out: &mut dyn Write) -> Result<i32, CliError> {
    let h = hypergraph(text)?;
    let edges = h.enumerate_edges(&cfg.limits())?;
    match cfg.output_format {
        OutputFormat::Structured => {
            write_json(out, &EdgesDoc { n: h.n(), k: h.k(), sequence: h.sequence().to_string(), edges })?;
        }
        _ => out.write_all(thresh_core::format_edges(&edges).as_bytes())?,
    }
    Ok(EXIT_OK)
}

fn cmd_adjacency(text: &str, cfg: &Config, out: &mut dyn Write) -> Result<i32, CliError> {
    let h = hypergraph(text)?;
    let a = h.adjacency_closed_form()?;
    match cfg.output_format {
        OutputFormat::Structured => {
            let matrix = (1..=a.n()).map(|i| a.row(i).iter().map(|c| c.value()).collect()).collect();
            write_json(out, &AdjacencyDoc { n: h.n(), k: h.k(), sequence: h.sequence().to_string(), matrix })?;
        }
        _ => out.write_all(a.to_csv().as_bytes())?,
    }
    Ok(EXIT_OK)
}

fn cmd_verify(n_max: usize, k_set: &[usize], budget: u128, cfg: &Config, out: &mut dyn Write) -> Result<i32, CliError> {
    if k_set.iter().any(|&k| k < 2) {
        return Err(CliError::Usage("every k must be at least 2".into()));
    }
    let sweep = SweepConfig {
        limits: cfg.limits(),
        budget,
        spectrum_tol: cfg.numeric_tol,
        merge_tol: cfg.merge_tol,
        ..SweepConfig::default()
    };
    let report: SweepReport = run_sweep(n_max, k_set, &sweep)?;
    match cfg.output_format {
        OutputFormat::Structured => write_json(out, &report)?,
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["check", "passed", "failed", "first_failure"])?;
            for c in &report.checks {
                w.write_record([
                    c.name.as_str(),
                    &c.passed.to_string(),
                    &c.failed.to_string(),
                    c.first_failure.as_deref().unwrap_or(""),
                ])?;
            }
            w.flush()?;
        }
        OutputFormat::Text => {
            writeln!(out, "sequences: {}", report.sequences)?;
            for c in &report.checks {
                writeln!(out, "{}: passed={} failed={}", c.name, c.passed, c.failed)?;
                if let Some(f) = &c.first_failure {
                    writeln!(out, "  first failure: {f}")?;
                }
            }
            writeln!(out, "max spectrum deviation: {}", format_sig(report.max_spectrum_deviation))?;
            writeln!(out, "{}", if report.all_passed() { "all checks passed" } else { "some checks failed" })?;
        }
    }
    Ok(if report.all_passed() { EXIT_OK } else { EXIT_INPUT })
}

fn cmd_family(
    number: u8,
    n: usize,
    k: usize,
    j: Option<usize>,
    cfg: &Config,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let family = Family::from_number(number)?;
    let short = family_sequence(family, n, k, j)?;
    let spectrum = family_spectrum_symbolic(family, n, k, j)?;
    match cfg.output_format {
        OutputFormat::Structured => {
            let doc = FamilyDoc {
                family: number,
                n,
                k,
                j,
                short: short.to_string(),
                sequence: short.to_binary().to_string(),
                pairs: spectrum.pairs().to_vec(),
                distinct_count: spectrum.distinct_count(),
                distinct_bound: family.distinct_bound(),
            };
            write_json(out, &doc)?;
        }
        OutputFormat::Csv => write_pairs(out, spectrum.pairs(), OutputFormat::Csv)?,
        OutputFormat::Text => {
            writeln!(out, "{short} = {}", short.to_binary())?;
            write_pairs(out, spectrum.pairs(), OutputFormat::Text)?;
            writeln!(out, "distinct={} bound={}", spectrum.distinct_count(), family.distinct_bound())?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_scan(
    n_max: usize,
    k_set: &[usize],
    budget: u128,
    tol: f64,
    cfg: &Config,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, CliError> {
    if k_set.iter().any(|&k| k < 2) {
        return Err(CliError::Usage("every k must be at least 2".into()));
    }
    let report: ScanReport = scan_quotient_simplicity(n_max, k_set, tol, budget)?;
    match cfg.output_format {
        OutputFormat::Structured => write_json(out, &report)?,
        _ => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["sequence", "n", "k", "r", "min_quotient_gap", "flagged"])?;
            for row in &report.rows {
                let gap = row.min_quotient_gap.map_or_else(|| "inf".to_string(), format_sig);
                w.write_record([
                    row.sequence.clone(),
                    row.n.to_string(),
                    row.k.to_string(),
                    row.r.to_string(),
                    gap,
                    row.flagged.to_string(),
                ])?;
            }
            w.flush()?;
        }
    }
    let min_gap = report.min_gap().map_or_else(|| "inf".to_string(), format_sig);
    writeln!(
        err,
        "scanned {} sequences, {} flagged at tol {}, smallest gap {min_gap}",
        report.rows.len(),
        report.flagged_count(),
        format_tol(tol)
    )?;
    Ok(EXIT_OK)
}

fn dispatch(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    let cfg = Config {
        oracle_edge_cap: cli.edge_cap,
        merge_tol: cli.merge_tol,
        numeric_tol: cli.tol.unwrap_or(DEFAULT_NUMERIC_TOL),
        output_format: cli.format,
    };
    cfg.validate()?;
    match cli.command {
        Command::Spectrum { sequence, verify } => cmd_spectrum(&sequence, verify, &cfg, out, err),
        Command::Edges { sequence } => cmd_edges(&sequence, &cfg, out),
        Command::Adjacency { sequence } => cmd_adjacency(&sequence, &cfg, out),
        Command::Verify { n_max, k, budget } => cmd_verify(n_max, &k, budget, &cfg, out),
        Command::Family { family, n, k, j } => cmd_family(family, n, k, j, &cfg, out),
        Command::Scan { n_max, k, budget } => {
            let tol = cli.tol.unwrap_or(DEFAULT_SCAN_TOL);
            cmd_scan(n_max, &k, budget, tol, &cfg, out, err)
        }
    }
}

/// Parses `args` (including the program name) and runs the command. Returns
/// the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let to_out = !e.use_stderr();
            let text = e.render().to_string();
            let _ = if to_out { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return if to_out { EXIT_OK } else { EXIT_INPUT };
        }
    };
    match dispatch(cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(format_sig(7.684_658_438_216_09), "7.68465843822");
        assert_eq!(format_sig(-1.0), "-1");
        assert_eq!(format_sig(0.0), "0");
        assert_eq!(format_sig(-0.0), "0");
        assert_eq!(format_sig(1e-15), "1e-15");
        assert_eq!(format_sig(123456789012345.0), "1.23456789012e+14");
        assert_eq!(format_sig(0.000123), "0.000123");
        assert_eq!(format_sig(f64::INFINITY), "inf");
    }

    #[test]
    fn tolerance_text() {
        assert_eq!(format_tol(1e-8), "1e-08");
        assert_eq!(format_tol(5e-3), "5e-03");
        assert_eq!(format_tol(1e12), "1e+12");
    }

    #[test]
    fn config_validation() {
        assert!(Config::default().validate().is_ok());
        assert!(Config { numeric_tol: 0.0, ..Config::default() }.validate().is_err());
        assert!(Config { merge_tol: f64::NAN, ..Config::default() }.validate().is_err());
        assert!(Config { oracle_edge_cap: 0, ..Config::default() }.validate().is_err());
    }
}
