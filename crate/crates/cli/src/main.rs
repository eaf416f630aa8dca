//! `gorlat`: analyze lattice simplices, build catalogs, and check the
//! classification theorems from the command line.
//!
//! Exit codes: 0 success, 1 discrepancy, 2 usage or parse error,
//! 3 degenerate input, 4 capacity exceeded.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use gorlat::exact;
use gorlat::families::{self, FamilyInstance};
use gorlat::gorenstein;
use gorlat::oracle::{self, Classifier};
use gorlat::serial::{self, decimal, decimal_option, decimal_rows, decimal_vec};
use gorlat::serial::{CatalogLine, CertificateJson, GroupJson, MatrixJson, SimplexJson};
use gorlat::simplex;

#[derive(Parser)]
#[command(name = "gorlat", version, about = "Exact lattice-simplex toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Volume, Hermite form, group, pyramid apex and Gorenstein certificate.
    Analyze {
        /// Simplex JSON (`{"dim", "vertices"}`), or `-` for stdin.
        input: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Analyze every simplex of a given dimension and volume.
    Classify {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        volume: u64,
        /// Keep one simplex per equivalence class.
        #[arg(long)]
        dedupe: bool,
        /// JSON-lines catalog destination.
        #[arg(long)]
        out: PathBuf,
        /// Optional CSV summary destination.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Compare a classification theorem against exhaustive catalogs.
    Verify {
        #[arg(long, value_enum)]
        theorem: Theorem,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        q: Option<u64>,
        #[arg(long, default_value_t = 6)]
        dmax: usize,
        /// Largest number of nonstandard rows for the power family.
        #[arg(long, default_value_t = 3)]
        lmax: usize,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
    /// Build a family member from its JSON description.
    Family {
        /// Family JSON with a `kind` field, or `@path` to read it from a file.
        spec: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Hermite and Smith decompositions of an integer matrix.
    Hnf {
        /// Matrix JSON (list of rows), or `-` for stdin.
        input: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Theorem {
    Prime,
    PrimeSquared,
    Pq,
    Power,
    DualVolume,
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

fn classify_error(error: anyhow::Error) -> Failure {
    let code = match error.downcast_ref::<gorlat::Error>() {
        Some(gorlat::Error::Degenerate(_) | gorlat::Error::Singular) => 3,
        Some(gorlat::Error::Capacity { .. }) => 4,
        _ => 2,
    };
    Failure { code, error }
}

fn read_input(input: &str) -> anyhow::Result<String> {
    if input == "-" {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text)?;
        Ok(text)
    } else {
        fs::read_to_string(input).with_context(|| format!("reading {input}"))
    }
}

/// Writes through a sibling temporary file so readers never see a partial file.
fn write_atomic(path: &Path, contents: &[u8]) -> anyhow::Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".partial");
    let tmp = PathBuf::from(tmp);
    fs::write(&tmp, contents).with_context(|| format!("writing {}", tmp.display()))?;
    fs::rename(&tmp, path).with_context(|| format!("moving into {}", path.display()))?;
    Ok(())
}

fn emit(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => write_atomic(path, text.as_bytes()),
        None => {
            io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

#[derive(Serialize, Deserialize)]
struct AnalysisReport {
    #[serde(with = "decimal")]
    dim: usize,
    #[serde(with = "decimal_rows")]
    vertices: Vec<Vec<BigInt>>,
    #[serde(with = "decimal")]
    volume: BigInt,
    hnf: MatrixJson,
    #[serde(with = "decimal")]
    nonstandard_rows: usize,
    group: GroupJson,
    #[serde(with = "decimal_option")]
    pyramid_index: Option<usize>,
    certificate: Option<CertificateJson>,
}

fn analyze(input: &str, out: Option<&Path>) -> anyhow::Result<()> {
    let parsed: SimplexJson =
        serde_json::from_str(&read_input(input)?).map_err(|e| gorlat::Error::Parse(e.to_string()))?;
    let s = parsed.to_simplex()?;
    let form = simplex::to_hnf_form(&s)?;
    let group = simplex::lambda_group(&s)?;
    let report = AnalysisReport {
        dim: s.dim(),
        vertices: s.vertices().to_vec(),
        volume: simplex::normalized_volume(&s),
        hnf: MatrixJson::from_matrix(&form.h),
        nonstandard_rows: form.nonstandard_rows,
        group: GroupJson::from_group(&group),
        pyramid_index: group.vanishing_coordinate(),
        certificate: gorenstein::certificate(&s)?.as_ref().map(CertificateJson::from_certificate),
    };
    emit(out, &(serde_json::to_string_pretty(&report)? + "\n"))
}

fn csv_row(line: &CatalogLine) -> Vec<String> {
    let h = line
        .h
        .iter()
        .map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
        .collect::<Vec<_>>()
        .join(";");
    let (r, dual) = match &line.certificate {
        Some(c) => (c.index.to_string(), c.dual_volume.to_string()),
        None => (String::new(), String::new()),
    };
    let factors = line.invariant_factors.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
    vec![h, line.volume.to_string(), r, dual, factors]
}

fn classify(dim: usize, volume: u64, dedupe: bool, out: &Path, csv_out: Option<&Path>) -> anyhow::Result<()> {
    let catalog = oracle::brute_force_catalog(dim, volume, dedupe)?;
    let lines: Vec<CatalogLine> = catalog.entries.iter().map(CatalogLine::from_entry).collect();
    let mut text = String::new();
    for line in &lines {
        text.push_str(&serde_json::to_string(line)?);
        text.push('\n');
    }
    write_atomic(out, text.as_bytes())?;
    if let Some(path) = csv_out {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["h", "volume", "index", "dual_volume", "invariant_factors"])?;
        for line in &lines {
            w.write_record(csv_row(line))?;
        }
        write_atomic(path, &w.into_inner().map_err(|e| anyhow!("{e}"))?)?;
    }
    let gorenstein = catalog.entries.iter().filter(|e| e.is_gorenstein()).count();
    let essential = catalog.essential_gorenstein().count();
    println!(
        "dim {dim} volume {volume}: {} entries, {gorenstein} Gorenstein, {essential} non-pyramid Gorenstein",
        catalog.entries.len()
    );
    for issue in &catalog.inconsistencies {
        eprintln!("inconsistency: {issue}");
    }
    Ok(())
}

fn require(name: &str, value: Option<u64>) -> anyhow::Result<u64> {
    value.ok_or_else(|| anyhow!(gorlat::Error::Parse(format!("--{name} is required for this theorem"))))
}

/// Runs the checks, printing one line per case; returns whether all passed.
fn verify(theorem: Theorem, p: Option<u64>, q: Option<u64>, dmax: usize, lmax: usize, samples: usize, seed: u64) -> anyhow::Result<bool> {
    let mut all_ok = true;
    let mut line = |label: String, problems: Vec<String>| {
        if problems.is_empty() {
            println!("PASS {label}");
        } else {
            all_ok = false;
            println!("FAIL {label}");
            for p in problems {
                println!("    {p}");
            }
        }
    };
    let cross = |classifier: Classifier, m: u64, line: &mut dyn FnMut(String, Vec<String>)| -> anyhow::Result<()> {
        for d in 1..=dmax {
            let report = oracle::cross_check(d, m, classifier)?;
            let label = format!(
                "{} d={d} m={m}: {} classes, {:.2}s",
                classifier.name(),
                report.matched.len(),
                report.elapsed.as_secs_f64()
            );
            line(label, report.discrepancies());
        }
        Ok(())
    };
    match theorem {
        Theorem::Prime => {
            let p = require("p", p)?;
            families::classify_prime(p, 1)?;
            cross(Classifier::Prime, p, &mut line)?;
        }
        Theorem::PrimeSquared => {
            let p = require("p", p)?;
            families::classify_prime_squared(p, 1)?;
            cross(Classifier::PrimeSquared, p * p, &mut line)?;
        }
        Theorem::Pq => {
            let (p, q) = (require("p", p)?, require("q", q)?);
            families::classify_pq(p, q, 1)?;
            cross(Classifier::Pq, p * q, &mut line)?;
        }
        Theorem::Power => {
            let p = require("p", p)?;
            for l in 1..=lmax {
                for d in 1..=dmax {
                    let specs = families::enumerate_power_specs(p, l, d)?;
                    if specs.is_empty() {
                        continue;
                    }
                    let mut problems = Vec::new();
                    for spec in &specs {
                        problems.extend(oracle::check_power_spec(spec)?);
                    }
                    line(format!("power p={p} l={l} d={d}: {} instances", specs.len()), problems);
                }
            }
        }
        Theorem::DualVolume => {
            for inst in oracle::sample_family_instances(samples, seed)? {
                let predicted = families::predicted_dual_volume(&inst)?;
                let problems = oracle::check_dual_volume(&inst)?;
                line(format!("{} {}: predicted {predicted}", inst.kind(), serde_json::to_string(&inst)?), problems);
            }
        }
    }
    Ok(all_ok)
}

#[derive(Serialize)]
struct FamilyReport {
    instance: FamilyInstance,
    simplex: SimplexJson,
    generators: Vec<Vec<String>>,
    #[serde(with = "decimal_option")]
    index: Option<u32>,
    #[serde(with = "decimal")]
    volume: BigInt,
    #[serde(with = "decimal_option")]
    predicted_dual_volume: Option<BigInt>,
}

fn family(spec: &str, out: Option<&Path>) -> anyhow::Result<()> {
    let text = match spec.strip_prefix('@') {
        Some(path) => read_input(path)?,
        None => spec.to_string(),
    };
    let inst: FamilyInstance = serde_json::from_str(&text).map_err(|e| gorlat::Error::Parse(e.to_string()))?;
    inst.check()?;
    let s = inst.simplex()?;
    let index = inst.claimed_index().unwrap_or(None);
    let report = FamilyReport {
        simplex: SimplexJson::from_simplex(&s),
        generators: inst.generators()?.iter().map(serial::element_to_strings).collect(),
        index,
        volume: inst.volume(),
        predicted_dual_volume: index.and_then(|_| families::predicted_dual_volume(&inst).ok()),
        instance: inst,
    };
    emit(out, &(serde_json::to_string_pretty(&report)? + "\n"))
}

#[derive(Serialize)]
struct HnfReport {
    h: MatrixJson,
    u: MatrixJson,
    #[serde(with = "decimal")]
    det: BigInt,
    #[serde(with = "decimal_vec")]
    invariant_factors: Vec<BigInt>,
}

fn hnf(input: &str, out: Option<&Path>) -> anyhow::Result<()> {
    let parsed: MatrixJson =
        serde_json::from_str(&read_input(input)?).map_err(|e| gorlat::Error::Parse(e.to_string()))?;
    let m = parsed.to_matrix()?;
    if !m.is_square() {
        bail!(gorlat::Error::Dimension(format!("{}x{} matrix is not square", m.rows(), m.cols())));
    }
    let det = exact::det(&m)?;
    if det.is_zero() {
        bail!(gorlat::Error::Singular);
    }
    let decomposition = exact::hnf_decompose(&m)?;
    let report = HnfReport {
        h: MatrixJson::from_matrix(&decomposition.h),
        u: MatrixJson::from_matrix(&decomposition.u),
        det,
        invariant_factors: exact::snf_invariant_factors(&m)?,
    };
    emit(out, &(serde_json::to_string_pretty(&report)? + "\n"))
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let result = match cli.command {
        Command::Analyze { input, out } => analyze(&input, out.as_deref()).map(|_| 0),
        Command::Classify { dim, volume, dedupe, out, csv } => {
            classify(dim, volume, dedupe, &out, csv.as_deref()).map(|_| 0)
        }
        Command::Verify { theorem, p, q, dmax, lmax, samples, seed } => {
            verify(theorem, p, q, dmax, lmax, samples, seed).map(|ok| if ok { 0 } else { 1 })
        }
        Command::Family { spec, out } => family(&spec, out.as_deref()).map(|_| 0),
        Command::Hnf { input, out } => hnf(&input, out.as_deref()).map(|_| 0),
    };
    result.map_err(classify_error)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(Failure { code, error }) => {
            eprintln!("error: {error:#}");
            ExitCode::from(code)
        }
    }
}
