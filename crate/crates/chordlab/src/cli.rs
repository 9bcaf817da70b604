//! Command-line front end. Every subcommand builds a serializable artifact,
//! consults a digest-checked result cache, and renders the artifact as JSON,
//! CSV, or a human-readable summary.
//!
//! Exit codes: 0 on success, 1 when a verification check fails, 2 for usage
//! errors and size guards. Diagnostics go to stderr, results to stdout or
//! `--out`.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::sync::atomic::{AtomicU64, Ordering};

use clap::error::ErrorKind as ClapErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::chords::{
    double_factorial, enumerate_diagrams, pairing, pairing_at, relative_type, sign_of,
};
use crate::error::{Error, Result};
use crate::graphs::{relations, RelationOptions, RelationSet, RelationVariant};
use crate::partitions::{
    eigen_table, eigenvalue_mu, enumerate_partitions, hook_dim, invariant_dim, Partition,
};
use crate::poly::{rat_string, PolyG};
use crate::symmetrizer::eigenbasis;
use crate::sympl::{phi, SymplecticSpace};
use crate::verify;

/// Format version stamped into every JSON artifact and every cache key.
pub const SCHEMA_VERSION: u32 = 1;

/// Default ceiling on pairing-matrix cells (diagram count squared).
const MATRIX_BUDGET: u64 = 1_000_000;
/// Default ceiling on listed diagrams.
const ENUM_BUDGET: u64 = 1_000_000;
/// Default ceiling on basis vectors times diagram count for `eigen`.
const EIGEN_BUDGET: u64 = 2_000_000;
/// Default ceiling on tensor terms (diagrams times (2g)^k) for `tensors`.
const TENSOR_BUDGET: u64 = 2_000_000;

#[derive(Parser, Debug)]
#[command(
    name = "chordlab",
    version,
    about = "Exact computations with linear chord diagrams: genus-parametrized \
             pairings, eigenspace decompositions, symplectic tensor images, and \
             trivalent-graph relations"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Write the result to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Cache directory; falls back to $CHORDLAB_CACHE, then the user cache.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,

    /// Worker threads for the parallel sections (results do not depend on it).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Seed for the seeded choices; recorded in seeded outputs.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Override the work budget that guards the large computations.
    #[arg(long, global = true)]
    limit_work: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the partitions of k with the dimension of each eigenspace.
    Partitions {
        #[arg(long)]
        k: usize,
    },
    /// Enumerate the chord diagrams on n points with sign and relative type.
    Diagrams {
        #[arg(short = 'n', long)]
        points: usize,
    },
    /// Pairing matrix on n points, symbolic in g or evaluated at a genus.
    Matrix {
        #[arg(short = 'n', long)]
        points: usize,
        #[arg(short, long)]
        genus: Option<i64>,
    },
    /// Eigenbasis, eigenvalue, and dimension for one partition.
    Eigen {
        /// Partition as comma-separated parts, e.g. 2,1,1.
        #[arg(long)]
        partition: Partition,
    },
    /// Spectrum table on n points: eigenvalue, dimension, minimal genus.
    Table {
        #[arg(short = 'n', long)]
        points: usize,
    },
    /// Dimension of the genus-g invariant subspace on 2k points.
    Dims {
        #[arg(short, long)]
        genus: u32,
        #[arg(long)]
        k: usize,
    },
    /// Symplectic tensor images of all diagrams on n points at genus g.
    Tensors {
        #[arg(short = 'n', long)]
        points: usize,
        #[arg(short, long)]
        genus: usize,
    },
    /// Candidate trivalent-graph relations at genus g from 6k-point
    /// eigenvectors.
    Relations {
        #[arg(long)]
        k: usize,
        #[arg(short, long)]
        genus: i64,
        #[arg(long, value_enum, default_value_t = VariantArg::Both)]
        variant: VariantArg,
    },
    /// Run the built-in verification suite.
    Selftest {
        #[arg(long, value_enum, default_value_t = Level::Quick)]
        level: Level,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum VariantArg {
    Closed,
    Pointed,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum Level {
    Quick,
    Full,
}

/// Entry point used by `main`; parses, runs, and maps errors to exit codes.
pub fn main_entry() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ClapErrorKind::DisplayHelp | ClapErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::Verification(_) => 1,
        _ => 2,
    }
}

fn execute(cli: Cli) -> Result<i32> {
    let Cli {
        command,
        format,
        out,
        cache_dir,
        jobs,
        seed,
        limit_work,
    } = cli;
    if jobs == Some(0) {
        return Err(Error::Usage("--jobs must be at least 1".into()));
    }
    let cache = Cache::new(resolve_cache_dir(cache_dir));
    match command {
        Command::Partitions { k } => {
            let key = format!("v{SCHEMA_VERSION}/partitions/k={k}");
            let (a, payload) = produce(&cache, &key, || build_partitions(k))?;
            finish(format, &out, payload, &a, text_partitions, csv_partitions)
        }
        Command::Diagrams { points } => {
            let key = format!("v{SCHEMA_VERSION}/diagrams/points={points}");
            let budget = limit_work.unwrap_or(ENUM_BUDGET);
            let (a, payload) = produce(&cache, &key, || build_diagrams(points, budget))?;
            finish(format, &out, payload, &a, text_diagrams, csv_diagrams)
        }
        Command::Matrix { points, genus } => {
            let gk = genus.map_or("symbolic".into(), |g| g.to_string());
            let key = format!("v{SCHEMA_VERSION}/matrix/points={points}/genus={gk}");
            let budget = limit_work.unwrap_or(MATRIX_BUDGET);
            let (a, payload) =
                produce(&cache, &key, || build_matrix(points, genus, budget, jobs))?;
            finish(format, &out, payload, &a, text_matrix, csv_matrix)
        }
        Command::Eigen { partition } => {
            let parts: Vec<String> = partition.parts().iter().map(u32::to_string).collect();
            let key = format!(
                "v{SCHEMA_VERSION}/eigen/partition={}",
                parts.join(",")
            );
            let budget = limit_work.unwrap_or(EIGEN_BUDGET);
            let (a, payload) = produce(&cache, &key, || build_eigen(&partition, budget))?;
            finish(format, &out, payload, &a, text_eigen, |_| {
                Err(Error::Usage(
                    "csv output is not defined for `eigen`; use json or text".into(),
                ))
            })
        }
        Command::Table { points } => {
            let key = format!("v{SCHEMA_VERSION}/table/points={points}");
            let (a, payload) = produce(&cache, &key, || build_table(points))?;
            finish(format, &out, payload, &a, text_table, csv_table)
        }
        Command::Dims { genus, k } => {
            let key = format!("v{SCHEMA_VERSION}/dims/genus={genus}/k={k}");
            let (a, payload) = produce(&cache, &key, || build_dims(genus, k))?;
            finish(format, &out, payload, &a, text_dims, csv_dims)
        }
        Command::Tensors { points, genus } => {
            let key = format!("v{SCHEMA_VERSION}/tensors/points={points}/genus={genus}");
            let budget = limit_work.unwrap_or(TENSOR_BUDGET);
            let (a, payload) =
                produce(&cache, &key, || build_tensors(points, genus, budget, jobs))?;
            finish(format, &out, payload, &a, text_tensors, |_| {
                Err(Error::Usage(
                    "csv output is not defined for `tensors`; use json or text".into(),
                ))
            })
        }
        Command::Relations { k, genus, variant } => {
            let key = format!(
                "v{SCHEMA_VERSION}/relations/k={k}/genus={genus}/variant={}/seed={seed}",
                variant_name(variant)
            );
            let (a, payload) = produce(&cache, &key, || {
                build_relations(k, genus, variant, seed, limit_work)
            })?;
            finish(format, &out, payload, &a, text_relations, |_| {
                Err(Error::Usage(
                    "csv output is not defined for `relations`; use json or text".into(),
                ))
            })
        }
        Command::Selftest { level } => run_selftest(level, format, &out, jobs),
    }
}

fn variant_name(v: VariantArg) -> &'static str {
    match v {
        VariantArg::Closed => "closed",
        VariantArg::Pointed => "pointed",
        VariantArg::Both => "both",
    }
}

fn guard(what: String, estimate: u64, budget: u64) -> Result<()> {
    if estimate > budget {
        Err(Error::WorkBudget {
            what,
            estimate,
            budget,
        })
    } else {
        Ok(())
    }
}

fn sat64(x: u128) -> u64 {
    x.min(u64::MAX as u128) as u64
}

/// Run `f`, optionally inside a worker pool of the requested size. The
/// parallel sections iterate in index order, so results are identical for
/// every pool size.
fn with_pool<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match jobs {
        None => Ok(f()),
        Some(0) => Err(Error::Usage("--jobs must be at least 1".into())),
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build()
            .map_err(|e| Error::Usage(format!("worker pool: {e}")))
            .map(|pool| pool.install(f)),
    }
}

// ---------------------------------------------------------------------------
// Artifacts: the serialized form of every subcommand's result.

#[derive(Serialize, Deserialize, PartialEq, Debug)]
struct PartitionsArtifact {
    schema_version: u32,
    k: usize,
    partitions: Vec<PartitionRow>,
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
struct PartitionRow {
    parts: Vec<u32>,
    /// Dimension of the eigenspace labelled by this partition (decimal, since
    /// it outgrows machine integers quickly).
    dimension: String,
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
struct DiagramsArtifact {
    schema_version: u32,
    points: usize,
    count: usize,
    diagrams: Vec<DiagramRow>,
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
struct DiagramRow {
    pairs: Vec<(u16, u16)>,
    sign: i8,
    relative_type: Vec<u32>,
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
struct MatrixArtifact {
    schema_version: u32,
    points: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    genus: Option<i64>,
    /// Row-major entries; each entry is a polynomial in g as coefficient
    /// strings, constant term first.
    entries: Vec<Vec<Vec<String>>>,
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
struct EigenArtifact {
    schema_version: u32,
    partition: Vec<u32>,
    points: usize,
    eigenvalue: Vec<String>,
    dimension: usize,
    /// True when the basis came from tableau-paired generators instead of
    /// images of the base diagram.
    fallback: bool,
    basis: Vec<SparseVector>,
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
struct SparseVector {
    terms: Vec<SparseTerm>,
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
struct SparseTerm {
    diagram: Vec<(u16, u16)>,
    coeff: String,
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
struct TableArtifact {
    schema_version: u32,
    points: usize,
    rows: Vec<TableRowJson>,
    total_dimension: usize,
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
struct TableRowJson {
    partition: Vec<u32>,
    eigenvalue: Vec<String>,
    dimension: usize,
    min_genus: u32,
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
struct DimsArtifact {
    schema_version: u32,
    genus: u32,
    k: usize,
    dimension: String,
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
struct TensorsArtifact {
    schema_version: u32,
    points: usize,
    genus: usize,
    tensors: Vec<TensorRow>,
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
struct TensorRow {
    diagram: Vec<(u16, u16)>,
    /// Words are symplectic basis labels 1..=2g; `x_i` is `i`, `y_i` is `g+i`.
    terms: Vec<TensorTerm>,
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
struct TensorTerm {
    word: Vec<u8>,
    coeff: String,
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
struct RelationsArtifact {
    schema_version: u32,
    k: usize,
    genus: i64,
    variant: String,
    seed: u64,
    relations: Vec<RelationRow>,
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
struct RelationRow {
    lambda: Vec<u32>,
    /// Contraction index for the pointed variant; absent for closed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    p: Option<usize>,
    is_zero: bool,
    vertex_count: usize,
    /// Graph terms with loops as `[v, v]` and edges sorted; coefficients are
    /// split into numerator and denominator polynomials in g.
    terms: Vec<GraphTerm>,
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
struct GraphTerm {
    edges: Vec<(u16, u16)>,
    coeff_num: Vec<String>,
    coeff_den: Vec<String>,
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
struct SelftestArtifact {
    schema_version: u32,
    level: String,
    passed: bool,
    checks: Vec<CheckRow>,
    findings: Vec<String>,
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
struct CheckRow {
    name: String,
    passed: bool,
    detail: String,
}

// ---------------------------------------------------------------------------
// Builders.

fn build_partitions(k: usize) -> Result<PartitionsArtifact> {
    let partitions = enumerate_partitions(k)
        .into_iter()
        .map(|l| PartitionRow {
            dimension: hook_dim(&l.double()).to_string(),
            parts: l.parts().to_vec(),
        })
        .collect();
    Ok(PartitionsArtifact {
        schema_version: SCHEMA_VERSION,
        k,
        partitions,
    })
}

fn build_diagrams(points: usize, budget: u64) -> Result<DiagramsArtifact> {
    let estimate = sat64(double_factorial(points.saturating_sub(1)));
    guard(format!("listing diagrams on {points} points"), estimate, budget)?;
    let diagrams: Vec<DiagramRow> = enumerate_diagrams(points)?
        .iter()
        .map(|c| DiagramRow {
            pairs: c.pairs().to_vec(),
            sign: sign_of(c),
            relative_type: relative_type(c).parts().to_vec(),
        })
        .collect();
    Ok(DiagramsArtifact {
        schema_version: SCHEMA_VERSION,
        points,
        count: diagrams.len(),
        diagrams,
    })
}

fn build_matrix(
    points: usize,
    genus: Option<i64>,
    budget: u64,
    jobs: Option<usize>,
) -> Result<MatrixArtifact> {
    let d = double_factorial(points.saturating_sub(1));
    guard(
        format!("pairing matrix on {points} points"),
        sat64(d.saturating_mul(d)),
        budget,
    )?;
    let diagrams = enumerate_diagrams(points)?;
    let entries = with_pool(jobs, || -> Result<Vec<Vec<Vec<String>>>> {
        use rayon::prelude::*;
        diagrams
            .par_iter()
            .map(|ci| {
                diagrams
                    .iter()
                    .map(|cj| match genus {
                        None => Ok(pairing(ci, cj)?.coeff_strings()),
                        Some(g) => {
                            let v = pairing_at(ci, cj, g)?;
                            Ok(PolyG::constant(v).coeff_strings())
                        }
                    })
                    .collect()
            })
            .collect()
    })??;
    Ok(MatrixArtifact {
        schema_version: SCHEMA_VERSION,
        points,
        genus,
        entries,
    })
}

fn build_eigen(lambda: &Partition, budget: u64) -> Result<EigenArtifact> {
    use num_traits::ToPrimitive;
    let points = 2 * lambda.weight();
    let dim = hook_dim(&lambda.double()).to_u64().unwrap_or(u64::MAX);
    let count = sat64(double_factorial(points.saturating_sub(1)));
    guard(
        format!("eigenbasis of {lambda}"),
        dim.saturating_mul(count),
        budget,
    )?;
    let basis = eigenbasis(lambda, points)?;
    let vectors = basis
        .vectors()
        .iter()
        .map(|v| SparseVector {
            terms: v
                .iter()
                .map(|(c, r)| SparseTerm {
                    diagram: c.pairs().to_vec(),
                    coeff: rat_string(r),
                })
                .collect(),
        })
        .collect();
    Ok(EigenArtifact {
        schema_version: SCHEMA_VERSION,
        partition: lambda.parts().to_vec(),
        points,
        eigenvalue: eigenvalue_mu(lambda).coeff_strings(),
        dimension: basis.vectors().len(),
        fallback: basis.is_fallback(),
        basis: vectors,
    })
}

fn build_table(points: usize) -> Result<TableArtifact> {
    let rows: Vec<TableRowJson> = eigen_table(points)?
        .into_iter()
        .map(|r| TableRowJson {
            partition: r.lambda.parts().to_vec(),
            eigenvalue: r.eigenvalue.coeff_strings(),
            dimension: r.dimension,
            min_genus: r.min_genus,
        })
        .collect();
    let total_dimension = rows.iter().map(|r| r.dimension).sum();
    Ok(TableArtifact {
        schema_version: SCHEMA_VERSION,
        points,
        rows,
        total_dimension,
    })
}

fn build_dims(genus: u32, k: usize) -> Result<DimsArtifact> {
    Ok(DimsArtifact {
        schema_version: SCHEMA_VERSION,
        genus,
        k,
        dimension: invariant_dim(genus, k).to_string(),
    })
}

fn build_tensors(
    points: usize,
    genus: usize,
    budget: u64,
    jobs: Option<usize>,
) -> Result<TensorsArtifact> {
    let d = double_factorial(points.saturating_sub(1));
    let words = (2 * genus as u128)
        .checked_pow((points / 2) as u32)
        .unwrap_or(u128::MAX);
    guard(
        format!("tensor images on {points} points at genus {genus}"),
        sat64(d.saturating_mul(words)),
        budget,
    )?;
    let space = SymplecticSpace::new(genus)?;
    let diagrams = enumerate_diagrams(points)?;
    let images = with_pool(jobs, || {
        use rayon::prelude::*;
        diagrams.par_iter().map(|c| phi(c, &space)).collect::<Vec<_>>()
    })?;
    let tensors = diagrams
        .iter()
        .zip(images.iter())
        .map(|(c, t)| TensorRow {
            diagram: c.pairs().to_vec(),
            terms: t
                .iter()
                .map(|(word, r)| TensorTerm {
                    word: word.clone(),
                    coeff: rat_string(r),
                })
                .collect(),
        })
        .collect();
    Ok(TensorsArtifact {
        schema_version: SCHEMA_VERSION,
        points,
        genus,
        tensors,
    })
}

fn relation_set_artifact(set: &RelationSet) -> RelationsArtifact {
    let relations = set
        .entries
        .iter()
        .map(|e| RelationRow {
            lambda: e.lambda.parts().to_vec(),
            p: e.p,
            is_zero: e.is_zero,
            vertex_count: e.vector.vertex_count(),
            terms: e
                .vector
                .iter()
                .map(|(g, c)| GraphTerm {
                    edges: g.edges().to_vec(),
                    coeff_num: PolyG::constant(num_rational::BigRational::from(
                        c.numer().clone(),
                    ))
                    .coeff_strings(),
                    coeff_den: PolyG::constant(num_rational::BigRational::from(
                        c.denom().clone(),
                    ))
                    .coeff_strings(),
                })
                .collect(),
        })
        .collect();
    RelationsArtifact {
        schema_version: SCHEMA_VERSION,
        k: set.k,
        genus: set.genus,
        variant: set.variant.to_string(),
        seed: set.seed,
        relations,
    }
}

fn build_relations(
    k: usize,
    genus: i64,
    variant: VariantArg,
    seed: u64,
    limit_work: Option<u64>,
) -> Result<Vec<RelationsArtifact>> {
    let mut opts = RelationOptions {
        seed,
        ..RelationOptions::default()
    };
    if let Some(b) = limit_work {
        opts.budget = b;
    }
    let variants: &[RelationVariant] = match variant {
        VariantArg::Closed => &[RelationVariant::Closed],
        VariantArg::Pointed => &[RelationVariant::Pointed],
        VariantArg::Both => &[RelationVariant::Closed, RelationVariant::Pointed],
    };
    variants
        .iter()
        .map(|&v| Ok(relation_set_artifact(&relations(k, genus, v, &opts)?)))
        .collect()
}

fn run_selftest(
    level: Level,
    format: Format,
    out: &Option<PathBuf>,
    jobs: Option<usize>,
) -> Result<i32> {
    let (reports, findings) = with_pool(jobs, || match level {
        Level::Quick => (verify::quick_suite(), Vec::new()),
        Level::Full => (verify::full_suite(), verify::stretch_findings()),
    })?;
    let passed = reports.iter().all(|r| r.passed);
    let artifact = SelftestArtifact {
        schema_version: SCHEMA_VERSION,
        level: match level {
            Level::Quick => "quick".into(),
            Level::Full => "full".into(),
        },
        passed,
        checks: reports
            .iter()
            .map(|r| CheckRow {
                name: r.name.to_string(),
                passed: r.passed,
                detail: r.detail.clone(),
            })
            .collect(),
        findings,
    };
    let rendered = match format {
        Format::Json => to_json(&artifact)?,
        Format::Text => text_selftest(&artifact)?,
        Format::Csv => {
            return Err(Error::Usage(
                "csv output is not defined for `selftest`; use json or text".into(),
            ))
        }
    };
    emit(out, &rendered)?;
    Ok(if passed { 0 } else { 1 })
}

// ---------------------------------------------------------------------------
// Serialization, rendering, output.

fn to_json<A: Serialize>(a: &A) -> Result<String> {
    let mut s = serde_json::to_string_pretty(a)?;
    s.push('\n');
    Ok(s)
}

fn finish<A>(
    format: Format,
    out: &Option<PathBuf>,
    payload: String,
    artifact: &A,
    text: impl Fn(&A) -> Result<String>,
    csv: impl Fn(&A) -> Result<String>,
) -> Result<i32> {
    let rendered = match format {
        Format::Json => payload,
        Format::Text => text(artifact)?,
        Format::Csv => csv(artifact)?,
    };
    emit(out, &rendered)?;
    Ok(0)
}

fn emit(out: &Option<PathBuf>, rendered: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, rendered)?,
        None => std::io::stdout().write_all(rendered.as_bytes())?,
    }
    Ok(())
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn bracket(parts: &[u32]) -> String {
    let inner: Vec<String> = parts.iter().map(u32::to_string).collect();
    format!("[{}]", inner.join(","))
}

fn diagram_string(pairs: &[(u16, u16)]) -> String {
    let inner: Vec<String> = pairs.iter().map(|(a, b)| format!("{a}-{b}")).collect();
    format!("[{}]", inner.join(" "))
}

fn poly_string(coeffs: &[String]) -> Result<String> {
    Ok(PolyG::from_coeff_strings(coeffs)?.to_string())
}

fn pad(s: &str, width: usize) -> String {
    format!("{s:<width$}")
}

fn text_partitions(a: &PartitionsArtifact) -> Result<String> {
    let mut out = format!("partitions of {}: {}\n", a.k, a.partitions.len());
    let labels: Vec<String> = a.partitions.iter().map(|r| bracket(&r.parts)).collect();
    let w = labels.iter().map(String::len).max().unwrap_or(0);
    for (label, row) in labels.iter().zip(&a.partitions) {
        let _ = writeln!(out, "  {}  dimension {}", pad(label, w), row.dimension);
    }
    Ok(out)
}

fn csv_partitions(a: &PartitionsArtifact) -> Result<String> {
    let mut out = String::from("partition,dimension\n");
    for r in &a.partitions {
        let _ = writeln!(out, "{},{}", csv_field(&bracket(&r.parts)), r.dimension);
    }
    Ok(out)
}

fn text_diagrams(a: &DiagramsArtifact) -> Result<String> {
    let mut out = format!("diagrams on {} points: {}\n", a.points, a.count);
    for d in &a.diagrams {
        let _ = writeln!(
            out,
            "  {}  sign {:+}  type {}",
            diagram_string(&d.pairs),
            d.sign,
            bracket(&d.relative_type)
        );
    }
    Ok(out)
}

fn csv_diagrams(a: &DiagramsArtifact) -> Result<String> {
    let mut out = String::from("diagram,sign,relative_type\n");
    for d in &a.diagrams {
        let _ = writeln!(
            out,
            "{},{},{}",
            csv_field(&diagram_string(&d.pairs)),
            d.sign,
            csv_field(&bracket(&d.relative_type))
        );
    }
    Ok(out)
}

fn matrix_cells(a: &MatrixArtifact) -> Result<Vec<Vec<String>>> {
    a.entries
        .iter()
        .map(|row| row.iter().map(|e| poly_string(e)).collect())
        .collect()
}

fn text_matrix(a: &MatrixArtifact) -> Result<String> {
    let cells = matrix_cells(a)?;
    let n = cells.len();
    let mut out = match a.genus {
        None => format!("pairing matrix on {} points ({n} diagrams), entries in g\n", a.points),
        Some(g) => format!("pairing matrix on {} points ({n} diagrams) at g = {g}\n", a.points),
    };
    let mut widths = vec![0usize; n];
    for row in &cells {
        for (j, cell) in row.iter().enumerate() {
            widths[j] = widths[j].max(cell.len());
        }
    }
    for row in &cells {
        out.push(' ');
        for (j, cell) in row.iter().enumerate() {
            let _ = write!(out, " {cell:>width$}", width = widths[j]);
        }
        out.push('\n');
    }
    Ok(out)
}

fn csv_matrix(a: &MatrixArtifact) -> Result<String> {
    let mut out = String::new();
    for row in matrix_cells(a)? {
        let fields: Vec<String> = row.iter().map(|c| csv_field(c)).collect();
        let _ = writeln!(out, "{}", fields.join(","));
    }
    Ok(out)
}

/// `1·[1-2 3-4] - 1/2·[1-3 2-4]`-style rendering of sparse terms.
fn combination_string(terms: &[(String, String)]) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (coeff, item)) in terms.iter().enumerate() {
        let negative = coeff.starts_with('-');
        let mag = if negative { &coeff[1..] } else { coeff.as_str() };
        if i == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let _ = write!(out, "{mag}·{item}");
    }
    out
}

fn text_eigen(a: &EigenArtifact) -> Result<String> {
    let mut out = format!(
        "eigenspace of {} on {} points\n",
        bracket(&a.partition),
        a.points
    );
    let _ = writeln!(out, "eigenvalue: {}", poly_string(&a.eigenvalue)?);
    let _ = writeln!(out, "dimension:  {}", a.dimension);
    let _ = writeln!(
        out,
        "generators: {}",
        if a.fallback {
            "tableau-paired diagrams (base-diagram images were degenerate)"
        } else {
            "base-diagram images"
        }
    );
    let index_width = a.basis.len().to_string().len();
    for (i, v) in a.basis.iter().enumerate() {
        let terms: Vec<(String, String)> = v
            .terms
            .iter()
            .map(|t| (t.coeff.clone(), diagram_string(&t.diagram)))
            .collect();
        let _ = writeln!(
            out,
            "  v{:0index_width$} = {}",
            i + 1,
            combination_string(&terms)
        );
    }
    Ok(out)
}

fn text_table(a: &TableArtifact) -> Result<String> {
    let mut rows: Vec<[String; 4]> = vec![[
        "partition".into(),
        "eigenvalue".into(),
        "dimension".into(),
        "min genus".into(),
    ]];
    for r in &a.rows {
        rows.push([
            bracket(&r.partition),
            poly_string(&r.eigenvalue)?,
            r.dimension.to_string(),
            r.min_genus.to_string(),
        ]);
    }
    let mut widths = [0usize; 4];
    for row in &rows {
        for (j, cell) in row.iter().enumerate() {
            widths[j] = widths[j].max(cell.len());
        }
    }
    let mut out = format!("spectrum on {} points\n", a.points);
    for row in &rows {
        let _ = writeln!(
            out,
            "  {}  {}  {:>dw$}  {:>gw$}",
            pad(&row[0], widths[0]),
            pad(&row[1], widths[1]),
            row[2],
            row[3],
            dw = widths[2],
            gw = widths[3],
        );
    }
    let _ = writeln!(out, "total dimension: {}", a.total_dimension);
    Ok(out)
}

fn csv_table(a: &TableArtifact) -> Result<String> {
    let mut out = String::from("partition,eigenvalue,dimension,min_genus\n");
    for r in &a.rows {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            csv_field(&bracket(&r.partition)),
            csv_field(&poly_string(&r.eigenvalue)?),
            r.dimension,
            r.min_genus
        );
    }
    Ok(out)
}

fn text_dims(a: &DimsArtifact) -> Result<String> {
    Ok(format!("{}\n", a.dimension))
}

fn csv_dims(a: &DimsArtifact) -> Result<String> {
    Ok(format!(
        "genus,k,dimension\n{},{},{}\n",
        a.genus, a.k, a.dimension
    ))
}

fn label_name(l: u8, genus: usize) -> String {
    let g = genus as u8;
    if l <= g {
        format!("x{l}")
    } else {
        format!("y{}", l - g)
    }
}

fn text_tensors(a: &TensorsArtifact) -> Result<String> {
    let mut out = format!(
        "tensor images on {} points at genus {} ({} diagrams)\n",
        a.points,
        a.genus,
        a.tensors.len()
    );
    for row in &a.tensors {
        let _ = writeln!(
            out,
            "{}: {} terms",
            diagram_string(&row.diagram),
            row.terms.len()
        );
        for t in &row.terms {
            let labels: Vec<String> = t.word.iter().map(|&l| label_name(l, a.genus)).collect();
            let _ = writeln!(out, "  {:>4} · {}", t.coeff, labels.join(" "));
        }
    }
    Ok(out)
}

fn graph_term_strings(row: &RelationRow) -> Result<Vec<(String, String)>> {
    row.terms
        .iter()
        .map(|t| {
            let num = PolyG::from_coeff_strings(&t.coeff_num)?;
            let den = PolyG::from_coeff_strings(&t.coeff_den)?;
            let coeff = if den.is_one() {
                num.to_string()
            } else {
                format!("({num})/({den})")
            };
            let edges: Vec<String> = t.edges.iter().map(|(a, b)| format!("{a}-{b}")).collect();
            Ok((coeff, format!("[{}]", edges.join(" "))))
        })
        .collect()
}

fn text_relations(artifacts: &Vec<RelationsArtifact>) -> Result<String> {
    let mut out = String::new();
    for a in artifacts {
        let _ = writeln!(
            out,
            "{} relations: k = {}, genus = {}, seed = {}, entries = {}",
            a.variant,
            a.k,
            a.genus,
            a.seed,
            a.relations.len()
        );
        for r in &a.relations {
            let place = match r.p {
                None => "closed".to_string(),
                Some(p) => format!("p = {p}"),
            };
            let body = if r.is_zero {
                "0 (vacuous)".to_string()
            } else {
                combination_string(&graph_term_strings(r)?)
            };
            let _ = writeln!(out, "  {}  {place}  {body}", bracket(&r.lambda));
        }
    }
    Ok(out)
}

fn text_selftest(a: &SelftestArtifact) -> Result<String> {
    let mut out = String::new();
    for c in &a.checks {
        let _ = writeln!(
            out,
            "check {}: {} — {}",
            c.name,
            if c.passed { "PASS" } else { "FAIL" },
            c.detail
        );
    }
    for f in &a.findings {
        let _ = writeln!(out, "finding: {f}");
    }
    let passed = a.checks.iter().filter(|c| c.passed).count();
    let _ = writeln!(out, "passed {passed}/{} checks", a.checks.len());
    Ok(out)
}

// ---------------------------------------------------------------------------
// Cache: one JSON file per computation, digest-checked, written atomically.

fn resolve_cache_dir(flag: Option<PathBuf>) -> PathBuf {
    if let Some(dir) = flag {
        return dir;
    }
    if let Some(dir) = std::env::var_os("CHORDLAB_CACHE") {
        return PathBuf::from(dir);
    }
    if let Some(dir) = std::env::var_os("XDG_CACHE_HOME") {
        return PathBuf::from(dir).join("chordlab");
    }
    if let Some(home) = std::env::var_os("HOME") {
        return PathBuf::from(home).join(".cache").join("chordlab");
    }
    PathBuf::from(".chordlab-cache")
}

fn sha256_hex(data: &str) -> String {
    let mut hasher = Sha256::new();
    hasher.update(data.as_bytes());
    let digest = hasher.finalize();
    let mut out = String::with_capacity(64);
    for byte in digest {
        let _ = write!(out, "{byte:02x}");
    }
    out
}

#[derive(Serialize, Deserialize)]
struct CacheEntry {
    schema_version: u32,
    key: String,
    digest: String,
    payload: String,
}

struct Cache {
    dir: PathBuf,
}

static TEMP_COUNTER: AtomicU64 = AtomicU64::new(0);

impl Cache {
    fn new(dir: PathBuf) -> Self {
        Cache { dir }
    }

    fn path_for(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{}.json", sha256_hex(key)))
    }

    /// A stored payload, or None on any miss: absent file, unreadable entry,
    /// key collision, or digest mismatch. A mismatch forces a recompute.
    fn read(&self, key: &str) -> Option<String> {
        let raw = fs::read_to_string(self.path_for(key)).ok()?;
        let entry: CacheEntry = serde_json::from_str(&raw).ok()?;
        if entry.key != key || sha256_hex(&entry.payload) != entry.digest {
            return None;
        }
        Some(entry.payload)
    }

    /// Write-temp-then-rename, so concurrent invocations never observe a
    /// partial entry.
    fn write(&self, key: &str, payload: &str) -> Result<()> {
        fs::create_dir_all(&self.dir)?;
        let entry = CacheEntry {
            schema_version: SCHEMA_VERSION,
            key: key.to_string(),
            digest: sha256_hex(payload),
            payload: payload.to_string(),
        };
        let target = self.path_for(key);
        let tmp = self.dir.join(format!(
            ".tmp-{}-{}",
            std::process::id(),
            TEMP_COUNTER.fetch_add(1, Ordering::Relaxed)
        ));
        fs::write(&tmp, serde_json::to_string(&entry)?)?;
        fs::rename(&tmp, &target)?;
        Ok(())
    }
}

/// Cache-through computation: on a hit the stored payload is parsed back
/// (so every render sees the same artifact bytes the JSON format prints);
/// otherwise compute, serialize, and populate the cache.
fn produce<A, F>(cache: &Cache, key: &str, compute: F) -> Result<(A, String)>
where
    A: Serialize + DeserializeOwned,
    F: FnOnce() -> Result<A>,
{
    if let Some(payload) = cache.read(key) {
        if let Ok(artifact) = serde_json::from_str::<A>(&payload) {
            return Ok((artifact, payload));
        }
    }
    let artifact = compute()?;
    let payload = to_json(&artifact)?;
    cache.write(key, &payload)?;
    Ok((artifact, payload))
}
