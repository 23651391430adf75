//! Subcommand implementations. Each returns the process exit code on success;
//! errors are reported by the caller with exit code 2.

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use ballmaps_core::{
    check_int, enumerate_catalog, hyperbolic_contractions, standard_catalog, CatalogEntry, ClassifyOptions,
    Compactness, DivisibilityMode, InclusionEdge, IntegralityMode, ScanFilter, ScanStage, WeightSystem,
    FOUR_POINT_MAX_DEN, MANY_POINT_MAX_DEN,
};
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::fixtures::{parse_fixtures, run_fixtures, FixtureBody, FixtureOutcome, REFERENCE};
use crate::format::{read_catalog, write_catalog, write_edges, write_results};

pub const EXIT_OK: u8 = 0;
pub const EXIT_MISMATCH: u8 = 1;
pub const EXIT_ERROR: u8 = 2;

/// Environment variable overriding the number of worker threads.
pub const THREADS_ENV: &str = "BALLMAPS_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "ballmaps",
    version,
    about = "Integral weight systems on the projective line and forgetful maps between them"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Enumerate all admissible weight systems with k points up to a denominator bound.
    Enumerate(EnumerateArgs),
    /// Classify forgetful maps between catalog entries.
    Classify(ClassifyArgs),
    /// Recompute the reference classification lists and compare with the fixtures.
    VerifyPaper(VerifyArgs),
    /// List the hyperbolic contractions of one weight system.
    Inclusions(InclusionArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Int,
    Half,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StageArg {
    Divisibility,
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DivisibilityArg {
    Literal,
    Bullets,
}

impl From<DivisibilityArg> for DivisibilityMode {
    fn from(d: DivisibilityArg) -> Self {
        match d {
            DivisibilityArg::Literal => DivisibilityMode::Literal,
            DivisibilityArg::Bullets => DivisibilityMode::Bullets,
        }
    }
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    /// Number of points k (at least 4).
    #[arg(long, value_parser = clap::value_parser!(u32).range(4..=64))]
    pub points: u32,
    /// Largest least common denominator to search.
    #[arg(long, value_parser = clap::value_parser!(u32).range(2..=100_000))]
    pub max_den: u32,
    #[arg(long, value_enum, default_value = "half")]
    pub mode: ModeArg,
    /// Catalog file to write (JSON lines).
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    /// Source catalog file; repeat to concatenate several.
    #[arg(long, required = true)]
    pub src: Vec<PathBuf>,
    /// Target catalog file; repeat to concatenate. Defaults to the sources.
    #[arg(long)]
    pub tgt: Vec<PathBuf>,
    /// Source dimension `M` or range `A..B`.
    #[arg(long, value_parser = parse_dims)]
    pub source_dim: Option<std::ops::RangeInclusive<usize>>,
    /// Target dimension `N` or range `A..B`.
    #[arg(long, value_parser = parse_dims)]
    pub target_dim: Option<std::ops::RangeInclusive<usize>>,
    /// Only pairs of cocompact systems.
    #[arg(long, conflicts_with = "noncompact")]
    pub cocompact_only: bool,
    /// Only pairs with a non-compact source of dimension above 2 or a
    /// non-compact target of dimension above 1.
    #[arg(long)]
    pub noncompact: bool,
    #[arg(long, value_enum, default_value = "full")]
    pub stage: StageArg,
    #[arg(long, value_enum, default_value = "literal")]
    pub divisibility: DivisibilityArg,
    /// Do not count transpositions as codimension-one fixed elements on 4 points.
    #[arg(long)]
    pub no_k4_fixed_points: bool,
    /// Keep candidates that forget nothing and keep every weight.
    #[arg(long)]
    pub include_trivial: bool,
    /// Result file to write (JSON lines).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Directory for the catalog and per-fixture result files.
    #[arg(long)]
    pub workdir: Option<PathBuf>,
    /// Fixture file to use instead of the built-in reference lists.
    #[arg(long)]
    pub fixtures: Option<PathBuf>,
    /// Rerun the fixtures with this divisibility rule and report changed outcomes.
    #[arg(long, value_enum)]
    pub alt_divisibility: Option<DivisibilityArg>,
}

#[derive(Debug, Args)]
pub struct InclusionArgs {
    /// Comma-separated numerators.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true, required = true)]
    pub weights: Vec<i64>,
    /// Common denominator.
    #[arg(long)]
    pub den: i64,
    /// Edge file to write (JSON lines).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_dims(s: &str) -> Result<std::ops::RangeInclusive<usize>, String> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}"));
    match s.split_once("..") {
        Some((a, b)) => Ok(num(a)?..=num(b)?),
        None => {
            let n = num(s)?;
            Ok(n..=n)
        }
    }
}

/// Applies the worker-count override, if set.
pub fn configure_threads() -> Result<()> {
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let n: usize = v.parse().with_context(|| format!("{THREADS_ENV}={v:?} is not a thread count"))?;
        // Only fails if a pool already exists, in which case it is kept.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(())
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<u8> {
    match cli.command {
        Command::Enumerate(a) => enumerate(&a, out),
        Command::Classify(a) => classify(&a, out),
        Command::VerifyPaper(a) => verify_paper(&a, out),
        Command::Inclusions(a) => inclusions(&a, out),
    }
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path).with_context(|| format!("cannot write {}", path.display()))?))
}

fn enumerate(a: &EnumerateArgs, out: &mut dyn Write) -> Result<u8> {
    let mode = match a.mode {
        ModeArg::Int => IntegralityMode::Int,
        ModeArg::Half => IntegralityMode::HalfInt,
    };
    let cat = enumerate_catalog(a.points as usize, a.max_den, mode);
    let mut file = create(&a.out)?;
    write_catalog(&mut file, &cat)?;
    file.flush()?;
    writeln!(
        out,
        "k={} max_den={} mode={}: {} systems ({} cocompact, {} integral), max lcd {}",
        a.points,
        a.max_den,
        if mode == IntegralityMode::Int { "int" } else { "half" },
        cat.len(),
        cat.iter().filter(|e| e.cocompact).count(),
        cat.iter().filter(|e| e.satisfies_int).count(),
        cat.iter().map(CatalogEntry::lcd).max().map_or("-".to_string(), |d| d.to_string()),
    )?;
    Ok(EXIT_OK)
}

fn load(paths: &[PathBuf]) -> Result<Vec<CatalogEntry>> {
    let mut all = Vec::new();
    for p in paths {
        let f = File::open(p).with_context(|| format!("cannot open catalog {}", p.display()))?;
        all.extend(read_catalog(BufReader::new(f)).with_context(|| format!("reading {}", p.display()))?);
    }
    all.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    all.dedup();
    Ok(all)
}

fn classify(a: &ClassifyArgs, out: &mut dyn Write) -> Result<u8> {
    let sources = load(&a.src)?;
    let targets = if a.tgt.is_empty() { sources.clone() } else { load(&a.tgt)? };
    let stage = match a.stage {
        StageArg::Divisibility => ScanStage::Divisibility,
        StageArg::Full => ScanStage::Full,
    };
    let filter = ScanFilter {
        source_dims: a.source_dim.clone().unwrap_or(1..=usize::MAX),
        target_dims: a.target_dim.clone().unwrap_or(1..=usize::MAX),
        compactness: if a.cocompact_only {
            Compactness::Cocompact
        } else if a.noncompact {
            Compactness::NonCompact
        } else {
            Compactness::Any
        },
        stage,
        include_trivial: a.include_trivial,
    };
    let opts = ClassifyOptions { divisibility: a.divisibility.into(), k4_fixed_points: !a.no_k4_fixed_points };
    let rows = ballmaps_core::scan(&sources, &targets, &filter, &opts);
    if let Some(path) = &a.out {
        let mut file = create(path)?;
        write_results(&mut file, &rows, stage)?;
        file.flush()?;
    }
    writeln!(out, "{:<24} {:<20} {:<16} {:>7}  {:<14} notes", "source", "target", "alignment", "choices", "dual")?;
    for row in &rows {
        let align: Vec<String> = row.alignment.iter().map(|i| (i + 1).to_string()).collect();
        let mut notes = Vec::new();
        if row.passing.iter().any(|c| !c.verdict.qprime_ok) {
            notes.push("qprime fails for some choice".to_string());
        }
        if row.non_faithful_target {
            notes.push("non-faithful target group".to_string());
        }
        writeln!(
            out,
            "{:<24} {:<20} {:<16} {:>7}  {:<14} {}",
            row.source.weights.to_string(),
            row.target.weights.to_string(),
            align.join(","),
            row.passing.len(),
            row.dual_partner.as_ref().map_or("-".to_string(), |d| d.to_string()),
            notes.join("; ")
        )?;
    }
    writeln!(out, "{} rows", rows.len())?;
    Ok(EXIT_OK)
}

fn print_outcomes(out: &mut dyn Write, outcomes: &[FixtureOutcome]) -> Result<()> {
    writeln!(out, "{:<28} {:>8} {:>8}  status", "fixture", "expected", "computed")?;
    for o in outcomes {
        writeln!(
            out,
            "{:<28} {:>8} {:>8}  {}",
            o.name,
            o.expected,
            o.computed,
            if o.passed { "pass" } else { "FAIL" }
        )?;
        for m in &o.missing {
            writeln!(out, "    - missing: {m}")?;
        }
        for e in &o.extra {
            writeln!(out, "    + extra:   {e}")?;
        }
        for n in &o.notes {
            writeln!(out, "    ! {n}")?;
        }
    }
    Ok(())
}

fn verify_paper(a: &VerifyArgs, out: &mut dyn Write) -> Result<u8> {
    let text = match &a.fixtures {
        Some(p) => std::fs::read_to_string(p).with_context(|| format!("cannot read fixtures {}", p.display()))?,
        None => REFERENCE.to_string(),
    };
    let fixtures = parse_fixtures(&text)?;
    let catalog = standard_catalog();
    writeln!(
        out,
        "catalog: {} systems (4 points up to denominator {FOUR_POINT_MAX_DEN}, 5 to 12 points up to {MANY_POINT_MAX_DEN})",
        catalog.len()
    )?;
    let opts = ClassifyOptions::default();
    let outcomes = run_fixtures(&fixtures, &catalog, &opts);
    print_outcomes(out, &outcomes)?;

    if let Some(dir) = &a.workdir {
        std::fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
        let mut file = create(&dir.join("catalog.jsonl"))?;
        write_catalog(&mut file, &catalog)?;
        file.flush()?;
        for (f, o) in fixtures.iter().zip(&outcomes) {
            if let FixtureBody::Scan { filter, .. } = &f.body {
                let mut file = create(&dir.join(format!("{}.jsonl", f.name)))?;
                write_results(&mut file, &o.rows, filter.stage)?;
                file.flush()?;
            }
        }
        writeln!(out, "wrote catalog and results to {}", dir.display())?;
    }

    if let Some(alt) = a.alt_divisibility {
        let alt_opts = ClassifyOptions { divisibility: alt.into(), ..opts };
        let alt_outcomes = run_fixtures(&fixtures, &catalog, &alt_opts);
        let changed: Vec<String> = outcomes
            .iter()
            .zip(&alt_outcomes)
            .filter(|(x, y)| x.passed != y.passed || x.computed != y.computed)
            .map(|(x, y)| {
                format!(
                    "{}: {} -> {} ({} -> {} computed)",
                    x.name,
                    if x.passed { "pass" } else { "fail" },
                    if y.passed { "pass" } else { "fail" },
                    x.computed,
                    y.computed
                )
            })
            .collect();
        let name = DivisibilityMode::from(alt).name();
        if changed.is_empty() {
            writeln!(out, "divisibility rule {name}: no fixture outcome changes")?;
        } else {
            writeln!(out, "divisibility rule {name}: {} fixture outcomes change", changed.len())?;
            for c in &changed {
                writeln!(out, "    {c}")?;
            }
            print_outcomes(out, &alt_outcomes)?;
        }
    }

    let all = outcomes.iter().all(|o| o.passed);
    writeln!(out, "{}", if all { "all fixtures pass" } else { "fixture mismatch" })?;
    Ok(if all { EXIT_OK } else { EXIT_MISMATCH })
}

fn in_standard_catalog(w: &WeightSystem) -> bool {
    let bound = if w.len() == 4 { FOUR_POINT_MAX_DEN } else { MANY_POINT_MAX_DEN };
    w.lcd() <= bound && CatalogEntry::from_weights(w).is_some()
}

fn inclusions(a: &InclusionArgs, out: &mut dyn Write) -> Result<u8> {
    let mu = WeightSystem::new(&a.weights, a.den).context("invalid weights")?;
    let parent_int = check_int(&mu);
    let edges: Vec<InclusionEdge> = hyperbolic_contractions(&mu)
        .into_iter()
        .map(|(subset, child)| {
            let child = child.sorted_desc();
            InclusionEdge {
                parent: mu.clone(),
                codimension: subset.len() - 1,
                child_int: check_int(&child),
                child_in_catalog: in_standard_catalog(&child),
                heuristic: !parent_int,
                subset,
                child,
            }
        })
        .collect();
    writeln!(
        out,
        "{mu}: {} hyperbolic contractions{}",
        edges.len(),
        if parent_int { "" } else { " (parent not integral)" }
    )?;
    writeln!(out, "{:<20} {:<24} {:>5}  int", "subset", "child", "codim")?;
    for e in &edges {
        let s: Vec<String> = e.subset.iter().map(|i| (i + 1).to_string()).collect();
        writeln!(
            out,
            "{:<20} {:<24} {:>5}  {}",
            format!("{{{}}}", s.join(",")),
            e.child.to_string(),
            e.codimension,
            if e.child_int { "yes" } else { "no" }
        )?;
    }
    if let Some(path) = &a.out {
        let mut file = create(path)?;
        write_edges(&mut file, &edges)?;
        file.flush()?;
    }
    Ok(EXIT_OK)
}
