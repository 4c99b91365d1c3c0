//! `ed1x`: build, query, verify and benchmark one-error text indexes.

mod bench;
mod tsv;
mod verify;

use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use ed1x_core::container::{self, ContainerError};
use ed1x_core::text_core::TextCorpus;
use ed1x_core::{BuildConfig, EngineKind, EngineSet, Error, Index};
use rayon::prelude::*;

#[derive(Parser)]
#[command(
    name = "ed1x",
    version,
    about = "Full-text index for matches within edit distance one"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build an index over the raw bytes of a text file.
    Build {
        text: PathBuf,
        out: PathBuf,
        /// Longest supported pattern.
        #[arg(long = "b", default_value_t = 64, value_parser = clap::value_parser!(u32).range(1..))]
        b: u32,
        #[arg(long, value_enum, default_value_t = EngineArg::Both)]
        engine: EngineArg,
        /// Seed of the hash-parameter search.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Report every match of each pattern as TSV.
    Query {
        index: PathBuf,
        /// Pattern to search; patterns are read one per line from stdin otherwise.
        #[arg(long)]
        pattern: Vec<String>,
        #[arg(long, value_enum)]
        engine: Option<QueryEngineArg>,
    },
    /// Compare both engines against the brute-force oracle on random cases.
    Verify {
        /// Text to draw patterns from; random texts are generated otherwise.
        text: Option<PathBuf>,
        #[arg(long, default_value_t = 200)]
        cases: usize,
        /// Alphabet sizes of the random texts.
        #[arg(long, value_delimiter = ',', default_value = "2,4,26")]
        sigma: Vec<u32>,
        /// Longest pattern, also the index parameter b.
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u32).range(1..))]
        mmax: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Corrupt every index before querying it.
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Probe counts and timings per pattern, plus a scaling table across indexes.
    Bench {
        #[arg(required = true)]
        index: Vec<PathBuf>,
        #[arg(long)]
        pattern_file: PathBuf,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        repeat: u32,
        #[arg(long, value_enum)]
        engine: Option<QueryEngineArg>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineArg {
    Small,
    Large,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum QueryEngineArg {
    Small,
    Large,
}

impl From<EngineArg> for EngineSet {
    fn from(e: EngineArg) -> Self {
        match e {
            EngineArg::Small => EngineSet::Small,
            EngineArg::Large => EngineSet::Large,
            EngineArg::Both => EngineSet::Both,
        }
    }
}

impl From<QueryEngineArg> for EngineKind {
    fn from(e: QueryEngineArg) -> Self {
        match e {
            QueryEngineArg::Small => EngineKind::Small,
            QueryEngineArg::Large => EngineKind::Large,
        }
    }
}

/// Failure with its process exit code.
struct Failure {
    code: u8,
    err: anyhow::Error,
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure {
            code: 1,
            err: e.into(),
        }
    }
}

fn usage(err: anyhow::Error) -> Failure {
    Failure { code: 2, err }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Build {
            text,
            out,
            b,
            engine,
            seed,
        } => build(&text, &out, b as usize, engine.into(), seed),
        Command::Query {
            index,
            pattern,
            engine,
        } => query(&index, pattern, engine.map(Into::into)),
        Command::Verify {
            text,
            cases,
            sigma,
            mmax,
            seed,
            inject_fault,
        } => {
            let opts = verify::Options {
                cases,
                sigmas: sigma,
                mmax: mmax as usize,
                seed,
                inject_fault,
            };
            verify::run(text.as_deref(), &opts)
        }
        Command::Bench {
            index,
            pattern_file,
            repeat,
            engine,
        } => bench::run(&index, &pattern_file, repeat, engine.map(Into::into)),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            eprintln!("ed1x: {:#}", f.err);
            ExitCode::from(f.code)
        }
    }
}

fn build(
    text: &Path,
    out: &Path,
    b: usize,
    engines: EngineSet,
    seed: u64,
) -> Result<ExitCode, Failure> {
    let raw = std::fs::read(text).with_context(|| format!("reading {}", text.display()))?;
    let corpus = TextCorpus::from_bytes(&raw)?;
    let idx = Index::build(
        corpus,
        &BuildConfig {
            max_pattern_len: b,
            engines,
            seed,
        },
    )?;
    container::save(&idx, out).with_context(|| format!("writing {}", out.display()))?;
    let stats = idx.stats();
    eprintln!(
        "indexed {} bytes, sigma {}, b {}, seed attempts {}, correction entries {}",
        idx.text().len(),
        idx.text().sigma(),
        b,
        stats.seed_attempts,
        stats.correction_entries
    );
    Ok(ExitCode::SUCCESS)
}

/// Loads an index; corrupt files exit with code 3.
pub(crate) fn load_index(path: &Path) -> Result<Index, Failure> {
    container::load(path).map_err(|e| match e {
        ContainerError::Corrupt(_) => Failure {
            code: 3,
            err: anyhow::Error::new(e).context(format!("loading {}", path.display())),
        },
        other => {
            Failure::from(anyhow::Error::new(other).context(format!("loading {}", path.display())))
        }
    })
}

/// Picks the requested engine or the index default.
pub(crate) fn pick_engine(idx: &Index, engine: Option<EngineKind>) -> Result<EngineKind, Failure> {
    let kind = engine.unwrap_or_else(|| idx.default_engine());
    if kind == EngineKind::Large && idx.large().is_none() {
        return Err(usage(Error::EngineUnavailable.into()));
    }
    Ok(kind)
}

/// Reads patterns one per line, without the line terminator.
pub(crate) fn read_lines(reader: impl BufRead) -> std::io::Result<Vec<Vec<u8>>> {
    reader
        .split(b'\n')
        .map(|line| {
            line.map(|mut l| {
                if l.last() == Some(&b'\r') {
                    l.pop();
                }
                l
            })
        })
        .collect()
}

/// Rejects patterns outside `1..=b` before any output is written.
pub(crate) fn check_patterns(patterns: &[Vec<u8>], b: usize) -> Result<(), Failure> {
    for (i, p) in patterns.iter().enumerate() {
        if p.is_empty() {
            return Err(usage(anyhow::anyhow!("pattern {} is empty", i + 1)));
        }
        if p.len() > b {
            return Err(usage(anyhow::anyhow!(
                "pattern {} has length {} but the index supports patterns up to b = {b}",
                i + 1,
                p.len()
            )));
        }
    }
    Ok(())
}

fn query(
    path: &Path,
    patterns: Vec<String>,
    engine: Option<EngineKind>,
) -> Result<ExitCode, Failure> {
    let idx = load_index(path)?;
    let kind = pick_engine(&idx, engine)?;
    let patterns: Vec<Vec<u8>> = if patterns.is_empty() {
        read_lines(std::io::stdin().lock())?
    } else {
        patterns.into_iter().map(String::into_bytes).collect()
    };
    check_patterns(&patterns, idx.max_pattern_len())?;
    let blocks: Vec<String> = patterns
        .par_iter()
        .map(|p| {
            idx.query_bytes(p, kind)
                .map(|occ| tsv::render(&idx, p, &occ))
        })
        .collect::<Result<_, _>>()?;
    let mut out = std::io::stdout().lock();
    for (i, block) in blocks.iter().enumerate() {
        if i > 0 {
            out.write_all(b"\n")?;
        }
        out.write_all(block.as_bytes())?;
    }
    out.flush()?;
    Ok(ExitCode::SUCCESS)
}
