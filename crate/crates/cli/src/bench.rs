//! Per-pattern probe and timing table, plus a scaling summary per index.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Context;
use ed1x_core::probes::ProbeStats;
use ed1x_core::EngineKind;

use crate::{check_patterns, load_index, pick_engine, read_lines, Failure};

struct Row {
    micros: f64,
    stats: ProbeStats,
    occ: usize,
}

pub fn run(
    indexes: &[PathBuf],
    pattern_file: &Path,
    repeat: u32,
    engine: Option<EngineKind>,
) -> Result<ExitCode, Failure> {
    let file = std::fs::File::open(pattern_file)
        .with_context(|| format!("reading {}", pattern_file.display()))?;
    let patterns = read_lines(std::io::BufReader::new(file))?;
    let patterns: Vec<Vec<u8>> = patterns.into_iter().filter(|p| !p.is_empty()).collect();
    println!("index\tn\tpattern\tm\tmicros\thash\tarray\ttotal\tocc");
    let mut summary = Vec::new();
    for path in indexes {
        let idx = load_index(path)?;
        let kind = pick_engine(&idx, engine)?;
        check_patterns(&patterns, idx.max_pattern_len())?;
        let mut rows = Vec::with_capacity(patterns.len());
        for p in &patterns {
            let codes = idx.text().encode_bytes(p);
            let start = Instant::now();
            let mut last = None;
            for _ in 0..repeat {
                last = Some(idx.query_codes(&codes, kind)?);
            }
            let micros = start.elapsed().as_secs_f64() * 1e6 / f64::from(repeat);
            let (occ, stats) = last.expect("repeat is at least one");
            let row = Row {
                micros,
                stats,
                occ: occ.len(),
            };
            println!(
                "{}\t{}\t{}\t{}\t{:.1}\t{}\t{}\t{}\t{}",
                path.display(),
                idx.text().len(),
                String::from_utf8_lossy(p),
                p.len(),
                row.micros,
                row.stats.hash,
                row.stats.array,
                row.stats.total(),
                row.occ
            );
            rows.push(row);
        }
        summary.push((path.clone(), idx.text().len(), rows));
    }
    if patterns.is_empty() {
        return Ok(ExitCode::SUCCESS);
    }
    println!();
    println!("index\tn\tqueries\tmean_micros\tmean_probes\tmean_occ\tprobes_minus_occ");
    for (path, n, rows) in &summary {
        let k = rows.len() as f64;
        let mean = |f: &dyn Fn(&Row) -> f64| rows.iter().map(f).sum::<f64>() / k;
        let probes = mean(&|r| r.stats.total() as f64);
        let occ = mean(&|r| r.occ as f64);
        println!(
            "{}\t{n}\t{}\t{:.1}\t{probes:.1}\t{occ:.1}\t{:.1}",
            path.display(),
            rows.len(),
            mean(&|r| r.micros),
            probes - occ
        );
    }
    Ok(ExitCode::SUCCESS)
}
