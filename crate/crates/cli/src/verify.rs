//! Randomized oracle comparison of both engines.

use std::path::Path;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use ed1x_core::oracle::oracle_query;
use ed1x_core::text_core::TextCorpus;
use ed1x_core::{BuildConfig, EngineKind, EngineSet, Index};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::{tsv, usage, Failure};

pub struct Options {
    pub cases: usize,
    pub sigmas: Vec<u32>,
    pub mmax: usize,
    pub seed: u64,
    pub inject_fault: bool,
}

/// A disagreement between an engine and the oracle.
#[derive(Debug, Clone)]
struct Mismatch {
    engine: EngineKind,
    want: Vec<(usize, usize)>,
    got: Vec<(usize, usize)>,
}

/// Texts longer than this are reported without shrinking.
const SHRINK_LIMIT: usize = 4096;

fn index(text: &[u8], opts: &Options) -> Option<Index> {
    let corpus = TextCorpus::from_bytes(text).ok()?;
    let cfg = BuildConfig {
        max_pattern_len: opts.mmax,
        engines: EngineSet::Both,
        seed: opts.seed,
    };
    let mut idx = Index::build(corpus, &cfg).ok()?;
    if opts.inject_fault {
        idx.inject_fault();
    }
    Some(idx)
}

fn compare(idx: &Index, pattern: &[u8]) -> Option<Mismatch> {
    let codes = idx.text().encode_bytes(pattern);
    let want: Vec<(usize, usize)> = oracle_query(idx.text().codes(), &codes)
        .into_iter()
        .collect();
    for engine in [EngineKind::Small, EngineKind::Large] {
        let got: Vec<(usize, usize)> = match idx.query_bytes(pattern, engine) {
            Ok(occ) => occ
                .iter()
                .map(|o| (o.start as usize, o.length as usize))
                .collect(),
            Err(_) => Vec::new(),
        };
        if got != want {
            return Some(Mismatch { engine, want, got });
        }
    }
    None
}

fn check(text: &[u8], pattern: &[u8], opts: &Options) -> Option<Mismatch> {
    compare(&index(text, opts)?, pattern)
}

/// Greedily drops text and pattern bytes while the case keeps failing.
fn shrink(
    mut text: Vec<u8>,
    mut pattern: Vec<u8>,
    mut bad: Mismatch,
    opts: &Options,
) -> (Vec<u8>, Vec<u8>, Mismatch) {
    if text.len() > SHRINK_LIMIT {
        return (text, pattern, bad);
    }
    loop {
        let mut progress = false;
        let mut i = 0;
        while i < text.len() {
            if text.len() > 1 {
                let mut t = text.clone();
                t.remove(i);
                if let Some(m) = check(&t, &pattern, opts) {
                    (text, bad, progress) = (t, m, true);
                    continue;
                }
            }
            i += 1;
        }
        let mut i = 0;
        while i < pattern.len() {
            if pattern.len() > 1 {
                let mut p = pattern.clone();
                p.remove(i);
                if let Some(m) = check(&text, &p, opts) {
                    (pattern, bad, progress) = (p, m, true);
                    continue;
                }
            }
            i += 1;
        }
        if !progress {
            return (text, pattern, bad);
        }
    }
}

fn symbol(sigma: u32, k: u32) -> u8 {
    if sigma <= 94 {
        0x21 + k as u8
    } else {
        k as u8
    }
}

/// Substrings, edited substrings and random strings, possibly with an absent byte.
fn pattern(rng: &mut ChaCha8Rng, text: &[u8], alphabet: &[u8], mmax: usize) -> Vec<u8> {
    let m = rng.gen_range(1..=mmax.min(text.len()).max(1));
    let absent = (0..=255u8)
        .find(|b| !alphabet.contains(b))
        .unwrap_or(alphabet[0]);
    let pick = |rng: &mut ChaCha8Rng| {
        if rng.gen_bool(0.1) {
            absent
        } else {
            alphabet[rng.gen_range(0..alphabet.len())]
        }
    };
    if rng.gen_bool(0.25) {
        return (0..m).map(|_| pick(rng)).collect();
    }
    let j = rng.gen_range(0..=text.len() - m);
    let mut p = text[j..j + m].to_vec();
    let at = rng.gen_range(0..p.len());
    match rng.gen_range(0..4) {
        0 => {}
        1 => p[at] = pick(rng),
        2 if p.len() > 1 => {
            p.remove(at);
        }
        _ if p.len() < mmax => p.insert(at, pick(rng)),
        _ => {}
    }
    p
}

fn quoted(bytes: &[u8]) -> String {
    bytes
        .iter()
        .map(|&b| {
            if b == b'"' {
                "\\x22".to_string()
            } else {
                tsv::escape(u32::from(b))
            }
        })
        .collect()
}

fn report_failure(text: Vec<u8>, pattern: Vec<u8>, bad: Mismatch, opts: &Options) -> ExitCode {
    let (text, pattern, bad) = shrink(text, pattern, bad, opts);
    println!("FAIL");
    println!("  engine:   {:?}", bad.engine);
    println!("  text:     \"{}\" ({} bytes)", quoted(&text), text.len());
    println!("  pattern:  \"{}\"", quoted(&pattern));
    println!("  expected: {:?}", bad.want);
    println!("  got:      {:?}", bad.got);
    ExitCode::FAILURE
}

pub fn run(text: Option<&Path>, opts: &Options) -> Result<ExitCode, Failure> {
    match text {
        Some(path) => run_on_text(path, opts),
        None => run_random(opts),
    }
}

fn run_on_text(path: &Path, opts: &Options) -> Result<ExitCode, Failure> {
    let raw = std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    let idx = index(&raw, opts).ok_or_else(|| anyhow!("cannot index {}", path.display()))?;
    let mut alphabet = raw.clone();
    alphabet.sort_unstable();
    alphabet.dedup();
    let cases: Vec<Vec<u8>> = (0..opts.cases)
        .map(|c| {
            pattern(
                &mut ChaCha8Rng::seed_from_u64(opts.seed ^ c as u64),
                &raw,
                &alphabet,
                opts.mmax,
            )
        })
        .collect();
    let first = cases
        .par_iter()
        .enumerate()
        .find_first(|(_, p)| compare(&idx, p).is_some());
    if let Some((_, p)) = first {
        let bad = compare(&idx, p).unwrap();
        return Ok(report_failure(raw, p.clone(), bad, opts));
    }
    println!(
        "{}: {} cases agree with the oracle",
        path.display(),
        opts.cases
    );
    println!("PASS");
    Ok(ExitCode::SUCCESS)
}

fn run_random(opts: &Options) -> Result<ExitCode, Failure> {
    if let Some(&s) = opts.sigmas.iter().find(|&&s| s == 0 || s > 256) {
        return Err(usage(anyhow!("alphabet size {s} is outside 1..=256")));
    }
    for &sigma in &opts.sigmas {
        let alphabet: Vec<u8> = (0..sigma).map(|k| symbol(sigma, k)).collect();
        let first = (0..opts.cases).into_par_iter().find_map_first(|c| {
            let mut rng =
                ChaCha8Rng::seed_from_u64(opts.seed ^ (u64::from(sigma) << 32) ^ c as u64);
            let n = rng.gen_range(1..=300);
            let text: Vec<u8> = (0..n)
                .map(|_| alphabet[rng.gen_range(0..alphabet.len())])
                .collect();
            let p = pattern(&mut rng, &text, &alphabet, opts.mmax);
            check(&text, &p, opts).map(|bad| (text, p, bad))
        });
        if let Some((text, p, bad)) = first {
            println!("sigma {sigma}: mismatch");
            return Ok(report_failure(text, p, bad, opts));
        }
        println!("sigma {sigma}: {} cases agree with the oracle", opts.cases);
    }
    println!("PASS");
    Ok(ExitCode::SUCCESS)
}
