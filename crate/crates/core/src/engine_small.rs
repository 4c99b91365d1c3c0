//! Exhaustive engine: every candidate edit of the pattern is located by weak
//! prefix search and verified at one text position in constant time.
//!
//! The occurrence checker and the modified-pattern search are shared with the
//! centroid engine.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::poly_hash::{
    find_injective_seed, precompute_query_hashes, Edit, HashParams, QueryHashes, SeededBuild,
    TextHasher,
};
use crate::probes::{ProbeStats, Probes};
use crate::text_core::{build_index_core, compute_l_r, Code, IndexCore, RangePair, TextCorpus};
use crate::weak_prefix::{build_factor_set, FactorSet, PrefixSum, WeakPrefixIndex};

/// A text substring within distance one of the pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Occurrence {
    /// 1-based start.
    pub start: u32,
    pub length: u32,
    pub edit: Edit,
}

/// Per-query scratch: pattern hashes, `L`/`R` ranges and probe counters.
#[derive(Debug)]
pub struct QueryContext {
    pub hashes: QueryHashes,
    /// `l[0..=m]`, rsa ranks.
    pub l: Vec<RangePair>,
    /// `r[1..=m+1]`, sa ranks; `r[0]` unused.
    pub r: Vec<RangePair>,
    pub probes: Probes,
}

impl QueryContext {
    pub fn m(&self) -> usize {
        self.hashes.m()
    }

    #[inline]
    pub fn q(&self, i: usize) -> Code {
        self.hashes.q(i)
    }
}

/// Text core plus the weak prefix search over the padded `(b+1)`-factors.
#[derive(Debug, Clone)]
pub struct SmallEngine {
    text: TextCorpus,
    core: IndexCore,
    b: usize,
    params: HashParams,
    wps: WeakPrefixIndex,
    sums: PrefixSum,
}

/// Width of the stored factors for patterns of length at most `b`: one more,
/// so single insertions still fit.
pub fn factor_width(b: usize) -> usize {
    b + 1
}

/// The hashed structures of the small engine under given parameters.
#[derive(Debug, Clone)]
pub struct FactorIndex {
    pub wps: WeakPrefixIndex,
    pub sums: PrefixSum,
}

impl FactorIndex {
    pub fn build(set: &FactorSet, text: &TextCorpus, hasher: &TextHasher) -> Option<Self> {
        let wps = WeakPrefixIndex::build(set, text, hasher)?;
        Some(Self {
            wps,
            sums: PrefixSum::new(set.counts()),
        })
    }
}

struct FactorPlan<'a> {
    text: &'a TextCorpus,
    set: FactorSet,
}

impl SeededBuild for FactorPlan<'_> {
    type Output = FactorIndex;

    fn try_build(&self, params: &HashParams) -> Option<FactorIndex> {
        let hasher = TextHasher::new(params, self.text, self.set.width());
        FactorIndex::build(&self.set, self.text, &hasher)
    }
}

impl SmallEngine {
    /// Builds a standalone small engine with a seeded hash search.
    pub fn build(text: TextCorpus, b: usize, seed: u64) -> Result<Self> {
        if b == 0 {
            return Err(Error::InvalidMaxLength);
        }
        let core = build_index_core(&text);
        let plan = FactorPlan {
            text: &text,
            set: build_factor_set(&core, factor_width(b)),
        };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let out = find_injective_seed(&plan, text.len(), text.sigma(), &mut rng)?;
        Ok(Self::from_parts(text, core, b, out.params, out.built))
    }

    pub fn from_parts(
        text: TextCorpus,
        core: IndexCore,
        b: usize,
        params: HashParams,
        factors: FactorIndex,
    ) -> Self {
        Self {
            text,
            core,
            b,
            params,
            wps: factors.wps,
            sums: factors.sums,
        }
    }

    pub fn text(&self) -> &TextCorpus {
        &self.text
    }

    pub fn core(&self) -> &IndexCore {
        &self.core
    }

    pub fn max_pattern_len(&self) -> usize {
        self.b
    }

    pub fn params(&self) -> &HashParams {
        &self.params
    }

    pub fn wps(&self) -> &WeakPrefixIndex {
        &self.wps
    }

    /// Swaps two suffix-array entries, corrupting the index on purpose.
    #[doc(hidden)]
    pub fn inject_fault(&mut self) {
        let n = self.core.len();
        if n >= 2 {
            self.core.sa.swap(1, n);
        }
    }

    /// Validates the pattern and prepares hashes and ranges.
    pub fn context(&self, q: &[Code]) -> Result<QueryContext> {
        if q.is_empty() {
            return Err(Error::EmptyPattern);
        }
        if q.len() > self.b {
            return Err(Error::PatternTooLong {
                len: q.len(),
                max: self.b,
            });
        }
        let hashes = precompute_query_hashes(&self.params, q);
        let (l, r) = compute_l_r(&self.core, &self.text, q);
        Ok(QueryContext {
            hashes,
            l,
            r,
            probes: Probes::new(),
        })
    }

    /// Whether the edited pattern occurs at 1-based text position `j`.
    pub fn check_occurrence(&self, ctx: &QueryContext, e: &Edit, j: usize) -> bool {
        let m = ctx.m();
        if !e.is_valid_for(m) {
            return false;
        }
        let len = e.result_len(m);
        if len == 0 || j == 0 || j + len - 1 > self.core.len() {
            return false;
        }
        // T[j..j+k-1] = q[1..k]
        let left = |k: usize| {
            k == 0 || {
                ctx.probes.array(1);
                ctx.l[k].contains(self.core.prefix_rank(j + k - 1))
            }
        };
        // suffix at x starts with q[k..m]
        let right = |x: usize, k: usize| {
            k == m + 1 || {
                ctx.probes.array(1);
                ctx.r[k].contains(self.core.isa[x])
            }
        };
        let at = |x: usize, c: Code| {
            ctx.probes.array(1);
            self.text.at(x) == c
        };
        match *e {
            Edit::Exact => right(j, 1),
            Edit::Deletion { pos } => {
                let i = pos as usize;
                left(i - 1) && right(j + i - 1, i + 1)
            }
            Edit::Substitution { pos, ch } => {
                let i = pos as usize;
                left(i - 1) && at(j + i - 1, ch) && right(j + i, i + 1)
            }
            Edit::Insertion { pos, ch } => {
                let i = pos as usize;
                left(i - 1) && at(j + i - 1, ch) && right(j + i, i)
            }
        }
    }

    /// Sa range of suffixes prefixed by the edited pattern, verified at one
    /// position; empty when the pattern does not occur.
    pub fn locate(&self, ctx: &QueryContext, e: &Edit) -> RangePair {
        let len = e.result_len(ctx.m());
        if len == 0 {
            return RangePair::EMPTY;
        }
        let members = self
            .wps
            .query(len, |l| ctx.hashes.edited_prefix(e, l), &ctx.probes);
        if members.is_empty() {
            return RangePair::EMPTY;
        }
        // verify the first suffix before reading the range end
        ctx.probes.array(2);
        let lo = self.sums.first(members);
        let j = self.core.sa[lo as usize] as usize;
        if self.check_occurrence(ctx, e, j) {
            ctx.probes.array(1);
            RangePair::new(lo, self.sums.last(members))
        } else {
            RangePair::EMPTY
        }
    }

    /// Appends one occurrence per suffix in `range`.
    pub fn report(
        &self,
        ctx: &QueryContext,
        range: RangePair,
        e: &Edit,
        out: &mut Vec<Occurrence>,
    ) {
        if range.is_empty() {
            return;
        }
        let length = e.result_len(ctx.m()) as u32;
        ctx.probes.array(range.width() as u64);
        out.extend((range.lo..=range.hi).map(|k| Occurrence {
            start: self.core.sa[k as usize],
            length,
            edit: *e,
        }));
    }

    pub fn query_modified_pattern(&self, ctx: &QueryContext, e: &Edit) -> Vec<Occurrence> {
        let mut out = Vec::new();
        let range = self.locate(ctx, e);
        self.report(ctx, range, e, &mut out);
        out
    }

    /// Canonical candidate edits in enumeration order: exact, deletions,
    /// substitutions by (pos, ch), insertions.
    pub fn candidate_edits(&self, q: &[Code]) -> Vec<Edit> {
        let m = q.len();
        let sigma = self.text.sigma() as Code;
        let mut edits = vec![Edit::Exact];
        if m >= 2 {
            for i in 1..=m {
                if i == 1 || q[i - 2] != q[i - 1] {
                    edits.push(Edit::Deletion { pos: i as u32 });
                }
            }
        }
        for i in 1..=m {
            for ch in 1..=sigma {
                if ch != q[i - 1] {
                    edits.push(Edit::Substitution { pos: i as u32, ch });
                }
            }
        }
        for i in 1..=m + 1 {
            for ch in 1..=sigma {
                if i > m || ch != q[i - 1] {
                    edits.push(Edit::Insertion { pos: i as u32, ch });
                }
            }
        }
        edits
    }

    /// All matches of the encoded pattern, sorted by (start, length).
    pub fn query_codes(&self, q: &[Code]) -> Result<(Vec<Occurrence>, ProbeStats)> {
        let ctx = self.context(q)?;
        let mut found: BTreeMap<(u32, u32), Edit> = BTreeMap::new();
        let mut buf = Vec::new();
        for e in self.candidate_edits(q) {
            buf.clear();
            self.report(&ctx, self.locate(&ctx, &e), &e, &mut buf);
            for o in &buf {
                found.entry((o.start, o.length)).or_insert(o.edit);
            }
        }
        let out = found
            .into_iter()
            .map(|((start, length), edit)| Occurrence {
                start,
                length,
                edit,
            })
            .collect();
        Ok((out, ctx.probes.stats()))
    }

    pub fn query_one_error_small(&self, q: &[u32]) -> Result<Vec<Occurrence>> {
        Ok(self.query_codes(&self.text.encode_pattern(q))?.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{apply_edit, oracle_query};
    use rand::Rng;

    fn engine(raw: &[u8], b: usize) -> SmallEngine {
        SmallEngine::build(TextCorpus::from_bytes(raw).unwrap(), b, 1).unwrap()
    }

    fn pairs(occ: &[Occurrence]) -> Vec<(usize, usize)> {
        occ.iter()
            .map(|o| (o.start as usize, o.length as usize))
            .collect()
    }

    #[test]
    fn banana_examples() {
        let eng = engine(b"banana", 8);
        let t = eng.text().clone();
        let q = t.encode_bytes(b"nana");
        let ctx = eng.context(&q).unwrap();
        let b = t.encode(b'b' as u32);
        assert!(eng.check_occurrence(&ctx, &Edit::Exact, 3));
        assert!(eng.check_occurrence(&ctx, &Edit::Substitution { pos: 1, ch: b }, 1));
        assert!(!eng.check_occurrence(&ctx, &Edit::Substitution { pos: 1, ch: b }, 2));
        assert_eq!(
            pairs(&eng.query_modified_pattern(&ctx, &Edit::Exact)),
            vec![(3, 4)]
        );
        let mut del = pairs(&eng.query_modified_pattern(&ctx, &Edit::Deletion { pos: 1 }));
        del.sort_unstable();
        assert_eq!(del, vec![(2, 3), (4, 3)]);
        let got = eng
            .query_one_error_small(&"nana".bytes().map(u32::from).collect::<Vec<_>>())
            .unwrap();
        let mut expect = vec![(3, 4), (1, 4), (2, 3), (4, 3), (3, 3), (2, 5)];
        expect.sort_unstable();
        assert_eq!(pairs(&got), expect);
    }

    #[test]
    fn pattern_validation() {
        let eng = engine(b"banana", 3);
        assert_eq!(eng.query_codes(&[]).unwrap_err(), Error::EmptyPattern);
        assert_eq!(
            eng.query_codes(&[1, 1, 1, 1]).unwrap_err(),
            Error::PatternTooLong { len: 4, max: 3 }
        );
        let z = eng.text().unknown();
        assert!(eng.query_codes(&[z, z, z]).unwrap().0.is_empty());
        let whole = engine(b"abc", 3);
        let q = whole.text().encode_bytes(b"abc");
        assert!(pairs(&whole.query_codes(&q).unwrap().0).contains(&(1, 3)));
    }

    #[test]
    fn check_occurrence_matches_direct_compare() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..30 {
            let n = rng.gen_range(1..80);
            let raw: Vec<u8> = (0..n).map(|_| b'a' + rng.gen_range(0..3)).collect();
            let eng = engine(&raw, 10);
            let t = eng.text();
            for _ in 0..300 {
                let m = rng.gen_range(1..=10);
                let q: Vec<Code> = if rng.gen_bool(0.5) && m <= n {
                    let s = rng.gen_range(0..=n - m);
                    t.codes()[s..s + m].to_vec()
                } else {
                    (0..m)
                        .map(|_| rng.gen_range(1..=t.sigma() as Code + 1))
                        .collect()
                };
                let ctx = eng.context(&q).unwrap();
                let cands = eng.candidate_edits(&q);
                for _ in 0..10 {
                    let e = cands[rng.gen_range(0..cands.len())];
                    let p = apply_edit(&q, &e);
                    let j = rng.gen_range(0..=n + 1);
                    let direct = !p.is_empty()
                        && j >= 1
                        && j + p.len() - 1 <= n
                        && t.codes()[j - 1..j - 1 + p.len()] == p[..];
                    assert_eq!(eng.check_occurrence(&ctx, &e, j), direct, "{e} at {j}");
                }
            }
        }
    }

    #[test]
    fn oracle_equivalence_small_texts() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        for _ in 0..60 {
            let n = rng.gen_range(1..120);
            let sigma = rng.gen_range(1..5);
            let raw: Vec<u8> = (0..n).map(|_| b'a' + rng.gen_range(0..sigma)).collect();
            let eng = engine(&raw, 12);
            for _ in 0..20 {
                let m = rng.gen_range(1..=12);
                let q: Vec<u8> = (0..m).map(|_| b'a' + rng.gen_range(0..sigma + 1)).collect();
                let qc = eng.text().encode_bytes(&q);
                let (got, _) = eng.query_codes(&qc).unwrap();
                let expect: Vec<_> = oracle_query(eng.text().codes(), &qc).into_iter().collect();
                assert_eq!(pairs(&got), expect);
                for o in &got {
                    let p = apply_edit(&qc, &o.edit);
                    let s = o.start as usize - 1;
                    assert_eq!(&eng.text().codes()[s..s + p.len()], &p[..]);
                }
            }
        }
    }
}
