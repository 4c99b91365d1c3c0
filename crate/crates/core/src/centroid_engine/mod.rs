//! Alphabet-independent engine: centroid-path decomposition of the suffix
//! tree with three correction trees per path.
//!
//! A query walks the pattern down the suffix tree. For every path it touches,
//! the correction trees of that path report the text suffixes that leave the
//! path one character away from the pattern, one distinct color per edit.
//! Deletions and the few edits no tree covers are answered with direct
//! modified-pattern searches of the small engine.

mod colors;
mod correction;
mod decomposition;
mod traversal;

pub use colors::{ColorReporter, DistinctColors};
pub use correction::{
    collect_entries, count_entries, decode_color, encode_color, plan_tree, CorrectionTree,
    EntryCounts, TreeKind, TreePlan, TREE_KINDS,
};
pub use decomposition::{decompose_centroid, CentroidDecomposition, CentroidPath, NO_NODE};
pub use traversal::{traverse_pattern, Exit, PathRecord, PathTraversal};

use crate::engine_small::{factor_width, Occurrence, QueryContext, SmallEngine};
use crate::error::Result;
use crate::poly_hash::{Edit, TextHasher};
use crate::probes::ProbeStats;
use crate::text_core::{
    build_suffix_tree, Code, IndexCore, LceOracle, SuffixTree, TextCorpus, SENTINEL,
};
use crate::weak_prefix::{PrefixSum, WeakPrefixIndex};

/// The three correction trees of one centroid path.
#[derive(Debug, Clone)]
pub struct PathTrees {
    pub sub1: CorrectionTree,
    pub del1: CorrectionTree,
    pub sub2: CorrectionTree,
}

/// Hash-independent part of a centroid engine build.
#[derive(Debug, Clone)]
pub struct CentroidPlan {
    pub tree: SuffixTree,
    pub decomp: CentroidDecomposition,
    /// Non-empty paths with their Sub1, Del1, Sub2 plans.
    pub paths: Vec<(u32, [TreePlan; 3])>,
    pub b: usize,
}

/// Per-tree hashed structures produced under one seed.
pub type HashedTrees = Vec<[(WeakPrefixIndex, PrefixSum); 3]>;

impl CentroidPlan {
    pub fn new(text: &TextCorpus, core: &IndexCore, b: usize) -> Self {
        let tree = build_suffix_tree(text, core);
        let decomp = decompose_centroid(&tree);
        let lce = LceOracle::new(core);
        let width = factor_width(b);
        let mut paths = Vec::new();
        for (path, raw) in collect_entries(text, core, &tree, &decomp, b)
            .into_iter()
            .enumerate()
        {
            if raw.iter().all(Vec::is_empty) {
                continue;
            }
            let [s1, d1, s2] = raw;
            let plan = |kind, raw| plan_tree(text, core, &lce, kind, path as u32, raw, width);
            paths.push((
                path as u32,
                [
                    plan(TreeKind::Sub1, s1),
                    plan(TreeKind::Del1, d1),
                    plan(TreeKind::Sub2, s2),
                ],
            ));
        }
        Self {
            tree,
            decomp,
            paths,
            b,
        }
    }

    pub fn entry_count(&self) -> usize {
        self.paths
            .iter()
            .flat_map(|(_, t)| t.iter())
            .map(|t| t.entries.len())
            .sum()
    }

    /// Hashed structures of every tree, `None` on a collision.
    pub fn hash_trees(&self, text: &TextCorpus, hasher: &TextHasher) -> Option<HashedTrees> {
        let mut out = Vec::with_capacity(self.paths.len());
        for (_, trees) in &self.paths {
            let [a, b, c] = trees;
            out.push([
                a.build(text, hasher)?,
                b.build(text, hasher)?,
                c.build(text, hasher)?,
            ]);
        }
        Some(out)
    }

    pub fn into_engine(self, hashed: HashedTrees) -> CentroidEngine {
        let mut trees: Vec<Option<Box<PathTrees>>> = Vec::new();
        trees.resize_with(self.decomp.paths.len(), || None);
        for ((path, plans), built) in self.paths.into_iter().zip(hashed) {
            let [p1, p2, p3] = plans;
            let [h1, h2, h3] = built;
            trees[path as usize] = Some(Box::new(PathTrees {
                sub1: p1.into_tree(h1.0, h1.1),
                del1: p2.into_tree(h2.0, h2.1),
                sub2: p3.into_tree(h3.0, h3.1),
            }));
        }
        CentroidEngine {
            tree: self.tree,
            decomp: self.decomp,
            trees,
            b: self.b,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CentroidEngine {
    tree: SuffixTree,
    decomp: CentroidDecomposition,
    trees: Vec<Option<Box<PathTrees>>>,
    b: usize,
}

/// Shape of a type-2 query: the wildcard substitutes or is inserted at `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum WildForm {
    Substitution,
    Insertion,
}

impl CentroidEngine {
    pub fn tree(&self) -> &SuffixTree {
        &self.tree
    }

    pub fn decomposition(&self) -> &CentroidDecomposition {
        &self.decomp
    }

    pub fn path_trees(&self, path: u32) -> Option<&PathTrees> {
        self.trees[path as usize].as_deref()
    }

    pub fn entry_count(&self) -> usize {
        self.trees
            .iter()
            .flatten()
            .map(|t| t.sub1.entries.len() + t.del1.entries.len() + t.sub2.entries.len())
            .sum()
    }

    /// All matches of the encoded pattern, sorted by (start, length).
    pub fn query_codes(
        &self,
        small: &SmallEngine,
        q: &[Code],
    ) -> Result<(Vec<Occurrence>, ProbeStats)> {
        let ctx = small.context(q)?;
        let mut out = Vec::new();
        self.query_into(small, &ctx, &mut out);
        out.sort_unstable_by_key(|o| (o.start, o.length));
        debug_assert!(
            out.windows(2)
                .all(|w| (w[0].start, w[0].length) != (w[1].start, w[1].length)),
            "overlapping results: {out:?}"
        );
        out.dedup_by_key(|o| (o.start, o.length));
        Ok((out, ctx.probes.stats()))
    }

    pub fn query_one_error_large(&self, small: &SmallEngine, q: &[u32]) -> Result<Vec<Occurrence>> {
        Ok(self.query_codes(small, &small.text().encode_pattern(q))?.0)
    }

    fn query_into(&self, small: &SmallEngine, ctx: &QueryContext, out: &mut Vec<Occurrence>) {
        let m = ctx.m();
        let text = small.text();
        let core = small.core();
        let n = core.len();
        // exact matches, and insertions appended after the pattern
        let exact = ctx.r[1];
        small.report(ctx, exact, &Edit::Exact, out);
        if !exact.is_empty() {
            ctx.probes.array(2 * exact.width() as u64);
            for k in exact.lo..=exact.hi {
                let j = core.sa[k as usize] as usize;
                if j + m <= n {
                    let ch = text.at(j + m);
                    out.push(Occurrence {
                        start: j as u32,
                        length: m as u32 + 1,
                        edit: Edit::Insertion {
                            pos: m as u32 + 1,
                            ch,
                        },
                    });
                }
            }
        }
        if m >= 2 {
            for i in 1..=m {
                if i == 1 || ctx.q(i - 1) != ctx.q(i) {
                    let e = Edit::Deletion { pos: i as u32 };
                    small.report(ctx, small.locate(ctx, &e), &e, out);
                }
            }
        }
        let walk = traverse_pattern(
            text,
            core,
            &self.tree,
            &self.decomp,
            ctx.hashes.pattern(),
            &ctx.probes,
        );
        for rec in &walk.records {
            let trees = self.trees[rec.path as usize].as_deref();
            if let Some(trees) = trees {
                if rec.depth > rec.top_depth {
                    self.query_type1(small, ctx, &trees.sub1, rec, out);
                    self.query_type1(small, ctx, &trees.del1, rec, out);
                }
            }
            let k = rec.depth + 1;
            match rec.exit {
                Exit::Branching { heavy } => {
                    if let Some(trees) = trees {
                        for form in [WildForm::Substitution, WildForm::Insertion] {
                            self.query_type2(small, ctx, &trees.sub2, rec, heavy, form, out);
                        }
                    }
                    if heavy != SENTINEL {
                        for e in [
                            Edit::Substitution { pos: k, ch: heavy },
                            Edit::Insertion { pos: k, ch: heavy },
                        ] {
                            small.report(ctx, small.locate(ctx, &e), &e, out);
                        }
                    }
                }
                Exit::MidEdge { next: Some(c) } => {
                    for e in [
                        Edit::Substitution { pos: k, ch: c },
                        Edit::Insertion { pos: k, ch: c },
                    ] {
                        small.report(ctx, small.locate(ctx, &e), &e, out);
                    }
                }
                Exit::MidEdge { next: None } | Exit::Exhausted => {}
            }
        }
    }

    /// Sub1 / Del1: the pattern itself against suffixes modified above the
    /// point where it leaves the path.
    fn query_type1(
        &self,
        small: &SmallEngine,
        ctx: &QueryContext,
        tree: &CorrectionTree,
        rec: &PathRecord,
        out: &mut Vec<Occurrence>,
    ) {
        if tree.is_empty() {
            return;
        }
        let m = ctx.m();
        let members = tree.wps.query(m, |l| ctx.hashes.pre(l), &ctx.probes);
        if members.is_empty() {
            return;
        }
        let depth = rec.depth as usize;
        let edit = |ch: Code, pos: usize| match tree.kind {
            TreeKind::Del1 => Edit::Insertion {
                pos: pos as u32,
                ch,
            },
            _ => Edit::Substitution {
                pos: pos as u32,
                ch,
            },
        };
        // preliminary: validate the first entry of the range
        ctx.probes.array(2);
        let lo = tree.sums.first(members) as usize;
        let (ch, pos) = decode_color(tree.reporter.color(lo), self.b);
        if pos > depth {
            // modified below the pattern's end: the entry must start with q
            let start = tree.entries[lo - 1].start as usize;
            ctx.probes.array(2);
            if rec.exit != Exit::Exhausted || !ctx.r[1].contains(small.core().isa[start]) {
                return;
            }
        } else if ch == ctx.q(pos) || small.locate(ctx, &edit(ch, pos)).is_empty() {
            return;
        }
        ctx.probes.array(1);
        let hi = tree.sums.last(members) as usize;
        for color in tree.reporter.distinct(lo, hi, &ctx.probes) {
            let (ch, pos) = decode_color(color, self.b);
            if pos > depth {
                continue;
            }
            if ch == ctx.q(pos) {
                break;
            }
            let e = edit(ch, pos);
            small.report(ctx, small.locate(ctx, &e), &e, out);
        }
    }

    /// Sub2: the pattern with a wildcard substituted at, or inserted before,
    /// the divergence position.
    #[allow(clippy::too_many_arguments)]
    fn query_type2(
        &self,
        small: &SmallEngine,
        ctx: &QueryContext,
        tree: &CorrectionTree,
        rec: &PathRecord,
        heavy: Code,
        form: WildForm,
        out: &mut Vec<Occurrence>,
    ) {
        if tree.is_empty() {
            return;
        }
        let k = rec.depth + 1;
        let wildcard = small.text().wildcard();
        let (query, edit): (Edit, fn(u32, Code) -> Edit) = match form {
            WildForm::Substitution => (
                Edit::Substitution {
                    pos: k,
                    ch: wildcard,
                },
                |pos, ch| Edit::Substitution { pos, ch },
            ),
            WildForm::Insertion => (
                Edit::Insertion {
                    pos: k,
                    ch: wildcard,
                },
                |pos, ch| Edit::Insertion { pos, ch },
            ),
        };
        let plen = query.result_len(ctx.m());
        let members = tree
            .wps
            .query(plen, |l| ctx.hashes.edited_prefix(&query, l), &ctx.probes);
        if members.is_empty() {
            return;
        }
        ctx.probes.array(2);
        let lo = tree.sums.first(members) as usize;
        let first = tree.reporter.color(lo);
        if first == heavy || small.locate(ctx, &edit(k, first)).is_empty() {
            return;
        }
        ctx.probes.array(1);
        let hi = tree.sums.last(members) as usize;
        for ch in tree.reporter.distinct(lo, hi, &ctx.probes) {
            if ch == rec.pattern_char || ch == heavy {
                continue;
            }
            let e = edit(k, ch);
            small.report(ctx, small.locate(ctx, &e), &e, out);
        }
    }
}
