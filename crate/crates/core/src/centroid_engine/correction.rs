use crate::poly_hash::TextHasher;
use crate::text_core::{
    compare_modified, modified_lcp, Code, IndexCore, LceOracle, Modification, ModifiedSuffix,
    SuffixTree, TextCorpus, SENTINEL,
};
use crate::weak_prefix::{FactorSet, PrefixSum, WeakPrefixIndex};

use super::colors::ColorReporter;
use super::decomposition::CentroidDecomposition;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TreeKind {
    /// Light character replaced by the heavy one; color (char, pos).
    Sub1,
    /// Light character deleted where the heavy one follows; color (char, pos).
    Del1,
    /// Light character replaced by the wildcard; color char.
    Sub2,
}

pub const TREE_KINDS: [TreeKind; 3] = [TreeKind::Sub1, TreeKind::Del1, TreeKind::Sub2];

/// Color of a type-1 entry.
#[inline]
pub fn encode_color(ch: Code, pos: usize, b: usize) -> u32 {
    ch * (b as u32 + 2) + pos as u32
}

#[inline]
pub fn decode_color(color: u32, b: usize) -> (Code, usize) {
    let base = b as u32 + 2;
    (color / base, (color % base) as usize)
}

/// Sorted entries of one correction tree before hashing.
#[derive(Debug, Clone)]
pub struct TreePlan {
    pub kind: TreeKind,
    pub path: u32,
    pub entries: Vec<ModifiedSuffix>,
    pub colors: Vec<u32>,
    pub set: FactorSet,
}

/// A built correction tree.
#[derive(Debug, Clone)]
pub struct CorrectionTree {
    pub kind: TreeKind,
    pub path: u32,
    /// Modified suffixes in sorted order.
    pub entries: Vec<ModifiedSuffix>,
    pub reporter: ColorReporter,
    pub wps: WeakPrefixIndex,
    pub sums: PrefixSum,
}

impl CorrectionTree {
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Raw (unsorted) entries of the three trees of every path.
pub fn collect_entries(
    text: &TextCorpus,
    core: &IndexCore,
    st: &SuffixTree,
    decomp: &CentroidDecomposition,
    b: usize,
) -> Vec<[Vec<(ModifiedSuffix, u32)>; 3]> {
    let wildcard = text.wildcard();
    let mut out: Vec<[Vec<(ModifiedSuffix, u32)>; 3]> = (0..decomp.paths.len())
        .map(|_| Default::default())
        .collect();
    for (path, p) in decomp.paths.iter().enumerate() {
        let trees = &mut out[path];
        for &v in &p.nodes {
            let Some(h) = decomp.heavy_child(v) else {
                continue;
            };
            let node = st.node(v);
            let pos = node.depth as usize + 1;
            if pos > b {
                continue;
            }
            let heavy = st.node(h).code;
            for &u in &node.children {
                let light = st.node(u);
                if u == h || light.code == SENTINEL {
                    continue;
                }
                let c = light.code;
                for k in light.range.lo..=light.range.hi {
                    let start = core.sa[k as usize];
                    let at = |modification| ModifiedSuffix {
                        start,
                        pos: pos as u32,
                        modification,
                    };
                    if heavy != SENTINEL {
                        trees[0].push((at(Modification::Replace(heavy)), encode_color(c, pos, b)));
                        if text.at(start as usize + pos) == heavy {
                            trees[1].push((at(Modification::Delete), encode_color(c, pos, b)));
                        }
                    }
                    trees[2].push((at(Modification::Replace(wildcard)), c));
                }
            }
        }
    }
    out
}

/// Sorts raw entries by their `width`-prefixes (ties by start) and groups
/// them into a factor set.
pub fn plan_tree(
    text: &TextCorpus,
    core: &IndexCore,
    lce: &LceOracle,
    kind: TreeKind,
    path: u32,
    mut raw: Vec<(ModifiedSuffix, u32)>,
    width: usize,
) -> TreePlan {
    raw.sort_unstable_by(|(a, _), (b, _)| {
        compare_modified(text, core, lce, a, b, width).then(a.start.cmp(&b.start))
    });
    let (entries, colors): (Vec<ModifiedSuffix>, Vec<u32>) = raw.into_iter().unzip();
    let set = FactorSet::from_sorted(width, &entries, |i| {
        modified_lcp(text, core, lce, &entries[i - 1], &entries[i], width)
    });
    TreePlan {
        kind,
        path,
        entries,
        colors,
        set,
    }
}

impl TreePlan {
    pub fn build(
        &self,
        text: &TextCorpus,
        hasher: &TextHasher,
    ) -> Option<(WeakPrefixIndex, PrefixSum)> {
        let wps = WeakPrefixIndex::build(&self.set, text, hasher)?;
        Some((wps, PrefixSum::new(self.set.counts())))
    }

    pub fn into_tree(self, wps: WeakPrefixIndex, sums: PrefixSum) -> CorrectionTree {
        CorrectionTree {
            kind: self.kind,
            path: self.path,
            entries: self.entries,
            reporter: ColorReporter::new(self.colors),
            wps,
            sums,
        }
    }
}

/// Entry totals per tree kind, optionally keeping only positions `<= b`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EntryCounts {
    pub sub1: usize,
    pub del1: usize,
    pub sub2: usize,
}

impl EntryCounts {
    pub fn total(&self) -> usize {
        self.sub1 + self.del1 + self.sub2
    }
}

/// Counts correction-tree entries without building them.
pub fn count_entries(
    text: &TextCorpus,
    core: &IndexCore,
    st: &SuffixTree,
    decomp: &CentroidDecomposition,
    b: Option<usize>,
) -> EntryCounts {
    let mut counts = EntryCounts::default();
    for v in 0..st.len() as u32 {
        let Some(h) = decomp.heavy_child(v) else {
            continue;
        };
        let node = st.node(v);
        let pos = node.depth as usize + 1;
        if b.is_some_and(|b| pos > b) {
            continue;
        }
        let heavy = st.node(h).code;
        for &u in &node.children {
            let light = st.node(u);
            if u == h || light.code == SENTINEL {
                continue;
            }
            let w = light.leaf_count();
            counts.sub2 += w;
            if heavy != SENTINEL {
                counts.sub1 += w;
                counts.del1 += (light.range.lo..=light.range.hi)
                    .filter(|&k| text.at(core.sa[k as usize] as usize + pos) == heavy)
                    .count();
            }
        }
    }
    counts
}
