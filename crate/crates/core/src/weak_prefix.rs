//! Weak prefix search over sorted fixed-width strings, and the prefix sums
//! that turn member ranges into suffix ranges.
//!
//! The search is a fat binary search over prefix lengths on the compacted trie
//! of the members, in the style of a z-fast trie: every trie node stores its
//! *handle* (its prefix whose length is the 2-fattest number in its skip
//! interval) and its *name* (its prefix one past the parent's extent), both
//! keyed by `(length, hash)`.

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::poly_hash::TextHasher;
use crate::probes::Probes;
use crate::text_core::{Code, IndexCore, ModifiedSuffix, RangePair, TextCorpus};

/// Sorted distinct fixed-width strings with multiplicities. Members are held
/// as modified suffixes of the text, read with sentinel padding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorSet {
    width: usize,
    reps: Vec<ModifiedSuffix>,
    /// Common prefix with the previous member; `lcps[0] = 0`.
    lcps: Vec<u32>,
    counts: Vec<u32>,
}

impl FactorSet {
    /// Groups sorted entries whose `width`-prefixes coincide. `entry_lcp(i)`
    /// gives the common prefix of entries `i - 1` and `i`, capped at `width`.
    pub fn from_sorted(
        width: usize,
        entries: &[ModifiedSuffix],
        mut entry_lcp: impl FnMut(usize) -> usize,
    ) -> Self {
        let mut reps = Vec::new();
        let mut lcps = Vec::new();
        let mut counts: Vec<u32> = Vec::new();
        for (i, e) in entries.iter().enumerate() {
            let l = if i == 0 { 0 } else { entry_lcp(i) };
            if i > 0 && l >= width {
                *counts.last_mut().unwrap() += 1;
            } else {
                reps.push(*e);
                lcps.push(l as u32);
                counts.push(1);
            }
        }
        Self {
            width,
            reps,
            lcps,
            counts,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn reps(&self) -> &[ModifiedSuffix] {
        &self.reps
    }

    /// Member `i` (1-based), materialized.
    pub fn member(&self, text: &TextCorpus, i: usize) -> Vec<Code> {
        self.reps[i - 1].prefix(text, self.width)
    }
}

/// The distinct `width`-prefixes of all suffixes, sentinel-padded.
pub fn build_factor_set(core: &IndexCore, width: usize) -> FactorSet {
    let entries: Vec<ModifiedSuffix> = core.sa[1..]
        .iter()
        .map(|&p| ModifiedSuffix::plain(p))
        .collect();
    FactorSet::from_sorted(width, &entries, |i| (core.lcp[i + 1] as usize).min(width))
}

/// Cumulative member counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixSum {
    cum: Vec<u64>,
}

impl PrefixSum {
    pub fn new(counts: &[u32]) -> Self {
        let mut cum = Vec::with_capacity(counts.len() + 1);
        cum.push(0);
        for &c in counts {
            cum.push(cum.last().unwrap() + c as u64);
        }
        Self { cum }
    }

    pub fn total(&self) -> u64 {
        *self.cum.last().unwrap()
    }

    /// Entry ranks covered by members `l0..=r0` (1-based).
    pub fn prefix_sum_range(&self, l0: usize, r0: usize) -> Result<RangePair> {
        let len = self.cum.len() - 1;
        if l0 == 0 || l0 > r0 || r0 > len {
            return Err(Error::RangeOutOfBounds {
                lo: l0,
                hi: r0,
                len,
            });
        }
        Ok(self.range(RangePair::new(l0 as u32, r0 as u32)))
    }

    /// Unchecked form for a non-empty in-bounds member range.
    #[inline]
    pub fn range(&self, members: RangePair) -> RangePair {
        RangePair::new(self.first(members), self.last(members))
    }

    /// First entry rank of a non-empty member range.
    #[inline]
    pub fn first(&self, members: RangePair) -> u32 {
        self.cum[members.lo as usize - 1] as u32 + 1
    }

    #[inline]
    pub fn last(&self, members: RangePair) -> u32 {
        self.cum[members.hi as usize] as u32
    }
}

#[derive(Debug, Clone, Copy)]
struct TrieNode {
    extent: u32,
    handle_len: u32,
    range: RangePair,
}

/// Weak prefix search structure over a [`FactorSet`].
#[derive(Debug, Clone)]
pub struct WeakPrefixIndex {
    width: usize,
    root_extent: u32,
    members: u32,
    nodes: Vec<TrieNode>,
    map: FxHashMap<(u32, u64), u32>,
}

/// The number with the most trailing zeros in `[x, y]`.
#[inline]
pub fn two_fattest(x: u32, y: u32) -> u32 {
    debug_assert!(x <= y);
    if x == 0 {
        return 0;
    }
    if x == y {
        return x;
    }
    let d = 31 - (x ^ y).leading_zeros();
    if x & ((2u32 << d) - 1) == 0 {
        return x;
    }
    y & !((1u32 << d) - 1)
}

struct Shape {
    depth: u32,
    parent_depth: u32,
    range: RangePair,
}

/// Compacted trie shape from member lcps. Node 0 is the root.
fn trie_shape(set: &FactorSet) -> Vec<Shape> {
    let m = set.len();
    let width = set.width as u32;
    let root_depth = if m == 1 {
        width
    } else {
        set.lcps[1..].iter().copied().min().unwrap()
    };
    let mut nodes = vec![Shape {
        depth: root_depth,
        parent_depth: 0,
        range: RangePair::new(1, m as u32),
    }];
    if m == 1 {
        return nodes;
    }
    let mut stack: Vec<usize> = vec![0];
    let mut prev_leaf: Option<usize> = None;
    let attach = |nodes: &mut Vec<Shape>, parent: usize, child: usize| {
        nodes[child].parent_depth = nodes[parent].depth;
    };
    for i in 1..=m {
        let l = if i == 1 { root_depth } else { set.lcps[i - 1] };
        let mut pending = prev_leaf;
        while nodes[*stack.last().unwrap()].depth > l {
            let top = stack.pop().unwrap();
            if let Some(p) = pending {
                attach(&mut nodes, top, p);
            }
            nodes[top].range.hi = (i - 1) as u32;
            pending = Some(top);
        }
        let top = *stack.last().unwrap();
        if nodes[top].depth < l {
            let p = pending.expect("deeper lcp follows a leaf");
            nodes.push(Shape {
                depth: l,
                parent_depth: 0,
                range: RangePair::new(nodes[p].range.lo, 0),
            });
            let inner = nodes.len() - 1;
            attach(&mut nodes, inner, p);
            stack.push(inner);
        } else if let Some(p) = pending {
            attach(&mut nodes, top, p);
        }
        nodes.push(Shape {
            depth: width,
            parent_depth: 0,
            range: RangePair::new(i as u32, i as u32),
        });
        prev_leaf = Some(nodes.len() - 1);
    }
    let mut pending = prev_leaf;
    while let Some(top) = stack.pop() {
        if let Some(p) = pending {
            attach(&mut nodes, top, p);
        }
        if top != 0 {
            nodes[top].range.hi = m as u32;
        }
        pending = Some(top);
    }
    nodes
}

impl WeakPrefixIndex {
    /// Builds the structure, or `None` if some member prefix collides with a
    /// stored key of a different string under the hasher's parameters.
    pub fn build(set: &FactorSet, text: &TextCorpus, hasher: &TextHasher) -> Option<Self> {
        let width = set.width;
        if set.is_empty() {
            return Some(Self {
                width,
                root_extent: 0,
                members: 0,
                nodes: Vec::new(),
                map: FxHashMap::default(),
            });
        }
        let shape = trie_shape(set);
        let mut nodes = Vec::with_capacity(shape.len());
        let mut map: FxHashMap<(u32, u64), u32> = FxHashMap::default();
        map.reserve(2 * shape.len());
        for (id, s) in shape.iter().enumerate() {
            let handle_len = if id == 0 {
                0
            } else {
                two_fattest(s.parent_depth + 1, s.depth)
            };
            nodes.push(TrieNode {
                extent: s.depth,
                handle_len,
                range: s.range,
            });
            if id == 0 {
                continue;
            }
            let rep = &set.reps[s.range.lo as usize - 1];
            for len in [handle_len, s.parent_depth + 1] {
                let key = (len, hasher.modified_prefix(rep, len as usize));
                match map.insert(key, id as u32) {
                    Some(other) if other != id as u32 => return None,
                    _ => {}
                }
            }
        }
        // every distinct member prefix must miss the keys of other strings
        let params = hasher.params();
        for (i, rep) in set.reps.iter().enumerate() {
            let rank = i as u32 + 1;
            let from = set.lcps[i] as usize;
            let mut h = hasher.modified_prefix(rep, from);
            for len in from + 1..=width {
                let c = rep.char_at(text, len - 1);
                h = params.add(h, params.mul(c as u64, hasher.pow(len)));
                if let Some(&node) = map.get(&(len as u32, h)) {
                    if !nodes[node as usize].range.contains(rank) {
                        return None;
                    }
                }
            }
        }
        Some(Self {
            width,
            root_extent: shape[0].depth,
            members: set.len() as u32,
            nodes,
            map,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn members(&self) -> usize {
        self.members as usize
    }

    /// Map-probe budget of a single query.
    pub fn probe_budget(&self) -> u64 {
        (usize::BITS - 1 - self.width.max(1).leading_zeros()) as u64 + 2
    }

    /// Member range prefixed by the implicit query string of length `plen`
    /// whose prefix hashes `prefix_hash(len)` supplies. Exact when that string
    /// prefixes some member; otherwise arbitrary (possibly empty).
    pub fn query(
        &self,
        plen: usize,
        prefix_hash: impl Fn(usize) -> u64,
        probes: &Probes,
    ) -> RangePair {
        if self.members == 0 || plen > self.width {
            probes.wps(0);
            return RangePair::EMPTY;
        }
        let plen = plen as u32;
        if plen <= self.root_extent {
            probes.wps(0);
            return RangePair::new(1, self.members);
        }
        let mut count = 0u64;
        let (mut lo, mut hi) = (self.root_extent, plen);
        while hi - lo > 1 {
            let f = two_fattest(lo + 1, hi - 1);
            count += 1;
            match self.map.get(&(f, prefix_hash(f as usize))) {
                Some(&id) => {
                    let node = &self.nodes[id as usize];
                    if node.handle_len == f && node.extent >= f && node.extent < plen {
                        lo = node.extent;
                    } else {
                        hi = f;
                    }
                }
                None => hi = f,
            }
        }
        count += 1;
        // the exit node must reach past the query
        let out = match self.map.get(&(lo + 1, prefix_hash(lo as usize + 1))) {
            Some(&id) if self.nodes[id as usize].extent >= plen => self.nodes[id as usize].range,
            _ => RangePair::EMPTY,
        };
        probes.wps(count);
        debug_assert!(count <= self.probe_budget());
        out
    }
}
