use rustc_hash::FxHashMap;

use super::corpus::{Code, TextCorpus, SENTINEL};
use super::index_core::{IndexCore, RangePair};

pub type NodeId = u32;

pub const ROOT: NodeId = 0;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Node {
    pub parent: NodeId,
    /// String depth (length of the path label).
    pub depth: u32,
    /// Suffix-array range of the leaves below.
    pub range: RangePair,
    /// First edge code from the parent; the sentinel for a suffix that ends
    /// exactly at the parent.
    pub code: Code,
    /// Children ordered by first edge code.
    pub children: Vec<NodeId>,
}

impl Node {
    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    pub fn leaf_count(&self) -> usize {
        self.range.width()
    }
}

/// Compacted trie of all suffixes, built from sa + LCP.
///
/// A suffix that is a prefix of another suffix becomes a leaf hanging off the
/// node of equal depth through a sentinel edge; the root may be unary.
#[derive(Debug, Clone)]
pub struct SuffixTree {
    pub nodes: Vec<Node>,
    edges: FxHashMap<(NodeId, Code), NodeId>,
}

pub fn build_suffix_tree(text: &TextCorpus, core: &IndexCore) -> SuffixTree {
    let n = core.len();
    let mut nodes: Vec<Node> = Vec::with_capacity(2 * n);
    let new_node = |nodes: &mut Vec<Node>, depth: u32, lo: u32| {
        nodes.push(Node {
            parent: ROOT,
            depth,
            range: RangePair::new(lo, lo),
            code: SENTINEL,
            children: Vec::new(),
        });
        (nodes.len() - 1) as NodeId
    };
    fn attach(nodes: &mut [Node], parent: NodeId, child: NodeId) {
        nodes[child as usize].parent = parent;
        nodes[parent as usize].children.push(child);
    }
    let root = new_node(&mut nodes, 0, 1);
    let mut stack: Vec<NodeId> = vec![root];
    let mut prev_leaf: Option<NodeId> = None;
    for k in 1..=n {
        let l = if k == 1 { 0 } else { core.lcp[k] };
        let mut pending = prev_leaf;
        while nodes[*stack.last().unwrap() as usize].depth > l {
            let top = stack.pop().unwrap();
            if let Some(p) = pending {
                attach(&mut nodes, top, p);
            }
            nodes[top as usize].range.hi = (k - 1) as u32;
            pending = Some(top);
        }
        let top = *stack.last().unwrap();
        if nodes[top as usize].depth < l {
            let p = pending.expect("a deeper lcp follows a leaf");
            let lo = nodes[p as usize].range.lo;
            let inner = new_node(&mut nodes, l, lo);
            attach(&mut nodes, inner, p);
            stack.push(inner);
        } else if let Some(p) = pending {
            attach(&mut nodes, top, p);
        }
        let pos = core.sa[k] as usize;
        prev_leaf = Some(new_node(&mut nodes, (n + 1 - pos) as u32, k as u32));
    }
    let mut pending = prev_leaf;
    while let Some(top) = stack.pop() {
        if let Some(p) = pending {
            attach(&mut nodes, top, p);
        }
        nodes[top as usize].range.hi = n as u32;
        pending = Some(top);
    }
    let mut edges = FxHashMap::default();
    for v in 0..nodes.len() {
        let d = nodes[v].depth as usize;
        for i in 0..nodes[v].children.len() {
            let c = nodes[v].children[i];
            let first = core.sa[nodes[c as usize].range.lo as usize] as usize + d;
            let code = if nodes[c as usize].depth as usize == d {
                SENTINEL
            } else {
                text.at(first)
            };
            nodes[c as usize].code = code;
            edges.insert((v as NodeId, code), c);
        }
    }
    SuffixTree { nodes, edges }
}

impl SuffixTree {
    #[inline]
    pub fn node(&self, v: NodeId) -> &Node {
        &self.nodes[v as usize]
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Child of `v` whose edge starts with `code`, one hash probe.
    #[inline]
    pub fn child(&self, v: NodeId, code: Code) -> Option<NodeId> {
        self.edges.get(&(v, code)).copied()
    }

    /// Edge character at string depth `d` (1-based) below `v`'s parent edge.
    #[inline]
    pub fn label_char(&self, text: &TextCorpus, core: &IndexCore, v: NodeId, d: usize) -> Code {
        let lo = self.node(v).range.lo as usize;
        text.at(core.sa[lo] as usize + d - 1)
    }

    pub fn leaf_count(&self) -> usize {
        self.node(ROOT).leaf_count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text_core::build_index_core;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn tree(s: &[u8]) -> (TextCorpus, IndexCore, SuffixTree) {
        let t = TextCorpus::from_bytes(s).unwrap();
        let c = build_index_core(&t);
        let st = build_suffix_tree(&t, &c);
        (t, c, st)
    }

    fn internal_depths(st: &SuffixTree) -> Vec<u32> {
        let mut d: Vec<u32> = st
            .nodes
            .iter()
            .filter(|v| !v.is_leaf())
            .map(|v| v.depth)
            .collect();
        d.sort_unstable();
        d
    }

    #[test]
    fn shapes() {
        let (_, _, st) = tree(b"aaa");
        assert_eq!(st.leaf_count(), 3);
        assert_eq!(internal_depths(&st), vec![0, 1, 2]);
        let (_, _, st) = tree(b"ab");
        assert_eq!(st.node(ROOT).children.len(), 2);
        assert!(st.node(ROOT).children.iter().all(|&c| st.node(c).is_leaf()));
        let (_, _, st) = tree(b"banana");
        assert_eq!(internal_depths(&st), vec![0, 1, 2, 3]);
    }

    #[test]
    fn structure_invariants() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..80 {
            let n = rng.gen_range(1..150);
            let raw: Vec<u8> = (0..n).map(|_| b'a' + rng.gen_range(0..3)).collect();
            let (t, c, st) = tree(&raw);
            assert_eq!(st.node(ROOT).range, RangePair::new(1, n as u32));
            let mut leaves = 0;
            for (v, node) in st.nodes.iter().enumerate() {
                if node.is_leaf() {
                    leaves += 1;
                    assert_eq!(node.range.width(), 1);
                    let pos = c.sa[node.range.lo as usize] as usize;
                    assert_eq!(node.depth as usize, n + 1 - pos);
                    continue;
                }
                if v != ROOT as usize {
                    assert!(node.children.len() >= 2);
                }
                let mut next = node.range.lo;
                let mut prev_code = None;
                for &ch in &node.children {
                    let child = st.node(ch);
                    assert_eq!(child.parent as usize, v);
                    assert_eq!(child.range.lo, next);
                    next = child.range.hi + 1;
                    assert!(prev_code < Some(child.code));
                    prev_code = Some(child.code);
                    assert_eq!(st.child(v as NodeId, child.code), Some(ch));
                    // every suffix in the child's range shares its label
                    let label = c.sa[child.range.lo as usize] as usize;
                    for k in child.range.lo..=child.range.hi {
                        let p = c.sa[k as usize] as usize;
                        for d in 0..child.depth as usize {
                            assert_eq!(t.at(p + d), t.at(label + d));
                        }
                    }
                }
                assert_eq!(next, node.range.hi + 1);
            }
            assert_eq!(leaves, n);
        }
    }
}
