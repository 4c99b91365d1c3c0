use crate::text_core::{Code, NodeId, SuffixTree, ROOT};

pub const NO_NODE: NodeId = NodeId::MAX;

/// A maximal heavy chain together with its entering light edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentroidPath {
    /// Nodes from the top of the path down to its leaf.
    pub nodes: Vec<NodeId>,
}

/// Heavy-path decomposition of the suffix tree by leaf count.
#[derive(Debug, Clone)]
pub struct CentroidDecomposition {
    /// Heavy child per node, [`NO_NODE`] for leaves.
    pub heavy: Vec<NodeId>,
    pub path_of: Vec<u32>,
    pub depth_in_path: Vec<u32>,
    pub paths: Vec<CentroidPath>,
}

/// Heavy child = most leaves; ties go to the smallest first-edge code.
pub fn decompose_centroid(st: &SuffixTree) -> CentroidDecomposition {
    let len = st.len();
    let mut heavy = vec![NO_NODE; len];
    let mut path_of = vec![0u32; len];
    let mut depth_in_path = vec![0u32; len];
    let mut paths = vec![CentroidPath { nodes: Vec::new() }];
    let mut stack = vec![ROOT];
    while let Some(v) = stack.pop() {
        let p = path_of[v as usize];
        depth_in_path[v as usize] = paths[p as usize].nodes.len() as u32;
        paths[p as usize].nodes.push(v);
        let node = st.node(v);
        let mut best: Option<NodeId> = None;
        for &c in &node.children {
            if best.is_none_or(|b| st.node(c).leaf_count() > st.node(b).leaf_count()) {
                best = Some(c);
            }
        }
        let Some(h) = best else { continue };
        heavy[v as usize] = h;
        for &c in node.children.iter().rev() {
            if c == h {
                path_of[c as usize] = p;
            } else {
                path_of[c as usize] = paths.len() as u32;
                paths.push(CentroidPath { nodes: Vec::new() });
            }
            stack.push(c);
        }
    }
    CentroidDecomposition {
        heavy,
        path_of,
        depth_in_path,
        paths,
    }
}

impl CentroidDecomposition {
    pub fn heavy_child(&self, v: NodeId) -> Option<NodeId> {
        let h = self.heavy[v as usize];
        (h != NO_NODE).then_some(h)
    }

    /// First code of the heavy edge below `v` (the branching character).
    pub fn heavy_code(&self, st: &SuffixTree, v: NodeId) -> Option<Code> {
        self.heavy_child(v).map(|h| st.node(h).code)
    }

    pub fn path_top(&self, path: u32) -> NodeId {
        self.paths[path as usize].nodes[0]
    }

    /// Largest number of light edges on any root-to-leaf walk.
    pub fn max_light_edges(&self, st: &SuffixTree) -> usize {
        let mut light = vec![0u32; st.len()];
        let mut best = 0;
        let mut stack = vec![ROOT];
        while let Some(v) = stack.pop() {
            let node = st.node(v);
            if node.is_leaf() {
                best = best.max(light[v as usize] as usize);
            }
            for &c in &node.children {
                light[c as usize] = light[v as usize] + u32::from(self.heavy[v as usize] != c);
                stack.push(c);
            }
        }
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text_core::{build_index_core, build_suffix_tree, TextCorpus};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn decomposed(raw: &[u8]) -> (SuffixTree, CentroidDecomposition) {
        let t = TextCorpus::from_bytes(raw).unwrap();
        let c = build_index_core(&t);
        let st = build_suffix_tree(&t, &c);
        let d = decompose_centroid(&st);
        (st, d)
    }

    #[test]
    fn path_shaped_tree() {
        // chain root -> a -> aa; the tie at aa goes to its sentinel leaf
        let (st, d) = decomposed(b"aaa");
        assert_eq!(d.paths.len(), 3);
        let main = &d.paths[0].nodes;
        assert_eq!(main.len(), 4);
        assert_eq!(st.node(main[3]).code, 0);
        for p in &d.paths[1..] {
            assert_eq!(p.nodes.len(), 1);
            assert!(st.node(p.nodes[0]).is_leaf());
        }
    }

    #[test]
    fn star_tree_tie_break() {
        let (st, d) = decomposed(b"abc");
        let h = d.heavy_child(ROOT).unwrap();
        assert_eq!(st.node(h).code, 1);
        assert_eq!(d.paths.len(), 3);
    }

    #[test]
    fn paths_partition_and_light_bound() {
        let mut rng = ChaCha8Rng::seed_from_u64(51);
        for _ in 0..40 {
            let n = rng.gen_range(1..400);
            let sigma = rng.gen_range(1..4);
            let raw: Vec<u8> = (0..n).map(|_| b'a' + rng.gen_range(0..sigma)).collect();
            let (st, d) = decomposed(&raw);
            let mut seen = vec![0; st.len()];
            for (id, p) in d.paths.iter().enumerate() {
                assert!(st.node(*p.nodes.last().unwrap()).is_leaf());
                for (k, &v) in p.nodes.iter().enumerate() {
                    seen[v as usize] += 1;
                    assert_eq!(d.path_of[v as usize] as usize, id);
                    assert_eq!(d.depth_in_path[v as usize] as usize, k);
                    if k > 0 {
                        assert_eq!(d.heavy[p.nodes[k - 1] as usize], v);
                    }
                }
                if id > 0 {
                    let top = p.nodes[0];
                    assert_ne!(d.heavy[st.node(top).parent as usize], top);
                }
            }
            assert!(seen.iter().all(|&s| s == 1));
            let leaves = st.leaf_count();
            assert!(d.max_light_edges(&st) <= leaves.ilog2() as usize);
        }
    }
}
