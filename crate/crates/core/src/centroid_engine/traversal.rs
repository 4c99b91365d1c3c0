use crate::probes::Probes;
use crate::text_core::{Code, IndexCore, SuffixTree, TextCorpus, ROOT};

use super::decomposition::CentroidDecomposition;

/// How the pattern's walk leaves a centroid path.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    /// At a branching node whose heavy edge starts with `heavy` (the sentinel
    /// when the heavy child is a sentinel leaf); the walk continues on a light
    /// edge or stops when no edge matches.
    Branching { heavy: Code },
    /// Inside an edge, where the edge continues with `next` (`None` at the end
    /// of a leaf).
    MidEdge { next: Option<Code> },
    /// The whole pattern matched.
    Exhausted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PathRecord {
    pub path: u32,
    /// String depth of the path's top node.
    pub top_depth: u32,
    /// Pattern characters matched when the walk leaves the path.
    pub depth: u32,
    /// Pattern character at `depth + 1`; the sentinel when exhausted.
    pub pattern_char: Code,
    pub exit: Exit,
}

/// Paths touched by the pattern's suffix-tree walk, in walk order. The exit of
/// the last record is the terminal state.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PathTraversal {
    pub records: Vec<PathRecord>,
}

/// Walks `q` (0-based slice) from the root, recording every path change.
pub fn traverse_pattern(
    text: &TextCorpus,
    core: &IndexCore,
    st: &SuffixTree,
    decomp: &CentroidDecomposition,
    q: &[Code],
    probes: &Probes,
) -> PathTraversal {
    let m = q.len();
    let mut records = Vec::new();
    let mut v = ROOT;
    let mut path = decomp.path_of[ROOT as usize];
    let record = |records: &mut Vec<PathRecord>, path: u32, depth: usize, exit: Exit| {
        let top = decomp.path_top(path);
        records.push(PathRecord {
            path,
            top_depth: st.node(top).depth,
            depth: depth as u32,
            pattern_char: if depth < m { q[depth] } else { 0 },
            exit,
        });
    };
    loop {
        let d = st.node(v).depth as usize;
        if d == m {
            record(&mut records, path, m, Exit::Exhausted);
            break;
        }
        let Some(heavy) = decomp.heavy_child(v) else {
            record(&mut records, path, d, Exit::MidEdge { next: None });
            break;
        };
        probes.hash(1);
        let child = st.child(v, q[d]);
        if child != Some(heavy) {
            record(
                &mut records,
                path,
                d,
                Exit::Branching {
                    heavy: st.node(heavy).code,
                },
            );
            match child {
                Some(u) => path = decomp.path_of[u as usize],
                None => break,
            }
        }
        let u = child.unwrap();
        let du = st.node(u).depth as usize;
        #[allow(clippy::needless_range_loop)]
        for x in d + 1..du {
            if x == m {
                record(&mut records, path, m, Exit::Exhausted);
                return PathTraversal { records };
            }
            probes.array(2);
            let ec = st.label_char(text, core, u, x + 1);
            if ec != q[x] {
                record(&mut records, path, x, Exit::MidEdge { next: Some(ec) });
                return PathTraversal { records };
            }
        }
        v = u;
    }
    PathTraversal { records }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::centroid_engine::decomposition::decompose_centroid;
    use crate::text_core::{build_index_core, build_suffix_tree};

    fn walk(raw: &[u8], q: &[u8]) -> (TextCorpus, PathTraversal) {
        let t = TextCorpus::from_bytes(raw).unwrap();
        let c = build_index_core(&t);
        let st = build_suffix_tree(&t, &c);
        let d = decompose_centroid(&st);
        let tr = traverse_pattern(&t, &c, &st, &d, &t.encode_bytes(q), &Probes::new());
        (t, tr)
    }

    #[test]
    fn banana_nana() {
        // root: a (3 leaves, heavy), b, na (2 leaves); at "na" the sentinel
        // leaf wins the tie, so "nana" changes path twice
        let (t, tr) = walk(b"banana", b"nana");
        assert_eq!(tr.records.len(), 3);
        let first = tr.records[0];
        assert_eq!(first.depth, 0);
        assert_eq!(first.pattern_char, t.encode(b'n' as u32));
        assert_eq!(
            first.exit,
            Exit::Branching {
                heavy: t.encode(b'a' as u32)
            }
        );
        assert_eq!(tr.records[1].depth, 2);
        assert_eq!(tr.records[1].exit, Exit::Branching { heavy: 0 });
        let last = tr.records[2];
        assert_eq!(last.exit, Exit::Exhausted);
        assert_eq!(last.depth, 4);
    }

    #[test]
    fn absent_first_symbol() {
        let (_, tr) = walk(b"banana", b"zz");
        assert_eq!(tr.records.len(), 1);
        assert_eq!(tr.records[0].depth, 0);
        assert!(matches!(tr.records[0].exit, Exit::Branching { .. }));
    }

    #[test]
    fn full_suffix_is_exhausted() {
        let (_, tr) = walk(b"abracadabra", b"racadabra");
        assert_eq!(tr.records.last().unwrap().exit, Exit::Exhausted);
        let (_, tr) = walk(b"abracadabra", b"racadabrax");
        assert_eq!(
            tr.records.last().unwrap().exit,
            Exit::MidEdge { next: None }
        );
    }

    #[test]
    fn mid_edge_mismatch() {
        let (t, tr) = walk(b"abcabd", b"abx");
        let last = tr.records.last().unwrap();
        assert_eq!(last.depth, 2);
        assert_eq!(last.pattern_char, t.encode(b'x' as u32));
        // "ab" is a branching node, so the mismatch happens at a node
        assert!(matches!(last.exit, Exit::Branching { .. }));
        let (t, tr) = walk(b"abcabd", b"acx");
        let last = tr.records.last().unwrap();
        assert_eq!(last.depth, 1);
        assert_eq!(
            last.exit,
            Exit::MidEdge {
                next: Some(t.encode(b'b' as u32))
            }
        );
    }
}
