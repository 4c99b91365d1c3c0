//! Text encoding, suffix and prefix arrays, LCP/LCE, suffix tree and the
//! `L`/`R` range arrays shared by both engines.

mod corpus;
mod index_core;
mod lce;
mod suffix_array;
mod suffix_tree;

pub use corpus::{Code, TextCorpus, SENTINEL};
pub use index_core::{build_index_core, compute_l_r, CoreMismatch, IndexCore, RangePair};
pub use lce::{compare_modified, modified_lcp, LceOracle, Modification, ModifiedSuffix};
pub use suffix_array::{build_suffix_array, lcp_array_of, suffix_array_of};
pub use suffix_tree::{build_suffix_tree, Node, NodeId, SuffixTree, ROOT};
