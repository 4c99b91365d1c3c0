//! Full-text index answering pattern queries at edit distance at most one.
//!
//! Two engines share one text core:
//! - the small engine enumerates every candidate edit and verifies each in
//!   constant time after an `O(log b)` weak prefix search;
//! - the centroid engine walks the pattern along a heavy-path decomposition of
//!   the suffix tree and answers from per-path correction trees, independent of
//!   the alphabet size.

pub mod centroid_engine;
pub mod container;
pub mod engine_small;
pub mod error;
pub mod index;
pub mod oracle;
pub mod poly_hash;
pub mod probes;
pub mod rmq;
pub mod text_core;
pub mod weak_prefix;

pub use error::{Error, Result};
pub use index::{BuildConfig, BuildStats, EngineKind, EngineSet, Index};
