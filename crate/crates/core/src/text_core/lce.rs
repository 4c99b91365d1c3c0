use std::cmp::Ordering;

use super::corpus::{Code, TextCorpus};
use super::index_core::IndexCore;
use crate::rmq::SparseTable;

/// Longest common extension of two text suffixes in constant time.
#[derive(Debug, Clone)]
pub struct LceOracle {
    n: usize,
    rmq: SparseTable,
}

/// Sentinel for "equal forever" (same suffix, or both past the end).
pub const UNBOUNDED: usize = usize::MAX;

impl LceOracle {
    pub fn new(core: &IndexCore) -> Self {
        Self {
            n: core.len(),
            rmq: SparseTable::new(core.lcp.clone()),
        }
    }

    /// Length of the common prefix of suffixes at `i` and `j` (1-based), where
    /// positions beyond `n` denote the infinite sentinel padding.
    #[inline]
    pub fn lce(&self, core: &IndexCore, i: usize, j: usize) -> usize {
        let n = self.n;
        match (i > n, j > n) {
            (true, true) => UNBOUNDED,
            (true, false) | (false, true) => 0,
            _ if i == j => UNBOUNDED,
            _ => {
                let (a, b) = (core.isa[i] as usize, core.isa[j] as usize);
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                self.rmq.min(lo + 1, hi) as usize
            }
        }
    }
}

/// How a suffix is modified at one position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Modification {
    None,
    Replace(Code),
    Delete,
}

/// A text suffix with at most one modification, read with sentinel padding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ModifiedSuffix {
    /// 1-based start of the underlying suffix.
    pub start: u32,
    /// 1-based position of the modification within the suffix.
    pub pos: u32,
    pub modification: Modification,
}

enum Segment {
    /// Text from position `from`, for `run` characters (or unbounded).
    Text {
        from: usize,
        run: usize,
    },
    Char(Code),
}

impl ModifiedSuffix {
    pub fn plain(start: u32) -> Self {
        Self {
            start,
            pos: 0,
            modification: Modification::None,
        }
    }

    /// Character at 0-based offset `t`.
    #[inline]
    pub fn char_at(&self, text: &TextCorpus, t: usize) -> Code {
        match self.segment(t) {
            Segment::Char(c) => c,
            Segment::Text { from, .. } => text.at(from),
        }
    }

    #[inline]
    fn segment(&self, t: usize) -> Segment {
        let s = self.start as usize;
        let p = self.pos as usize;
        match self.modification {
            Modification::None => Segment::Text {
                from: s + t,
                run: UNBOUNDED,
            },
            Modification::Replace(c) => match (t + 1).cmp(&p) {
                Ordering::Less => Segment::Text {
                    from: s + t,
                    run: p - 1 - t,
                },
                Ordering::Equal => Segment::Char(c),
                Ordering::Greater => Segment::Text {
                    from: s + t,
                    run: UNBOUNDED,
                },
            },
            Modification::Delete => {
                if t + 1 < p {
                    Segment::Text {
                        from: s + t,
                        run: p - 1 - t,
                    }
                } else {
                    Segment::Text {
                        from: s + t + 1,
                        run: UNBOUNDED,
                    }
                }
            }
        }
    }

    /// Materializes the first `len` characters, padded with the sentinel.
    pub fn prefix(&self, text: &TextCorpus, len: usize) -> Vec<Code> {
        (0..len).map(|t| self.char_at(text, t)).collect()
    }
}

/// Common prefix length of two modified suffixes, capped at `limit`.
pub fn modified_lcp(
    text: &TextCorpus,
    core: &IndexCore,
    lce: &LceOracle,
    a: &ModifiedSuffix,
    b: &ModifiedSuffix,
    limit: usize,
) -> usize {
    let mut t = 0usize;
    while t < limit {
        match (a.segment(t), b.segment(t)) {
            (Segment::Char(x), Segment::Char(y)) => {
                if x != y {
                    return t;
                }
                t += 1;
            }
            (Segment::Char(x), Segment::Text { from, .. })
            | (Segment::Text { from, .. }, Segment::Char(x)) => {
                if text.at(from) != x {
                    return t;
                }
                t += 1;
            }
            (Segment::Text { from: x, run: rx }, Segment::Text { from: y, run: ry }) => {
                let run = rx.min(ry);
                let l = lce.lce(core, x, y);
                if l < run {
                    return (t + l).min(limit);
                }
                if run == UNBOUNDED {
                    return limit;
                }
                t += run;
            }
        }
    }
    limit
}

/// Orders modified suffixes by their sentinel-padded `limit`-prefixes.
pub fn compare_modified(
    text: &TextCorpus,
    core: &IndexCore,
    lce: &LceOracle,
    a: &ModifiedSuffix,
    b: &ModifiedSuffix,
    limit: usize,
) -> Ordering {
    let l = modified_lcp(text, core, lce, a, b, limit);
    if l >= limit {
        Ordering::Equal
    } else {
        a.char_at(text, l).cmp(&b.char_at(text, l))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text_core::build_index_core;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_mod(rng: &mut ChaCha8Rng, n: usize, sigma: u32) -> ModifiedSuffix {
        let start = rng.gen_range(1..=n) as u32;
        let pos = rng.gen_range(1..=8);
        let modification = match rng.gen_range(0..3) {
            0 => Modification::None,
            1 => Modification::Replace(rng.gen_range(1..=sigma + 1)),
            _ => Modification::Delete,
        };
        ModifiedSuffix {
            start,
            pos,
            modification,
        }
    }

    #[test]
    fn lcp_matches_materialized() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..60 {
            let n = rng.gen_range(1..60);
            let raw: Vec<u8> = (0..n).map(|_| b'a' + rng.gen_range(0..2)).collect();
            let t = TextCorpus::from_bytes(&raw).unwrap();
            let core = build_index_core(&t);
            let lce = LceOracle::new(&core);
            for _ in 0..200 {
                let a = random_mod(&mut rng, n, t.sigma() as u32);
                let b = random_mod(&mut rng, n, t.sigma() as u32);
                let limit = rng.gen_range(1..12);
                let (pa, pb) = (a.prefix(&t, limit), b.prefix(&t, limit));
                let expect = pa.iter().zip(&pb).take_while(|(x, y)| x == y).count();
                assert_eq!(modified_lcp(&t, &core, &lce, &a, &b, limit), expect);
                assert_eq!(
                    compare_modified(&t, &core, &lce, &a, &b, limit),
                    pa.cmp(&pb)
                );
            }
        }
    }

    #[test]
    fn char_at_semantics() {
        let t = TextCorpus::from_bytes(b"abcd").unwrap();
        let rep = ModifiedSuffix {
            start: 1,
            pos: 2,
            modification: Modification::Replace(4),
        };
        assert_eq!(rep.prefix(&t, 6), vec![1, 4, 3, 4, 0, 0]);
        let del = ModifiedSuffix {
            start: 1,
            pos: 2,
            modification: Modification::Delete,
        };
        assert_eq!(del.prefix(&t, 5), vec![1, 3, 4, 0, 0]);
        assert_eq!(ModifiedSuffix::plain(3).prefix(&t, 3), vec![3, 4, 0]);
    }
}
