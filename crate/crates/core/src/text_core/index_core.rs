use std::cmp::Ordering;

use super::corpus::{Code, TextCorpus};
use super::suffix_array::{lcp_array_of, suffix_array_of};

/// Inclusive 1-based rank interval; empty when `lo > hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RangePair {
    pub lo: u32,
    pub hi: u32,
}

impl RangePair {
    pub const EMPTY: RangePair = RangePair { lo: 1, hi: 0 };

    pub fn new(lo: u32, hi: u32) -> Self {
        Self { lo, hi }
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }

    #[inline]
    pub fn contains(&self, k: u32) -> bool {
        self.lo <= k && k <= self.hi
    }

    pub fn width(&self) -> usize {
        if self.is_empty() {
            0
        } else {
            (self.hi - self.lo + 1) as usize
        }
    }
}

/// Suffix array of the text and of the reversed text, with inverses and LCP.
/// Every array is 1-based: index 0 is unused.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexCore {
    pub sa: Vec<u32>,
    pub isa: Vec<u32>,
    /// Suffix array of the reversed text; realizes the prefix array.
    pub rsa: Vec<u32>,
    pub risa: Vec<u32>,
    /// `lcp[k]` = longest common prefix of suffixes `sa[k-1]` and `sa[k]`.
    pub lcp: Vec<u32>,
}

fn one_based(v: impl IntoIterator<Item = u32>) -> Vec<u32> {
    std::iter::once(0).chain(v).collect()
}

fn inverse(sa: &[u32]) -> Vec<u32> {
    let mut inv = vec![0u32; sa.len()];
    for (k, &p) in sa.iter().enumerate().skip(1) {
        inv[p as usize] = k as u32;
    }
    inv
}

/// Why a set of stored arrays cannot describe the text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoreMismatch {
    Length,
    NotPermutation,
    NotInverse,
}

pub fn build_index_core(text: &TextCorpus) -> IndexCore {
    let codes = text.codes();
    let sa0 = suffix_array_of(codes);
    let lcp0 = lcp_array_of(codes, &sa0);
    let rev: Vec<Code> = codes.iter().rev().copied().collect();
    let rsa0 = suffix_array_of(&rev);
    let sa = one_based(sa0.into_iter().map(|p| p + 1));
    let rsa = one_based(rsa0.into_iter().map(|p| p + 1));
    let isa = inverse(&sa);
    let risa = inverse(&rsa);
    IndexCore {
        sa,
        isa,
        rsa,
        risa,
        lcp: one_based(lcp0),
    }
}

impl IndexCore {
    /// Assembles a core from stored arrays, recomputing LCP. Checks only the
    /// structural invariants: permutation and inverse.
    pub fn from_arrays(
        text: &TextCorpus,
        sa: Vec<u32>,
        isa: Vec<u32>,
        rsa: Vec<u32>,
        risa: Vec<u32>,
    ) -> Result<Self, CoreMismatch> {
        let n = text.len();
        if [&sa, &isa, &rsa, &risa].iter().any(|a| a.len() != n + 1) {
            return Err(CoreMismatch::Length);
        }
        for (fwd, inv) in [(&sa, &isa), (&rsa, &risa)] {
            let mut seen = vec![false; n + 1];
            for &p in &fwd[1..] {
                let p = p as usize;
                if p == 0 || p > n || seen[p] {
                    return Err(CoreMismatch::NotPermutation);
                }
                seen[p] = true;
            }
            if (1..=n).any(|k| inv[fwd[k] as usize] as usize != k) {
                return Err(CoreMismatch::NotInverse);
            }
        }
        let sa0: Vec<u32> = sa[1..].iter().map(|&p| p - 1).collect();
        let lcp = one_based(lcp_array_of(text.codes(), &sa0));
        Ok(Self {
            sa,
            isa,
            rsa,
            risa,
            lcp,
        })
    }

    pub fn len(&self) -> usize {
        self.sa.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Rank of prefix `T[1..e]` among all prefixes ordered by their reversals,
    /// i.e. `PA^{-1}[e]`, for `1 <= e <= n`.
    #[inline]
    pub fn prefix_rank(&self, e: usize) -> u32 {
        self.risa[self.len() + 1 - e]
    }

    /// Range of sa ranks whose suffixes start with `p`.
    pub fn suffix_range(&self, text: &TextCorpus, p: &[Code]) -> RangePair {
        range_by(
            self.len(),
            p,
            |k| self.sa[k] as usize,
            |pos| text.at(pos),
            |pos, d| pos + d,
        )
    }

    /// Range of rsa ranks whose reversed-text suffixes start with `p`
    /// (`p` already reversed).
    pub fn reverse_range(&self, text: &TextCorpus, p: &[Code]) -> RangePair {
        let n = self.len();
        // reversed-text position i reads T[n + 1 - i]
        range_by(
            n,
            p,
            |k| self.rsa[k] as usize,
            |pos| {
                if pos >= 1 && pos <= n {
                    text.at(pos)
                } else {
                    0
                }
            },
            |pos, d| (n + 1 - pos).wrapping_sub(d),
        )
    }
}

/// Binary search for the rank range of suffixes starting with `p`, where the
/// suffix of rank `k` starts at `start(k)` and its `d`-th character (0-based)
/// is `char_at(step(start, d))`.
fn range_by(
    n: usize,
    p: &[Code],
    start: impl Fn(usize) -> usize,
    char_at: impl Fn(usize) -> Code,
    step: impl Fn(usize, usize) -> usize,
) -> RangePair {
    if p.is_empty() {
        return RangePair::new(1, n as u32);
    }
    // compare the suffix's |p|-prefix with p
    let cmp = |k: usize| -> Ordering {
        let s = start(k);
        for (d, &c) in p.iter().enumerate() {
            let t = char_at(step(s, d));
            match t.cmp(&c) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    };
    // first rank with suffix >= p
    let (mut lo, mut hi) = (1usize, n + 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if cmp(mid) == Ordering::Less {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    let first = lo;
    let (mut lo, mut hi) = (first, n + 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if cmp(mid) == Ordering::Greater {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    if first >= lo {
        RangePair::EMPTY
    } else {
        RangePair::new(first as u32, (lo - 1) as u32)
    }
}

/// `L[0..=m]` in rsa order and `R[1..=m+1]` in sa order for pattern `q`
/// (0-based slice). Returned vectors are indexed by the 1-based positions;
/// `R[0]` is unused.
pub fn compute_l_r(
    core: &IndexCore,
    text: &TextCorpus,
    q: &[Code],
) -> (Vec<RangePair>, Vec<RangePair>) {
    let m = q.len();
    let n = core.len() as u32;
    let mut l = Vec::with_capacity(m + 1);
    l.push(RangePair::new(1, n));
    let mut rev: Vec<Code> = Vec::with_capacity(m);
    for i in 1..=m {
        rev.clear();
        rev.extend(q[..i].iter().rev());
        l.push(core.reverse_range(text, &rev));
    }
    let mut r = vec![RangePair::EMPTY; m + 2];
    r[m + 1] = RangePair::new(1, n);
    for i in 1..=m {
        r[i] = core.suffix_range(text, &q[i - 1..]);
    }
    (l, r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn enc(t: &TextCorpus, s: &str) -> Vec<Code> {
        t.encode_bytes(s.as_bytes())
    }

    #[test]
    fn banana_core() {
        let t = TextCorpus::from_bytes(b"banana").unwrap();
        let c = build_index_core(&t);
        assert_eq!(c.isa[1..], [4, 3, 6, 2, 5, 1]);
        assert_eq!(c.suffix_range(&t, &enc(&t, "ana")), RangePair::new(2, 3));
        assert!(c.suffix_range(&t, &enc(&t, "z")).is_empty());
        assert_eq!(c.suffix_range(&t, &enc(&t, "banana")), RangePair::new(4, 4));
        let (l, r) = compute_l_r(&c, &t, &enc(&t, "nana"));
        assert_eq!(l[0], RangePair::new(1, 6));
        assert_eq!(r[5], RangePair::new(1, 6));
        assert_eq!(r[1], RangePair::new(6, 6));
        assert_eq!(r[3], RangePair::new(5, 6));
        let (_, r) = compute_l_r(&c, &t, &enc(&t, "xana"));
        assert!(r[1].is_empty());
        assert_eq!(r[2], RangePair::new(2, 3));
    }

    #[test]
    fn single_symbol() {
        let t = TextCorpus::from_bytes(b"a").unwrap();
        let c = build_index_core(&t);
        assert_eq!(c.sa, vec![0, 1]);
        assert_eq!(c.rsa, vec![0, 1]);
        assert_eq!(c.isa, vec![0, 1]);
        assert_eq!(c.risa, vec![0, 1]);
    }

    #[test]
    fn ranges_count_occurrences() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..40 {
            let n = rng.gen_range(1..200);
            let raw: Vec<u8> = (0..n).map(|_| b'a' + rng.gen_range(0..3)).collect();
            let t = TextCorpus::from_bytes(&raw).unwrap();
            let c = build_index_core(&t);
            for k in 1..=n {
                assert_eq!(c.isa[c.sa[k] as usize] as usize, k);
                assert_eq!(c.risa[c.rsa[k] as usize] as usize, k);
            }
            for len in 1..=4usize {
                for _ in 0..10 {
                    let p: Vec<u8> = (0..len).map(|_| b'a' + rng.gen_range(0..4)).collect();
                    let occ: Vec<usize> = (0..n)
                        .filter(|&j| raw[j..].starts_with(&p))
                        .map(|j| j + 1)
                        .collect();
                    let range = c.suffix_range(&t, &t.encode_bytes(&p));
                    assert_eq!(range.width(), occ.len());
                    let mut got: Vec<usize> = (range.lo..=range.hi)
                        .map(|k| c.sa[k as usize] as usize)
                        .collect();
                    got.sort_unstable();
                    assert_eq!(got, occ);
                    // prefixes ending at e suffixed by p
                    let rev: Vec<Code> = t.encode_bytes(&p).into_iter().rev().collect();
                    let lr = c.reverse_range(&t, &rev);
                    let ends: Vec<usize> = (1..=n).filter(|&e| raw[..e].ends_with(&p)).collect();
                    assert_eq!(lr.width(), ends.len());
                    for e in ends {
                        assert!(lr.contains(c.prefix_rank(e)));
                    }
                }
            }
        }
    }
}
