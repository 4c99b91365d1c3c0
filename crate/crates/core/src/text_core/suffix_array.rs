//! Prefix-doubling suffix array and Kasai LCP.

use super::corpus::{Code, TextCorpus};

/// Suffix array of `s` (0-based positions), `O(n log n)` by prefix doubling
/// with counting sorts. A suffix that is a prefix of another sorts first.
pub fn suffix_array_of(s: &[Code]) -> Vec<u32> {
    let n = s.len();
    if n == 0 {
        return Vec::new();
    }
    let mut sa: Vec<u32> = (0..n as u32).collect();
    sa.sort_by_key(|&i| s[i as usize]);
    // rank 0 stands for "past the end", so real ranks start at 1
    let mut rank = vec![0u32; n];
    let mut classes = 1u32;
    rank[sa[0] as usize] = 1;
    for w in 1..n {
        if s[sa[w] as usize] != s[sa[w - 1] as usize] {
            classes += 1;
        }
        rank[sa[w] as usize] = classes;
    }
    let mut tmp = vec![0u32; n];
    let mut count = Vec::new();
    let mut order = Vec::with_capacity(n);
    let mut k = 1usize;
    while (classes as usize) < n && k < n {
        // order by second key: suffixes with no second half first
        order.clear();
        order.extend((n - k..n).map(|i| i as u32));
        order.extend(
            sa.iter()
                .filter(|&&p| p as usize >= k)
                .map(|&p| p - k as u32),
        );
        // stable counting sort by first key
        count.clear();
        count.resize(classes as usize + 2, 0u32);
        for &p in &order {
            count[rank[p as usize] as usize + 1] += 1;
        }
        for c in 1..count.len() {
            count[c] += count[c - 1];
        }
        for &p in &order {
            let slot = &mut count[rank[p as usize] as usize];
            sa[*slot as usize] = p;
            *slot += 1;
        }
        let key = |p: u32| {
            let p = p as usize;
            (rank[p], if p + k < n { rank[p + k] } else { 0 })
        };
        tmp[sa[0] as usize] = 1;
        classes = 1;
        for w in 1..n {
            if key(sa[w]) != key(sa[w - 1]) {
                classes += 1;
            }
            tmp[sa[w] as usize] = classes;
        }
        std::mem::swap(&mut rank, &mut tmp);
        k *= 2;
    }
    sa
}

/// 1-based suffix array of the corpus (index 0 unused).
pub fn build_suffix_array(text: &TextCorpus) -> Vec<u32> {
    let mut sa = vec![0u32];
    sa.extend(suffix_array_of(text.codes()).into_iter().map(|p| p + 1));
    sa
}

/// Kasai LCP over 0-based arrays: `lcp[k]` = lcp of suffixes `sa[k-1]`, `sa[k]`;
/// `lcp[0] = 0`.
pub fn lcp_array_of(s: &[Code], sa: &[u32]) -> Vec<u32> {
    let n = s.len();
    let mut rank = vec![0u32; n];
    for (k, &p) in sa.iter().enumerate() {
        rank[p as usize] = k as u32;
    }
    let mut lcp = vec![0u32; n];
    let mut h = 0usize;
    for i in 0..n {
        let r = rank[i] as usize;
        if r > 0 {
            let j = sa[r - 1] as usize;
            while i + h < n && j + h < n && s[i + h] == s[j + h] {
                h += 1;
            }
            lcp[r] = h as u32;
            h = h.saturating_sub(1);
        } else {
            h = 0;
        }
    }
    lcp
}
