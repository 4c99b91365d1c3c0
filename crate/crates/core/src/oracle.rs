//! Brute-force reference answers, independent of the index structures.

use std::collections::BTreeSet;

use crate::poly_hash::Edit;
use crate::text_core::Code;

/// True iff `a` and `b` are equal or one deletion, insertion or substitution
/// apart.
pub fn edit_distance_at_most_one(a: &[Code], b: &[Code]) -> bool {
    let (short, long) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    match long.len() - short.len() {
        0 => short.iter().zip(long).filter(|(x, y)| x != y).count() <= 1,
        1 => {
            let head = short.iter().zip(long).take_while(|(x, y)| x == y).count();
            short[head..] == long[head + 1..]
        }
        _ => false,
    }
}

/// Every `(start, length)` (1-based) whose substring is within distance one
/// of `q`. Empty substrings are never reported.
pub fn oracle_query(text: &[Code], q: &[Code]) -> BTreeSet<(usize, usize)> {
    let n = text.len();
    let m = q.len();
    let mut out = BTreeSet::new();
    for len in [m.wrapping_sub(1), m, m + 1] {
        if len == 0 || len == usize::MAX || len > n {
            continue;
        }
        for j in 0..=n - len {
            if edit_distance_at_most_one(&text[j..j + len], q) {
                out.insert((j + 1, len));
            }
        }
    }
    out
}

/// Full Levenshtein distance by dynamic programming.
pub fn edit_distance(a: &[Code], b: &[Code]) -> usize {
    let mut prev: Vec<usize> = (0..=b.len()).collect();
    let mut cur = vec![0; b.len() + 1];
    for (i, &x) in a.iter().enumerate() {
        cur[0] = i + 1;
        for (j, &y) in b.iter().enumerate() {
            let sub = prev[j] + usize::from(x != y);
            cur[j + 1] = sub.min(prev[j + 1] + 1).min(cur[j] + 1);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[b.len()]
}

/// Materializes `q` after edit `e`. Reference helper only; query paths never
/// build edited patterns.
pub fn apply_edit(q: &[Code], e: &Edit) -> Vec<Code> {
    let mut p = q.to_vec();
    match *e {
        Edit::Exact => {}
        Edit::Deletion { pos } => {
            p.remove(pos as usize - 1);
        }
        Edit::Substitution { pos, ch } => p[pos as usize - 1] = ch,
        Edit::Insertion { pos, ch } => p.insert(pos as usize - 1, ch),
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn codes(s: &str) -> Vec<Code> {
        s.bytes().map(|b| b as Code).collect()
    }

    #[test]
    fn distance_examples() {
        assert!(edit_distance_at_most_one(&codes("nana"), &codes("nana")));
        assert!(!edit_distance_at_most_one(&codes("nana"), &codes("banan")));
        assert!(edit_distance_at_most_one(&codes("nana"), &codes("anana")));
        assert!(!edit_distance_at_most_one(&codes("ab"), &codes("abcd")));
        assert!(edit_distance_at_most_one(&codes(""), &codes("a")));
    }

    #[test]
    fn banana_worked_example() {
        let got = oracle_query(&codes("banana"), &codes("nana"));
        let expect: BTreeSet<_> = [(3, 4), (1, 4), (2, 3), (4, 3), (3, 3), (2, 5)]
            .into_iter()
            .collect();
        assert_eq!(got, expect);
    }

    #[test]
    fn boundary_cases() {
        assert!(oracle_query(&codes("ab"), &codes("abcd")).is_empty());
        assert!(oracle_query(&codes("abc"), &codes("abc")).contains(&(1, 3)));
        // single-symbol pattern never yields empty substrings
        let got = oracle_query(&codes("xy"), &codes("z"));
        assert_eq!(got, [(1, 1), (2, 1)].into_iter().collect());
    }

    #[test]
    fn agrees_with_dynamic_programming() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..1000 {
            let n = rng.gen_range(1..30);
            let m = rng.gen_range(1..8);
            let sigma = rng.gen_range(1..4);
            let t: Vec<Code> = (0..n).map(|_| rng.gen_range(1..=sigma)).collect();
            let q: Vec<Code> = (0..m).map(|_| rng.gen_range(1..=sigma + 1)).collect();
            let mut expect = BTreeSet::new();
            for j in 0..n {
                for len in 1..=n - j {
                    if edit_distance(&t[j..j + len], &q) <= 1 {
                        expect.insert((j + 1, len));
                    }
                }
            }
            assert_eq!(oracle_query(&t, &q), expect);
        }
    }

    #[test]
    fn apply_edit_shapes() {
        let q = codes("nana");
        assert_eq!(apply_edit(&q, &Edit::Deletion { pos: 1 }), codes("ana"));
        assert_eq!(
            apply_edit(
                &q,
                &Edit::Substitution {
                    pos: 1,
                    ch: b'b' as Code
                }
            ),
            codes("bana")
        );
        assert_eq!(
            apply_edit(
                &q,
                &Edit::Insertion {
                    pos: 5,
                    ch: b'x' as Code
                }
            ),
            codes("nanax")
        );
        assert_eq!(
            apply_edit(
                &q,
                &Edit::Insertion {
                    pos: 1,
                    ch: b'a' as Code
                }
            ),
            codes("anana")
        );
    }
}
