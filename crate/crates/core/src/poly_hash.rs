//! Polynomial string hashing `H(x) = Σ x[i]·r^i mod P`, constant-time hashes of
//! edited patterns and their prefixes, and injective seed selection.

use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::text_core::{Code, Modification, ModifiedSuffix, TextCorpus};

/// The Mersenne prime 2^61 − 1.
pub const MERSENNE_61: u64 = (1 << 61) - 1;

/// Seed attempts before giving up.
pub const MAX_SEED_ATTEMPTS: u32 = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HashParams {
    pub modulus: u64,
    pub seed: u64,
}

impl HashParams {
    pub fn new(modulus: u64, seed: u64) -> Self {
        debug_assert!(seed < modulus);
        Self { modulus, seed }
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.modulus {
            s - self.modulus
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.modulus - b
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        let p = a as u128 * b as u128;
        if self.modulus == MERSENNE_61 {
            let s = (p as u64 & MERSENNE_61) + (p >> 61) as u64;
            if s >= MERSENNE_61 {
                s - MERSENNE_61
            } else {
                s
            }
        } else {
            (p % self.modulus as u128) as u64
        }
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.modulus;
        base %= self.modulus;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Powers `r^0..=r^len`.
    pub fn powers(&self, len: usize) -> Vec<u64> {
        let mut pow = Vec::with_capacity(len + 1);
        pow.push(1 % self.modulus);
        for i in 0..len {
            pow.push(self.mul(pow[i], self.seed));
        }
        pow
    }

    #[inline]
    fn code(&self, c: Code) -> u64 {
        c as u64 % self.modulus
    }
}

pub fn hash_string(params: &HashParams, x: &[Code]) -> u64 {
    let mut h = 0;
    let mut p = 1 % params.modulus;
    for &c in x {
        p = params.mul(p, params.seed);
        h = params.add(h, params.mul(params.code(c), p));
    }
    h
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EditKind {
    Exact,
    Deletion,
    Substitution,
    Insertion,
}

impl EditKind {
    pub fn name(self) -> &'static str {
        match self {
            EditKind::Exact => "exact",
            EditKind::Deletion => "del",
            EditKind::Substitution => "sub",
            EditKind::Insertion => "ins",
        }
    }
}

/// One edit applied to the pattern; positions are 1-based in the pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Edit {
    Exact,
    Deletion {
        pos: u32,
    },
    Substitution {
        pos: u32,
        ch: Code,
    },
    /// Insert `ch` before position `pos`; `pos = m + 1` appends.
    Insertion {
        pos: u32,
        ch: Code,
    },
}

impl Edit {
    pub fn kind(&self) -> EditKind {
        match self {
            Edit::Exact => EditKind::Exact,
            Edit::Deletion { .. } => EditKind::Deletion,
            Edit::Substitution { .. } => EditKind::Substitution,
            Edit::Insertion { .. } => EditKind::Insertion,
        }
    }

    pub fn pos(&self) -> Option<u32> {
        match *self {
            Edit::Exact => None,
            Edit::Deletion { pos }
            | Edit::Substitution { pos, .. }
            | Edit::Insertion { pos, .. } => Some(pos),
        }
    }

    pub fn ch(&self) -> Option<Code> {
        match *self {
            Edit::Substitution { ch, .. } | Edit::Insertion { ch, .. } => Some(ch),
            _ => None,
        }
    }

    /// Length of the edited pattern.
    pub fn result_len(&self, m: usize) -> usize {
        match self {
            Edit::Exact | Edit::Substitution { .. } => m,
            Edit::Deletion { .. } => m - 1,
            Edit::Insertion { .. } => m + 1,
        }
    }

    pub fn is_valid_for(&self, m: usize) -> bool {
        match *self {
            Edit::Exact => true,
            Edit::Deletion { pos } | Edit::Substitution { pos, .. } => {
                pos >= 1 && pos as usize <= m
            }
            Edit::Insertion { pos, .. } => pos >= 1 && pos as usize <= m + 1,
        }
    }

    fn check(&self, m: usize) -> Result<()> {
        if self.is_valid_for(m) {
            Ok(())
        } else {
            Err(Error::EditOutOfRange {
                edit: self.to_string(),
                m,
            })
        }
    }
}

impl fmt::Display for Edit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Edit::Exact => write!(f, "exact"),
            Edit::Deletion { pos } => write!(f, "del@{pos}"),
            Edit::Substitution { pos, ch } => write!(f, "sub@{pos}:{ch}"),
            Edit::Insertion { pos, ch } => write!(f, "ins@{pos}:{ch}"),
        }
    }
}

/// Per-query hash arrays; every array is indexed by 1-based positions.
#[derive(Debug, Clone)]
pub struct QueryHashes {
    params: HashParams,
    /// `q[1..=m]`; `q[0]` unused.
    q: Vec<Code>,
    /// `pow[i] = r^i` for `i <= m + 2`.
    pow: Vec<u64>,
    /// `pre[i] = H(q[1..i])`.
    pre: Vec<u64>,
    /// `suf[i] = H(q[i..m])` as a standalone string; zero past `m`.
    suf: Vec<u64>,
}

pub fn precompute_query_hashes(params: &HashParams, q: &[Code]) -> QueryHashes {
    let m = q.len();
    let mut qq = Vec::with_capacity(m + 1);
    qq.push(0);
    qq.extend_from_slice(q);
    let pow = params.powers(m + 2);
    let mut pre = vec![0u64; m + 1];
    for i in 1..=m {
        pre[i] = params.add(pre[i - 1], params.mul(params.code(qq[i]), pow[i]));
    }
    let mut suf = vec![0u64; m + 3];
    for i in (1..=m).rev() {
        suf[i] = params.mul(params.add(suf[i + 1], params.code(qq[i])), params.seed);
    }
    QueryHashes {
        params: *params,
        q: qq,
        pow,
        pre,
        suf,
    }
}

impl QueryHashes {
    pub fn m(&self) -> usize {
        self.q.len() - 1
    }

    pub fn params(&self) -> &HashParams {
        &self.params
    }

    /// Pattern symbol at 1-based `i`.
    #[inline]
    pub fn q(&self, i: usize) -> Code {
        self.q[i]
    }

    pub fn pattern(&self) -> &[Code] {
        &self.q[1..]
    }

    pub fn pre(&self, i: usize) -> u64 {
        self.pre[i]
    }

    pub fn suf(&self, i: usize) -> u64 {
        self.suf[i]
    }

    pub fn hash_edited(&self, e: &Edit) -> Result<u64> {
        e.check(self.m())?;
        Ok(self.edited(e))
    }

    pub fn hash_edited_prefix(&self, e: &Edit, j: usize) -> Result<u64> {
        e.check(self.m())?;
        let len = e.result_len(self.m());
        if j > len {
            return Err(Error::PrefixOutOfRange { j, len });
        }
        Ok(self.edited_prefix(e, j))
    }

    /// Hash of the whole edited pattern; `e` must be valid.
    #[inline]
    pub(crate) fn edited(&self, e: &Edit) -> u64 {
        let p = &self.params;
        match *e {
            Edit::Exact => self.pre[self.m()],
            Edit::Deletion { pos } => {
                let i = pos as usize;
                p.add(self.pre[i - 1], p.mul(self.suf[i + 1], self.pow[i - 1]))
            }
            Edit::Substitution { pos, ch } => {
                let i = pos as usize;
                let tail = p.add(p.code(ch), self.suf[i + 1]);
                p.add(self.pre[i - 1], p.mul(tail, self.pow[i]))
            }
            Edit::Insertion { pos, ch } => {
                let i = pos as usize;
                let tail = p.add(p.code(ch), self.suf[i]);
                p.add(self.pre[i - 1], p.mul(tail, self.pow[i]))
            }
        }
    }

    /// Hash of the length-`j` prefix of the edited pattern; `e` and `j` must
    /// be valid.
    #[inline]
    pub(crate) fn edited_prefix(&self, e: &Edit, j: usize) -> u64 {
        let p = &self.params;
        let (i, cut) = match *e {
            Edit::Exact => return self.pre[j],
            Edit::Deletion { pos } => (pos as usize, j + 2),
            Edit::Substitution { pos, .. } => (pos as usize, j + 1),
            Edit::Insertion { pos, .. } => (pos as usize, j),
        };
        if j < i {
            return self.pre[j];
        }
        let rest = if cut < self.suf.len() {
            self.suf[cut]
        } else {
            0
        };
        p.sub(self.edited(e), p.mul(rest, self.pow[j]))
    }
}

/// Substring and modified-suffix hashes over a fixed text in constant time.
#[derive(Debug, Clone)]
pub struct TextHasher {
    params: HashParams,
    n: usize,
    /// `prefix[i] = Σ_{t<=i} T[t]·r^t`.
    prefix: Vec<u64>,
    inv_pow: Vec<u64>,
    pow: Vec<u64>,
}

impl TextHasher {
    /// `max_len` bounds the modification positions and prefix lengths used.
    pub fn new(params: &HashParams, text: &TextCorpus, max_len: usize) -> Self {
        let n = text.len();
        let mut prefix = vec![0u64; n + 1];
        let mut p = 1 % params.modulus;
        for i in 1..=n {
            p = params.mul(p, params.seed);
            prefix[i] = params.add(prefix[i - 1], params.mul(params.code(text.at(i)), p));
        }
        let inv = params.pow(params.seed, params.modulus - 2);
        let mut inv_pow = Vec::with_capacity(n + 1);
        inv_pow.push(1 % params.modulus);
        for i in 0..n {
            inv_pow.push(params.mul(inv_pow[i], inv));
        }
        Self {
            params: *params,
            n,
            prefix,
            inv_pow,
            pow: params.powers(max_len + 2),
        }
    }

    pub fn params(&self) -> &HashParams {
        &self.params
    }

    /// `r^i` for `i <= max_len + 2`.
    #[inline]
    pub fn pow(&self, i: usize) -> u64 {
        self.pow[i]
    }

    /// Standalone hash of `T[j..j+len-1]`, sentinel-padded past `n`.
    #[inline]
    pub fn substring(&self, j: usize, len: usize) -> u64 {
        if len == 0 || j > self.n {
            return 0;
        }
        let end = (j + len - 1).min(self.n);
        let p = &self.params;
        p.mul(
            p.sub(self.prefix[end], self.prefix[j - 1]),
            self.inv_pow[j - 1],
        )
    }

    /// Hash of the first `len` characters of a modified suffix.
    #[inline]
    pub fn modified_prefix(&self, s: &ModifiedSuffix, len: usize) -> u64 {
        let j = s.start as usize;
        let pos = s.pos as usize;
        let p = &self.params;
        match s.modification {
            Modification::None => self.substring(j, len),
            _ if len < pos => self.substring(j, len),
            Modification::Replace(c) => {
                let head = self.substring(j, pos - 1);
                let tail = p.add(p.code(c), self.substring(j + pos, len - pos));
                p.add(head, p.mul(tail, self.pow[pos]))
            }
            Modification::Delete => {
                let head = self.substring(j, pos - 1);
                let tail = self.substring(j + pos, len - pos + 1);
                p.add(head, p.mul(tail, self.pow[pos - 1]))
            }
        }
    }
}

/// Builds hashed structures under candidate parameters.
pub trait SeededBuild {
    type Output;

    /// `None` when two distinct stored strings collide under `params`.
    fn try_build(&self, params: &HashParams) -> Option<Self::Output>;
}

#[derive(Debug)]
pub struct SeedOutcome<T> {
    pub params: HashParams,
    pub built: T,
    pub attempts: u32,
}

/// Rejects texts whose size makes the collision bound meaningless.
pub fn check_capacity(n: usize, sigma: usize, modulus: u64) -> Result<()> {
    let n = n as u128;
    if n * n * n * (sigma as u128 + 3) < modulus as u128 {
        Ok(())
    } else {
        Err(Error::Capacity {
            n: n as usize,
            sigma,
            modulus,
        })
    }
}

/// Draws seeds until `source` builds without collisions, over `2^61 − 1`.
pub fn find_injective_seed<S, R>(
    source: &S,
    n: usize,
    sigma: usize,
    rng: &mut R,
) -> Result<SeedOutcome<S::Output>>
where
    S: SeededBuild + ?Sized,
    R: Rng + ?Sized,
{
    find_injective_seed_with_modulus(source, n, sigma, MERSENNE_61, rng)
}

pub fn find_injective_seed_with_modulus<S, R>(
    source: &S,
    n: usize,
    sigma: usize,
    modulus: u64,
    rng: &mut R,
) -> Result<SeedOutcome<S::Output>>
where
    S: SeededBuild + ?Sized,
    R: Rng + ?Sized,
{
    check_capacity(n, sigma, modulus)?;
    for attempt in 1..=MAX_SEED_ATTEMPTS {
        let params = HashParams::new(modulus, rng.gen_range(2..modulus));
        if let Some(built) = source.try_build(&params) {
            return Ok(SeedOutcome {
                params,
                built,
                attempts: attempt,
            });
        }
    }
    Err(Error::SeedExhausted {
        attempts: MAX_SEED_ATTEMPTS,
    })
}

/// An explicit family of strings that must hash injectively per length.
#[derive(Debug, Clone)]
pub struct KeyStrings {
    strings: Vec<Vec<Code>>,
}

impl KeyStrings {
    pub fn new(mut strings: Vec<Vec<Code>>) -> Result<Self> {
        strings.sort();
        if strings.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::DuplicateKey);
        }
        Ok(Self { strings })
    }
}

impl SeededBuild for KeyStrings {
    type Output = ();

    fn try_build(&self, params: &HashParams) -> Option<()> {
        let mut keys: Vec<(usize, u64)> = self
            .strings
            .iter()
            .map(|s| (s.len(), hash_string(params, s)))
            .collect();
        keys.sort_unstable();
        if keys.windows(2).any(|w| w[0] == w[1]) {
            None
        } else {
            Some(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::apply_edit;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn hash_string_examples() {
        let p = HashParams::new(101, 10);
        assert_eq!(hash_string(&p, &[]), 0);
        assert_eq!(hash_string(&p, &[1, 2]), 8);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let p = HashParams::new(MERSENNE_61, rng.gen_range(2..MERSENNE_61));
        for _ in 0..100 {
            let x: Vec<Code> = (0..rng.gen_range(0..20))
                .map(|_| rng.gen_range(1..9))
                .collect();
            let c = rng.gen_range(1..9);
            let mut xc = x.clone();
            xc.push(c);
            let expect = p.add(
                hash_string(&p, &x),
                p.mul(c as u64, p.pow(p.seed, x.len() as u64 + 1)),
            );
            assert_eq!(hash_string(&p, &xc), expect);
        }
    }

    #[test]
    fn mersenne_mul_matches_u128() {
        let p = HashParams::new(MERSENNE_61, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..10_000 {
            let (a, b) = (rng.gen_range(0..MERSENNE_61), rng.gen_range(0..MERSENNE_61));
            assert_eq!(
                p.mul(a, b),
                ((a as u128 * b as u128) % MERSENNE_61 as u128) as u64
            );
        }
    }

    #[test]
    fn query_arrays_match_direct_hashes() {
        let p = HashParams::new(101, 10);
        let qh = precompute_query_hashes(&p, &[3]);
        assert_eq!(qh.pre, vec![0, 30]);
        assert_eq!(&qh.suf[1..3], &[30, 0]);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let p = HashParams::new(MERSENNE_61, rng.gen_range(2..MERSENNE_61));
        for _ in 0..200 {
            let m = rng.gen_range(1..30);
            let q: Vec<Code> = (0..m).map(|_| rng.gen_range(1..6)).collect();
            let qh = precompute_query_hashes(&p, &q);
            for i in 0..=m {
                assert_eq!(qh.pre(i), hash_string(&p, &q[..i]));
            }
            for i in 1..=m + 1 {
                assert_eq!(qh.suf(i), hash_string(&p, &q[i - 1..]));
            }
            assert_eq!(qh.pre(m), hash_string(&p, &q));
        }
    }

    fn all_edits(m: usize, sigma: Code) -> Vec<Edit> {
        let mut v = vec![Edit::Exact];
        for pos in 1..=m as u32 {
            v.push(Edit::Deletion { pos });
            for ch in 1..=sigma {
                v.push(Edit::Substitution { pos, ch });
            }
        }
        for pos in 1..=m as u32 + 1 {
            for ch in 1..=sigma {
                v.push(Edit::Insertion { pos, ch });
            }
        }
        v
    }

    #[test]
    fn edited_hashes_exhaustive_small() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for modulus in [MERSENNE_61, 1_000_000_007] {
            let p = HashParams::new(modulus, rng.gen_range(2..modulus));
            for m in 1..=8usize {
                for _ in 0..20 {
                    let q: Vec<Code> = (0..m).map(|_| rng.gen_range(1..=4)).collect();
                    let qh = precompute_query_hashes(&p, &q);
                    for e in all_edits(m, 5) {
                        let x = apply_edit(&q, &e);
                        assert_eq!(qh.hash_edited(&e).unwrap(), hash_string(&p, &x), "{e}");
                        for j in 0..=x.len() {
                            assert_eq!(
                                qh.hash_edited_prefix(&e, j).unwrap(),
                                hash_string(&p, &x[..j]),
                                "{e} j={j}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn out_of_range_edits_rejected() {
        let p = HashParams::new(MERSENNE_61, 5);
        let qh = precompute_query_hashes(&p, &[1, 2]);
        assert!(qh.hash_edited(&Edit::Deletion { pos: 3 }).is_err());
        assert!(qh.hash_edited(&Edit::Insertion { pos: 4, ch: 1 }).is_err());
        assert!(qh
            .hash_edited(&Edit::Substitution { pos: 0, ch: 1 })
            .is_err());
        assert!(qh.hash_edited_prefix(&Edit::Exact, 3).is_err());
        assert!(qh
            .hash_edited_prefix(&Edit::Insertion { pos: 3, ch: 1 }, 3)
            .is_ok());
    }

    #[test]
    fn text_hasher_matches_materialized() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let raw: Vec<u8> = (0..80).map(|_| b'a' + rng.gen_range(0..3)).collect();
        let t = TextCorpus::from_bytes(&raw).unwrap();
        let p = HashParams::new(MERSENNE_61, rng.gen_range(2..MERSENNE_61));
        let th = TextHasher::new(&p, &t, 16);
        for _ in 0..2000 {
            let start = rng.gen_range(1..=80u32);
            let pos = rng.gen_range(1..=16u32);
            let modification = match rng.gen_range(0..3) {
                0 => Modification::None,
                1 => Modification::Replace(rng.gen_range(1..=5)),
                _ => Modification::Delete,
            };
            let s = ModifiedSuffix {
                start,
                pos,
                modification,
            };
            let len = rng.gen_range(0..=17);
            assert_eq!(
                th.modified_prefix(&s, len),
                hash_string(&p, &s.prefix(&t, len))
            );
        }
    }

    struct FailFirst(std::cell::Cell<u32>);

    impl SeededBuild for FailFirst {
        type Output = u32;
        fn try_build(&self, _: &HashParams) -> Option<u32> {
            let left = self.0.get();
            if left == 0 {
                Some(7)
            } else {
                self.0.set(left - 1);
                None
            }
        }
    }

    #[test]
    fn seed_retry_and_cap() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let out =
            find_injective_seed(&FailFirst(std::cell::Cell::new(3)), 10, 4, &mut rng).unwrap();
        assert_eq!((out.attempts, out.built), (4, 7));
        let err = find_injective_seed(&FailFirst(std::cell::Cell::new(100)), 10, 4, &mut rng);
        assert_eq!(
            err.unwrap_err(),
            Error::SeedExhausted {
                attempts: MAX_SEED_ATTEMPTS
            }
        );
        assert!(matches!(
            find_injective_seed(
                &FailFirst(std::cell::Cell::new(0)),
                2_000_000,
                256,
                &mut rng
            ),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn key_strings() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let single = KeyStrings::new(vec![vec![1, 2, 3]]).unwrap();
        assert_eq!(
            find_injective_seed(&single, 3, 3, &mut rng)
                .unwrap()
                .attempts,
            1
        );
        assert_eq!(
            KeyStrings::new(vec![vec![1], vec![1]]).unwrap_err(),
            Error::DuplicateKey
        );
        let pair = KeyStrings::new(vec![vec![1, 2], vec![2, 1]]).unwrap();
        assert!(find_injective_seed(&pair, 2, 2, &mut rng).unwrap().attempts <= MAX_SEED_ATTEMPTS);
        // a tiny prime forces collisions for some seeds, never for all
        let many: Vec<Vec<Code>> = (1..=3)
            .flat_map(|a| (1..=3).map(move |b| vec![a, b]))
            .collect();
        let ks = KeyStrings::new(many).unwrap();
        assert!(find_injective_seed_with_modulus(&ks, 3, 3, 1_000_003, &mut rng).is_ok());
    }
}
