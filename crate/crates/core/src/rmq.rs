//! Sparse-table range-minimum queries in constant time.

/// Argmin sparse table over a fixed `u32` array. Ties resolve to the leftmost
/// index.
#[derive(Debug, Clone, Default)]
pub struct SparseTable {
    values: Vec<u32>,
    /// `levels[k][i]` is the argmin of `values[i..i + 2^(k+1)]`.
    levels: Vec<Vec<u32>>,
}

impl SparseTable {
    pub fn new(values: Vec<u32>) -> Self {
        let n = values.len();
        let mut levels: Vec<Vec<u32>> = Vec::new();
        let mut width = 1usize;
        while 2 * width <= n {
            let next: Vec<u32> = {
                let prev = levels.last();
                (0..=n - 2 * width)
                    .map(|i| {
                        let (a, b) = match prev {
                            Some(p) => (p[i], p[i + width]),
                            None => (i as u32, (i + width) as u32),
                        };
                        if values[b as usize] < values[a as usize] {
                            b
                        } else {
                            a
                        }
                    })
                    .collect()
            };
            levels.push(next);
            width *= 2;
        }
        Self { values, levels }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    #[inline]
    pub fn value(&self, i: usize) -> u32 {
        self.values[i]
    }

    /// Index of the minimum in `values[l..=r]` (0-based, `l <= r`).
    #[inline]
    pub fn argmin(&self, l: usize, r: usize) -> usize {
        debug_assert!(l <= r && r < self.values.len());
        let span = r - l + 1;
        if span == 1 {
            return l;
        }
        let k = (usize::BITS - 1 - span.leading_zeros()) as usize;
        let level = &self.levels[k - 1];
        let a = level[l] as usize;
        let b = level[r + 1 - (1 << k)] as usize;
        if self.values[b] < self.values[a] {
            b
        } else {
            a
        }
    }

    #[inline]
    pub fn min(&self, l: usize, r: usize) -> u32 {
        self.values[self.argmin(l, r)]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn matches_linear_scan() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let n = rng.gen_range(1..70);
            let values: Vec<u32> = (0..n).map(|_| rng.gen_range(0..10)).collect();
            let st = SparseTable::new(values.clone());
            for l in 0..n {
                for r in l..n {
                    let expect = (l..=r).min_by_key(|&i| (values[i], i)).unwrap();
                    assert_eq!(st.argmin(l, r), expect);
                }
            }
        }
    }
}
