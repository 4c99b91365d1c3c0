use crate::probes::Probes;
use crate::rmq::SparseTable;

/// Distinct-color reporting over a fixed color array: a previous-occurrence
/// array under a range-minimum structure.
#[derive(Debug, Clone, Default)]
pub struct ColorReporter {
    colors: Vec<u32>,
    /// `prev[i]`: 1-based index of the previous equal color, 0 if none.
    prev: SparseTable,
}

impl ColorReporter {
    pub fn new(colors: Vec<u32>) -> Self {
        let mut last = rustc_hash::FxHashMap::default();
        let prev = colors
            .iter()
            .enumerate()
            .map(|(i, &c)| last.insert(c, i as u32 + 1).unwrap_or(0))
            .collect();
        Self {
            colors,
            prev: SparseTable::new(prev),
        }
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    /// Color of entry `i` (1-based).
    #[inline]
    pub fn color(&self, i: usize) -> u32 {
        self.colors[i - 1]
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    /// Each distinct color of entries `l..=r` (1-based) exactly once.
    pub fn distinct<'a>(&'a self, l: usize, r: usize, probes: &'a Probes) -> DistinctColors<'a> {
        let mut stack = Vec::new();
        if l >= 1 && l <= r && r <= self.colors.len() {
            stack.push((l, r));
        }
        DistinctColors {
            reporter: self,
            threshold: l as u32,
            stack,
            probes,
        }
    }
}

pub struct DistinctColors<'a> {
    reporter: &'a ColorReporter,
    threshold: u32,
    stack: Vec<(usize, usize)>,
    probes: &'a Probes,
}

impl Iterator for DistinctColors<'_> {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        while let Some((a, b)) = self.stack.pop() {
            // one RMQ and one prev read
            self.probes.array(2);
            let i = self.reporter.prev.argmin(a - 1, b - 1) + 1;
            if self.reporter.prev.value(i - 1) >= self.threshold {
                continue;
            }
            if i < b {
                self.stack.push((i + 1, b));
            }
            if a < i {
                self.stack.push((a, i - 1));
            }
            self.probes.array(1);
            return Some(self.reporter.colors[i - 1]);
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn examples() {
        let rep = ColorReporter::new(vec![10, 20, 10, 30]);
        let p = Probes::new();
        let got: BTreeSet<u32> = rep.distinct(1, 4, &p).collect();
        assert_eq!(got, [10, 20, 30].into_iter().collect());
        assert_eq!(rep.distinct(3, 3, &p).collect::<Vec<_>>(), vec![10]);
        assert_eq!(rep.distinct(2, 1, &p).count(), 0);
    }

    #[test]
    fn each_color_once() {
        let rep = ColorReporter::new(vec![1, 1, 1, 2, 2, 1, 3, 3, 2]);
        let p = Probes::new();
        let mut got: Vec<u32> = rep.distinct(2, 8, &p).collect();
        got.sort_unstable();
        assert_eq!(got, vec![1, 2, 3]);
        assert!(p.stats().array <= 8 * 4);
    }
}
