//! Per-query probe counters.

use std::cell::Cell;
use std::ops::AddAssign;

/// Counts hash-map lookups and array reads made by one query.
#[derive(Debug, Default)]
pub struct Probes {
    hash: Cell<u64>,
    array: Cell<u64>,
    wps_queries: Cell<u64>,
    wps_max: Cell<u64>,
}

impl Probes {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    #[allow(clippy::should_implement_trait)]
    pub fn hash(&self, k: u64) {
        self.hash.set(self.hash.get() + k);
    }

    #[inline]
    pub fn array(&self, k: u64) {
        self.array.set(self.array.get() + k);
    }

    /// Records one weak prefix search that used `probes` map lookups.
    #[inline]
    pub fn wps(&self, probes: u64) {
        self.hash(probes);
        self.wps_queries.set(self.wps_queries.get() + 1);
        if probes > self.wps_max.get() {
            self.wps_max.set(probes);
        }
    }

    pub fn stats(&self) -> ProbeStats {
        ProbeStats {
            hash: self.hash.get(),
            array: self.array.get(),
            wps_queries: self.wps_queries.get(),
            wps_max: self.wps_max.get(),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ProbeStats {
    pub hash: u64,
    pub array: u64,
    pub wps_queries: u64,
    /// Largest map-probe count of a single weak prefix search.
    pub wps_max: u64,
}

impl ProbeStats {
    pub fn total(&self) -> u64 {
        self.hash + self.array
    }
}

impl AddAssign for ProbeStats {
    fn add_assign(&mut self, o: Self) {
        self.hash += o.hash;
        self.array += o.array;
        self.wps_queries += o.wps_queries;
        self.wps_max = self.wps_max.max(o.wps_max);
    }
}
