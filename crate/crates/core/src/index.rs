//! Index facade: one text core, one shared hash seed, one or both engines.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::centroid_engine::{CentroidEngine, CentroidPlan, HashedTrees};
use crate::engine_small::{factor_width, FactorIndex, Occurrence, SmallEngine};
use crate::error::{Error, Result};
use crate::poly_hash::{check_capacity, find_injective_seed, HashParams, SeededBuild, TextHasher};
use crate::probes::ProbeStats;
use crate::text_core::{build_index_core, Code, IndexCore, TextCorpus};
use crate::weak_prefix::{build_factor_set, FactorSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EngineSet {
    Small,
    Large,
    Both,
}

impl EngineSet {
    pub fn has_large(self) -> bool {
        self != EngineSet::Small
    }

    pub fn flags(self) -> u32 {
        match self {
            EngineSet::Small => 1,
            EngineSet::Large => 2,
            EngineSet::Both => 3,
        }
    }

    pub fn from_flags(flags: u32) -> Option<Self> {
        match flags {
            1 => Some(EngineSet::Small),
            2 => Some(EngineSet::Large),
            3 => Some(EngineSet::Both),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EngineKind {
    Small,
    Large,
}

#[derive(Debug, Clone, Copy)]
pub struct BuildConfig {
    pub max_pattern_len: usize,
    pub engines: EngineSet,
    pub seed: u64,
}

impl Default for BuildConfig {
    fn default() -> Self {
        Self {
            max_pattern_len: 64,
            engines: EngineSet::Both,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BuildStats {
    pub seed_attempts: u32,
    pub correction_entries: usize,
}

/// Everything hashed under one seed: the factor set and every correction tree.
struct Plan<'a> {
    text: &'a TextCorpus,
    factors: FactorSet,
    centroid: Option<CentroidPlan>,
    width: usize,
}

impl SeededBuild for Plan<'_> {
    type Output = (FactorIndex, Option<HashedTrees>);

    fn try_build(&self, params: &HashParams) -> Option<Self::Output> {
        let hasher = TextHasher::new(params, self.text, self.width);
        let factors = FactorIndex::build(&self.factors, self.text, &hasher)?;
        let trees = match &self.centroid {
            Some(plan) => Some(plan.hash_trees(self.text, &hasher)?),
            None => None,
        };
        Some((factors, trees))
    }
}

#[derive(Debug, Clone)]
pub struct Index {
    small: SmallEngine,
    large: Option<CentroidEngine>,
    engines: EngineSet,
    stats: BuildStats,
}

impl Index {
    pub fn build(text: TextCorpus, config: &BuildConfig) -> Result<Self> {
        if config.max_pattern_len == 0 {
            return Err(Error::InvalidMaxLength);
        }
        check_capacity(text.len(), text.sigma(), crate::poly_hash::MERSENNE_61)?;
        let core = build_index_core(&text);
        let plan = plan(&text, &core, config.max_pattern_len, config.engines);
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        let out = find_injective_seed(&plan, text.len(), text.sigma(), &mut rng)?;
        let centroid = plan.centroid;
        Ok(assemble(
            text,
            core,
            config.max_pattern_len,
            config.engines,
            centroid,
            out.params,
            out.built,
            out.attempts,
        ))
    }

    /// Rebuilds the hashed structures from stored arrays and parameters; a
    /// collision under the stored seed means the input was tampered with.
    pub fn from_stored(
        text: TextCorpus,
        core: IndexCore,
        b: usize,
        engines: EngineSet,
        params: HashParams,
    ) -> Result<Self> {
        if b == 0 {
            return Err(Error::InvalidMaxLength);
        }
        check_capacity(text.len(), text.sigma(), params.modulus)?;
        let plan = plan(&text, &core, b, engines);
        let built = plan
            .try_build(&params)
            .ok_or_else(|| Error::Corrupt("hash collision under the stored seed".into()))?;
        let centroid = plan.centroid;
        Ok(assemble(text, core, b, engines, centroid, params, built, 0))
    }

    pub fn small(&self) -> &SmallEngine {
        &self.small
    }

    pub fn large(&self) -> Option<&CentroidEngine> {
        self.large.as_ref()
    }

    pub fn text(&self) -> &TextCorpus {
        self.small.text()
    }

    pub fn core(&self) -> &IndexCore {
        self.small.core()
    }

    pub fn engines(&self) -> EngineSet {
        self.engines
    }

    pub fn max_pattern_len(&self) -> usize {
        self.small.max_pattern_len()
    }

    pub fn params(&self) -> &HashParams {
        self.small.params()
    }

    pub fn stats(&self) -> BuildStats {
        self.stats
    }

    /// Engine used when the caller does not pick one.
    pub fn default_engine(&self) -> EngineKind {
        if self.engines.has_large() {
            EngineKind::Large
        } else {
            EngineKind::Small
        }
    }

    /// Corrupts the suffix array on purpose.
    #[doc(hidden)]
    pub fn inject_fault(&mut self) {
        self.small.inject_fault();
    }

    pub fn query_codes(
        &self,
        q: &[Code],
        engine: EngineKind,
    ) -> Result<(Vec<Occurrence>, ProbeStats)> {
        match engine {
            EngineKind::Small => self.small.query_codes(q),
            EngineKind::Large => match &self.large {
                Some(large) => large.query_codes(&self.small, q),
                None => Err(Error::EngineUnavailable),
            },
        }
    }

    /// Queries a pattern of raw symbols.
    pub fn query(&self, q: &[u32], engine: EngineKind) -> Result<Vec<Occurrence>> {
        Ok(self.query_codes(&self.text().encode_pattern(q), engine)?.0)
    }

    pub fn query_bytes(&self, q: &[u8], engine: EngineKind) -> Result<Vec<Occurrence>> {
        Ok(self.query_codes(&self.text().encode_bytes(q), engine)?.0)
    }
}

fn plan<'a>(text: &'a TextCorpus, core: &IndexCore, b: usize, engines: EngineSet) -> Plan<'a> {
    let width = factor_width(b);
    Plan {
        text,
        factors: build_factor_set(core, width),
        centroid: engines
            .has_large()
            .then(|| CentroidPlan::new(text, core, b)),
        width,
    }
}

#[allow(clippy::too_many_arguments)]
fn assemble(
    text: TextCorpus,
    core: IndexCore,
    b: usize,
    engines: EngineSet,
    centroid: Option<CentroidPlan>,
    params: HashParams,
    built: (FactorIndex, Option<HashedTrees>),
    attempts: u32,
) -> Index {
    let (factors, hashed) = built;
    let large = centroid.zip(hashed).map(|(p, h)| p.into_engine(h));
    let stats = BuildStats {
        seed_attempts: attempts,
        correction_entries: large.as_ref().map_or(0, CentroidEngine::entry_count),
    };
    let small = SmallEngine::from_parts(text, core, b, params, factors);
    Index {
        small,
        large,
        engines,
        stats,
    }
}
