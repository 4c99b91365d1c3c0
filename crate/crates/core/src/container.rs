//! Binary index container.
//!
//! Layout, all integers little-endian:
//! `"ED1X"`, u32 version, u32 engine flags, u64 n, sigma, b, P, r, then the
//! alphabet, text codes, sa, isa, rsa and risa as u64-count-prefixed u32
//! arrays, then a CRC-64/ECMA-182 of every preceding byte. Derived
//! structures are rebuilt on load under the stored seed.

use std::io::{Read, Write};
use std::path::Path;

use crc::{Crc, CRC_64_ECMA_182};
use thiserror::Error;

use crate::error::Error;
use crate::index::{EngineSet, Index};
use crate::poly_hash::HashParams;
use crate::text_core::{IndexCore, TextCorpus};

pub const MAGIC: &[u8; 4] = b"ED1X";
pub const VERSION: u32 = 1;

const CRC64: Crc<u64> = Crc::<u64>::new(&CRC_64_ECMA_182);

#[derive(Debug, Error)]
pub enum ContainerError {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("corrupt index: {0}")]
    Corrupt(String),
    #[error(transparent)]
    Index(Error),
}

impl From<Error> for ContainerError {
    fn from(e: Error) -> Self {
        match e {
            Error::Corrupt(msg) => ContainerError::Corrupt(msg),
            other => ContainerError::Index(other),
        }
    }
}

fn corrupt(msg: impl Into<String>) -> ContainerError {
    ContainerError::Corrupt(msg.into())
}

fn put_array(out: &mut Vec<u8>, a: &[u32]) {
    out.extend_from_slice(&(a.len() as u64).to_le_bytes());
    for &x in a {
        out.extend_from_slice(&x.to_le_bytes());
    }
}

/// Serialized bytes of an index, checksum included.
pub fn to_bytes(index: &Index) -> Vec<u8> {
    let text = index.text();
    let core = index.core();
    let params = index.params();
    let mut out = Vec::new();
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&VERSION.to_le_bytes());
    out.extend_from_slice(&index.engines().flags().to_le_bytes());
    for v in [text.len(), text.sigma(), index.max_pattern_len()] {
        out.extend_from_slice(&(v as u64).to_le_bytes());
    }
    out.extend_from_slice(&params.modulus.to_le_bytes());
    out.extend_from_slice(&params.seed.to_le_bytes());
    put_array(&mut out, text.alphabet());
    put_array(&mut out, text.codes());
    for a in [&core.sa, &core.isa, &core.rsa, &core.risa] {
        put_array(&mut out, a);
    }
    let sum = CRC64.checksum(&out);
    out.extend_from_slice(&sum.to_le_bytes());
    out
}

struct Reader<'a> {
    buf: &'a [u8],
    at: usize,
}

impl Reader<'_> {
    fn take(&mut self, k: usize) -> Result<&[u8], ContainerError> {
        let end = self
            .at
            .checked_add(k)
            .filter(|&e| e <= self.buf.len())
            .ok_or_else(|| corrupt("truncated"))?;
        let s = &self.buf[self.at..end];
        self.at = end;
        Ok(s)
    }

    fn u32(&mut self) -> Result<u32, ContainerError> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    fn u64(&mut self) -> Result<u64, ContainerError> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    fn array(&mut self) -> Result<Vec<u32>, ContainerError> {
        let len = self.u64()?;
        let bytes = usize::try_from(len)
            .ok()
            .and_then(|l| l.checked_mul(4))
            .ok_or_else(|| corrupt("array length"))?;
        Ok(self
            .take(bytes)?
            .chunks_exact(4)
            .map(|c| u32::from_le_bytes(c.try_into().unwrap()))
            .collect())
    }
}

/// Parses and validates a container, rebuilding the index.
pub fn from_bytes(bytes: &[u8]) -> Result<Index, ContainerError> {
    if bytes.len() < 8 {
        return Err(corrupt("truncated"));
    }
    let (body, tail) = bytes.split_at(bytes.len() - 8);
    if CRC64.checksum(body) != u64::from_le_bytes(tail.try_into().unwrap()) {
        return Err(corrupt("checksum mismatch"));
    }
    let mut r = Reader { buf: body, at: 0 };
    if r.take(4)? != MAGIC {
        return Err(corrupt("bad magic"));
    }
    let version = r.u32()?;
    if version != VERSION {
        return Err(corrupt(format!("unsupported version {version}")));
    }
    let engines = EngineSet::from_flags(r.u32()?).ok_or_else(|| corrupt("engine flags"))?;
    let n = r.u64()? as usize;
    let sigma = r.u64()? as usize;
    let b = r.u64()? as usize;
    let modulus = r.u64()?;
    let seed = r.u64()?;
    let alphabet = r.array()?;
    let codes = r.array()?;
    let [sa, isa, rsa, risa] = [r.array()?, r.array()?, r.array()?, r.array()?];
    if r.at != body.len() {
        return Err(corrupt("trailing bytes"));
    }
    if alphabet.len() != sigma
        || codes.len() != n
        || codes.iter().any(|&c| c == 0 || c as usize > sigma)
    {
        return Err(corrupt("text does not match its header"));
    }
    if modulus < 3 || seed == 0 || seed >= modulus {
        return Err(corrupt("hash parameters"));
    }
    let text = TextCorpus::from_parts(alphabet, &codes).ok_or_else(|| corrupt("alphabet"))?;
    let core = IndexCore::from_arrays(&text, sa, isa, rsa, risa)
        .map_err(|e| corrupt(format!("suffix arrays: {e:?}")))?;
    Ok(Index::from_stored(
        text,
        core,
        b,
        engines,
        HashParams::new(modulus, seed),
    )?)
}

pub fn save(index: &Index, path: &Path) -> Result<(), ContainerError> {
    let mut f = std::fs::File::create(path)?;
    f.write_all(&to_bytes(index))?;
    Ok(f.sync_all()?)
}

pub fn load(path: &Path) -> Result<Index, ContainerError> {
    let mut bytes = Vec::new();
    std::fs::File::open(path)?.read_to_end(&mut bytes)?;
    from_bytes(&bytes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::index::{BuildConfig, EngineKind};

    fn sample(seed: u64) -> Index {
        let cfg = BuildConfig {
            max_pattern_len: 6,
            engines: EngineSet::Both,
            seed,
        };
        Index::build(TextCorpus::from_bytes(b"mississippi river").unwrap(), &cfg).unwrap()
    }

    #[test]
    fn round_trip_identity() {
        let idx = sample(5);
        let bytes = to_bytes(&idx);
        let back = from_bytes(&bytes).unwrap();
        assert_eq!(to_bytes(&back), bytes);
        assert_eq!(back.params(), idx.params());
        for q in [&b"issi"[..], b"sip", b"rver"] {
            assert_eq!(
                back.query_bytes(q, EngineKind::Large).unwrap(),
                idx.query_bytes(q, EngineKind::Large).unwrap()
            );
        }
    }

    #[test]
    fn deterministic_bytes() {
        assert_eq!(to_bytes(&sample(9)), to_bytes(&sample(9)));
    }

    #[test]
    fn every_bit_flip_is_rejected() {
        let bytes = to_bytes(&sample(1));
        for i in 0..bytes.len() {
            for bit in 0..8 {
                let mut bad = bytes.clone();
                bad[i] ^= 1 << bit;
                assert!(
                    matches!(from_bytes(&bad), Err(ContainerError::Corrupt(_))),
                    "byte {i} bit {bit}"
                );
            }
        }
        assert!(matches!(
            from_bytes(&bytes[..bytes.len() - 1]),
            Err(ContainerError::Corrupt(_))
        ));
    }
}
