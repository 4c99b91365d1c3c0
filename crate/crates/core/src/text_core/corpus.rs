use crate::error::{Error, Result};

/// Internal symbol code. `0` is the sentinel, `1..=sigma` are text symbols.
pub type Code = u32;

/// Padding code, smaller than every text symbol.
pub const SENTINEL: Code = 0;

/// Text plus its alphabet encoding.
///
/// Raw symbols are `u32` so large alphabets can be exercised; byte texts go
/// through [`TextCorpus::from_bytes`]. Codes preserve the order of raw symbols.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TextCorpus {
    alphabet: Vec<u32>,
    /// `text[0]` and `text[n + 1]` hold the sentinel so 1-based reads at the
    /// boundaries need no branch.
    text: Vec<Code>,
}

impl TextCorpus {
    pub fn from_symbols(raw: &[u32]) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::EmptyText);
        }
        if raw.len() >= (u32::MAX / 4) as usize {
            return Err(Error::TextTooLong { n: raw.len() });
        }
        let mut alphabet = raw.to_vec();
        alphabet.sort_unstable();
        alphabet.dedup();
        let mut text = Vec::with_capacity(raw.len() + 2);
        text.push(SENTINEL);
        for &s in raw {
            let idx = alphabet
                .binary_search(&s)
                .expect("symbol taken from the text");
            text.push(idx as Code + 1);
        }
        text.push(SENTINEL);
        Ok(Self { alphabet, text })
    }

    pub fn from_bytes(raw: &[u8]) -> Result<Self> {
        let symbols: Vec<u32> = raw.iter().map(|&b| b as u32).collect();
        Self::from_symbols(&symbols)
    }

    /// Rebuilds a corpus from an alphabet and already-encoded codes.
    pub fn from_parts(alphabet: Vec<u32>, codes: &[Code]) -> Option<Self> {
        if codes.is_empty() || alphabet.windows(2).any(|w| w[0] >= w[1]) {
            return None;
        }
        let sigma = alphabet.len() as Code;
        if codes.iter().any(|&c| c == SENTINEL || c > sigma) {
            return None;
        }
        let mut text = Vec::with_capacity(codes.len() + 2);
        text.push(SENTINEL);
        text.extend_from_slice(codes);
        text.push(SENTINEL);
        Some(Self { alphabet, text })
    }

    pub fn len(&self) -> usize {
        self.text.len() - 2
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn sigma(&self) -> usize {
        self.alphabet.len()
    }

    /// Wildcard code used by the type-2 correction trees.
    pub fn wildcard(&self) -> Code {
        self.alphabet.len() as Code + 1
    }

    /// Code given to pattern symbols that never occur in the text.
    pub fn unknown(&self) -> Code {
        self.alphabet.len() as Code + 2
    }

    pub fn alphabet(&self) -> &[u32] {
        &self.alphabet
    }

    /// Code at 1-based position `pos`; the sentinel outside `1..=n`.
    #[inline]
    pub fn at(&self, pos: usize) -> Code {
        match self.text.get(pos) {
            Some(&c) => c,
            None => SENTINEL,
        }
    }

    /// Text codes as a 0-based slice.
    pub fn codes(&self) -> &[Code] {
        &self.text[1..self.text.len() - 1]
    }

    pub fn encode(&self, symbol: u32) -> Code {
        match self.alphabet.binary_search(&symbol) {
            Ok(idx) => idx as Code + 1,
            Err(_) => self.unknown(),
        }
    }

    pub fn encode_pattern(&self, raw: &[u32]) -> Vec<Code> {
        raw.iter().map(|&s| self.encode(s)).collect()
    }

    pub fn encode_bytes(&self, raw: &[u8]) -> Vec<Code> {
        raw.iter().map(|&s| self.encode(s as u32)).collect()
    }

    /// Raw symbol for a text code, `None` for sentinel, wildcard and unknown.
    pub fn decode(&self, code: Code) -> Option<u32> {
        if code == SENTINEL {
            return None;
        }
        self.alphabet.get(code as usize - 1).copied()
    }

    /// Raw symbols of the text.
    pub fn raw(&self) -> Vec<u32> {
        self.codes()
            .iter()
            .map(|&c| self.alphabet[c as usize - 1])
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn encoding_preserves_order() {
        let t = TextCorpus::from_bytes(b"banana").unwrap();
        assert_eq!(t.sigma(), 3);
        assert_eq!(t.codes(), &[2, 1, 3, 1, 3, 1]);
        assert_eq!(t.at(0), SENTINEL);
        assert_eq!(t.at(7), SENTINEL);
        assert_eq!(t.wildcard(), 4);
        assert_eq!(t.encode(b'z' as u32), 5);
        assert_eq!(t.decode(3), Some(b'n' as u32));
        assert_eq!(t.decode(4), None);
        assert_eq!(
            t.raw(),
            b"banana".iter().map(|&b| b as u32).collect::<Vec<_>>()
        );
    }

    #[test]
    fn empty_text_rejected() {
        assert_eq!(TextCorpus::from_bytes(b""), Err(Error::EmptyText));
    }

    #[test]
    fn from_parts_validates() {
        assert!(TextCorpus::from_parts(vec![1, 2], &[1, 2, 1]).is_some());
        assert!(TextCorpus::from_parts(vec![1, 2], &[1, 3]).is_none());
        assert!(TextCorpus::from_parts(vec![2, 1], &[1]).is_none());
        assert!(TextCorpus::from_parts(vec![1], &[]).is_none());
    }
}
