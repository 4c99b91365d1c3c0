//! Match lines: `start<TAB>length<TAB>kind<TAB>pos<TAB>char`.

use std::fmt::Write;

use ed1x_core::engine_small::Occurrence;
use ed1x_core::poly_hash::Edit;
use ed1x_core::Index;

/// Printable ASCII verbatim, anything else as `\xHH`.
pub fn escape(symbol: u32) -> String {
    match symbol {
        0x21..=0x7e if symbol != u32::from(b'\\') => char::from_u32(symbol).unwrap().to_string(),
        0..=0xff => format!("\\x{symbol:02x}"),
        _ => format!("\\u{{{symbol:x}}}"),
    }
}

/// One line per occurrence; deletions name the removed pattern byte.
pub fn render(idx: &Index, pattern: &[u8], occ: &[Occurrence]) -> String {
    let text = idx.text();
    let mut out = String::new();
    for o in occ {
        let kind = o.edit.kind().name();
        let (pos, ch) = match o.edit {
            Edit::Exact => (String::new(), String::new()),
            Edit::Deletion { pos } => (
                pos.to_string(),
                escape(u32::from(pattern[pos as usize - 1])),
            ),
            Edit::Substitution { pos, ch } | Edit::Insertion { pos, ch } => (
                pos.to_string(),
                text.decode(ch).map(escape).unwrap_or_default(),
            ),
        };
        writeln!(out, "{}\t{}\t{kind}\t{pos}\t{ch}", o.start, o.length).unwrap();
    }
    out
}
