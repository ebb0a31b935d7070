//! Pattern parsing and string rendering.

use std::io::Write;

use rle_repeats::text::{Alphabet, Symbol};

/// C-style escaping: printable ASCII as is, `\\`, `\t`, `\n`, `\r`, `\0`
/// and `\xHH` otherwise.
pub fn escape(bytes: &[u8]) -> String {
    let mut out = String::with_capacity(bytes.len());
    for &b in bytes {
        match b {
            b'\\' => out.push_str("\\\\"),
            b'\t' => out.push_str("\\t"),
            b'\n' => out.push_str("\\n"),
            b'\r' => out.push_str("\\r"),
            0 => out.push_str("\\0"),
            0x20..=0x7e => out.push(b as char),
            _ => out.push_str(&format!("\\x{b:02x}")),
        }
    }
    out
}

/// Renders symbols through the decode map, or as comma-separated ids for
/// indexes built without one.
pub fn render(alphabet: Option<&Alphabet>, s: &[Symbol]) -> String {
    match alphabet {
        Some(a) => {
            let bytes: Vec<u8> = s.iter().map(|&c| a.decode(c).unwrap_or(b'?')).collect();
            escape(&bytes)
        }
        None => s.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","),
    }
}

/// A query pattern as typed and as symbols; `None` if it uses a byte or
/// symbol the index does not know.
pub struct Pattern {
    pub shown: String,
    pub symbols: Option<Vec<Symbol>>,
}

pub fn parse_pattern(
    raw: &[u8],
    hex_input: bool,
    alphabet: Option<&Alphabet>,
    sigma: u32,
) -> Result<Pattern, String> {
    let text = std::str::from_utf8(raw).ok();
    match alphabet {
        Some(a) => {
            let bytes = if hex_input {
                let t = text.ok_or("hex pattern is not ASCII")?.trim();
                hex::decode(t).map_err(|e| format!("bad hex pattern {t:?}: {e}"))?
            } else {
                raw.to_vec()
            };
            let shown = if hex_input {
                hex::encode(&bytes)
            } else {
                escape(&bytes)
            };
            Ok(Pattern {
                shown,
                symbols: a.encode_pattern(&bytes),
            })
        }
        None => {
            let t = text.ok_or("symbol-id pattern is not ASCII")?.trim();
            let mut ids = Vec::new();
            for part in t.split(',').filter(|p| !p.is_empty()) {
                let id: u64 = part
                    .trim()
                    .parse()
                    .map_err(|_| format!("bad symbol id {part:?}: this index has no byte alphabet, patterns are comma-separated symbol ids"))?;
                ids.push(id);
            }
            let symbols = ids
                .iter()
                .map(|&id| Symbol::try_from(id).ok().filter(|&c| c >= 1 && c <= sigma))
                .collect();
            Ok(Pattern {
                shown: t.to_string(),
                symbols,
            })
        }
    }
}

/// Tab-separated fields, one record per line.
pub fn tsv_line(out: &mut impl Write, fields: &[String]) -> std::io::Result<()> {
    writeln!(out, "{}", fields.join("\t"))
}
