//! Sentinel-terminated texts over a dense integer alphabet.
//!
//! Raw bytes are remapped to symbols `2..=sigma` in ascending byte order, so
//! lexicographic order on encoded strings agrees with byte order on the raw
//! input. Symbol `1` is the sentinel `$` and occurs exactly once, at the end.
//! Positions are 1-based; position `0` reads as the sentinel.

use crate::error::{Error, Result};

/// Alphabet symbol. `SENTINEL` is the smallest.
pub type Symbol = u32;

pub const SENTINEL: Symbol = 1;

/// Largest supported text length.
pub const MAX_LEN: usize = 1 << 48;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Text {
    chars: Vec<Symbol>,
    sigma: u32,
    decode: Vec<u8>,
}

/// Byte-to-symbol mapping shared by texts and indexes built from them.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Alphabet {
    /// `decode[s - 1]` is the byte for symbol `s`; `decode[0]` is the sentinel byte 0x00.
    decode: Vec<u8>,
}

impl Alphabet {
    pub fn from_decode_map(decode: Vec<u8>) -> Self {
        Alphabet { decode }
    }

    pub fn decode_map(&self) -> &[u8] {
        &self.decode
    }

    pub fn sigma(&self) -> u32 {
        self.decode.len() as u32
    }

    pub fn decode(&self, s: Symbol) -> Option<u8> {
        if s == 0 {
            return None;
        }
        self.decode.get(s as usize - 1).copied()
    }

    /// Symbol for a raw byte, if the byte occurs in the text.
    pub fn encode(&self, b: u8) -> Option<Symbol> {
        // decode[1..] is sorted ascending
        if b == 0 {
            return if self.decode.is_empty() { None } else { Some(SENTINEL) };
        }
        self.decode[1..]
            .binary_search(&b)
            .ok()
            .map(|i| i as Symbol + 2)
    }

    /// Encodes a pattern; bytes outside the alphabet map to `None`.
    pub fn encode_pattern(&self, raw: &[u8]) -> Option<Vec<Symbol>> {
        raw.iter().map(|&b| self.encode(b)).collect()
    }
}

/// Encodes raw bytes, appending the sentinel if it is absent.
pub fn encode_text(raw: &[u8]) -> Result<Text> {
    if raw.is_empty() {
        return Err(Error::EmptyInput);
    }
    let body = match raw.iter().position(|&b| b == 0) {
        Some(i) if i + 1 == raw.len() => &raw[..i],
        Some(i) => return Err(Error::SentinelMisplaced(i)),
        None => raw,
    };
    if body.is_empty() {
        return Err(Error::EmptyInput);
    }
    if body.len() + 1 > MAX_LEN {
        return Err(Error::TooLong);
    }
    let mut seen = [false; 256];
    for &b in body {
        seen[b as usize] = true;
    }
    let mut rank = [0 as Symbol; 256];
    let mut decode = vec![0u8];
    for b in 1..256usize {
        if seen[b] {
            decode.push(b as u8);
            rank[b] = decode.len() as Symbol;
        }
    }
    let mut chars: Vec<Symbol> = body.iter().map(|&b| rank[b as usize]).collect();
    chars.push(SENTINEL);
    Ok(Text {
        chars,
        sigma: decode.len() as u32,
        decode,
    })
}

impl Text {
    /// Builds a text from symbols already in `[1..=sigma]`. The sentinel is
    /// appended when missing. Every symbol in the range must occur.
    pub fn from_symbols(mut chars: Vec<Symbol>, sigma: u32) -> Result<Text> {
        if chars.last() != Some(&SENTINEL) {
            chars.push(SENTINEL);
        }
        if chars.len() < 2 {
            return Err(Error::EmptyInput);
        }
        let mut seen = vec![false; sigma as usize + 1];
        for (i, &c) in chars.iter().enumerate() {
            if c == 0 || c > sigma {
                return Err(Error::UnknownSymbol(c));
            }
            if c == SENTINEL && i + 1 != chars.len() {
                return Err(Error::SentinelMisplaced(i));
            }
            seen[c as usize] = true;
        }
        if let Some(c) = (1..=sigma as usize).find(|&c| !seen[c]) {
            return Err(Error::UnknownSymbol(c as Symbol));
        }
        // no byte mapping; symbols are rendered numerically
        Ok(Text {
            chars,
            sigma,
            decode: Vec::new(),
        })
    }

    pub fn len(&self) -> usize {
        self.chars.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn sigma(&self) -> u32 {
        self.sigma
    }

    /// `T[1..n]` as a slice (index 0 holds `T[1]`).
    pub fn symbols(&self) -> &[Symbol] {
        &self.chars
    }

    /// `T[i]` for `i` in `[0..n]`, with `T[0] = $`.
    pub fn char_at(&self, i: usize) -> Result<Symbol> {
        match i {
            0 => Ok(SENTINEL),
            i if i <= self.chars.len() => Ok(self.chars[i - 1]),
            _ => Err(Error::OutOfRange {
                pos: i,
                n: self.chars.len(),
            }),
        }
    }

    /// The byte mapping, or `None` for texts built from raw symbols.
    pub fn alphabet(&self) -> Option<Alphabet> {
        if self.decode.is_empty() {
            None
        } else {
            Some(Alphabet::from_decode_map(self.decode.clone()))
        }
    }

    /// Decodes back to bytes; the sentinel decodes to 0x00.
    pub fn decode(&self) -> Option<Vec<u8>> {
        if self.decode.is_empty() {
            return None;
        }
        Some(
            self.chars
                .iter()
                .map(|&c| self.decode[c as usize - 1])
                .collect(),
        )
    }
}
