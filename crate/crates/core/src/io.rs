//! Little-endian fixed-width helpers for the binary formats.

use crate::error::{Error, Result};

pub(crate) fn put_u64(out: &mut Vec<u8>, v: u64) {
    out.extend_from_slice(&v.to_le_bytes());
}

pub(crate) fn put_usize(out: &mut Vec<u8>, v: usize) {
    put_u64(out, v as u64);
}

pub(crate) struct Reader<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    pub(crate) fn new(buf: &'a [u8]) -> Self {
        Reader { buf, pos: 0 }
    }

    pub(crate) fn bytes(&mut self, len: usize) -> Result<&'a [u8]> {
        let end = self.pos.checked_add(len).ok_or(Error::Truncated)?;
        if end > self.buf.len() {
            return Err(Error::Truncated);
        }
        let out = &self.buf[self.pos..end];
        self.pos = end;
        Ok(out)
    }

    pub(crate) fn magic(&mut self, expected: &'static [u8]) -> Result<()> {
        if self.buf.len() - self.pos < expected.len() {
            return Err(Error::Truncated);
        }
        if self.bytes(expected.len())? != expected {
            return Err(Error::BadMagic { expected });
        }
        Ok(())
    }

    pub(crate) fn u64(&mut self) -> Result<u64> {
        let b = self.bytes(8)?;
        Ok(u64::from_le_bytes(b.try_into().expect("8 bytes")))
    }

    pub(crate) fn usize(&mut self) -> Result<usize> {
        usize::try_from(self.u64()?).map_err(|_| Error::Corrupt("integer overflows usize".into()))
    }

    /// Reads a length prefix, rejecting values that cannot fit in the rest of the buffer.
    pub(crate) fn len_prefix(&mut self, elem_size: usize) -> Result<usize> {
        let len = self.usize()?;
        let rest = self.buf.len() - self.pos;
        if len.checked_mul(elem_size).is_none_or(|b| b > rest) {
            return Err(Error::Truncated);
        }
        Ok(len)
    }

    pub(crate) fn usize_vec(&mut self, len: usize) -> Result<Vec<usize>> {
        (0..len).map(|_| self.usize()).collect()
    }

    pub(crate) fn is_at_end(&self) -> bool {
        self.pos == self.buf.len()
    }
}
