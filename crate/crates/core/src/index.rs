//! The on-disk index: RLBWT, mapping tables and NF trie in one file.
//!
//! Layout (little-endian, see `docs/FORMAT.md`):
//! `[header][rlbwt][move tables][trie]`. Baseline indexes carry no move
//! tables; their mapper is rebuilt from the runs on load.

use std::path::Path;

use crate::error::{Error, Result};
use crate::io::{put_u64, put_usize, Reader};
use crate::mapping::{
    sample_sa_at_run_boundaries, AnyMapper, BaselineMapper, BoundarySamples, MapperKind,
    MoveMapper, DEFAULT_BALANCE,
};
use crate::nftrie::{BuildOptions, ChildLookupKind, NfTrie};
use crate::range_distinct::RdIndex;
use crate::renum::Engine;
use crate::rlbwt::Rlbwt;
use crate::text::{Alphabet, Text};

pub const INDEX_MAGIC: &[u8; 8] = b"RLEREPX\0";
pub const INDEX_VERSION: u64 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IndexOptions {
    pub mapper: MapperKind,
    pub balance: usize,
    pub with_nocc: bool,
    pub lookup: ChildLookupKind,
}

impl Default for IndexOptions {
    fn default() -> Self {
        IndexOptions {
            mapper: MapperKind::Move,
            balance: DEFAULT_BALANCE,
            with_nocc: false,
            lookup: ChildLookupKind::Hashed,
        }
    }
}

pub struct Index {
    rl: Rlbwt,
    mapper: AnyMapper,
    rd: RdIndex,
    samples: BoundarySamples,
    trie: NfTrie,
    alphabet: Option<Alphabet>,
    balance: usize,
}

impl Index {
    pub fn from_text(t: &Text, opts: IndexOptions) -> Result<Index> {
        Self::build(Rlbwt::from_text(t), t.alphabet(), opts)
    }

    /// Builds every structure from the runs. `alphabet` is only used to
    /// translate patterns and output strings.
    pub fn build(rl: Rlbwt, alphabet: Option<Alphabet>, opts: IndexOptions) -> Result<Index> {
        if let Some(a) = &alphabet {
            if a.sigma() != rl.sigma() {
                return Err(Error::InvalidRlbwt("alphabet size disagrees with runs".into()));
            }
        }
        let mapper = AnyMapper::build(&rl, opts.mapper, opts.balance);
        let rd = RdIndex::build(&rl);
        let samples = sample_sa_at_run_boundaries(&rl, &mapper);
        let trie = {
            let engine = Engine::new(&rl, &mapper, &rd, &samples);
            NfTrie::build(
                &engine,
                BuildOptions {
                    with_nocc: opts.with_nocc,
                    lookup: opts.lookup,
                },
            )?
        };
        Ok(Index {
            rl,
            mapper,
            rd,
            samples,
            trie,
            alphabet,
            balance: opts.balance,
        })
    }

    pub fn rlbwt(&self) -> &Rlbwt {
        &self.rl
    }

    pub fn mapper(&self) -> &AnyMapper {
        &self.mapper
    }

    pub fn trie(&self) -> &NfTrie {
        &self.trie
    }

    pub fn samples(&self) -> &BoundarySamples {
        &self.samples
    }

    pub fn alphabet(&self) -> Option<&Alphabet> {
        self.alphabet.as_ref()
    }

    pub fn balance(&self) -> usize {
        self.balance
    }

    pub fn engine(&self) -> Engine<'_, AnyMapper> {
        Engine::new(&self.rl, &self.mapper, &self.rd, &self.samples)
    }

    /// Size of the mapping tables in intervals (`r` for the baseline).
    pub fn mapper_intervals(&self) -> usize {
        match &self.mapper {
            AnyMapper::Baseline(_) => self.rl.r(),
            AnyMapper::Move(m) => m.lf_table().len(),
        }
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        out.extend_from_slice(INDEX_MAGIC);
        put_u64(&mut out, INDEX_VERSION);
        put_u64(
            &mut out,
            match self.mapper.kind() {
                MapperKind::Baseline => 0,
                MapperKind::Move => 1,
            },
        );
        put_usize(&mut out, self.balance);
        match &self.alphabet {
            Some(a) => {
                put_usize(&mut out, a.decode_map().len());
                out.extend_from_slice(a.decode_map());
            }
            None => put_usize(&mut out, 0),
        }
        out.extend_from_slice(&self.rl.to_bytes());
        if let AnyMapper::Move(m) = &self.mapper {
            m.write(&mut out);
        }
        self.trie.write(&mut out);
        out
    }

    pub fn from_bytes(buf: &[u8]) -> Result<Index> {
        let mut rd = Reader::new(buf);
        rd.magic(INDEX_MAGIC)?;
        let version = rd.u64()?;
        if version != INDEX_VERSION {
            return Err(Error::VersionMismatch {
                found: version,
                expected: INDEX_VERSION,
            });
        }
        let kind = match rd.u64()? {
            0 => MapperKind::Baseline,
            1 => MapperKind::Move,
            k => return Err(Error::Corrupt(format!("unknown mapper kind {k}"))),
        };
        let balance = rd.usize()?;
        let alen = rd.len_prefix(1)?;
        let alphabet = match alen {
            0 => None,
            _ => Some(Alphabet::from_decode_map(rd.bytes(alen)?.to_vec())),
        };
        let rl = Rlbwt::read(&mut rd)?;
        rl.validate()?;
        if alphabet.as_ref().is_some_and(|a| a.sigma() != rl.sigma()) {
            return Err(Error::Corrupt("decode map size disagrees with RLBWT".into()));
        }
        let mapper = match kind {
            MapperKind::Baseline => AnyMapper::Baseline(BaselineMapper::build(&rl)),
            MapperKind::Move => {
                let m = MoveMapper::read(&mut rd, &rl)?;
                if m.lf_table().balance() != balance {
                    return Err(Error::Corrupt("balance parameter disagrees".into()));
                }
                AnyMapper::Move(m)
            }
        };
        let trie = NfTrie::read(&mut rd, &mapper)?;
        if !rd.is_at_end() {
            return Err(Error::Corrupt("trailing bytes after index".into()));
        }
        let rd_index = RdIndex::build(&rl);
        let samples = sample_sa_at_run_boundaries(&rl, &mapper);
        Ok(Index {
            rl,
            mapper,
            rd: rd_index,
            samples,
            trie,
            alphabet,
            balance,
        })
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_bytes())?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Index> {
        Self::from_bytes(&std::fs::read(path)?)
    }
}
