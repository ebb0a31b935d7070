//! Compacted reversed trie over the repeats with positive net frequency.
//!
//! A node stands for a string `x`; its parent is the longest proper suffix of
//! `x` that is also a node. Edge labels are not stored: the label from parent
//! `y` to `x` is `x[1 .. |x| - |y|]`, spelled by FL walking from a row of
//! `I(x)`. Each child is keyed by the last label symbol, the one next to `y`,
//! so patterns are matched right to left.
//!
//! The trie is built during the traversal. Every visited node enters the trie
//! with its kept left extensions as children; nodes that turn out to be
//! neither net-frequent nor branching are spliced out as soon as that is
//! known.

use std::collections::HashMap;
use std::hash::{BuildHasherDefault, DefaultHasher};
use std::ops::ControlFlow;

use crate::classes::Classes;
use crate::error::{Error, Result};
use crate::io::{put_u64, put_usize, Reader};
use crate::mapping::{Cursor, Mapper};
use crate::renum::{Child, Engine, NodeReport};
use crate::text::Symbol;

pub const TRIE_MAGIC: &[u8; 6] = b"NFTR1\0";

const NONE: u32 = u32::MAX;

/// How a node finds the child for a symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChildLookupKind {
    /// One hash table over `(node, symbol)` with a fixed seed.
    Hashed,
    /// Scan (up to 8 children) or binary search over the sorted child list.
    Sorted,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BuildOptions {
    pub with_nocc: bool,
    pub lookup: ChildLookupKind,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            with_nocc: false,
            lookup: ChildLookupKind::Hashed,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NfTrieNode {
    pub depth: usize,
    /// FL-side cursor at a row of `I(x)`.
    pub witness: Cursor,
    pub parent: u32,
    pub key: Symbol,
    pub nf: usize,
}

/// Result of a traced query.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QueryTrace {
    pub nf: usize,
    pub node: Option<u32>,
    /// Child lookups, FL steps and symbol comparisons.
    pub work: usize,
}

type Fixed = BuildHasherDefault<DefaultHasher>;

#[derive(Clone, Debug)]
pub struct NfTrie {
    nodes: Vec<NfTrieNode>,
    /// Children of node `v` are `child_ids[child_off[v]..child_off[v + 1]]`, sorted by key.
    child_off: Vec<usize>,
    child_ids: Vec<u32>,
    nocc_off: Option<Vec<usize>>,
    nocc: Vec<usize>,
    lookup: ChildLookupKind,
    table: HashMap<(u32, Symbol), u32, Fixed>,
}

#[derive(Clone, Debug)]
struct BuildNode {
    depth: usize,
    witness: usize,
    parent: u32,
    key: Symbol,
    nocc: Vec<usize>,
    nf: usize,
    first_child: u32,
    prev: u32,
    next: u32,
    children: usize,
    nsmr: bool,
}

/// Visitor that maintains the compacted trie during a traversal.
pub struct NfTrieBuilder {
    nodes: Vec<BuildNode>,
    free: Vec<u32>,
    pending: HashMap<(usize, usize), u32>,
    with_nocc: bool,
    /// Largest number of live nodes seen.
    pub peak_nodes: usize,
    live: usize,
}

impl NfTrieBuilder {
    pub fn new(with_nocc: bool) -> NfTrieBuilder {
        let root = BuildNode {
            depth: 0,
            witness: 1,
            parent: NONE,
            key: 0,
            nocc: Vec::new(),
            nf: 0,
            first_child: NONE,
            prev: NONE,
            next: NONE,
            children: 0,
            nsmr: false,
        };
        let mut pending = HashMap::new();
        pending.insert((0, 1), 0);
        NfTrieBuilder {
            nodes: vec![root],
            free: Vec::new(),
            pending,
            with_nocc,
            peak_nodes: 1,
            live: 1,
        }
    }

    fn alloc(&mut self, node: BuildNode) -> u32 {
        self.live += 1;
        self.peak_nodes = self.peak_nodes.max(self.live);
        match self.free.pop() {
            Some(id) => {
                self.nodes[id as usize] = node;
                id
            }
            None => {
                self.nodes.push(node);
                (self.nodes.len() - 1) as u32
            }
        }
    }

    fn release(&mut self, id: u32) {
        self.live -= 1;
        self.nodes[id as usize].nocc = Vec::new();
        self.free.push(id);
    }

    fn link_child(&mut self, parent: u32, id: u32) {
        let head = self.nodes[parent as usize].first_child;
        {
            let n = &mut self.nodes[id as usize];
            n.parent = parent;
            n.prev = NONE;
            n.next = head;
        }
        if head != NONE {
            self.nodes[head as usize].prev = id;
        }
        let p = &mut self.nodes[parent as usize];
        p.first_child = id;
        p.children += 1;
    }

    fn unlink(&mut self, id: u32) {
        let (parent, prev, next) = {
            let n = &self.nodes[id as usize];
            (n.parent, n.prev, n.next)
        };
        if prev != NONE {
            self.nodes[prev as usize].next = next;
        } else {
            self.nodes[parent as usize].first_child = next;
        }
        if next != NONE {
            self.nodes[next as usize].prev = prev;
        }
        self.nodes[parent as usize].children -= 1;
    }

    /// Replaces the single-child node `id` by its child.
    fn splice(&mut self, id: u32) {
        let (parent, key, child) = {
            let n = &self.nodes[id as usize];
            debug_assert_eq!(n.children, 1);
            (n.parent, n.key, n.first_child)
        };
        self.unlink(id);
        self.nodes[child as usize].key = key;
        self.link_child(parent, child);
        self.release(id);
    }

    fn removable(&self, id: u32) -> bool {
        id != 0 && !self.nodes[id as usize].nsmr
    }

    fn on_visit(&mut self, node: &NodeReport<'_>, children: &[Child]) {
        let id = self
            .pending
            .remove(&(node.depth, node.p))
            .expect("every visited node was announced by its parent");
        {
            let n = &mut self.nodes[id as usize];
            n.nsmr = node.classes.contains(Classes::NSMR);
            n.nf = node.nf();
            if self.with_nocc {
                n.nocc = node.net_occurrences.to_vec();
            }
        }
        for c in children {
            let child = self.alloc(BuildNode {
                depth: node.depth + 1,
                witness: c.p,
                parent: NONE,
                key: c.sym,
                nocc: Vec::new(),
                nf: 0,
                first_child: NONE,
                prev: NONE,
                next: NONE,
                children: 0,
                nsmr: false,
            });
            self.link_child(id, child);
            self.pending.insert((node.depth + 1, c.p), child);
        }
        if !self.removable(id) {
            return;
        }
        match children.len() {
            0 => {
                let parent = self.nodes[id as usize].parent;
                self.unlink(id);
                self.release(id);
                if self.removable(parent) && self.nodes[parent as usize].children == 1 {
                    self.splice(parent);
                }
            }
            1 => self.splice(id),
            _ => {}
        }
    }

    pub fn finish<M: Mapper + ?Sized>(self, mapper: &M, lookup: ChildLookupKind) -> NfTrie {
        debug_assert!(self.pending.is_empty());
        // renumber live nodes breadth first
        let mut order = vec![0u32];
        let mut new_id = vec![NONE; self.nodes.len()];
        new_id[0] = 0;
        let mut child_off = vec![0];
        let mut child_ids = Vec::new();
        let mut i = 0;
        while i < order.len() {
            let v = order[i] as usize;
            let mut kids = Vec::new();
            let mut c = self.nodes[v].first_child;
            while c != NONE {
                kids.push(c);
                c = self.nodes[c as usize].next;
            }
            kids.sort_by_key(|&c| self.nodes[c as usize].key);
            for c in kids {
                new_id[c as usize] = order.len() as u32;
                child_ids.push(order.len() as u32);
                order.push(c);
            }
            child_off.push(child_ids.len());
            i += 1;
        }
        let nodes: Vec<NfTrieNode> = order
            .iter()
            .map(|&v| {
                let b = &self.nodes[v as usize];
                NfTrieNode {
                    depth: b.depth,
                    witness: mapper.fl_cursor(b.witness),
                    parent: if b.parent == NONE {
                        NONE
                    } else {
                        new_id[b.parent as usize]
                    },
                    key: b.key,
                    nf: b.nf,
                }
            })
            .collect();
        let (nocc_off, nocc) = if self.with_nocc {
            let mut off = vec![0];
            let mut all = Vec::new();
            for &v in &order {
                all.extend_from_slice(&self.nodes[v as usize].nocc);
                off.push(all.len());
            }
            (Some(off), all)
        } else {
            (None, Vec::new())
        };
        NfTrie::assemble(nodes, child_off, child_ids, nocc_off, nocc, lookup)
    }
}

impl crate::renum::Visitor for NfTrieBuilder {
    fn visit(&mut self, node: &NodeReport<'_>, children: &[Child]) -> ControlFlow<()> {
        self.on_visit(node, children);
        ControlFlow::Continue(())
    }
}

impl NfTrie {
    /// Runs a traversal and builds the trie from it.
    pub fn build<M: Mapper + ?Sized>(engine: &Engine<'_, M>, opts: BuildOptions) -> Result<NfTrie> {
        let mut b = NfTrieBuilder::new(opts.with_nocc);
        engine.traverse(&mut b)?;
        Ok(b.finish(engine.mapper(), opts.lookup))
    }

    fn assemble(
        nodes: Vec<NfTrieNode>,
        child_off: Vec<usize>,
        child_ids: Vec<u32>,
        nocc_off: Option<Vec<usize>>,
        nocc: Vec<usize>,
        lookup: ChildLookupKind,
    ) -> NfTrie {
        let mut table = HashMap::default();
        if lookup == ChildLookupKind::Hashed {
            table.reserve(child_ids.len());
            for v in 0..nodes.len() {
                for &c in &child_ids[child_off[v]..child_off[v + 1]] {
                    table.insert((v as u32, nodes[c as usize].key), c);
                }
            }
        }
        NfTrie {
            nodes,
            child_off,
            child_ids,
            nocc_off,
            nocc,
            lookup,
            table,
        }
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn root(&self) -> u32 {
        0
    }

    pub fn node(&self, id: u32) -> &NfTrieNode {
        &self.nodes[id as usize]
    }

    pub fn children(&self, id: u32) -> &[u32] {
        let v = id as usize;
        &self.child_ids[self.child_off[v]..self.child_off[v + 1]]
    }

    pub fn lookup_kind(&self) -> ChildLookupKind {
        self.lookup
    }

    pub fn stores_nocc(&self) -> bool {
        self.nocc_off.is_some()
    }

    /// Number of nodes with positive net frequency, the root included.
    pub fn nsmr_count(&self) -> usize {
        self.nodes.iter().filter(|n| n.nf > 0).count()
    }

    pub fn child(&self, id: u32, key: Symbol) -> Option<u32> {
        match self.lookup {
            ChildLookupKind::Hashed => self.table.get(&(id, key)).copied(),
            ChildLookupKind::Sorted => {
                let kids = self.children(id);
                if kids.len() <= 8 {
                    kids.iter()
                        .copied()
                        .find(|&c| self.nodes[c as usize].key == key)
                } else {
                    kids.binary_search_by_key(&key, |&c| self.nodes[c as usize].key)
                        .ok()
                        .map(|i| kids[i])
                }
            }
        }
    }

    /// Label of the edge into `id`, left to right.
    pub fn edge_label<M: Mapper + ?Sized>(&self, m: &M, id: u32) -> Vec<Symbol> {
        let mut out = Vec::new();
        self.spell_into(m, id, &mut out);
        out
    }

    /// The string of node `id`.
    pub fn string<M: Mapper + ?Sized>(&self, m: &M, id: u32) -> Vec<Symbol> {
        let n = &self.nodes[id as usize];
        crate::mapping::spell(m, n.witness.pos, n.depth)
    }

    fn spell_into<M: Mapper + ?Sized>(&self, m: &M, id: u32, out: &mut Vec<Symbol>) {
        out.clear();
        let n = &self.nodes[id as usize];
        if n.parent == NONE {
            return;
        }
        let len = n.depth - self.nodes[n.parent as usize].depth;
        let mut c = n.witness;
        out.push(m.first_symbol(c));
        for _ in 1..len {
            c = m.fl_step(c);
            out.push(m.first_symbol(c));
        }
    }

    /// Net frequency of `pattern`, 0 unless it is a node.
    pub fn nf_query<M: Mapper + ?Sized>(&self, m: &M, pattern: &[Symbol]) -> usize {
        self.nf_query_traced(m, pattern, &mut Vec::new()).nf
    }

    /// [`NfTrie::nf_query`] with a caller-owned label buffer and work count.
    pub fn nf_query_traced<M: Mapper + ?Sized>(
        &self,
        m: &M,
        pattern: &[Symbol],
        label: &mut Vec<Symbol>,
    ) -> QueryTrace {
        let mut work = 0;
        let mut v = 0u32;
        let mut matched = 0;
        let miss = |work| QueryTrace {
            nf: 0,
            node: None,
            work,
        };
        while matched < pattern.len() {
            let key = pattern[pattern.len() - matched - 1];
            work += 1;
            let Some(c) = self.child(v, key) else {
                return miss(work);
            };
            let node = &self.nodes[c as usize];
            if node.depth > pattern.len() {
                return miss(work);
            }
            self.spell_into(m, c, label);
            work += label.len();
            let lo = pattern.len() - node.depth;
            let want = &pattern[lo..pattern.len() - matched];
            for (a, b) in label.iter().rev().zip(want.iter().rev()) {
                work += 1;
                if a != b {
                    return miss(work);
                }
            }
            v = c;
            matched = node.depth;
        }
        QueryTrace {
            nf: self.nodes[v as usize].nf,
            node: Some(v),
            work,
        }
    }

    /// Net occurrences of `pattern`, sorted.
    pub fn nocc_query<M: Mapper + ?Sized>(&self, m: &M, pattern: &[Symbol]) -> Result<Vec<usize>> {
        let off = self.nocc_off.as_ref().ok_or(Error::NoccNotStored)?;
        let t = self.nf_query_traced(m, pattern, &mut Vec::new());
        Ok(match t.node {
            Some(v) => self.nocc[off[v as usize]..off[v as usize + 1]].to_vec(),
            None => Vec::new(),
        })
    }

    pub(crate) fn write(&self, out: &mut Vec<u8>) {
        out.extend_from_slice(TRIE_MAGIC);
        let flags = self.nocc_off.is_some() as u64
            | ((self.lookup == ChildLookupKind::Sorted) as u64) << 1;
        put_u64(out, flags);
        put_usize(out, self.nodes.len());
        for n in &self.nodes {
            put_usize(out, n.depth);
            put_usize(out, n.witness.pos);
            put_u64(out, n.parent as u64);
            put_u64(out, n.key as u64);
            put_usize(out, n.nf);
        }
        for &o in &self.child_off {
            put_usize(out, o);
        }
        for &c in &self.child_ids {
            put_u64(out, c as u64);
        }
        if let Some(off) = &self.nocc_off {
            for &o in off {
                put_usize(out, o);
            }
            for &b in &self.nocc {
                put_usize(out, b);
            }
        }
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        self.write(&mut out);
        out
    }

    pub fn from_bytes<M: Mapper + ?Sized>(buf: &[u8], m: &M) -> Result<NfTrie> {
        let mut rd = Reader::new(buf);
        let t = Self::read(&mut rd, m)?;
        if !rd.is_at_end() {
            return Err(Error::Corrupt("trailing bytes after trie".into()));
        }
        Ok(t)
    }

    pub(crate) fn read<M: Mapper + ?Sized>(rd: &mut Reader<'_>, m: &M) -> Result<NfTrie> {
        let bad = |msg: &str| Error::Corrupt(format!("trie: {msg}"));
        rd.magic(TRIE_MAGIC)?;
        let flags = rd.u64()?;
        if flags > 3 {
            return Err(bad("unknown flags"));
        }
        let with_nocc = flags & 1 == 1;
        let lookup = if flags & 2 == 2 {
            ChildLookupKind::Sorted
        } else {
            ChildLookupKind::Hashed
        };
        let count = rd.len_prefix(40)?;
        if count == 0 || count >= NONE as usize {
            return Err(bad("node count"));
        }
        let n = m.n();
        let mut nodes = Vec::with_capacity(count);
        for _ in 0..count {
            let depth = rd.usize()?;
            let witness = rd.usize()?;
            let parent = rd.u64()?;
            let key = rd.u64()?;
            let nf = rd.usize()?;
            if witness == 0 || witness > n || depth > n || nf > n {
                return Err(bad("node field out of range"));
            }
            let parent = u32::try_from(parent).map_err(|_| bad("parent"))?;
            let key = Symbol::try_from(key).map_err(|_| bad("key"))?;
            nodes.push(NfTrieNode {
                depth,
                witness: m.fl_cursor(witness),
                parent,
                key,
                nf,
            });
        }
        let child_off = rd.usize_vec(count + 1)?;
        if child_off[0] != 0
            || child_off.windows(2).any(|w| w[0] > w[1])
            || child_off[count] != count - 1
        {
            return Err(bad("child offsets"));
        }
        let mut child_ids = Vec::with_capacity(count - 1);
        for _ in 0..count - 1 {
            let c = u32::try_from(rd.u64()?).map_err(|_| bad("child id"))?;
            child_ids.push(c);
        }
        // tree shape: root has no parent, every other node is listed once
        // under its parent, deeper than it, in key order
        if nodes[0].parent != NONE || nodes[0].depth != 0 {
            return Err(bad("root"));
        }
        let mut seen = vec![false; count];
        for v in 0..count {
            let kids = &child_ids[child_off[v]..child_off[v + 1]];
            for (j, &c) in kids.iter().enumerate() {
                let c = c as usize;
                if c == 0 || c >= count || seen[c] || nodes[c].parent as usize != v {
                    return Err(bad("child list"));
                }
                if nodes[c].depth <= nodes[v].depth {
                    return Err(bad("child depth"));
                }
                if j > 0 && nodes[kids[j - 1] as usize].key >= nodes[c].key {
                    return Err(bad("child order"));
                }
                seen[c] = true;
            }
        }
        let (nocc_off, nocc) = if with_nocc {
            let off = rd.usize_vec(count + 1)?;
            if off[0] != 0 || off.windows(2).any(|w| w[0] > w[1]) {
                return Err(bad("nocc offsets"));
            }
            let nocc = rd.usize_vec(off[count])?;
            if nocc.iter().any(|&b| b == 0 || b > n)
                || (0..count).any(|v| off[v + 1] - off[v] != nodes[v].nf)
            {
                return Err(bad("nocc counts"));
            }
            (Some(off), nocc)
        } else {
            (None, Vec::new())
        };
        Ok(NfTrie::assemble(nodes, child_off, child_ids, nocc_off, nocc, lookup))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mapping::{sample_sa_at_run_boundaries, AnyMapper, MapperKind};
    use crate::oracle::Oracle;
    use crate::range_distinct::RdIndex;
    use crate::rlbwt::Rlbwt;
    use crate::text::encode_text;
    use std::collections::HashMap;

    fn build(raw: &[u8], kind: MapperKind, opts: BuildOptions) -> (AnyMapper, NfTrie) {
        let t = encode_text(raw).unwrap();
        let rl = Rlbwt::from_text(&t);
        let m = AnyMapper::build(&rl, kind, 4);
        let rd = RdIndex::build(&rl);
        let samples = sample_sa_at_run_boundaries(&rl, &m);
        let trie = NfTrie::build(&Engine::new(&rl, &m, &rd, &samples), opts).unwrap();
        (m, trie)
    }

    fn sym(s: &str) -> Vec<Symbol> {
        s.bytes().map(|b| (b - b'a') as Symbol + 2).collect()
    }

    const WITH_NOCC: BuildOptions = BuildOptions {
        with_nocc: true,
        lookup: ChildLookupKind::Hashed,
    };

    #[test]
    fn running_example_shape() {
        let (m, trie) = build(b"abcbbcbcabc", MapperKind::Move, WITH_NOCC);
        assert_eq!(trie.node_count(), 4);
        let names: HashMap<Vec<Symbol>, u32> =
            (0..4).map(|v| (trie.string(&m, v), v)).collect();
        let (bc, abc, bcb) = (names[&sym("bc")], names[&sym("abc")], names[&sym("bcb")]);
        assert_eq!(trie.node(abc).parent, bc);
        assert_eq!(trie.node(bc).parent, 0);
        assert_eq!(trie.node(bcb).parent, 0);
        assert_eq!(trie.node(bcb).witness.pos, 7);
        assert_eq!(trie.edge_label(&m, bcb), sym("bcb"));
        assert_eq!(trie.edge_label(&m, abc), sym("a"));
        assert_eq!(trie.node(0).nf, 0);
    }

    #[test]
    fn running_example_queries() {
        for kind in [MapperKind::Baseline, MapperKind::Move] {
            for lookup in [ChildLookupKind::Hashed, ChildLookupKind::Sorted] {
                let opts = BuildOptions { with_nocc: true, lookup };
                let (m, trie) = build(b"abcbbcbcabc", kind, opts);
                let q = |s: &str| trie.nf_query(&m, &sym(s));
                assert_eq!((q("bc"), q("abc"), q("bcb")), (1, 2, 2));
                assert_eq!((q("cb"), q("abcb"), q("c"), q("")), (0, 0, 0, 0));
                assert_eq!(trie.nf_query(&m, &[24, 25, 26]), 0);
                assert_eq!(trie.nocc_query(&m, &sym("abc")).unwrap(), vec![1, 9]);
                assert_eq!(trie.nocc_query(&m, &sym("bc")).unwrap(), vec![7]);
                assert!(trie.nocc_query(&m, &sym("cb")).unwrap().is_empty());
            }
        }
    }

    #[test]
    fn epsilon_at_root() {
        let (m, trie) = build(b"ab", MapperKind::Move, BuildOptions::default());
        assert_eq!(trie.node_count(), 1);
        assert_eq!(trie.nf_query(&m, &[]), 3);
        assert!(matches!(trie.nocc_query(&m, &[]), Err(Error::NoccNotStored)));
    }

    #[test]
    fn round_trip() {
        for raw in [&b"abcbbcbcabc"[..], b"ab", b"mississippi", b"aaaaab"] {
            for opts in [WITH_NOCC, BuildOptions::default()] {
                let (m, trie) = build(raw, MapperKind::Move, opts);
                let bytes = trie.to_bytes();
                let back = NfTrie::from_bytes(&bytes, &m).unwrap();
                assert_eq!(back.to_bytes(), bytes);
                let t = encode_text(raw).unwrap();
                let s = t.symbols();
                for i in 0..s.len() {
                    for j in i..=s.len() {
                        let p = &s[i..j];
                        assert_eq!(back.nf_query(&m, p), trie.nf_query(&m, p));
                    }
                }
            }
        }
        let (m, trie) = build(b"abcbbcbcabc", MapperKind::Move, WITH_NOCC);
        let mut bytes = trie.to_bytes();
        bytes[0] ^= 0xff;
        assert!(matches!(NfTrie::from_bytes(&bytes, &m), Err(Error::BadMagic { .. })));
        let bytes = trie.to_bytes();
        assert!(matches!(
            NfTrie::from_bytes(&bytes[..bytes.len() - 3], &m),
            Err(Error::Truncated)
        ));
    }

    #[test]
    fn random_texts_match_oracle() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
        for round in 0..50 {
            let n = rng.gen_range(1..120);
            let k = [2u8, 3, 26][round % 3];
            let raw: Vec<u8> = (0..n).map(|_| b'a' + rng.gen_range(0..k)).collect();
            let t = encode_text(&raw).unwrap();
            let kind = [MapperKind::Move, MapperKind::Baseline][round % 2];
            let lookup = [ChildLookupKind::Hashed, ChildLookupKind::Sorted][(round / 2) % 2];
            let (m, trie) = build(&raw, kind, BuildOptions { with_nocc: true, lookup });
            let mut nf: HashMap<Vec<Symbol>, Vec<usize>> = HashMap::new();
            let o = Oracle::new(&t);
            o.for_each_repeat(|rec| {
                if rec.nf() > 0 {
                    let s = t.symbols()[rec.first_occ() - 1..][..rec.len].to_vec();
                    nf.insert(s, rec.nocc);
                }
            });
            let nsmr = nf.len();
            assert!(trie.node_count() <= 2 * nsmr + 1);
            let s = t.symbols();
            let mut buf = Vec::new();
            for i in 0..s.len() {
                for j in i..=s.len().min(i + 50) {
                    let p = &s[i..j];
                    let want = nf.get(p).cloned().unwrap_or_default();
                    let got = trie.nf_query_traced(&m, p, &mut buf);
                    assert_eq!(got.nf, want.len(), "{p:?}");
                    assert!(got.work <= 3 * (p.len() + 1));
                    assert_eq!(trie.nocc_query(&m, p).unwrap(), want);
                }
            }
            for v in 0..trie.node_count() as u32 {
                let node = trie.node(v);
                assert!(node.nf > 0 || v == 0 || trie.children(v).len() >= 2);
            }
        }
    }
}
