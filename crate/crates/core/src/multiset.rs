// SPDX-License-Identifier: Apache-2.0

//! Multisets of column indices.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A multiset of indices in `[0, base)`, kept sorted by index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IndexMultiset {
    base: usize,
    entries: Vec<(usize, u32)>,
}

impl IndexMultiset {
    pub fn new(base: usize) -> Self {
        IndexMultiset { base, entries: Vec::new() }
    }

    /// Builds a multiset where every occurrence in `indices` adds one.
    pub fn from_indices<I: IntoIterator<Item = usize>>(base: usize, indices: I) -> Result<Self> {
        let mut counts: BTreeMap<usize, u32> = BTreeMap::new();
        for i in indices {
            if i >= base {
                return Err(Error::IndexOutOfRange { index: i, limit: base });
            }
            *counts.entry(i).or_default() += 1;
        }
        Ok(IndexMultiset { base, entries: counts.into_iter().collect() })
    }

    pub fn from_pairs<I: IntoIterator<Item = (usize, u32)>>(base: usize, pairs: I) -> Result<Self> {
        let mut counts: BTreeMap<usize, u32> = BTreeMap::new();
        for (i, c) in pairs {
            if i >= base {
                return Err(Error::IndexOutOfRange { index: i, limit: base });
            }
            if c > 0 {
                *counts.entry(i).or_default() += c;
            }
        }
        Ok(IndexMultiset { base, entries: counts.into_iter().collect() })
    }

    /// The first `count` indices, each once.
    pub fn prefix(base: usize, count: usize) -> Result<Self> {
        if count > base {
            return Err(Error::IndexOutOfRange { index: count, limit: base });
        }
        Ok(IndexMultiset { base, entries: (0..count).map(|i| (i, 1)).collect() })
    }

    pub fn base(&self) -> usize {
        self.base
    }

    /// Total size, counting multiplicities.
    pub fn len(&self) -> usize {
        self.entries.iter().map(|&(_, c)| c as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn distinct_len(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[(usize, u32)] {
        &self.entries
    }

    pub fn multiplicity(&self, index: usize) -> u32 {
        match self.entries.binary_search_by_key(&index, |&(i, _)| i) {
            Ok(pos) => self.entries[pos].1,
            Err(_) => 0,
        }
    }

    pub fn contains(&self, index: usize) -> bool {
        self.multiplicity(index) > 0
    }

    /// All positions in canonical order, each index repeated by its multiplicity.
    pub fn expanded(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len());
        for &(i, c) in &self.entries {
            out.extend(std::iter::repeat_n(i, c as usize));
        }
        out
    }

    pub fn distinct(&self) -> Vec<usize> {
        self.entries.iter().map(|&(i, _)| i).collect()
    }

    pub fn max_multiplicity(&self) -> u32 {
        self.entries.iter().map(|&(_, c)| c).max().unwrap_or(0)
    }

    pub fn insert(&mut self, index: usize, count: u32) -> Result<()> {
        if index >= self.base {
            return Err(Error::IndexOutOfRange { index, limit: self.base });
        }
        if count == 0 {
            return Ok(());
        }
        match self.entries.binary_search_by_key(&index, |&(i, _)| i) {
            Ok(pos) => self.entries[pos].1 += count,
            Err(pos) => self.entries.insert(pos, (index, count)),
        }
        Ok(())
    }

    /// Multiset sum (multiplicities add).
    pub fn union(&self, other: &IndexMultiset) -> Result<IndexMultiset> {
        if self.base != other.base {
            return Err(Error::DimensionMismatch(format!(
                "multiset bases differ: {} vs {}",
                self.base, other.base
            )));
        }
        IndexMultiset::from_pairs(self.base, self.entries.iter().chain(other.entries.iter()).copied())
    }

    /// Re-homes the multiset into `[0, new_base)` with every index moved by `offset`.
    pub fn shifted(&self, offset: usize, new_base: usize) -> Result<IndexMultiset> {
        IndexMultiset::from_pairs(new_base, self.entries.iter().map(|&(i, c)| (i + offset, c)))
    }

    /// Removes `count` copies of `index`; errors if not enough are present.
    pub fn remove(&mut self, index: usize, count: u32) -> Result<()> {
        let pos = self
            .entries
            .binary_search_by_key(&index, |&(i, _)| i)
            .map_err(|_| Error::IndexOutOfRange { index, limit: self.base })?;
        let have = self.entries[pos].1;
        if have < count {
            return Err(Error::InvalidParameters(format!("index {index} has multiplicity {have} < {count}")));
        }
        if have == count {
            self.entries.remove(pos);
        } else {
            self.entries[pos].1 -= count;
        }
        Ok(())
    }

    /// One `index:multiplicity` line per distinct index.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for &(i, c) in &self.entries {
            let _ = writeln!(s, "{i}:{c}");
        }
        s
    }

    /// Parses `index:multiplicity` lines; a bare `index` counts once.
    /// Blank lines and lines starting with `#` are skipped.
    pub fn from_text(base: usize, text: &str) -> Result<IndexMultiset> {
        let mut pairs = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (i, c) = match line.split_once(':') {
                Some((i, c)) => (i.trim(), c.trim()),
                None => (line, "1"),
            };
            let i = i.parse::<usize>().map_err(|_| Error::Parse(format!("bad index in '{line}'")))?;
            let c = c.parse::<u32>().map_err(|_| Error::Parse(format!("bad multiplicity in '{line}'")))?;
            pairs.push((i, c));
        }
        IndexMultiset::from_pairs(base, pairs)
    }
}
