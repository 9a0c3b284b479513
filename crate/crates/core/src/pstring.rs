//! Parameterized strings.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::alphabet::{AlphabetPartition, Symbol, SymbolClass};
use crate::error::{Error, Result};

/// A sequence of symbols over a partitioned alphabet. Every symbol is known
/// to the partition; this is checked once, at construction.
#[derive(Clone)]
pub struct PString {
    symbols: Vec<Symbol>,
    partition: Arc<AlphabetPartition>,
}

impl PString {
    pub fn new(partition: Arc<AlphabetPartition>, symbols: Vec<Symbol>) -> Result<Self> {
        partition.validate(&symbols)?;
        Ok(PString { symbols, partition })
    }

    /// Interprets each `char` of `text` as a symbol code.
    pub fn parse(partition: &Arc<AlphabetPartition>, text: &str) -> Result<Self> {
        Self::new(partition.clone(), text.chars().map(|c| Symbol(c as u32)).collect())
    }

    pub fn from_bytes(partition: &Arc<AlphabetPartition>, bytes: &[u8]) -> Result<Self> {
        Self::new(partition.clone(), bytes.iter().map(|&b| Symbol::from(b)).collect())
    }

    pub(crate) fn from_valid(partition: Arc<AlphabetPartition>, symbols: Vec<Symbol>) -> Self {
        debug_assert!(partition.validate(&symbols).is_ok());
        PString { symbols, partition }
    }

    pub fn empty(partition: &Arc<AlphabetPartition>) -> Self {
        PString { symbols: Vec::new(), partition: partition.clone() }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn partition(&self) -> &Arc<AlphabetPartition> {
        &self.partition
    }

    pub fn get(&self, i: usize) -> Option<Symbol> {
        self.symbols.get(i).copied()
    }

    /// `w[i:j]`, end exclusive.
    pub fn substring(&self, i: usize, j: usize) -> PString {
        PString { symbols: self.symbols[i..j].to_vec(), partition: self.partition.clone() }
    }

    pub fn concat(&self, other: &PString) -> Result<PString> {
        self.check_same_partition(other)?;
        let mut symbols = self.symbols.clone();
        symbols.extend_from_slice(&other.symbols);
        Ok(PString { symbols, partition: self.partition.clone() })
    }

    /// Appends one symbol, validating it against the partition.
    pub fn push(&mut self, s: Symbol) -> Result<()> {
        if !self.partition.contains(s) {
            return Err(Error::UnknownSymbol { code: s.0, offset: self.symbols.len() });
        }
        self.symbols.push(s);
        Ok(())
    }

    pub fn same_partition(&self, other: &PString) -> bool {
        Arc::ptr_eq(&self.partition, &other.partition) || *self.partition == *other.partition
    }

    pub(crate) fn check_same_partition(&self, other: &PString) -> Result<()> {
        if self.same_partition(other) {
            Ok(())
        } else {
            Err(Error::PartitionMismatch)
        }
    }
}

impl PartialEq for PString {
    fn eq(&self, other: &Self) -> bool {
        self.symbols == other.symbols && self.same_partition(other)
    }
}

impl Eq for PString {}

impl fmt::Display for PString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.symbols {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PString({self:?})", self = self.to_string())
    }
}

/// The set of parameter symbols occurring in `w`.
pub fn pcs(w: &PString) -> BTreeSet<Symbol> {
    param_set(w.partition(), w.symbols())
}

pub(crate) fn param_set(partition: &AlphabetPartition, symbols: &[Symbol]) -> BTreeSet<Symbol> {
    symbols.iter().copied().filter(|&s| partition.is_parameter(s)).collect()
}

/// Number of distinct parameters in `symbols`, using a Π-indexed bitmap.
pub(crate) fn param_count_in(partition: &AlphabetPartition, symbols: &[Symbol]) -> usize {
    let mut seen = vec![false; partition.param_count()];
    let mut distinct = 0;
    for &s in symbols {
        if let Some(i) = partition.param_index(s) {
            if !seen[i] {
                seen[i] = true;
                distinct += 1;
            }
        }
    }
    distinct
}

/// One position of a prev-encoded string.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PrevCode {
    Constant(Symbol),
    /// Distance back to the previous occurrence of the same parameter, or 0
    /// for its first occurrence.
    Distance(usize),
}

/// Baker's prev-encoding: two p-strings p-match iff their encodings are equal.
pub fn prev_encode(w: &PString) -> Vec<PrevCode> {
    prev_encode_symbols(w.partition(), w.symbols())
}

pub(crate) fn prev_encode_symbols(partition: &AlphabetPartition, symbols: &[Symbol]) -> Vec<PrevCode> {
    let mut last: Vec<Option<usize>> = vec![None; partition.param_count()];
    symbols
        .iter()
        .enumerate()
        .map(|(i, &s)| match partition.class(s) {
            SymbolClass::Parameter(p) => {
                let slot = &mut last[p as usize];
                let code = slot.map_or(0, |prev| i - prev);
                *slot = Some(i);
                PrevCode::Distance(code)
            }
            _ => PrevCode::Constant(s),
        })
        .collect()
}
