//! Constant-time extension of a p-match by one symbol on each side.
//!
//! Given `x ≡ y` with `x` a prefix of the pattern, deciding `x·a ≡ y·b`
//! needs only the first-occurrence table of the pattern and the parameter
//! counts of `y`. Both are arrays indexed by parameter, so the extra space is
//! `O(|Π|)` words.

use crate::alphabet::{AlphabetPartition, Symbol, SymbolClass};
use crate::pstring::PString;

/// First occurrence of every parameter in the pattern, or `|P|` for a
/// parameter that does not occur.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FirstTable {
    first: Vec<usize>,
}

impl FirstTable {
    pub fn compute(partition: &AlphabetPartition, pattern: &[Symbol]) -> Self {
        let m = pattern.len();
        let mut first = vec![m; partition.param_count()];
        for (i, &s) in pattern.iter().enumerate() {
            if let Some(p) = partition.param_index(s) {
                if first[p] == m {
                    first[p] = i;
                }
            }
        }
        FirstTable { first }
    }

    #[inline]
    pub fn get(&self, param: usize) -> usize {
        self.first[param]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.first
    }

    pub fn len(&self) -> usize {
        self.first.len()
    }

    pub fn is_empty(&self) -> bool {
        self.first.is_empty()
    }
}

pub fn compute_first(pattern: &PString) -> FirstTable {
    FirstTable::compute(pattern.partition(), pattern.symbols())
}

/// Per-window state of a scan: the pattern's first-occurrence table and the
/// parameter counts of the current window `y`.
#[derive(Debug, Clone)]
pub struct ScanContext<'a> {
    first: &'a FirstTable,
    count: Vec<usize>,
    window_len: usize,
}

impl<'a> ScanContext<'a> {
    pub fn new(first: &'a FirstTable) -> Self {
        ScanContext { first, count: vec![0; first.len()], window_len: 0 }
    }

    pub fn first(&self) -> &FirstTable {
        self.first
    }

    pub fn count(&self, param: usize) -> usize {
        self.count[param]
    }

    pub fn counts(&self) -> &[usize] {
        &self.count
    }

    pub fn window_len(&self) -> usize {
        self.window_len
    }

    /// Extends the window on the right by `s`.
    #[inline]
    pub fn push(&mut self, partition: &AlphabetPartition, s: Symbol) {
        if let SymbolClass::Parameter(p) = partition.class(s) {
            self.count[p as usize] += 1;
        }
        self.window_len += 1;
    }

    /// Drops `s` from the left end of the window.
    #[inline]
    pub fn pop(&mut self, partition: &AlphabetPartition, s: Symbol) {
        if let SymbolClass::Parameter(p) = partition.class(s) {
            debug_assert!(self.count[p as usize] > 0, "count underflow");
            self.count[p as usize] -= 1;
        }
        debug_assert!(self.window_len > 0);
        self.window_len -= 1;
    }
}

/// Decides `x·a ≡ y·b` where `x = P[0:xlen]`, `y` is the current window of
/// `ctx`, and `x ≡ y` already holds. `y_at(i)` must return `y[i]`.
#[inline]
pub fn match_extend(
    partition: &AlphabetPartition,
    xlen: usize,
    a: Symbol,
    b: Symbol,
    ctx: &ScanContext<'_>,
    y_at: impl Fn(usize) -> Symbol,
) -> bool {
    debug_assert_eq!(xlen, ctx.window_len);
    match partition.class(a) {
        SymbolClass::Parameter(pa) => {
            let f = ctx.first.get(pa as usize);
            if f >= xlen {
                // `a` is new in x, so b must be new in y
                matches!(partition.class(b), SymbolClass::Parameter(pb) if ctx.count[pb as usize] == 0)
            } else {
                y_at(f) == b
            }
        }
        _ => a == b,
    }
}
