//! Parameterized pattern matching in `O(|Π(P)|·n + m)` time and
//! `O(log m + |Π|)` words of extra space.
//!
//! Two strings over constants Σ and parameters Π *p-match* when a bijection
//! on Π (fixing Σ) maps one onto the other. [`engine::search`] finds all
//! p-matches of a pattern in a text by a prefix-period scan in the style of
//! Galil and Seiferas; [`periodicity`] holds brute-force reference
//! implementations of the underlying notions, used as test oracles.

pub mod alphabet;
pub mod cli;
pub mod engine;
pub mod error;
pub mod gen;
pub mod periodicity;
pub mod pstring;
pub mod scan;
pub mod tokenize;
pub mod verify;
pub mod witness;

pub use alphabet::{AlphabetPartition, Symbol, SymbolClass};
pub use engine::{
    naive_search, normalize_pattern, prefix_periods, search, EngineMetrics, EngineOptions, Matcher, PrefixPeriodEntry,
    PrefixPeriodTable,
};
pub use error::{Error, Result};
pub use periodicity::{
    decompose, enumerate_periods, is_period, prefix_periods_bruteforce, reach, shortest_period, DecompositionView,
    PeriodWitness,
};
pub use pstring::{pcs, prev_encode, PString, PrevCode};
pub use scan::{compute_first, match_extend, FirstTable, ScanContext};
pub use witness::{apply, pmatch, PermutationWitness};
