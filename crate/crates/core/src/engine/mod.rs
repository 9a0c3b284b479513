//! Prefix-period preprocessing and the sublinear-space search.

mod driver;
pub mod metrics;
pub mod table;

use std::sync::Arc;

use crate::alphabet::{AlphabetPartition, Symbol};
use crate::error::{Error, Result};
use crate::pstring::{param_count_in, prev_encode_symbols, PString};
use crate::scan::FirstTable;

use driver::{drive, Frame, Phase};
pub use metrics::{space_bound, time_bound, EngineMetrics};
pub use table::{table_slots, PrefixPeriodEntry, PrefixPeriodTable};

/// Environment variable that turns on brute-force invariant checks at every
/// outer-loop boundary. Any value other than `0` or the empty string enables it.
pub const DEBUG_ENV: &str = "PGS_DEBUG_INVARIANTS";

/// Deliberate faults used to check that the verifier notices broken shifts.
#[doc(hidden)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mutation {
    /// Shift one position too far whenever the frontier is restarted.
    OvershootRestart,
}

#[derive(Debug, Clone, Default)]
pub struct EngineOptions {
    pub verify_invariants: bool,
    #[doc(hidden)]
    pub mutation: Option<Mutation>,
}

impl EngineOptions {
    pub fn from_env() -> Self {
        let verify = std::env::var(DEBUG_ENV).map(|v| !v.is_empty() && v != "0").unwrap_or(false);
        EngineOptions { verify_invariants: verify, mutation: None }
    }
}

struct Preprocess {
    m: usize,
    k: usize,
    table: PrefixPeriodTable,
    max_reach: usize,
}

impl Phase for Preprocess {
    fn entries(&self) -> &[PrefixPeriodEntry] {
        &self.table.entries
    }

    fn proceed(&self, p: usize) -> bool {
        self.k * p <= self.m
    }

    fn can_extend(&self, _p: usize, r: usize) -> bool {
        r < self.m
    }

    fn settle(&mut self, p: usize, r: usize) {
        if r >= self.k * p && r > self.max_reach {
            self.table.entries.push(PrefixPeriodEntry { val: p, reach: r });
        }
        self.max_reach = self.max_reach.max(r);
    }
}

struct Search<'a, F> {
    n: usize,
    m: usize,
    entries: &'a [PrefixPeriodEntry],
    emit: F,
}

impl<F: FnMut(usize)> Phase for Search<'_, F> {
    fn entries(&self) -> &[PrefixPeriodEntry] {
        self.entries
    }

    fn proceed(&self, i: usize) -> bool {
        i + self.m <= self.n
    }

    fn can_extend(&self, i: usize, j: usize) -> bool {
        j < self.n && j - i < self.m
    }

    fn settle(&mut self, i: usize, j: usize) {
        if j - i == self.m {
            (self.emit)(i);
        }
    }
}

fn build_table(
    partition: &AlphabetPartition,
    pattern: &[Symbol],
    first: &FirstTable,
    options: &EngineOptions,
) -> Result<(PrefixPeriodTable, EngineMetrics)> {
    let pi = param_count_in(partition, pattern);
    if pi == 0 {
        return Err(Error::NoParameters);
    }
    let m = pattern.len();
    let k = pi + 2;
    let mut phase = Preprocess { m, k, table: PrefixPeriodTable::with_slots(m, k), max_reach: 0 };
    let frame = Frame { partition, pattern, text: pattern, first, k };
    let mut metrics = EngineMetrics::default();
    drive(&frame, &mut phase, 1, options, &mut metrics);
    metrics.peak_aux_words = metrics::aux_words(phase.table.capacity(), partition.param_count());
    Ok((phase.table, metrics))
}

/// All prefix periods of `pattern` with their reaches, in one left-to-right
/// pass. `first` must be the first-occurrence table of `pattern`.
pub fn prefix_periods(pattern: &PString, first: &FirstTable) -> Result<(PrefixPeriodTable, EngineMetrics)> {
    build_table(pattern.partition(), pattern.symbols(), first, &EngineOptions::from_env())
}

/// The partition to run the engine under: unchanged if the pattern has a
/// parameter, otherwise with the smallest constant of the pattern promoted
/// to the only parameter. Matches are the same under either view.
fn engine_partition(partition: &Arc<AlphabetPartition>, pattern: &[Symbol]) -> Result<Arc<AlphabetPartition>> {
    if pattern.is_empty() {
        return Err(Error::EmptyPattern);
    }
    if pattern.iter().any(|&s| partition.is_parameter(s)) {
        return Ok(partition.clone());
    }
    let c = *pattern.iter().min().expect("pattern is non-empty");
    Ok(Arc::new(partition.promote_to_sole_parameter(c)?))
}

/// Returns the pattern under a partition in which it has at least one
/// parameter, together with that partition.
pub fn normalize_pattern(pattern: &PString) -> Result<(PString, AlphabetPartition)> {
    let part = engine_partition(pattern.partition(), pattern.symbols())?;
    let normalized = PString::new(part.clone(), pattern.symbols().to_vec())?;
    Ok((normalized, Arc::unwrap_or_clone(part)))
}

/// A preprocessed pattern. The table and first-occurrence map are immutable,
/// so one matcher can serve concurrent searches over different texts.
#[derive(Debug, Clone)]
pub struct Matcher {
    source: Arc<AlphabetPartition>,
    partition: Arc<AlphabetPartition>,
    pattern: Vec<Symbol>,
    first: FirstTable,
    table: PrefixPeriodTable,
    preprocess: EngineMetrics,
    options: EngineOptions,
}

impl Matcher {
    pub fn new(pattern: &PString) -> Result<Self> {
        Self::with_options(pattern, EngineOptions::from_env())
    }

    pub fn with_options(pattern: &PString, options: EngineOptions) -> Result<Self> {
        Self::build(pattern.partition().clone(), pattern.symbols().to_vec(), options)
    }

    /// Builds from raw symbols, validating them against `partition`.
    pub fn from_symbols(
        partition: Arc<AlphabetPartition>,
        pattern: Vec<Symbol>,
        options: EngineOptions,
    ) -> Result<Self> {
        partition.validate(&pattern)?;
        Self::build(partition, pattern, options)
    }

    fn build(source: Arc<AlphabetPartition>, pattern: Vec<Symbol>, options: EngineOptions) -> Result<Self> {
        let partition = engine_partition(&source, &pattern)?;
        let first = FirstTable::compute(&partition, &pattern);
        let (table, preprocess) = build_table(&partition, &pattern, &first, &options)?;
        Ok(Matcher { source, partition, pattern, first, table, preprocess, options })
    }

    pub fn pattern_len(&self) -> usize {
        self.pattern.len()
    }

    /// `|Π(P)|` under the engine partition (1 for an all-constant pattern).
    pub fn pattern_params(&self) -> usize {
        self.table.k - 2
    }

    pub fn table(&self) -> &PrefixPeriodTable {
        &self.table
    }

    pub fn first(&self) -> &FirstTable {
        &self.first
    }

    /// The partition the engine runs under, after normalization.
    pub fn engine_partition(&self) -> &Arc<AlphabetPartition> {
        &self.partition
    }

    pub fn preprocess_metrics(&self) -> EngineMetrics {
        self.preprocess
    }

    /// Reports every match position, ascending, through `emit`. The returned
    /// metrics cover preprocessing and this search.
    pub fn find_each(&self, text: &PString, emit: impl FnMut(usize)) -> Result<EngineMetrics> {
        if !(Arc::ptr_eq(text.partition(), &self.source) || **text.partition() == *self.source) {
            return Err(Error::PartitionMismatch);
        }
        Ok(self.run(text.symbols(), emit))
    }

    /// Like [`Matcher::find_each`] over raw symbols, which are validated first.
    pub fn find_each_symbols(&self, text: &[Symbol], emit: impl FnMut(usize)) -> Result<EngineMetrics> {
        self.source.validate(text)?;
        Ok(self.run(text, emit))
    }

    pub fn find_all(&self, text: &PString) -> Result<(Vec<usize>, EngineMetrics)> {
        let mut out = Vec::new();
        let metrics = self.find_each(text, |i| out.push(i))?;
        Ok((out, metrics))
    }

    fn run(&self, text: &[Symbol], emit: impl FnMut(usize)) -> EngineMetrics {
        let frame =
            Frame { partition: &self.partition, pattern: &self.pattern, text, first: &self.first, k: self.table.k };
        let mut phase = Search { n: text.len(), m: self.pattern.len(), entries: &self.table.entries, emit };
        let mut metrics = EngineMetrics::default();
        drive(&frame, &mut phase, 0, &self.options, &mut metrics);
        metrics.peak_aux_words = metrics::aux_words(self.table.capacity(), self.partition.param_count());
        let mut total = self.preprocess;
        total.absorb(&metrics);
        total
    }
}

/// All positions `i` with `T[i:i+|P|] ≡ P`, ascending.
pub fn search(text: &PString, pattern: &PString) -> Result<(Vec<usize>, EngineMetrics)> {
    text.check_same_partition(pattern)?;
    Matcher::new(pattern)?.find_all(text)
}

/// Window-by-window reference search by prev-encoding comparison.
pub fn naive_search(text: &PString, pattern: &PString) -> Result<Vec<usize>> {
    text.check_same_partition(pattern)?;
    if pattern.is_empty() {
        return Err(Error::EmptyPattern);
    }
    let (n, m) = (text.len(), pattern.len());
    if m > n {
        return Ok(Vec::new());
    }
    let part = text.partition();
    let target = prev_encode_symbols(part, pattern.symbols());
    Ok((0..=n - m).filter(|&i| prev_encode_symbols(part, &text.symbols()[i..i + m]) == target).collect())
}
