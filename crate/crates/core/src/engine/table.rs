use serde::{Deserialize, Serialize};

/// A prefix period of the pattern and its reach.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrefixPeriodEntry {
    pub val: usize,
    pub reach: usize,
}

/// Ascending prefix periods of a pattern: the only pattern-derived state the
/// search keeps besides the first-occurrence table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixPeriodTable {
    pub(crate) entries: Vec<PrefixPeriodEntry>,
    pub(crate) k: usize,
}

/// Slots preallocated for a pattern of length `m`. Consecutive prefix
/// periods at least double and the last one is at most `m/3`, so there are
/// never more than `⌊log2 m⌋` of them.
pub fn table_slots(m: usize) -> usize {
    if m < 2 {
        0
    } else {
        m.ilog2() as usize
    }
}

impl PrefixPeriodTable {
    pub(crate) fn with_slots(m: usize, k: usize) -> Self {
        PrefixPeriodTable { entries: Vec::with_capacity(table_slots(m)), k }
    }

    pub fn entries(&self) -> &[PrefixPeriodEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `|Π(P)| + 2`.
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn capacity(&self) -> usize {
        self.entries.capacity()
    }

    pub fn to_pairs(&self) -> Vec<(usize, usize)> {
        self.entries.iter().map(|e| (e.val, e.reach)).collect()
    }

    /// Structural checks for a table built from a pattern of length `m`:
    /// doubling values, increasing reaches, `k·val ≤ reach ≤ m`, and at most
    /// `log2 m` entries.
    pub fn check_invariants(&self, m: usize) -> Result<(), String> {
        if self.len() > table_slots(m) {
            return Err(format!("{} entries exceed log2({m})", self.len()));
        }
        for e in &self.entries {
            if e.reach < self.k * e.val || e.reach > m {
                return Err(format!("entry {e:?} violates k·val ≤ reach ≤ {m} (k = {})", self.k));
            }
        }
        for w in self.entries.windows(2) {
            if w[1].val < 2 * w[0].val {
                return Err(format!("values {} and {} do not double", w[0].val, w[1].val));
            }
            if w[1].reach <= w[0].reach {
                return Err(format!("reaches {} and {} not increasing", w[0].reach, w[1].reach));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slots() {
        assert_eq!(table_slots(0), 0);
        assert_eq!(table_slots(1), 0);
        assert_eq!(table_slots(20), 4);
        assert_eq!(table_slots(1 << 20), 20);
        let t = PrefixPeriodTable::with_slots(20, 4);
        assert_eq!(t.capacity(), 4);
    }

    #[test]
    fn invariant_violations_are_reported() {
        let mut t = PrefixPeriodTable::with_slots(20, 4);
        t.entries.push(PrefixPeriodEntry { val: 1, reach: 4 });
        t.entries.push(PrefixPeriodEntry { val: 4, reach: 18 });
        assert!(t.check_invariants(20).is_ok());
        t.entries.push(PrefixPeriodEntry { val: 5, reach: 20 });
        assert!(t.check_invariants(20).is_err());
    }
}
