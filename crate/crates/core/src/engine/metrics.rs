use serde::{Deserialize, Serialize};

/// Words reserved for loop variables, `k`, `idx`, `max_reach` and the
/// metric counters themselves. Fixed by the accounting rule.
pub const SCALAR_WORDS: u64 = 16;

/// Upper limit on scalar words allowed by the space bound.
pub const SCALAR_BUDGET: u64 = 64;

/// Counters recorded by a preprocessing or search run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EngineMetrics {
    /// Evaluations of the one-symbol extension test, including the failing one
    /// that ends each inner loop.
    pub match_calls: u64,
    /// Outer-loop iterations (one per window shift).
    pub loop_iterations: u64,
    /// Symbols dropped from the left of the window.
    pub count_decrements: u64,
    /// High-water mark of auxiliary words: two per table slot, `|Π|` each for
    /// the first-occurrence and count arrays, plus [`SCALAR_WORDS`].
    pub peak_aux_words: u64,
}

impl EngineMetrics {
    /// Merges counters from a run that happened after `self`.
    pub fn absorb(&mut self, other: &EngineMetrics) {
        self.match_calls += other.match_calls;
        self.loop_iterations += other.loop_iterations;
        self.count_decrements += other.count_decrements;
        self.peak_aux_words = self.peak_aux_words.max(other.peak_aux_words);
    }

    pub fn work(&self) -> u64 {
        self.match_calls + self.loop_iterations + self.count_decrements
    }
}

pub(crate) fn aux_words(table_capacity: usize, param_count: usize) -> u64 {
    2 * table_capacity as u64 + 2 * param_count as u64 + SCALAR_WORDS
}

fn ceil_log2(x: u64) -> u64 {
    if x <= 1 {
        0
    } else {
        64 - u64::from((x - 1).leading_zeros())
    }
}

/// `2·⌈log2(m+1)⌉ + 2·|Π| + 64`.
pub fn space_bound(m: usize, param_count: usize) -> u64 {
    2 * ceil_log2(m as u64 + 1) + 2 * param_count as u64 + SCALAR_BUDGET
}

/// `8·((|Π(P)|+2)·n + m)`.
pub fn time_bound(n: usize, m: usize, pattern_params: usize) -> u64 {
    8 * ((pattern_params as u64 + 2) * n as u64 + m as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_rounding() {
        assert_eq!(ceil_log2(1), 0);
        assert_eq!(ceil_log2(2), 1);
        assert_eq!(ceil_log2(3), 2);
        assert_eq!(ceil_log2(1024), 10);
        assert_eq!(ceil_log2(1025), 11);
        assert_eq!(space_bound(1000, 2), 2 * 10 + 4 + 64);
    }

    #[test]
    fn absorb_keeps_peak() {
        let mut a = EngineMetrics { match_calls: 1, loop_iterations: 2, count_decrements: 3, peak_aux_words: 10 };
        a.absorb(&EngineMetrics { match_calls: 1, loop_iterations: 1, count_decrements: 1, peak_aux_words: 7 });
        assert_eq!(a.work(), 9);
        assert_eq!(a.peak_aux_words, 10);
    }
}
