//! The shared window-sliding loop behind both preprocessing and search.
//!
//! A window `text[start:frontier]` is kept p-matched against
//! `pattern[0:frontier-start]`. The loop grows the frontier while the
//! one-symbol extension test succeeds, lets the phase inspect the window,
//! and then shifts `start`: by the shortest period of the matched prefix when
//! the table proves it is short, otherwise by `⌊span/k⌋ + 1` with the
//! frontier restarted at the new start. Preprocessing runs it with the pattern as
//! its own text, starting at offset 1, while the table is being filled.

use crate::alphabet::{AlphabetPartition, Symbol};
use crate::scan::{match_extend, FirstTable, ScanContext};
use crate::witness::is_pmatch_symbols;

use super::metrics::EngineMetrics;
use super::table::PrefixPeriodEntry;
use super::{EngineOptions, Mutation};

pub(super) struct Frame<'a> {
    pub partition: &'a AlphabetPartition,
    pub pattern: &'a [Symbol],
    pub text: &'a [Symbol],
    pub first: &'a FirstTable,
    pub k: usize,
}

pub(super) trait Phase {
    fn entries(&self) -> &[PrefixPeriodEntry];
    /// Outer-loop guard.
    fn proceed(&self, start: usize) -> bool;
    /// Whether `pattern[frontier-start]` and `text[frontier]` both exist.
    fn can_extend(&self, start: usize, frontier: usize) -> bool;
    /// Called once per outer iteration with the maximal matched window.
    fn settle(&mut self, start: usize, frontier: usize);
}

pub(super) fn drive<P: Phase>(
    frame: &Frame<'_>,
    phase: &mut P,
    origin: usize,
    options: &EngineOptions,
    metrics: &mut EngineMetrics,
) {
    let Frame { partition, pattern, text, first, k } = *frame;
    let mut ctx = ScanContext::new(first);
    let (mut start, mut frontier) = (origin, origin);
    let mut idx: isize = -1;

    while phase.proceed(start) {
        metrics.loop_iterations += 1;

        while phase.can_extend(start, frontier) {
            metrics.match_calls += 1;
            let len = frontier - start;
            let window = &text[start..];
            if !match_extend(partition, len, pattern[len], text[frontier], &ctx, |u| window[u]) {
                break;
            }
            ctx.push(partition, text[frontier]);
            frontier += 1;
            let entries = phase.entries();
            let next = (idx + 1) as usize;
            if next < entries.len() && k * entries[next].val <= frontier - start {
                idx += 1;
            }
        }

        if options.verify_invariants {
            check_boundary(frame, phase.entries(), &ctx, start, frontier, idx);
        }
        phase.settle(start, frontier);

        let entries = phase.entries();
        let span = frontier - start;
        let period = (idx >= 0).then(|| entries.get(idx as usize)).flatten();
        match period {
            Some(e) if e.reach >= span && span > 0 => {
                for &s in &text[start..start + e.val] {
                    ctx.pop(partition, s);
                }
                metrics.count_decrements += e.val as u64;
                start += e.val;
            }
            _ => {
                for &s in &text[start..frontier] {
                    ctx.pop(partition, s);
                }
                metrics.count_decrements += span as u64;
                start += span / k + 1;
                if options.mutation == Some(Mutation::OvershootRestart) {
                    start += 1;
                }
                frontier = start;
            }
        }

        while idx >= 0 && k * entries[idx as usize].val > frontier - start {
            idx -= 1;
        }
    }
}

/// Re-derives the loop invariants by brute force. Only for small inputs.
fn check_boundary(
    frame: &Frame<'_>,
    entries: &[PrefixPeriodEntry],
    ctx: &ScanContext<'_>,
    start: usize,
    frontier: usize,
    idx: isize,
) {
    let span = frontier - start;
    let window = &frame.text[start..frontier];
    assert!(
        is_pmatch_symbols(frame.partition, &frame.pattern[..span], window),
        "window [{start}, {frontier}) does not p-match the pattern prefix"
    );
    let expected = entries.iter().rposition(|e| frame.k * e.val <= span).map_or(-1, |i| i as isize);
    assert_eq!(idx, expected, "table pointer out of sync at window [{start}, {frontier})");
    let mut counts = vec![0usize; frame.partition.param_count()];
    for &s in window {
        if let Some(p) = frame.partition.param_index(s) {
            counts[p] += 1;
        }
    }
    assert_eq!(ctx.counts(), &counts[..], "parameter counts drifted at window [{start}, {frontier})");
    assert_eq!(ctx.window_len(), span);
}
