use std::sync::Arc;

use crate::alphabet::AlphabetPartition;
use crate::gen;
use crate::pstring::PString;

/// Pattern and text families for `pgs bench`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum BenchStyle {
    /// Uniform random pattern and text.
    Random,
    /// A pattern with a short period and a text that continues it, so the
    /// pattern occurs once per period.
    Periodic,
}

/// Parses `n` or `n:m` items separated by commas. Empty input gives no sizes.
pub fn parse_sizes(s: &str, default_m: usize) -> Result<Vec<(usize, usize)>, String> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            let (n, m) = match t.split_once(':') {
                Some((n, m)) => (n, m.parse().map_err(|_| format!("bad pattern length in {t:?}"))?),
                None => (t, default_m),
            };
            let n = n.parse().map_err(|_| format!("bad text length in {t:?}"))?;
            if m == 0 {
                return Err(format!("pattern length must be positive in {t:?}"));
            }
            Ok((n, m))
        })
        .collect()
}

/// The alphabet used by bench instances: constants `a..`, parameters `A..`.
pub fn bench_partition(params: usize) -> Arc<AlphabetPartition> {
    gen::letters(2, params)
}

/// The pattern depends only on (style, m, params, seed), so rows that differ
/// only in `n` search for the same pattern.
pub fn bench_pattern(style: BenchStyle, m: usize, params: usize, seed: u64) -> PString {
    let part = bench_partition(params);
    let mut rng = gen::case_rng(seed, m as u64);
    match style {
        BenchStyle::Random => gen::random_string(&mut rng, &part, m),
        BenchStyle::Periodic => {
            let period = periodic_step(m, params);
            gen::periodic_string(&mut rng, &part, m, period).0
        }
    }
}

fn periodic_step(m: usize, params: usize) -> usize {
    (m / (4 * (params + 2))).clamp(1, 7)
}

pub fn bench_text(style: BenchStyle, pattern: &PString, n: usize, seed: u64) -> PString {
    let part = pattern.partition();
    let mut rng = gen::case_rng(seed ^ 0x5eed, n as u64);
    match style {
        BenchStyle::Random => gen::random_string(&mut rng, part, n),
        BenchStyle::Periodic => {
            let step = periodic_step(pattern.len(), part.param_count()).min(pattern.len());
            let f = crate::periodicity::is_period(pattern, step)
                .ok()
                .flatten()
                .map(|w| w.map)
                .unwrap_or_else(|| gen::random_witness(&mut rng, part.param_count()));
            gen::extend_periodically(&pattern.substring(0, step), &f, n)
        }
    }
}
