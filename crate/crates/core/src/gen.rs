//! Random instance generators shared by `pgs verify`, the benchmarks and the
//! test suites.
//!
//! Constants are drawn from `a, b, c, …` and parameters from `A, B, C, …`
//! so that generated cases print readably. Periodic strings are built
//! directly from a seed block and a permutation, which makes the
//! preconditions of the periodicity lemmas hold far more often than uniform
//! sampling would.

use std::fmt;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::alphabet::{AlphabetPartition, Symbol};
use crate::pstring::PString;
use crate::witness::{apply, PermutationWitness};

/// Deterministic RNG for case `index` of a run seeded with `seed`
/// (ChaCha8 keyed by a splitmix of both).
pub fn case_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut z = seed ^ index.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    ChaCha8Rng::seed_from_u64(z ^ (z >> 31))
}

/// Partition with constants `a..` and parameters `A..`.
pub fn letters(constants: usize, params: usize) -> Arc<AlphabetPartition> {
    assert!(constants <= 26 && params <= 26);
    let sigma = (0..constants as u32).map(|i| 'a' as u32 + i);
    let pi = (0..params as u32).map(|i| 'A' as u32 + i);
    Arc::new(AlphabetPartition::new(sigma, pi).expect("letters are disjoint"))
}

pub fn random_partition<R: Rng>(rng: &mut R, max_sigma: usize, max_pi: usize) -> Arc<AlphabetPartition> {
    let params = rng.gen_range(1..=max_pi.max(1));
    let constants = rng.gen_range(0..=max_sigma);
    letters(constants, params)
}

pub fn random_witness<R: Rng>(rng: &mut R, param_count: usize) -> PermutationWitness {
    let mut m: Vec<u32> = (0..param_count as u32).collect();
    m.shuffle(rng);
    PermutationWitness::from_mapping(m).expect("shuffle of identity is a permutation")
}

fn pick<R: Rng>(rng: &mut R, pool: &[Symbol]) -> Symbol {
    pool[rng.gen_range(0..pool.len())]
}

/// Uniform string over every symbol of the partition.
pub fn random_string<R: Rng>(rng: &mut R, part: &Arc<AlphabetPartition>, len: usize) -> PString {
    let pool: Vec<Symbol> = part.symbols().collect();
    random_over(rng, part, &pool, len)
}

pub fn random_over<R: Rng>(rng: &mut R, part: &Arc<AlphabetPartition>, pool: &[Symbol], len: usize) -> PString {
    let symbols = (0..len).map(|_| pick(rng, pool)).collect();
    PString::new(part.clone(), symbols).expect("pool drawn from the partition")
}

/// `v · f(v) · f²(v) ⋯`, truncated to `len`, for a random block `v` of
/// length `period` and a random permutation `f`. Returns the string and `f`.
pub fn periodic_string<R: Rng>(
    rng: &mut R,
    part: &Arc<AlphabetPartition>,
    len: usize,
    period: usize,
) -> (PString, PermutationWitness) {
    let f = random_witness(rng, part.param_count());
    let v = random_string(rng, part, period.max(1));
    (extend_periodically(&v, &f, len), f)
}

/// Continues `v` with period `|v|` under `f` up to `len` symbols.
pub fn extend_periodically(v: &PString, f: &PermutationWitness, len: usize) -> PString {
    let part = v.partition();
    let p = v.len();
    let mut symbols: Vec<Symbol> = v.symbols()[..p.min(len)].to_vec();
    while symbols.len() < len {
        let s = symbols[symbols.len() - p];
        symbols.push(f.map_symbol(part, s));
    }
    PString::new(part.clone(), symbols).expect("images stay in the partition")
}

/// Replaces one symbol, chosen uniformly, by a random symbol.
pub fn perturb<R: Rng>(rng: &mut R, w: &PString) -> PString {
    if w.is_empty() {
        return w.clone();
    }
    let mut symbols = w.symbols().to_vec();
    let i = rng.gen_range(0..symbols.len());
    let pool: Vec<Symbol> = w.partition().symbols().collect();
    symbols[i] = pick(rng, &pool);
    PString::new(w.partition().clone(), symbols).expect("pool drawn from the partition")
}

/// A pattern with nested periodic structure, built level by level: each
/// level continues the previous block periodically to `(k+1)` times its
/// length and then appends a random symbol. Every level contributes a short
/// period to a long prefix, which fills the prefix-period table.
pub fn nested_periodic<R: Rng>(rng: &mut R, part: &Arc<AlphabetPartition>, len: usize) -> PString {
    let k = part.param_count() + 2;
    let params: Vec<Symbol> = part.params().to_vec();
    let mut cur = random_over(rng, part, &params, 1);
    while cur.len() < len {
        let f = random_witness(rng, part.param_count());
        let target = ((k + 1) * cur.len()).min(len);
        cur = extend_periodically(&cur, &f, target);
        if cur.len() < len {
            let s = pick(rng, &params);
            cur.push(s).expect("parameter of the partition");
        }
    }
    cur
}

/// A text and a pattern over one partition.
#[derive(Clone)]
pub struct Instance {
    pub text: PString,
    pub pattern: PString,
}

impl Instance {
    pub fn partition(&self) -> &Arc<AlphabetPartition> {
        self.text.partition()
    }
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let part = self.partition();
        let sigma: String = part.constants().iter().map(|s| s.to_string()).collect();
        let pi: String = part.params().iter().map(|s| s.to_string()).collect();
        write!(f, "sigma={sigma:?} pi={pi:?} text={:?} pattern={:?}", self.text.to_string(), self.pattern.to_string())
    }
}

impl fmt::Debug for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Size limits for [`random_instance`].
#[derive(Debug, Clone, Copy)]
pub struct InstanceLimits {
    pub max_n: usize,
    pub max_m: usize,
    pub max_sigma: usize,
    pub max_pi: usize,
}

impl Default for InstanceLimits {
    fn default() -> Self {
        InstanceLimits { max_n: 300, max_m: 60, max_sigma: 3, max_pi: 4 }
    }
}

/// Pattern families mixed by [`random_pattern`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PatternStyle {
    Uniform,
    Periodic,
    PeriodicPerturbed,
    Nested,
    /// Only constants; exercises the normalization path.
    ConstantsOnly,
}

pub fn random_pattern<R: Rng>(rng: &mut R, part: &Arc<AlphabetPartition>, max_m: usize) -> (PString, PatternStyle) {
    let m = rng.gen_range(1..=max_m.max(1));
    let roll = rng.gen_range(0..100);
    let style = match roll {
        0..=29 => PatternStyle::Uniform,
        30..=59 => PatternStyle::Periodic,
        60..=79 => PatternStyle::PeriodicPerturbed,
        80..=91 => PatternStyle::Nested,
        _ => PatternStyle::ConstantsOnly,
    };
    let p = match style {
        PatternStyle::Uniform => random_string(rng, part, m),
        PatternStyle::Periodic | PatternStyle::PeriodicPerturbed => {
            let period = rng.gen_range(1..=m.div_ceil(3).max(1));
            let (w, _) = periodic_string(rng, part, m, period);
            if style == PatternStyle::PeriodicPerturbed {
                perturb(rng, &w)
            } else {
                w
            }
        }
        PatternStyle::Nested => nested_periodic(rng, part, m),
        PatternStyle::ConstantsOnly => {
            if part.constant_count() == 0 {
                random_string(rng, part, m)
            } else {
                random_over(rng, part, part.constants(), m)
            }
        }
    };
    (p, style)
}

/// Random text with images of the pattern planted at random offsets, some
/// of them overlapping, on top of either uniform noise or a periodic
/// background that shares the pattern's period structure.
pub fn planted_text<R: Rng>(rng: &mut R, pattern: &PString, n: usize) -> PString {
    let part = pattern.partition();
    let mut symbols: Vec<Symbol> = if n > 0 && rng.gen_bool(0.5) {
        let image = apply(&random_witness(rng, part.param_count()), pattern);
        let step = rng.gen_range(1..=image.len());
        let g = random_witness(rng, part.param_count());
        extend_periodically(&image.substring(0, step), &g, n).symbols().to_vec()
    } else {
        random_string(rng, part, n).symbols().to_vec()
    };
    let m = pattern.len();
    if m <= n {
        let plants = rng.gen_range(0..=(n / m.max(1)).min(8));
        for _ in 0..plants {
            let at = rng.gen_range(0..=n - m);
            let f = random_witness(rng, part.param_count());
            for (u, &s) in pattern.symbols().iter().enumerate() {
                symbols[at + u] = f.map_symbol(part, s);
            }
        }
    }
    PString::new(part.clone(), symbols).expect("symbols drawn from the partition")
}

pub fn random_instance<R: Rng>(rng: &mut R, limits: &InstanceLimits) -> (Instance, PatternStyle) {
    let part = random_partition(rng, limits.max_sigma, limits.max_pi);
    let (pattern, style) = random_pattern(rng, &part, limits.max_m);
    let n = rng.gen_range(0..=limits.max_n);
    let text = planted_text(rng, &pattern, n);
    (Instance { text, pattern }, style)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::periodicity::is_period;

    #[test]
    fn periodic_string_has_its_period() {
        let mut rng = case_rng(7, 0);
        let part = letters(2, 3);
        for _ in 0..200 {
            let len = rng.gen_range(1..40);
            let p = rng.gen_range(1..=len);
            let (w, f) = periodic_string(&mut rng, &part, len, p);
            let pw = is_period(&w, p).unwrap();
            assert!(pw.is_some());
            let witness = crate::periodicity::PeriodWitness { period: p, map: f };
            assert!(witness.certifies(&w));
        }
    }

    #[test]
    fn case_rng_is_deterministic() {
        let a: Vec<u32> = (0..5).map(|_| case_rng(42, 3).gen()).collect();
        let b: Vec<u32> = (0..5).map(|_| case_rng(42, 3).gen()).collect();
        assert_eq!(a, b);
        assert_ne!(case_rng(42, 3).gen::<u64>(), case_rng(42, 4).gen::<u64>());
    }

    #[test]
    fn nested_has_requested_length() {
        let mut rng = case_rng(1, 1);
        let part = letters(1, 2);
        for len in [1, 2, 5, 17, 100, 1000] {
            assert_eq!(nested_periodic(&mut rng, &part, len).len(), len);
        }
    }

    #[test]
    fn instances_respect_limits() {
        let limits = InstanceLimits::default();
        for i in 0..200 {
            let (inst, _) = random_instance(&mut case_rng(3, i), &limits);
            assert!(inst.text.len() <= limits.max_n);
            assert!((1..=limits.max_m).contains(&inst.pattern.len()));
            assert!(inst.partition().param_count() <= limits.max_pi);
            assert!(inst.partition().constant_count() <= limits.max_sigma);
        }
    }
}
