//! Property checks for the periodicity facts the search depends on.
//!
//! Each check draws one small string (biased towards built-in periods),
//! tests whether the statement's preconditions hold, and if so whether its
//! conclusion does. Everything is computed with the definitional oracles.

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::Rng;

use crate::alphabet::AlphabetPartition;
use crate::engine::{EngineOptions, Matcher};
use crate::gen;
use crate::periodicity::{
    decompose, enumerate_periods, is_period, prefix_periods_bruteforce, reach, shortest_period, PeriodWitness,
};
use crate::pstring::{pcs, PString};
use crate::witness::{apply, pmatch, PermutationWitness};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    /// Preconditions did not hold for the drawn instance.
    Vacuous,
    Held,
    Violated(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LemmaCheck {
    /// A string with period `p` is `v·f(v)·f²(v)⋯` for its first block `v`.
    Decomposition,
    /// If `x ≡ y` and `0 < δ < period(y)`, then `x[δ:] ≢ y[:|y|-δ]`.
    ShiftMismatch,
    /// Commuting witnesses and `|w| ≥ p+q` give period `gcd(p,q)`.
    CommutingGcd,
    /// `|w| ≥ p+q+min(p,q)·(|Π(w)|-1)` gives period `gcd(p,q)` unconditionally.
    GcdPeriod,
    /// A period `q ≤ |w|/(|Π(w)|+1)` is a multiple of the shortest period.
    ShortPeriodDivides,
    /// Long enough substrings contain all (or all but one) parameters of `w`.
    SubstringParams,
    /// A short period extends by exactly one symbol.
    UniqueExtension,
    /// Prefix periods at least double, so there are at most `log2 |w|`.
    TableDoubling,
    /// `reach(w,p) ≥ r` exactly when `w[0:r]` has period `p`.
    ReachDefinition,
}

impl LemmaCheck {
    pub const ALL: [LemmaCheck; 9] = [
        LemmaCheck::Decomposition,
        LemmaCheck::ShiftMismatch,
        LemmaCheck::CommutingGcd,
        LemmaCheck::GcdPeriod,
        LemmaCheck::ShortPeriodDivides,
        LemmaCheck::SubstringParams,
        LemmaCheck::UniqueExtension,
        LemmaCheck::TableDoubling,
        LemmaCheck::ReachDefinition,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LemmaCheck::Decomposition => "decomposition",
            LemmaCheck::ShiftMismatch => "shift-mismatch",
            LemmaCheck::CommutingGcd => "commuting-gcd",
            LemmaCheck::GcdPeriod => "gcd-period",
            LemmaCheck::ShortPeriodDivides => "short-period-divides",
            LemmaCheck::SubstringParams => "substring-params",
            LemmaCheck::UniqueExtension => "unique-extension",
            LemmaCheck::TableDoubling => "table-doubling",
            LemmaCheck::ReachDefinition => "reach-definition",
        }
    }

    pub fn run<R: Rng>(self, rng: &mut R) -> Outcome {
        match self {
            LemmaCheck::Decomposition => decomposition(rng),
            LemmaCheck::ShiftMismatch => shift_mismatch(rng),
            LemmaCheck::CommutingGcd => commuting_gcd(rng),
            LemmaCheck::GcdPeriod => gcd_period(rng),
            LemmaCheck::ShortPeriodDivides => short_period_divides(rng),
            LemmaCheck::SubstringParams => substring_params(rng),
            LemmaCheck::UniqueExtension => unique_extension(rng),
            LemmaCheck::TableDoubling => table_doubling(rng),
            LemmaCheck::ReachDefinition => reach_definition(rng),
        }
    }
}

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Outcome::Violated(format!($($fmt)+));
        }
    };
}

fn small_partition<R: Rng>(rng: &mut R) -> Arc<AlphabetPartition> {
    gen::letters(rng.gen_range(0..=2), rng.gen_range(1..=3))
}

/// A string of length `1..=max_len`: uniform, periodic, or periodic with
/// one symbol perturbed.
fn lemma_string<R: Rng>(rng: &mut R, max_len: usize) -> PString {
    let part = small_partition(rng);
    let len = rng.gen_range(1..=max_len);
    match rng.gen_range(0..10) {
        0..=1 => gen::random_string(rng, &part, len),
        2..=7 => {
            let p = rng.gen_range(1..=(len / 3).max(1));
            gen::periodic_string(rng, &part, len, p).0
        }
        _ => {
            let p = rng.gen_range(1..=(len / 2).max(1));
            let (w, _) = gen::periodic_string(rng, &part, len, p);
            gen::perturb(rng, &w)
        }
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn decomposition<R: Rng>(rng: &mut R) -> Outcome {
    let part = small_partition(rng);
    let len = rng.gen_range(1..=40);
    let p = rng.gen_range(1..=len);
    let (w, f) = gen::periodic_string(rng, &part, len, p);
    let witness = PeriodWitness { period: p, map: f.clone() };
    let d = match decompose(&w, &witness) {
        Ok(d) => d,
        Err(e) => return Outcome::Violated(format!("constructed witness rejected for {w}: {e}")),
    };
    ensure!(d.concat() == w, "pieces of {w} with p={p} concatenate to {}", d.concat());
    ensure!(d.pieces.len() == len / p, "{} full pieces for |w|={len}, p={p}", d.pieces.len());
    ensure!(d.pieces.iter().all(|x| x.len() == p), "piece of wrong length in {w}");
    ensure!(d.tail.len() == len % p, "tail length {} for |w|={len}, p={p}", d.tail.len());
    for (i, piece) in d.pieces.iter().enumerate() {
        ensure!(*piece == apply(&f.pow(i), &d.v), "piece {i} of {w} is not f^{i}(v)");
    }
    // the witness found by search must decompose too
    if let Ok(Some(found)) = is_period(&w, p) {
        match decompose(&w, &found) {
            Ok(d2) => ensure!(d2.concat() == w, "found witness does not rebuild {w}"),
            Err(e) => return Outcome::Violated(format!("found witness rejected: {e}")),
        }
    }
    Outcome::Held
}

fn shift_mismatch<R: Rng>(rng: &mut R) -> Outcome {
    let y = lemma_string(rng, 30);
    let f = gen::random_witness(rng, y.partition().param_count());
    let x = apply(&f, &y);
    let sp = shortest_period(&y).expect("non-empty");
    if sp < 2 {
        return Outcome::Vacuous;
    }
    let n = y.len();
    for delta in 1..sp {
        let matched = pmatch(&x.substring(delta, n), &y.substring(0, n - delta)).unwrap().is_some();
        ensure!(!matched, "x={x} y={y} delta={delta} < period {sp} but shifted slices p-match");
    }
    Outcome::Held
}

fn commuting_gcd<R: Rng>(rng: &mut R) -> Outcome {
    let part = small_partition(rng);
    let len = rng.gen_range(2..=36);
    let p0 = rng.gen_range(1..=(len / 2).max(1));
    let (w, f) = gen::periodic_string(rng, &part, len, p0);
    let w = if rng.gen_bool(0.2) { gen::perturb(rng, &w) } else { w };
    let periods = enumerate_periods(&w).unwrap();

    let mut candidates: Vec<(usize, PermutationWitness)> =
        periods.iter().map(|&p| (p, is_period(&w, p).unwrap().expect("enumerated").map)).collect();
    for j in 1..=len / p0 {
        let g = f.pow(j);
        if (PeriodWitness { period: j * p0, map: g.clone() }).certifies(&w) {
            candidates.push((j * p0, g));
        }
    }

    let mut any = false;
    for (a, (p, fp)) in candidates.iter().enumerate() {
        for (q, fq) in &candidates[a + 1..] {
            if p == q || p + q > len || !fp.commutes_with(fq) {
                continue;
            }
            any = true;
            let g = gcd(*p, *q);
            ensure!(periods.contains(&g), "{w}: periods {p},{q} with commuting witnesses but gcd {g} is not a period");
        }
    }
    if any {
        Outcome::Held
    } else {
        Outcome::Vacuous
    }
}

fn gcd_period<R: Rng>(rng: &mut R) -> Outcome {
    let w = lemma_string(rng, 40);
    let pi_w = pcs(&w).len();
    if pi_w == 0 {
        return Outcome::Vacuous;
    }
    let periods: Vec<usize> = enumerate_periods(&w).unwrap().into_iter().collect();
    let mut any = false;
    for (a, &p) in periods.iter().enumerate() {
        for &q in &periods[a + 1..] {
            if w.len() < p + q + p.min(q) * (pi_w - 1) {
                continue;
            }
            any = true;
            let g = gcd(p, q);
            ensure!(periods.contains(&g), "{w}: periods {p},{q}, |Π(w)|={pi_w}, but gcd {g} is not a period");
        }
    }
    if any {
        Outcome::Held
    } else {
        Outcome::Vacuous
    }
}

fn short_period_divides<R: Rng>(rng: &mut R) -> Outcome {
    let w = lemma_string(rng, 40);
    let pi_w = pcs(&w).len();
    if pi_w == 0 {
        return Outcome::Vacuous;
    }
    let sp = shortest_period(&w).unwrap();
    let mut any = false;
    for q in enumerate_periods(&w).unwrap() {
        if q * (pi_w + 1) > w.len() {
            continue;
        }
        any = true;
        ensure!(q % sp == 0, "{w}: short period {q} is not a multiple of the shortest period {sp}");
    }
    if any {
        Outcome::Held
    } else {
        Outcome::Vacuous
    }
}

fn substring_params<R: Rng>(rng: &mut R) -> Outcome {
    let w = lemma_string(rng, 32);
    let all = pcs(&w);
    if all.is_empty() {
        return Outcome::Vacuous;
    }
    let sp = shortest_period(&w).unwrap();
    let n = w.len();
    let full = sp * all.len();
    let most = sp * (all.len() - 1);
    let mut any = false;
    for i in 0..=n {
        for j in i..=n {
            let sub: BTreeSet<_> = pcs(&w.substring(i, j));
            if j - i >= full {
                any = true;
                ensure!(sub == all, "{w}: w[{i}:{j}] has parameters {sub:?}, expected {all:?}");
            }
            if j - i >= most {
                ensure!(sub.len() + 1 >= all.len(), "{w}: w[{i}:{j}] misses more than one parameter");
            }
        }
    }
    if any {
        Outcome::Held
    } else {
        Outcome::Vacuous
    }
}

fn unique_extension<R: Rng>(rng: &mut R) -> Outcome {
    let w = lemma_string(rng, 36);
    let pi_w = pcs(&w).len();
    let short: Vec<usize> = enumerate_periods(&w).unwrap().into_iter().filter(|&p| p * (pi_w + 1) <= w.len()).collect();
    if short.is_empty() {
        return Outcome::Vacuous;
    }
    let alphabet: Vec<_> = w.partition().symbols().collect();
    for p in short {
        let extensions: Vec<_> = alphabet
            .iter()
            .filter(|&&a| {
                let mut wa = w.clone();
                wa.push(a).expect("symbol of the partition");
                is_period(&wa, p).unwrap().is_some()
            })
            .collect();
        ensure!(extensions.len() == 1, "{w}: period {p} extends by {} symbols", extensions.len());
    }
    Outcome::Held
}

fn table_doubling<R: Rng>(rng: &mut R) -> Outcome {
    let part = small_partition(rng);
    let m = rng.gen_range(1..=120);
    let w = if rng.gen_bool(0.7) { gen::nested_periodic(rng, &part, m) } else { lemma_string(rng, 60) };
    let Ok(table) = prefix_periods_bruteforce(&w) else {
        return Outcome::Vacuous;
    };
    let bound = (w.len() as f64).log2();
    ensure!(
        table.len() as f64 <= bound + 1e-9 || table.is_empty(),
        "{w}: {} prefix periods exceed log2 {}",
        table.len(),
        w.len()
    );
    for pair in table.windows(2) {
        ensure!(pair[1].0 >= 2 * pair[0].0, "{w}: prefix periods {} and {} do not double", pair[0].0, pair[1].0);
    }
    let engine = Matcher::with_options(&w, EngineOptions::default()).expect("pattern has parameters");
    ensure!(
        engine.table().to_pairs() == table,
        "{w}: engine table {:?} != oracle {table:?}",
        engine.table().to_pairs()
    );
    if let Err(e) = engine.table().check_invariants(w.len()) {
        return Outcome::Violated(format!("{w}: {e}"));
    }
    if table.len() >= 2 {
        Outcome::Held
    } else {
        Outcome::Vacuous
    }
}

fn reach_definition<R: Rng>(rng: &mut R) -> Outcome {
    let w = lemma_string(rng, 40);
    let n = w.len();
    let p = rng.gen_range(1..=n);
    let rp = reach(&w, p).unwrap();
    ensure!(rp >= p, "{w}: reach({p}) = {rp} < p");
    for r in p..=n {
        let has = is_period(&w.substring(0, r), p).unwrap().is_some();
        ensure!(has == (rp >= r), "{w}: reach({p}) = {rp} but w[0:{r}] period-{p} test says {has}");
    }
    Outcome::Held
}
