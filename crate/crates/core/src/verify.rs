//! Randomized cross-checking of the engine against the brute-force oracles,
//! plus executable checks of the periodicity lemmas the engine relies on.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::engine::{self, naive_search, normalize_pattern, EngineMetrics, EngineOptions, Matcher};
use crate::gen::{self, Instance, InstanceLimits};
use crate::periodicity::prefix_periods_bruteforce;
use crate::pstring::PString;

pub mod lemmas;

pub use lemmas::{LemmaCheck, Outcome};

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub cases: u64,
    pub seed: u64,
    pub limits: InstanceLimits,
    pub options: EngineOptions,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { cases: 1000, seed: 42, limits: InstanceLimits::default(), options: EngineOptions::default() }
    }
}

#[derive(Debug, Clone)]
pub struct Failure {
    pub case: u64,
    pub check: &'static str,
    pub detail: String,
    /// Smallest failing instance found by greedy deletion, for search cases.
    pub reproducer: Option<Instance>,
}

#[derive(Debug, Clone, Default)]
pub struct VerifyReport {
    pub cases: u64,
    pub failures: Vec<Failure>,
    /// How many cases met each lemma's preconditions and passed.
    pub lemma_held: BTreeMap<&'static str, u64>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// What a single engine run produced, for the bound checks.
#[derive(Debug, Clone, Copy)]
pub struct RunStats {
    pub n: usize,
    pub m: usize,
    pub pattern_params: usize,
    pub param_count: usize,
    pub metrics: EngineMetrics,
}

impl RunStats {
    pub fn within_time_bound(&self) -> bool {
        self.metrics.work() <= engine::time_bound(self.n, self.m, self.pattern_params)
    }

    pub fn within_space_bound(&self) -> bool {
        self.metrics.peak_aux_words <= engine::space_bound(self.m, self.param_count)
    }
}

/// Checks one instance: search against the window-by-window oracle, the
/// preprocessing table against the definitional one, and both bounds.
pub fn check_instance(inst: &Instance, options: &EngineOptions) -> Result<RunStats, (&'static str, String)> {
    let matcher = Matcher::with_options(&inst.pattern, options.clone()).map_err(|e| ("build", e.to_string()))?;
    let (got, metrics) = matcher.find_all(&inst.text).map_err(|e| ("search", e.to_string()))?;
    let want = naive_search(&inst.text, &inst.pattern).map_err(|e| ("oracle", e.to_string()))?;
    if got != want {
        return Err(("search", format!("engine {got:?} != oracle {want:?}")));
    }

    let (normalized, _) = normalize_pattern(&inst.pattern).map_err(|e| ("normalize", e.to_string()))?;
    let oracle_table = prefix_periods_bruteforce(&normalized).map_err(|e| ("oracle", e.to_string()))?;
    let table = matcher.table();
    if table.to_pairs() != oracle_table {
        return Err(("prefix-periods", format!("engine {:?} != oracle {oracle_table:?}", table.to_pairs())));
    }
    table.check_invariants(inst.pattern.len()).map_err(|e| ("table-invariants", e))?;

    let stats = RunStats {
        n: inst.text.len(),
        m: inst.pattern.len(),
        pattern_params: matcher.pattern_params(),
        param_count: matcher.engine_partition().param_count(),
        metrics,
    };
    if !stats.within_time_bound() {
        return Err((
            "time-bound",
            format!("{metrics:?} exceeds {}", engine::time_bound(stats.n, stats.m, stats.pattern_params)),
        ));
    }
    if !stats.within_space_bound() {
        return Err((
            "space-bound",
            format!("{metrics:?} exceeds {}", engine::space_bound(stats.m, stats.param_count)),
        ));
    }
    Ok(stats)
}

/// Greedily deletes text, then pattern symbols while `fails` still holds.
pub fn minimize(inst: &Instance, fails: impl Fn(&Instance) -> bool) -> Instance {
    let mut best = inst.clone();
    loop {
        let mut shrunk = false;
        for which in [0, 1] {
            let mut i = 0;
            while i < if which == 0 { best.text.len() } else { best.pattern.len() } {
                let mut cand = best.clone();
                let target = if which == 0 { &mut cand.text } else { &mut cand.pattern };
                let mut symbols = target.symbols().to_vec();
                symbols.remove(i);
                if which == 1 && symbols.is_empty() {
                    break;
                }
                *target = PString::new(target.partition().clone(), symbols).expect("subset of a valid string");
                if fails(&cand) {
                    best = cand;
                    shrunk = true;
                } else {
                    i += 1;
                }
            }
        }
        if !shrunk {
            return best;
        }
    }
}

fn check_case(config: &VerifyConfig, case: u64) -> Result<Option<&'static str>, Failure> {
    let mut rng = gen::case_rng(config.seed, case);
    let (inst, _) = gen::random_instance(&mut rng, &config.limits);
    if let Err((check, detail)) = check_instance(&inst, &config.options) {
        let options = config.options.clone();
        let reproducer = minimize(&inst, |c| check_instance(c, &options).is_err());
        return Err(Failure { case, check, detail, reproducer: Some(reproducer) });
    }

    let lemma = LemmaCheck::ALL[(case % LemmaCheck::ALL.len() as u64) as usize];
    match lemma.run(&mut rng) {
        Outcome::Held => Ok(Some(lemma.name())),
        Outcome::Vacuous => Ok(None),
        Outcome::Violated(detail) => Err(Failure { case, check: lemma.name(), detail, reproducer: None }),
    }
}

/// Runs `config.cases` cases in parallel. Case `i` depends only on
/// `(seed, i)`, so any failure can be replayed alone.
pub fn run(config: &VerifyConfig) -> VerifyReport {
    let results: Vec<_> = (0..config.cases).into_par_iter().map(|c| check_case(config, c)).collect();
    let mut report = VerifyReport { cases: config.cases, ..Default::default() };
    for r in results {
        match r {
            Ok(Some(name)) => *report.lemma_held.entry(name).or_default() += 1,
            Ok(None) => {}
            Err(f) => report.failures.push(f),
        }
    }
    report
}

/// Draws cases for one lemma until `want` of them meet its preconditions.
/// Returns (held, drawn) or the first violation.
pub fn exercise_lemma(check: LemmaCheck, seed: u64, want: u64, max_draws: u64) -> Result<(u64, u64), String> {
    let mut held = 0;
    let mut drawn = 0;
    while held < want && drawn < max_draws {
        let mut rng = gen::case_rng(seed ^ ((check as u64) << 48), drawn);
        drawn += 1;
        match check.run(&mut rng) {
            Outcome::Held => held += 1,
            Outcome::Vacuous => {}
            Outcome::Violated(d) => return Err(format!("{} case {}: {d}", check.name(), drawn - 1)),
        }
    }
    Ok((held, drawn))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::Mutation;

    #[test]
    fn small_run_passes() {
        let report = run(&VerifyConfig { cases: 300, seed: 1, ..Default::default() });
        assert!(report.passed(), "{:?}", report.failures.first());
        assert!(!report.lemma_held.is_empty());
    }

    #[test]
    fn zero_cases() {
        let report = run(&VerifyConfig { cases: 0, ..Default::default() });
        assert!(report.passed());
        assert_eq!(report.cases, 0);
    }

    #[test]
    fn mutation_is_caught_and_minimized() {
        let options = EngineOptions { verify_invariants: false, mutation: Some(Mutation::OvershootRestart) };
        let report = run(&VerifyConfig { cases: 200, seed: 5, options, ..Default::default() });
        let f = report.failures.first().expect("mutation must be detected");
        let repro = f.reproducer.as_ref().unwrap();
        assert!(repro.text.len() <= 8, "reproducer not minimized: {repro}");
    }
}
