//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use pgs_core::alphabet::AlphabetPartition;
use pgs_core::cli::{bench_pattern, bench_text, BenchStyle};
use pgs_core::engine::{space_bound, table_slots, time_bound};
use pgs_core::gen::{self, InstanceLimits, PatternStyle};
use pgs_core::verify::{check_instance, exercise_lemma, LemmaCheck, RunStats};
use pgs_core::{
    enumerate_periods, is_period, normalize_pattern, pmatch, prefix_periods_bruteforce, shortest_period, EngineMetrics,
    EngineOptions, Matcher, PString, PermutationWitness,
};
use rayon::prelude::*;

const SEED: u64 = 42;
const SEARCH_CASES: u64 = 10_000;
const PREPROCESS_CASES: u64 = 5_000;
const LEMMA_CASES: u64 = 1_000;

type Verdict = Result<String, String>;

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Duration,
    run: Box<dyn Fn(&mut Shared) -> Verdict>,
}

/// Search runs from criterion 3, reused by criterion 7.
#[derive(Default)]
struct Shared {
    search_runs: Vec<RunStats>,
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn golden_prefix_periods() -> Verdict {
    let part = Arc::new(AlphabetPartition::from_chars("", "AB").unwrap());
    let w = PString::parse(&part, "ABABBABAABABBABAABBA").unwrap();
    let m = Matcher::with_options(&w, EngineOptions::default()).map_err(|e| e.to_string())?;
    let table = m.table().to_pairs();
    ensure(table == [(1, 4), (4, 18)], || format!("prefix periods {table:?}"))?;
    ensure(prefix_periods_bruteforce(&w).unwrap() == table, || "brute-force table differs".into())?;

    let mut row = vec![1; 4];
    row.extend([4; 14]);
    row.extend([18; 2]);
    let got: Vec<usize> = (1..=w.len()).map(|i| shortest_period(&w.substring(0, i)).unwrap()).collect();
    ensure(got == row, || format!("shortest periods {got:?}"))?;
    Ok("[(1,4),(4,18)], 20 shortest periods".into())
}

fn witness_example() -> Verdict {
    let part = Arc::new(AlphabetPartition::from_chars("a", "ABC").unwrap());
    let x = PString::parse(&part, "ABaCBCa").unwrap();
    let y = PString::parse(&part, "BCaACAa").unwrap();
    let f = pmatch(&x, &y).unwrap().ok_or("no p-match")?;
    let want = PermutationWitness::from_mapping(vec![1, 2, 0]).unwrap();
    ensure(f == want, || format!("witness {:?}", f.mapping()))?;

    let w = PString::parse(&part, "ABaCBCaACAa").unwrap();
    let pw = is_period(&w, 4).unwrap().ok_or("4 is not a period")?;
    ensure(pw.map == want, || format!("period witness {:?}", pw.map.mapping()))?;
    ensure(pw.certifies(&w), || "witness does not certify".into())?;
    let sp = shortest_period(&w).unwrap();
    let smallest = enumerate_periods(&w).unwrap().into_iter().next();
    ensure(sp == 4 && smallest == Some(4), || format!("shortest {sp}, enumerated {smallest:?}"))?;
    Ok("A->B B->C C->A, period 4".into())
}

fn search_equivalence(shared: &mut Shared) -> Verdict {
    let limits = InstanceLimits::default();
    let results: Vec<_> = (0..SEARCH_CASES)
        .into_par_iter()
        .map(|c| {
            let mut rng = gen::case_rng(SEED, c);
            let (inst, style) = gen::random_instance(&mut rng, &limits);
            let normalized = pgs_core::pcs(&inst.pattern).is_empty();
            (c, style, normalized, check_instance(&inst, &EngineOptions::default()), inst)
        })
        .collect();
    let mut styles: BTreeMap<String, u64> = BTreeMap::new();
    let mut normalized = 0;
    for (c, style, norm, r, inst) in results {
        *styles.entry(format!("{style:?}")).or_default() += 1;
        normalized += u64::from(norm);
        match r {
            Ok(stats) => shared.search_runs.push(stats),
            Err((check, detail)) => return Err(format!("case {c} [{check}] {detail}: {inst}")),
        }
    }
    for style in
        [PatternStyle::Periodic, PatternStyle::PeriodicPerturbed, PatternStyle::Nested, PatternStyle::ConstantsOnly]
    {
        ensure(styles.contains_key(&format!("{style:?}")), || format!("no {style:?} patterns drawn"))?;
    }
    ensure(normalized > 0, || "normalization path never taken".into())?;
    Ok(format!("{SEARCH_CASES} instances, {normalized} without parameters, styles {styles:?}"))
}

fn preprocessing_equivalence() -> Verdict {
    let results: Vec<Result<usize, String>> = (0..PREPROCESS_CASES)
        .into_par_iter()
        .map(|c| {
            let mut rng = gen::case_rng(SEED ^ 0xA11CE, c);
            let part = gen::random_partition(&mut rng, 3, 4);
            let (p, _) = gen::random_pattern(&mut rng, &part, 200);
            let m = Matcher::with_options(&p, EngineOptions::default()).map_err(|e| e.to_string())?;
            let (normalized, _) = normalize_pattern(&p).map_err(|e| e.to_string())?;
            let want = prefix_periods_bruteforce(&normalized).map_err(|e| e.to_string())?;
            let got = m.table().to_pairs();
            if got != want {
                return Err(format!("pattern {p}: engine {got:?}, oracle {want:?}"));
            }
            if got.len() > table_slots(p.len()) {
                return Err(format!("pattern {p}: {} entries for m={}", got.len(), p.len()));
            }
            Ok(got.len())
        })
        .collect();
    let mut longest = 0;
    for r in results {
        longest = longest.max(r?);
    }
    Ok(format!("{PREPROCESS_CASES} patterns, m <= 200, longest table {longest}"))
}

fn lemma_suites() -> Verdict {
    let results: Vec<_> = LemmaCheck::ALL
        .par_iter()
        .map(|&check| (check, exercise_lemma(check, SEED, LEMMA_CASES, 400 * LEMMA_CASES)))
        .collect();
    let mut summary = Vec::new();
    for (check, r) in results {
        let (held, drawn) = r?;
        ensure(held >= LEMMA_CASES, || {
            format!("{}: only {held} of {drawn} draws met the preconditions", check.name())
        })?;
        summary.push(format!("{} {held}/{drawn}", check.name()));
    }
    Ok(summary.join(", "))
}

fn space_bound_check() -> Verdict {
    let mut lines = Vec::new();
    for (i, m) in [1_000usize, 10_000, 100_000, 1_000_000].into_iter().enumerate() {
        for params in [1usize, 2, 4] {
            let part = gen::letters(2, params);
            let mut rng = gen::case_rng(SEED, (i * 10 + params) as u64);
            let p = gen::nested_periodic(&mut rng, &part, m);
            let matcher = Matcher::with_options(&p, EngineOptions::default()).map_err(|e| e.to_string())?;
            let text = bench_text(BenchStyle::Periodic, &p, 2 * m, SEED);
            let metrics = matcher.find_each(&text, |_| {}).map_err(|e| e.to_string())?;
            let bound = space_bound(m, matcher.engine_partition().param_count());
            let peak = metrics.peak_aux_words.max(matcher.preprocess_metrics().peak_aux_words);
            ensure(peak <= bound, || format!("m={m} |Pi|={params}: {peak} words > {bound}"))?;
            if params == 2 {
                lines.push(format!("m={m}: {peak}<={bound} (table {})", matcher.table().len()));
            }
        }
    }
    Ok(lines.join(", "))
}

fn work_of(matcher: &Matcher, text: &PString) -> Result<EngineMetrics, String> {
    matcher.find_each(text, |_| {}).map_err(|e| e.to_string())
}

fn time_bound_check(shared: &mut Shared) -> Verdict {
    ensure(!shared.search_runs.is_empty(), || "criterion 3 produced no runs".into())?;
    if let Some(s) = shared.search_runs.iter().find(|s| !s.within_time_bound()) {
        return Err(format!(
            "corpus run n={} m={} work {} > {}",
            s.n,
            s.m,
            s.metrics.work(),
            time_bound(s.n, s.m, s.pattern_params)
        ));
    }
    let corpus = shared.search_runs.len();

    const N: usize = 1_000_000;
    let mut stress = 0;
    let mut worst = 0f64;
    let mut ratios = Vec::new();
    for style in [BenchStyle::Periodic, BenchStyle::Random] {
        for (m, params) in [(8usize, 1usize), (64, 2), (1000, 4), (50_000, 3)] {
            let p = bench_pattern(style, m, params, SEED);
            let matcher = Matcher::with_options(&p, EngineOptions::default()).map_err(|e| e.to_string())?;
            let k = matcher.pattern_params();
            let full = work_of(&matcher, &bench_text(style, &p, N, SEED))?;
            let bound = time_bound(N, m, k);
            ensure(full.work() <= bound, || format!("{style:?} m={m}: work {} > {bound}", full.work()))?;
            worst = worst.max(full.work() as f64 / bound as f64);
            stress += 1;

            let half = work_of(&matcher, &bench_text(style, &p, N / 2, SEED))?;
            let ratio = full.match_calls as f64 / half.match_calls as f64;
            ensure(ratio <= 2.2, || format!("{style:?} m={m}: match_calls ratio {ratio:.3} on doubling n"))?;
            ratios.push(ratio);
        }
    }
    let (lo, hi) = ratios.iter().fold((f64::MAX, 0f64), |(lo, hi), &r| (lo.min(r), hi.max(r)));
    Ok(format!(
        "{corpus} corpus runs + {stress} runs at n=10^6, worst work/bound {worst:.3}, doubling ratio {lo:.3}..{hi:.3}"
    ))
}

fn documented_substitution() -> Verdict {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../README.md");
    let readme = std::fs::read_to_string(path).map_err(|e| format!("README.md: {e}"))?;
    let lower = readme.to_lowercase();
    let section = lower.find("## complexity bounds").ok_or("README has no complexity bounds section")?;
    let body = &lower[section..];
    let body = &body[..body[3..].find("\n## ").map_or(body.len(), |e| e + 3)];
    for needle in ["2·⌈log2(m+1)⌉ + 2·|π| + 64", "8·((|π(p)|+2)·n + m)", "peak_aux_words", "match_calls", "asymptotic"]
    {
        ensure(body.contains(needle), || format!("complexity section does not mention {needle:?}"))?;
    }
    Ok("README documents the measured bounds in place of the asymptotic statement".into())
}

fn main() {
    let criteria = vec![
        Criterion {
            id: 1,
            name: "golden prefix periods",
            budget: Duration::from_secs(1),
            run: Box::new(|_| golden_prefix_periods()),
        },
        Criterion {
            id: 2,
            name: "p-match and period example",
            budget: Duration::from_secs(1),
            run: Box::new(|_| witness_example()),
        },
        Criterion {
            id: 3,
            name: "search = naive search",
            budget: Duration::from_secs(120),
            run: Box::new(search_equivalence),
        },
        Criterion {
            id: 4,
            name: "prefix periods = brute force",
            budget: Duration::from_secs(120),
            run: Box::new(|_| preprocessing_equivalence()),
        },
        Criterion {
            id: 5,
            name: "lemma property suites",
            budget: Duration::from_secs(600),
            run: Box::new(|_| lemma_suites()),
        },
        Criterion {
            id: 6,
            name: "space bound",
            budget: Duration::from_secs(60),
            run: Box::new(|_| space_bound_check()),
        },
        Criterion { id: 7, name: "time bound", budget: Duration::from_secs(120), run: Box::new(time_bound_check) },
        Criterion {
            id: 8,
            name: "bound substitution documented",
            budget: Duration::from_secs(1),
            run: Box::new(|_| documented_substitution()),
        },
    ];
    let mut shared = Shared::default();
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let verdict = catch_unwind(AssertUnwindSafe(|| (c.run)(&mut shared))).unwrap_or_else(|p| {
            Err(format!(
                "panicked: {:?}",
                p.downcast_ref::<String>().map(String::as_str).or(p.downcast_ref::<&str>().copied())
            ))
        });
        let elapsed = start.elapsed();
        let verdict = verdict.and_then(|d| {
            if elapsed <= c.budget {
                Ok(d)
            } else {
                Err(format!("took {elapsed:.2?}, budget {:?}; {d}", c.budget))
            }
        });
        match verdict {
            Ok(detail) => println!("criterion {} [{}]: PASS ({elapsed:.2?}) {detail}", c.id, c.name),
            Err(detail) => {
                failed += 1;
                println!("criterion {} [{}]: FAIL ({elapsed:.2?}) {detail}", c.id, c.name);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
