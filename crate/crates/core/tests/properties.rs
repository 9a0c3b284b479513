use std::sync::Arc;

use pgs_core::gen;
use pgs_core::{
    apply, compute_first, decompose, enumerate_periods, is_period, match_extend, naive_search, pmatch, prev_encode,
    reach, search, shortest_period, AlphabetPartition, PString, PermutationWitness, ScanContext, Symbol,
};
use proptest::prelude::*;

fn part() -> Arc<AlphabetPartition> {
    Arc::new(AlphabetPartition::from_chars("ab", "ABC").unwrap())
}

fn pstr(max: usize) -> impl Strategy<Value = PString> {
    proptest::collection::vec(prop::sample::select(b"abABC".to_vec()), 0..=max)
        .prop_map(|v| PString::from_bytes(&part(), &v).unwrap())
}

fn witness() -> impl Strategy<Value = PermutationWitness> {
    Just(vec![0u32, 1, 2]).prop_shuffle().prop_map(|m| PermutationWitness::from_mapping(m).unwrap())
}

/// Every permutation of three parameters.
fn all_witnesses() -> Vec<PermutationWitness> {
    let mut out = Vec::new();
    for a in 0..3u32 {
        for b in 0..3u32 {
            for c in 0..3u32 {
                if a != b && b != c && a != c {
                    out.push(PermutationWitness::from_mapping(vec![a, b, c]).unwrap());
                }
            }
        }
    }
    out
}

fn brute_pmatch(x: &PString, y: &PString) -> bool {
    x.len() == y.len() && all_witnesses().iter().any(|f| apply(f, x) == *y)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn pmatch_agrees_with_brute_force_and_prev_encoding(x in pstr(10), y in pstr(10)) {
        let want = brute_pmatch(&x, &y);
        let got = pmatch(&x, &y).unwrap();
        prop_assert_eq!(got.is_some(), want);
        prop_assert_eq!(x.len() == y.len() && prev_encode(&x) == prev_encode(&y), want);
        if let Some(f) = got {
            prop_assert_eq!(apply(&f, &x), y);
        }
    }

    #[test]
    fn pmatch_is_an_equivalence(x in pstr(12), f in witness(), g in witness()) {
        let y = apply(&f, &x);
        let z = apply(&g, &y);
        prop_assert!(pmatch(&x, &x).unwrap().is_some());
        prop_assert!(pmatch(&y, &x).unwrap().is_some());
        let fx = pmatch(&x, &y).unwrap().unwrap();
        let gy = pmatch(&y, &z).unwrap().unwrap();
        prop_assert_eq!(apply(&gy.compose(&fx), &x), z);
        prop_assert_eq!(apply(&f.inverse(), &y), x);
    }

    #[test]
    fn match_extend_agrees_with_brute_force(x in pstr(8), f in witness(), a in 0usize..5, b in 0usize..5) {
        let y = apply(&f, &x);
        let alphabet = b"abABC";
        let (sa, sb) = (Symbol::from(alphabet[a]), Symbol::from(alphabet[b]));
        let mut xa = x.clone();
        xa.push(sa).unwrap();
        let mut yb = y.clone();
        yb.push(sb).unwrap();

        let p = part();
        let first = compute_first(&xa);
        let mut ctx = ScanContext::new(&first);
        for &s in y.symbols() {
            ctx.push(&p, s);
        }
        let got = match_extend(&p, x.len(), sa, sb, &ctx, |i| y.symbols()[i]);
        prop_assert_eq!(got, brute_pmatch(&xa, &yb));
    }

    #[test]
    fn periods_agree_with_definition(w in pstr(16)) {
        prop_assume!(!w.is_empty());
        let periods = enumerate_periods(&w).unwrap();
        for p in 1..=w.len() {
            let def = pmatch(&w.substring(0, w.len() - p), &w.substring(p, w.len())).unwrap().is_some();
            prop_assert_eq!(periods.contains(&p), def);
            let pw = is_period(&w, p).unwrap();
            prop_assert_eq!(pw.is_some(), def);
            if let Some(pw) = pw {
                prop_assert!(pw.certifies(&w));
                let view = decompose(&w, &pw).unwrap();
                prop_assert_eq!(view.concat(), w.clone());
            }
            let r = reach(&w, p).unwrap();
            prop_assert!(r >= p && r <= w.len());
            prop_assert!(is_period(&w.substring(0, r), p).unwrap().is_some());
            if r < w.len() {
                prop_assert!(is_period(&w.substring(0, r + 1), p).unwrap().is_none());
            }
        }
        prop_assert_eq!(Some(shortest_period(&w).unwrap()), periods.iter().next().copied());
    }

    #[test]
    fn search_agrees_with_naive(seed in any::<u64>()) {
        let mut rng = gen::case_rng(seed, 0);
        let (inst, _) = gen::random_instance(&mut rng, &gen::InstanceLimits { max_n: 120, max_m: 24, max_sigma: 2, max_pi: 3 });
        let (got, _) = search(&inst.text, &inst.pattern).unwrap();
        prop_assert_eq!(got, naive_search(&inst.text, &inst.pattern).unwrap(), "{}", inst);
    }

    #[test]
    fn search_is_invariant_under_renaming(seed in any::<u64>(), f in witness(), g in witness()) {
        let mut rng = gen::case_rng(seed, 1);
        let p = part();
        let (pattern, _) = gen::random_pattern(&mut rng, &p, 12);
        let text = gen::planted_text(&mut rng, &pattern, 80);
        let base = search(&text, &pattern).unwrap().0;
        prop_assert_eq!(search(&apply(&f, &text), &apply(&g, &pattern)).unwrap().0, base);
    }
}
