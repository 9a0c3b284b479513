//! Definitional periodicity computations.
//!
//! Everything here follows the definitions literally and is at least
//! quadratic. These functions are the reference the engine is checked
//! against, so they favour obviousness over speed.

use std::collections::BTreeSet;

use crate::alphabet::{AlphabetPartition, Symbol};
use crate::error::{Error, Result};
use crate::pstring::{param_count_in, PString};
use crate::witness::{pmatch_symbols, PermutationWitness};

/// `w ⊨_f p`: the prefix of length `|w| - p`, mapped by `f`, is the suffix
/// starting at `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodWitness {
    pub period: usize,
    pub map: PermutationWitness,
}

impl PeriodWitness {
    /// Checks the defining equation against `w`.
    pub fn certifies(&self, w: &PString) -> bool {
        let n = w.len();
        let p = self.period;
        if p == 0 || p > n || self.map.len() != w.partition().param_count() {
            return false;
        }
        let part = w.partition();
        let s = w.symbols();
        (0..n - p).all(|i| self.map.map_symbol(part, s[i]) == s[i + p])
    }
}

fn check_period(w: &PString, p: usize) -> Result<()> {
    if p == 0 || p > w.len() {
        return Err(Error::PeriodOutOfRange { period: p, len: w.len() });
    }
    Ok(())
}

pub(crate) fn period_witness(part: &AlphabetPartition, s: &[Symbol], p: usize) -> Option<PermutationWitness> {
    let n = s.len();
    pmatch_symbols(part, &s[..n - p], &s[p..])
}

pub(crate) fn has_period(part: &AlphabetPartition, s: &[Symbol], p: usize) -> bool {
    period_witness(part, s, p).is_some()
}

pub fn is_period(w: &PString, p: usize) -> Result<Option<PeriodWitness>> {
    check_period(w, p)?;
    Ok(period_witness(w.partition(), w.symbols(), p).map(|map| PeriodWitness { period: p, map }))
}

pub(crate) fn shortest_period_of(part: &AlphabetPartition, s: &[Symbol]) -> usize {
    (1..=s.len()).find(|&p| has_period(part, s, p)).unwrap_or(s.len())
}

pub fn shortest_period(w: &PString) -> Result<usize> {
    if w.is_empty() {
        return Err(Error::EmptyString);
    }
    Ok(shortest_period_of(w.partition(), w.symbols()))
}

pub fn enumerate_periods(w: &PString) -> Result<BTreeSet<usize>> {
    if w.is_empty() {
        return Err(Error::EmptyString);
    }
    let (part, s) = (w.partition(), w.symbols());
    Ok((1..=s.len()).filter(|&p| has_period(part, s, p)).collect())
}

pub(crate) fn reach_of(part: &AlphabetPartition, s: &[Symbol], p: usize) -> usize {
    (p..=s.len()).rev().find(|&r| has_period(part, &s[..r], p)).expect("a string always has its own length as a period")
}

/// Length of the longest prefix of `w` that has period `p`.
pub fn reach(w: &PString, p: usize) -> Result<usize> {
    check_period(w, p)?;
    Ok(reach_of(w.partition(), w.symbols(), p))
}

/// All prefix periods of `w` with their reaches, ascending.
///
/// `p` is a prefix period when some prefix `w'` has shortest period `p` and
/// `k·p ≤ |w'|`, with `k = |Π(w)| + 2`.
pub fn prefix_periods_bruteforce(w: &PString) -> Result<Vec<(usize, usize)>> {
    let (part, s) = (w.partition(), w.symbols());
    let pi = param_count_in(part, s);
    if pi == 0 {
        return Err(Error::NoParameters);
    }
    let k = pi + 2;
    let mut found = BTreeSet::new();
    for len in 1..=s.len() {
        let prefix = &s[..len];
        // the smallest period within k·p ≤ len, if any, is the shortest period
        if let Some(p) = (1..=len / k).find(|&p| has_period(part, prefix, p)) {
            found.insert(p);
        }
    }
    Ok(found.into_iter().map(|p| (p, reach_of(part, s, p))).collect())
}

/// The factorisation `w = v · f(v) · f²(v) ⋯ f^q(v')` of a string with
/// period `p`, where `v = w[0:p]`, `q = ⌊|w|/p⌋` and `v'` is the prefix of
/// `v` of length `|w| mod p`.
#[derive(Debug, Clone)]
pub struct DecompositionView {
    pub v: PString,
    pub len: usize,
    pub period: usize,
    /// `f⁰(v), …, f^(q-1)(v)`, each of length `p`.
    pub pieces: Vec<PString>,
    /// `f^q(v')`, possibly empty.
    pub tail: PString,
}

impl DecompositionView {
    /// `|w| / p` as a float, for display.
    pub fn rho(&self) -> f64 {
        self.len as f64 / self.period as f64
    }

    pub fn concat(&self) -> PString {
        let mut symbols = Vec::with_capacity(self.len);
        for piece in self.pieces.iter().chain(std::iter::once(&self.tail)) {
            symbols.extend_from_slice(piece.symbols());
        }
        PString::from_valid(self.v.partition().clone(), symbols)
    }
}

/// Rebuilds `w` from its first period and the witness permutation alone.
pub fn decompose(w: &PString, witness: &PeriodWitness) -> Result<DecompositionView> {
    if !witness.certifies(w) {
        return Err(Error::InvalidWitness { period: witness.period });
    }
    let (n, p) = (w.len(), witness.period);
    let v = w.substring(0, p);
    let mut pieces = Vec::with_capacity(n / p);
    let mut cur = v.clone();
    for _ in 0..n / p {
        let next = crate::witness::apply(&witness.map, &cur);
        pieces.push(std::mem::replace(&mut cur, next));
    }
    let tail = cur.substring(0, n % p);
    Ok(DecompositionView { v, len: n, period: p, pieces, tail })
}
