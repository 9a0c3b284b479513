//! Permutation witnesses and the p-match relation.

use crate::alphabet::{AlphabetPartition, Symbol, SymbolClass};
use crate::error::{Error, Result};
use crate::pstring::PString;

/// A bijection on the parameter alphabet, extended by the identity on
/// constants. `mapping[i]` is the dense index of the image of parameter `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PermutationWitness {
    mapping: Vec<u32>,
}

impl PermutationWitness {
    pub fn identity(param_count: usize) -> Self {
        PermutationWitness { mapping: (0..param_count as u32).collect() }
    }

    pub fn from_mapping(mapping: Vec<u32>) -> Result<Self> {
        let n = mapping.len();
        let mut seen = vec![false; n];
        for &m in &mapping {
            match seen.get_mut(m as usize) {
                Some(slot) if !*slot => *slot = true,
                _ => return Err(Error::NotAPermutation { len: n }),
            }
        }
        Ok(PermutationWitness { mapping })
    }

    /// Builds a witness from explicit symbol pairs; unlisted parameters are
    /// completed with the smallest free image.
    pub fn from_pairs(partition: &AlphabetPartition, pairs: &[(Symbol, Symbol)]) -> Option<Self> {
        let n = partition.param_count();
        let mut fwd = vec![None; n];
        let mut back = vec![None; n];
        for &(a, b) in pairs {
            let (a, b) = (partition.param_index(a)?, partition.param_index(b)?);
            if !bind(&mut fwd, &mut back, a, b) {
                return None;
            }
        }
        Some(totalize(fwd, back))
    }

    pub fn mapping(&self) -> &[u32] {
        &self.mapping
    }

    pub fn len(&self) -> usize {
        self.mapping.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mapping.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.mapping.iter().enumerate().all(|(i, &m)| m as usize == i)
    }

    #[inline]
    pub fn image_index(&self, i: usize) -> usize {
        self.mapping[i] as usize
    }

    /// Image of a single symbol; constants are fixed.
    #[inline]
    pub fn map_symbol(&self, partition: &AlphabetPartition, s: Symbol) -> Symbol {
        match partition.class(s) {
            SymbolClass::Parameter(i) => partition.param(self.mapping[i as usize] as usize),
            _ => s,
        }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.mapping.len()];
        for (i, &m) in self.mapping.iter().enumerate() {
            inv[m as usize] = i as u32;
        }
        PermutationWitness { mapping: inv }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.len(), other.len(), "composing permutations of different arity");
        PermutationWitness { mapping: other.mapping.iter().map(|&m| self.mapping[m as usize]).collect() }
    }

    pub fn pow(&self, exp: usize) -> Self {
        let mut out = Self::identity(self.len());
        for _ in 0..exp {
            out = self.compose(&out);
        }
        out
    }

    /// Whether `fg = gf` on the whole parameter alphabet.
    pub fn commutes_with(&self, other: &Self) -> bool {
        self.compose(other) == other.compose(self)
    }
}

/// Applies `f` position-wise.
///
/// # Panics
///
/// Panics if `f` was built for a parameter alphabet of a different size.
pub fn apply(f: &PermutationWitness, w: &PString) -> PString {
    let partition = w.partition();
    assert_eq!(f.len(), partition.param_count(), "witness arity does not match alphabet");
    let symbols = w.symbols().iter().map(|&s| f.map_symbol(partition, s)).collect();
    PString::from_valid(partition.clone(), symbols)
}

/// Returns a witness `f` with `f(x) = y` when `x ≡ y`.
pub fn pmatch(x: &PString, y: &PString) -> Result<Option<PermutationWitness>> {
    x.check_same_partition(y)?;
    Ok(pmatch_symbols(x.partition(), x.symbols(), y.symbols()))
}

pub(crate) fn pmatch_symbols(partition: &AlphabetPartition, x: &[Symbol], y: &[Symbol]) -> Option<PermutationWitness> {
    if x.len() != y.len() {
        return None;
    }
    let n = partition.param_count();
    let mut fwd = vec![None; n];
    let mut back = vec![None; n];
    for (&a, &b) in x.iter().zip(y) {
        match (partition.class(a), partition.class(b)) {
            (SymbolClass::Parameter(a), SymbolClass::Parameter(b)) => {
                if !bind(&mut fwd, &mut back, a as usize, b as usize) {
                    return None;
                }
            }
            (SymbolClass::Constant, SymbolClass::Constant) if a == b => {}
            _ => return None,
        }
    }
    Some(totalize(fwd, back))
}

pub(crate) fn is_pmatch_symbols(partition: &AlphabetPartition, x: &[Symbol], y: &[Symbol]) -> bool {
    pmatch_symbols(partition, x, y).is_some()
}

fn bind(fwd: &mut [Option<u32>], back: &mut [Option<u32>], a: usize, b: usize) -> bool {
    match (fwd[a], back[b]) {
        (None, None) => {
            fwd[a] = Some(b as u32);
            back[b] = Some(a as u32);
            true
        }
        (Some(fb), _) => fb as usize == b,
        (None, Some(_)) => false,
    }
}

/// Completes a partial injection to a permutation: each unmapped parameter,
/// in ascending index order, takes the smallest unused image.
fn totalize(fwd: Vec<Option<u32>>, back: Vec<Option<u32>>) -> PermutationWitness {
    let mut free = back.iter().enumerate().filter(|(_, b)| b.is_none()).map(|(i, _)| i as u32);
    let mapping = fwd
        .into_iter()
        .map(|m| m.unwrap_or_else(|| free.next().expect("injection leaves as many free images as free sources")))
        .collect();
    PermutationWitness { mapping }
}
