//! Alphabet partitioning into constant and parameter symbols.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// Largest symbol code accepted by [`AlphabetPartition`]. Role lookup is a
/// flat table indexed by code, so the code space has to stay bounded.
pub const MAX_SYMBOL_CODE: u32 = (1 << 24) - 1;

/// A symbol code. The role (constant or parameter) is assigned by an
/// [`AlphabetPartition`], never by the code itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(transparent)]
pub struct Symbol(pub u32);

impl Symbol {
    pub const fn code(self) -> u32 {
        self.0
    }
}

impl From<u8> for Symbol {
    fn from(b: u8) -> Self {
        Symbol(b as u32)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match char::from_u32(self.0) {
            Some(c) if c.is_ascii_graphic() => write!(f, "{c}"),
            _ => write!(f, "#{}", self.0),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymbolClass {
    Constant,
    /// Parameter with its dense index in `0..|Π|`.
    Parameter(u32),
    Unknown,
}

/// The split of the symbol universe into constants Σ and parameters Π.
///
/// Parameters receive dense indices in ascending code order so that
/// per-parameter state can live in plain arrays.
#[derive(Clone, PartialEq, Eq)]
pub struct AlphabetPartition {
    constants: Vec<Symbol>,
    params: Vec<Symbol>,
    classes: Vec<SymbolClass>,
}

impl AlphabetPartition {
    pub fn new<C, P>(constants: C, params: P) -> Result<Self>
    where
        C: IntoIterator<Item = u32>,
        P: IntoIterator<Item = u32>,
    {
        let constants: BTreeSet<u32> = constants.into_iter().collect();
        let params: BTreeSet<u32> = params.into_iter().collect();
        if let Some(&code) = constants.intersection(&params).next() {
            return Err(Error::OverlappingAlphabets { code });
        }
        let top = constants.iter().chain(params.iter()).copied().max();
        if let Some(code) = top.filter(|&c| c > MAX_SYMBOL_CODE) {
            return Err(Error::CodeTooLarge { code, max: MAX_SYMBOL_CODE });
        }
        let mut classes = vec![SymbolClass::Unknown; top.map_or(0, |c| c as usize + 1)];
        for &c in &constants {
            classes[c as usize] = SymbolClass::Constant;
        }
        for (i, &c) in params.iter().enumerate() {
            classes[c as usize] = SymbolClass::Parameter(i as u32);
        }
        Ok(AlphabetPartition {
            constants: constants.into_iter().map(Symbol).collect(),
            params: params.into_iter().map(Symbol).collect(),
            classes,
        })
    }

    /// All 256 byte values, with `params` as the parameter alphabet and every
    /// other byte a constant.
    pub fn bytes(params: &[u8]) -> Self {
        let pi: BTreeSet<u8> = params.iter().copied().collect();
        let sigma = (0u8..=255).filter(|b| !pi.contains(b));
        Self::new(sigma.map(u32::from), pi.iter().map(|&b| u32::from(b)))
            .expect("byte partition is disjoint by construction")
    }

    /// Partition over the given characters only; handy for small examples.
    pub fn from_chars(constants: &str, params: &str) -> Result<Self> {
        Self::new(constants.chars().map(|c| c as u32), params.chars().map(|c| c as u32))
    }

    #[inline]
    pub fn class(&self, s: Symbol) -> SymbolClass {
        self.classes.get(s.0 as usize).copied().unwrap_or(SymbolClass::Unknown)
    }

    #[inline]
    pub fn param_index(&self, s: Symbol) -> Option<usize> {
        match self.class(s) {
            SymbolClass::Parameter(i) => Some(i as usize),
            _ => None,
        }
    }

    pub fn is_constant(&self, s: Symbol) -> bool {
        self.class(s) == SymbolClass::Constant
    }

    pub fn is_parameter(&self, s: Symbol) -> bool {
        matches!(self.class(s), SymbolClass::Parameter(_))
    }

    pub fn contains(&self, s: Symbol) -> bool {
        self.class(s) != SymbolClass::Unknown
    }

    /// The parameter with dense index `i`.
    pub fn param(&self, i: usize) -> Symbol {
        self.params[i]
    }

    pub fn params(&self) -> &[Symbol] {
        &self.params
    }

    pub fn constants(&self) -> &[Symbol] {
        &self.constants
    }

    pub fn param_count(&self) -> usize {
        self.params.len()
    }

    pub fn constant_count(&self) -> usize {
        self.constants.len()
    }

    /// Every declared symbol, constants first.
    pub fn symbols(&self) -> impl Iterator<Item = Symbol> + '_ {
        self.constants.iter().chain(self.params.iter()).copied()
    }

    /// Checks every symbol of `symbols`, reporting the first unknown one.
    pub fn validate(&self, symbols: &[Symbol]) -> Result<()> {
        match symbols.iter().position(|&s| !self.contains(s)) {
            Some(offset) => Err(Error::UnknownSymbol { code: symbols[offset].0, offset }),
            None => Ok(()),
        }
    }

    /// The same universe with `c` moved from the constants to become the only
    /// parameter. Every former parameter becomes a constant.
    pub fn promote_to_sole_parameter(&self, c: Symbol) -> Result<Self> {
        let constants = self.symbols().filter(|&s| s != c).map(|s| s.0);
        Self::new(constants, std::iter::once(c.0))
    }
}

impl fmt::Debug for AlphabetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AlphabetPartition")
            .field("constants", &self.constants.len())
            .field("params", &self.params)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classification() {
        let a = AlphabetPartition::from_chars("abc", "ABC").unwrap();
        assert_eq!(a.class(Symbol('a' as u32)), SymbolClass::Constant);
        assert_eq!(a.class(Symbol('A' as u32)), SymbolClass::Parameter(0));
        assert_eq!(a.class(Symbol('C' as u32)), SymbolClass::Parameter(2));
        assert_eq!(a.class(Symbol('z' as u32)), SymbolClass::Unknown);
        assert_eq!(a.class(Symbol(1 << 20)), SymbolClass::Unknown);
        for s in a.symbols() {
            assert!(a.is_constant(s) != a.is_parameter(s));
        }
    }

    #[test]
    fn param_index_is_dense_bijection() {
        let a = AlphabetPartition::new([1, 7], [40, 3, 99]).unwrap();
        let mut idx: Vec<usize> = a.params().iter().map(|&p| a.param_index(p).unwrap()).collect();
        idx.sort_unstable();
        assert_eq!(idx, vec![0, 1, 2]);
        for i in 0..a.param_count() {
            assert_eq!(a.param_index(a.param(i)), Some(i));
        }
    }

    #[test]
    fn overlap_rejected() {
        assert_eq!(AlphabetPartition::new([1, 2], [2, 3]).unwrap_err(), Error::OverlappingAlphabets { code: 2 });
    }

    #[test]
    fn huge_code_rejected() {
        assert!(matches!(AlphabetPartition::new([u32::MAX], []), Err(Error::CodeTooLarge { .. })));
    }

    #[test]
    fn byte_partition() {
        let a = AlphabetPartition::bytes(b"BA");
        assert_eq!(a.param_count(), 2);
        assert_eq!(a.constant_count(), 254);
        assert_eq!(a.param_index(Symbol::from(b'A')), Some(0));
        assert!(a.is_constant(Symbol::from(0xffu8)));
    }

    #[test]
    fn promotion() {
        let a = AlphabetPartition::from_chars("ab", "A").unwrap();
        let b = a.promote_to_sole_parameter(Symbol('a' as u32)).unwrap();
        assert_eq!(b.params(), &[Symbol('a' as u32)]);
        assert!(b.is_constant(Symbol('A' as u32)));
        assert!(b.is_constant(Symbol('b' as u32)));
    }
}
