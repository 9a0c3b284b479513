//! A small source-code tokenizer for clone detection.
//!
//! Identifiers become parameter symbols, everything else constants, so two
//! fragments that differ only by a consistent renaming of identifiers
//! p-match. Lexing is maximal munch:
//!
//! * identifier: `[A-Za-z_][A-Za-z0-9_]*`, unless it is in the keyword list
//! * number: a digit followed by `[A-Za-z0-9_.]*`
//! * string: `"…"` or `'…'` with backslash escapes, up to the closing quote
//! * `//` line comments and `/* */` block comments are skipped, as is whitespace
//! * any other byte, including non-ASCII and binary bytes, is a one-byte token
//!
//! Codes are dense and assigned in first-seen order across every source fed
//! to the same [`Tokenizer`], so output is deterministic.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::alphabet::{AlphabetPartition, Symbol};
use crate::error::Result;
use crate::pstring::PString;

pub const DEFAULT_KEYWORDS: &[&str] = &[
    "and", "as", "auto", "break", "case", "catch", "char", "class", "const", "continue", "def", "default", "do",
    "double", "elif", "else", "enum", "extern", "false", "float", "fn", "for", "from", "if", "impl", "import", "in",
    "int", "let", "long", "loop", "match", "mod", "mut", "new", "none", "not", "null", "or", "pub", "return", "self",
    "short", "signed", "sizeof", "static", "struct", "switch", "this", "throw", "true", "try", "type", "typedef",
    "union", "unsigned", "use", "var", "void", "while", "yield",
];

/// Which identifier-shaped words stay constant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentifierRule {
    pub keywords: BTreeSet<String>,
}

impl Default for IdentifierRule {
    fn default() -> Self {
        IdentifierRule { keywords: DEFAULT_KEYWORDS.iter().map(|s| s.to_string()).collect() }
    }
}

impl IdentifierRule {
    /// Every identifier-shaped word is a parameter.
    pub fn no_keywords() -> Self {
        IdentifierRule { keywords: BTreeSet::new() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TokenKind {
    Identifier,
    Keyword,
    Number,
    String,
    Punct,
    Byte,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Token {
    pub code: u32,
    pub offset: usize,
    /// 1-based line and byte column.
    pub line: u32,
    pub col: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolEntry {
    pub code: u32,
    pub kind: TokenKind,
    pub text: String,
}

/// The JSON document emitted by `pgs tokenize`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolMap {
    pub symbols: Vec<SymbolEntry>,
    pub tokens: Vec<Token>,
}

#[derive(Debug, Clone, Default)]
pub struct Tokenizer {
    rule: IdentifierRule,
    entries: Vec<SymbolEntry>,
    index: HashMap<(bool, Vec<u8>), u32>,
}

impl Tokenizer {
    pub fn new(rule: IdentifierRule) -> Self {
        Tokenizer { rule, entries: Vec::new(), index: HashMap::new() }
    }

    fn intern(&mut self, kind: TokenKind, text: &[u8]) -> u32 {
        let key = (kind == TokenKind::Identifier, text.to_vec());
        if let Some(&code) = self.index.get(&key) {
            return code;
        }
        let code = self.entries.len() as u32;
        let shown = match kind {
            TokenKind::Byte => format!("\\x{:02x}", text[0]),
            _ => String::from_utf8_lossy(text).into_owned(),
        };
        self.entries.push(SymbolEntry { code, kind, text: shown });
        self.index.insert(key, code);
        code
    }

    pub fn tokenize(&mut self, src: &[u8]) -> Vec<Token> {
        let mut out = Vec::new();
        let (mut i, mut line, mut line_start) = (0usize, 1u32, 0usize);
        while i < src.len() {
            let c = src[i];
            let start = i;
            let col = (start - line_start + 1) as u32;
            let kind = match c {
                b'\n' => {
                    i += 1;
                    line += 1;
                    line_start = i;
                    continue;
                }
                b' ' | b'\t' | b'\r' | 0x0b | 0x0c => {
                    i += 1;
                    continue;
                }
                b'/' if src.get(i + 1) == Some(&b'/') => {
                    while i < src.len() && src[i] != b'\n' {
                        i += 1;
                    }
                    continue;
                }
                b'/' if src.get(i + 1) == Some(&b'*') => {
                    i += 2;
                    while i < src.len() && !(src[i] == b'*' && src.get(i + 1) == Some(&b'/')) {
                        if src[i] == b'\n' {
                            line += 1;
                            line_start = i + 1;
                        }
                        i += 1;
                    }
                    i = (i + 2).min(src.len());
                    continue;
                }
                b'A'..=b'Z' | b'a'..=b'z' | b'_' => {
                    while i < src.len() && (src[i].is_ascii_alphanumeric() || src[i] == b'_') {
                        i += 1;
                    }
                    let word = std::str::from_utf8(&src[start..i]).expect("ascii");
                    if self.rule.keywords.contains(word) {
                        TokenKind::Keyword
                    } else {
                        TokenKind::Identifier
                    }
                }
                b'0'..=b'9' => {
                    while i < src.len() && (src[i].is_ascii_alphanumeric() || src[i] == b'_' || src[i] == b'.') {
                        i += 1;
                    }
                    TokenKind::Number
                }
                b'"' | b'\'' => {
                    i += 1;
                    while i < src.len() && src[i] != c {
                        if src[i] == b'\\' {
                            i += 1;
                        }
                        if i < src.len() && src[i] == b'\n' {
                            line += 1;
                            line_start = i + 1;
                        }
                        i += 1;
                    }
                    i = (i + 1).min(src.len());
                    TokenKind::String
                }
                0x21..=0x7e => {
                    i += 1;
                    TokenKind::Punct
                }
                _ => {
                    i += 1;
                    TokenKind::Byte
                }
            };
            let code = self.intern(kind, &src[start..i]);
            out.push(Token { code, offset: start, line, col });
        }
        out
    }

    pub fn symbols(&self) -> &[SymbolEntry] {
        &self.entries
    }

    /// Identifiers as parameters, every other interned token as a constant.
    pub fn partition(&self) -> Arc<AlphabetPartition> {
        let (params, consts): (Vec<_>, Vec<_>) = self.entries.iter().partition(|e| e.kind == TokenKind::Identifier);
        Arc::new(
            AlphabetPartition::new(consts.iter().map(|e| e.code), params.iter().map(|e| e.code))
                .expect("each code has a single kind"),
        )
    }

    pub fn symbol_map(&self, tokens: &[Token]) -> SymbolMap {
        SymbolMap { symbols: self.entries.clone(), tokens: tokens.to_vec() }
    }
}

/// The token stream as a p-string over `partition`, which must come from
/// the same tokenizer after all sources were fed to it.
pub fn to_pstring(partition: &Arc<AlphabetPartition>, tokens: &[Token]) -> Result<PString> {
    PString::new(partition.clone(), tokens.iter().map(|t| Symbol(t.code)).collect())
}

/// Tokenizes one source on its own and returns the stream with its map.
pub fn tokenize(source: &[u8], rule: IdentifierRule) -> (PString, SymbolMap) {
    let mut t = Tokenizer::new(rule);
    let tokens = t.tokenize(source);
    let part = t.partition();
    let w = to_pstring(&part, &tokens).expect("codes come from the same tokenizer");
    (w, t.symbol_map(&tokens))
}
