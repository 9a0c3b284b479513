use std::sync::Arc;

use crate::alphabet::AlphabetPartition;
use crate::tokenize::IdentifierRule;

/// How input files are turned into p-strings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlphabetSpec {
    /// Every byte is a symbol. `params` are the parameters; the constants are
    /// `constants` if given, otherwise every other byte.
    Bytes { params: Vec<u8>, constants: Option<Vec<u8>> },
    /// Source tokens; identifiers are parameters.
    Tokens { keywords: bool },
}

impl Default for AlphabetSpec {
    fn default() -> Self {
        AlphabetSpec::Bytes { params: Vec::new(), constants: None }
    }
}

/// Parses a byte-set flag value: literal characters, `\\` for a backslash
/// and `\xHH` for an arbitrary byte.
pub fn parse_byte_set(s: &str) -> Result<Vec<u8>, String> {
    let b = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        if b[i] == b'\\' {
            match b.get(i + 1) {
                Some(b'\\') => {
                    out.push(b'\\');
                    i += 2;
                }
                Some(b'x') => {
                    let hex = s.get(i + 2..i + 4).ok_or_else(|| format!("truncated escape in {s:?}"))?;
                    out.push(u8::from_str_radix(hex, 16).map_err(|_| format!("bad escape \\x{hex}"))?);
                    i += 4;
                }
                _ => return Err(format!("bad escape at offset {i} in {s:?}")),
            }
        } else {
            out.push(b[i]);
            i += 1;
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

pub fn format_byte_set(bytes: &[u8]) -> String {
    let mut s = String::new();
    for &b in bytes {
        match b {
            b'\\' => s.push_str("\\\\"),
            0x21..=0x7e => s.push(b as char),
            _ => s.push_str(&format!("\\x{b:02x}")),
        }
    }
    s
}

impl AlphabetSpec {
    pub fn from_flags(
        pi: Option<&str>,
        sigma: Option<&str>,
        tokens: bool,
        all_identifiers: bool,
    ) -> Result<Self, String> {
        if tokens {
            if pi.is_some() || sigma.is_some() {
                return Err("--tokens cannot be combined with --pi or --sigma".into());
            }
            return Ok(AlphabetSpec::Tokens { keywords: !all_identifiers });
        }
        let params = pi.map(parse_byte_set).transpose()?.unwrap_or_default();
        let constants = sigma.map(parse_byte_set).transpose()?;
        if let Some(c) = &constants {
            if let Some(b) = c.iter().find(|b| params.contains(b)) {
                return Err(format!("byte {} is in both --pi and --sigma", format_byte_set(&[*b])));
            }
        }
        Ok(AlphabetSpec::Bytes { params, constants })
    }

    /// The flags that reproduce this spec.
    pub fn to_flags(&self) -> Vec<String> {
        match self {
            AlphabetSpec::Bytes { params, constants } => {
                let mut v = vec!["--pi".to_string(), format_byte_set(params)];
                if let Some(c) = constants {
                    v.push("--sigma".into());
                    v.push(format_byte_set(c));
                }
                v
            }
            AlphabetSpec::Tokens { keywords: true } => vec!["--tokens".into()],
            AlphabetSpec::Tokens { keywords: false } => vec!["--tokens".into(), "--all-identifiers".into()],
        }
    }

    pub fn parse_flags(args: &[String]) -> Result<Self, String> {
        let (mut pi, mut sigma, mut tokens, mut all) = (None, None, false, false);
        let mut it = args.iter();
        while let Some(a) = it.next() {
            match a.as_str() {
                "--pi" => pi = Some(it.next().ok_or("--pi needs a value")?.as_str()),
                "--sigma" => sigma = Some(it.next().ok_or("--sigma needs a value")?.as_str()),
                "--tokens" => tokens = true,
                "--all-identifiers" => all = true,
                other => return Err(format!("unexpected flag {other}")),
            }
        }
        Self::from_flags(pi, sigma, tokens, all)
    }

    pub fn identifier_rule(&self) -> IdentifierRule {
        match self {
            AlphabetSpec::Tokens { keywords: false } => IdentifierRule::no_keywords(),
            _ => IdentifierRule::default(),
        }
    }

    /// The byte-mode partition. Not meaningful in token mode.
    pub fn byte_partition(&self) -> Option<Arc<AlphabetPartition>> {
        match self {
            AlphabetSpec::Bytes { params, constants: None } => Some(Arc::new(AlphabetPartition::bytes(params))),
            AlphabetSpec::Bytes { params, constants: Some(c) } => Some(Arc::new(
                AlphabetPartition::new(c.iter().map(|&b| b as u32), params.iter().map(|&b| b as u32))
                    .expect("disjointness checked in from_flags"),
            )),
            AlphabetSpec::Tokens { .. } => None,
        }
    }
}
